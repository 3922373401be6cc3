"""rgcost: exact rank gradient, cost and first L2-Betti numbers for
Artin/Coxeter group families, with machine-checkable decomposition
certificates and a finitely-presented-group verification engine."""

__version__ = "0.1.0"

from .groupexpr import (
    INFINITE,
    AmalgamAmenable,
    AmalgamFinite,
    Amenable,
    ArtinGraph,
    CoxeterGraph,
    Cyclic,
    Free,
    FreeAbelian,
    Generation,
    GroupExpr,
    GroupOrder,
    IntegersZ,
    PriceResult,
    Surface,
    TrivialGroup,
    Unknown,
    eval_betti1,
    eval_cost,
    eval_rg,
    evaluate,
    generation_upper_bound,
    is_known,
    recip_order,
)
from .lgraph import (
    GraphError,
    LabelledGraph,
    ReductionOrder,
    check_reduction_order,
    components,
    cut_vertices,
    girth,
    is_planar,
    parse_graph,
    reduction_order,
)

__all__ = [
    "INFINITE",
    "AmalgamAmenable",
    "AmalgamFinite",
    "Amenable",
    "ArtinGraph",
    "CoxeterGraph",
    "Cyclic",
    "Free",
    "FreeAbelian",
    "Generation",
    "GraphError",
    "GroupExpr",
    "GroupOrder",
    "IntegersZ",
    "LabelledGraph",
    "PriceResult",
    "ReductionOrder",
    "Surface",
    "TrivialGroup",
    "Unknown",
    "check_reduction_order",
    "components",
    "cut_vertices",
    "eval_betti1",
    "eval_cost",
    "eval_rg",
    "evaluate",
    "generation_upper_bound",
    "girth",
    "is_known",
    "is_planar",
    "parse_graph",
    "recip_order",
    "reduction_order",
]
