"""Decomposition certificates: builder, independent checker, JSON format.

A certificate is a tree of priced claims.  Interior nodes split a group as
an amalgam over a small subgroup or generate it by two overlapping
subgroups; leaves are finite groups, infinite amenable groups, two-vertex
Artin groups with infinite centre, or cited facts from the literature.
The checker recomputes every claimed cost from the children and never
trusts the stored values; cited-fact leaves are the only assumptions and
are counted and reported separately.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .groupexpr import PriceResult
from .lgraph import GraphError, LabelledGraph, components, cut_vertices

FORMAT = "rgcost-certificate/1"

RULE_FINITE = "finite-group-price"
RULE_AMENABLE = "amenable-price"
RULE_CENTER = "infinite-centre-price"
RULE_AMALGAM = "amalgam-price"
RULE_GENERATION = "generation-price"
RULE_NORMAL = "normal-subgroup-vanishing"
RULE_CITED = "cited-fact"

NORMAL_HYPOTHESES = (
    "vanishing-gradient-normal-subgroup",
    "infinite-centre",
    "infinite-amenable-normal-subgroup",
)

# Why the two-generator centre misses chain intersections: its generator has
# nonzero total exponent, while the intersection of all finite-index
# subgroups lies in the kernel of every map to Z/k, hence in the kernel of
# the exponent-sum map to Z.
CENTER_NOTE = (
    "centre generator has nonzero image under the exponent-sum map to Z; "
    "the intersection of all finite-index subgroups lies in ker(group -> Z -> Z/k) "
    "for every k, so it meets this centre trivially"
)

ARTIN_CAVEAT = (
    "values refer to normal chains of finite-index subgroups whose intersection "
    "equals the intersection of all finite-index subgroups; whether that "
    "intersection is trivial (residual finiteness of Artin groups) is open"
)


def edge_center_word(label: int) -> int:
    """Exponent k such that (a_v a_w)^k generates the centre of the
    two-generator Artin group on an edge with the given label: label/2
    when the label is even, the label itself when odd."""
    if label < 2:
        raise ValueError(f"edge label {label} < 2")
    return label // 2 if label % 2 == 0 else label


@dataclass(frozen=True)
class AmalgamDescriptor:
    """The subgroup an amalgam node splits over.

    kind "vertex": the infinite cyclic subgroup on one graph vertex.
    kind "finite": declared finite subgroup of the given order.
    kind "amenable": declared infinite amenable subgroup.
    """

    kind: str
    vertex: str | None = None
    order: int | None = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("vertex", "finite", "amenable"):
            raise ValueError(f"unknown amalgam descriptor kind {self.kind!r}")
        if self.kind == "vertex" and not self.vertex:
            raise ValueError("vertex descriptor needs a vertex name")
        if self.kind == "finite" and (self.order is None or self.order < 1):
            raise ValueError("finite descriptor needs an order >= 1")

    def price(self) -> Fraction:
        if self.kind == "finite":
            return 1 - Fraction(1, self.order)
        return Fraction(1)


@dataclass(frozen=True)
class FiniteLeaf:
    order: int
    cost: Fraction
    rule: str = RULE_FINITE


@dataclass(frozen=True)
class AmenableLeaf:
    name: str
    reason: str
    cost: Fraction
    vertices: tuple[str, ...] | None = None
    rule: str = RULE_AMENABLE


@dataclass(frozen=True)
class InfiniteCenterLeaf:
    """Two-vertex Artin subgroup; its centre is generated by the witness
    word (a_v a_w)^exponent."""

    endpoints: tuple[str, str]
    label: int
    exponent: int
    cost: Fraction
    note: str = CENTER_NOTE
    rule: str = RULE_CENTER

    @property
    def vertices(self):
        return self.endpoints


@dataclass(frozen=True)
class AmalgamNode:
    left: object
    right: object
    amalgam: AmalgamDescriptor
    cost: Fraction
    vertices: tuple[str, ...] | None = None
    rule: str = RULE_AMALGAM


@dataclass(frozen=True)
class GenerationNode:
    left: object
    right: object
    witness: str
    cost: Fraction
    witness_vertex: str | None = None
    vertices: tuple[str, ...] | None = None
    rule: str = RULE_GENERATION


@dataclass(frozen=True)
class NormalSubgroupNode:
    ambient: str
    subgroup: str
    hypothesis: str
    reason: str
    cost: Fraction
    rule: str = RULE_NORMAL


@dataclass(frozen=True)
class CitedFactLeaf:
    """Unverifiable assumption with a literature citation tag; the checker
    records it instead of validating it."""

    statement: str
    citation: str
    cost: Fraction
    rule: str = RULE_CITED


@dataclass(frozen=True)
class Certificate:
    root: object
    target: str
    graph: LabelledGraph | None = None
    caveat: str | None = None
    citations: tuple[str, ...] = ()


@dataclass
class CheckReport:
    violations: list[str]
    assumptions: list[str]

    @property
    def valid(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------------------
# Building certificates for Artin graphs


def decompose_artin(g: LabelledGraph, vertices=None):
    """Certificate for the Artin group of a connected vertex set.

    Recursion: a single vertex is an infinite cyclic (amenable) leaf; a
    single edge is an infinite-centre leaf; with a cut vertex v the group
    splits as an amalgam over the vertex subgroup at v (components folded
    left-associatively); otherwise the smallest vertex v with its smallest
    neighbour w spans an edge subgroup that together with the rest of the
    graph generates everything, intersecting it in the vertex subgroup at w.
    Every node claims cost 1.
    """
    if vertices is None:
        vertices = g.vertices
    w = tuple(sorted(vertices, key=g.vertex_index))
    sub = g.induced(w)
    if len(components(sub)) != 1:
        raise GraphError("decompose_artin requires a connected vertex set")

    if len(w) == 1:
        return AmenableLeaf(
            name=f"<{w[0]}>",
            reason="infinite cyclic vertex subgroup",
            cost=Fraction(1),
            vertices=w,
        )
    if len(w) == 2:
        label = sub.label(w[0], w[1])
        return InfiniteCenterLeaf(
            endpoints=(w[0], w[1]),
            label=label,
            exponent=edge_center_word(label),
            cost=Fraction(1),
        )

    cuts = cut_vertices(sub)
    if cuts:
        v = min(cuts, key=g.vertex_index)
        rest = [x for x in w if x != v]
        parts = components(sub.induced(rest))
        children = [decompose_artin(g, part + (v,)) for part in parts]
        node = children[0]
        for child in children[1:]:
            merged = tuple(sorted(set(node.vertices) | set(child.vertices), key=g.vertex_index))
            node = AmalgamNode(
                left=node,
                right=child,
                amalgam=AmalgamDescriptor(kind="vertex", vertex=v, name=f"<{v}>"),
                cost=Fraction(1),
                vertices=merged,
            )
        return node

    v = w[0]
    nb = min(sub.neighbors(v), key=g.vertex_index)
    left = decompose_artin(g, (v, nb))
    right = decompose_artin(g, tuple(x for x in w if x != v))
    return GenerationNode(
        left=left,
        right=right,
        witness=f"vertex subgroup <{nb}>, infinite cyclic",
        witness_vertex=nb,
        cost=Fraction(1),
        vertices=w,
    )


def rg_artin(g: LabelledGraph) -> tuple[PriceResult, Certificate]:
    """Price of the Artin group of a labelled graph with b components:
    cost b, rank gradient and betti1 both b - 1, plus a checkable
    certificate (per-component decompositions joined by free products)."""
    blocks = components(g)
    b = len(blocks)
    roots = [decompose_artin(g, block) for block in blocks]
    node = roots[0]
    total = Fraction(1)
    for child in roots[1:]:
        total = total + 1  # free product: cost adds (trivial amalgam has price 0)
        merged = tuple(sorted(set(node.vertices) | set(child.vertices), key=g.vertex_index))
        node = AmalgamNode(
            left=node,
            right=child,
            amalgam=AmalgamDescriptor(kind="finite", order=1, name="trivial"),
            cost=total,
            vertices=merged,
        )
    cert = Certificate(
        root=node,
        target=f"Artin group on {g.num_vertices} vertices ({b} component(s))",
        graph=g,
        caveat=ARTIN_CAVEAT,
    )
    price = PriceResult(
        cost=Fraction(b),
        rank_gradient=Fraction(b - 1),
        betti1=Fraction(b - 1),
        fixed_price=True,
        rule_trace=[
            f"artin-components-price: {b} component(s), cost {b}",
            "per-component decomposition certificate attached",
        ],
    )
    return price, cert


# ---------------------------------------------------------------------------
# Checking


def check_certificate(cert, graph: LabelledGraph | None = None) -> CheckReport:
    """Validate a certificate without re-deriving any group theory.

    Recomputes every claimed cost from the children, checks witness
    bookkeeping against the ambient graph where vertex sets are present,
    and lists cited facts as assumptions.
    """
    if isinstance(cert, Certificate):
        root = cert.root
        graph = cert.graph if cert.graph is not None else graph
    else:
        root = cert
    report = CheckReport(violations=[], assumptions=[])
    _check_node(root, graph, report, path="root")
    return report


def _label(path, node):
    return f"{path}[{type(node).__name__}]"


def _check_node(node, graph, report: CheckReport, path: str) -> Fraction:
    where = _label(path, node)

    if isinstance(node, FiniteLeaf):
        expected = 1 - Fraction(1, node.order)
        if node.order < 1:
            report.violations.append(f"{where}: order {node.order} < 1")
        if node.cost != expected:
            report.violations.append(f"{where}: claimed cost {node.cost} != {expected}")
        return expected

    if isinstance(node, AmenableLeaf):
        if node.cost != 1:
            report.violations.append(f"{where}: amenable leaf must claim cost 1")
        _check_vertices(node, graph, report, where)
        return Fraction(1)

    if isinstance(node, InfiniteCenterLeaf):
        if node.cost != 1:
            report.violations.append(f"{where}: infinite-centre leaf must claim cost 1")
        if node.exponent != edge_center_word(node.label):
            report.violations.append(
                f"{where}: centre witness exponent {node.exponent} != "
                f"{edge_center_word(node.label)} for label {node.label}"
            )
        if graph is not None:
            u, v = node.endpoints
            if not (graph.has_vertex(u) and graph.has_vertex(v) and graph.has_edge(u, v)):
                report.violations.append(f"{where}: edge {u!r} {v!r} not in ambient graph")
            elif graph.label(u, v) != node.label:
                report.violations.append(
                    f"{where}: label {node.label} != ambient label {graph.label(u, v)}"
                )
        return Fraction(1)

    if isinstance(node, AmalgamNode):
        lc = _check_node(node.left, graph, report, path + ".left")
        rc = _check_node(node.right, graph, report, path + ".right")
        expected = lc + rc - node.amalgam.price()
        if node.cost != expected:
            report.violations.append(
                f"{where}: claimed cost {node.cost} != {lc} + {rc} - {node.amalgam.price()}"
            )
        if node.amalgam.kind == "vertex":
            _check_vertex_split(node, graph, report, where)
        return expected

    if isinstance(node, GenerationNode):
        lc = _check_node(node.left, graph, report, path + ".left")
        rc = _check_node(node.right, graph, report, path + ".right")
        if lc != 1:
            report.violations.append(f"{where}: left factor cost {lc} != 1")
        if rc != 1:
            report.violations.append(f"{where}: right factor cost {rc} != 1")
        if node.cost != 1:
            report.violations.append(f"{where}: claimed cost {node.cost} != 1")
        if not node.witness.strip():
            report.violations.append(f"{where}: empty intersection witness")
        wa = getattr(node.left, "vertices", None)
        wb = getattr(node.right, "vertices", None)
        if node.vertices is not None and wa is not None and wb is not None:
            if set(wa) | set(wb) != set(node.vertices):
                report.violations.append(
                    f"{where}: factor vertex sets do not cover the node's vertex set"
                )
            if not set(wa) & set(wb):
                report.violations.append(f"{where}: empty intersection")
            if node.witness_vertex is not None and node.witness_vertex not in set(wa) & set(wb):
                report.violations.append(
                    f"{where}: witness vertex {node.witness_vertex!r} not in both factors"
                )
        return Fraction(1)

    if isinstance(node, NormalSubgroupNode):
        if node.hypothesis not in NORMAL_HYPOTHESES:
            report.violations.append(
                f"{where}: unknown hypothesis tag {node.hypothesis!r}"
            )
        if node.cost != 1:
            report.violations.append(f"{where}: claimed cost {node.cost} != 1")
        if not node.subgroup.strip() or not node.reason.strip():
            report.violations.append(f"{where}: missing subgroup descriptor or reason")
        return Fraction(1)

    if isinstance(node, CitedFactLeaf):
        report.assumptions.append(f"{node.statement} [{node.citation}]")
        return node.cost

    report.violations.append(f"{where}: unknown node kind")
    return Fraction(0)


def _check_vertices(node, graph, report, where):
    if graph is None or node.vertices is None:
        return
    for v in node.vertices:
        if not graph.has_vertex(v):
            report.violations.append(f"{where}: vertex {v!r} not in ambient graph")


def _check_vertex_split(node: AmalgamNode, graph, report, where):
    wa = getattr(node.left, "vertices", None)
    wb = getattr(node.right, "vertices", None)
    if node.vertices is None or wa is None or wb is None:
        return
    if set(wa) | set(wb) != set(node.vertices):
        report.violations.append(
            f"{where}: factor vertex sets do not cover the node's vertex set"
        )
    v = node.amalgam.vertex
    if v not in set(wa) or v not in set(wb):
        report.violations.append(
            f"{where}: amalgam vertex {v!r} not shared by both factors"
        )


def count_assumptions(cert) -> int:
    return len(check_certificate(cert).assumptions)


# ---------------------------------------------------------------------------
# Built-in certificates for the generation arguments


def builtin_certificate(name: str, param: int | None = None) -> Certificate:
    """Hand-encoded certificates shipped as data.

    Names: SL2Z; MCG(g >= 2); AutFn(n >= 2) (AutF2 = AutFn(2));
    OutFn(n >= 3); BnModCenter(n >= 4).
    """
    if name == "SL2Z":
        _reject_param(name, param)
        return _sl2z_certificate()
    if name == "AutF2":
        _reject_param(name, param)
        return _autfn_certificate(2)
    if name == "MCG":
        if param is None or param < 2:
            raise ValueError("MCG requires a genus parameter >= 2")
        return _mcg_certificate(param)
    if name == "AutFn":
        if param is None or param < 2:
            raise ValueError("AutFn requires a rank parameter >= 2")
        return _autfn_certificate(param)
    if name == "OutFn":
        if param is None or param < 3:
            raise ValueError("OutFn requires a rank parameter >= 3")
        return _outfn_certificate(param)
    if name == "BnModCenter":
        if param is None or param < 4:
            raise ValueError("BnModCenter requires a strand parameter >= 4")
        return _bn_mod_center_certificate(param)
    raise ValueError(f"unknown builtin certificate {name!r}")


def _reject_param(name, param):
    if param is not None:
        raise ValueError(f"{name} takes no parameter")


def _sl2z_certificate() -> Certificate:
    cost = (1 - Fraction(1, 6)) + (1 - Fraction(1, 4)) - (1 - Fraction(1, 2))
    root = AmalgamNode(
        left=FiniteLeaf(order=6, cost=1 - Fraction(1, 6)),
        right=FiniteLeaf(order=4, cost=1 - Fraction(1, 4)),
        amalgam=AmalgamDescriptor(kind="finite", order=2, name="common central subgroup of order 2"),
        cost=cost,
    )
    return Certificate(
        root=root,
        target="SL(2,Z) as the amalgam of cyclic groups of orders 6 and 4 over a common order-2 subgroup",
        citations=("classical",),
    )


def lickorish_sequence(genus: int) -> tuple[str, ...]:
    """The twist sequence m1,a1,c1,a2,m2,a2,c2,a3,m3,...,c_{g-1},a_g,m_g
    (with the bridging repetitions) used to chain braid-group copies."""
    seq = ["m1", "a1"]
    for i in range(1, genus):
        seq.extend([f"c{i}", f"a{i + 1}", f"m{i + 1}"])
        if i < genus - 1:
            seq.append(f"a{i + 1}")
    return tuple(seq)


def _mcg_certificate(genus: int) -> Certificate:
    seq = lickorish_sequence(genus)
    pairs: list[tuple[str, str]] = []
    seen: set[frozenset] = set()
    for x, y in zip(seq, seq[1:]):
        key = frozenset((x, y))
        if key in seen:
            continue  # a bridging repetition names the same subgroup again
        seen.add(key)
        pairs.append((x, y))

    def leaf(x, y):
        return CitedFactLeaf(
            statement=(
                f"the Dehn twists {x} and {y} are defined along simple closed "
                f"non-separating curves with intersection number one, so <{x},{y}> "
                f"is a copy of the braid group on three strands; a connected "
                f"one-edge Artin group has fixed price 1"
            ),
            citation="BH",
            cost=Fraction(1),
        )

    node = leaf(*pairs[0])
    used = set(pairs[0])
    for x, y in pairs[1:]:
        shared = x if x in used else (y if y in used else None)
        assert shared is not None, "twist pairs must chain"
        node = GenerationNode(
            left=node,
            right=leaf(x, y),
            witness=(
                f"the twist {shared} lies in both factors and has infinite order "
                f"(braid-group generator)"
            ),
            cost=Fraction(1),
        )
        used.update((x, y))
    return Certificate(
        root=node,
        target=(
            f"mapping class group of the closed genus-{genus} surface, generated "
            f"by the twist sequence {', '.join(seq)}"
        ),
        citations=("Lic",),
    )


def _bn_mod_center_certificate(n: int) -> Certificate:
    def image_leaf(lo, hi):
        return CitedFactLeaf(
            statement=(
                f"the parabolic subgroup <sigma_{lo},...,sigma_{hi}> of the braid group "
                f"on {n} strands is a copy of the braid group on {n - 1} strands meeting "
                f"the centre trivially (Garside-element description of the centre), so its "
                f"image modulo the centre is again that braid group; a connected-path "
                f"Artin group has fixed price 1"
            ),
            citation="Garside",
            cost=Fraction(1),
        )

    root = GenerationNode(
        left=image_leaf(1, n - 2),
        right=image_leaf(2, n - 1),
        witness=(
            "the image of sigma_2 lies in both factors and has infinite order "
            "(no power of sigma_2 is central)"
        ),
        cost=Fraction(1),
    )
    return Certificate(
        root=root,
        target=f"braid group on {n} strands modulo its centre",
        citations=("Grossman",),
    )


def _autfn_certificate(n: int) -> Certificate:
    if n == 2:
        root = GenerationNode(
            left=CitedFactLeaf(
                statement=(
                    "the braid group on 4 strands modulo its centre embeds in Aut(F_2) "
                    "as a subgroup of index two and has fixed price 1 "
                    "(see the BnModCenter(4) certificate)"
                ),
                citation="DF",
                cost=Fraction(1),
            ),
            right=AmenableLeaf(
                name="<t>",
                reason=(
                    "infinite cyclic: t is any infinite-order automorphism outside the "
                    "index-two subgroup (preimage of an infinite-order determinant -1 "
                    "matrix in GL(2,Z))"
                ),
                cost=Fraction(1),
            ),
            witness="t^2 lies in both factors and has infinite order (index two)",
            cost=Fraction(1),
        )
        return Certificate(
            root=root,
            target="Aut(F_2) generated by its index-two braid-quotient subgroup and an outside infinite-order element",
            citations=("DF",),
        )

    def copy_leaf(i):
        return CitedFactLeaf(
            statement=(
                f"A_{i}, the copy of Aut(F_2) acting on <x_{i},x_{i + 1}> and fixing the "
                f"other free generators, has fixed price 1 (AutFn(2) certificate)"
            ),
            citation="DF",
            cost=Fraction(1),
        )

    node: object = CitedFactLeaf(
        statement=(
            f"the automorphisms f_1,...,f_{n - 1} with f_i: x_i -> x_i x_(i+1) x_i^-1, "
            f"x_(i+1) -> x_i generate a copy of the braid group on {n} strands inside "
            f"Aut(F_{n}); a connected-path Artin group has fixed price 1"
        ),
        citation="classical",
        cost=Fraction(1),
    )
    for i in range(1, n):
        node = GenerationNode(
            left=node,
            right=copy_leaf(i),
            witness=f"f_{i} lies in both factors and has infinite order",
            cost=Fraction(1),
        )
    return Certificate(
        root=node,
        target=f"Aut(F_{n}) generated by the rank-two copies A_1,...,A_{n - 1} of Aut(F_2)",
        citations=("classical",),
    )


def _outfn_certificate(n: int) -> Certificate:
    if n == 3:
        x_leaf = CitedFactLeaf(
            statement=(
                "Xbar, the image in Out(F_3) of the copy X of Aut(F_2) acting on "
                "<x_1,x_2> and fixing x_3, is isomorphic to Aut(F_2) and has fixed price 1"
            ),
            citation="DF",
            cost=Fraction(1),
        )
        z_leaf = CitedFactLeaf(
            statement=(
                "Zbar, the image of the copy Z of Aut(F_2) acting on <x_1,x_2> and fixing "
                "x_1x_3, is isomorphic to Aut(F_2) and has fixed price 1; the intersection "
                "Xbar n Zbar >= <alphabar> is infinite, where alpha: x_1 -> x_1, "
                "x_2 -> x_1x_2, x_3 -> x_3"
            ),
            citation="DF",
            cost=Fraction(1),
        )
        y_leaf = CitedFactLeaf(
            statement=(
                "Ybar, the image of the copy Y of Aut(F_2) acting on <x_2,x_3> and fixing "
                "x_1, is isomorphic to Aut(F_2) and has fixed price 1; <Xbar,Zbar> n Ybar "
                "contains the class of gamma o beta (fixing x_1 and x_2, sending x_3 to "
                "x_2^-1 x_3), of infinite order"
            ),
            citation="DF",
            cost=Fraction(1),
        )
        inner = GenerationNode(
            left=x_leaf,
            right=z_leaf,
            witness="the class of alpha lies in both factors and has infinite order",
            cost=Fraction(1),
        )
        root = GenerationNode(
            left=inner,
            right=y_leaf,
            witness="the class of gamma o beta lies in both factors and has infinite order",
            cost=Fraction(1),
        )
        return Certificate(
            root=root,
            target="Out(F_3) generated by Xbar and Ybar",
            citations=("classical",),
        )

    def aut_leaf(fixed):
        return CitedFactLeaf(
            statement=(
                f"the copy of Aut(F_{n - 1}) in Out(F_{n}) fixing {fixed} has fixed "
                f"price 1 (AutFn({n - 1}) certificate)"
            ),
            citation="classical",
            cost=Fraction(1),
        )

    root = GenerationNode(
        left=aut_leaf("x_1"),
        right=aut_leaf(f"x_{n}"),
        witness=(
            "a common copy of Aut(F_2) acting on <x_2,x_3> and fixing the remaining "
            "generators lies in both factors and is infinite"
        ),
        cost=Fraction(1),
    )
    return Certificate(
        root=root,
        target=f"Out(F_{n}) generated by two copies of Aut(F_{n - 1})",
        citations=("classical",),
    )


# ---------------------------------------------------------------------------
# JSON serialization


def _frac_to_str(q: Fraction) -> str:
    return str(q)


def _frac_from_str(s: str) -> Fraction:
    return Fraction(s)


def node_to_dict(node) -> dict:
    if isinstance(node, FiniteLeaf):
        return {"kind": "finite", "rule": node.rule, "cost": _frac_to_str(node.cost),
                "order": node.order}
    if isinstance(node, AmenableLeaf):
        d = {"kind": "amenable", "rule": node.rule, "cost": _frac_to_str(node.cost),
             "name": node.name, "reason": node.reason}
        if node.vertices is not None:
            d["vertices"] = list(node.vertices)
        return d
    if isinstance(node, InfiniteCenterLeaf):
        return {"kind": "infinite-centre", "rule": node.rule, "cost": _frac_to_str(node.cost),
                "endpoints": list(node.endpoints), "label": node.label,
                "exponent": node.exponent, "note": node.note}
    if isinstance(node, AmalgamNode):
        d = {"kind": "amalgam", "rule": node.rule, "cost": _frac_to_str(node.cost),
             "amalgam": {"kind": node.amalgam.kind, "vertex": node.amalgam.vertex,
                         "order": node.amalgam.order, "name": node.amalgam.name},
             "children": [node_to_dict(node.left), node_to_dict(node.right)]}
        if node.vertices is not None:
            d["vertices"] = list(node.vertices)
        return d
    if isinstance(node, GenerationNode):
        d = {"kind": "generation", "rule": node.rule, "cost": _frac_to_str(node.cost),
             "witness": node.witness,
             "children": [node_to_dict(node.left), node_to_dict(node.right)]}
        if node.witness_vertex is not None:
            d["witness_vertex"] = node.witness_vertex
        if node.vertices is not None:
            d["vertices"] = list(node.vertices)
        return d
    if isinstance(node, NormalSubgroupNode):
        return {"kind": "normal-subgroup", "rule": node.rule, "cost": _frac_to_str(node.cost),
                "ambient": node.ambient, "subgroup": node.subgroup,
                "hypothesis": node.hypothesis, "reason": node.reason}
    if isinstance(node, CitedFactLeaf):
        return {"kind": "cited-fact", "rule": node.rule, "cost": _frac_to_str(node.cost),
                "statement": node.statement, "citation": node.citation}
    raise TypeError(f"unknown node {type(node).__name__}")


def node_from_dict(d: dict):
    kind = d.get("kind")
    cost = _frac_from_str(d["cost"])
    if kind == "finite":
        return FiniteLeaf(order=d["order"], cost=cost)
    if kind == "amenable":
        vs = d.get("vertices")
        return AmenableLeaf(name=d["name"], reason=d["reason"], cost=cost,
                            vertices=tuple(vs) if vs is not None else None)
    if kind == "infinite-centre":
        return InfiniteCenterLeaf(
            endpoints=tuple(d["endpoints"]), label=d["label"],
            exponent=d["exponent"], cost=cost, note=d.get("note", CENTER_NOTE))
    if kind == "amalgam":
        a = d["amalgam"]
        vs = d.get("vertices")
        left, right = (node_from_dict(c) for c in d["children"])
        return AmalgamNode(
            left=left, right=right,
            amalgam=AmalgamDescriptor(kind=a["kind"], vertex=a.get("vertex"),
                                      order=a.get("order"), name=a.get("name", "")),
            cost=cost, vertices=tuple(vs) if vs is not None else None)
    if kind == "generation":
        vs = d.get("vertices")
        left, right = (node_from_dict(c) for c in d["children"])
        return GenerationNode(
            left=left, right=right, witness=d["witness"], cost=cost,
            witness_vertex=d.get("witness_vertex"),
            vertices=tuple(vs) if vs is not None else None)
    if kind == "normal-subgroup":
        return NormalSubgroupNode(
            ambient=d["ambient"], subgroup=d["subgroup"],
            hypothesis=d["hypothesis"], reason=d["reason"], cost=cost)
    if kind == "cited-fact":
        return CitedFactLeaf(statement=d["statement"], citation=d["citation"], cost=cost)
    raise ValueError(f"unknown certificate node kind {kind!r}")


def graph_to_dict(g: LabelledGraph) -> dict:
    return {"vertices": list(g.vertices),
            "edges": [[u, v, lab] for u, v, lab in g.edges()]}


def graph_from_dict(d: dict) -> LabelledGraph:
    return LabelledGraph(d["vertices"], [tuple(e) for e in d["edges"]])


def certificate_to_json(cert: Certificate) -> str:
    doc = {
        "format": FORMAT,
        "target": cert.target,
        "claimed_cost": _frac_to_str(cert.root.cost),
        "citations": list(cert.citations),
        "caveat": cert.caveat,
        "graph": graph_to_dict(cert.graph) if cert.graph is not None else None,
        "root": node_to_dict(cert.root),
    }
    return json.dumps(doc, indent=2) + "\n"


def certificate_from_json(text: str) -> Certificate:
    doc = json.loads(text)
    if doc.get("format") != FORMAT:
        raise ValueError(f"unsupported certificate format {doc.get('format')!r}")
    graph = graph_from_dict(doc["graph"]) if doc.get("graph") else None
    return Certificate(
        root=node_from_dict(doc["root"]),
        target=doc.get("target", ""),
        graph=graph,
        caveat=doc.get("caveat"),
        citations=tuple(doc.get("citations", ())),
    )
