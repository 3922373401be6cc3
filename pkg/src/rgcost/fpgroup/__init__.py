"""Finitely presented group engine: presentations, coset enumeration,
subgroup presentations, abelianization and gradient sampling."""

from .presentation import (
    Presentation,
    PresentationError,
    artin_presentation,
    coxeter_presentation,
    cyclic_reduce,
    free_reduce,
    invert_word,
    parse_presentation,
)
from .coset import CosetTable, EnumerationLimit, todd_coxeter
from .lowindex import low_index_normal
from .rewrite import (
    AbelianInvariants,
    abelian_invariants,
    d_bounds,
    reidemeister_schreier,
    tietze_simplify,
)
from .snf import SNFResult, smith_normal_form
from .chains import (
    NotHomomorphism,
    RGSample,
    cayley_table,
    kernel_chain_cayley,
    mod_cycle_images,
    psl2z_images,
    rg_sequence,
    samples_to_csv,
    sl2z_images,
    trend_summary,
)
from .builtins import BUILTIN_NAMES, braid_presentation, builtin_presentation

__all__ = [
    "AbelianInvariants",
    "BUILTIN_NAMES",
    "CosetTable",
    "EnumerationLimit",
    "NotHomomorphism",
    "Presentation",
    "PresentationError",
    "RGSample",
    "SNFResult",
    "abelian_invariants",
    "artin_presentation",
    "braid_presentation",
    "builtin_presentation",
    "cayley_table",
    "coxeter_presentation",
    "cyclic_reduce",
    "d_bounds",
    "free_reduce",
    "invert_word",
    "kernel_chain_cayley",
    "low_index_normal",
    "mod_cycle_images",
    "parse_presentation",
    "psl2z_images",
    "reidemeister_schreier",
    "rg_sequence",
    "samples_to_csv",
    "sl2z_images",
    "smith_normal_form",
    "tietze_simplify",
    "todd_coxeter",
    "trend_summary",
]
