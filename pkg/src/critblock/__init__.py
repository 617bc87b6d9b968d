"""Exact combinatorics of critical-level restricted blocks over affine Kac-Moody algebras.

Root data, affine weights and their alpha-down/alpha-up moves, moment
graphs of block windows, and the structure algebra of polynomial tuples
that models the block center.
"""

from .mult import (
    UndeterminedMultiplicity,
    bggh_consistency,
    hom_rank,
    jantzen_layers,
    simple_in_verma,
    verma_flag_multiplicity,
)
from .polyring import LinearForm, Poly, parse_poly, reduce_mod_linear, tau_pair, tau_quad
from .rootdata import RootDatum, build_root_datum, coroot_as_linear_form, pairing
from .structalg import (
    MomentGraph,
    Section,
    build_moment_graph,
    casimir_scalar,
    casimir_section,
    intersection_check,
    is_section,
    jantzen_difference,
    section_space_basis,
    subgeneric_generators,
    verify_generation,
)
from .weights import (
    AffineWeight,
    DeformationPoint,
    Window,
    affine_pairing,
    arrow_down,
    arrow_up,
    block_window,
    classify_block,
    compare,
    dot_reflect,
    integral_roots,
)

__all__ = [
    "AffineWeight",
    "DeformationPoint",
    "LinearForm",
    "MomentGraph",
    "Poly",
    "RootDatum",
    "Section",
    "UndeterminedMultiplicity",
    "Window",
    "affine_pairing",
    "arrow_down",
    "arrow_up",
    "bggh_consistency",
    "block_window",
    "build_moment_graph",
    "build_root_datum",
    "casimir_scalar",
    "casimir_section",
    "classify_block",
    "compare",
    "coroot_as_linear_form",
    "dot_reflect",
    "hom_rank",
    "integral_roots",
    "intersection_check",
    "is_section",
    "jantzen_difference",
    "jantzen_layers",
    "pairing",
    "parse_poly",
    "reduce_mod_linear",
    "section_space_basis",
    "simple_in_verma",
    "subgeneric_generators",
    "tau_pair",
    "tau_quad",
    "verify_generation",
    "verma_flag_multiplicity",
]

__version__ = "0.1.0"
