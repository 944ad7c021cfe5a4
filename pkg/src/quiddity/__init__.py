"""Exact tools for lambda-quiddities: cyclic tuples whose ordered product of
elementary matrices [[a, -1], [1, 0]] equals plus or minus the identity,
taken over cyclic additive subgroups of the complex numbers (integer
multiples of s, sqrt(k), i*sqrt(k), or a formal transcendental X).
"""

from .core import (
    Mat2,
    Quiddity,
    SizeLimitError,
    TheoremViolation,
    canonical_coeffs,
    canonical_form,
    continuant_euler,
    continuant_rec,
    dihedral_orbit,
    is_quiddity,
    mat_of,
    product_matrix,
    reduce_unit,
    reduce_zero,
    rotations,
    sum_oplus,
)
from .even import (
    MODE_EQUIV,
    MODE_STRICT,
    EvenSearchState,
    is_evenly_reducible,
    phi1_link_check,
    search_evenly_irreducible,
)
from .maps import (
    OddSizeError,
    phi,
    phi_inverse,
    phi_preserves_irreducibility_check,
    rescale_even,
    rescale_even_inverse,
)
from .rings import (
    ElementSyntaxError,
    GeneratorSpec,
    GeneratorSyntaxError,
    Int,
    MixedRingError,
    NoModulusError,
    Poly,
    Quad,
    RingElem,
    cmp_abs_squared_with_4,
    format_element,
    parse_element,
    sort_key,
)
from .solve import (
    DEFAULT_WORK_LIMIT,
    Decomposition,
    EnumSpec,
    NotAQuiddityError,
    NotUnimodularError,
    WorkLimitExceeded,
    check_two_small_entries,
    classify_irreducibles,
    enumerate_quiddities,
    find_decomposition,
    is_irreducible,
    solve_tail2,
)
from .triangulation import (
    Labeling,
    NotAdmissibleError,
    Triangulation,
    enumerate_triangulations,
    find_labeling,
    is_admissible,
    quiddity_of_labeling,
    render_labeling,
    vertex_sums,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_WORK_LIMIT",
    "Decomposition",
    "ElementSyntaxError",
    "EnumSpec",
    "EvenSearchState",
    "GeneratorSpec",
    "GeneratorSyntaxError",
    "Int",
    "Labeling",
    "MODE_EQUIV",
    "MODE_STRICT",
    "Mat2",
    "MixedRingError",
    "NoModulusError",
    "NotAQuiddityError",
    "NotAdmissibleError",
    "NotUnimodularError",
    "OddSizeError",
    "Poly",
    "Quad",
    "Quiddity",
    "RingElem",
    "SizeLimitError",
    "TheoremViolation",
    "Triangulation",
    "WorkLimitExceeded",
    "canonical_coeffs",
    "canonical_form",
    "check_two_small_entries",
    "classify_irreducibles",
    "cmp_abs_squared_with_4",
    "continuant_euler",
    "continuant_rec",
    "dihedral_orbit",
    "enumerate_quiddities",
    "enumerate_triangulations",
    "find_decomposition",
    "find_labeling",
    "format_element",
    "is_admissible",
    "is_evenly_reducible",
    "is_irreducible",
    "is_quiddity",
    "mat_of",
    "parse_element",
    "phi",
    "phi1_link_check",
    "phi_inverse",
    "phi_preserves_irreducibility_check",
    "product_matrix",
    "quiddity_of_labeling",
    "reduce_unit",
    "reduce_zero",
    "render_labeling",
    "rescale_even",
    "rescale_even_inverse",
    "rotations",
    "search_evenly_irreducible",
    "solve_tail2",
    "sort_key",
    "sum_oplus",
    "vertex_sums",
]
