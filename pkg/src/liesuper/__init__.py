"""Exact computations with finite-dimensional Lie superalgebras over Q and GF(p), p >= 5."""
from ._kernels import BACKEND
from .algebra import (
    AxiomViolation,
    GradingViolation,
    Homomorphism,
    JacobiViolation,
    LieSuperalgebra,
    NotAnIdeal,
    NotASubalgebra,
    NotAHomomorphism,
    SearchCapExceeded,
    SkewViolation,
    center,
    centralizer,
    derived_subalgebra,
    direct_sum,
    generates_algebra,
    image,
    is_graded_ideal,
    is_isomorphism,
    kernel,
    minimal_homogeneous_generators,
    quotient,
    validate,
)
from .catalog import abelian, by_name, catalog, hev, hodd, random_algebra
from .extensions import (
    CentralExtension,
    Cocycle,
    InvalidCocycle,
    NotExact,
    StemComplementNotFound,
    central_extension_from_cocycles,
    classify_extension,
    coboundary_space,
    cocycle_space,
    construct_stem_cover,
    cover_dimension,
    covers_isoclinic_check,
    find_cover_epimorphism,
    make_cocycle,
    multiplier,
    stem_extensions_from_cover,
)
from .fields import GF, QQ, Field, FieldError
from .io import parse_algebra, serialize
from .isoclinism import (
    IsoclinismPair,
    SearchCaps,
    commutator_map,
    converse_schur_bound,
    decide_isoclinic,
    epimorphism_isoclinism_test,
    fingerprint,
    is_stem,
    isoclinism_quotient,
    isoclinism_subalgebra_plus_center,
    isoclinism_with_direct_sum,
    minimality_check,
    stem_reduce,
    verify_homoclinism,
    verify_isoclinism,
)
from .linalg import GradedDim, GradedLinearMap, GradedSubspace, complement, intersect, solve_kernel, sum_subspaces
from .search import FieldNotFinite, find_isomorphism

__version__ = "0.1.0"
