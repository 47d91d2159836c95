"""Exact homology-lattice computations for blown-up rational and ruled
surfaces: exceptional classes, Cremona reduction certificates,
symplectic cone tests, and twist factorizations."""

from .lattice import (
    FormClass,
    HomClass,
    LatticeModel,
    form_pairing,
    is_characteristic,
    pairing,
    reflect,
    reflection_matrix,
)
from .classexpr import (
    ParseError,
    class_from_json,
    class_to_json,
    form_from_json,
    model_from_json,
    model_to_json,
    parse_class,
    parse_form,
    print_class,
)
from .reduction import (
    EtaBound,
    NormalForm,
    ReflectionWord,
    cremona_reduce,
    eta_K,
    eta_lower_bound,
    gt_dimension,
    is_K_null_spherical,
    is_exceptional,
    is_reduced,
)
from .cone import (
    ConeResult,
    ExceptionalSet,
    LagrangianResult,
    enumerate_exceptional,
    in_cone,
    inflation_admissible,
    is_lagrangian_spherical,
)
from .decompose import (
    DecompositionError,
    IsometryMatrix,
    ValidationReport,
    decompose_K,
    decompose_K_alpha,
    decompose_ruled,
    matrix_from_json,
    matrix_to_json,
    validate,
)
from .oracle import (
    CrosscheckReport,
    EnumQuery,
    bfs_is_exceptional,
    bfs_is_knull_spherical,
    crosscheck,
    enumerate_classes,
)

__version__ = "0.1.0"

__all__ = [
    "LatticeModel",
    "HomClass",
    "FormClass",
    "pairing",
    "form_pairing",
    "reflect",
    "reflection_matrix",
    "is_characteristic",
    "ParseError",
    "parse_class",
    "parse_form",
    "print_class",
    "class_to_json",
    "class_from_json",
    "form_from_json",
    "model_to_json",
    "model_from_json",
    "NormalForm",
    "ReflectionWord",
    "EtaBound",
    "cremona_reduce",
    "eta_K",
    "eta_lower_bound",
    "gt_dimension",
    "is_reduced",
    "is_exceptional",
    "is_K_null_spherical",
    "ExceptionalSet",
    "ConeResult",
    "LagrangianResult",
    "enumerate_exceptional",
    "in_cone",
    "is_lagrangian_spherical",
    "inflation_admissible",
    "IsometryMatrix",
    "ValidationReport",
    "DecompositionError",
    "validate",
    "decompose_K",
    "decompose_K_alpha",
    "decompose_ruled",
    "matrix_to_json",
    "matrix_from_json",
    "EnumQuery",
    "CrosscheckReport",
    "enumerate_classes",
    "crosscheck",
    "bfs_is_exceptional",
    "bfs_is_knull_spherical",
    "__version__",
]
