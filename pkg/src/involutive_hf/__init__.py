"""Involutive Heegaard Floer invariants computed from finite models over F2[U]."""

from .algebra import Element, MonoMatrix, compose, graded_smith, grading, solve_affine_f2
from .complex import (
    GradedComplex,
    GradedMap,
    HomologyModule,
    chain_map_space,
    d_invariant,
    homology,
    induced_on_homology,
    null_homotopy,
    phi,
    reduce,
    validate,
)
from .errors import (
    ComplexError,
    ConsistencyError,
    HomogeneityError,
    NotRationalHomologySphereError,
    ParseError,
    StructureError,
    ValidationError,
)
from .involutive import (
    InvolutiveSummary,
    ai0_terms,
    build_cone,
    correction_terms_cone,
    correction_terms_direct,
)
from .iota import IotaComplex, check_phi_correction, dual, tensor, validate_iota
from .knots import (
    StaircaseModel,
    SurgeryModel,
    a0_max_model,
    pin_grading,
    preset,
    preset_names,
    quadrant_min_model,
    staircase,
)
from .local import (
    duality_witness,
    find_local_map,
    group_inverse,
    group_product,
    group_unit,
)

__version__ = "0.1.0"

__all__ = [
    "a0_max_model",
    "ai0_terms",
    "build_cone",
    "chain_map_space",
    "check_phi_correction",
    "ComplexError",
    "compose",
    "ConsistencyError",
    "correction_terms_cone",
    "correction_terms_direct",
    "d_invariant",
    "dual",
    "duality_witness",
    "Element",
    "find_local_map",
    "graded_smith",
    "GradedComplex",
    "GradedMap",
    "grading",
    "group_inverse",
    "group_product",
    "group_unit",
    "HomogeneityError",
    "homology",
    "HomologyModule",
    "induced_on_homology",
    "InvolutiveSummary",
    "IotaComplex",
    "MonoMatrix",
    "NotRationalHomologySphereError",
    "null_homotopy",
    "ParseError",
    "phi",
    "pin_grading",
    "preset",
    "preset_names",
    "quadrant_min_model",
    "reduce",
    "solve_affine_f2",
    "staircase",
    "StaircaseModel",
    "StructureError",
    "SurgeryModel",
    "tensor",
    "validate",
    "validate_iota",
    "ValidationError",
]
