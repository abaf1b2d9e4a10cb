from .codec import load_mackey, mackey_from_json, mackey_to_json
from .functor import (
    AxiomViolation,
    CpMackey,
    MackeyMorphism,
    burnside,
    fixed_point,
    is_valid,
    require_valid,
    validate,
)
from .functors import e_tensor, e_tensor_inclusion, p_zero, p_zero_projection

__all__ = [
    "AxiomViolation",
    "CpMackey",
    "MackeyMorphism",
    "burnside",
    "e_tensor",
    "e_tensor_inclusion",
    "fixed_point",
    "is_valid",
    "load_mackey",
    "mackey_from_json",
    "mackey_to_json",
    "p_zero",
    "p_zero_projection",
    "require_valid",
    "validate",
]
