from .group import CyclicGroup, OrbitFunction, Subgroup, capped_valuation, p_adic_valuation
from .parse import parse_rep
from .virtual import (
    VirtualRep,
    canonicalize,
    dim_fixed,
    dim_function,
    is_actual,
    lam,
    reduced_regular,
    regular_rep,
    sign,
    trivial,
    v_j,
)

__all__ = [
    "CyclicGroup",
    "OrbitFunction",
    "Subgroup",
    "VirtualRep",
    "canonicalize",
    "capped_valuation",
    "dim_fixed",
    "dim_function",
    "is_actual",
    "lam",
    "p_adic_valuation",
    "parse_rep",
    "reduced_regular",
    "regular_rep",
    "sign",
    "trivial",
    "v_j",
]
