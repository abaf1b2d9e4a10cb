from .abelian import FgAbGroup, Homomorphism, image, kernel, quotient
from .matrix import IntMatrix
from .snf import SmithForm, integer_nullspace, smith_normal_form

__all__ = [
    "FgAbGroup",
    "Homomorphism",
    "IntMatrix",
    "SmithForm",
    "image",
    "integer_nullspace",
    "kernel",
    "quotient",
    "smith_normal_form",
]
