"""
C_p Mackey functors over finitely generated abelian groups.

A functor has two levels, M(C_p/e) ("bottom") and M(C_p/C_p) ("top"), a
Weyl action gamma on the bottom, restriction top -> bottom and transfer
bottom -> top, subject to

    gamma^p = id,  gamma . res = res,  tr . gamma = tr,  res . tr = sum gamma^i.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..errors import InvalidMackeyError, InvalidSpecError
from ..linalg.abelian import FgAbGroup, Homomorphism
from ..linalg.matrix import IntMatrix
from ..reps.group import require_odd_prime

logger = logging.getLogger(__name__)

GAMMA_ORDER = "gamma^p = id"
GAMMA_RES = "gamma∘res = res"
TR_GAMMA = "tr∘gamma = tr"
RES_TR = "res∘tr = norm"
ILL_DEFINED = "ill-defined"


@dataclass(frozen=True)
class AxiomViolation:
    """One failed check. kind is "axiom" or "ill-defined"."""
    kind: str
    axiom: str
    level: str
    generator: Optional[int]
    path: str

    def __str__(self) -> str:
        if self.kind == ILL_DEFINED:
            return f"{self.path}: map does not respect relator {self.generator}"
        broken = self.axiom.replace(" = ", " ≠ ")
        return f"{broken} at {self.level} generator {self.generator} ({self.path})"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "axiom": self.axiom,
            "level": self.level,
            "generator": self.generator,
            "path": self.path,
            "message": str(self),
        }


@dataclass(frozen=True)
class CpMackey:
    p: int
    bottom: FgAbGroup
    top: FgAbGroup
    gamma: Homomorphism
    res: Homomorphism
    tr: Homomorphism

    def __post_init__(self) -> None:
        require_odd_prime(self.p)
        ends = {
            "gamma": (self.gamma, self.bottom, self.bottom),
            "res": (self.res, self.top, self.bottom),
            "tr": (self.tr, self.bottom, self.top),
        }
        for name, (f, src, tgt) in ends.items():
            if f.source != src or f.target != tgt:
                raise InvalidSpecError(f"{name} has the wrong source or target", path=f"$.{name}")

    @classmethod
    def from_matrices(
        cls,
        p: int,
        bottom: FgAbGroup,
        top: FgAbGroup,
        res: IntMatrix,
        tr: IntMatrix,
        gamma: Optional[IntMatrix] = None,
    ) -> "CpMackey":
        if gamma is None:
            gamma = IntMatrix.identity(bottom.generators)
        return cls(
            p,
            bottom,
            top,
            gamma=Homomorphism(bottom, bottom, gamma),
            res=Homomorphism(top, bottom, res),
            tr=Homomorphism(bottom, top, tr),
        )

    def norm(self) -> Homomorphism:
        """sum_{i<p} gamma^i on the bottom level."""
        total = IntMatrix.zeros(self.bottom.generators, self.bottom.generators)
        power = IntMatrix.identity(self.bottom.generators)
        for _ in range(self.p):
            total = total + power
            power = self.gamma.matrix @ power
        return Homomorphism(self.bottom, self.bottom, total)

    def with_top(self, top: FgAbGroup, res: Homomorphism, tr: Homomorphism) -> "CpMackey":
        return CpMackey(self.p, self.bottom, top, self.gamma, res, tr)

    def simplified(self) -> Tuple["CpMackey", Homomorphism]:
        """
        Move the top level to its normal-form presentation; the bottom level is
        left exactly as it is. Returns the new functor and the top isomorphism
        old top -> new top.
        """
        nf = self.top.normal_form()
        res = self.res.compose(nf.from_normal)
        tr = nf.to_normal.compose(self.tr).reduced()
        return self.with_top(nf.group, res, tr), nf.to_normal.reduced()

    def summary(self) -> str:
        return (
            f"C_{self.p} Mackey functor: top {self.top.describe()}, bottom {self.bottom.describe()}, "
            f"res {self.res.matrix.to_lists()}, tr {self.tr.matrix.to_lists()}, "
            f"gamma {self.gamma.matrix.to_lists()}"
        )


# -----------------------------
# Validation
# -----------------------------

def _ill_defined(m: CpMackey) -> List[AxiomViolation]:
    out = []
    for name in ("gamma", "res", "tr"):
        f: Homomorphism = getattr(m, name)
        for j in f.ill_defined_relators():
            out.append(AxiomViolation(ILL_DEFINED, name, "source", j, f"$.{name}"))
    return out


def validate(m: CpMackey) -> List[AxiomViolation]:
    """
    All violated axioms, each with the offending generator. An empty list means
    the functor is valid. Ill-defined component maps are reported instead of
    axiom failures, since the axioms are meaningless for them.
    """
    broken = _ill_defined(m)
    if broken:
        return broken

    out: List[AxiomViolation] = []
    ident = Homomorphism.identity(m.bottom)
    gamma_p = Homomorphism(m.bottom, m.bottom, m.gamma.matrix.power(m.p))
    checks = [
        (GAMMA_ORDER, gamma_p, ident, "bottom", "$.gamma"),
        (GAMMA_RES, m.gamma.compose(m.res), m.res, "top", "$.res"),
        (TR_GAMMA, m.tr.compose(m.gamma), m.tr, "bottom", "$.tr"),
        (RES_TR, m.res.compose(m.tr), m.norm(), "bottom", "$.res"),
    ]
    for axiom, lhs, rhs, level, path in checks:
        for j in lhs.failing_generators(rhs):
            out.append(AxiomViolation("axiom", axiom, level, j, path))
    if out:
        logger.debug("validation found %s violation(s)", len(out))
    return out


def is_valid(m: CpMackey) -> bool:
    return not validate(m)


def require_valid(m: CpMackey) -> None:
    violations = validate(m)
    if violations:
        raise InvalidMackeyError(violations)


# -----------------------------
# Standard functors
# -----------------------------

def burnside(p: int) -> CpMackey:
    """
    Burnside functor: bottom Z with trivial action, top Z^2 on ([C_p/C_p], [C_p/e]),
    res(a, b) = a + p b, tr(c) = (0, c).
    """
    require_odd_prime(p)
    return CpMackey.from_matrices(
        p,
        bottom=FgAbGroup.free(1),
        top=FgAbGroup.free(2),
        res=IntMatrix.from_rows([[1, p]]),
        tr=IntMatrix.from_rows([[0], [1]]),
    )


def fixed_point(p: int, coefficients: Optional[FgAbGroup] = None) -> CpMackey:
    """Fixed-point functor of a trivial module A (default Z): res = 1, tr = p, gamma = 1."""
    require_odd_prime(p)
    a = coefficients if coefficients is not None else FgAbGroup.free(1)
    n = a.generators
    return CpMackey.from_matrices(
        p,
        bottom=a,
        top=a,
        res=IntMatrix.identity(n),
        tr=IntMatrix.identity(n).scale(p),
    )


# -----------------------------
# Morphisms
# -----------------------------

@dataclass(frozen=True)
class MackeyMorphism:
    source: CpMackey
    target: CpMackey
    top: Homomorphism
    bottom: Homomorphism

    def naturality_failures(self) -> List[str]:
        s, t = self.source, self.target
        out = []
        if not t.res.compose(self.top).equals(self.bottom.compose(s.res)):
            out.append("res")
        if not self.top.compose(s.tr).equals(t.tr.compose(self.bottom)):
            out.append("tr")
        if not self.bottom.compose(s.gamma).equals(t.gamma.compose(self.bottom)):
            out.append("gamma")
        return out

    def is_natural(self) -> bool:
        return not self.naturality_failures()

    def is_isomorphism(self) -> bool:
        return self.top.is_isomorphism() and self.bottom.is_isomorphism()
