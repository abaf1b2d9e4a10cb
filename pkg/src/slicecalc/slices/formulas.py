"""
Slices of C_p-spectra, p odd.

Write n = mp + r with 0 <= r <= p-1. Then the n-th slice of E is

    r = 0          Sigma^{m rho} H pi_{m rho}(E)
    r = 2k+1       Sigma^{m rho + k lambda + 1} H P0 pi_{m rho + k lambda + 1}(E)
    r = 2k+2       Sigma^{m rho + (k+1) lambda} H (EC_p (x) pi_{m rho + (k+1) lambda}(E))

with 0 <= k <= (p-3)/2 and m any integer. lambda is lambda(1); any lambda(k)
with p not dividing k gives the same categories.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from ..errors import InvalidSpecError
from ..mackey.functor import CpMackey, require_valid
from ..mackey.functors import e_tensor, p_zero
from ..reps.group import CyclicGroup, OrbitFunction, require_odd_prime
from ..reps.virtual import VirtualRep, dim_function, lam, regular_rep, trivial
from .classes import class_representative
from .connectivity import smash_verdict

logger = logging.getLogger(__name__)

LAMBDA_NOTE = "lambda = lambda(1); any lambda(k) with p not dividing k is interchangeable"


class SliceCase(str, Enum):
    RHO_MULTIPLE = "RhoMultiple"
    ODD = "Odd"
    EVEN = "Even"


class SliceFunctor(str, Enum):
    IDENTITY = "Id"
    P_ZERO = "P0"
    E_TENSOR = "ETensor"


@dataclass(frozen=True)
class SliceIndex:
    p: int
    n: int
    m: int
    case: SliceCase
    k: int = 0

    def reconstruct(self) -> int:
        if self.case is SliceCase.RHO_MULTIPLE:
            return self.m * self.p
        if self.case is SliceCase.ODD:
            return self.m * self.p + 2 * self.k + 1
        return self.m * self.p + 2 * self.k + 2

    @property
    def label(self) -> str:
        if self.case is SliceCase.RHO_MULTIPLE:
            return self.case.value
        return f"{self.case.value}({self.k})"


def decompose(p: int, n: int) -> SliceIndex:
    require_odd_prime(p)
    m, r = divmod(n, p)
    if r == 0:
        return SliceIndex(p, n, m, SliceCase.RHO_MULTIPLE)
    if r % 2:
        return SliceIndex(p, n, m, SliceCase.ODD, (r - 1) // 2)
    return SliceIndex(p, n, m, SliceCase.EVEN, (r - 2) // 2)


def format_degree(rho: int, lam_mult: int, shift: int) -> str:
    """ASCII RO(C_p) degree such as "-rho+2lambda" or "rho+1"."""
    out = ""
    for coeff, atom in ((rho, "rho"), (lam_mult, "lambda"), (shift, "")):
        if not coeff:
            continue
        if atom:
            body = atom if abs(coeff) == 1 else f"{abs(coeff)}{atom}"
        else:
            body = str(abs(coeff))
        out += ("-" if coeff < 0 else ("+" if out else "")) + body
    return out or "0"


@dataclass(frozen=True)
class SliceDescription:
    index: SliceIndex
    rho_mult: int
    lambda_mult: int
    int_shift: int
    functor: SliceFunctor

    @property
    def p(self) -> int:
        return self.index.p

    @property
    def n(self) -> int:
        return self.index.n

    @property
    def homotopy_degree_label(self) -> str:
        return format_degree(self.rho_mult, self.lambda_mult, self.int_shift)

    def suspension_rep(self) -> VirtualRep:
        g = CyclicGroup(self.p)
        return self.rho_mult * regular_rep(g) + lam(g, 1, self.lambda_mult) + trivial(g, self.int_shift)

    def dimensions(self) -> OrbitFunction:
        """Dimension of the suspension degree at C_1 and at C_p."""
        return dim_function(self.suspension_rep())

    def underlying_dimension(self) -> int:
        return self.rho_mult * self.p + 2 * self.lambda_mult + self.int_shift

    def render(self) -> str:
        deg = self.homotopy_degree_label
        if self.functor is SliceFunctor.IDENTITY:
            return f"Sigma^{{{deg}}} H pi_{{{deg}}}"
        if self.functor is SliceFunctor.P_ZERO:
            return f"Sigma^{{{deg}}} H P0 pi_{{{deg}}}"
        return f"Sigma^{{{deg}}} H(EC_{self.p} ⊗ pi_{{{deg}}})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "rho": self.rho_mult,
            "lambda": self.lambda_mult,
            "shift": self.int_shift,
            "functor": self.functor.value,
            "degree": self.homotopy_degree_label,
            "case": self.index.label,
        }


def slice_description(p: int, n: int) -> SliceDescription:
    idx = decompose(p, n)
    if idx.case is SliceCase.RHO_MULTIPLE:
        return SliceDescription(idx, idx.m, 0, 0, SliceFunctor.IDENTITY)
    if idx.case is SliceCase.ODD:
        return SliceDescription(idx, idx.m, idx.k, 1, SliceFunctor.P_ZERO)
    return SliceDescription(idx, idx.m, idx.k + 1, 0, SliceFunctor.E_TENSOR)


def apply_slice_functor(desc: SliceDescription, m: CpMackey) -> CpMackey:
    """M is read as the homotopy Mackey functor in degree desc.homotopy_degree_label."""
    if m.p != desc.p:
        raise InvalidSpecError(f"Mackey functor is over C_{m.p}, slice is over C_{desc.p}")
    require_valid(m)
    if desc.functor is SliceFunctor.P_ZERO:
        return p_zero(m)
    if desc.functor is SliceFunctor.E_TENSOR:
        return e_tensor(m)
    return m


# -----------------------------
# Schedules
# -----------------------------

@dataclass(frozen=True)
class ClassLink:
    """n = representative + 2*lambda_steps + p*rho_shift, each lambda step an equivalence."""
    representative: int
    lambda_steps: int
    rho_shift: int

    def render(self) -> str:
        return f"{self.representative} via {format_degree(self.rho_shift, self.lambda_steps, 0)}"


def class_link(p: int, n: int) -> ClassLink:
    """
    Which lambda-suspensions link tau_{>=n} to its class representative 1 or 2.
    Residue 0 belongs to the class of 1: p-2 is odd, so lambda carries it to p.
    """
    m, r = divmod(n, p)
    if r == 0:
        link = ClassLink(1, (p - 1) // 2, m - 1)
    elif r % 2:
        link = ClassLink(1, (r - 1) // 2, m)
    else:
        link = ClassLink(2, (r - 2) // 2, m)
    rep = lam(CyclicGroup(p), 1)
    for step in range(link.lambda_steps):
        start = link.representative + 2 * step
        if not smash_verdict(rep, start, 2).is_equivalence:
            raise InvalidSpecError(f"lambda does not link {start} to {start + 2} over C_{p}")
    return link


@dataclass(frozen=True)
class ScheduleRow:
    description: SliceDescription
    link: ClassLink

    def to_json(self) -> dict:
        return {
            **self.description.to_json(),
            "class_representative": self.link.representative,
            "lambda_steps": self.link.lambda_steps,
            "rho_shift": self.link.rho_shift,
        }


def slice_schedule(p: int, n_lo: int, n_hi: int) -> List[ScheduleRow]:
    require_odd_prime(p)
    if n_lo > n_hi:
        raise InvalidSpecError(f"empty range [{n_lo}, {n_hi}]")
    return [ScheduleRow(slice_description(p, n), class_link(p, n)) for n in range(n_lo, n_hi + 1)]


def representative_only(p: int, k: int, n: int) -> Tuple[int, Optional[int]]:
    """
    For C_{p^k} with k >= 2 only the class of n is known, not the slice functor.
    Returns (n mod p^k, representative).
    """
    require_odd_prime(p)
    if k < 2:
        raise InvalidSpecError("use slice_description for C_p")
    return n % p ** k, class_representative(p, k, n)
