"""
Decidable slice criteria for representation spheres.

Everything here compares orbit functions: a sphere S^V sits in tau_{>=n}
exactly when dim V^H >= ceil(n/|H|) for every subgroup H (its geometric fixed
points are S^{V^H}), and smashing with S^V carries tau_{>=n} into
tau_{>=n+k} when dim_V + nu_n >= nu_{n+k}, with equality everywhere
exactly when the map is an equivalence (S^{-V} gives the inverse).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Optional, Tuple

from ..config import NEGATIVE_N_ADVISORY
from ..errors import InvalidSpecError
from ..reps.group import CyclicGroup, OrbitFunction, Subgroup
from ..reps.virtual import VirtualRep, dim_function, regular_rep

logger = logging.getLogger(__name__)


def ceil_div(a: int, b: int) -> int:
    """Exact ceiling of a/b for b > 0, any sign of a."""
    return -((-a) // b)


def range_advisories(*ns: int) -> Tuple[str, ...]:
    """The connectivity characterization is only proven for n >= 0."""
    return (NEGATIVE_N_ADVISORY,) if any(n < 0 for n in ns) else ()


def nu(group: CyclicGroup, n: int) -> OrbitFunction:
    """nu_n(G/C_d) = ceil(n/d)."""
    advisory = range_advisories(n)
    if advisory:
        logger.debug("nu_%s requested outside the proven range", n)
    return OrbitFunction.tabulate(group, lambda d: ceil_div(n, d), advisory)


def sphere_connectivity(rep: VirtualRep) -> OrbitFunction:
    """Connectivity function of S^V: orbit-wise dim V^H."""
    return dim_function(rep)


# -----------------------------
# Membership
# -----------------------------

@dataclass(frozen=True)
class Membership:
    member: bool
    n: int
    witness_divisor: Optional[int] = None
    advisory: Tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "n": self.n,
            "witness_divisor": self.witness_divisor,
            "advisory": list(self.advisory),
        }


def meets_nu(connectivity: OrbitFunction, n: int) -> Membership:
    """Does a connectivity function dominate nu_n? The least failing divisor is the witness."""
    target = nu(connectivity.group, n)
    witness = connectivity.first_below(target)
    return Membership(witness is None, n, witness, target.advisory)


def sphere_in_tau(rep: VirtualRep, n: int) -> Membership:
    return meets_nu(sphere_connectivity(rep), n)


# -----------------------------
# Smash verdicts
# -----------------------------

class VerdictKind(str, Enum):
    EQUIVALENCE = "Equivalence"
    MAP_ONLY = "MapOnly"
    NONE_ESTABLISHED = "NoneEstablished"


@dataclass(frozen=True)
class SmashVerdict:
    """
    Outcome of comparing dim_V + nu_n with nu_{n+k}.
    The witness is the least divisor where equality fails (MapOnly) or where
    the inequality fails (NoneEstablished).
    """
    kind: VerdictKind
    witness_divisor: Optional[int] = None
    advisory: Tuple[str, ...] = ()

    @property
    def is_equivalence(self) -> bool:
        return self.kind is VerdictKind.EQUIVALENCE

    @property
    def induces_map(self) -> bool:
        return self.kind is not VerdictKind.NONE_ESTABLISHED

    def to_json(self) -> dict:
        return {
            "verdict": self.kind.value,
            "witness_divisor": self.witness_divisor,
            "advisory": list(self.advisory),
        }


def smash_verdict(rep: VirtualRep, n: int, k: int) -> SmashVerdict:
    lhs = dim_function(rep) + nu(rep.group, n)
    rhs = nu(rep.group, n + k)
    advisory = range_advisories(n, n + k)
    below = lhs.first_below(rhs)
    if below is not None:
        return SmashVerdict(VerdictKind.NONE_ESTABLISHED, below, advisory)
    above = lhs.first_above(rhs)
    if above is not None:
        return SmashVerdict(VerdictKind.MAP_ONLY, above, advisory)
    return SmashVerdict(VerdictKind.EQUIVALENCE, None, advisory)


def rho_shift_verdict(group: CyclicGroup, n: int) -> SmashVerdict:
    """Smashing with the regular representation sphere, tau_{>=n} -> tau_{>=n+|G|}."""
    return smash_verdict(regular_rep(group), n, group.order)


def is_auto_equivalence(rep: VirtualRep) -> bool:
    """dim_V vanishes on every orbit, so S^V preserves every tau_{>=n}."""
    return dim_function(rep).is_zero()


def commutes_with_slices(rep: VirtualRep) -> bool:
    """
    Smashing with such an S^V commutes with forming slices:
    Sigma^V P^n_n(E) = P^n_n(Sigma^V E) for every n and E.
    """
    return is_auto_equivalence(rep)


# -----------------------------
# Induced regular spheres
# -----------------------------

def induced_sphere_connectivity(group: CyclicGroup, subgroup: Subgroup, k: int) -> OrbitFunction:
    """
    Connectivity of G_+ smash_H S^{k rho_H} at G/C_d. For abelian G every
    double coset summand has fixed points of dimension k*[H : H cap C_d],
    and H cap C_d = C_gcd(|H|, d).
    """
    if subgroup.group != group:
        raise InvalidSpecError(f"{subgroup.label} is not a subgroup of {group}")
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise InvalidSpecError(f"k must be a non-negative integer, got {k!r}")
    h = subgroup.order
    return OrbitFunction.tabulate(group, lambda d: k * (h // gcd(h, d)))


def induced_sphere_in_tau(group: CyclicGroup, subgroup: Subgroup, k: int, n: int) -> Membership:
    """Generator-level containment: holds whenever k|H| >= n."""
    return meets_nu(induced_sphere_connectivity(group, subgroup, k), n)
