from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from sympy import divisors, isprime, multiplicity

from ..errors import InvalidSpecError
from ..io_utils import encode_int


def require_odd_prime(p: int, what: str = "p") -> int:
    if isinstance(p, bool) or not isinstance(p, int) or p == 2 or not isprime(p):
        raise InvalidSpecError(f"{what} must be odd and prime, got {p!r}")
    return p


def p_adic_valuation(k: int, p: int) -> Optional[int]:
    """Exponent of the largest power of p dividing k; None for k == 0."""
    if k == 0:
        return None
    return int(multiplicity(p, abs(k)))


def capped_valuation(k: int, p: int, n: int) -> int:
    """min(v_p(k), n), with v_p(0) treated as infinite."""
    v = p_adic_valuation(k, p)
    return n if v is None else min(v, n)


@dataclass(frozen=True)
class CyclicGroup:
    """C_m. Subgroups are indexed by the divisors of m."""
    order: int

    def __post_init__(self) -> None:
        if isinstance(self.order, bool) or not isinstance(self.order, int) or self.order < 1:
            raise InvalidSpecError(f"group order must be a positive integer, got {self.order!r}")

    @property
    def divisors(self) -> Tuple[int, ...]:
        return tuple(int(d) for d in divisors(self.order))

    def subgroups(self) -> List["Subgroup"]:
        return [Subgroup(self, d) for d in self.divisors]

    def subgroup(self, d: int) -> "Subgroup":
        return Subgroup(self, d)

    @property
    def label(self) -> str:
        return f"C{self.order}"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Subgroup:
    """The unique subgroup C_d of C_m, generated by gamma^(m/d)."""
    group: CyclicGroup
    order: int

    def __post_init__(self) -> None:
        if not isinstance(self.order, int) or self.order < 1 or self.group.order % self.order:
            raise InvalidSpecError(f"{self.order!r} does not divide {self.group.order}")

    @property
    def index(self) -> int:
        return self.group.order // self.order

    @property
    def label(self) -> str:
        return f"C{self.order}"


def subgroups(group: CyclicGroup) -> List[Subgroup]:
    return group.subgroups()


@dataclass(frozen=True)
class OrbitFunction:
    """
    Integer-valued function on the orbits G/C_d, keyed by divisor d.
    Houses nu_n, fixed-point dimension functions and connectivity functions.
    """
    group: CyclicGroup
    values: Tuple[Tuple[int, int], ...]
    advisory: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        keys = tuple(d for d, _ in self.values)
        if keys != self.group.divisors:
            raise InvalidSpecError(f"orbit function must be defined on {self.group.divisors}, got {keys}")

    @classmethod
    def tabulate(cls, group: CyclicGroup, fn: Callable[[int], int], advisory: Tuple[str, ...] = ()) -> "OrbitFunction":
        return cls(group, tuple((d, int(fn(d))) for d in group.divisors), advisory)

    def __getitem__(self, d: int) -> int:
        for key, value in self.values:
            if key == d:
                return value
        raise KeyError(d)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.values)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.values)

    def _combine(self, other: "OrbitFunction", op: Callable[[int, int], int]) -> "OrbitFunction":
        if other.group != self.group:
            raise InvalidSpecError(f"orbit functions over {self.group} and {other.group}")
        return OrbitFunction(
            self.group,
            tuple((d, op(a, b)) for (d, a), (_, b) in zip(self.values, other.values)),
            self.advisory + tuple(a for a in other.advisory if a not in self.advisory),
        )

    def __add__(self, other: "OrbitFunction") -> "OrbitFunction":
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: "OrbitFunction") -> "OrbitFunction":
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self) -> "OrbitFunction":
        return OrbitFunction(self.group, tuple((d, -v) for d, v in self.values), self.advisory)

    def first_below(self, other: "OrbitFunction") -> Optional[int]:
        """Least divisor where self < other."""
        for (d, a), (_, b) in zip(self.values, other.values):
            if a < b:
                return d
        return None

    def first_above(self, other: "OrbitFunction") -> Optional[int]:
        """Least divisor where self > other."""
        return other.first_below(self)

    def is_zero(self) -> bool:
        return all(v == 0 for _, v in self.values)

    def render(self) -> str:
        return " ".join(f"C{d}:{v}" for d, v in self.values)

    def to_json(self) -> dict:
        return {
            "m": encode_int(self.group.order),
            "values": [{"divisor": encode_int(d), "value": encode_int(v)} for d, v in self.values],
            "advisory": list(self.advisory),
        }
