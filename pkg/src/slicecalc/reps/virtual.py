"""
Virtual real representations of cyclic groups, stored as multiplicity vectors.

The real irreducibles of C_m are the trivial line, the sign line (m even) and
the rotation planes lambda(k), where the generator acts by rotation through
2*pi*k/m. lambda(k), lambda(-k) and lambda(k mod m) are isomorphic, so indices
are folded into 1 <= k <= (m-1)//2; lambda(0) is two trivial lines and
lambda(m/2) two sign lines.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from ..errors import InvalidSpecError
from ..io_utils import decode_int, encode_int
from .group import CyclicGroup, OrbitFunction, Subgroup, require_odd_prime
from .types import LambdaTerm, RepSpec


@dataclass(frozen=True)
class VirtualRep:
    """
    Integer combination trivial*1 + sign*sigma + sum coeff*lambda(k).
    Always canonical: build instances through `VirtualRep.build` or `canonicalize`.
    """
    group: CyclicGroup
    trivial: int = 0
    sign: int = 0
    lambdas: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        m = self.group.order
        if m % 2 and self.sign:
            raise InvalidSpecError(f"sign representation does not exist for odd m={m}")
        top = (m - 1) // 2
        prev = 0
        for k, c in self.lambdas:
            if not (1 <= k <= top) or c == 0 or k <= prev:
                raise InvalidSpecError(f"non-canonical lambda terms {self.lambdas} for m={m}")
            prev = k

    @classmethod
    def build(
        cls,
        group: CyclicGroup,
        trivial: int = 0,
        sign: int = 0,
        lambdas: Union[Mapping[int, int], Iterable[Tuple[int, int]], None] = None,
    ) -> "VirtualRep":
        """Canonicalize arbitrary coefficients; lambda indices may be any integers."""
        m = group.order
        if m % 2 and sign:
            raise InvalidSpecError(f"sign coefficient must be 0 for odd m={m}, got {sign}")
        items = lambdas.items() if isinstance(lambdas, Mapping) else (lambdas or ())
        acc: Dict[int, int] = defaultdict(int)
        for k, c in items:
            r = k % m
            if r == 0:
                trivial += 2 * c
            elif 2 * r == m:
                sign += 2 * c
            else:
                acc[min(r, m - r)] += c
        terms = tuple((k, c) for k, c in sorted(acc.items()) if c)
        return cls(group, trivial, sign, terms)

    # -----------------------------
    # Arithmetic
    # -----------------------------
    def _check_same(self, other: "VirtualRep") -> None:
        if other.group != self.group:
            raise InvalidSpecError(f"representations of {self.group} and {other.group} cannot be combined")

    def __add__(self, other: "VirtualRep") -> "VirtualRep":
        self._check_same(other)
        acc = dict(self.lambdas)
        for k, c in other.lambdas:
            acc[k] = acc.get(k, 0) + c
        return VirtualRep.build(self.group, self.trivial + other.trivial, self.sign + other.sign, acc)

    def __neg__(self) -> "VirtualRep":
        return self * -1

    def __sub__(self, other: "VirtualRep") -> "VirtualRep":
        return self + (-other)

    def __mul__(self, k: int) -> "VirtualRep":
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return VirtualRep(
            self.group,
            self.trivial * k,
            self.sign * k,
            tuple((i, c * k) for i, c in self.lambdas) if k else (),
        )

    __rmul__ = __mul__

    # -----------------------------
    # Dimensions
    # -----------------------------
    @property
    def dimension(self) -> int:
        return self.trivial + self.sign + 2 * sum(c for _, c in self.lambdas)

    def lambda_coeff(self, k: int) -> int:
        return dict(self.lambdas).get(k, 0)

    def dim_fixed(self, subgroup: Union[Subgroup, int]) -> int:
        return dim_fixed(self, subgroup)

    def dim_function(self) -> OrbitFunction:
        return dim_function(self)

    def restrict(self, d: int) -> "VirtualRep":
        """
        Restriction to C_d, generated by gamma^(m/d): the sign line stays a sign
        line iff m/d is odd, lambda(k) becomes lambda(k) of C_d.
        """
        sub = Subgroup(self.group, d)
        small = CyclicGroup(d)
        sign_stays = sub.index % 2 == 1
        return VirtualRep.build(
            small,
            trivial=self.trivial + (0 if sign_stays else self.sign),
            sign=self.sign if sign_stays else 0,
            lambdas=self.lambdas,
        )

    def is_actual(self) -> bool:
        return is_actual(self)

    # -----------------------------
    # Wire formats
    # -----------------------------
    def to_spec(self) -> RepSpec:
        spec: RepSpec = {
            "m": encode_int(self.group.order),
            "trivial": encode_int(self.trivial),
            "sign": encode_int(self.sign),
            "lambda": [LambdaTerm(k=encode_int(k), coeff=encode_int(c)) for k, c in self.lambdas],
        }
        return spec

    def format(self) -> str:
        terms: List[Tuple[int, str]] = []
        if self.trivial:
            terms.append((self.trivial, ""))
        if self.sign:
            terms.append((self.sign, "sign"))
        terms.extend((c, f"lambda({k})") for k, c in self.lambdas)
        if not terms:
            return "0"
        out = ""
        for c, atom in terms:
            if not atom:
                body = str(abs(c))
            elif abs(c) == 1:
                body = atom
            else:
                body = f"{abs(c)}*{atom}"
            sep = "-" if c < 0 else ("+" if out else "")
            out += sep + body
        return out

    def __str__(self) -> str:
        return self.format()


# -----------------------------
# Named representations
# -----------------------------

def trivial(group: CyclicGroup, coeff: int = 1) -> VirtualRep:
    return VirtualRep.build(group, trivial=coeff)


def sign(group: CyclicGroup, coeff: int = 1) -> VirtualRep:
    return VirtualRep.build(group, sign=coeff)


def lam(group: CyclicGroup, k: int, coeff: int = 1) -> VirtualRep:
    return VirtualRep.build(group, lambdas=[(k, coeff)])


def zero(group: CyclicGroup) -> VirtualRep:
    return VirtualRep(group)


def regular_rep(group: CyclicGroup) -> VirtualRep:
    """rho = 1 + (sign if m even) + sum of lambda(k), 1 <= k <= (m-1)//2."""
    m = group.order
    return VirtualRep.build(
        group,
        trivial=1,
        sign=1 if m % 2 == 0 else 0,
        lambdas={k: 1 for k in range(1, (m - 1) // 2 + 1)},
    )


def reduced_regular(group: CyclicGroup) -> VirtualRep:
    return regular_rep(group) - trivial(group)


def v_j(p: int, k: int, j: int) -> VirtualRep:
    """
    The C_{p^k} representation sum_{i=0..j} (p^i - floor(p^(i-1))) * lambda(p^(j-i)).
    Dimension 2p^j; fixed dimension 2p^(j-d) on C_{p^d} for d <= j, 0 above.
    """
    require_odd_prime(p)
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidSpecError(f"k must be a positive integer, got {k!r}")
    if not (0 <= j <= k - 1):
        raise InvalidSpecError(f"j must satisfy 0 <= j <= k-1 = {k - 1}, got {j}")
    group = CyclicGroup(p ** k)
    terms = []
    for i in range(j + 1):
        floor_prev = p ** (i - 1) if i >= 1 else 0
        terms.append((p ** (j - i), p ** i - floor_prev))
    return VirtualRep.build(group, lambdas=terms)


# -----------------------------
# Operations
# -----------------------------

def canonicalize(spec: Union[RepSpec, Mapping[str, Any], VirtualRep], path: str = "$") -> VirtualRep:
    """
    Load a raw representation spec (non-canonical lambda indices allowed).
    A VirtualRep is already canonical and comes back unchanged.
    """
    if isinstance(spec, VirtualRep):
        return VirtualRep.build(spec.group, spec.trivial, spec.sign, spec.lambdas)
    if not isinstance(spec, Mapping):
        raise InvalidSpecError("expected an object", path=path)
    if "m" not in spec:
        raise InvalidSpecError("missing field", path=f"{path}.m")
    m = decode_int(spec["m"], f"{path}.m")
    if m < 1:
        raise InvalidSpecError("must be >= 1", path=f"{path}.m")
    group = CyclicGroup(m)
    triv = decode_int(spec.get("trivial", 0), f"{path}.trivial")
    sgn = decode_int(spec.get("sign", 0), f"{path}.sign")
    raw_terms = spec.get("lambda", [])
    if not isinstance(raw_terms, list):
        raise InvalidSpecError("expected a list", path=f"{path}.lambda")
    terms = []
    for i, t in enumerate(raw_terms):
        where = f"{path}.lambda[{i}]"
        if not isinstance(t, Mapping) or "k" not in t:
            raise InvalidSpecError("expected {\"k\": int, \"coeff\": int}", path=where)
        terms.append((decode_int(t["k"], f"{where}.k"), decode_int(t.get("coeff", 1), f"{where}.coeff")))
    try:
        return VirtualRep.build(group, triv, sgn, terms)
    except InvalidSpecError as e:
        raise InvalidSpecError(str(e), path=f"{path}.sign") from e


def _subgroup_order(rep: VirtualRep, subgroup: Union[Subgroup, int]) -> int:
    if isinstance(subgroup, Subgroup):
        if subgroup.group != rep.group:
            raise InvalidSpecError(f"{subgroup.label} is not a subgroup of {rep.group}")
        return subgroup.order
    return Subgroup(rep.group, subgroup).order


def dim_fixed(rep: VirtualRep, subgroup: Union[Subgroup, int]) -> int:
    """
    dim V^H for H = C_d. gamma^(m/d) rotates lambda(k) through 2*pi*k/d, so
    lambda(k) contributes 2 iff d | k; the sign line is fixed iff m/d is even.
    """
    d = _subgroup_order(rep, subgroup)
    index = rep.group.order // d
    out = rep.trivial
    if index % 2 == 0:
        out += rep.sign
    out += 2 * sum(c for k, c in rep.lambdas if k % d == 0)
    return out


def dim_function(rep: VirtualRep) -> OrbitFunction:
    return OrbitFunction.tabulate(rep.group, lambda d: dim_fixed(rep, d))


def is_actual(rep: VirtualRep) -> bool:
    return rep.trivial >= 0 and rep.sign >= 0 and all(c >= 0 for _, c in rep.lambdas)


def lambda_index_pattern(group: CyclicGroup, k: int) -> Tuple[bool, ...]:
    """Which divisors d have d | k; lambda(k) and lambda(k') share a dimension function iff these agree."""
    return tuple(k % d == 0 for d in group.divisors)
