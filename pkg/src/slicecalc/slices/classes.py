"""
Equivalence classes of the categories tau_{>=n} for G = C_{p^k}.

The classes are generated, not assumed: residues mod p^k are merged along
the rho-shift n ~ n + p^k and along every V_j-shift n ~ n + 2p^j allowed by
the congruence condition, and the resulting partition is compared with the
expected 2^k classes and their representatives.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import ceil
from typing import Dict, List, Optional, Tuple

from ..config import HORIZON_PERIODS
from ..errors import InvalidSpecError
from ..reps.group import CyclicGroup, require_odd_prime
from ..reps.virtual import lam, v_j
from .connectivity import SmashVerdict, smash_verdict

logger = logging.getLogger(__name__)


class UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        # path compression
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        # union by size
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return True

    def same(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)

    def groups(self) -> List[List[int]]:
        """Blocks sorted internally and by least element."""
        res: Dict[int, List[int]] = {}
        for i in range(len(self.parent)):
            res.setdefault(self.find(i), []).append(i)
        return sorted(res.values(), key=lambda block: block[0])


def _check_jk(p: int, k: int, j: int) -> None:
    require_odd_prime(p)
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidSpecError(f"k must be a positive integer, got {k!r}")
    if not (0 <= j <= k - 1):
        raise InvalidSpecError(f"j must satisfy 0 <= j <= {k - 1}, got {j}")


def vj_condition(p: int, k: int, j: int, n: int) -> bool:
    """n mod p^(j+1) lies in [1, p^(j+1) - 2p^j]."""
    _check_jk(p, k, j)
    if n < 0:
        raise InvalidSpecError(f"n must be >= 0, got {n}")
    r = n % p ** (j + 1)
    return 1 <= r <= p ** (j + 1) - 2 * p ** j


def vj_ceiling_identity(p: int, k: int, j: int, n: int) -> bool:
    """
    Independent check of the V_j shift, with rational ceilings:
    for every d <= k, [2p^(j-d) if d <= j else 0] + ceil(n/p^d) == ceil((n + 2p^j)/p^d).
    """
    _check_jk(p, k, j)
    for d in range(k + 1):
        q = p ** d
        fixed = 2 * p ** (j - d) if d <= j else 0
        if fixed + ceil(Fraction(n, q)) != ceil(Fraction(n + 2 * p ** j, q)):
            return False
    return True


def representatives(p: int, k: int) -> List[int]:
    """n = sum a_i p^i with a_0 in {1, 2} and a_i in {0, 1} above, ascending."""
    out = []
    for a0 in (1, 2):
        for rest in product((0, 1), repeat=k - 1):
            out.append(a0 + sum(a * p ** (i + 1) for i, a in enumerate(rest)))
    return sorted(out)


@dataclass(frozen=True)
class ClassPartition:
    p: int
    k: int
    horizon: int
    blocks: Tuple[Tuple[int, ...], ...]
    representatives: Tuple[int, ...]
    rep_blocks: Tuple[int, ...] = field(default=())

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    @property
    def expected_count(self) -> int:
        return 2 ** self.k

    def block_of(self, n: int) -> int:
        r = n % self.modulus
        for i, block in enumerate(self.blocks):
            if r in block:
                return i
        raise InvalidSpecError(f"residue {r} missing from partition")

    def class_of(self, n: int) -> Tuple[int, Optional[int]]:
        """(block index, representative in that block) for any integer n."""
        b = self.block_of(n)
        rep = next((r for r, rb in zip(self.representatives, self.rep_blocks) if rb == b), None)
        return b, rep

    def is_consistent(self) -> bool:
        """Block count equals 2^k and representatives occupy distinct blocks."""
        return (
            len(self.blocks) == self.expected_count
            and len(self.representatives) == self.expected_count
            and len(set(self.rep_blocks)) == len(self.rep_blocks)
        )

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "horizon": self.horizon,
            "blocks": [list(b) for b in self.blocks],
            "representatives": [
                {"n": r, "block": b} for r, b in zip(self.representatives, self.rep_blocks)
            ],
            "count": len(self.blocks),
            "expected": self.expected_count,
            "consistent": self.is_consistent(),
        }


def equivalence_classes(p: int, k: int, horizon: Optional[int] = None) -> ClassPartition:
    require_odd_prime(p)
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidSpecError(f"k must be a positive integer, got {k!r}")
    modulus = p ** k
    if horizon is None:
        horizon = HORIZON_PERIODS * modulus
    if horizon <= 0 or horizon % modulus:
        raise InvalidSpecError(f"horizon must be a positive multiple of {modulus}, got {horizon}")

    # nodes are residues mod p^k: the rho-shift n ~ n + p^k is built in
    uf = UnionFind(modulus)
    for j in range(k):
        step = 2 * p ** j
        for n in range(horizon):
            if vj_condition(p, k, j, n):
                uf.union(n % modulus, (n + step) % modulus)

    blocks = tuple(tuple(b) for b in uf.groups())
    reps = tuple(representatives(p, k))
    index = {r: i for i, b in enumerate(blocks) for r in b}
    partition = ClassPartition(p, k, horizon, blocks, reps, tuple(index[r % modulus] for r in reps))
    logger.debug("C_%s^%s: %s blocks from horizon %s", p, k, len(blocks), horizon)
    return partition


def class_representative(p: int, k: int, n: int) -> Optional[int]:
    return equivalence_classes(p, k).class_of(n)[1]


# -----------------------------
# The lambda pattern for C_p
# -----------------------------

@dataclass(frozen=True)
class PatternRow:
    n: int
    verdict: SmashVerdict

    def to_json(self) -> dict:
        return {"n": self.n, **self.verdict.to_json()}


def cp_pattern(p: int) -> List[PatternRow]:
    """Smash verdicts for lambda = lambda(1) of C_p, tau_{>=n} -> tau_{>=n+2}, 1 <= n <= p-1."""
    require_odd_prime(p)
    rep = lam(CyclicGroup(p), 1)
    return [PatternRow(n, smash_verdict(rep, n, 2)) for n in range(1, p)]


def vj_shift_verdict(p: int, k: int, j: int, n: int) -> SmashVerdict:
    """tau_{>=n} -> tau_{>=n+2p^j} under S^{V_j}."""
    return smash_verdict(v_j(p, k, j), n, 2 * p ** j)
