"""
Smith normal form over the integers.

The reduction follows the classical elimination scheme: pick the nonzero
entry of least absolute value in the trailing block as pivot, clear its row
and column by Euclidean steps, and repair divisibility by folding an offending
row into the pivot row. Left and right transforms are accumulated alongside,
together with the inverse of the left transform.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ..errors import InvariantViolation
from .matrix import IntMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmithForm:
    """
    left @ source @ right == diagonal, left and right unimodular,
    left_inv @ left == identity.
    """
    source: IntMatrix
    left: IntMatrix
    diagonal: IntMatrix
    right: IntMatrix
    left_inv: IntMatrix

    def __iter__(self) -> Iterator[IntMatrix]:
        # unpacks as (U, D, V)
        return iter((self.left, self.diagonal, self.right))

    @property
    def divisors(self) -> List[int]:
        """Nonzero diagonal entries, each dividing the next."""
        return [d for d in self.diagonal.diagonal() if d != 0]

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def check(self) -> None:
        """Re-verify the defining equalities; raises InvariantViolation."""
        if self.left @ self.source @ self.right != self.diagonal:
            raise InvariantViolation("U*M*V does not reproduce the diagonal form")
        if self.left_inv @ self.left != IntMatrix.identity(self.left.rows):
            raise InvariantViolation("tracked inverse of U is wrong")
        d = self.diagonal
        for i in range(d.rows):
            for j in range(d.cols):
                if i != j and d[i, j] != 0:
                    raise InvariantViolation(f"off-diagonal entry at ({i}, {j})")
        divs = self.divisors
        if any(x <= 0 for x in divs):
            raise InvariantViolation("diagonal entries must be positive")
        if any(divs[i + 1] % divs[i] for i in range(len(divs) - 1)):
            raise InvariantViolation(f"divisibility chain broken: {divs}")
        if any(v != 0 for v in d.diagonal()[len(divs):]):
            raise InvariantViolation("zero entries must trail the nonzero ones")


def _nonzero_min_abs(a: np.ndarray, s: int) -> Tuple[Optional[int], Optional[int]]:
    """argmin |a[i, j]| over i, j >= s with a[i, j] != 0, or (None, None)."""
    idx: Tuple[Optional[int], Optional[int]] = (None, None)
    best = None
    for i in range(s, a.shape[0]):
        for j in range(s, a.shape[1]):
            v = a[i, j]
            if v == 0:
                continue
            if best is None or abs(v) < best:
                idx, best = (i, j), abs(v)
    return idx


class _SmithReducer:
    def __init__(self, m: IntMatrix) -> None:
        self.source = m
        self.a = m.to_numpy()
        self.left = IntMatrix.identity(m.rows).to_numpy()
        self.left_inv = IntMatrix.identity(m.rows).to_numpy()
        self.right = IntMatrix.identity(m.cols).to_numpy()

    @property
    def num_rows(self) -> int:
        return self.a.shape[0]

    @property
    def num_cols(self) -> int:
        return self.a.shape[1]

    def run(self) -> SmithForm:
        for s in range(min(self.num_rows, self.num_cols)):
            if not self._settle(s):
                break
        return SmithForm(
            source=self.source,
            left=IntMatrix(self.left),
            diagonal=IntMatrix(self.a),
            right=IntMatrix(self.right),
            left_inv=IntMatrix(self.left_inv),
        )

    def _settle(self, s: int) -> bool:
        """Put the s-th invariant factor at (s, s). False when the block is zero."""
        while True:
            row, col = _nonzero_min_abs(self.a, s)
            if row is None or col is None:
                return False
            self._swap_rows(s, row)
            self._swap_cols(s, col)
            pivot = self.a[s, s]

            for i in range(s + 1, self.num_rows):
                if self.a[i, s] != 0:
                    self._add_row(i, s, -(self.a[i, s] // pivot))
            for j in range(s + 1, self.num_cols):
                if self.a[s, j] != 0:
                    self._add_col(j, s, -(self.a[s, j] // pivot))

            if any(self.a[i, s] != 0 for i in range(s + 1, self.num_rows)):
                continue
            if any(self.a[s, j] != 0 for j in range(s + 1, self.num_cols)):
                continue

            offender = self._non_divisible_row(s)
            if offender is not None:
                self._add_row(s, offender, 1)
                continue

            if self.a[s, s] < 0:
                self._negate_row(s)
            return True

    def _non_divisible_row(self, s: int) -> Optional[int]:
        pivot = self.a[s, s]
        for i in range(s + 1, self.num_rows):
            for j in range(s + 1, self.num_cols):
                if self.a[i, j] % pivot != 0:
                    return i
        return None

    # Row operations act on `left`, their inverses on the columns of `left_inv`.
    def _swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        self.a[[i, j]] = self.a[[j, i]]
        self.left[[i, j]] = self.left[[j, i]]
        self.left_inv[:, [i, j]] = self.left_inv[:, [j, i]]

    def _add_row(self, i: int, j: int, k: int) -> None:
        """row_i += k * row_j"""
        self.a[i] = self.a[i] + self.a[j] * k
        self.left[i] = self.left[i] + self.left[j] * k
        self.left_inv[:, j] = self.left_inv[:, j] - self.left_inv[:, i] * k

    def _negate_row(self, i: int) -> None:
        self.a[i] = -self.a[i]
        self.left[i] = -self.left[i]
        self.left_inv[:, i] = -self.left_inv[:, i]

    def _swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        self.a[:, [i, j]] = self.a[:, [j, i]]
        self.right[:, [i, j]] = self.right[:, [j, i]]

    def _add_col(self, i: int, j: int, k: int) -> None:
        """col_i += k * col_j"""
        self.a[:, i] = self.a[:, i] + self.a[:, j] * k
        self.right[:, i] = self.right[:, i] + self.right[:, j] * k


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """
    Diagonalize an integer matrix: returns U, D, V (plus U^-1) with
    U @ m @ V == D, U and V unimodular, and d_1 | d_2 | ... on the diagonal.
    """
    form = _SmithReducer(m).run()
    logger.debug("smith form of %sx%s matrix: divisors %s", m.rows, m.cols, form.divisors)
    return form


def integer_nullspace(m: IntMatrix) -> IntMatrix:
    """
    Columns form a basis of {x in Z^cols : m @ x == 0}.
    They are the trailing columns of V past the rank.
    """
    form = smith_normal_form(m)
    return form.right.take_cols(range(form.rank, m.cols))
