from __future__ import annotations

from typing import Any, Iterable, List, Sequence, Tuple

import numpy as np

from ..errors import InvalidSpecError
from ..io_utils import decode_int, encode_int


def _object_zeros(rows: int, cols: int) -> np.ndarray:
    # np.zeros with dtype=object fills with the Python int 0
    return np.zeros((rows, cols), dtype=object)


class IntMatrix:
    """
    Immutable integer matrix with arbitrary-precision entries.

    Entries live in a numpy array of dtype=object holding Python ints, so
    arithmetic never overflows. Shapes with zero rows or zero columns are legal
    and behave like the empty linear maps they stand for.
    """

    __slots__ = ("_a",)

    def __init__(self, array: np.ndarray) -> None:
        if array.ndim != 2:
            raise InvalidSpecError(f"matrix must be two-dimensional, got shape {array.shape}")
        a = np.array(array, dtype=object, copy=True)
        a.flags.writeable = False
        self._a = a

    # -----------------------------
    # Constructors
    # -----------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        n_rows = len(rows)
        if cols is None:
            cols = len(rows[0]) if n_rows else 0
        a = _object_zeros(n_rows, cols)
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise InvalidSpecError(f"row {i} has {len(row)} entries, expected {cols}")
            for j, v in enumerate(row):
                a[i, j] = int(v)
        return cls(a)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(_object_zeros(rows, cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        a = _object_zeros(n, n)
        for i in range(n):
            a[i, i] = 1
        return cls(a)

    @classmethod
    def column(cls, values: Sequence[int]) -> "IntMatrix":
        return cls.from_rows([[int(v)] for v in values], cols=1)

    @classmethod
    def scalar(cls, value: int) -> "IntMatrix":
        return cls.from_rows([[value]])

    @classmethod
    def hstack(cls, blocks: Sequence["IntMatrix"], rows: int | None = None) -> "IntMatrix":
        """Concatenate side by side. `rows` fixes the height when every block is empty."""
        if rows is None:
            if not blocks:
                raise InvalidSpecError("hstack needs blocks or an explicit row count")
            rows = blocks[0].rows
        for b in blocks:
            if b.rows != rows:
                raise InvalidSpecError(f"hstack height mismatch: {b.rows} vs {rows}")
        a = _object_zeros(rows, sum(b.cols for b in blocks))
        at = 0
        for b in blocks:
            a[:, at:at + b.cols] = b._a
            at += b.cols
        return cls(a)

    # -----------------------------
    # Shape and access
    # -----------------------------
    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: Tuple[int, int]) -> int:
        i, j = idx
        return int(self._a[i, j])

    def row(self, i: int) -> List[int]:
        return [int(v) for v in self._a[i, :]]

    def col(self, j: int) -> List[int]:
        return [int(v) for v in self._a[:, j]]

    def to_lists(self) -> List[List[int]]:
        return [self.row(i) for i in range(self.rows)]

    def to_numpy(self) -> np.ndarray:
        """Writable copy, still dtype=object."""
        return np.array(self._a, dtype=object, copy=True)

    def take_rows(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        if not idx:
            return IntMatrix.zeros(0, self.cols)
        return IntMatrix(self._a[idx, :])

    def take_cols(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        if not idx:
            return IntMatrix.zeros(self.rows, 0)
        return IntMatrix(self._a[:, idx])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self._a.T)

    def diagonal(self) -> List[int]:
        return [int(self._a[i, i]) for i in range(min(self.rows, self.cols))]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self._a.flat)

    # -----------------------------
    # Arithmetic
    # -----------------------------
    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InvalidSpecError(f"cannot multiply {self.shape} by {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix(self._a.dot(other._a))

    def apply(self, vector: Sequence[int]) -> List[int]:
        return (self @ IntMatrix.column(vector)).col(0) if self.rows else []

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self._a + other._a)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self._a - other._a)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(-self._a)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self._a * int(k))

    def power(self, e: int) -> "IntMatrix":
        if self.rows != self.cols or e < 0:
            raise InvalidSpecError("power needs a square matrix and a non-negative exponent")
        out = IntMatrix.identity(self.rows)
        for _ in range(e):
            out = out @ self
        return out

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise InvalidSpecError(f"shape mismatch: {self.shape} vs {other.shape}")

    # -----------------------------
    # Equality, hashing, JSON
    # -----------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            int(a) == int(b) for a, b in zip(self._a.flat, other._a.flat)
        )

    def __hash__(self) -> int:
        return hash((self.shape, tuple(int(v) for v in self._a.flat)))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_lists()!r})"

    def to_json(self) -> List[List[Any]]:
        return [[encode_int(v) for v in row] for row in self.to_lists()]

    @classmethod
    def from_json(cls, obj: Any, path: str = "$", cols: int | None = None) -> "IntMatrix":
        """Row-major nested arrays; big entries may be decimal strings."""
        if not isinstance(obj, list):
            raise InvalidSpecError("expected a list of rows", path=path)
        rows: List[List[int]] = []
        for i, row in enumerate(obj):
            if not isinstance(row, list):
                raise InvalidSpecError("expected a list of integers", path=f"{path}[{i}]")
            rows.append([decode_int(v, f"{path}[{i}][{j}]") for j, v in enumerate(row)])
        if cols is None and not rows:
            cols = 0
        try:
            return cls.from_rows(rows, cols=cols)
        except InvalidSpecError as e:
            raise InvalidSpecError(str(e), path=path) from e
