from __future__ import annotations

import random
from typing import Callable, List, Tuple

import pytest

from slicecalc.linalg.abelian import FgAbGroup
from slicecalc.linalg.matrix import IntMatrix
from slicecalc.mackey.functor import CpMackey

Rows = List[List[int]]


def _block_diag(blocks: List[Tuple[Rows, int, int]]) -> Tuple[Rows, int, int]:
    """blocks are (rows, n_rows, n_cols); zero-size blocks are allowed."""
    n_rows = sum(b[1] for b in blocks)
    n_cols = sum(b[2] for b in blocks)
    out = [[0] * n_cols for _ in range(n_rows)]
    r0 = c0 = 0
    for rows, nr, nc in blocks:
        for i in range(nr):
            for j in range(nc):
                out[r0 + i][c0 + j] = rows[i][j]
        r0 += nr
        c0 += nc
    return out, n_rows, n_cols


def _piece(rng: random.Random, p: int) -> dict:
    """One indecomposable-ish building block of a C_p Mackey functor, as raw lists."""
    kind = rng.choice(["fixed", "orbit", "burnside", "torsion", "regular", "top_only"])
    if kind == "fixed":
        return dict(top=(1, [], 0), bottom=(1, [], 0), res=[[1]], tr=[[p]], gamma=[[1]])
    if kind == "orbit":
        return dict(top=(1, [], 0), bottom=(1, [], 0), res=[[p]], tr=[[1]], gamma=[[1]])
    if kind == "burnside":
        return dict(top=(2, [], 0), bottom=(1, [], 0), res=[[1, p]], tr=[[0], [1]], gamma=[[1]])
    if kind == "torsion":
        n = rng.randint(2, 9)
        return dict(top=(1, [[n]], 1), bottom=(1, [[n]], 1), res=[[1]], tr=[[p]], gamma=[[1]])
    if kind == "regular":
        # bottom Z[C_p] with the cyclic shift, top its fixed points
        gamma = [[1 if i == (j + 1) % p else 0 for j in range(p)] for i in range(p)]
        return dict(
            top=(1, [], 0),
            bottom=(p, [], 0),
            res=[[1] for _ in range(p)],
            tr=[[1] * p],
            gamma=gamma,
        )
    n = rng.choice([0, rng.randint(2, 9)])
    rels = [[n]] if n else []
    return dict(top=(1, rels, 1 if n else 0), bottom=(0, [], 0), res=[], tr=[[]], gamma=[])


def _unimodular(rng: random.Random, n: int, steps: int = 6) -> Tuple[Rows, Rows]:
    """Random A and A^-1 built from elementary row operations."""
    a = [[int(i == j) for j in range(n)] for i in range(n)]
    inv = [row[:] for row in a]
    if n < 2:
        return a, inv
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        # A <- E A with E = I + c e_ij; A^-1 <- A^-1 E^-1
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        for row in inv:
            row[j] -= c * row[i]
    return a, inv


def _mat(rows: Rows, n_rows: int, n_cols: int) -> IntMatrix:
    return IntMatrix.from_rows(rows, cols=n_cols) if n_rows else IntMatrix.zeros(0, n_cols)


def random_mackey(rng: random.Random, p: int, max_pieces: int = 3) -> CpMackey:
    """
    A valid C_p Mackey functor: a direct sum of standard pieces, with both
    levels moved to a random basis so the presentations are not diagonal.
    """
    pieces = [_piece(rng, p) for _ in range(rng.randint(1, max_pieces))]
    top_rels, nt, _ = _block_diag([(pc["top"][1], pc["top"][0], pc["top"][2]) for pc in pieces])
    bot_rels, nb, _ = _block_diag([(pc["bottom"][1], pc["bottom"][0], pc["bottom"][2]) for pc in pieces])
    top_rel_cols = sum(pc["top"][2] for pc in pieces)
    bot_rel_cols = sum(pc["bottom"][2] for pc in pieces)
    res, _, _ = _block_diag([(pc["res"], pc["bottom"][0], pc["top"][0]) for pc in pieces])
    tr, _, _ = _block_diag([(pc["tr"], pc["top"][0], pc["bottom"][0]) for pc in pieces])
    gamma, _, _ = _block_diag([(pc["gamma"], pc["bottom"][0], pc["bottom"][0]) for pc in pieces])

    at, at_inv = _unimodular(rng, nt)
    ab, ab_inv = _unimodular(rng, nb)
    A, A_inv = _mat(at, nt, nt), _mat(at_inv, nt, nt)
    B, B_inv = _mat(ab, nb, nb), _mat(ab_inv, nb, nb)

    top = FgAbGroup(nt, A @ _mat(top_rels, nt, top_rel_cols))
    bottom = FgAbGroup(nb, B @ _mat(bot_rels, nb, bot_rel_cols))
    return CpMackey.from_matrices(
        p,
        bottom,
        top,
        res=B @ _mat(res, nb, nt) @ A_inv,
        tr=A @ _mat(tr, nt, nb) @ B_inv,
        gamma=B @ _mat(gamma, nb, nb) @ B_inv,
    )


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def mackey_factory() -> Callable[[random.Random, int], CpMackey]:
    return random_mackey
