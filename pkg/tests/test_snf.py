import random

import pytest
from sympy import Matrix

from slicecalc.errors import InvariantViolation
from slicecalc.linalg.matrix import IntMatrix
from slicecalc.linalg.snf import SmithForm, integer_nullspace, smith_normal_form


def _random_matrix(rng: random.Random) -> IntMatrix:
    rows, cols = rng.randint(1, 6), rng.randint(1, 6)
    return IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])


def _det(m: IntMatrix) -> int:
    return int(Matrix(m.to_lists()).det())


def test_known_form():
    m = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    form = smith_normal_form(m)
    assert form.divisors == [2, 6, 12]
    form.check()


def test_unpacks_as_udv():
    m = IntMatrix.from_rows([[6, 4], [2, 8]])
    u, d, v = smith_normal_form(m)
    assert u @ m @ v == d


def test_random_round_trip():
    rng = random.Random(1000)
    for _ in range(1000):
        m = _random_matrix(rng)
        form = smith_normal_form(m)
        form.check()
        u, d, v = form
        assert u @ m @ v == d
        assert abs(_det(u)) == 1
        assert abs(_det(v)) == 1
        divs = form.divisors
        assert all(b % a == 0 for a, b in zip(divs, divs[1:]))
        if m.rows == m.cols:
            prod = 1
            for x in d.diagonal():
                prod *= x
            assert prod == abs(_det(m))


def test_zero_and_empty_matrices():
    form = smith_normal_form(IntMatrix.zeros(3, 2))
    assert form.rank == 0
    form.check()
    empty = smith_normal_form(IntMatrix.zeros(2, 0))
    assert empty.rank == 0
    assert empty.left == IntMatrix.identity(2)


def test_big_entries_stay_exact():
    big = 2 ** 80
    m = IntMatrix.from_rows([[big, 0], [0, 3 * big]])
    form = smith_normal_form(m)
    assert form.divisors == [big, 3 * big]


def test_check_detects_tampering():
    m = IntMatrix.from_rows([[2, 0], [0, 3]])
    good = smith_normal_form(m)
    bad = SmithForm(good.source, good.left, IntMatrix.from_rows([[2, 0], [0, 3]]), good.right, good.left_inv)
    with pytest.raises(InvariantViolation):
        bad.check()


def test_integer_nullspace():
    rng = random.Random(5)
    for _ in range(200):
        m = _random_matrix(rng)
        null = integer_nullspace(m)
        assert null.rows == m.cols
        assert (m @ null).is_zero()
        assert null.cols == m.cols - smith_normal_form(m).rank


def test_nullspace_of_row():
    null = integer_nullspace(IntMatrix.from_rows([[1, 3]]))
    assert null.cols == 1
    a, b = null.col(0)
    assert a == -3 * b and abs(b) == 1
