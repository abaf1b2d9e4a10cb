import pytest

from slicecalc.errors import InvalidMackeyError, InvalidSpecError
from slicecalc.linalg.abelian import FgAbGroup
from slicecalc.linalg.matrix import IntMatrix
from slicecalc.mackey import CpMackey, burnside, is_valid
from slicecalc.slices.connectivity import smash_verdict
from slicecalc.reps.group import CyclicGroup
from slicecalc.reps.virtual import lam
from slicecalc.slices.formulas import (
    SliceCase,
    SliceFunctor,
    apply_slice_functor,
    class_link,
    decompose,
    format_degree,
    representative_only,
    slice_description,
    slice_schedule,
)


@pytest.mark.parametrize(
    "p, n, m, case, k",
    [
        (3, 6, 2, SliceCase.RHO_MULTIPLE, 0),
        (3, 4, 1, SliceCase.ODD, 0),
        (5, -1, -1, SliceCase.EVEN, 1),
        (7, 12, 1, SliceCase.ODD, 2),
    ],
)
def test_decompose_examples(p, n, m, case, k):
    idx = decompose(p, n)
    assert (idx.m, idx.case, idx.k) == (m, case, k)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_decompose_round_trip_and_dimension(p):
    for n in range(-50, 51):
        idx = decompose(p, n)
        assert idx.reconstruct() == n
        assert 0 <= idx.k <= (p - 3) // 2
        desc = slice_description(p, n)
        assert desc.underlying_dimension() == n
        assert desc.dimensions()[1] == n
        assert desc.suspension_rep().dimension == n


@pytest.mark.parametrize("p", [2, 4, 9, 1])
def test_decompose_rejects_non_odd_primes(p):
    with pytest.raises(InvalidSpecError):
        decompose(p, 3)


def test_description_examples():
    d0 = slice_description(3, 0)
    assert d0.functor is SliceFunctor.IDENTITY
    assert d0.homotopy_degree_label == "0"

    d2 = slice_description(3, 2)
    assert d2.functor is SliceFunctor.E_TENSOR
    assert d2.homotopy_degree_label == "lambda"

    d4 = slice_description(3, 4)
    assert d4.render() == "Sigma^{rho+1} H P0 pi_{rho+1}"

    neg = slice_description(5, -1)
    assert neg.functor is SliceFunctor.E_TENSOR
    assert neg.homotopy_degree_label == "-rho+2lambda"
    assert neg.render() == "Sigma^{-rho+2lambda} H(EC_5 ⊗ pi_{-rho+2lambda})"
    assert neg.dimensions().as_dict() == {1: -1, 5: -1}


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_minus_one_slice_has_dimension_minus_one_everywhere(p):
    desc = slice_description(p, -1)
    assert desc.functor is SliceFunctor.E_TENSOR
    assert desc.dimensions().as_dict() == {1: -1, p: -1}


@pytest.mark.parametrize("p", [3, 5, 7])
def test_periodicity_adds_one_rho(p):
    for n in range(-20, 20):
        a, b = slice_description(p, n), slice_description(p, n + p)
        assert b.rho_mult == a.rho_mult + 1
        assert (b.lambda_mult, b.int_shift, b.functor, b.index.case, b.index.k) == (
            a.lambda_mult,
            a.int_shift,
            a.functor,
            a.index.case,
            a.index.k,
        )


def test_format_degree():
    assert format_degree(0, 0, 0) == "0"
    assert format_degree(1, 0, 1) == "rho+1"
    assert format_degree(-2, 1, 0) == "-2rho+lambda"
    assert format_degree(0, 0, -1) == "-1"


def test_json_row():
    assert slice_description(3, 4).to_json() == {
        "n": 4,
        "p": 3,
        "rho": 1,
        "lambda": 0,
        "shift": 1,
        "functor": "P0",
        "degree": "rho+1",
        "case": "Odd(0)",
    }


# -----------------------------
# Applying the functors
# -----------------------------

def test_apply_identity_returns_input():
    m = burnside(3)
    assert apply_slice_functor(slice_description(3, 0), m) == m


def test_apply_p_zero_to_burnside():
    result = apply_slice_functor(slice_description(3, 4), burnside(3))
    assert result.top.describe() == "Z"
    assert result.res.matrix[0, 0] * result.tr.matrix[0, 0] == 3
    assert abs(result.res.matrix[0, 0]) == 1


def test_apply_e_tensor_to_burnside():
    result = apply_slice_functor(slice_description(3, 2), burnside(3))
    assert result.top.describe() == "Z"
    assert abs(result.res.matrix[0, 0]) == 3
    assert abs(result.tr.matrix[0, 0]) == 1


def test_apply_output_validates_and_keeps_bottom(rng, mackey_factory):
    for _ in range(60):
        p = rng.choice([3, 5])
        m = mackey_factory(rng, p)
        for n in range(p):
            out = apply_slice_functor(slice_description(p, n), m)
            assert is_valid(out)
            assert out.bottom == m.bottom


def test_apply_rejects_wrong_prime_and_invalid_data():
    with pytest.raises(InvalidSpecError):
        apply_slice_functor(slice_description(5, 1), burnside(3))
    bad = CpMackey.from_matrices(
        3, FgAbGroup.free(1), FgAbGroup.free(1), IntMatrix.scalar(1), IntMatrix.scalar(1)
    )
    with pytest.raises(InvalidMackeyError):
        apply_slice_functor(slice_description(3, 1), bad)


# -----------------------------
# Schedules
# -----------------------------

def _functors(p, lo, hi):
    return [row.description.functor.value for row in slice_schedule(p, lo, hi)]


def test_schedule_examples():
    assert _functors(3, 0, 5) == ["Id", "P0", "ETensor", "Id", "P0", "ETensor"]
    assert _functors(5, 0, 4) == ["Id", "P0", "ETensor", "P0", "ETensor"]
    rows = slice_schedule(3, -3, -1)
    assert [r.description.functor.value for r in rows] == ["Id", "P0", "ETensor"]
    assert rows[0].description.rho_mult == -1


def test_schedule_rejects_empty_range():
    with pytest.raises(InvalidSpecError):
        slice_schedule(3, 2, 1)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_class_links_reconstruct_n(p):
    rep = lam(CyclicGroup(p), 1)
    for n in range(-2 * p, 3 * p):
        link = class_link(p, n)
        assert link.representative in (1, 2)
        assert n == link.representative + 2 * link.lambda_steps + p * link.rho_shift
        for step in range(link.lambda_steps):
            start = link.representative + 2 * step
            assert smash_verdict(rep, start, 2).is_equivalence


def test_schedule_row_json():
    row = slice_schedule(5, 3, 3)[0]
    doc = row.to_json()
    assert doc["functor"] == "P0"
    assert doc["class_representative"] == 1
    assert doc["lambda_steps"] == 1
    assert doc["rho_shift"] == 0


def test_higher_groups_report_representatives_only():
    assert representative_only(3, 2, 13) == (4, 4)
    assert representative_only(3, 2, 9) == (0, 1)
    with pytest.raises(InvalidSpecError):
        representative_only(3, 1, 2)
