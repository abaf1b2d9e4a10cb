from fractions import Fraction
from math import ceil

import pytest

from slicecalc.errors import InvalidSpecError
from slicecalc.slices.classes import (
    UnionFind,
    class_representative,
    cp_pattern,
    equivalence_classes,
    representatives,
    vj_ceiling_identity,
    vj_condition,
    vj_shift_verdict,
)
from slicecalc.slices.connectivity import VerdictKind


def test_union_find():
    uf = UnionFind(6)
    assert uf.union(0, 3)
    assert uf.union(3, 5)
    assert not uf.union(5, 0)
    assert uf.same(0, 5)
    assert not uf.same(1, 2)
    assert uf.groups() == [[0, 3, 5], [1], [2], [4]]


@pytest.mark.parametrize(
    "p, j, n, expected",
    [(3, 0, 1, True), (3, 0, 2, False), (3, 1, 12, True), (3, 1, 10, True), (3, 1, 13, False), (3, 1, 14, False), (3, 1, 9, False)],
)
def test_vj_condition(p, j, n, expected):
    assert vj_condition(p, 2, j, n) is expected


@pytest.mark.parametrize("args", [(3, 2, 2, 0), (3, 2, 0, -1), (4, 2, 0, 1), (3, 0, 0, 1)])
def test_vj_condition_rejects(args):
    with pytest.raises(InvalidSpecError):
        vj_condition(*args)


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_vj_shifts_are_equivalences(p, k):
    checked = 0
    for j in range(k):
        for n in range(4 * p ** k + 1):
            if not vj_condition(p, k, j, n):
                continue
            checked += 1
            assert vj_shift_verdict(p, k, j, n).kind is VerdictKind.EQUIVALENCE, (j, n)
            assert vj_ceiling_identity(p, k, j, n), (j, n)
    assert checked > 0


def test_vj_ceiling_identity_by_hand():
    # p=3, k=2, j=1, n=12: at C_3 the fixed part adds 2 and ceil(12/3)+2 == ceil(18/3)
    assert 2 + ceil(Fraction(12, 3)) == ceil(Fraction(18, 3))
    assert vj_ceiling_identity(3, 2, 1, 12)
    assert not vj_ceiling_identity(3, 2, 1, 14)


def test_representatives():
    assert representatives(3, 1) == [1, 2]
    assert representatives(3, 2) == [1, 2, 4, 5]
    assert representatives(5, 2) == [1, 2, 6, 7]
    assert len(representatives(7, 3)) == 8


def test_classes_p3_k1():
    part = equivalence_classes(3, 1)
    assert part.blocks == ((0, 1), (2,))
    assert sorted(part.representatives) == [1, 2]
    assert part.is_consistent()


def test_classes_p3_k2_by_hand():
    part = equivalence_classes(3, 2)
    assert {frozenset(b) for b in part.blocks} == {
        frozenset({0, 1, 3, 7}),
        frozenset({4, 6}),
        frozenset({2, 8}),
        frozenset({5}),
    }
    assert sorted(part.representatives) == [1, 2, 4, 5]
    assert part.is_consistent()


def test_classes_p5_k1():
    part = equivalence_classes(5, 1)
    assert {frozenset(b) for b in part.blocks} == {frozenset({0, 1, 3}), frozenset({2, 4})}


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_class_count_is_power_of_two(p, k):
    part = equivalence_classes(p, k)
    assert len(part.blocks) == 2 ** k
    assert len(set(part.rep_blocks)) == 2 ** k
    covered = sorted(r for b in part.blocks for r in b)
    assert covered == list(range(p ** k))


@pytest.mark.parametrize("p, k", [(3, 1), (3, 2), (5, 2), (3, 3)])
def test_classes_stabilize_in_horizon(p, k):
    base = equivalence_classes(p, k, 2 * p ** k)
    for periods in (3, 4, 6):
        assert equivalence_classes(p, k, periods * p ** k).blocks == base.blocks


def test_horizon_must_be_multiple():
    with pytest.raises(InvalidSpecError):
        equivalence_classes(3, 2, 10)
    with pytest.raises(InvalidSpecError):
        equivalence_classes(3, 2, 0)
    with pytest.raises(InvalidSpecError):
        equivalence_classes(2, 1)


def test_class_of_handles_any_integer():
    part = equivalence_classes(3, 2)
    assert part.class_of(10) == part.class_of(1)
    assert part.class_of(-8)[1] == 1
    assert class_representative(3, 2, 13) == 4
    assert class_representative(3, 2, 14) == 5


def test_partition_json():
    doc = equivalence_classes(3, 1).to_json()
    assert doc["count"] == 2
    assert doc["expected"] == 2
    assert doc["consistent"] is True
    assert doc["blocks"] == [[0, 1], [2]]


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_cp_pattern(p):
    for row in cp_pattern(p):
        n = row.n
        expected = (n % 2 == 1 and n <= p - 2) or (n % 2 == 0 and 2 <= n <= p - 3)
        assert row.verdict.is_equivalence == expected, n


def test_cp_pattern_examples():
    five = {row.n: row.verdict.kind for row in cp_pattern(5)}
    assert five == {
        1: VerdictKind.EQUIVALENCE,
        2: VerdictKind.EQUIVALENCE,
        3: VerdictKind.EQUIVALENCE,
        4: VerdictKind.NONE_ESTABLISHED,
    }
    three = {row.n: row.verdict.is_equivalence for row in cp_pattern(3)}
    assert three == {1: True, 2: False}
