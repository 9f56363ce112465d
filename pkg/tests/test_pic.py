from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nefcert.errors import AmbientMismatch, DomainTooSmall, InvalidPartition, ModulusMismatch
from nefcert.pic import (
    DegreeProblem,
    DivisorClass,
    canonical_partition,
    combine,
    enumerate_proper_partitions,
    modrep,
)

from conftest import divisor_classes


def test_canonical_partition_examples():
    assert canonical_partition({3, 4}, 4).block == {1, 2}
    assert canonical_partition({1, 2}, 4).block == {1, 2}
    with pytest.raises(InvalidPartition):
        canonical_partition({2}, 4)
    with pytest.raises(InvalidPartition):
        canonical_partition({1, 2, 3}, 4)


@given(st.integers(4, 10).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n), min_size=2, max_size=n - 2))))
def test_canonical_partition_idempotent_and_complement_invariant(args):
    n, subset = args
    P = canonical_partition(subset, n)
    assert canonical_partition(P.block, n) == P
    assert canonical_partition(set(range(1, n + 1)) - subset, n) == P


@pytest.mark.parametrize("n, count", [(4, 3), (5, 10), (9, 246)])
def test_partition_counts(n, count):
    assert len(enumerate_proper_partitions(n)) == count


@pytest.mark.parametrize("n", range(4, 13))
def test_partition_enumeration_complete(n):
    parts = enumerate_proper_partitions(n)
    assert len(parts) == 2 ** (n - 1) - n - 1
    assert len(set(parts)) == len(parts)
    assert list(parts) == sorted(parts, key=lambda P: P.sort_key())
    if n <= 8:
        # brute force over all subsets
        brute = {
            canonical_partition(S, n)
            for k in range(2, n - 1)
            for S in combinations(range(1, n + 1), k)
        }
        assert brute == set(parts)


def test_small_n_rejected():
    with pytest.raises(DomainTooSmall):
        enumerate_proper_partitions(3)
    with pytest.raises(DomainTooSmall):
        DegreeProblem((1, 1, 1), 3)
    with pytest.raises(DomainTooSmall):
        DivisorClass(3)


def test_degree_problem_validation():
    p = DegreeProblem((3, 2, 1, 2, 4, 1, 1, 2, 3, 1, 1, 1), 11)
    assert (p.n, p.s) == (12, 2)
    with pytest.raises(ModulusMismatch):
        DegreeProblem((1, 1, 1, 2), 3)


def test_modrep():
    assert [modrep(a, 3) for a in (-4, -1, 0, 2, 7)] == [2, 2, 0, 2, 1]


def test_combine_examples():
    A = DivisorClass(5, [1, 2, 0, 0, 3], {(1, 2): Fraction(1, 2)})
    assert combine(A, A, 1, -1).is_zero()
    s = combine(DivisorClass.psi_class(1, 5), DivisorClass.psi_class(2, 5), 1, 1)
    assert s.psi == (1, 1, 0, 0, 0) and not s.boundary
    with pytest.raises(AmbientMismatch):
        combine(A, DivisorClass.zero(6))


@given(divisor_classes(), st.fractions(), st.fractions())
def test_combine_symmetric(A, s, t):
    B = A.scale(3) - DivisorClass.psi_class(1, A.n)
    assert combine(A, B, s, t) == combine(B, A, t, s)


@given(divisor_classes())
def test_json_roundtrip(A):
    data = A.to_json()
    assert all(isinstance(a, str) and "/" in a for a in data["psi"])
    assert DivisorClass.from_json(data) == A


def test_sparse_storage_drops_zeros():
    A = DivisorClass(4, boundary={(1, 2): 0, (1, 3): 1})
    assert list(A.boundary) == [canonical_partition({1, 3}, 4)]
    assert A.b({2, 4}) == 1
