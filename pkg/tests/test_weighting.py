from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nefcert.errors import FlowMismatch
from nefcert.keel import are_linearly_equivalent
from nefcert.pic import DivisorClass, canonical_partition, enumerate_proper_partitions
from nefcert.weighting import (
    Weighting,
    partition_flow,
    rewrite_to_boundary,
    vertex_flow,
    vertex_flows,
)


def k4():
    return Weighting.complete(4, {(1, 2): 1, (3, 4): 2})


def test_vertex_flow_examples():
    w = k4()
    assert vertex_flow(w, 1) == 1
    assert vertex_flow(w, 3) == 2
    assert all(vertex_flow(Weighting.complete(4), k) == 0 for k in range(1, 5))


def test_partition_flow_examples():
    w = k4()
    assert partition_flow(w, canonical_partition({1, 3}, 4)) == 3
    assert partition_flow(w, canonical_partition({1, 2}, 4)) == 0


@st.composite
def integer_weightings(draw, n_min=4, n_max=7):
    n = draw(st.integers(n_min, n_max))
    edges = list(combinations(range(1, n + 1), 2))
    values = draw(st.lists(st.integers(-5, 5), min_size=len(edges), max_size=len(edges)))
    return Weighting.complete(n, dict(zip(edges, values)))


@given(integer_weightings())
def test_handshake(w):
    assert sum(vertex_flows(w).values()) == 2 * w.total()


def test_rewrite_keel_instance():
    A = DivisorClass(4, [1, 1, 0, 0])
    c = rewrite_to_boundary(A, Weighting.complete(4, {(1, 2): 1}))
    assert c == {
        canonical_partition({1, 3}, 4): 1,
        canonical_partition({1, 4}, 4): 1,
        canonical_partition({1, 2}, 4): 0,
    }


def test_rewrite_flow_mismatch():
    A = DivisorClass(4, [5, 0, 0, 0])
    w = Weighting.complete(4, {(1, 2): 4, (2, 3): -4})
    with pytest.raises(FlowMismatch) as info:
        rewrite_to_boundary(A, w)
    assert (info.value.vertex, info.value.expected, info.value.actual) == (1, 5, 4)


@given(integer_weightings())
def test_rewrite_round_trip_is_equivalent(w):
    A = DivisorClass(w.n, [vertex_flow(w, i) for i in range(1, w.n + 1)])
    c = rewrite_to_boundary(A, w)
    assert len(c) == len(enumerate_proper_partitions(w.n))
    assert are_linearly_equivalent(A, DivisorClass.pure_boundary(w.n, c))


@given(integer_weightings())
def test_rewrite_unchanged_by_zero_perturbation(w):
    A = DivisorClass(w.n, [vertex_flow(w, i) for i in range(1, w.n + 1)])
    assert rewrite_to_boundary(A, w) == rewrite_to_boundary(A, w + Weighting.complete(w.n))


@given(integer_weightings())
def test_json_roundtrip(w):
    w = w.scale(Fraction(2, 3))
    data = w.to_json()
    assert all(e["edge"][0] < e["edge"][1] for e in data["edges"])
    assert Weighting.from_json(data) == w
