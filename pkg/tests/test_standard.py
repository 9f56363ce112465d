from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nefcert.errors import DegreesNotReduced, NotATree, UnbalanceNotFound
from nefcert.pic import DegreeProblem, canonical_partition, enumerate_proper_partitions, modrep
from nefcert.standard import (
    CyclicOrder,
    StableTree,
    build_circle,
    contiguous_orders,
    is_balanced,
    occupancy,
    quadratic_flow,
    sigma_for_stable_tree,
    sigma_unbalancing,
    standard_weighting,
)
from nefcert.weighting import partition_flow, vertex_flow

from conftest import reduced_problems

M11 = DegreeProblem((3, 2, 1, 2, 4, 1, 1, 2, 3, 1, 1, 1), 11)


def slot_pair_oracle(problem, sigma):
    """Sum unit weights over slot pairs, with -m on same-residue pairs."""
    slots = [i for i in sigma.sequence for _ in range(problem.d(i))]
    m = problem.m
    w = {}
    for a, b in combinations(range(len(slots)), 2):
        i, j = slots[a], slots[b]
        if i == j:
            continue
        e = (min(i, j), max(i, j))
        w[e] = w.get(e, 0) + 1 - (m if (a - b) % m == 0 else 0)
    return w


def test_m11_circle():
    c = build_circle(M11, CyclicOrder.identity(12))
    assert c.slots_of(1) == [0, 1, 2]
    assert c.slots_of(5) == [8, 9, 10, 11]
    assert c.slots_of(12) == [21]
    assert len(c.positions) == 22


def test_small_circles():
    assert build_circle(DegreeProblem((1, 1, 1, 3), 6), CyclicOrder.identity(4)).positions[:3] == (1, 2, 3)
    c = build_circle(DegreeProblem((2, 1, 1, 2), 3), CyclicOrder.identity(4))
    assert c.positions[:3] == (1, 1, 2)


def test_not_reduced():
    with pytest.raises(DegreesNotReduced):
        build_circle(DegreeProblem((3, 1, 1, 1), 3), CyclicOrder.identity(4))
    with pytest.raises(DegreesNotReduced):
        standard_weighting(DegreeProblem((4, 1, 1, 0), 3))


def test_m11_weights():
    w = standard_weighting(M11)
    assert w[1, 2] == 6
    assert w[4, 9] == -16
    assert vertex_flow(w, 5) == 28


@given(reduced_problems(n_max=6, m_max=5), st.randoms(use_true_random=False))
def test_closed_form_matches_slot_pairs(problem, rnd):
    seq = list(range(1, problem.n + 1))
    rnd.shuffle(seq)
    sigma = CyclicOrder(seq)
    w = standard_weighting(problem, sigma)
    oracle = slot_pair_oracle(problem, sigma)
    assert all(w[e] == oracle.get(e, 0) for e in combinations(range(1, problem.n + 1), 2))


@given(reduced_problems(n_max=6, m_max=6), st.randoms(use_true_random=False))
def test_standard_properties(problem, rnd):
    seq = list(range(1, problem.n + 1))
    rnd.shuffle(seq)
    sigma = CyclicOrder(seq)
    w = standard_weighting(problem, sigma)
    m = problem.m
    for i in range(1, problem.n + 1):
        assert vertex_flow(w, i) == problem.d(i) * (m - problem.d(i))
    for P in enumerate_proper_partitions(problem.n):
        dI = problem.degree_of(P.block)
        f = partition_flow(w, P)
        assert f == quadratic_flow(P, problem, sigma)
        assert f >= modrep(dI, m) * modrep(-dI, m)
        if is_balanced(P, problem, sigma):
            assert f == modrep(dI, m) * modrep(-dI, m)
        else:
            assert f >= 2 * m + modrep(dI, m) * modrep(-dI, m)


def test_balance_examples():
    p = DegreeProblem((1,) * 6, 3)
    ident = CyclicOrder.identity(6)
    P = canonical_partition({1, 4}, 6)
    assert occupancy(P, p, ident) == [2, 0, 0]
    assert not is_balanced(P, p, ident)
    for k in range(2, 5):
        assert is_balanced(canonical_partition(set(range(1, k + 1)), 6), p, ident)


def test_stable_tree_orders():
    assert sigma_for_stable_tree(StableTree(5)).sequence == (1, 2, 3, 4, 5)
    t = StableTree(5, (canonical_partition({1, 2}, 5),))
    assert sigma_for_stable_tree(t).sequence == (1, 2, 3, 4, 5)
    t = StableTree(6, (canonical_partition({1, 2}, 6), canonical_partition({1, 2, 3}, 6)))
    assert sigma_for_stable_tree(t).sequence == (1, 2, 3, 4, 5, 6)


def test_not_a_tree():
    with pytest.raises(NotATree):
        StableTree(5, (canonical_partition({1, 2}, 5), canonical_partition({1, 3}, 5)))


def _is_interval(seq, side):
    idx = sorted(seq.index(v) for v in side)
    return idx == list(range(idx[0], idx[0] + len(idx)))


def _compat(P, Q):
    # nested sides, i.e. some side of P misses some side of Q
    return any(not (X & Y) for X in (P.block, P.complement) for Y in (Q.block, Q.complement))


def all_trees(n):
    trees = [()]
    for P in enumerate_proper_partitions(n):
        trees += [t + (P,) for t in trees if all(_compat(P, Q) for Q in t)]
    return trees


@pytest.mark.parametrize("n", [5, 6])
def test_tree_sides_contiguous(n):
    for nodes in all_trees(n):
        tree = StableTree(n, nodes)
        seq = sigma_for_stable_tree(tree).sequence
        for P in nodes:
            assert _is_interval(seq, P.complement) or _is_interval(seq, P.block)


def test_contiguous_orders_are_contiguous():
    t = StableTree(6, (canonical_partition({1, 2}, 6), canonical_partition({1, 2, 6}, 6)))
    orders = list(contiguous_orders(t))
    assert len(orders) > 1 and len({o.sequence for o in orders}) == len(orders)
    for o in orders:
        for P in t.nodes:
            assert _is_interval(o.sequence, P.complement)


def test_unbalancing_example():
    p = DegreeProblem((1,) * 6, 3)
    P = canonical_partition({1, 2, 3}, 6)
    sigma = sigma_unbalancing(P, p)
    assert sigma.sequence == (1, 2, 4, 3, 5, 6)
    assert occupancy(P, p, sigma) == [2, 1, 0]
    assert partition_flow(standard_weighting(p, sigma), P) == 6


@pytest.mark.parametrize("degrees, m", [((1,) * 6, 3), ((1, 2, 1, 2), 3), ((2, 3, 1, 3, 3), 4), ((1, 2, 3, 4, 3, 1), 7)])
def test_unbalancing_every_partition(degrees, m):
    p = DegreeProblem(degrees, m)
    for P in enumerate_proper_partitions(p.n):
        sigma = sigma_unbalancing(P, p)
        assert not is_balanced(P, p, sigma)
        dI = p.degree_of(P.block)
        assert partition_flow(standard_weighting(p, sigma), P) >= 2 * m + modrep(dI, m) * modrep(-dI, m)


def test_balanced_brute_force_on_all_orders():
    p = DegreeProblem((1, 2, 1, 1, 1), 3)
    P = canonical_partition({1, 2}, 5)
    outcomes = {is_balanced(P, p, CyclicOrder((1,) + rest)) for rest in permutations(range(2, 6))}
    assert outcomes == {True, False}


def test_single_turn_circle_cannot_unbalance():
    # s = 1: every residue class holds one slot, so every partition is balanced
    p = DegreeProblem((1,) * 7, 7)
    with pytest.raises(UnbalanceNotFound):
        sigma_unbalancing(canonical_partition({1, 2}, 7), p)


def test_unbalancing_impossible_with_s_two():
    # 1 and 2 would need slots 4 apart; the other degrees only sum to even numbers
    p = DegreeProblem((1, 1, 2, 2, 2), 4)
    P = canonical_partition({1, 2}, 5)
    assert all(is_balanced(P, p, CyclicOrder((1,) + r)) for r in permutations(range(2, 6)))
    with pytest.raises(UnbalanceNotFound):
        sigma_unbalancing(P, p)
