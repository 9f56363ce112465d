"""Weightings from cyclic arrangements of degree multisets on a circle.

Each index ``i`` is repeated ``d_i`` times on the slots ``0..ms-1`` of a
circle in the cyclic order ``sigma``.  Every pair of slots with distinct
indices gets weight 1 and every pair of slots in the same residue class
mod ``m`` gets an extra ``-m``; summing over slots yields a weighting of
the complete graph on the indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DegreesNotReduced, NotATree, UnbalanceNotFound
from .pic import DegreeProblem, ProperPartition, canonical_partition
from .weighting import Weighting


@dataclass(frozen=True)
class CyclicOrder:
    sequence: tuple

    def __post_init__(self):
        seq = tuple(int(v) for v in self.sequence)
        if len(set(seq)) != len(seq):
            raise ValueError(f"cyclic order {seq} repeats a vertex")
        object.__setattr__(self, "sequence", seq)

    @classmethod
    def identity(cls, n: int) -> "CyclicOrder":
        return cls(tuple(range(1, n + 1)))

    def __len__(self):
        return len(self.sequence)

    def __iter__(self):
        return iter(self.sequence)


@dataclass(frozen=True)
class CircleArrangement:
    positions: tuple
    s: int
    m: int

    def slots_of(self, i: int) -> list[int]:
        return [t for t, v in enumerate(self.positions) if v == i]


@dataclass(frozen=True)
class StableTree:
    """Pairwise compatible family of proper partitions (a boundary point)."""

    n: int
    nodes: tuple = ()

    def __post_init__(self):
        nodes = []
        for P in self.nodes:
            if not isinstance(P, ProperPartition):
                P = canonical_partition(P, self.n)
            if P.n != self.n:
                raise NotATree(f"partition {P} does not live on n={self.n}")
            if P not in nodes:
                nodes.append(P)
        nodes.sort()
        for P, Q in combinations(nodes, 2):
            if not compatible(P, Q):
                raise NotATree(f"{P} and {Q} cross")
        object.__setattr__(self, "nodes", tuple(nodes))

    def to_json(self) -> dict:
        return {"n": self.n, "nodes": [sorted(P.block) for P in self.nodes]}

    @classmethod
    def from_json(cls, data: Mapping) -> "StableTree":
        n = int(data["n"])
        try:
            return cls(n, tuple(canonical_partition(b, n) for b in data.get("nodes", [])))
        except ValueError as exc:
            raise NotATree(str(exc)) from exc


def compatible(P: ProperPartition, Q: ProperPartition) -> bool:
    a, b = P.sides()
    c, d = Q.sides()
    return not (a & c and a & d and b & c and b & d)


def _check_reduced(degrees: Mapping[int, int], m: int):
    for i, d in degrees.items():
        if not 1 <= d <= m - 1:
            raise DegreesNotReduced(f"d_{i} = {d} is not in [1, {m - 1}]")
    if sum(degrees.values()) % m:
        raise DegreesNotReduced(f"{m} does not divide the total degree")


def _problem_degrees(problem: DegreeProblem) -> dict[int, int]:
    return {i: problem.d(i) for i in range(1, problem.n + 1)}


def _check_sigma(sigma: CyclicOrder, vertices):
    if sorted(sigma.sequence) != sorted(vertices):
        raise ValueError(f"{sigma.sequence} is not an ordering of {sorted(vertices)}")


def circle_positions(seq: Sequence[int], degrees: Mapping[int, int]) -> tuple:
    out = []
    for i in seq:
        out.extend([i] * degrees[i])
    return tuple(out)


def build_circle(problem: DegreeProblem, sigma: CyclicOrder) -> CircleArrangement:
    degrees = _problem_degrees(problem)
    _check_reduced(degrees, problem.m)
    _check_sigma(sigma, degrees)
    return CircleArrangement(circle_positions(sigma.sequence, degrees), problem.s, problem.m)


def residues(seq: Sequence[int], degrees: Mapping[int, int], m: int) -> dict[int, set]:
    """Residue classes mod ``m`` of the slots occupied by each index."""
    out = {}
    start = 0
    for i in seq:
        out[i] = {(start + t) % m for t in range(degrees[i])}
        assert len(out[i]) == degrees[i], "index repeated inside one residue class"
        start += degrees[i]
    return out


def standard_weighting_on(seq: Sequence[int], degrees: Mapping[int, int], m: int) -> Weighting:
    """Standard weighting for an arbitrary labelled vertex set.

    Slot pairs with distinct indices contribute ``d_i d_j`` in total; the
    residue-class pairs contribute ``-m`` once per shared residue.
    """
    _check_reduced({i: degrees[i] for i in seq}, m)
    res = residues(seq, degrees, m)
    weights = {}
    for i, j in combinations(sorted(seq), 2):
        weights[(i, j)] = degrees[i] * degrees[j] - m * len(res[i] & res[j])
    return Weighting(tuple(seq), weights)


def standard_weighting(problem: DegreeProblem, sigma: CyclicOrder | None = None) -> Weighting:
    sigma = sigma or CyclicOrder.identity(problem.n)
    degrees = _problem_degrees(problem)
    _check_sigma(sigma, degrees)
    return standard_weighting_on(sigma.sequence, degrees, problem.m)


def occupancy_on(block, seq, degrees, m) -> list[int]:
    """Counts ``x_k`` of slots of ``block`` in each residue class ``k``."""
    x = [0] * m
    start = 0
    for i in seq:
        if i in block:
            for t in range(degrees[i]):
                x[(start + t) % m] += 1
        start += degrees[i]
    return x


def balanced_counts(x: list[int], total: int, m: int) -> bool:
    q, r = divmod(total, m)
    return sorted(x) == [q] * (m - r) + [q + 1] * r


def is_balanced_on(block, seq, degrees, m) -> bool:
    block = set(block)
    x = occupancy_on(block, seq, degrees, m)
    return balanced_counts(x, sum(degrees[i] for i in block), m)


def occupancy(P: ProperPartition, problem: DegreeProblem, sigma: CyclicOrder) -> list[int]:
    return occupancy_on(P.block, sigma.sequence, _problem_degrees(problem), problem.m)


def is_balanced(P: ProperPartition, problem: DegreeProblem, sigma: CyclicOrder) -> bool:
    degrees = _problem_degrees(problem)
    _check_reduced(degrees, problem.m)
    _check_sigma(sigma, degrees)
    return is_balanced_on(P.block, sigma.sequence, degrees, problem.m)


def quadratic_flow(P: ProperPartition, problem: DegreeProblem, sigma: CyclicOrder) -> int:
    """Closed form ``d(I)(ms - d(I)) - m * sum x_k (s - x_k)`` of the flow across ``P``."""
    m, s = problem.m, problem.s
    dI = problem.degree_of(P.block)
    x = occupancy(P, problem, sigma)
    return dI * (m * s - dI) - m * sum(xk * (s - xk) for xk in x)


def _laminar_order(n: int, sides: list[frozenset]) -> list[int]:
    """Order ``2..n`` so that each laminar set in ``sides`` is an interval."""
    sides = sorted(set(sides), key=lambda S: (-len(S), min(S)))

    def walk(universe: frozenset, family: list[frozenset]) -> list[int]:
        maximal = [S for S in family if not any(S < T for T in family)]
        items = [(v, None) for v in universe if not any(v in S for S in maximal)]
        items += [(min(S), S) for S in maximal]
        out = []
        for key, S in sorted(items, key=lambda t: t[0]):
            if S is None:
                out.append(key)
            else:
                out.extend(walk(S, [T for T in family if T < S]))
        return out

    return walk(frozenset(range(2, n + 1)), sides)


def sigma_for_stable_tree(tree: StableTree, n: int | None = None) -> CyclicOrder:
    """Cyclic order in which every partition of ``tree`` has a contiguous side.

    The sides not containing 1 form a laminar family; listing 1 first and
    then the legs in depth-first order (children by smallest leg) keeps each
    of those sides an interval.
    """
    if not isinstance(tree, StableTree):
        tree = StableTree(n, tuple(tree))
    n = tree.n if n is None else n
    if n != tree.n:
        raise NotATree(f"tree lives on n={tree.n}, not n={n}")
    sides = [P.complement for P in tree.nodes]
    return CyclicOrder((1, *_laminar_order(n, sides)))


def unbalancing_sequence(block, vertices, degrees: Mapping[int, int], m: int, search_limit=20000):
    """A vertex order for which ``block`` is not balanced."""
    block = sorted(set(block))
    rest = sorted(set(vertices) - set(block))
    _check_reduced({i: degrees[i] for i in vertices}, m)

    def ok(seq):
        return not is_balanced_on(block, seq, degrees, m)

    # transposition of the last element of the block with the first of the rest
    first = block[:-1] + [rest[0], block[-1]] + rest[1:]
    if ok(first):
        return tuple(first)
    for i_out in reversed(block):
        for j_in in rest:
            seq = [v for v in block if v != i_out] + [j_in, i_out] + [v for v in rest if v != j_in]
            if ok(seq):
                return tuple(seq)
    start = tuple(block + rest)
    seen = {start}
    queue = deque([start])
    while queue and len(seen) < search_limit:
        seq = queue.popleft()
        for t in range(len(seq) - 1):
            nxt = seq[:t] + (seq[t + 1], seq[t]) + seq[t + 2:]
            if nxt in seen:
                continue
            if ok(nxt):
                return nxt
            seen.add(nxt)
            queue.append(nxt)
    raise UnbalanceNotFound(f"no order unbalances {block} within {search_limit} candidates")


def sigma_unbalancing(P: ProperPartition, problem: DegreeProblem) -> CyclicOrder:
    degrees = _problem_degrees(problem)
    seq = unbalancing_sequence(P.block, range(1, problem.n + 1), degrees, problem.m)
    return CyclicOrder(seq)


def contiguous_orders(tree: StableTree, limit: int = 5000) -> Iterable[CyclicOrder]:
    """Cyclic orders (up to ``limit``) in which every tree side is an interval.

    Children of each laminar node are permuted; used when a tree must be
    avoided while another partition is forced positive.
    """
    from itertools import permutations

    n = tree.n
    family = sorted({P.complement for P in tree.nodes}, key=lambda S: (-len(S), min(S)))

    def walk(universe, fam):
        maximal = [S for S in fam if not any(S < T for T in fam)]
        units = [(v,) for v in sorted(universe) if not any(v in S for S in maximal)]
        subs = [list(walk(S, [T for T in fam if T < S])) for S in maximal]
        pieces = [[u] for u in units] + subs
        for perm in permutations(range(len(pieces))):
            yield from _product([pieces[k] for k in perm])

    def _product(lists):
        if not lists:
            yield ()
            return
        for head in lists[0]:
            for tail in _product(lists[1:]):
                yield tuple(head) + tail

    count = 0
    for seq in walk(frozenset(range(2, n + 1)), family):
        yield CyclicOrder((1,) + seq)
        count += 1
        if count >= limit:
            return
