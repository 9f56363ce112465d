"""Weightings satisfying (P1)-(P3) for the E family, built by induction on
the total degree: split along m-partitions, glue weightings of the two
sides, and average.

(P1) flow through ``i`` is exactly ``d_i (m - d_i)``;
(P2) flow across every proper partition is at least ``<d(I)>_m <d(J)>_m``;
(P3) flow across every proper m-partition is at least ``m``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping

from .errors import AmbientMismatch, CertificateSearchFailed, DegreesNotReduced, ModulusTooSmall
from .pic import DegreeProblem, ProperPartition, canonical_partition, enumerate_proper_partitions
from .standard import standard_weighting_on, unbalancing_sequence
from .weighting import Weighting, average, cut_flow, vertex_flows

log = logging.getLogger(__name__)


@dataclass
class PropertyReport:
    p1_violations: list = field(default_factory=list)
    p2_violations: list = field(default_factory=list)
    p3_violations: list = field(default_factory=list)
    min_m_partition_flow: Fraction | None = None

    @property
    def clean(self) -> bool:
        return not (self.p1_violations or self.p2_violations or self.p3_violations)

    def __bool__(self):
        return self.clean


@dataclass
class GlueRecord:
    """One application of the gluing construction, with its bound check."""

    degrees: tuple
    split: frozenset
    weighting: Weighting
    violations: list


@lru_cache(maxsize=None)
def _proper_blocks(vertices: tuple) -> tuple:
    """Proper two-block splits of ``vertices``; each given by the side holding the minimum."""
    first, rest = vertices[0], vertices[1:]
    k = len(vertices)
    out = []
    for size in range(1, k - 2):
        for extra in combinations(rest, size):
            out.append(frozenset((first,) + extra))
    return tuple(out)


def _m_blocks(vertices: tuple, degrees: Mapping[int, int], m: int) -> list[frozenset]:
    return [B for B in _proper_blocks(vertices) if sum(degrees[v] for v in B) % m == 0]


def transverse(A: frozenset, C: frozenset, universe: frozenset) -> bool:
    B, D = universe - A, universe - C
    return bool(A & C and A & D and B & C and B & D)


def m_divisible_split(vertices, degrees: Mapping[int, int], m: int, parts: int):
    """Split ``vertices`` into ``parts`` nonempty m-divisible subsets, or ``None``."""
    remaining = frozenset(vertices)
    if sum(degrees[v] for v in remaining) % m:
        return None

    def rec(R: frozenset, k: int):
        if k == 1:
            return [R] if R else None
        v = min(R)
        others = sorted(R - {v})
        for size in range(0, len(others)):
            for extra in combinations(others, size):
                T = frozenset((v,) + extra)
                if sum(degrees[u] for u in T) % m == 0:
                    tail = rec(R - T, k - 1)
                    if tail:
                        return [T] + tail
        return None

    return rec(remaining, parts)


def report_on(w: Weighting, degrees: Mapping[int, int], m: int) -> PropertyReport:
    """Check (P1)-(P3) for a weighting on an arbitrary vertex set."""
    vertices = w.vertices
    report = PropertyReport()
    flows = vertex_flows(w)
    for v in vertices:
        want = degrees[v] * (m - degrees[v])
        if flows[v] != want:
            report.p1_violations.append((v, want, flows[v]))
    if len(vertices) < 4:
        return report
    total = sum(degrees[v] for v in vertices)
    for B in _proper_blocks(vertices):
        f = cut_flow(w, B)
        dB = sum(degrees[v] for v in B)
        bound = (dB % m) * ((total - dB) % m)
        if f < bound:
            report.p2_violations.append((B, bound, f))
        if dB % m == 0:
            if report.min_m_partition_flow is None or f < report.min_m_partition_flow:
                report.min_m_partition_flow = f
            if f < m:
                report.p3_violations.append((B, m, f))
    return report


def glue_bound_violations(glued: Weighting, degrees: Mapping[int, int], m: int, split: frozenset) -> list:
    """Quantitative bounds for a glued weighting.

    Flow across the split is 0; across other m-partitions it is at least m,
    at least 2m-2 when transverse to the split, and at least 2m when also
    ``m | d(S1 & I)``.
    """
    universe = frozenset(glued.vertices)
    out = []
    if cut_flow(glued, split) != 0:
        out.append(("split", split, 0, cut_flow(glued, split)))
    S1 = split
    for I in _m_blocks(glued.vertices, degrees, m):
        if I == split or I == universe - split:
            continue
        f = cut_flow(glued, I)
        if transverse(I, S1, universe):
            bound = 2 * m if sum(degrees[v] for v in S1 & I) % m == 0 else 2 * m - 2
            kind = "transverse"
        else:
            bound, kind = m, "nested"
        if f < bound:
            out.append((kind, I, bound, f))
    return out


class InductiveBuilder:
    """Memoized recursive construction; one instance per modulus.

    Sub-weightings are computed on canonical labels ``1..k`` with sorted
    degrees and relabelled onto the requested vertex set.
    """

    def __init__(self, m: int, record_glues: bool = False):
        self.m = m
        self.memo: dict[tuple, Weighting] = {}
        self.cases: dict[tuple, str] = {}
        self.glues: list[GlueRecord] = []
        self.record_glues = record_glues

    def weighting(self, vertices, degrees: Mapping[int, int]) -> Weighting:
        order = sorted(vertices, key=lambda v: (degrees[v], v))
        key = tuple(degrees[v] for v in order)
        if key not in self.memo:
            self.memo[key] = self._build(key)
        mapping = {k: v for k, v in enumerate(order, start=1)}
        return self.memo[key].relabel(mapping)

    def _glue(self, vertices, degrees, S1: frozenset) -> Weighting:
        S2 = frozenset(vertices) - S1
        w1 = self.weighting(S1, degrees)
        w2 = self.weighting(S2, degrees)
        glued = Weighting(tuple(vertices), {**w1.weights, **w2.weights})
        violations = glue_bound_violations(glued, degrees, self.m, S1)
        if self.record_glues:
            self.glues.append(
                GlueRecord(tuple(degrees[v] for v in vertices), S1, glued, violations)
            )
        return glued

    def _unbalanced(self, vertices, degrees, block) -> Weighting:
        seq = unbalancing_sequence(block, vertices, degrees, self.m)
        return standard_weighting_on(seq, degrees, self.m)

    def _build(self, key: tuple) -> Weighting:
        m = self.m
        vertices = tuple(range(1, len(key) + 1))
        degrees = dict(zip(vertices, key))
        case, w = self._dispatch(vertices, degrees)
        report = report_on(w, degrees, m)
        if not report.clean:
            log.info("case %s failed for degrees %s, m=%d; searching", case, key, m)
            case, w = "fallback", self._fallback(vertices, degrees)
        self.cases[key] = case
        return w

    def _dispatch(self, vertices, degrees):
        m = self.m
        universe = frozenset(vertices)
        if sum(degrees.values()) == m or len(vertices) <= 3:
            return "base", standard_weighting_on(vertices, degrees, m)
        blocks = _m_blocks(vertices, degrees, m)
        if not blocks:
            return "case1", standard_weighting_on(vertices, degrees, m)
        if len(blocks) == 1:
            return "case1", self._unbalanced(vertices, degrees, blocks[0])
        if len(blocks) == 2:
            A, C = blocks
            if not transverse(A, C, universe):
                log.warning("two m-partitions %s, %s are not transverse", sorted(A), sorted(C))
            return "case2", average([self._unbalanced(vertices, degrees, B) for B in blocks])
        four = m_divisible_split(vertices, degrees, m, 4)
        if four:
            A, B, C, D = four
            glued = [self._glue(vertices, degrees, A | X) for X in (B, C, D)]
            return "four-split", average(glued)
        three = m_divisible_split(vertices, degrees, m, 3)
        if three and m == 3:
            # the recipe below only reaches 11/4 < 3 here; averaging over
            # every m-partition is verified instead
            return "three-split-m3", average([self._glue(vertices, degrees, B) for B in blocks])
        if three:
            return "three-split", self._three_split(vertices, degrees, three)
        if m == 3 and len(blocks) < 4:
            log.warning("m=3 with only %d m-partitions in the general case", len(blocks))
        return "general", average([self._glue(vertices, degrees, B) for B in blocks])

    def _three_split(self, vertices, degrees, parts):
        m = self.m
        universe = frozenset(vertices)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            S1, S2 = parts[i], parts[j]
            (S3,) = [parts[k] for k in range(3) if k not in (i, j)]
            pair = tuple(sorted(S1 | S2))
            extra = [B for B in _m_blocks(pair, degrees, m) if B not in (S1, S2)]
            if extra:
                A = extra[0]
                B = frozenset(pair) - A
                glued = [
                    self._glue(vertices, degrees, S1),
                    self._glue(vertices, degrees, S2),
                    self._glue(vertices, degrees, A),
                    self._glue(vertices, degrees, B),
                ]
                return average(glued)
        # each union of two parts has only the obvious m-partition, so its
        # recursive weighting is the unbalanced one with flow >= 2m across it
        glued = [self._glue(vertices, degrees, universe - S) for S in parts]
        return average(glued)

    def _fallback(self, vertices, degrees):
        m = self.m
        blocks = _m_blocks(vertices, degrees, m)
        glued = [self._glue(vertices, degrees, B) for B in blocks]
        unbalanced = [self._unbalanced(vertices, degrees, B) for B in blocks]
        families = [glued + unbalanced, unbalanced, glued]
        pool = glued + unbalanced
        for size in (1, 2, 3):
            families.extend(list(c) for c in combinations(pool, size))
        for fam in families:
            if not fam:
                continue
            w = average(fam)
            if report_on(w, degrees, m).clean:
                return w
        raise CertificateSearchFailed(
            f"no weighting with (P1)-(P3) found for degrees {tuple(degrees.values())}, m={m}"
        )


def _problem_degrees(problem: DegreeProblem) -> dict[int, int]:
    return {i: problem.d(i) for i in range(1, problem.n + 1)}


def m_partitions(problem: DegreeProblem) -> list[ProperPartition]:
    m = problem.m
    return [P for P in enumerate_proper_partitions(problem.n) if problem.degree_of(P.block) % m == 0]


def glue_weighting(w1: Weighting, w2: Weighting, split: ProperPartition) -> Weighting:
    """Weighting of the complete graph on ``1..n`` that agrees with ``w1`` and
    ``w2`` inside the two sides of ``split`` and vanishes on crossing edges."""
    sides = {frozenset(split.block), frozenset(split.complement)}
    if {frozenset(w1.vertices), frozenset(w2.vertices)} != sides:
        raise AmbientMismatch(f"weightings do not live on the two sides of {split}")
    return Weighting.complete(split.n, {**w1.weights, **w2.weights})


def inductive_weighting(problem: DegreeProblem, builder: InductiveBuilder | None = None) -> Weighting:
    if problem.m < 3:
        raise ModulusTooSmall("(P3) weightings need m >= 3")
    if not problem.is_reduced():
        raise DegreesNotReduced(f"degrees {problem.degrees} are not in [1, {problem.m - 1}]")
    builder = builder or InductiveBuilder(problem.m)
    if builder.m != problem.m:
        raise ValueError("builder modulus does not match the problem")
    degrees = _problem_degrees(problem)
    w = builder.weighting(tuple(range(1, problem.n + 1)), degrees)
    if not report_on(w, degrees, problem.m).clean:
        raise CertificateSearchFailed(f"construction failed for {problem}")
    return w


def verify_P123(w: Weighting, problem: DegreeProblem) -> PropertyReport:
    if w.vertices != tuple(range(1, problem.n + 1)):
        raise AmbientMismatch("weighting does not live on 1..n")
    raw = report_on(w, _problem_degrees(problem), problem.m)
    n = problem.n
    return PropertyReport(
        raw.p1_violations,
        [(canonical_partition(B, n), b, f) for B, b, f in raw.p2_violations],
        [(canonical_partition(B, n), b, f) for B, b, f in raw.p3_violations],
        raw.min_m_partition_flow,
    )
