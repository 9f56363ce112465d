"""Relations among psi and boundary classes, exact equivalence testing and
the normal form with boundary support on partitions with both sides >= 3."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import linalg
from .errors import AmbientMismatch, InvalidRelation, NormalFormUnavailable
from .pic import DivisorClass, canonical_partition, combine, enumerate_proper_partitions


@dataclass(frozen=True)
class RelationVector:
    i: int
    j: int
    as_class: DivisorClass


def _check_vertices(n, *vs):
    if n < 4:
        raise InvalidRelation(f"relations need n >= 4, got {n}")
    if len(set(vs)) != len(vs):
        raise InvalidRelation(f"vertices {vs} are not distinct")
    for v in vs:
        if not 1 <= v <= n:
            raise InvalidRelation(f"vertex {v} outside 1..{n}")


def relation_vector(i: int, j: int, n: int) -> RelationVector:
    """``psi_i + psi_j - sum of Delta_P over P separating i and j`` (zero in Pic)."""
    _check_vertices(n, i, j)
    psi = [0] * n
    psi[i - 1] = psi[j - 1] = 1
    boundary = {P: 1 for P in enumerate_proper_partitions(n) if P.separates(i, j)}
    return RelationVector(min(i, j), max(i, j), DivisorClass(n, psi, boundary))


@lru_cache(maxsize=None)
def _relation_columns(n: int):
    pairs = list(combinations(range(1, n + 1), 2))
    return pairs, [relation_vector(i, j, n).as_class.vector() for i, j in pairs]


@dataclass(frozen=True)
class Equivalence:
    """Result of an equivalence test; ``coefficients`` maps ``(i, j)`` to the
    multiple of the ``(i, j)`` relation used to express ``A - B``."""

    equivalent: bool
    coefficients: dict | None = None

    def __bool__(self):
        return self.equivalent


def are_linearly_equivalent(A: DivisorClass, B: DivisorClass) -> Equivalence:
    if A.n != B.n:
        raise AmbientMismatch(f"classes live on n={A.n} and n={B.n}")
    n = A.n
    pairs, columns = _relation_columns(n)
    diff = (A - B).vector()
    matrix = [list(row) for row in zip(*columns)]
    x = linalg.solve(matrix, diff)
    if x is None:
        return Equivalence(False)
    return Equivalence(True, {p: c for p, c in zip(pairs, x) if c})


@lru_cache(maxsize=None)
def _pair_partitions(n: int):
    pairs = list(combinations(range(1, n + 1), 2))
    parts = [canonical_partition(p, n) for p in pairs]
    matrix = [[1 if P.separates(i, j) else 0 for (i, j) in pairs] for P in parts]
    if linalg.rank(matrix) != len(pairs):
        raise NormalFormUnavailable(f"elimination system is singular for n={n}")
    return pairs, parts, matrix


def normal_form(A: DivisorClass) -> DivisorClass:
    """Unique equivalent class with no boundary term having a 2-element side."""
    n = A.n
    if n < 5:
        raise NormalFormUnavailable("normal form requires n >= 5")
    pairs, parts, matrix = _pair_partitions(n)
    rhs = [-A.b(P) for P in parts]
    x = linalg.solve(matrix, rhs)
    out = A
    for (i, j), c in zip(pairs, x):
        if c:
            out = combine(out, relation_vector(i, j, n).as_class, 1, c)
    assert all(out.b(P) == 0 for P in parts)
    return out


def psi_as_boundary(i: int, j: int, k: int, n: int) -> DivisorClass:
    """Boundary representative of ``psi_i``: sum of Delta_P with ``i`` on one
    side and ``j, k`` on the other."""
    _check_vertices(n, i, j, k)
    coeffs = {}
    for P in enumerate_proper_partitions(n):
        side = P.block if i in P.block else P.complement
        if j not in side and k not in side:
            coeffs[P] = 1
    return DivisorClass.pure_boundary(n, coeffs)


def psi_helpers(i: int, n: int, exclude=()) -> tuple[int, int]:
    """The two smallest vertices other than ``i`` (and outside ``exclude``)."""
    pool = [v for v in range(1, n + 1) if v != i and v not in exclude]
    if len(pool) < 2:
        raise InvalidRelation(f"no two helper vertices for psi_{i} on n={n}")
    return pool[0], pool[1]
