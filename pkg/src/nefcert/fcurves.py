"""F-curves and their intersection degrees with divisor classes.

An F-curve is given by a partition of the marked points into four nonempty
parts ``N1..N4``.  For ``A = sum a_i psi_i - sum b_P Delta_P``::

    A . F = sum(a_i for singleton parts {i})
            - (b[N1+N2] + b[N1+N3] + b[N1+N4])
            + sum(b[Na] for parts with |Na| >= 2)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import AmbientMismatch, DomainTooSmall
from .pic import DivisorClass, canonical_partition


@dataclass(frozen=True)
class FCurve:
    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((frozenset(p) for p in self.parts), key=min))
        if len(parts) != 4 or not all(parts):
            raise ValueError("an F-curve needs four nonempty parts")
        union = frozenset().union(*parts)
        if sum(map(len, parts)) != len(union) or union != frozenset(range(1, len(union) + 1)):
            raise ValueError("F-curve parts must partition 1..n")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(map(len, self.parts))

    def sizes(self) -> tuple:
        return tuple(len(p) for p in self.parts)

    def sort_key(self):
        return tuple(tuple(sorted(p)) for p in self.parts)

    def __repr__(self):
        return "F(" + " | ".join(",".join(map(str, sorted(p))) for p in self.parts) + ")"


def _set_partitions(n: int, k: int):
    """Restricted growth strings of length ``n`` with exactly ``k`` blocks."""

    def rec(prefix, used):
        i = len(prefix)
        if i == n:
            if used == k:
                yield prefix
            return
        if k - used > n - i:
            return
        for b in range(min(used + 1, k)):
            yield from rec(prefix + (b,), max(used, b + 1))

    yield from rec((), 0)


@lru_cache(maxsize=None)
def enumerate_fcurves(n: int) -> tuple[FCurve, ...]:
    if n < 4:
        raise DomainTooSmall(f"F-curves need n >= 4, got {n}")
    out = []
    for rgs in _set_partitions(n, 4):
        parts = [set() for _ in range(4)]
        for i, b in enumerate(rgs, start=1):
            parts[b].add(i)
        out.append(FCurve(tuple(parts)))
    out.sort(key=FCurve.sort_key)
    return tuple(out)


@lru_cache(maxsize=None)
def _terms(F: FCurve):
    n = F.n
    N1 = F.parts[0]
    singles = [min(p) for p in F.parts if len(p) == 1]
    pairs = [canonical_partition(N1 | Na, n) for Na in F.parts[1:]]
    tails = [canonical_partition(p, n) for p in F.parts if len(p) >= 2]
    return singles, pairs, tails


def fcurve_degree(A: DivisorClass, F: FCurve) -> Fraction:
    if F.n != A.n:
        raise AmbientMismatch(f"F-curve on n={F.n} vs class on n={A.n}")
    singles, pairs, tails = _terms(F)
    b = A.boundary
    zero = Fraction(0)
    return (
        sum((A.psi[i - 1] for i in singles), zero)
        - sum((b.get(P, zero) for P in pairs), zero)
        + sum((b.get(P, zero) for P in tails), zero)
    )


def fdegree_vector(A: DivisorClass) -> list[Fraction]:
    return [fcurve_degree(A, F) for F in enumerate_fcurves(A.n)]


def min_fcurve_degree(A: DivisorClass) -> tuple[Fraction, FCurve]:
    """Smallest F-degree, with the lexicographically first F-curve attaining it."""
    best = None
    for F in enumerate_fcurves(A.n):
        deg = fcurve_degree(A, F)
        if best is None or deg < best[0]:
            best = (deg, F)
    return best


def is_f_nef(A: DivisorClass) -> bool:
    return min_fcurve_degree(A)[0] >= 0
