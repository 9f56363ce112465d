"""Partitions, degree data and divisor classes on the moduli space of
n-pointed stable rational curves.

A divisor class is stored as ``sum a_i psi_i - sum b_P Delta_P`` where ``P``
runs over proper partitions of ``{1..n}``.  All coefficients are exact
:class:`fractions.Fraction` values; boundary coefficients are sparse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import AmbientMismatch, DomainTooSmall, InvalidPartition, ModulusMismatch


def modrep(a: int, m: int) -> int:
    """Representative of ``a`` modulo ``m`` in ``{0, ..., m-1}``."""
    return a % m


def fmt_q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_q(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s).strip())


@dataclass(frozen=True)
class DegreeProblem:
    degrees: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.degrees) < 4:
            raise DomainTooSmall(f"need n >= 4 marked points, got {len(self.degrees)}")
        if self.modulus < 2:
            raise ModulusMismatch(f"modulus must be >= 2, got {self.modulus}")
        if sum(self.degrees) % self.modulus:
            raise ModulusMismatch(
                f"{self.modulus} does not divide sum of degrees {sum(self.degrees)}"
            )

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def m(self) -> int:
        return self.modulus

    @property
    def s(self) -> int:
        return sum(self.degrees) // self.modulus

    def d(self, i: int) -> int:
        return self.degrees[i - 1]

    def degree_of(self, block: Iterable[int]) -> int:
        return sum(self.degrees[i - 1] for i in block)

    def is_reduced(self) -> bool:
        return all(1 <= d <= self.modulus - 1 for d in self.degrees)


@dataclass(frozen=True)
class ProperPartition:
    """Unordered split ``I | J`` of ``{1..n}``; ``block`` is the side holding 1."""

    block: frozenset
    n: int

    def __post_init__(self):
        block = frozenset(self.block)
        object.__setattr__(self, "block", block)
        if not block <= frozenset(range(1, self.n + 1)):
            raise InvalidPartition(f"block {sorted(block)} not inside 1..{self.n}")
        if 1 not in block:
            raise InvalidPartition("canonical block must contain 1")
        if not 2 <= len(block) <= self.n - 2:
            raise InvalidPartition(f"block {sorted(block)} is not proper for n={self.n}")

    @property
    def complement(self) -> frozenset:
        return frozenset(range(1, self.n + 1)) - self.block

    def sides(self) -> tuple[frozenset, frozenset]:
        return self.block, self.complement

    def separates(self, i: int, j: int) -> bool:
        return (i in self.block) != (j in self.block)

    def sort_key(self):
        return (len(self.block), sorted(self.block))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        inside = ",".join(map(str, sorted(self.block)))
        outside = ",".join(map(str, sorted(self.complement)))
        return f"P({inside}|{outside})"


def canonical_partition(subset: Iterable[int], n: int) -> ProperPartition:
    subset = frozenset(subset)
    if not subset <= frozenset(range(1, n + 1)):
        raise InvalidPartition(f"{sorted(subset)} is not a subset of 1..{n}")
    if not 2 <= len(subset) <= n - 2:
        raise InvalidPartition(f"block {sorted(subset)} is not proper for n={n}")
    if 1 not in subset:
        subset = frozenset(range(1, n + 1)) - subset
    return ProperPartition(subset, n)


@lru_cache(maxsize=None)
def enumerate_proper_partitions(n: int) -> tuple[ProperPartition, ...]:
    """All ``2^(n-1) - n - 1`` proper partitions, by block size then lexicographically."""
    if n < 4:
        raise DomainTooSmall(f"no proper partitions for n={n}")
    rest = range(2, n + 1)
    out = []
    for size in range(1, n - 2):
        for extra in combinations(rest, size):
            out.append(ProperPartition(frozenset((1,) + extra), n))
    return tuple(out)


def _clean_boundary(boundary: Mapping, n: int) -> dict:
    out = {}
    for key, value in boundary.items():
        if not isinstance(key, ProperPartition):
            key = canonical_partition(key, n)
        elif key.n != n:
            raise AmbientMismatch(f"partition for n={key.n} in class with n={n}")
        value = Fraction(value)
        total = out.get(key, Fraction(0)) + value
        if total:
            out[key] = total
        else:
            out.pop(key, None)
    return out


@dataclass(frozen=True, eq=False)
class DivisorClass:
    """``sum psi[i-1] * psi_i - sum boundary[P] * Delta_P`` on M_{0,n}-bar."""

    n: int
    psi: tuple = ()
    boundary: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 4:
            raise DomainTooSmall(f"divisor classes need n >= 4, got {self.n}")
        psi = tuple(Fraction(a) for a in self.psi) or (Fraction(0),) * self.n
        if len(psi) != self.n:
            raise AmbientMismatch(f"{len(psi)} psi coefficients for n={self.n}")
        object.__setattr__(self, "psi", psi)
        object.__setattr__(
            self, "boundary", MappingProxyType(_clean_boundary(self.boundary, self.n))
        )

    @classmethod
    def zero(cls, n: int) -> "DivisorClass":
        return cls(n)

    @classmethod
    def psi_class(cls, i: int, n: int) -> "DivisorClass":
        psi = [0] * n
        psi[i - 1] = 1
        return cls(n, psi)

    @classmethod
    def pure_boundary(cls, n: int, coeffs: Mapping) -> "DivisorClass":
        """The class ``sum coeffs[P] * Delta_P`` (stored with b = -c)."""
        return cls(n, boundary={P: -Fraction(c) for P, c in coeffs.items()})

    def a(self, i: int) -> Fraction:
        return self.psi[i - 1]

    def b(self, P) -> Fraction:
        if not isinstance(P, ProperPartition):
            P = canonical_partition(P, self.n)
        return self.boundary.get(P, Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.psi) and not self.boundary

    def is_pure_boundary(self) -> bool:
        return not any(self.psi)

    def vector(self) -> list[Fraction]:
        """Dense coordinates: psi coefficients, then ``b_P`` in enumeration order."""
        return list(self.psi) + [self.b(P) for P in enumerate_proper_partitions(self.n)]

    @classmethod
    def from_vector(cls, n: int, vec) -> "DivisorClass":
        parts = enumerate_proper_partitions(n)
        if len(vec) != n + len(parts):
            raise AmbientMismatch("vector length does not match n")
        return cls(n, vec[:n], dict(zip(parts, vec[n:])))

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.n == other.n and self.psi == other.psi and dict(self.boundary) == dict(other.boundary)

    __hash__ = None

    def __add__(self, other):
        return combine(self, other, 1, 1)

    def __sub__(self, other):
        return combine(self, other, 1, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, t) -> "DivisorClass":
        t = Fraction(t)
        return DivisorClass(
            self.n, [t * a for a in self.psi], {P: t * b for P, b in self.boundary.items()}
        )

    __rmul__ = scale

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "psi": [fmt_q(a) for a in self.psi],
            "boundary": [
                {"block": sorted(P.block), "coeff": fmt_q(self.boundary[P])}
                for P in sorted(self.boundary)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "DivisorClass":
        n = int(data["n"])
        psi = [parse_q(a) for a in data.get("psi", [])]
        boundary = {}
        for entry in data.get("boundary", []):
            P = canonical_partition(entry["block"], n)
            boundary[P] = boundary.get(P, 0) + parse_q(entry["coeff"])
        return cls(n, psi, boundary)

    def __repr__(self):
        return f"DivisorClass(n={self.n}, psi={[str(a) for a in self.psi]}, boundary={len(self.boundary)} terms)"


def combine(A: DivisorClass, B: DivisorClass, s=1, t=1) -> DivisorClass:
    """Coefficient-wise ``s*A + t*B``."""
    if A.n != B.n:
        raise AmbientMismatch(f"cannot combine classes on n={A.n} and n={B.n}")
    s, t = Fraction(s), Fraction(t)
    psi = [s * x + t * y for x, y in zip(A.psi, B.psi)]
    boundary = {P: s * b for P, b in A.boundary.items()}
    for P, b in B.boundary.items():
        boundary[P] = boundary.get(P, 0) + t * b
    return DivisorClass(A.n, psi, boundary)
