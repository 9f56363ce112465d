"""The divisor families D(d, m) and E(d, m) and the Hodge eigenbundle
determinant class.

The CB divisor for sl_m at level 1 is a constant multiple of D(d, m); no
conformal-block machinery is implemented here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainTooSmall, ModulusTooSmall
from .pic import DegreeProblem, DivisorClass, enumerate_proper_partitions, modrep

FAMILIES = ("D", "E")


@dataclass(frozen=True)
class DivisorFamilyTag:
    family: str
    problem: DegreeProblem

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "E" and self.problem.m < 3:
            raise ModulusTooSmall("family E needs m >= 3")

    def build(self) -> DivisorClass:
        return divisor_D(self.problem) if self.family == "D" else divisor_E(self.problem)


def divisor_D(problem: DegreeProblem) -> DivisorClass:
    m = problem.m
    psi = [modrep(d, m) * modrep(m - d, m) for d in problem.degrees]
    boundary = {}
    for P in enumerate_proper_partitions(problem.n):
        dI = problem.degree_of(P.block)
        boundary[P] = modrep(dI, m) * modrep(-dI, m)
    return DivisorClass(problem.n, psi, boundary)


def divisor_E(problem: DegreeProblem) -> DivisorClass:
    m = problem.m
    if m < 3:
        raise ModulusTooSmall("family E needs m >= 3")
    D = divisor_D(problem)
    psi = [a + (m if d % m == 0 else 0) for a, d in zip(D.psi, problem.degrees)]
    boundary = dict(D.boundary)
    for P in enumerate_proper_partitions(problem.n):
        if problem.degree_of(P.block) % m == 0:
            boundary[P] = boundary.get(P, 0) + m
    return DivisorClass(problem.n, psi, boundary)


def build_family(problem: DegreeProblem, family: str) -> DivisorClass:
    return DivisorFamilyTag(family, problem).build()


def hodge_eigenbundle_det(problem: DegreeProblem, j: int) -> DivisorClass:
    """Determinant of the ``j``-th eigenbundle: ``D((j d_i mod m), m) / (2 m^2)``."""
    m = problem.m
    twisted = DegreeProblem(tuple(modrep(j * d, m) for d in problem.degrees), m)
    return divisor_D(twisted).scale(Fraction(1, 2 * m * m))


@dataclass(frozen=True)
class Reduction:
    """Degrees reduced mod ``m``; ``dropped`` lists indices with ``d_i = 0 mod m``.

    For D the class is the pullback of the class on the kept points; for E
    it is that pullback plus ``m * psi_i`` for each dropped ``i``.
    """

    original: DegreeProblem
    degrees: tuple
    dropped: tuple

    @property
    def kept(self) -> tuple:
        return tuple(i for i in range(1, self.original.n + 1) if i not in self.dropped)

    @property
    def reduced_problem(self) -> DegreeProblem:
        """The problem on the kept indices (relabelled ``1..n'``)."""
        kept = self.kept
        if len(kept) < 4:
            raise DomainTooSmall(
                f"only {len(kept)} marked points remain after dropping {self.dropped}"
            )
        return DegreeProblem(tuple(self.degrees[i - 1] for i in kept), self.original.m)


def reduce_degrees(problem: DegreeProblem) -> Reduction:
    m = problem.m
    degrees = tuple(modrep(d, m) for d in problem.degrees)
    dropped = tuple(i for i, d in enumerate(degrees, start=1) if d == 0)
    return Reduction(problem, degrees, dropped)
