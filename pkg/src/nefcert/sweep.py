"""Exhaustive desk-scale sweeps: certify and verify every reduced problem."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product

from .certify import certify_effective, verify_certificate
from .divisors import build_family
from .fcurves import min_fcurve_degree
from .inductive import InductiveBuilder
from .pic import DegreeProblem
from .weighting import all_partition_flows


@dataclass
class GridConfig:
    n_max: int = 8
    m_list: tuple = (3, 4, 5)
    family: str = "E"
    n_min: int = 4
    up_to_symmetry: bool = True
    check_fnef: bool = False


@dataclass
class CellResult:
    degrees: tuple
    m: int
    family: str
    accepted: bool
    min_coefficient: Fraction
    min_m_flow: Fraction | None
    min_fdegree: Fraction | None
    seconds: float


@dataclass
class GridSummary:
    n: int
    m: int
    cells: int = 0
    certified: int = 0
    verified: int = 0
    min_m_flow: Fraction | None = None
    min_fdegree: Fraction | None = None
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def row(self) -> dict:
        out = asdict(self)
        for key in ("min_m_flow", "min_fdegree"):
            if out[key] is not None:
                out[key] = str(out[key])
        return out


def reduced_problems(n: int, m: int, up_to_symmetry: bool = True):
    """Degree vectors in ``{1..m-1}^n`` with ``m | sum``."""
    source = combinations_with_replacement(range(1, m), n) if up_to_symmetry else product(range(1, m), repeat=n)
    for d in source:
        if sum(d) % m == 0:
            yield DegreeProblem(d, m)


def _min_m_flow(cert) -> Fraction | None:
    p = cert.problem
    flows = [
        f for P, f in all_partition_flows(cert.weighting).items()
        if p.degree_of(P.block) % p.m == 0
    ]
    return min(flows) if flows else None


def run_cell(problem: DegreeProblem, family: str, builder=None, check_fnef=False) -> CellResult:
    t0 = time.perf_counter()
    cert = certify_effective(problem, family, builder=builder)
    verdict = verify_certificate(cert)
    coeffs = list(cert.boundary_coefficients.values())
    min_c = min(coeffs) if coeffs else Fraction(0)
    min_f = min_fcurve_degree(build_family(problem, family))[0] if check_fnef else None
    return CellResult(
        problem.degrees,
        problem.m,
        family,
        verdict.accepted,
        min_c,
        _min_m_flow(cert),
        min_f,
        time.perf_counter() - t0,
    )


def run_grid(config: GridConfig):
    """Yield ``(GridSummary, [CellResult])`` per ``(n, m)`` in a fixed order."""
    for m in config.m_list:
        builder = InductiveBuilder(m) if config.family == "E" else None
        for n in range(config.n_min, config.n_max + 1):
            summary = GridSummary(n, m)
            cells = []
            t0 = time.perf_counter()
            for problem in reduced_problems(n, m, config.up_to_symmetry):
                summary.cells += 1
                try:
                    cell = run_cell(problem, config.family, builder, config.check_fnef)
                except Exception as exc:  # recorded per cell, sweep continues
                    summary.failures.append((problem.degrees, repr(exc)))
                    continue
                cells.append(cell)
                summary.certified += 1
                summary.verified += cell.accepted
                if not cell.accepted:
                    summary.failures.append((problem.degrees, "rejected"))
                if cell.min_m_flow is not None and (
                    summary.min_m_flow is None or cell.min_m_flow < summary.min_m_flow
                ):
                    summary.min_m_flow = cell.min_m_flow
                if cell.min_fdegree is not None and (
                    summary.min_fdegree is None or cell.min_fdegree < summary.min_fdegree
                ):
                    summary.min_fdegree = cell.min_fdegree
            summary.seconds = time.perf_counter() - t0
            yield summary, cells
