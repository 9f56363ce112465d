"""Effectivity certificates for D(d, m) and E(d, m) and their verification.

A certificate carries the degree data, the family and a full weighting of
the complete graph.  :func:`verify_certificate` recomputes the divisor
class from scratch and only trusts the weighting; it does not touch the
constructions in :mod:`nefcert.standard` or :mod:`nefcert.inductive`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .divisors import DivisorFamilyTag, build_family, reduce_degrees
from .errors import CertificateSearchFailed, NefcertError, UnsupportedOptionCombo
from .inductive import InductiveBuilder, inductive_weighting
from .pic import (
    DegreeProblem,
    ProperPartition,
    canonical_partition,
    enumerate_proper_partitions,
    fmt_q,
    modrep,
    parse_q,
)
from .standard import (
    CyclicOrder,
    StableTree,
    contiguous_orders,
    is_balanced,
    sigma_for_stable_tree,
    sigma_unbalancing,
    standard_weighting,
)
from .weighting import Weighting, all_partition_flows, edge, vertex_flows

FORMAT_VERSION = 1
KNOWN_CLAIMS = ("P1", "P2", "P3", "avoidance", "positivity")


class CertificateFormatError(NefcertError, ValueError):
    pass


@dataclass(frozen=True)
class CertificateOptions:
    avoid_tree: StableTree | None = None
    positive_on: ProperPartition | None = None

    def to_json(self) -> dict:
        return {
            "avoid_tree": self.avoid_tree.to_json() if self.avoid_tree else None,
            "positive_on": sorted(self.positive_on.block) if self.positive_on else None,
        }

    @classmethod
    def from_json(cls, data: Mapping | None, n: int) -> "CertificateOptions":
        data = data or {}
        tree = data.get("avoid_tree")
        pos = data.get("positive_on")
        return cls(
            StableTree.from_json(tree) if tree else None,
            canonical_partition(pos, n) if pos else None,
        )


@dataclass(frozen=True, eq=False)
class EffectivityCertificate:
    problem: DegreeProblem
    family: str
    weighting: Weighting
    boundary_coefficients: Mapping
    options: CertificateOptions = field(default_factory=CertificateOptions)
    claims: tuple = ()
    sigma: tuple | None = None

    @property
    def tag(self) -> DivisorFamilyTag:
        return DivisorFamilyTag(self.family, self.problem)

    def to_json(self) -> dict:
        data = {
            "version": FORMAT_VERSION,
            "n": self.problem.n,
            "m": self.problem.m,
            "degrees": list(self.problem.degrees),
            "family": self.family,
        }
        if self.sigma is not None:
            data["sigma"] = list(self.sigma)
        data["weights"] = self.weighting.to_json()["edges"]
        data["coefficients"] = [
            {"block": sorted(P.block), "coeff": fmt_q(c)}
            for P, c in sorted(self.boundary_coefficients.items())
            if c
        ]
        data["options"] = self.options.to_json()
        data["claims"] = list(self.claims)
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: Mapping) -> "EffectivityCertificate":
        try:
            if data.get("version") != FORMAT_VERSION:
                raise CertificateFormatError(f"unsupported version {data.get('version')!r}")
            n, m = int(data["n"]), int(data["m"])
            problem = DegreeProblem(tuple(int(d) for d in data["degrees"]), m)
            if problem.n != n:
                raise CertificateFormatError("n does not match the degree list")
            weighting = Weighting.from_json({"n": n, "edges": data.get("weights", [])})
            coeffs = {}
            for entry in data.get("coefficients", []):
                P = canonical_partition(entry["block"], n)
                coeffs[P] = coeffs.get(P, 0) + parse_q(entry["coeff"])
            sigma = tuple(int(v) for v in data["sigma"]) if data.get("sigma") else None
            return cls(
                problem,
                str(data["family"]),
                weighting,
                coeffs,
                CertificateOptions.from_json(data.get("options"), n),
                tuple(data.get("claims", [])),
                sigma,
            )
        except CertificateFormatError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise CertificateFormatError(f"malformed certificate: {exc}") from exc

    @classmethod
    def loads(cls, text: str) -> "EffectivityCertificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError(f"not JSON: {exc}") from exc
        return cls.from_json(data)


@dataclass(frozen=True)
class Failure:
    kind: str
    detail: str


@dataclass
class Verdict:
    failures: list = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.accepted

    def kinds(self) -> list[str]:
        return [f.kind for f in self.failures]

    def add(self, kind: str, detail: str):
        self.failures.append(Failure(kind, detail))


def verify_certificate(cert: EffectivityCertificate) -> Verdict:
    verdict = Verdict()
    problem, n, m = cert.problem, cert.problem.n, cert.problem.m
    try:
        A = build_family(problem, cert.family)
    except (NefcertError, ValueError) as exc:
        verdict.add("InvalidProblem", str(exc))
        return verdict
    w = cert.weighting
    if w.vertices != tuple(range(1, n + 1)):
        verdict.add("MalformedCertificate", f"weighting lives on {w.vertices}, not 1..{n}")
        return verdict
    unknown = [c for c in cert.claims if c not in KNOWN_CLAIMS]
    if unknown:
        verdict.add("MalformedCertificate", f"unknown claims {unknown}")

    flows = vertex_flows(w)
    for i in range(1, n + 1):
        if flows[i] != A.a(i):
            verdict.add("FlowMismatch", f"vertex {i}: expected {A.a(i)}, actual {flows[i]}")
    cuts = all_partition_flows(w)
    stored = cert.boundary_coefficients
    coeffs = {}
    for P, f in cuts.items():
        c = f - A.b(P)
        coeffs[P] = c
        if c < 0:
            verdict.add("NegativeCoefficient", f"{P}: c = {c}")
        if Fraction(stored.get(P, 0)) != c:
            verdict.add("CoefficientMismatch", f"{P}: stored {stored.get(P, 0)}, recomputed {c}")
    for P in stored:
        if P not in cuts:
            verdict.add("CoefficientMismatch", f"{P} is not a partition of 1..{n}")

    claims = set(cert.claims)
    if "P1" in claims:
        for i in range(1, n + 1):
            d = problem.d(i)
            want = modrep(d, m) * modrep(m - d, m)
            if flows[i] != want:
                verdict.add("P1Violated", f"vertex {i}: expected {want}, actual {flows[i]}")
    if "P2" in claims or "P3" in claims:
        for P, f in cuts.items():
            dI = problem.degree_of(P.block)
            if "P2" in claims and f < modrep(dI, m) * modrep(-dI, m):
                verdict.add("P2Violated", f"{P}: flow {f}")
            if "P3" in claims and dI % m == 0 and f < m:
                verdict.add("P3Violated", f"{P}: flow {f} < {m}")
    if "avoidance" in claims:
        tree = cert.options.avoid_tree
        if tree is None or tree.n != n:
            verdict.add("MalformedCertificate", "avoidance claimed without a tree on 1..n")
        else:
            for P in tree.nodes:
                if coeffs[P] != 0:
                    verdict.add("AvoidanceViolated", f"{P}: c = {coeffs[P]}")
    if "positivity" in claims:
        P = cert.options.positive_on
        if P is None or P.n != n:
            verdict.add("MalformedCertificate", "positivity claimed without a partition")
        elif coeffs[P] <= 0:
            verdict.add("PositivityViolated", f"{P}: c = {coeffs[P]}")
    return verdict


def _restrict(block, kept_index: Mapping[int, int]):
    return frozenset(kept_index[v] for v in block if v in kept_index)


def _proper_local(block: frozenset, k: int) -> bool:
    return 2 <= len(block) <= k - 2


def _d_sigma(rp: DegreeProblem, local_tree, local_pos) -> CyclicOrder:
    if local_tree is not None and local_pos is not None:
        for sigma in contiguous_orders(local_tree):
            if not is_balanced(local_pos, rp, sigma):
                return sigma
        raise UnsupportedOptionCombo(
            f"no tree-compatible order makes {local_pos} unbalanced"
        )
    if local_tree is not None:
        return sigma_for_stable_tree(local_tree)
    if local_pos is not None:
        return sigma_unbalancing(local_pos, rp)
    return CyclicOrder.identity(rp.n)


def _psi_weighting(i: int, j: int, k: int, n: int, scale) -> dict:
    """Weights whose vertex flows are ``scale`` at ``i`` and 0 elsewhere; the
    rewritten boundary is ``scale`` times the psi_i representative."""
    half = Fraction(scale) / 2
    return {edge(i, j): half, edge(i, k): half, edge(j, k): -half}


def certify_effective(
    problem: DegreeProblem,
    family: str,
    options: CertificateOptions | None = None,
    builder: InductiveBuilder | None = None,
) -> EffectivityCertificate:
    options = options or CertificateOptions()
    tag = DivisorFamilyTag(family, problem)
    n, m = problem.n, problem.m
    if options.avoid_tree is not None and options.avoid_tree.n != n:
        raise UnsupportedOptionCombo("tree does not live on the problem's marked points")
    if options.positive_on is not None and options.avoid_tree is not None:
        if options.positive_on in options.avoid_tree.nodes:
            raise UnsupportedOptionCombo(
                f"{options.positive_on} cannot be both avoided and forced positive"
            )
    reduction = reduce_degrees(problem)
    rp = reduction.reduced_problem
    kept = reduction.kept
    kept_index = {v: k for k, v in enumerate(kept, start=1)}
    to_global = {k: v for v, k in kept_index.items()}
    sigma = None

    if family == "D":
        local_tree = local_pos = None
        if options.avoid_tree is not None:
            blocks = [_restrict(P.block, kept_index) for P in options.avoid_tree.nodes]
            local_tree = StableTree(
                rp.n, tuple(canonical_partition(B, rp.n) for B in blocks if _proper_local(B, rp.n))
            )
        if options.positive_on is not None:
            B = _restrict(options.positive_on.block, kept_index)
            if not _proper_local(B, rp.n):
                raise UnsupportedOptionCombo(
                    f"{options.positive_on} restricts to a non-proper split of the kept points"
                )
            local_pos = canonical_partition(B, rp.n)
        local_sigma = _d_sigma(rp, local_tree, local_pos)
        local_w = standard_weighting(rp, local_sigma)
        sigma = tuple(to_global[v] for v in local_sigma.sequence)
    else:
        if options.avoid_tree is not None or options.positive_on is not None:
            raise UnsupportedOptionCombo("avoidance/positivity options apply to family D only")
        local_w = inductive_weighting(rp, builder)

    weights = dict(local_w.relabel(to_global).weights)
    if family == "E":
        for i in reduction.dropped:
            j, k = kept[0], kept[1]
            for e, v in _psi_weighting(i, j, k, n, m).items():
                weights[e] = weights.get(e, 0) + v
    w = Weighting.complete(n, weights)

    A = tag.build()
    flows = all_partition_flows(w)
    coeffs = {P: flows[P] - A.b(P) for P in enumerate_proper_partitions(n)}
    claims = []
    if not reduction.dropped:
        claims += ["P1", "P2"] + (["P3"] if family == "E" else [])
    if options.avoid_tree is not None:
        claims.append("avoidance")
    if options.positive_on is not None:
        claims.append("positivity")
    cert = EffectivityCertificate(problem, family, w, coeffs, options, tuple(claims), sigma)
    verdict = verify_certificate(cert)
    if not verdict:
        raise CertificateSearchFailed(
            f"generated certificate failed verification: {verdict.failures[:3]}"
        )
    return cert
