"""Rational edge weightings of complete graphs and their flows."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import AmbientMismatch, FlowMismatch
from .pic import DivisorClass, ProperPartition, enumerate_proper_partitions, fmt_q, parse_q


def edge(i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise ValueError(f"loop edge ({i}-{j})")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True, eq=False)
class Weighting:
    """Weight function on the edges of the complete graph on ``vertices``.

    Absent edges have weight zero.  Most weightings live on ``1..n``; the
    inductive construction also builds weightings on vertex subsets.
    """

    vertices: tuple
    weights: Mapping = field(default_factory=dict)

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        object.__setattr__(self, "vertices", verts)
        vs = set(verts)
        clean = {}
        for (i, j), value in self.weights.items():
            e = edge(i, j)
            if e[0] not in vs or e[1] not in vs:
                raise AmbientMismatch(f"edge {e} not inside vertex set {verts}")
            value = clean.get(e, 0) + Fraction(value)
            if value:
                clean[e] = value
            else:
                clean.pop(e, None)
        object.__setattr__(self, "weights", MappingProxyType(clean))

    @classmethod
    def complete(cls, n: int, weights: Mapping | None = None) -> "Weighting":
        return cls(tuple(range(1, n + 1)), weights or {})

    @property
    def n(self) -> int:
        return len(self.vertices)

    def is_standard_range(self) -> bool:
        return self.vertices == tuple(range(1, len(self.vertices) + 1))

    def __getitem__(self, e) -> Fraction:
        return self.weights.get(edge(*e), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, Weighting):
            return NotImplemented
        return self.vertices == other.vertices and dict(self.weights) == dict(other.weights)

    __hash__ = None

    def __add__(self, other: "Weighting") -> "Weighting":
        if self.vertices != other.vertices:
            raise AmbientMismatch("weightings live on different vertex sets")
        out = dict(self.weights)
        for e, v in other.weights.items():
            out[e] = out.get(e, 0) + v
        return Weighting(self.vertices, out)

    def scale(self, t) -> "Weighting":
        t = Fraction(t)
        return Weighting(self.vertices, {e: t * v for e, v in self.weights.items()})

    def relabel(self, mapping: Mapping[int, int]) -> "Weighting":
        return Weighting(
            tuple(mapping[v] for v in self.vertices),
            {edge(mapping[i], mapping[j]): v for (i, j), v in self.weights.items()},
        )

    def extend(self, vertices: Iterable[int]) -> "Weighting":
        """Same weights on a larger vertex set (new edges get weight 0)."""
        return Weighting(tuple(set(self.vertices) | set(vertices)), self.weights)

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "edges": [
                {"edge": [i, j], "value": fmt_q(self.weights[(i, j)])}
                for (i, j) in sorted(self.weights)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Weighting":
        weights = {}
        for entry in data.get("edges", []):
            i, j = entry["edge"]
            e = edge(int(i), int(j))
            weights[e] = weights.get(e, 0) + parse_q(entry["value"])
        return cls.complete(int(data["n"]), weights)


def average(weightings) -> Weighting:
    weightings = list(weightings)
    total = weightings[0]
    for w in weightings[1:]:
        total = total + w
    return total.scale(Fraction(1, len(weightings)))


def vertex_flow(w: Weighting, k: int) -> Fraction:
    if k not in w.vertices:
        raise AmbientMismatch(f"vertex {k} not in {w.vertices}")
    return sum((v for (i, j), v in w.weights.items() if k in (i, j)), Fraction(0))


def vertex_flows(w: Weighting) -> dict[int, Fraction]:
    flows = {k: Fraction(0) for k in w.vertices}
    for (i, j), v in w.weights.items():
        flows[i] += v
        flows[j] += v
    return flows


def cut_flow(w: Weighting, block) -> Fraction:
    """Total weight of edges with exactly one endpoint in ``block``."""
    block = set(block)
    return sum(
        (v for (i, j), v in w.weights.items() if (i in block) != (j in block)), Fraction(0)
    )


def partition_flow(w: Weighting, P: ProperPartition) -> Fraction:
    if not w.is_standard_range() or P.n != w.n:
        raise AmbientMismatch(f"partition on n={P.n} vs weighting on {w.vertices}")
    return cut_flow(w, P.block)


def all_partition_flows(w: Weighting) -> dict[ProperPartition, Fraction]:
    if not w.is_standard_range():
        raise AmbientMismatch("partition flows need a weighting on 1..n")
    return {P: cut_flow(w, P.block) for P in enumerate_proper_partitions(w.n)}


def rewrite_to_boundary(A: DivisorClass, w: Weighting) -> dict[ProperPartition, Fraction]:
    """Boundary coefficients ``c_P = w(P) - b_P`` of the class rewritten by ``w``.

    Requires the flow through every vertex ``i`` to equal ``a_i`` exactly.
    Nonnegativity of the result is not checked here.
    """
    if w.n != A.n or not w.is_standard_range():
        raise AmbientMismatch(f"weighting on {w.vertices} vs class on n={A.n}")
    flows = vertex_flows(w)
    for i in range(1, A.n + 1):
        if flows[i] != A.a(i):
            raise FlowMismatch(i, A.a(i), flows[i])
    return {P: f - A.b(P) for P, f in all_partition_flows(w).items()}
