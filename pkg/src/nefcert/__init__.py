"""Effectivity certificates for D(d, m) and E(d, m) on M_{0,n}-bar."""

from .certify import (
    CertificateOptions,
    EffectivityCertificate,
    certify_effective,
    verify_certificate,
)
from .divisors import divisor_D, divisor_E, hodge_eigenbundle_det, reduce_degrees
from .fcurves import FCurve, enumerate_fcurves, fcurve_degree, min_fcurve_degree
from .inductive import inductive_weighting, m_partitions, verify_P123
from .keel import are_linearly_equivalent, normal_form, psi_as_boundary, relation_vector
from .pic import (
    DegreeProblem,
    DivisorClass,
    ProperPartition,
    canonical_partition,
    combine,
    enumerate_proper_partitions,
)
from .standard import CyclicOrder, StableTree, standard_weighting
from .weighting import Weighting, partition_flow, rewrite_to_boundary, vertex_flow

__version__ = "0.1.0"
