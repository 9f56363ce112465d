"""Command line interface.

Exit status: 0 success/accept, 1 reject/not equivalent, 2 usage or
malformed input, 3 mathematical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .certify import (
    CertificateFormatError,
    CertificateOptions,
    EffectivityCertificate,
    certify_effective,
    verify_certificate,
)
from .divisors import build_family, reduce_degrees
from .errors import CertificateSearchFailed, NefcertError, UnbalanceNotFound
from .fcurves import min_fcurve_degree
from .keel import are_linearly_equivalent, normal_form
from .pic import DegreeProblem, DivisorClass, canonical_partition, enumerate_proper_partitions
from .standard import StableTree
from .sweep import GridConfig, run_grid

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_MATH = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class SymmetricProfile:
    psi: Fraction
    boundary: dict

    def to_json(self) -> dict:
        return {
            "psi": str(self.psi),
            "boundary": {f"Delta_{k}": str(c) for k, c in sorted(self.boundary.items())},
        }


def symmetrize_report(A: DivisorClass) -> SymmetricProfile | None:
    """``(a, c_2, c_3, ...)`` with ``A = a * sum psi_i + sum c_k Delta_k`` when the
    coefficients only depend on block sizes; ``None`` otherwise."""
    if len(set(A.psi)) != 1:
        return None
    by_size: dict[int, Fraction] = {}
    for P in enumerate_proper_partitions(A.n):
        k = min(len(P.block), A.n - len(P.block))
        c = -A.b(P)
        if by_size.setdefault(k, c) != c:
            return None
    return SymmetricProfile(A.psi[0], by_size)


def _degrees(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree list {text!r}")


def _problem(args) -> DegreeProblem:
    try:
        problem = DegreeProblem(args.degrees, args.m)
    except (NefcertError, ValueError) as exc:
        raise UsageError(str(exc))
    red = reduce_degrees(problem)
    if red.degrees != problem.degrees:
        print(f"note: degrees reduced mod {problem.m}: {list(red.degrees)}", file=sys.stderr)
    if red.dropped:
        print(f"note: indices divisible by {problem.m}: {list(red.dropped)}", file=sys.stderr)
    return problem


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _read_class(path) -> DivisorClass:
    try:
        return DivisorClass.from_json(_read_json(path))
    except (NefcertError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: not a divisor class: {exc}")


def _emit(obj):
    print(json.dumps(obj, indent=1))


def cmd_build(args) -> int:
    problem = _problem(args)
    try:
        A = build_family(problem, args.family)
        if args.normal_form:
            A = normal_form(A)
    except NefcertError as exc:
        raise UsageError(str(exc))
    out = A.to_json()
    if args.symmetric:
        profile = symmetrize_report(A)
        out["symmetric"] = profile.to_json() if profile else "NotSymmetric"
    _emit(out)
    return EXIT_OK


def cmd_certify(args) -> int:
    problem = _problem(args)
    tree = pos = None
    try:
        if args.avoid_tree:
            tree = StableTree.from_json(_read_json(args.avoid_tree))
        if args.positive_on:
            pos = canonical_partition(_degrees(args.positive_on), problem.n)
        cert = certify_effective(problem, args.family, CertificateOptions(tree, pos))
    except (CertificateSearchFailed, UnbalanceNotFound):
        raise
    except (NefcertError, ValueError) as exc:
        raise UsageError(str(exc))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(cert.dumps())
    nonzero = sum(1 for c in cert.boundary_coefficients.values() if c)
    print(f"wrote {args.out}: family {args.family}, n={problem.n}, m={problem.m}, "
          f"{nonzero} nonzero boundary coefficients, claims {list(cert.claims)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            cert = EffectivityCertificate.loads(fh.read())
    except (OSError, CertificateFormatError) as exc:
        raise UsageError(str(exc))
    verdict = verify_certificate(cert)
    if args.json:
        _emit({"accepted": verdict.accepted,
               "failures": [{"kind": f.kind, "detail": f.detail} for f in verdict.failures]})
    elif verdict:
        print("ACCEPT")
    else:
        print("REJECT")
        for f in verdict.failures:
            print(f"  {f.kind}: {f.detail}")
    return EXIT_OK if verdict else EXIT_REJECT


def cmd_fnef(args) -> int:
    problem = _problem(args)
    try:
        A = build_family(problem, args.family)
    except NefcertError as exc:
        raise UsageError(str(exc))
    value, witness = min_fcurve_degree(A)
    parts = [sorted(p) for p in witness.parts]
    if args.json:
        _emit({"min_degree": str(value), "witness": parts, "f_nef": value >= 0})
    else:
        print(f"minimum F-degree {value} at F-curve {witness} (sizes {witness.sizes()})")
    return EXIT_OK


def cmd_equiv(args) -> int:
    A, B = _read_class(args.file1), _read_class(args.file2)
    try:
        result = are_linearly_equivalent(A, B)
    except NefcertError as exc:
        raise UsageError(str(exc))
    if args.json:
        coeffs = None
        if result.coefficients is not None:
            coeffs = [{"edge": list(e), "value": str(c)} for e, c in sorted(result.coefficients.items())]
        _emit({"equivalent": result.equivalent, "relations": coeffs})
    else:
        print("equivalent" if result else "not equivalent")
    return EXIT_OK if result else EXIT_REJECT


def cmd_normal_form(args) -> int:
    A = _read_class(args.file)
    try:
        _emit(normal_form(A).to_json())
    except NefcertError as exc:
        raise UsageError(str(exc))
    return EXIT_OK


def cmd_grid(args) -> int:
    config = GridConfig(args.n_max, tuple(args.m_list), args.family, args.n_min,
                        check_fnef=args.fnef)
    rows = []
    failed = False
    if not args.json:
        print(f"{'n':>3} {'m':>3} {'cells':>6} {'ok':>6} {'min m-flow':>11} {'min F':>7} {'sec':>7}")
    for summary, _ in run_grid(config):
        failed |= bool(summary.failures)
        if args.json:
            rows.append(summary.row())
            continue
        mflow = "-" if summary.min_m_flow is None else str(summary.min_m_flow)
        fdeg = "-" if summary.min_fdegree is None else str(summary.min_fdegree)
        print(f"{summary.n:>3} {summary.m:>3} {summary.cells:>6} {summary.verified:>6} "
              f"{mflow:>11} {fdeg:>7} {summary.seconds:>7.2f}")
        for degrees, why in summary.failures:
            print(f"    FAILED {degrees}: {why}")
    if args.json:
        _emit(rows)
    return EXIT_MATH if failed else EXIT_OK


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nefcert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def problem_args(p):
        p.add_argument("--degrees", type=_degrees, required=True, help="comma separated d1,...,dn")
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--family", choices=("D", "E"), required=True)

    p = sub.add_parser("build", help="print a divisor class")
    problem_args(p)
    p.add_argument("--normal-form", action="store_true")
    p.add_argument("--symmetric", action="store_true", help="add the symmetric profile")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("certify", help="write an effectivity certificate")
    problem_args(p)
    p.add_argument("--avoid-tree", metavar="FILE")
    p.add_argument("--positive-on", metavar="BLOCK")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="check a certificate file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fnef", help="minimum degree over F-curves")
    problem_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fnef)

    p = sub.add_parser("equiv", help="test linear equivalence of two class files")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("normal-form", help="normal form of a class file (n >= 5)")
    p.add_argument("file")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("grid", help="certify and verify every reduced problem")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--m-list", type=_int_list, required=True)
    p.add_argument("--family", choices=("D", "E"), required=True)
    p.add_argument("--fnef", action="store_true", help="also scan F-curves")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_grid)
    return parser


def run(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CertificateSearchFailed, UnbalanceNotFound) as exc:
        print(f"mathematical failure: {exc}", file=sys.stderr)
        return EXIT_MATH


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
