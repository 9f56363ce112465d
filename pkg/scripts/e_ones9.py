"""E((1^9), 3): certificate, symmetric profile and F-curve minimum."""

from collections import Counter
from fractions import Fraction

from nefcert import DegreeProblem, DivisorClass, certify_effective, divisor_E
from nefcert.cli import symmetrize_report
from nefcert.fcurves import enumerate_fcurves, fcurve_degree, min_fcurve_degree
from nefcert.keel import are_linearly_equivalent
from nefcert.pic import enumerate_proper_partitions


def main():
    n = 9
    problem = DegreeProblem((1,) * n, 3)
    E = divisor_E(problem)
    cert = certify_effective(problem, "E")
    profile = symmetrize_report(DivisorClass.pure_boundary(n, cert.boundary_coefficients))
    print("certified boundary profile:", {k: str(v) for k, v in profile.boundary.items()})

    coeff = {2: 1, 3: 1, 4: 2}
    B = DivisorClass.pure_boundary(
        n, {P: coeff[min(len(P.block), n - len(P.block))] for P in enumerate_proper_partitions(n)})
    for t in (1, Fraction(3, 2)):
        print(f"E ~ {t} * (D2 + D3 + 2 D4): {are_linearly_equivalent(E, B.scale(t)).equivalent}")

    value, witness = min_fcurve_degree(E)
    shapes = Counter(tuple(sorted(F.sizes())) for F in enumerate_fcurves(n) if fcurve_degree(E, F) == value)
    print(f"min F-degree {value} at {witness}; minimiser size profiles {dict(shapes)}")


if __name__ == "__main__":
    main()
