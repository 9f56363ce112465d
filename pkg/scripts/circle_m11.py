"""Standard weighting for d=(3,2,1,2,4,1,1,2,3,1,1,1), m=11, identity order."""

from nefcert import DegreeProblem, certify_effective, standard_weighting
from nefcert.standard import CyclicOrder, build_circle
from nefcert.weighting import vertex_flow


def main():
    problem = DegreeProblem((3, 2, 1, 2, 4, 1, 1, 2, 3, 1, 1, 1), 11)
    circle = build_circle(problem, CyclicOrder.identity(problem.n))
    print("slots:", " ".join(map(str, circle.positions)))
    w = standard_weighting(problem)
    print(f"w(1-2) = {w[1, 2]}, w(4-9) = {w[4, 9]}, flow through 5 = {vertex_flow(w, 5)}")
    cert = certify_effective(problem, "D")
    coeffs = cert.boundary_coefficients
    print(f"{len(coeffs)} boundary coefficients, min {min(coeffs.values())}, "
          f"{sum(1 for c in coeffs.values() if c)} nonzero")


if __name__ == "__main__":
    main()
