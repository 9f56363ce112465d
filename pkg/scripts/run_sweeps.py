"""Desk-scale sweeps for both families; prints one summary row per (n, m)."""

import argparse
import logging

from nefcert.sweep import GridConfig, run_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--fnef", action="store_true")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)

    configs = [
        GridConfig(args.n_max, tuple(range(2, 8)), "D", check_fnef=args.fnef),
        GridConfig(args.n_max, (3, 4, 5), "E", check_fnef=args.fnef),
    ]
    failed = 0
    for config in configs:
        print(f"family {config.family}")
        for s, _ in run_grid(config):
            failed += len(s.failures)
            print(f"  n={s.n} m={s.m}: {s.verified}/{s.cells} verified, "
                  f"min m-flow {s.min_m_flow}, min F {s.min_fdegree}, {s.seconds:.2f}s")
    print("failures:", failed)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
