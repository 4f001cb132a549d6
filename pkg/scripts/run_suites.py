"""Run every verification suite and print a per-suite tally.

    python scripts/run_suites.py --p 5 --precision 40 --trials 20
"""

import argparse
import time

from padicpaths import suites


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--precision", type=int, default=40)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    reg = suites.registry_for(args.p, args.precision)
    jobs = [("residue", lambda: suites.residue(reg, grid="full", samples=args.trials, seed=args.seed))]
    for name in ("cauchy", "goursat", "ftc", "fubini", "simplex-welldef", "equivariance"):
        jobs.append((name, lambda name=name: suites.SUITES[name](reg, trials=args.trials, seed=args.seed)))
    for domain in ("cube", "simplex"):
        for n in (1, 2, 3):
            jobs.append((f"stokes {domain}:{n}", lambda d=domain, n=n: suites.stokes(reg, d, n, trials=args.trials, seed=args.seed)))
    for kind in ("simplicial", "cubical"):
        for n in (1, 2, 3):
            jobs.append((f"subdivision {kind}:{n}", lambda k=kind, n=n: suites.subdivision_suite(k, n)))
    failed = 0
    for name, job in jobs:
        t = time.time()
        cases = job()
        bad = [c for c in cases if not c.passed]
        failed += len(bad)
        print(f"{name:<26} {len(cases) - len(bad):>4}/{len(cases):<4} {time.time() - t:6.2f}s")
        for c in bad[:3]:
            print("   ", c.as_dict())
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
