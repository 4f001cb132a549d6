"""Periods of the three Tate-curve cycles and the obstruction verdicts.

For each ``a`` the unit generator ``ua`` has base ``1 + a``.  The gamma2 row
is compared with the truncated geometric series and with a direct rational
evaluation of log((1 + a)^N).
"""

import argparse
from fractions import Fraction

from padicpaths import paths, suites


def log_series(x, terms):
    s, power = Fraction(0), Fraction(1)
    for i in range(1, terms + 1):
        power *= x
        s += (-1) ** (i + 1) * power / i
    return s


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--precision", type=int, default=40)
    ap.add_argument("--a", type=int, nargs="*")
    args = ap.parse_args()
    p = args.p
    for a in args.a or [p, 2 * p]:
        reg = suites.registry_for(p, args.precision, a=a)
        cfg = reg.cfg
        print(f"a = {a}")
        for name, val, expected in suites.tate_periods(reg):
            print(f"  {name}: {val!r}   agrees: {val.equals(expected, slack=6)}")
        direct = cfg(log_series(Fraction((1 + a) ** cfg.N - 1), 3 * cfg.M))
        gamma2 = paths.integrate_invariant_form(paths.gamma2(reg, a)).scalar_part()
        print(f"  gamma2 vs rational log series: agree to {cfg.M - 6} digits: {gamma2.agrees(direct, cfg.M - 6)}")
        for d in range(-2, 3):
            cert = paths.tate_obstruction(reg, d, a)
            print(f"  d = {d:>2}: {cert.verdict}")
    reg0 = suites.registry_for(p, args.precision, a=0)
    print(f"a = 0, d = 0: {paths.tate_obstruction(reg0, 0, 0).verdict}")


if __name__ == "__main__":
    main()
