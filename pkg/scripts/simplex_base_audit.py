"""Audit of the base value of the simplex integral.

With no admissible pair, ``x`` restricts to the constant ``x^(0)(N)`` on
``N Delta^n`` and the integral is ``(-1)^h N^n/n! * x^(0)(N)``.  The
alternative ``N^(n+1)/(n+1)!`` (the value 8 y(4) for n = 1) is evaluated for
comparison: it disagrees with the chart pullback, while Stokes alone cannot
tell the two apart.
"""

import math
from fractions import Fraction
from unittest import mock

from padicpaths import calculus, suites
from padicpaths.calculus import Form
from padicpaths.characters import Character
from padicpaths.funcring import PolyFunction
from padicpaths.polytope import Polytope

REG = suites.registry_for()
N = REG.cfg.N


def chart_value(x):
    S = Polytope.simplex(1, N)
    w = Form.simplex_basis(PolyFunction.from_ambient(S, {x: 1}, REG), 0).normalize()
    return -calculus.integrate_interval(w.comps[(0,)])


def report(label):
    print(f"[{label}]")
    for name, x in (("1", Character([{}, {}])), ("mu", Character([{"mu": 1}, {"mu": 1}])), ("ua", Character([{"ua": 1}, {"ua": 1, "mu": 1}]))):
        v = calculus.simplex_character_integral(x, 0, REG)
        print(f"  y = {name:<3} value {v!r:<8} chart {chart_value(x)!r:<8} y(4) = {REG.evaluate(x.coordinate(0), (N,))!r}")
    for domain in ("simplex",):
        for n in (1, 2, 3):
            cases = suites.stokes(REG, domain, n, trials=10, seed=6)
            print(f"  stokes {domain}:{n}: {sum(c.passed for c in cases)}/{len(cases)}")


def main():
    report("N^n/n!")
    alt = lambda n: Fraction(math.factorial(n + 1), N)  # base becomes N^(n+1)/(n+1)!
    with mock.patch.object(calculus, "factorial", alt):
        report("N^(n+1)/(n+1)!")


if __name__ == "__main__":
    main()
