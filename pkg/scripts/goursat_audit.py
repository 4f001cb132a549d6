"""Compare (1/rot) int f/(T-a)^(i+1) dT with f^(i)(a) and with f^(i)(a)/i!."""

from padicpaths import paths, suites

REG = suites.registry_for()
CFG = REG.cfg


def main():
    f = {i: (i + 1) * 5**i for i in range(9)}
    a = 5
    g = suites._eps_cycle(REG, 1, center=a)
    for order in range(4):
        lit = paths.residue_pair(g, f, a=a, order=order, divided=False, digits=CFG.M - 6)
        div = paths.residue_pair(g, f, a=a, order=order, digits=CFG.M - 6)
        print(f"order {order}: literal {'PASS' if lit.passed else 'FAIL'}  divided by i! {'PASS' if div.passed else 'FAIL'}")
        print(f"   integral     {lit.lhs!r}")
        print(f"   rot f^(i)(a) {lit.rhs!r}")


if __name__ == "__main__":
    main()
