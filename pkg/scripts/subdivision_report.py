"""Generator counts and homotopy identities for both subdivision operators.

Prints the check for each sign convention and relation, together with the
rank certificate deciding whether any choice of signs can satisfy the
cubical identity in the form ``d Phi - Phi d = id - B``.
"""

import time

from padicpaths import subdivision as S


def main():
    print("a_n:", [S.cubical_count(n) for n in range(1, 5)], "recursive:", [S.cubical_count_recursive(n) for n in range(1, 5)])
    for n in range(4):
        r = S.homotopy_identity_check("simplicial", n)
        print(f"simplicial n={n}: {r.generator_maps} maps, residual {r.residual_terms}")
    for n in range(1, 4):
        for signs in ("cone", "tabulated"):
            for rel in ("plus", "minus"):
                t = time.time()
                r = S.homotopy_identity_check("cubical", n, signs, rel)
                print(f"cubical n={n} signs={signs:<8} {rel:<5}: residual {r.residual_terms:>3} ({time.time() - t:.2f}s)")
        print(f"  some signs solve minus: {S.cubical_sign_solvable(n, 'minus')}; plus: {S.cubical_sign_solvable(n, 'plus')}")


if __name__ == "__main__":
    main()
