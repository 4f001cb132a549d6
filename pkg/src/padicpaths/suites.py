"""Seeded verification suites shared by the command line and the scripts.

Each suite returns a list of :class:`Case`; a case carries both sides of the
identity being checked so that failures can be printed and reproduced.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import calculus, paths, subdivision
from .calculus import Form
from .characters import Character, default_registry
from .funcring import PolyFunction, galois_twist, involution, tensor
from .localfield import FieldConfig
from .periods import Period, galois_images
from .polytope import Polytope


@dataclass
class Case:
    suite: str
    label: str
    lhs: object
    rhs: object
    passed: bool
    data: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "suite": self.suite,
            "case": self.label,
            "lhs": repr(self.lhs),
            "rhs": repr(self.rhs),
            "pass": self.passed,
            **({"reproducer": self.data} if not self.passed and self.data else {}),
        }


# ---------------------------------------------------------------------------
# random data


def random_character(rng, reg, arity, names=None, spread=2, eps_fraction=False):
    """Random character with integer exponents (``eps`` may get ``k/N``)."""
    names = names or [g for g in ("eps", "p", "ua", "mu") if g in reg]
    coords = []
    for _ in range(arity):
        c = {}
        for g in rng.sample(names, rng.randint(0, min(2, len(names)))):
            e = Fraction(rng.randint(-spread, spread))
            if g == "eps" and eps_fraction:
                e = Fraction(rng.randint(-spread * reg.cfg.N, spread * reg.cfg.N), reg.cfg.N)
            c[g] = e
        coords.append(c)
    return Character(coords)


def random_coefficient(rng, cfg, lo=0, hi=3):
    p = cfg.p
    return cfg(Fraction(rng.randint(1, p * p), 1) * Fraction(p) ** rng.randint(lo, hi))


def random_function(rng, reg, S, terms=3, **kw):
    out = {}
    for _ in range(rng.randint(1, terms)):
        x = random_character(rng, reg, S.n, **kw)
        c = random_coefficient(rng, reg.cfg)
        out[x] = out[x] + c if x in out else c
    return PolyFunction.from_ambient(S, out, reg)


def _interval(reg):
    return Polytope.cube(1, reg.cfg.N)


def _eps_cycle(reg, a_prime, center=0):
    cfg = reg.cfg
    terms = {Character.gen("eps", Fraction(a_prime, cfg.N)): 1}
    if center:
        terms[Character.identity(1)] = center
    f = PolyFunction.from_ambient(_interval(reg), terms, reg)
    return paths.Path("cube", 1, paths.Affine(), (f,))


# ---------------------------------------------------------------------------
# suites


def residue(reg, grid="small", samples=20, seed=0, method="pullback"):
    """Residue theorem over monomials ``c T^i`` and sampled Laurent polynomials."""
    cfg = reg.cfg
    p = cfg.p
    coeffs = range(1, p * p + 1) if grid == "full" else (1, 2, p, p * p)
    out = []
    for a_prime in range(-2, 3):
        g = _eps_cycle(reg, a_prime)
        for i in range(-3, 4):
            for c in coeffs:
                rep = paths.residue_pair(g, {i: c}, method=method)
                out.append(Case("residue", f"a'={a_prime} f={c}T^{i}", rep.lhs, rep.rhs, rep.passed, {"a'": a_prime, "f": {i: c}}))
    rng = random.Random(seed)
    for k in range(samples):
        a_prime = rng.randint(-2, 2)
        f = {i: rng.randint(1, p * p) for i in range(-3, 4) if rng.random() < 0.6}
        rep = paths.residue_pair(_eps_cycle(reg, a_prime), f, method=method)
        out.append(Case("residue", f"sample {k}", rep.lhs, rep.rhs, rep.passed, {"a'": a_prime, "f": f, "seed": seed}))
    return out


def cauchy(reg, orders=(0,), trials=10, seed=0, divided=True, digits=None):
    """Cauchy (order 0) and Goursat (higher orders) for truncated series."""
    cfg = reg.cfg
    p = cfg.p
    digits = cfg.M - 6 if digits is None else digits
    rng = random.Random(seed)
    out = []
    for k in range(trials):
        f = {i: Fraction(rng.randint(1, p * p - 1)) * p**i for i in range(9)}
        a = rng.choice([1, 2, 3]) * p ** rng.randint(1, 2)
        g = _eps_cycle(reg, rng.choice([1, 2, -1]), center=a)
        for i in orders:
            rep = paths.residue_pair(g, f, a=a, order=i, divided=divided, digits=digits)
            out.append(Case("cauchy" if i == 0 else "goursat", f"trial {k} order {i}", rep.lhs, rep.rhs, rep.passed, {"a": a, "order": i, "seed": seed}))
    return out


def stokes(reg, domain="cube", n=1, trials=10, seed=0, config=calculus.DEFAULT):
    """``int d omega`` against the signed boundary for random ``(n-1)``-forms on ``n``-cells."""
    from itertools import combinations

    rng = random.Random(seed)
    N = reg.cfg.N
    S = Polytope.cube(n, N) if domain == "cube" else Polytope.simplex(n, N)
    idx = list(combinations(range(S.n), n - 1))
    out = []
    for k in range(trials):
        comps = {H: random_function(rng, reg, S, eps_fraction=domain == "cube") for H in rng.sample(idx, rng.randint(1, len(idx)))}
        w = Form(S, n - 1, comps, reg)
        rep = calculus.stokes_check(w, config)
        out.append(Case("stokes", f"{domain}:{n} trial {k}", rep.lhs, rep.rhs, rep.passed, {"seed": seed, "trial": k}))
    return out


def ftc(reg, trials=20, seed=0):
    rng = random.Random(seed)
    I = _interval(reg)
    out = []
    for k in range(trials):
        f = random_function(rng, reg, I, terms=4, eps_fraction=True)
        lhs, rhs = calculus.ftc(f)
        out.append(Case("ftc", f"trial {k}", lhs, rhs, lhs.equals(rhs), {"seed": seed, "trial": k}))
    return out


def fubini(reg, trials=10, seed=0):
    rng = random.Random(seed)
    I = _interval(reg)
    out = []
    for k in range(trials):
        f = random_function(rng, reg, I)
        g = random_function(rng, reg, I)
        lhs = calculus.integrate(Form.top(tensor(f, g)))
        rhs = calculus.integrate_interval(f) * calculus.integrate_interval(g)
        out.append(Case("fubini", f"trial {k}", lhs, rhs, lhs.equals(rhs)))
    return out


def simplex_welldef(reg, trials=10, seed=0, max_n=3):
    rng = random.Random(seed)
    out = []
    while len(out) < trials:
        n = rng.randint(1, max_n)
        x = random_character(rng, reg, n + 1)
        pairs = calculus.admissible_pairs(x, reg)
        if len(pairs) < 2:
            continue
        h = rng.randint(0, n)
        vals = [calculus.simplex_character_integral(x, h, reg, pair=ij) for ij in pairs]
        ok = all(v.equals(vals[0]) for v in vals[1:])
        out.append(Case("simplex-welldef", f"{x} h={h} pairs={pairs}", vals[0], vals[1:], ok, {"char": x.to_json(), "h": h}))
    return out


def equivariance(reg, trials=10, seed=0, twists=None):
    cfg = reg.cfg
    twists = twists or [2, 1 + cfg.p]
    rng = random.Random(seed)
    I = _interval(reg)
    out = []
    for k in range(trials):
        f = random_function(rng, reg, I, eps_fraction=True)
        a = calculus.integrate_interval(f)
        b = calculus.integrate_interval(involution(f))
        out.append(Case("equivariance", f"involution {k}", b, a, a.equals(b)))
        for u in twists:
            lhs = calculus.integrate_interval(galois_twist(f, u))
            rhs = a.substitute(galois_images(u, None))
            out.append(Case("equivariance", f"galois u={u} {k}", lhs, rhs, lhs.equals(rhs)))
    return out


def subdivision_suite(kind="cubical", n=2, signs="cone", relation=None):
    rep = subdivision.homotopy_identity_check(kind, n, signs, relation)
    return [Case("subdivision", f"{kind} n={n}", rep.residual_terms, 0, rep.passed, rep.as_dict())]


def tate_periods(reg):
    """Rows ``(name, value, expected)`` for the three Tate cycles."""
    cfg = reg.cfg
    a = reg["ua"].base - 1
    g1, g2, g3 = paths.gamma1(reg), paths.gamma2(reg, a.to_rational()), paths.gamma3(reg)
    rows = [
        ("gamma1", paths.integrate_along(g1, {-1: 1}, method="exact"), reg.log_character(Character.gen("ua")) * cfg.N),
        ("gamma2", paths.integrate_along(g2, {-1: 1}, method="exact"), Period.scalar(cfg, paths.gamma2_series(cfg, a.to_rational()))),
        ("gamma3", paths.integrate_along(g3, {-1: 1}, method="exact"), reg.log_character(Character.gen("q")) * cfg.N),
    ]
    return rows


def gm_cycles(reg, a_primes=range(-2, 3)):
    out = []
    for a_prime in a_primes:
        g = _eps_cycle(reg, a_prime)
        out.append((a_prime, paths.rot(g), reg.log_character(Character.gen("eps")) * a_prime))
    return out


def cube_vs_simplex(reg, trials=10, seed=0):
    """Exploratory: ``int_0^N f(t) dt`` against ``int_{N Delta^1} f(t_1) dt'_{1,0}``.

    The segment ``N Delta^1`` is identified with ``[0, N]`` through
    ``t -> (N - t, t)``.  No agreement is claimed beyond this dimension.
    """
    rng = random.Random(seed)
    I = _interval(reg)
    S = Polytope.simplex(1, reg.cfg.N)
    out = []
    for k in range(trials):
        f = random_function(rng, reg, I, eps_fraction=True)
        lifted = {Character.identity(1).concat(x): c for x, c in f.to_ambient().items()}
        g = PolyFunction.from_ambient(S, lifted, reg)
        lhs = calculus.integrate_interval(f)
        rhs = calculus.integrate(Form.simplex_basis(g, 0))
        out.append(Case("cube-vs-simplex", f"trial {k}", lhs, rhs, lhs.equals(rhs), {"seed": seed, "trial": k}))
    return out


SUITES = {
    "residue": residue,
    "cauchy": lambda reg, **kw: cauchy(reg, orders=(0,), **kw),
    "goursat": lambda reg, **kw: cauchy(reg, orders=(1, 2, 3), **kw),
    "stokes": stokes,
    "ftc": ftc,
    "fubini": fubini,
    "simplex-welldef": simplex_welldef,
    "equivariance": equivariance,
}


def registry_for(p=5, M=40, a=None):
    return default_registry(FieldConfig(p, M), a=a)
