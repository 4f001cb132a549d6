"""Analytic paths and chains into simple targets, and the integration pairing.

A path is a cube ``[0,N]^n`` or a normalised simplex ``N Delta^n`` together
with one :class:`PolyFunction` per target coordinate, subject to the
target's norm or unit condition.  Target forms are polynomial (Laurent for
unit targets) differential forms in ``T_1, ..., T_m``; integrating one along
a chain pulls it back to a :class:`calculus.Form` and integrates that.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from . import calculus
from .calculus import CalculusConfig, Form, d_form, integrate, wedge
from .characters import Character
from .funcring import (
    FuncError,
    PolyFunction,
    gauss_norm,
    invert_unit,
    pullback,
    unit_decompose,
)
from .localfield import DomainError, FieldConfig, PadicScalar, plog
from .periods import Period
from .polytope import Polytope, cube_face, simplex_face


class PathError(Exception):
    pass


class ConstraintViolation(PathError, ValueError):
    pass


class NotACycle(PathError, ValueError):
    pass


# ---------------------------------------------------------------------------
# targets; radii are stored as log_p of the radius


@dataclass(frozen=True)
class Disc:
    log_radius: Fraction = Fraction(0)
    arity: int = 1

    def check(self, data):
        for f in data:
            e = gauss_norm(f)
            if e < -self.log_radius:
                raise ConstraintViolation(f"||f|| = p^{-e} exceeds the radius p^{self.log_radius}")


@dataclass(frozen=True)
class OpenDisc:
    log_radius: Fraction = Fraction(0)
    arity: int = 1

    def check(self, data):
        for f in data:
            e = gauss_norm(f)
            if e <= -self.log_radius:
                raise ConstraintViolation(f"||f|| = p^{-e} is not below the radius p^{self.log_radius}")


@dataclass(frozen=True)
class Affine:
    arity: int = 1

    def check(self, data):
        pass


def _unit_norms(f):
    dec = unit_decompose(f)
    if not dec:
        raise ConstraintViolation(f"not a unit: {dec.reason}")
    a, x, _ = dec
    lead = PolyFunction(f.S, {x: a}, f.reg)
    inv = PolyFunction(f.S, {x.inv(): a.invert()}, f.reg)
    # ||f|| = ||a x|| and ||f^-1|| = ||(a x)^-1|| since ||g|| < 1
    return gauss_norm(lead), gauss_norm(inv)


@dataclass(frozen=True)
class Annulus:
    log_r: Fraction
    log_R: Fraction
    arity: int = 1

    def check(self, data):
        for f in data:
            e, einv = _unit_norms(f)
            if -e > self.log_R or einv < self.log_r:
                raise ConstraintViolation(f"norms p^{-e}, p^{-einv} leave the annulus [p^{self.log_r}, p^{self.log_R}]")


@dataclass(frozen=True)
class UnitCircle:
    arity: int = 1

    def check(self, data):
        for f in data:
            e, einv = _unit_norms(f)
            if e != 0 or einv != 0:
                raise ConstraintViolation("||f|| = ||f^-1|| = 1 fails")


@dataclass(frozen=True)
class Gm:
    arity: int = 1

    def check(self, data):
        for f in data:
            _unit_norms(f)


@dataclass(frozen=True)
class TateCurve:
    q: PadicScalar
    arity: int = 1

    def __post_init__(self):
        if self.q.is_zero() or self.q.valuation() < 1:
            raise DomainError("the Tate parameter needs 0 < |q| < 1")

    def check(self, data):
        for f in data:
            _unit_norms(f)

    def canonical_point(self, z):
        """Representative of ``z`` modulo ``q^Z`` with ``0 <= v < v(q)``."""
        k = z.valuation() // self.q.valuation()
        return z / self.q**k if k else z


UNIT_TARGETS = (Annulus, UnitCircle, Gm, TateCurve)


def parse_target(text, reg=None):
    """``Gm``, ``UnitCircle``, ``Affine:m``, ``Disc:r[:m]``, ``OpenDisc:r[:m]``, ``Annulus:r:R``, ``Tate``."""
    parts = text.split(":")
    kind, args = parts[0], parts[1:]
    if kind == "Gm":
        return Gm()
    if kind == "UnitCircle":
        return UnitCircle()
    if kind == "Affine":
        return Affine(int(args[0]) if args else 1)
    if kind in ("Disc", "OpenDisc"):
        r = Fraction(args[0]) if args else Fraction(0)
        m = int(args[1]) if len(args) > 1 else 1
        return (Disc if kind == "Disc" else OpenDisc)(r, m)
    if kind == "Annulus":
        return Annulus(Fraction(args[0]), Fraction(args[1]))
    if kind in ("Tate", "TateCurve"):
        if reg is None or "q" not in reg:
            raise DomainError("the Tate curve needs a registry generator 'q'")
        return TateCurve(reg["q"].base)
    raise ValueError(f"unknown target {text!r}")


# ---------------------------------------------------------------------------
# paths and chains


def _domain(kind, n, N):
    if kind == "cube":
        return Polytope.cube(n, N) if n else Polytope(0, [])
    if kind == "simplex":
        return Polytope.simplex(n, N)
    raise ValueError(f"unknown domain kind {kind!r}")


@dataclass(frozen=True, eq=False)
class Path:
    kind: str
    n: int
    target: object
    data: tuple

    @property
    def S(self):
        return self.data[0].S

    @property
    def reg(self):
        return self.data[0].reg

    def same(self, other):
        if self.kind != other.kind or self.n != other.n or self.target != other.target:
            return False
        if self.n == 0 and isinstance(self.target, TateCurve):
            return all(
                self.target.canonical_point(_point_value(f)).agrees(self.target.canonical_point(_point_value(g)), f.cfg.M - 2)
                for f, g in zip(self.data, other.data)
            )
        return all(f.equals(g, f.cfg.M - 2) for f, g in zip(self.data, other.data))

    def is_degenerate(self):
        """Cubical paths constant in some coordinate factor through a projection."""
        if self.kind != "cube" or self.n == 0:
            return False
        for i in range(self.n):
            if all(all(not x.coords[i] for x in f.terms) for f in self.data):
                return True
        return False

    def face(self, i, sigma=None):
        N = self.reg.cfg.N
        if self.kind == "cube":
            a = cube_face(self.n, i, sigma, N)
        else:
            a = simplex_face(self.n, i)
        src = _domain(self.kind, self.n - 1, N)
        return Path(self.kind, self.n - 1, self.target, tuple(pullback(a, f, src) for f in self.data))

    def __repr__(self):
        return f"Path({self.kind}:{self.n} -> {self.target}, {list(self.data)})"


def _point_value(f):
    """Value of a function on a point domain."""
    return f.terms.get(Character.identity(f.S.dim), PadicScalar.coerce(f.cfg, 0))


def make_path(kind, target, data, n=None):
    """Validated path; ``data`` is a sequence of PolyFunctions on one domain."""
    data = tuple(data)
    if not data:
        raise ConstraintViolation("a path needs function data")
    if len(data) != target.arity:
        raise ConstraintViolation(f"target arity {target.arity}, got {len(data)} functions")
    S = data[0].S
    N = data[0].cfg.N
    if n is None:
        n = S.dim
    if S != _domain(kind, n, N):
        raise ConstraintViolation(f"functions do not live on the {kind} of dimension {n}")
    for f in data:
        if f.S != S:
            raise ConstraintViolation("functions live on different domains")
        if f.is_period_valued():
            raise ConstraintViolation("path data must be scalar-valued")
    target.check(data)
    return Path(kind, n, target, data)


class Chain:
    """Integer combination of paths; kept in normal form."""

    def __init__(self, terms=(), degree=None, kind=None):
        merged = []
        for w, g in terms:
            if not w:
                continue
            if degree is None:
                degree, kind = g.n, g.kind
            if g.n != degree or g.kind != kind:
                raise PathError("paths of different degree or kind")
            if g.is_degenerate():
                continue
            for k, (v, h) in enumerate(merged):
                if h.same(g):
                    merged[k] = (v + w, h)
                    break
            else:
                merged.append((w, g))
        self.terms = [(w, g) for w, g in merged if w]
        self.degree = degree
        self.kind = kind

    @classmethod
    def of(cls, path, weight=1):
        return cls([(weight, path)])

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        return Chain(self.terms + other.terms, self.degree if self.degree is not None else other.degree, self.kind or other.kind)

    def __neg__(self):
        return Chain([(-w, g) for w, g in self.terms], self.degree, self.kind)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return Chain([(k * w, g) for w, g in self.terms], self.degree, self.kind)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{w}·{g!r}" for w, g in self.terms)


def boundary(c):
    if c.degree is None or c.is_zero():
        return Chain([], None if c.degree is None else c.degree - 1, c.kind)
    if c.degree < 1:
        raise PathError("boundary of a 0-chain")
    out = []
    for w, g in c.terms:
        if c.kind == "cube":
            for i in range(1, g.n + 1):
                for sigma in (0, 1):
                    out.append((w * (-1) ** (i + sigma), g.face(i, sigma)))
        else:
            for i in range(g.n + 1):
                out.append((w * (-1) ** i, g.face(i)))
    return Chain(out, c.degree - 1, c.kind)


def is_cycle(c):
    if isinstance(c, Path):
        c = Chain.of(c)
    return boundary(c).is_zero()


# ---------------------------------------------------------------------------
# target forms


class TargetForm:
    """``sum_H P_H(T) dT_H`` with Laurent polynomial coefficients.

    ``comps`` maps an increasing tuple of target indices to
    ``{exponent tuple: coefficient}``.
    """

    def __init__(self, arity, degree, comps):
        self.arity = arity
        self.degree = degree
        self.comps = {}
        for H, poly in comps.items():
            H = tuple(H)
            if len(H) != degree or list(H) != sorted(set(H)):
                raise PathError(f"bad index tuple {H}")
            clean = {tuple(e): c for e, c in poly.items() if c}
            if clean:
                self.comps[H] = clean

    @classmethod
    def laurent(cls, coeffs):
        """``f(T) dT`` on a one-dimensional target from ``{i: c}``."""
        return cls(1, 1, {(0,): {(i,): c for i, c in coeffs.items()}})

    @classmethod
    def function(cls, arity, poly):
        return cls(arity, 0, {(): poly})

    def d(self):
        out = {}
        for H, poly in self.comps.items():
            for j in range(self.arity):
                if j in H:
                    continue
                K = tuple(sorted(H + (j,)))
                sign = (-1) ** sum(1 for h in H if h < j)
                for e, c in poly.items():
                    if not e[j]:
                        continue
                    e2 = e[:j] + (e[j] - 1,) + e[j + 1 :]
                    tgt = out.setdefault(K, {})
                    tgt[e2] = tgt.get(e2, 0) + sign * e[j] * c
        return TargetForm(self.arity, self.degree + 1, out)

    def is_zero(self):
        return not self.comps


def _power(f, k, cache, slack):
    if k >= 0:
        return f**k
    key = id(f)
    if key not in cache:
        dec = unit_decompose(f)
        if not dec:
            raise ConstraintViolation(f"negative power of a non-unit: {dec.reason}")
        a, x, g = dec
        if g.is_zero():
            cache[key] = PolyFunction(f.S, {x.inv(): a.invert()}, f.reg)
        else:
            inv, cert = invert_unit(f, slack=slack)
            if cert.E < f.cfg.M:
                inv, cert = invert_unit(f, slack=slack + int(f.cfg.M - cert.E) + 1)
            cache[key] = inv
    return cache[key] ** (-k)


def _mul_form(f, w):
    return Form(w.S, w.degree, {H: g * f for H, g in w.comps.items()}, w.reg)


def pullback_form(path, omega, slack=8):
    """``path^* omega`` as a :class:`calculus.Form` on the path's domain."""
    if omega.arity != path.target.arity:
        raise PathError("form and target arity differ")
    S, reg = path.S, path.reg
    cache = {}
    d_data = [d_form(Form.function(f)) if S.dim else None for f in path.data]
    out = Form.zero(S, omega.degree, reg)
    for H, poly in omega.comps.items():
        dH = Form.function(PolyFunction.constant(S, reg, 1))
        for h in H:
            dH = wedge(dH, d_data[h])
        for e, c in poly.items():
            coeff = PolyFunction.constant(S, reg, c)
            for j, k in enumerate(e):
                if k:
                    coeff = coeff * _power(path.data[j], k, cache, slack)
            out = out + _mul_form(coeff, dH)
    return out


def pullback_laurent(path, coeffs, center=0):
    """``path^* (f(T) dT)`` for ``f = sum_i c_i (T - center)^i``."""
    shifted = path if not center else _shift(path, center)
    return pullback_form(shifted, TargetForm.laurent(coeffs))


def _shift(path, center):
    f = path.data[0]
    g = f - PolyFunction.constant(f.S, f.reg, center)
    return Path(path.kind, path.n, Affine(), (g,))


def _integrate_form(form, config):
    if form.S.n == 0 or form.S.dim == 0:
        f = form.comps.get(())
        if f is None:
            return Period.zero(form.reg.cfg)
        return Period.zero(form.reg.cfg) + _point_value(f)
    return integrate(form, config)


def integrate_along(c, omega, config=calculus.DEFAULT, method="pullback", cfg=None):
    """``int_c omega``; ``omega`` is a TargetForm or a Laurent dict ``{i: c}``.

    With ``method="exact"`` the ``T^-1 dT`` part of a one-dimensional form is
    routed through :func:`integrate_invariant_form`, and other negative powers
    through their primitives, so no inverse series are needed.
    """
    if isinstance(c, Path):
        c = Chain.of(c)
    if isinstance(omega, dict):
        omega = TargetForm.laurent(omega)
    total = None
    for w, g in c.terms:
        if omega.degree != g.n:
            raise PathError(f"{omega.degree}-form along a {g.n}-chain")
        if method == "exact" and omega.arity == 1 and omega.degree == 1:
            val = _integrate_laurent_exact(g, omega.comps.get((0,), {}), config)
        else:
            val = _integrate_form(pullback_form(g, omega, config.d_slack), config)
        total = val * w if total is None else total + val * w
    if total is None:
        return Period.zero(cfg or FieldConfig())
    return total


def _integrate_laurent_exact(path, poly, config):
    f = path.data[0]
    cfg = f.cfg
    N = cfg.N
    total = Period.zero(cfg)
    pos = {}
    for (i,), c in poly.items():
        if i >= 0:
            pos[(i,)] = c
        elif i == -1:
            total = total + integrate_invariant_form(path) * c
        else:
            # d(T^(i+1)) / (i+1) = T^i dT
            hi = f((N,)) ** (i + 1)
            lo = f((0,)) ** (i + 1)
            total = total + Period.scalar(cfg, (hi - lo) * c / (i + 1))
    if pos:
        total = total + _integrate_form(pullback_form(path, TargetForm(1, 1, {(0,): pos})), config)
    return total


def integrate_invariant_form(path):
    """``int gamma^-1 d gamma = N log x + plog(1 + g(N)) - plog(1 + g(0))``."""
    if path.n != 1 or path.kind != "cube":
        raise PathError("the invariant form is integrated along 1-cubes")
    f = path.data[0]
    dec = unit_decompose(f)
    if not dec:
        raise ConstraintViolation(f"not a unit path: {dec.reason}")
    _, x, g = dec
    cfg = f.cfg
    N = cfg.N
    out = f.reg.log_character(x) * N
    if not g.is_zero():
        out = out + Period.scalar(cfg, plog(1 + g((N,))) - plog(1 + g((0,))))
    return out


# ---------------------------------------------------------------------------
# rotation numbers and residues


def rot(path, a=0):
    """``N log x`` for the unit decomposition ``gamma - a = b x (1 + g)`` of a cycle."""
    f = path.data[0]
    g = f - PolyFunction.constant(f.S, f.reg, a) if a else f
    dec = unit_decompose(g)
    if not dec:
        raise ConstraintViolation(f"gamma - a is not a unit: {dec.reason}")
    shifted = Path(path.kind, path.n, Gm(), (g,))
    if not is_cycle(shifted):
        raise NotACycle("rot is defined for cycles only")
    return f.reg.log_character(dec.x) * f.cfg.N


def _taylor(coeffs, a):
    """Coefficients of ``f(a + u)`` in ``u`` for a polynomial ``f``."""
    out = {}
    for j, c in coeffs.items():
        if j < 0:
            raise DomainError("re-expansion at a != 0 needs a polynomial")
        for k in range(j + 1):
            out[k] = out.get(k, 0) + c * comb(j, k) * a ** (j - k)
    return out


@dataclass
class ResidueReport:
    lhs: Period
    rhs: Period
    passed: bool
    order: int | None = None

    def as_dict(self):
        return {"order": self.order, "lhs": repr(self.lhs), "rhs": repr(self.rhs), "pass": self.passed}


def residue_pair(path, coeffs, a=0, order=None, divided=True, method="pullback", digits=None, config=calculus.DEFAULT):
    """Both sides of the residue theorem or the Cauchy/Goursat formula.

    ``order=None``: ``int f dT`` against ``rot(gamma, 0) Res(f, 0)``.
    ``order=i``: ``int f / (T - a)^(i+1) dT`` against ``rot(gamma, a) f^(i)(a)``,
    divided by ``i!`` when ``divided`` (the Taylor coefficient).
    """
    f = path.data[0]
    cfg = f.cfg
    r = rot(path, a)
    if order is None:
        if a and any(i < 0 for i in coeffs):
            raise DomainError("residue at a != 0 with a pole at 0")
        lhs = integrate_along(path, coeffs, config, method)
        rhs = r * (0 if a else coeffs.get(-1, 0))
    else:
        u = _taylor(coeffs, a) if a else dict(coeffs)
        integrand = {k - order - 1: c for k, c in u.items()}
        shifted = _shift(path, a) if a else path
        lhs = integrate_along(shifted, integrand, config, method)
        c = u.get(order, 0)
        rhs = r * (c if divided else c * factorial(order))
    passed = lhs.equals(rhs) if digits is None else _agree(lhs, rhs, digits)
    return ResidueReport(lhs, rhs, passed, order)


def _agree(x, y, digits):
    d = x - y
    if d.is_zero():
        return True
    if not d.is_polynomial() or d.symbols():
        return d.equals(0)
    return d.scalar_part().agrees(0, digits)


# ---------------------------------------------------------------------------
# obstruction certificates and the Tate cycles


@dataclass
class Certificate:
    value: Period
    verdict: str

    def as_dict(self):
        return {"value": repr(self.value), "verdict": self.verdict}


def obstruction_certificate(c, omega, config=calculus.DEFAULT, method="exact", cfg=None):
    if isinstance(c, Path):
        c = Chain.of(c)
    if not c.is_zero() and not is_cycle(c):
        raise NotACycle("obstruction certificates need a cycle")
    if isinstance(omega, TargetForm) and omega.degree + 1 <= omega.arity and not omega.d().is_zero():
        raise PathError("the form is not closed")
    if c.is_zero():
        return Certificate(Period.zero(cfg or FieldConfig()), "INCONCLUSIVE")
    v = integrate_along(c, omega, config, method)
    return Certificate(v, "INCONCLUSIVE" if v.equals(0) else "NONBOUNDARY")


def _interval(reg):
    return Polytope.cube(1, reg.cfg.N)


def gamma1(reg, target=None):
    """``(1+a)(t)`` on the Tate curve; needs the generator ``ua``."""
    if "ua" not in reg:
        raise DomainError("registry has no generator 'ua'")
    f = PolyFunction.from_ambient(_interval(reg), {Character.gen("ua"): 1}, reg)
    return make_path("cube", target or parse_target("Tate", reg), [f])


def gamma2(reg, a, target=None):
    """Interpolation from 1 to ``(1+a)^N`` through ``p(t)``."""
    cfg = reg.cfg
    N, p = cfg.N, cfg.p
    A = PadicScalar.coerce(cfg, 1 + Fraction(a)) ** N
    P = PadicScalar.coerce(cfg, p) ** N
    den = 1 - P
    c1 = (1 - A) / den
    c0 = (A - P) / den
    f = PolyFunction.from_ambient(_interval(reg), {Character.gen("p"): c1, Character.identity(1): c0}, reg)
    return make_path("cube", target or parse_target("Tate", reg), [f])


def gamma3(reg, target=None):
    f = PolyFunction.from_ambient(_interval(reg), {Character.gen("q"): 1}, reg)
    return make_path("cube", target or parse_target("Tate", reg), [f])


def gamma2_series(cfg, a, terms=None):
    """``N plog(1+a)`` by the geometric-series expansion of the interpolation.

    With ``B = ((1+a)^N - 1) / ((1+a)^N - p^N)`` and ``A = B p^N`` the value is
    ``-sum_i (A^(i+1) - B^(i+1)) / (i+1)``.
    """
    N, p, M = cfg.N, cfg.p, cfg.M
    U = PadicScalar.coerce(cfg, 1 + Fraction(a)) ** N
    P = PadicScalar.coerce(cfg, p) ** N
    B = (U - 1) / (U - P)
    A = B * P
    vb = B.valuation() if not B.is_zero() else M
    if terms is None:
        terms = 1
        while terms * max(vb, 1) - len(bin(terms)) < M + 8:
            terms += 1
    total = PadicScalar.coerce(cfg, 0)
    Ai, Bi = A, B
    for i in range(terms):
        total = total - (Ai - Bi) / (i + 1)
        Ai, Bi = Ai * A, Bi * B
    return total


def tate_obstruction(reg, d, a, config=calculus.DEFAULT):
    """Certificate for ``[(1+a) q^d (t)] - [gamma2]`` against ``T^-1 dT``."""
    target = parse_target("Tate", reg)
    terms = {Character.gen("q", d): 1} if d else {}
    if a:
        x = Character.gen("ua") * Character.gen("q", d) if d else Character.gen("ua")
        terms = {x: 1}
    if not terms:
        terms = {Character.identity(1): 1}
    f = PolyFunction.from_ambient(_interval(reg), terms, reg)
    g = make_path("cube", target, [f])
    c = Chain.of(g) - Chain.of(gamma2(reg, a, target))
    return obstruction_certificate(c, {-1: 1}, config, "exact", reg.cfg)
