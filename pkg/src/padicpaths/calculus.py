"""Differential forms with period coefficients and their integrals.

Forms are stored in ambient coordinates: ``comps`` maps an increasing tuple
``H`` of coordinate indices (0-based) to the coefficient of ``dt_H``.  On a
non-thick polytope (the normalised simplex) a form is only defined modulo
``dL(S)``; ``normalize`` pulls it back to the thick chart, which is the
canonical representative used for equality.

Integrals:

* interval and cube: Fubini over the closed-form one-variable integral
  ``(x(N) - 1) / log x`` (``N`` for torsion characters);
* simplex ``N Delta^n``: the recursion over the least pair ``(i, j)`` whose
  ratio has nonzero log, with the base value ``(-1)^h N^n x^(0)(N) / n!``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial

from .characters import Character
from .funcring import PolyFunction, pullback
from .localfield import DomainError, PadicScalar
from .periods import Period
from .polytope import Polytope, cube_face, simplex_face


class CalculusError(Exception):
    pass


class DegreeOverflow(CalculusError, ValueError):
    pass


class TailBudget(CalculusError):
    pass


@dataclass(frozen=True)
class CalculusConfig:
    d_slack: int = 8
    # include x^(0)(N) in the simplex base value; False gives the bare rational
    base_factor: bool = True


DEFAULT = CalculusConfig()


# ---------------------------------------------------------------------------
# one-variable data


def _check_tail(f, cfg):
    if f.tail is not None and f.tail.E < f.cfg.M:
        raise TailBudget(f"tail certificate E = {f.tail.E} below precision {f.cfg.M}")


def _closed_value(y, reg):
    """``y(N)`` for an arity-one character."""
    return reg.evaluate(y, (reg.cfg.N,))


def interval_factor(y, reg):
    """``int_0^N y(t) dt`` for an arity-one character."""
    cfg = reg.cfg
    coeffs = reg.log_coefficients(y)
    val = _closed_value(y, reg)
    if not coeffs:
        if not val.agrees(1, cfg.M - 2):
            raise DomainError(f"torsion character {y} has {y}(N) != 1")
        return Period.scalar(cfg, cfg.N)
    return Period.scalar(cfg, val - 1).divide_by_form(coeffs)


def _log_coord(x, i, reg):
    return reg.log_character(x, i)


def differentiate(f, i):
    """``df/dt_i`` in the thick coordinates of ``f``'s polytope."""
    terms = {}
    for x, c in f.terms.items():
        terms[x] = c * _log_coord(x, i, f.reg)
    return PolyFunction(f.S, terms, f.reg, f.tail)


def integrate_interval(f, config=DEFAULT):
    """``int_0^N f dt`` for ``f`` on ``[0, N]``."""
    N = f.cfg.N
    if f.S != Polytope.cube(1, N):
        raise DomainError(f"interval integral needs [0, {N}], got {f.S!r}")
    _check_tail(f, config)
    out = Period.zero(f.cfg)
    for x, c in f.terms.items():
        out = out + interval_factor(x, f.reg) * c
    return out


# ---------------------------------------------------------------------------
# forms


def _merge(H, K):
    """Sign and sorted union of ``dt_H ^ dt_K``, or ``None`` if they overlap."""
    if set(H) & set(K):
        return None
    seq = list(H) + list(K)
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1) ** inv, tuple(sorted(seq))


class Form:
    """``sum_H f_H dt_H`` on a polytope, ambient coordinates."""

    __slots__ = ("S", "degree", "comps", "reg")

    def __init__(self, S, degree, comps, reg):
        if degree > S.dim:
            raise DegreeOverflow(f"degree {degree} exceeds dim {S.dim}")
        self.S = S
        self.degree = degree
        self.reg = reg
        clean = {}
        for H, f in comps.items():
            H = tuple(H)
            if len(H) != degree or list(H) != sorted(set(H)) or (H and H[-1] >= S.n):
                raise CalculusError(f"bad index tuple {H} for a {degree}-form on R^{S.n}")
            if f.S != S:
                raise CalculusError("coefficient lives on another polytope")
            if not f.is_zero():
                clean[H] = f
        self.comps = clean

    @classmethod
    def function(cls, f):
        return cls(f.S, 0, {(): f}, f.reg)

    @classmethod
    def top(cls, f):
        """``f dt_1 ^ ... ^ dt_n`` on a thick polytope."""
        return cls(f.S, f.S.n, {tuple(range(f.S.n)): f}, f.reg)

    @classmethod
    def simplex_basis(cls, f, h):
        """``f dt'_{n,h}`` on ``N Delta^n``."""
        n = f.S.n - 1
        return cls(f.S, n, {tuple(i for i in range(n + 1) if i != h): f}, f.reg)

    @classmethod
    def zero(cls, S, degree, reg):
        return cls(S, degree, {}, reg)

    def is_zero(self):
        return not self.comps

    def __add__(self, other):
        if other.S != self.S or other.degree != self.degree:
            raise CalculusError("forms of different shape")
        comps = dict(self.comps)
        for H, f in other.comps.items():
            comps[H] = comps[H] + f if H in comps else f
        return Form(self.S, self.degree, comps, self.reg)

    def __neg__(self):
        return Form(self.S, self.degree, {H: -f for H, f in self.comps.items()}, self.reg)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Form(self.S, self.degree, {H: f * c for H, f in self.comps.items()}, self.reg)

    def normalize(self):
        """The pullback to the thick chart; a canonical representative."""
        th = self.S.thick
        return pullback_form(th.a_inv, self, th.T)

    def equals(self, other):
        a, b = self.normalize(), other.normalize()
        diff = a - b
        return all(f.equals(0) for f in diff.comps.values())

    def __repr__(self):
        if not self.comps:
            return "0"
        parts = []
        for H in sorted(self.comps):
            dt = "^".join(f"dt{i}" for i in H)
            parts.append(f"({self.comps[H]!r})" + (f"·{dt}" if dt else ""))
        return " + ".join(parts)


def _ambient_derivative(f, i):
    """``d f / d t_i`` of the ambient presentation, restricted back to ``S``."""
    amb = f.to_ambient()
    terms = {}
    for x, c in amb.items():
        v = c * _log_coord(x, i, f.reg)
        terms[x] = terms[x] + v if x in terms else v
    return PolyFunction.from_ambient(f.S, terms, f.reg, f.tail)


def d_form(omega):
    S = omega.S
    if omega.degree + 1 > S.dim:
        raise DegreeOverflow("d of a top-degree form")
    comps = {}
    for H, f in omega.comps.items():
        for i in range(S.n):
            if i in H:
                continue
            sign, K = _merge((i,), H)
            g = _ambient_derivative(f, i)
            if g.is_zero():
                continue
            g = g if sign > 0 else -g
            comps[K] = comps[K] + g if K in comps else g
    return Form(S, omega.degree + 1, comps, omega.reg)


def wedge(omega, eta):
    if omega.S != eta.S:
        raise CalculusError("forms on different polytopes")
    comps = {}
    for H, f in omega.comps.items():
        for K, g in eta.comps.items():
            m = _merge(H, K)
            if m is None:
                continue
            sign, L = m
            v = f * g
            v = v if sign > 0 else -v
            comps[L] = comps[L] + v if L in comps else v
    return Form(omega.S, omega.degree + eta.degree, comps, omega.reg)


def _pull_dt(a, H):
    """``a^* dt_H`` as ``{K: integer}``."""
    out = {(): 1}
    for h in H:
        row = a.A[h]
        nxt = {}
        for K, c in out.items():
            for i, ai in enumerate(row):
                if not ai:
                    continue
                m = _merge(K, (i,))
                if m is None:
                    continue
                sign, L = m
                nxt[L] = nxt.get(L, 0) + sign * c * ai
        out = {K: c for K, c in nxt.items() if c}
    return out


def pullback_form(a, omega, source):
    """``a^* omega`` on ``source`` (``a`` maps ``source`` into ``omega.S``)."""
    comps = {}
    for H, f in omega.comps.items():
        g = pullback(a, f, source)
        for K, c in _pull_dt(a, H).items():
            v = g.scale(c)
            comps[K] = comps[K] + v if K in comps else v
    return Form(source, omega.degree, comps, omega.reg)


# ---------------------------------------------------------------------------
# integrals over cubes and simplices


def _is_cube(S, N):
    return S == Polytope.cube(S.n, N)


def _is_simplex(S, N):
    return S.n >= 1 and S == Polytope.simplex(S.n - 1, N)


def integrate_cube(omega, config=DEFAULT):
    reg = omega.reg
    cfg = reg.cfg
    n = omega.S.n
    if not _is_cube(omega.S, cfg.N) or omega.degree != n:
        raise DomainError("integrate_cube needs a top-degree form on [0, N]^n")
    out = Period.zero(cfg)
    f = omega.comps.get(tuple(range(n)))
    if f is None:
        return out
    _check_tail(f, config)
    for x, c in f.terms.items():
        term = Period.scalar(cfg, 1)
        for i in range(n):
            term = term * interval_factor(x.coordinate(i), reg)
        out = out + term * c
    return out


def admissible_pairs(x, reg):
    """Pairs ``i < j`` with ``log x^(i) x^(j)^-1 != 0``."""
    out = []
    for i, j in combinations(range(x.arity), 2):
        ratio = x.coordinate(i) / x.coordinate(j)
        if reg.log_coefficients(ratio):
            out.append((i, j))
    return out


def simplex_character_integral(x, h, reg, config=DEFAULT, pair=None):
    """``int_{N Delta^n} x(t) dt'_{n,h}`` for an ambient character of arity ``n + 1``.

    ``pair`` forces the first recursion step; deeper steps use the least pair.
    """
    cfg = reg.cfg
    N = cfg.N
    n = x.arity - 1
    if n == 0:
        return Period.scalar(cfg, _closed_value(x, reg))
    pairs = admissible_pairs(x, reg)
    if not pairs:
        v0 = _closed_value(x.coordinate(0), reg)
        for i in range(1, n + 1):
            if not _closed_value(x.coordinate(i), reg).agrees(v0, cfg.M - 2):
                raise DomainError("torsion ratio with a nontrivial value at N")
        base = Fraction((-1) ** h * N**n, factorial(n))
        val = Period.scalar(cfg, base)
        return val * v0 if config.base_factor else val
    i, j = pair if pair is not None else pairs[0]
    if (i, j) not in pairs:
        raise CalculusError(f"pair {(i, j)} is not admissible")
    coeffs = reg.log_coefficients(x.coordinate(i) / x.coordinate(j))
    a = simplex_character_integral(x.drop(i), i, reg, config)
    b = simplex_character_integral(x.drop(j), i, reg, config)
    return ((a - b) * (-1) ** (h + i + 1)).divide_by_form(coeffs)


def integrate_simplex(omega, config=DEFAULT):
    reg = omega.reg
    cfg = reg.cfg
    S = omega.S
    if not _is_simplex(S, cfg.N) or omega.degree != S.n - 1:
        raise DomainError("integrate_simplex needs a top-degree form on N Delta^n")
    n = S.n - 1
    out = Period.zero(cfg)
    for H, f in omega.comps.items():
        _check_tail(f, config)
        h = next(i for i in range(n + 1) if i not in H)
        for x, c in f.to_ambient().items():
            out = out + simplex_character_integral(x, h, reg, config) * c
    return out


def integrate(omega, config=DEFAULT):
    """Integral of a top-degree form over a cube or a normalised simplex."""
    N = omega.reg.cfg.N
    if _is_cube(omega.S, N):
        return integrate_cube(omega, config)
    if _is_simplex(omega.S, N):
        return integrate_simplex(omega, config)
    raise DomainError(f"no integral on {omega.S!r}")


# ---------------------------------------------------------------------------
# Stokes and FTC


@dataclass
class StokesReport:
    kind: str
    n: int
    lhs: Period
    rhs: Period
    passed: bool
    faces: list = field(default_factory=list)

    def as_dict(self):
        return {"kind": self.kind, "n": self.n, "lhs": repr(self.lhs), "rhs": repr(self.rhs), "pass": self.passed}


def boundary_integral(omega, config=DEFAULT):
    """``sum`` over faces of the signed face integrals of an ``(m-1)``-form on an ``m``-cell."""
    reg = omega.reg
    N = reg.cfg.N
    S = omega.S
    total = Period.zero(reg.cfg)
    faces = []
    if _is_cube(S, N):
        m = S.n
        F = Polytope.cube(m - 1, N) if m > 1 else Polytope(0, [])
        for i in range(1, m + 1):
            for sigma in (0, 1):
                face = cube_face(m, i, sigma, N)
                val = _integrate_face(pullback_form(face, omega, F), config)
                faces.append(((i, sigma), val))
                total = total + val * (-1) ** (i + sigma)
    elif _is_simplex(S, N):
        m = S.n - 1
        F = Polytope.simplex(m - 1, N)
        for i in range(m + 1):
            face = simplex_face(m, i)
            val = _integrate_face(pullback_form(face, omega, F), config)
            faces.append((i, val))
            total = total + val * (-1) ** i
    else:
        raise DomainError(f"no boundary for {S!r}")
    return total, faces


def _integrate_face(omega, config):
    if omega.S.n == 0:
        f = omega.comps.get(())
        if f is None:
            return Period.zero(omega.reg.cfg)
        c = f.terms.get(Character.identity(0))
        return Period.zero(omega.reg.cfg) + (c if c is not None else 0)
    return integrate(omega, config)


def stokes_check(omega, config=DEFAULT):
    """Compare ``int d omega`` with the signed boundary integral."""
    lhs = integrate(d_form(omega), config)
    rhs, faces = boundary_integral(omega, config)
    kind = "cube" if _is_cube(omega.S, omega.reg.cfg.N) else "simplex"
    n = omega.degree
    return StokesReport(kind, n, lhs, rhs, lhs.equals(rhs, slack=config.d_slack), faces)


def ftc(f, config=DEFAULT):
    """``(int_0^N f' dt, f(N) - f(0))``."""
    lhs = integrate_interval(differentiate(f, 0), config)
    N = f.cfg.N
    rhs = Period.scalar(f.cfg, f((N,)) - f((0,)))
    return lhs, rhs
