"""Finite character sums on a polytope (the ring k_S).

A ``PolyFunction`` stores its terms in the thick coordinates of its polytope
``S``: characters of arity ``dim S`` acting on ``s = a(t)``.  Because the
chart depends only on the affine hull of ``S``, this is a normal form for the
quotient by ``I(S)``, and two functions on polytopes with the same hull use
the same coordinates.

Coefficients are p-adic scalars, or periods for functions produced by
differentiation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .characters import ArityMismatch, Character
from .localfield import DomainError, PadicScalar
from .periods import Period
from .polytope import AffineMap, Polytope, reflection, veebar_check


class FuncError(Exception):
    pass


class PolytopeMismatch(FuncError, ValueError):
    pass


class BudgetTooSmall(FuncError):
    pass


class IncompatibleSections(FuncError, ValueError):
    pass


class NotGluable(FuncError, ValueError):
    pass


def _zero(c):
    return c.is_zero()


def _const_part(x, point, reg):
    """``x(point)`` for an ambient character; ``NotRepresentable`` propagates."""
    return reg.evaluate(x, point)


def _size(c):
    if isinstance(c, Period):
        return min((v.valuation() for v in c.num.values() if not v.is_zero()), default=0)
    return c.valuation()


def _valuation(c):
    if isinstance(c, Period):
        raise FuncError("norms are not defined for period-valued coefficients")
    return c.valuation()


@dataclass(frozen=True)
class TailCertificate:
    """Every omitted term of the represented series has Gauss exponent ``>= E``.

    ``ratio`` is the Gauss exponent of the ratio of successive terms, so the
    convergence radius is ``p^-ratio``.
    """

    E: Fraction
    ratio: Fraction

    def delta(self, p):
        r = Fraction(self.ratio)
        return Fraction(1, p ** int(r)) if r.denominator == 1 else None

    def holds(self, M, slack=0):
        return self.E >= M + slack

    def to_json(self):
        return {"E": str(self.E), "ratio": str(self.ratio)}

    @classmethod
    def from_json(cls, d):
        return cls(Fraction(d["E"]), Fraction(d.get("ratio", "1")))


def _tail_min(*ts):
    ts = [t for t in ts if t is not None]
    if not ts:
        return None
    return TailCertificate(min(t.E for t in ts), min(t.ratio for t in ts))


class PolyFunction:
    __slots__ = ("S", "reg", "terms", "tail")

    def __init__(self, S, terms, reg, tail=None):
        self.S = S
        self.reg = reg
        d = S.dim
        clean = {}
        for x, c in terms.items():
            if x.arity != d:
                raise ArityMismatch(f"thick character of arity {x.arity} on a polytope of dimension {d}")
            if not isinstance(c, Period):
                c = PadicScalar.coerce(reg.cfg, c)
            if not _zero(c):
                clean[x] = c
        self.terms = clean
        self.tail = tail

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, S, reg):
        return cls(S, {}, reg)

    @classmethod
    def constant(cls, S, reg, c):
        return cls(S, {Character.identity(S.dim): c}, reg)

    @classmethod
    def from_ambient(cls, S, terms, reg, tail=None):
        """Restrict ``sum c_x x(t)`` (characters of arity ``S.n``) to ``S``."""
        th = S.thick
        B = [list(r) for r in th.a_inv.A]
        z0 = th.a_inv.b
        out = {}
        for x, c in terms.items():
            if x.arity != S.n:
                raise ArityMismatch(f"ambient character of arity {x.arity} on R^{S.n}")
            y = x.map_coords(B) if S.n else Character.identity(S.dim)
            k = _const_part(x, z0, reg)
            c = _coerce(reg, c) * k if not isinstance(c, Period) else c * k
            if y in out:
                out[y] = out[y] + c
            else:
                out[y] = c
        return cls(S, out, reg, tail)

    @classmethod
    def monomial(cls, S, reg, x, c=1):
        return cls.from_ambient(S, {x: c}, reg)

    def to_ambient(self):
        """Ambient presentation obtained by pulling back along the chart ``a``."""
        th = self.S.thick
        C = [list(r) for r in th.a.A]
        b = th.a.b
        out = {}
        for x, c in self.terms.items():
            y = x.map_coords(C) if C else Character.identity(self.S.n)
            k = self.reg.evaluate(x, b)
            v = c * k
            out[y] = out[y] + v if y in out else v
        return out

    # basic protocol -------------------------------------------------------

    @property
    def cfg(self):
        return self.reg.cfg

    @property
    def dim(self):
        return self.S.dim

    def is_zero(self):
        return not self.terms

    def is_period_valued(self):
        return any(isinstance(c, Period) for c in self.terms.values())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for x in sorted(self.terms):
            c = self.terms[x]
            cs = repr(c)
            if x.is_identity():
                parts.append(cs)
            else:
                parts.append(f"{x}" if cs == "1" else f"({cs})·{x}")
        return " + ".join(parts)

    def _check(self, other):
        if not isinstance(other, PolyFunction):
            raise TypeError("expected a PolyFunction")
        if other.S != self.S:
            raise PolytopeMismatch(f"{self.S!r} vs {other.S!r}")

    def _lift(self, other):
        if isinstance(other, PolyFunction):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, PadicScalar, Period)):
            return PolyFunction.constant(self.S, self.reg, other)
        return None

    # algebra --------------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for x, c in other.terms.items():
            terms[x] = terms[x] + c if x in terms else c
        return PolyFunction(self.S, terms, self.reg, _tail_min(self.tail, other.tail))

    __radd__ = __add__

    def __neg__(self):
        return PolyFunction(self.S, {x: -c for x, c in self.terms.items()}, self.reg, self.tail)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar, Period)):
            return self.scale(other)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = {}
        for x, c in self.terms.items():
            for y, e in other.terms.items():
                z = x * y
                v = c * e
                terms[z] = terms[z] + v if z in terms else v
        tail = None
        if self.tail or other.tail:
            cands = []
            if other.tail:
                cands.append(self._gauss_or(0) + other.tail.E)
            if self.tail:
                cands.append(self.tail.E + other._gauss_or(0))
            if self.tail and other.tail:
                cands.append(self.tail.E + other.tail.E)
            ratio = min(t.ratio for t in (self.tail, other.tail) if t)
            tail = TailCertificate(min(cands), ratio)
        return PolyFunction(self.S, terms, self.reg, tail)

    __rmul__ = __mul__

    def scale(self, c):
        tail = self.tail
        if tail is not None and not isinstance(c, Period):
            cc = _coerce(self.reg, c)
            tail = TailCertificate(tail.E + cc.valuation(), tail.ratio)
        return PolyFunction(self.S, {x: v * c for x, v in self.terms.items()}, self.reg, tail)

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            raise FuncError("use invert_unit for negative powers")
        out = PolyFunction.constant(self.S, self.reg, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def equals(self, other, digits=None):
        """Equality of normal forms; ``digits`` allows a residual valuation bound."""
        other = self._lift(other)
        diff = self - other
        if diff.is_zero():
            return True
        if diff.is_period_valued():
            return all(isinstance(c, Period) and c.equals(0) for c in diff.terms.values())
        return digits is not None and gauss_norm(diff) >= digits

    def __eq__(self, other):
        if not isinstance(other, PolyFunction):
            return NotImplemented
        return self.S == other.S and self.equals(other)

    __hash__ = None

    def _gauss_or(self, default):
        # period coefficients are measured by their numerator's scalars
        if not self.terms:
            return default
        verts = self.S.thick.T.vertices
        return min(_size(c) + _char_min_exponent(x, self.reg, verts) for x, c in self.terms.items())

    # evaluation -----------------------------------------------------------

    def thick_point(self, t):
        if len(t) != self.S.n:
            raise ArityMismatch(f"point of length {len(t)} in R^{self.S.n}")
        return self.S.thick.a(tuple(Fraction(x) for x in t))

    def __call__(self, t):
        return evaluate_point(self, t, "i_u")

    # io -------------------------------------------------------------------

    def to_json(self):
        return {
            "polytope": self.S.to_json(),
            "coords": "thick",
            "terms": [{"char": x.to_json(), "coeff": _coeff_json(c)} for x, c in sorted(self.terms.items())],
            "tail": None if self.tail is None else self.tail.to_json(),
        }

    @classmethod
    def from_json(cls, d, reg):
        S = Polytope.from_json(d["polytope"])
        terms = {}
        for t in d["terms"]:
            x = Character.from_json(t["char"])
            c = _coeff_from_json(reg, t.get("coeff", 1))
            terms[x] = terms[x] + c if x in terms else c
        tail = TailCertificate.from_json(d["tail"]) if d.get("tail") else None
        if d.get("coords", "ambient") == "thick":
            return cls(S, terms, reg, tail)
        return cls.from_ambient(S, terms, reg, tail)


def _coerce(reg, c):
    return c if isinstance(c, (PadicScalar, Period)) else PadicScalar.coerce(reg.cfg, c)


def _coeff_json(c):
    if isinstance(c, Period):
        return {"period": c.to_json()}
    return c.to_json()


def _coeff_from_json(reg, c):
    if isinstance(c, dict) and "period" in c:
        return Period.from_json(reg.cfg, c["period"])
    if isinstance(c, dict):
        return PadicScalar.from_json(reg.cfg, c)
    return PadicScalar.coerce(reg.cfg, Fraction(str(c)))


# ---------------------------------------------------------------------------
# norms


def _char_min_exponent(x, reg, vertices):
    w = reg.weights(x)
    return min(sum((wi * vi for wi, vi in zip(w, v)), Fraction(0)) for v in vertices)


def term_exponents(f):
    """Gauss exponent of each term ``f_x x`` on ``S``."""
    verts = f.S.thick.T.vertices
    return {x: _valuation(c) + _char_min_exponent(x, f.reg, verts) for x, c in f.terms.items()}


def gauss_norm(f):
    """Exponent ``e`` with ``||f||_S = p^-e``; ``inf`` for 0."""
    if not f.terms:
        return float("inf")
    return min(term_exponents(f).values())


def algebra(f, g, op, c=None):
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scalar_mul":
        return f.scale(c)
    raise ValueError(op)


# ---------------------------------------------------------------------------
# maps


def pullback(a, f, source):
    """``a^* f`` on ``source`` for an integral affine map ``a`` into ``f.S``'s ambient space."""
    if a.m != f.S.n or a.n != source.n:
        raise PolytopeMismatch("affine map does not match the polytopes")
    amb = f.to_ambient()
    out = {}
    for x, c in amb.items():
        y = x.map_coords([list(r) for r in a.A]) if a.m else Character.identity(a.n)
        k = f.reg.evaluate(x, a.b)
        v = c * k
        out[y] = out[y] + v if y in out else v
    return PolyFunction.from_ambient(source, out, f.reg, f.tail)


def restrict(f, P):
    """Restriction to a subpolytope ``P`` of the same ambient space."""
    return pullback(AffineMap.identity(f.S.n), f, P)


def tensor(f, g):
    S = f.S.product(g.S)
    terms = {}
    for x, c in f.to_ambient().items():
        for y, e in g.to_ambient().items():
            z = x.concat(y)
            v = c * e
            terms[z] = terms[z] + v if z in terms else v
    return PolyFunction.from_ambient(S, terms, f.reg)


def _interval_length(S):
    if S.n != 1 or len(S.vertices) != 2 or S.vertices[0] != (0,):
        raise DomainError("involution needs S = [0, m]")
    m = S.vertices[1][0]
    if m.denominator != 1:
        raise DomainError("involution needs an integer endpoint")
    return int(m)


def involution(f):
    """``f*(t) = f(m - t)`` on ``[0, m]``."""
    m = _interval_length(f.S)
    return pullback(reflection(m), f, f.S)


def twist_character(x, u, cocycle, eps="eps"):
    """``g . x`` for the Galois element with cyclotomic unit ``u`` and cocycle ``c``."""
    coords = []
    for c in x.coords:
        d = dict(c)
        e = d.get(eps, Fraction(0)) * Fraction(u)
        for g, cg in (cocycle or {}).items():
            e += Fraction(cg) * d.get(g, Fraction(0))
        d[eps] = e
        coords.append(d)
    return Character(coords)


def galois_twist(f, u=1, cocycle=None, eps="eps"):
    from .periods import galois_images

    images = galois_images(u, cocycle, eps)
    terms = {}
    for x, c in f.terms.items():
        y = twist_character(x, u, cocycle, eps)
        if isinstance(c, Period):
            c = c.substitute(images)
        terms[y] = terms[y] + c if y in terms else c
    return PolyFunction(f.S, terms, f.reg, f.tail)


def evaluate_point(f, t, mode="i_u"):
    """``i_u``: the value ``sum f_x x(t)``; ``i_p``: exponent ``min v(f_x) + e_x(t)``."""
    s = f.thick_point(t)
    if mode == "i_u":
        out = None
        for x, c in f.terms.items():
            v = c * f.reg.evaluate(x, s)
            out = v if out is None else out + v
        return PadicScalar.coerce(f.cfg, 0) if out is None else out
    if mode == "i_p":
        if not f.terms:
            return float("inf")
        return min(_valuation(c) + f.reg.norm_exponent_at(x, s) for x, c in f.terms.items())
    raise ValueError(mode)


# ---------------------------------------------------------------------------
# units


@dataclass(frozen=True)
class UnitDecomposition:
    a: PadicScalar
    x: Character
    g: PolyFunction

    def __iter__(self):
        return iter((self.a, self.x, self.g))

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotUnit:
    reason: str

    def __bool__(self):
        return False


def unit_decompose(f):
    """``f = a x (1 + g)`` with ``||g|| < 1``, or ``NotUnit``."""
    if f.is_zero():
        return NotUnit("zero function")
    if f.is_period_valued():
        raise FuncError("unit decomposition needs scalar coefficients")
    ex = term_exponents(f)
    best = min(ex.values())
    top = [x for x, e in ex.items() if e == best]
    if len(top) > 1:
        return NotUnit(f"{len(top)} terms attain the Gauss norm")
    xh = top[0]
    a = f.terms[xh]
    inv = xh.inv()
    g = {}
    for x, c in f.terms.items():
        if x != xh:
            g[x * inv] = c / a
    g = PolyFunction(f.S, g, f.reg)
    if gauss_norm(g) <= 0:
        return NotUnit("dominant term does not control the rest on every vertex")
    return UnitDecomposition(a, xh, g)


def _prune(f, E):
    ex = term_exponents(f)
    return PolyFunction(f.S, {x: c for x, c in f.terms.items() if ex[x] < E}, f.reg)


def invert_unit(f, budget=None, slack=0):
    """Geometric-series inverse with a tail certificate.

    The product with ``f`` differs from 1 by ``(-g)^(budget+1)``, whose Gauss
    exponent is ``(budget+1) * gauss(g)``; that number must reach ``M + slack``.
    """
    dec = unit_decompose(f)
    if not dec:
        raise FuncError(f"not a unit: {dec.reason}")
    a, x, g = dec
    M = f.cfg.M
    one = PolyFunction.constant(f.S, f.reg, 1)
    if g.is_zero():
        inv = PolyFunction(f.S, {x.inv(): a.invert()}, f.reg)
        return inv, TailCertificate(Fraction(10**9), Fraction(10**9))
    r = Fraction(gauss_norm(g))
    need = ceil(Fraction(M + slack) / r) - 1
    if budget is None:
        budget = need
    if (budget + 1) * r < M + slack:
        raise BudgetTooSmall(f"budget {budget} certifies only {(budget + 1) * r} < {M + slack}")
    E = (budget + 1) * r
    total = one
    power = one
    mg = -g
    for _ in range(budget):
        power = _prune(power * mg, E)
        if power.is_zero():
            break
        total = total + power
    total = _prune(total, E)
    scale = PolyFunction(f.S, {x.inv(): a.invert()}, f.reg)
    shift = gauss_norm(scale)
    cert = TailCertificate(E + shift, r)
    out = scale * total
    return PolyFunction(f.S, out.terms, f.reg, cert), cert


# ---------------------------------------------------------------------------
# gluing


def glue(S, pieces, sections):
    """The function on ``S`` restricting to each section on its piece."""
    if len(pieces) != len(sections):
        raise NotGluable("one section per piece is required")
    if not veebar_check(S, pieces):
        raise NotGluable("pieces do not cover the polytope")
    for P, s in zip(pieces, sections):
        if s.S != P:
            raise PolytopeMismatch("section does not live on its piece")
    # pieces share S's affine hull, hence its thick chart: coefficients must agree
    base = sections[0]
    cand = PolyFunction(S, base.terms, base.reg)
    for P, s in zip(pieces, sections):
        r = restrict(cand, P)
        if not r.equals(s):
            raise IncompatibleSections(f"sections disagree on {P!r}")
    return cand
