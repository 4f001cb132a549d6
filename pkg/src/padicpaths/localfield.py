"""Arithmetic in Q_p at fixed relative precision.

A nonzero element is stored as ``p^v * u`` with ``u`` a unit known modulo
``p^rel``; its absolute precision is ``v + rel``.  Zero is either exact or
"zero modulo ``p^absprec``", which is what an add/sub produces when every
known digit cancels.  Keeping the two apart lets identity checks tell
"equal to precision" from "accidentally zero".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log
from numbers import Integral, Rational


class PadicError(Exception):
    pass


class PrecisionLoss(PadicError):
    pass


class DivisionByZero(PadicError, ZeroDivisionError):
    pass


class DomainError(PadicError, ValueError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def valuation_int(n, p):
    if n == 0:
        raise DomainError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class FieldConfig:
    p: int = 5
    M: int = 40

    def __post_init__(self):
        if not _is_prime(self.p):
            raise DomainError(f"p = {self.p} is not prime")
        if self.M < 8:
            raise DomainError("precision M must be at least 8")

    @property
    def q(self):
        return self.p

    @property
    def N(self):
        return self.p - 1

    def with_precision(self, M):
        return FieldConfig(self.p, M)

    def __call__(self, x):
        return PadicScalar.coerce(self, x)

    def zero(self):
        return PadicScalar(self, None, 0, None)

    def one(self):
        return PadicScalar.from_rational(self, 1)


class PadicScalar:
    __slots__ = ("cfg", "v", "u", "absprec")

    def __init__(self, cfg, v, u, absprec):
        self.cfg = cfg
        self.v = v
        self.u = u
        self.absprec = absprec

    # construction -----------------------------------------------------

    @classmethod
    def from_rational(cls, cfg, x):
        x = Fraction(x)
        if x == 0:
            return cls(cfg, None, 0, None)
        p = cfg.p
        num, den = x.numerator, x.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        mod = p ** cfg.M
        return cls(cfg, v, num * pow(den, -1, mod) % mod, v + cfg.M)

    @classmethod
    def from_parts(cls, cfg, v, u, rel=None):
        rel = cfg.M if rel is None else min(rel, cfg.M)
        if u % cfg.p == 0:
            raise DomainError("unit part divisible by p")
        return cls(cfg, v, u % cfg.p ** rel, v + rel)

    @classmethod
    def coerce(cls, cfg, x):
        if isinstance(x, PadicScalar):
            return x
        if isinstance(x, (Integral, Rational)):
            return cls.from_rational(cfg, x)
        if isinstance(x, str):
            return cls.from_rational(cfg, Fraction(x))
        raise TypeError(f"cannot coerce {x!r} to a p-adic scalar")

    # basic queries ----------------------------------------------------

    @property
    def p(self):
        return self.cfg.p

    @property
    def rel(self):
        return None if self.v is None else self.absprec - self.v

    def is_zero(self):
        return self.v is None

    def is_exact_zero(self):
        return self.v is None and self.absprec is None

    def valuation(self):
        """Valuation; for an inexact zero, the known lower bound."""
        if self.v is not None:
            return self.v
        return float("inf") if self.absprec is None else self.absprec

    def norm_exponent(self):
        return self.valuation()

    # arithmetic -------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, PadicScalar):
            if other.cfg.p != self.cfg.p:
                raise DomainError("mixed primes")
            return other
        if isinstance(other, (Integral, Rational)):
            return PadicScalar.from_rational(self.cfg, other)
        return None

    def add(self, other, strict=False):
        other = self._lift(other)
        if self.is_exact_zero():
            return other
        if other.is_exact_zero():
            return self
        p = self.p
        A = min(x for x in (self.absprec, other.absprec) if x is not None)
        if self.v is None and other.v is None:
            return PadicScalar(self.cfg, None, 0, A)
        if self.v is None or self.v >= A:
            return other._truncate(A)
        if other.v is None or other.v >= A:
            return self._truncate(A)
        vmin = min(self.v, other.v)
        mod = p ** (A - vmin)
        s = (self.u * p ** (self.v - vmin) + other.u * p ** (other.v - vmin)) % mod
        if s == 0:
            if strict:
                raise PrecisionLoss("addition cancelled every known digit")
            return PadicScalar(self.cfg, None, 0, A)
        k = 0
        while s % p == 0:
            s //= p
            k += 1
        v = vmin + k
        rel = min(A - v, self.cfg.M)
        if strict and rel < min(self.rel, other.rel) - self.cfg.M // 2:
            raise PrecisionLoss("catastrophic cancellation")
        return PadicScalar(self.cfg, v, s % p ** rel, v + rel)

    def _truncate(self, A):
        if self.v is None:
            return PadicScalar(self.cfg, None, 0, A if self.absprec is None else min(A, self.absprec))
        if A <= self.v:
            return PadicScalar(self.cfg, None, 0, A)
        rel = min(A - self.v, self.rel)
        return PadicScalar(self.cfg, self.v, self.u % self.p ** rel, self.v + rel)

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self.add(o)

    __radd__ = __add__

    def __neg__(self):
        if self.v is None:
            return self
        return PadicScalar(self.cfg, self.v, (-self.u) % self.p ** self.rel, self.absprec)

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self.add(-o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else o.add(-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.v is None or o.v is None:
            if self.is_exact_zero() or o.is_exact_zero():
                return PadicScalar(self.cfg, None, 0, None)
            if self.v is None and o.v is None:
                return PadicScalar(self.cfg, None, 0, self.absprec + o.absprec)
            z, nz = (self, o) if self.v is None else (o, self)
            return PadicScalar(self.cfg, None, 0, z.absprec + nz.v)
        rel = min(self.rel, o.rel)
        return PadicScalar(self.cfg, self.v + o.v, self.u * o.u % self.p ** rel, self.v + o.v + rel)

    __rmul__ = __mul__

    def invert(self):
        if self.v is None:
            if self.absprec is None:
                raise DivisionByZero("inverse of 0")
            raise PrecisionLoss("inverse of a value indistinguishable from 0")
        rel = self.rel
        return PadicScalar(self.cfg, -self.v, pow(self.u, -1, self.p ** rel), -self.v + rel)

    def __truediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self * o.invert()

    def __rtruediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else o * self.invert()

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.invert() ** (-k)
        if k == 0:
            return PadicScalar.from_rational(self.cfg, 1)
        if self.v is None:
            return self if self.absprec is None else PadicScalar(self.cfg, None, 0, self.absprec * k)
        rel = self.rel
        return PadicScalar(self.cfg, self.v * k, pow(self.u, k, self.p ** rel), self.v * k + rel)

    # comparison -------------------------------------------------------

    def agrees(self, other, digits=None):
        """True when ``self - other`` vanishes to ``digits`` beyond the larger scale."""
        other = self._lift(other)
        diff = self - other
        if diff.is_zero():
            return True
        if digits is None:
            return False
        scale = min(self.valuation(), other.valuation())
        return diff.v >= scale + digits

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def to_rational(self):
        """Rational reconstruction of the known digits, or ``None``."""
        if self.v is None:
            return Fraction(0)
        rel = self.rel
        mod = self.p ** rel
        r0, r1 = mod, self.u % mod
        s0, s1 = 0, 1
        bound = int((mod // 2) ** 0.5)
        while r1 > bound:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        # demand a margin so that random digit strings are not mistaken for
        # small rationals
        small = round(mod ** (1 / 3)) + 1
        if s1 == 0 or abs(s1) > small or abs(r1) > small:
            return None
        x = Fraction(r1, s1)
        if x.denominator % self.p == 0:
            return None
        return x * Fraction(self.p) ** self.v

    def residue_integer(self):
        """Representative of the value modulo its absolute precision."""
        if self.v is None or self.v < 0:
            raise DomainError("not integral")
        return self.u * self.p ** self.v

    # text -------------------------------------------------------------

    def __repr__(self):
        if self.v is None:
            return "0" if self.absprec is None else f"O(p^{self.absprec})"
        r = self.to_rational()
        if r is not None and abs(r.numerator) < 10 ** 12 and r.denominator < 10 ** 6:
            return str(r)
        return f"p^{self.v} * {self.u}"

    def to_text(self):
        if self.v is None:
            return "0"
        return f"p^{self.v} * {self.u}"

    def to_json(self):
        return {"v": self.v, "u": str(self.u)}

    @classmethod
    def from_json(cls, cfg, d):
        if d.get("v") is None:
            return cls(cfg, None, 0, None)
        return cls.from_parts(cfg, int(d["v"]), int(d["u"]))


def arith(a, b, op, strict=False):
    if op == "add":
        return a.add(b, strict=strict)
    if op == "sub":
        return a.add(-b, strict=strict)
    if op == "mul":
        return a * b
    raise ValueError(op)


def invert(a):
    return a.invert()


def plog(a):
    """p-adic logarithm on ``1 + pZ_p`` by its power series."""
    cfg = a.cfg
    p = cfg.p
    x = a - 1
    if x.is_zero():
        return cfg.zero()
    vx = x.v
    if vx < 1:
        raise DomainError("plog needs v(a - 1) >= 1")
    # guard digits cover the p-parts of the denominators i
    guard = 2 + len(bin(cfg.M)) * 2
    work = cfg.with_precision(cfg.M + guard)
    xw = PadicScalar(work, x.v, x.u, x.absprec)
    target = cfg.M + vx + 1
    total = work.zero()
    power = xw
    i = 1
    while i * vx - log(i) / log(p) < target:
        term = power / i
        total = total + (term if i % 2 else -term)
        power = power * xw
        i += 1
    if total.v is None:
        return cfg.zero()
    rel = min(total.rel, cfg.M, x.rel)
    return PadicScalar(cfg, total.v, total.u % p ** rel, total.v + rel)


def teichmuller(cfg, r):
    """Teichmuller lift of the residue class ``r`` mod p."""
    p = cfg.p
    r = int(r) % p
    if r == 0:
        raise DomainError("teichmuller lift of 0")
    mod = p ** cfg.M
    x = r
    for _ in range(cfg.M + 1):
        y = pow(x, p, mod)
        if y == x:
            break
        x = y
    return PadicScalar(cfg, 0, x, cfg.M)


def multiplicative_order(r, p):
    r %= p
    k, x = 1, r
    while x != 1:
        x = x * r % p
        k += 1
    return k
