"""A finitely generated model of de Rham periods.

A period is ``P / (L_1 ... L_r)`` where ``P`` is a polynomial over Q_p in
formal log symbols ``lambda_g`` and every ``L_i`` is a nonzero Q-linear form
in the same symbols.  The symbols are treated as algebraically independent.
Linear forms are stored monic (first coefficient 1 in name order), so a
denominator is a multiset of distinct irreducibles and the least common
denominator of two periods is a multiset maximum.
"""

from __future__ import annotations

from fractions import Fraction

from .localfield import DomainError, PadicScalar, plog, teichmuller

LOGP = "P"  # name of the optional symbol standing for log p


class PeriodError(Exception):
    pass


class TorsionDivide(PeriodError, ZeroDivisionError):
    pass


class NotGraded(PeriodError):
    pass


class NeedsLogP(PeriodError):
    pass


# ---------------------------------------------------------------------------
# linear forms and monomials


def make_form(coeffs):
    """Normalize ``{name: rational}`` to ``(scale, monic_form)``."""
    items = sorted((k, Fraction(v)) for k, v in coeffs.items() if v)
    if not items:
        raise TorsionDivide("division by the zero linear form")
    lead = items[0][1]
    return lead, tuple((k, v / lead) for k, v in items)


def _mono_mul(a, b):
    d = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + e
    return tuple(sorted((k, e) for k, e in d.items() if e))


def _mono_deg(m):
    return sum(e for _, e in m)


def _mono_text(m):
    parts = []
    for k, e in m:
        parts.append(f"λ_{k}" + (f"^{e}" if e != 1 else ""))
    return "·".join(parts)


def _form_text(form):
    parts = []
    for k, c in form:
        if c == 1:
            parts.append(f"λ_{k}")
        elif c == -1:
            parts.append(f"-λ_{k}")
        else:
            parts.append(f"{c}·λ_{k}")
    s = " + ".join(parts).replace("+ -", "- ")
    return s if len(form) == 1 else f"({s})"


class Period:
    """Element of the formal period model; immutable."""

    __slots__ = ("cfg", "num", "den")

    def __init__(self, cfg, num=None, den=None, _raw=False):
        self.cfg = cfg
        self.num = {}
        if num:
            for m, c in num.items():
                c = PadicScalar.coerce(cfg, c)
                if not c.is_zero():
                    self.num[m] = c
        self.den = dict(den) if den else {}
        if not _raw:
            self._cancel()

    # constructors -------------------------------------------------------

    @classmethod
    def scalar(cls, cfg, c):
        c = PadicScalar.coerce(cfg, c)
        return cls(cfg, {(): c}, _raw=True)

    @classmethod
    def zero(cls, cfg):
        return cls(cfg, _raw=True)

    @classmethod
    def symbol(cls, cfg, name, power=1):
        return cls(cfg, {((name, power),): 1}, _raw=True)

    @classmethod
    def linear(cls, cfg, coeffs):
        """The degree-one period ``sum c_g lambda_g``."""
        return cls(cfg, {((k, 1),): Fraction(v) for k, v in coeffs.items() if v}, _raw=True)

    # queries --------------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return not self.den

    def scalar_part(self):
        """The constant term of a polynomial period."""
        if self.den:
            raise NotGraded("period has a denominator")
        return self.num.get((), PadicScalar.coerce(self.cfg, 0))

    def symbols(self):
        out = set()
        for m in self.num:
            out.update(k for k, _ in m)
        for f in self.den:
            out.update(k for k, _ in f)
        return out

    def degree_bounds(self):
        if not self.num:
            return None
        degs = [_mono_deg(m) for m in self.num]
        r = sum(self.den.values())
        return min(degs) - r, max(degs) - r

    # polynomial helpers ---------------------------------------------------

    def _form_poly(self, form):
        return {((k, 1),): PadicScalar.coerce(self.cfg, c) for k, c in form}

    @staticmethod
    def _pmul(a, b):
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _mono_mul(m1, m2)
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return {m: c for m, c in out.items() if not c.is_zero()}

    @staticmethod
    def _padd(a, b, sign=1):
        out = dict(a)
        for m, c in b.items():
            c = c if sign == 1 else -c
            out[m] = out[m] + c if m in out else c
        return {m: c for m, c in out.items() if not c.is_zero()}

    def _divide(self, poly, form):
        """Exact division of ``poly`` by the monic form, or ``None``."""
        lead = form[0][0]
        rest = form[1:]

        def lead_exp(m):
            for k, e in m:
                if k == lead:
                    return e
            return 0

        # every reduction step moves terms to a strictly lower power of ``lead``
        buckets = {}
        for m, c in poly.items():
            buckets.setdefault(lead_exp(m), {})[m] = c
        quo = {}
        for e in range(max(buckets), 0, -1):
            for m, c in buckets.pop(e, {}).items():
                if c.is_zero():
                    continue
                q = _mono_mul(m, ((lead, -1),))
                quo[q] = quo[q] + c if q in quo else c
                low = buckets.setdefault(e - 1, {})
                for k, fc in rest:
                    mm = _mono_mul(q, ((k, 1),))
                    val = -(c * fc)
                    low[mm] = low[mm] + val if mm in low else val
        if any(not c.is_zero() for c in buckets.get(0, {}).values()):
            return None
        return {m: c for m, c in quo.items() if not c.is_zero()}

    def _cancel(self):
        if not self.num:
            self.den = {}
            return
        changed = True
        while changed and self.den:
            changed = False
            for form in list(self.den):
                q = self._divide(self.num, form)
                if q is not None:
                    self.num = q
                    self.den[form] -= 1
                    if not self.den[form]:
                        del self.den[form]
                    changed = True
                    break

    def _lift_to(self, den):
        """Numerator over the larger denominator ``den``."""
        poly = dict(self.num)
        for form, mult in den.items():
            for _ in range(mult - self.den.get(form, 0)):
                poly = self._pmul(poly, self._form_poly(form))
        return poly

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Period):
            return other
        if isinstance(other, (int, Fraction, PadicScalar)):
            return Period.scalar(self.cfg, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        den = dict(self.den)
        for f, m in other.den.items():
            den[f] = max(den.get(f, 0), m)
        num = self._padd(self._lift_to(den), other._lift_to(den))
        return Period(self.cfg, num, den)

    __radd__ = __add__

    def __neg__(self):
        return Period(self.cfg, {m: -c for m, c in self.num.items()}, self.den, _raw=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            c = PadicScalar.coerce(self.cfg, other)
            return Period(self.cfg, {m: v * c for m, v in self.num.items()}, self.den, _raw=True)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        den = dict(self.den)
        for f, m in other.den.items():
            den[f] = den.get(f, 0) + m
        return Period(self.cfg, self._pmul(self.num, other.num), den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            c = PadicScalar.coerce(self.cfg, other).invert()
            return self * c
        return NotImplemented

    def divide_by_form(self, coeffs):
        """Divide by the linear form ``sum coeffs[g] lambda_g``."""
        scale, form = make_form(coeffs)
        den = dict(self.den)
        den[form] = den.get(form, 0) + 1
        num = {m: c / PadicScalar.coerce(self.cfg, scale) for m, c in self.num.items()}
        return Period(self.cfg, num, den)

    def __pow__(self, k):
        out = Period.scalar(self.cfg, 1)
        for _ in range(int(k)):
            out = out * self
        return out

    # comparison -----------------------------------------------------------

    def equals(self, other, slack=2):
        other = self._coerce(other)
        diff = self - other
        if diff.is_zero():
            return True
        vals = [c.valuation() for c in self.num.values()] + [c.valuation() for c in other.num.values()]
        scale = min(vals) if vals else 0
        threshold = scale + self.cfg.M - slack
        return all(c.valuation() >= threshold for c in diff.num.values())

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    # substitutions --------------------------------------------------------

    def substitute(self, images):
        """Apply the ring map ``lambda_g -> images[g]`` (linear forms).

        ``images`` maps symbol names to ``{name: rational}`` dicts; symbols
        not listed are fixed.
        """

        def image_poly(k):
            if k in images:
                return {((kk, 1),): PadicScalar.coerce(self.cfg, Fraction(v)) for kk, v in images[k].items() if v}
            return {((k, 1),): PadicScalar.coerce(self.cfg, 1)}

        num = {}
        for m, c in self.num.items():
            term = {(): c}
            for k, e in m:
                for _ in range(e):
                    term = self._pmul(term, image_poly(k))
            num = self._padd(num, term)
        out = Period(self.cfg, num, _raw=True)
        for form, mult in self.den.items():
            coeffs = {}
            for k, c in form:
                img = images.get(k, {k: 1})
                for kk, v in img.items():
                    coeffs[kk] = coeffs.get(kk, 0) + c * Fraction(v)
            for _ in range(mult):
                out = out.divide_by_form(coeffs)
        return out

    # filtration -----------------------------------------------------------

    def fil_truncate(self, N):
        """Drop numerator monomials of total degree ``>= N``."""
        if len(self.den) > 1:
            raise NotGraded("mixed denominators give no well-defined truncation")
        num = {m: c for m, c in self.num.items() if _mono_deg(m) < N}
        return Period(self.cfg, num, self.den, _raw=True)

    # text / json ----------------------------------------------------------

    def _num_text(self):
        if not self.num:
            return "0"
        parts = []
        for m in sorted(self.num, key=lambda mm: (_mono_deg(mm), mm)):
            c = self.num[m]
            cs = repr(c)
            if not m:
                parts.append(cs)
            elif cs == "1":
                parts.append(_mono_text(m))
            elif cs == "-1":
                parts.append("-" + _mono_text(m))
            else:
                if " " in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}·{_mono_text(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        s = self._num_text()
        if not self.den:
            return s
        if len(self.num) > 1:
            s = f"({s})"
        den = []
        for form in sorted(self.den):
            t = _form_text(form)
            mult = self.den[form]
            den.append(t + (f"^{mult}" if mult > 1 else ""))
        d = "·".join(den)
        if len(den) > 1:
            d = f"({d})"
        return f"{s}/{d}"

    def to_json(self):
        return {
            "num": [{"mono": dict(m), "c": c.to_json()} for m, c in sorted(self.num.items())],
            "den": [
                {"form": {k: str(v) for k, v in f}, "mult": mult} for f, mult in sorted(self.den.items())
            ],
        }

    @classmethod
    def from_json(cls, cfg, d):
        num = {}
        for t in d.get("num", []):
            m = tuple(sorted((k, int(e)) for k, e in t["mono"].items() if int(e)))
            num[m] = PadicScalar.from_json(cfg, t["c"])
        out = cls(cfg, num, _raw=True)
        for t in d.get("den", []):
            for _ in range(int(t.get("mult", 1))):
                out = out.divide_by_form({k: Fraction(v) for k, v in t["form"].items()})
        return out


# ---------------------------------------------------------------------------
# operations on characters (duck-typed: anything with ``log_coefficients``)


def log_period(cfg, coeffs):
    return Period(cfg, {((k, 1),): Fraction(v) for k, v in coeffs.items() if v}, _raw=True)


def divide_by_log(x, c, registry):
    """``x / log c`` for a non-torsion character ``c`` of arity 1."""
    coeffs = registry.log_coefficients(c)
    if not coeffs:
        raise TorsionDivide("log of a torsion character is 0")
    return x.divide_by_form(coeffs)


def fil_truncate(x, N):
    return x.fil_truncate(N)


def branch_log(value, registry, logp=None):
    """Branch of log on Q_p^x: kill the Teichmuller part, plog on 1 + pZ_p.

    ``logp`` is the name of a period symbol standing for log p; it is needed
    only when ``value`` is not a unit.
    """
    cfg = value.cfg
    p = cfg.p
    if value.is_zero():
        raise DomainError("log of 0")
    v = value.v
    unit = PadicScalar(cfg, 0, value.u, value.rel)
    # unit / teichmuller(unit) lies in 1 + pZ_p; for p = 2 use the square
    if p == 2:
        w = plog(unit * unit) / 2
    else:
        w = plog(unit / teichmuller(cfg, value.u % p))
    out = Period.scalar(cfg, w)
    if v:
        if logp is None:
            raise NeedsLogP("value is not a unit and no log p symbol is configured")
        out = out + Period.symbol(cfg, logp) * v
    return out


def reduced_log(x, registry, logp=None):
    """``log x - log x(N)`` for a character of arity 1."""
    cfg = registry.cfg
    val = registry.evaluate(x, (cfg.N,))
    return log_period(cfg, registry.log_coefficients(x)) - branch_log(val, registry, logp)


def galois_images(u, cocycle, eps="eps"):
    """Symbol images of the Galois element ``(u, c)``.

    ``lambda_eps -> u lambda_eps`` and ``lambda_g -> lambda_g + c_g lambda_eps``.
    """
    images = {eps: {eps: Fraction(u)}}
    for g, c in (cocycle or {}).items():
        if c:
            images[g] = {g: 1, eps: Fraction(c)}
    return images


def period_sum(cfg, items):
    out = Period.zero(cfg)
    for it in items:
        out = out + it
    return out


__all__ = [
    "Period",
    "PeriodError",
    "TorsionDivide",
    "NotGraded",
    "NeedsLogP",
    "LOGP",
    "make_form",
    "log_period",
    "divide_by_log",
    "fil_truncate",
    "branch_log",
    "reduced_log",
    "galois_images",
    "period_sum",
]
