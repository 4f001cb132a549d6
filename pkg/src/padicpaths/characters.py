"""Characters: formal systems of roots over a finite generator registry.

A character of arity ``n`` is a tuple of ``n`` exponent vectors, one per
coordinate; coordinate ``i`` is the function ``t -> prod_g b_g^(q_g t)``.
Generators flagged ``torsion`` have trivial logarithm (their restriction to
``Z[1/p]`` is torsion); every other generator contributes a log symbol.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .localfield import DomainError, FieldConfig, PadicScalar, multiplicative_order, teichmuller
from .periods import LOGP, Period, log_period


class CharacterError(Exception):
    pass


class ArityMismatch(CharacterError, ValueError):
    pass


class NotRepresentable(CharacterError, ValueError):
    pass


class RegistryError(CharacterError, KeyError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    base: PadicScalar
    torsion: bool = False
    order: int | None = None


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class Character:
    """Immutable, hashable tuple of exponent vectors."""

    __slots__ = ("coords", "_hash")

    def __init__(self, coords):
        norm = []
        for c in coords:
            items = c.items() if isinstance(c, dict) else c
            norm.append(tuple(sorted((k, _frac(v)) for k, v in items if v)))
        self.coords = tuple(norm)
        self._hash = hash(self.coords)

    @classmethod
    def identity(cls, n):
        return cls([()] * n)

    @classmethod
    def gen(cls, name, exponent=1, n=1, i=0):
        coords = [()] * n
        coords[i] = ((name, _frac(exponent)),)
        return cls(coords)

    @classmethod
    def single(cls, exps):
        """Arity-one character from ``{name: exponent}``."""
        return cls([exps])

    @property
    def arity(self):
        return len(self.coords)

    def coord(self, i):
        return dict(self.coords[i])

    def coordinate(self, i):
        return Character([self.coords[i]])

    def exponent(self, i, name):
        return dict(self.coords[i]).get(name, Fraction(0))

    def is_identity(self):
        return all(not c for c in self.coords)

    def __eq__(self, other):
        return isinstance(other, Character) and self.coords == other.coords

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.coords < other.coords

    def _check(self, other):
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")

    def __mul__(self, other):
        self._check(other)
        out = []
        for a, b in zip(self.coords, other.coords):
            d = dict(a)
            for k, v in b:
                d[k] = d.get(k, 0) + v
            out.append(d)
        return Character(out)

    def inv(self):
        return Character([[(k, -v) for k, v in c] for c in self.coords])

    def __truediv__(self, other):
        return self * other.inv()

    def pow(self, q):
        q = _frac(q)
        return Character([[(k, v * q) for k, v in c] for c in self.coords])

    __pow__ = pow

    def concat(self, other):
        return Character(list(self.coords) + list(other.coords))

    def drop(self, i):
        return Character(self.coords[:i] + self.coords[i + 1 :])

    def insert(self, i, coord):
        c = Character([coord]).coords[0]
        return Character(self.coords[:i] + (c,) + self.coords[i:])

    def map_coords(self, matrix):
        """Character ``s -> x(A s)`` for an integer ``m x d`` matrix ``A``.

        Coordinate ``j`` of the result is ``prod_i (x^(i))^(A_ij)``.
        """
        if len(matrix) != self.arity:
            raise ArityMismatch("matrix rows must match arity")
        d = len(matrix[0]) if matrix else 0
        out = [dict() for _ in range(d)]
        for i, row in enumerate(matrix):
            for j, a in enumerate(row):
                if a:
                    for k, v in self.coords[i]:
                        out[j][k] = out[j].get(k, 0) + v * a
        return Character(out)

    def to_json(self):
        return {"coords": [{k: str(v) for k, v in c} for c in self.coords]}

    @classmethod
    def from_json(cls, d):
        if isinstance(d, dict) and "coords" in d:
            return cls([{k: Fraction(str(v)) for k, v in c.items()} for c in d["coords"]])
        if isinstance(d, dict):
            return cls([{k: Fraction(str(v)) for k, v in d.items()}])
        raise CharacterError(f"bad character JSON: {d!r}")

    def __repr__(self):
        def one(c):
            if not c:
                return "1"
            return "·".join(k if v == 1 else f"{k}^{v}" for k, v in c)

        if self.arity == 1:
            return one(self.coords[0])
        return "(" + ", ".join(one(c) for c in self.coords) + ")"


def combine(x, y=None, op="mul", q=None):
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inv()
    if op == "pow":
        return x.pow(q)
    raise ValueError(op)


class Registry:
    """Ordered, immutable set of generators over a fixed field."""

    def __init__(self, cfg, generators, logp=None):
        self.cfg = cfg
        self._gens = {}
        for g in generators:
            if g.name in self._gens:
                raise RegistryError(f"duplicate generator {g.name}")
            if g.name == LOGP:
                raise RegistryError(f"{LOGP} is reserved for the log p symbol")
            if g.torsion:
                if g.order is None:
                    raise RegistryError(f"torsion generator {g.name} needs an order")
                if not (g.base ** g.order).agrees(1, cfg.M - 2):
                    raise RegistryError(f"{g.name}: base^order != 1")
            self._gens[g.name] = g
        if "eps" in self._gens:
            e = self._gens["eps"]
            if e.torsion or not e.base.agrees(1):
                raise RegistryError("eps must have base 1 and be non-torsion")
        self.logp = logp

    def __contains__(self, name):
        return name in self._gens

    def __getitem__(self, name):
        try:
            return self._gens[name]
        except KeyError:
            raise RegistryError(f"unknown generator {name!r}") from None

    def names(self):
        return list(self._gens)

    def generators(self):
        return list(self._gens.values())

    def nontorsion(self):
        return [g.name for g in self._gens.values() if not g.torsion]

    def extend(self, generators):
        return Registry(self.cfg, self.generators() + list(generators), self.logp)

    def with_logp(self, name=LOGP):
        return Registry(self.cfg, self.generators(), name)

    def validate(self, x):
        for c in x.coords:
            for k, _ in c:
                self[k]

    # character operations ---------------------------------------------

    def evaluate(self, x, t):
        """Value ``x(t)`` in Q_p for a point ``t`` of matching arity."""
        if len(t) != x.arity:
            raise ArityMismatch(f"point of length {len(t)} for arity {x.arity}")
        out = PadicScalar.from_rational(self.cfg, 1)
        for c, ti in zip(x.coords, t):
            ti = _frac(ti)
            for k, q in c:
                e = q * ti
                if e.denominator != 1:
                    raise NotRepresentable(f"{k}^{q} at t = {ti}: exponent {e} is not an integer")
                g = self[k]
                e = int(e)
                if g.torsion:
                    e %= g.order
                if e:
                    out = out * g.base ** e
        return out

    def norm_exponent_at(self, x, t):
        """``e`` with ``|x(t)| = p^-e``; linear in ``t``."""
        total = Fraction(0)
        for c, ti in zip(x.coords, t):
            ti = _frac(ti)
            for k, q in c:
                total += ti * q * self[k].base.valuation()
        return total

    def weights(self, x):
        """Per-coordinate valuation weights ``sum_g q_{i,g} v(b_g)``."""
        return [sum((q * self[k].base.valuation() for k, q in c), Fraction(0)) for c in x.coords]

    def log_coefficients(self, x, i=0):
        return {k: q for k, q in x.coords[i] if not self[k].torsion}

    def is_torsion(self, x, i=0):
        return not self.log_coefficients(x, i)

    def log_character(self, x, i=0):
        return log_period(self.cfg, self.log_coefficients(x, i))

    def is_closed(self, x):
        if x.arity != 1:
            raise ArityMismatch("closedness is defined for arity 1")
        return self.evaluate(x, (self.cfg.N,)).agrees(1, self.cfg.M - 2)

    # io ---------------------------------------------------------------

    def to_json(self):
        return {
            "p": self.cfg.p,
            "precision": self.cfg.M,
            "logp": self.logp,
            "generators": [
                {
                    "name": g.name,
                    "base": g.base.to_json(),
                    "torsion": g.torsion,
                    "order": g.order,
                }
                for g in self._gens.values()
            ],
        }

    @classmethod
    def from_json(cls, cfg, d):
        gens = []
        for g in d["generators"]:
            if g.get("teichmuller") is not None:
                base = teichmuller(cfg, int(g["teichmuller"]))
            elif isinstance(g["base"], dict):
                base = PadicScalar.from_json(cfg, g["base"])
            else:
                base = PadicScalar.coerce(cfg, Fraction(str(g["base"])))
            order = g.get("order")
            if g.get("torsion") and order is None and g.get("teichmuller") is not None:
                order = multiplicative_order(int(g["teichmuller"]), cfg.p)
            gens.append(Generator(g["name"], base, bool(g.get("torsion", False)), order))
        return cls(cfg, gens, d.get("logp"))

    @classmethod
    def load(cls, cfg, path):
        with open(path) as fh:
            return cls.from_json(cfg, json.load(fh))


def default_registry(cfg=None, a=None, q=None, mu_residue=2, extra=()):
    """Registry with ``eps``, ``p``, ``q``, ``ua`` (base ``1 + a``) and ``mu``.

    ``q`` defaults to ``p``, ``a`` to ``p``; ``mu`` is the Teichmuller system
    through ``mu_residue`` mod p.
    """
    cfg = cfg or FieldConfig()
    p = cfg.p
    a = p if a is None else a
    q = p if q is None else q
    r = mu_residue % p or 1
    gens = [
        Generator("eps", PadicScalar.coerce(cfg, 1)),
        Generator("p", PadicScalar.coerce(cfg, p)),
        Generator("q", PadicScalar.coerce(cfg, q)),
    ]
    if a:
        gens.append(Generator("ua", PadicScalar.coerce(cfg, 1 + Fraction(a))))
    gens.append(Generator("mu", teichmuller(cfg, r), True, multiplicative_order(r, p)))
    gens.extend(extra)
    if PadicScalar.coerce(cfg, q).valuation() < 1:
        raise DomainError("q must have positive valuation")
    return Registry(cfg, gens)


# module-level conveniences mirroring the registry methods


def evaluate(x, t, registry):
    return registry.evaluate(x, t)


def norm_exponent_at(x, t, registry):
    return registry.norm_exponent_at(x, t)


def is_torsion(x, registry):
    return registry.is_torsion(x)


def log_character(x, registry):
    return registry.log_character(x)


def is_closed(x, registry):
    return registry.is_closed(x)
