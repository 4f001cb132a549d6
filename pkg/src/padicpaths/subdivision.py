"""Barycentric subdivision operators and their chain homotopies.

Chains here are formal: every generator is a map ``g`` from a standard
simplex or cube into the target cell of a free symbol ``f``, and stands for
the singular chain ``f o g``.  Two kinds are supported.

* simplicial: affine maps between standard simplices, stored by the
  barycentric coordinates of the images of the vertices;
* cubical: polynomial maps ``[0,1]^m -> [0,1]^n`` with rational
  coefficients, reduced modulo degenerate cubes (maps that do not depend on
  one of the source variables).

All arithmetic is exact over ``Fraction``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

# --------------------------------------------------------------------------
# sparse polynomials over Q


class QPoly:
    """Sparse polynomial over Q in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[tuple(mono)] = c

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        mono = [0] * nvars
        mono[i] = 1
        return cls(nvars, {tuple(mono): 1})

    def __add__(self, other):
        if not isinstance(other, QPoly):
            other = QPoly.const(self.nvars, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return QPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return QPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, QPoly) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QPoly):
            other = Fraction(other)
            return QPoly(self.nvars, {m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return QPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = QPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, QPoly):
            other = QPoly.const(self.nvars, other)
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return tuple(sorted(self.terms.items()))

    def depends_on(self, i):
        return any(m[i] for m in self.terms)

    def compose(self, subs):
        """Substitute ``subs[i]`` (QPoly or number) for variable ``i``."""
        if not subs:
            return QPoly(0, self.terms) if self.nvars == 0 else None
        nv = next((s.nvars for s in subs if isinstance(s, QPoly)), 0)
        out = QPoly(nv)
        powers = {}
        for mono, c in self.terms.items():
            term = QPoly.const(nv, c)
            for i, e in enumerate(mono):
                if e:
                    if (i, e) not in powers:
                        s = subs[i] if isinstance(subs[i], QPoly) else QPoly.const(nv, subs[i])
                        powers[(i, e)] = s ** e
                    term = term * powers[(i, e)]
            out = out + term
        return out

    def evaluate(self, point):
        total = Fraction(0)
        for mono, c in self.terms.items():
            v = c
            for x, e in zip(point, mono):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(), reverse=True):
            vs = "*".join(
                f"t{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e
            )
            parts.append(f"{c}" + (f"*{vs}" if vs else "") if c != 1 or not vs else vs)
        return " + ".join(parts)


# --------------------------------------------------------------------------
# formal maps and chains


@dataclass(frozen=True)
class FormalMap:
    """A map from a standard cell of dimension ``src`` into the target cell.

    ``kind == "simplicial"``: ``data`` is a tuple of columns; column ``j`` is
    the barycentric coordinate vector of the image of vertex ``j``.
    ``kind == "cubical"``: ``data`` is a tuple of ``QPoly`` components in
    ``src`` variables.
    """

    kind: str
    src: int
    data: tuple

    def key(self):
        if self.kind == "cubical":
            return (self.src, tuple(c.key() for c in self.data))
        return (self.src, self.data)

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, FormalMap) and self.kind == other.kind and self.key() == other.key()

    def is_degenerate(self):
        if self.kind != "cubical":
            return False
        return any(not any(c.depends_on(i) for c in self.data) for i in range(self.src))

    def then(self, inner):
        """Return ``self o inner`` (first ``inner``, then ``self``)."""
        if self.kind == "cubical":
            return FormalMap("cubical", inner.src, tuple(c.compose(list(inner.data)) for c in self.data))
        cols = []
        for col in inner.data:
            img = [Fraction(0)] * len(self.data[0])
            for w, vcol in zip(col, self.data):
                if w:
                    for r, x in enumerate(vcol):
                        img[r] += w * x
            cols.append(tuple(img))
        return FormalMap("simplicial", inner.src, tuple(cols))


@dataclass
class FormalChain:
    """Integer combination of formal maps of a common source dimension."""

    kind: str
    degree: int
    terms: dict = field(default_factory=dict)

    def add(self, fmap, coeff=1):
        if fmap.kind == "cubical" and fmap.is_degenerate():
            return
        c = self.terms.get(fmap, 0) + coeff
        if c:
            self.terms[fmap] = c
        else:
            self.terms.pop(fmap, None)

    def __add__(self, other):
        out = FormalChain(self.kind, self.degree, dict(self.terms))
        for m, c in other.terms.items():
            out.add(m, c)
        return out

    def scale(self, k):
        out = FormalChain(self.kind, self.degree)
        for m, c in self.terms.items():
            out.add(m, k * c)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        return self.kind == other.kind and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def precompose(self, maps):
        """Apply a natural operator given as ``[(sign, h)]`` to every term."""
        out = FormalChain(self.kind, maps[0][1].src if maps else self.degree)
        for g, c in self.terms.items():
            for s, h in maps:
                out.add(g.then(h), s * c)
        return out


def identity(kind, n):
    if kind == "cubical":
        return FormalMap("cubical", n, tuple(QPoly.var(n, i) for i in range(n)))
    cols = tuple(tuple(Fraction(int(r == c)) for r in range(n + 1)) for c in range(n + 1))
    return FormalMap("simplicial", n, cols)


def generator(kind, n):
    """The chain ``[f]`` of the free symbol on the standard ``n``-cell."""
    c = FormalChain(kind, n)
    c.add(identity(kind, n))
    return c


# --------------------------------------------------------------------------
# faces and boundaries


def cube_face(n, i, sigma):
    """The face inclusion ``[0,1]^(n-1) -> [0,1]^n`` putting ``sigma`` in slot ``i`` (1-based)."""
    comps = []
    for m in range(1, n + 1):
        if m < i:
            comps.append(QPoly.var(n - 1, m - 1))
        elif m == i:
            comps.append(QPoly.const(n - 1, sigma))
        else:
            comps.append(QPoly.var(n - 1, m - 2))
    return FormalMap("cubical", n - 1, tuple(comps))


def simplex_face(n, i):
    """The face inclusion ``Delta^(n-1) -> Delta^n`` missing vertex ``i``."""
    cols = []
    for c in range(n):
        target = c if c < i else c + 1
        cols.append(tuple(Fraction(int(r == target)) for r in range(n + 1)))
    return FormalMap("simplicial", n - 1, tuple(cols))


def boundary_maps(kind, n):
    if kind == "cubical":
        return [((-1) ** (i + s), cube_face(n, i, s)) for i in range(1, n + 1) for s in (0, 1)]
    return [((-1) ** i, simplex_face(n, i)) for i in range(n + 1)]


def formal_boundary(chain):
    if chain.degree < 1:
        raise ValueError("boundary needs degree >= 1")
    return chain.precompose(boundary_maps(chain.kind, chain.degree))


# --------------------------------------------------------------------------
# simplicial subdivision


def _inversions(sigma, n):
    # l-numbers summed over the prefix: elements of {0..n} not yet used and
    # smaller than the next image
    total = 0
    for i in range(1, len(sigma) + 1):
        used = set(sigma[: i - 1])
        total += sum(1 for x in range(n + 1) if x not in used and x < sigma[i - 1])
    return total


def simplicial_a(n, sigma):
    """Barycentre of the face of ``Delta^n`` spanned by vertices outside ``sigma``."""
    i = len(sigma)
    w = Fraction(1, n + 1 - i)
    return tuple(Fraction(0) if j in sigma else w for j in range(n + 1))


def simplicial_b(n, sigma):
    """Vertex images of the ``Phi`` term indexed by ``sigma: [i] -> [n+1]``.

    The first ``i+1`` vertices go to the barycentres of the nested faces
    cut out by ``sigma``; the remaining ones go, in increasing order, to
    the vertices of ``Delta^n`` not hit by ``sigma``.
    """
    i = len(sigma)
    cols = [simplicial_a(n, sigma[:j]) for j in range(i + 1)]
    rest = [x for x in range(n + 1) if x not in sigma]
    for m in rest:
        cols.append(tuple(Fraction(int(r == m)) for r in range(n + 1)))
    return tuple(cols)


def simplicial_B_maps(n):
    out = []
    for sigma in itertools.permutations(range(n + 1)):
        cols = tuple(simplicial_a(n, sigma[:i]) for i in range(n + 1))
        out.append(((-1) ** _inversions(sigma, n), FormalMap("simplicial", n, cols)))
    return out


def simplicial_Phi_maps(n):
    out = []
    for i in range(n + 1):
        for sigma in itertools.permutations(range(n + 1), i):
            sign = (-1) ** (n + i + _inversions(sigma, n))
            out.append((sign, FormalMap("simplicial", n + 1, simplicial_b(n, sigma))))
    return out


def simplicial_B(n):
    return generator("simplicial", n).precompose(simplicial_B_maps(n))


def simplicial_Phi(n):
    return generator("simplicial", n).precompose(simplicial_Phi_maps(n))


# --------------------------------------------------------------------------
# cubical subdivision


def cubical_count(n):
    """Number ``a_n`` of generator maps of the cubical homotopy."""
    return sum(2 ** (n - i) * (2 ** i + 1) * factorial(n) // factorial(i) for i in range(1, n + 1))


def cubical_count_recursive(n):
    return 0 if n == 0 else 1 + 2 ** n + 2 * n * cubical_count_recursive(n - 1)


def cubical_B_maps(n):
    out = []
    for I in itertools.product((0, 1), repeat=n):
        comps = tuple((QPoly.var(n, m) + I[m]) * Fraction(1, 2) for m in range(n))
        out.append((1, FormalMap("cubical", n, comps)))
    return out


def cubical_a(n):
    """The ``a_n`` polynomial maps ``[0,1]^(n+1) -> [0,1]^n``, in order ``j = 1..a_n``."""
    if n == 0:
        return []
    nv = n + 1
    s = QPoly.var(nv, n)
    half = Fraction(1, 2)
    maps = []
    # j = 1
    maps.append(tuple(half * (1 + (2 * QPoly.var(nv, m) - 1) * s) for m in range(n)))
    # j = 2 .. 1 + 2^n, with j - 2 = I_1 + 2 I_2 + ...
    for idx in range(2 ** n):
        I = [(idx >> m) & 1 for m in range(n)]
        maps.append(tuple(half * (1 + (QPoly.var(nv, m) + I[m] - 1) * s) for m in range(n)))
    # j > 1 + 2^n: sigma, i, h
    lower = cubical_a(n - 1)
    for sigma in (0, 1):
        for i in range(1, n + 1):
            for comps in lower:
                # lift the lower map to n+1 variables (t_1..t_n), leaving t_{n+1} out
                lifted = [c.compose([QPoly.var(nv, v) for v in range(n)]) for c in comps]
                row = []
                for m in range(1, n + 1):
                    if m < i:
                        row.append(half * (1 + (2 * lifted[m - 1] - 1) * s))
                    elif m == i:
                        row.append(half * (1 + (-1) ** sigma * s))
                    else:
                        row.append(half * (1 + (2 * lifted[m - 2] - 1) * s))
                maps.append(tuple(row))
    assert len(maps) == cubical_count(n)
    return maps


def _cubical_index(n, j):
    """Unfold ``j`` into ``([(level, sigma, i), ...], level, h)``."""
    steps = []
    level = n
    while j > 1 + 2 ** level:
        j -= 1 + 2 ** level
        block, h = divmod(j - 1, cubical_count(level - 1))
        sigma, i0 = divmod(block, level)
        steps.append((level, sigma, i0 + 1))
        j = h + 1
        level -= 1
    return steps, level, j


def cubical_chi(n, j):
    """Sign exponent of the ``j``-th generator map as tabulated."""
    steps, _, h = _cubical_index(n, j)
    return sum(s + i for _, s, i in steps) + (1 if h == 1 else 0)


def cubical_cone_sign(n, j):
    """Sign exponent forced by ``Phi_n = (-1)^n C(f - Bf - Phi_{n-1} d f)``.

    ``C`` is the straight-line cone to the centre of the cube, which is what
    every generator map is.  These are the signs that make the homotopy close.
    """
    steps, level, h = _cubical_index(n, j)
    return sum(lv + s + i for lv, s, i in steps) + level + (0 if h == 1 else 1)


def cubical_Phi_maps(n, signs="cone"):
    sign_fn = cubical_cone_sign if signs == "cone" else cubical_chi
    return [
        ((-1) ** sign_fn(n, j), FormalMap("cubical", n + 1, comps))
        for j, comps in enumerate(cubical_a(n), start=1)
    ]


def cubical_B(n):
    return generator("cubical", n).precompose(cubical_B_maps(n))


def cubical_Phi(n, signs="cone"):
    if n == 0:
        return FormalChain("cubical", 1)
    return generator("cubical", n).precompose(cubical_Phi_maps(n, signs))


# --------------------------------------------------------------------------
# homotopy identities


@dataclass
class HomotopyReport:
    kind: str
    n: int
    generator_maps: int
    lhs_terms: int
    rhs_terms: int
    residual_terms: int
    passed: bool

    def as_dict(self):
        return dict(self.__dict__)


def _phi_on(kind, chain, signs="cone"):
    """Apply the homotopy (a natural operator) to an arbitrary chain."""
    if kind == "simplicial":
        maps = simplicial_Phi_maps(chain.degree)
    else:
        maps = cubical_Phi_maps(chain.degree, signs)
    if not maps:
        return FormalChain(kind, chain.degree + 1)
    return chain.precompose(maps)


def homotopy_identity_check(kind, n, signs="cone", relation=None):
    """Check the chain-homotopy identity between ``id`` and ``B`` on ``[f]``.

    simplicial: ``d Phi - Phi d = (-1)^n (id - B)``.
    cubical:    ``d Phi + Phi d = id - B`` modulo degenerate cubes with the
    cone signs.  ``relation="minus"`` tests ``d Phi - Phi d = id - B``
    instead, and ``signs="tabulated"`` uses the tabulated sign function.
    """
    if kind not in ("simplicial", "cubical"):
        raise ValueError(kind)
    if relation is None:
        relation = "minus" if kind == "simplicial" else "plus"
    f = generator(kind, n)
    phi = _phi_on(kind, f, signs)
    lhs = formal_boundary(phi) if phi.terms else FormalChain(kind, n)
    if n >= 1:
        phid = _phi_on(kind, formal_boundary(f), signs)
        lhs = lhs + phid if relation == "plus" else lhs - phid
    if kind == "simplicial":
        rhs = (f - simplicial_B(n)).scale((-1) ** n)
        count = len(simplicial_Phi_maps(n))
    else:
        rhs = f - cubical_B(n)
        count = cubical_count(n)
    residual = lhs - rhs
    return HomotopyReport(kind, n, count, len(lhs), len(rhs), len(residual), residual.is_zero())


def cubical_sign_solvable(n, relation="minus"):
    """Decide whether *any* signs on the ``a_n`` maps satisfy the identity.

    The lower homotopy ``Phi_{n-1}`` is taken with cone signs.  Returns the
    rank data of the linear system over Q; used to certify that the
    ``minus`` form of the cubical identity cannot hold for ``n >= 2``.
    """
    import sympy

    f = generator("cubical", n)
    cols = []
    for comps in cubical_a(n):
        c = FormalChain("cubical", n + 1)
        c.add(FormalMap("cubical", n + 1, comps))
        cols.append(formal_boundary(c))
    phid = _phi_on("cubical", formal_boundary(f)) if n > 1 else FormalChain("cubical", n)
    target = (f - cubical_B(n)) + (phid if relation == "minus" else phid.scale(-1))
    keys = set(target.terms)
    for c in cols:
        keys |= set(c.terms)
    keys = sorted(keys, key=lambda m: repr(m.key()))
    A = sympy.Matrix([[c.terms.get(k, 0) for c in cols] for k in keys])
    b = sympy.Matrix([target.terms.get(k, 0) for k in keys])
    return A.rank() == A.row_join(b).rank()
