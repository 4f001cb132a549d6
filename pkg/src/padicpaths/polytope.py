"""Integral polytopes, their affine hulls and the covering algebra.

Everything is exact (``Fraction`` / ``int``).  Vertex enumeration is by brute
force over subsets of tight constraints, which is plenty for the dimensions
used here (ambient dimension up to about 6).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import gcd, lcm


class PolytopeError(Exception):
    pass


class EmptyPolytopeError(PolytopeError, ValueError):
    pass


class Unbounded(PolytopeError, ValueError):
    pass


class DimensionMismatch(PolytopeError, ValueError):
    pass


class NoIntegerPoint(PolytopeError, ValueError):
    pass


# ---------------------------------------------------------------------------
# exact linear algebra


def _solve(rows, rhs):
    """Unique solution of a square rational system, or ``None`` if singular."""
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(c)] for r, c in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / pv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(m[i][n] / m[i][i] for i in range(n))


def rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncol = len(m[0])
    rk = 0
    for col in range(ncol):
        piv = next((r for r in range(rk, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for r in range(len(m)):
            if r != rk and m[r][col] != 0:
                f = m[r][col] / m[rk][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rk])]
        rk += 1
    return rk


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def column_echelon(M, ncols):
    """Unimodular ``U`` with ``M U`` in lower column-echelon form.

    Returns ``(MU, U, pivots)``: ``pivots[k]`` is the row of the pivot of
    column ``k``; columns ``len(pivots):`` of ``MU`` vanish.
    """
    A = [list(r) for r in M]
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def colop(i, j, a, b, c, d):
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
        for R in (A, U):
            for row in R:
                x, y = row[i], row[j]
                row[i], row[j] = a * x + b * y, c * x + d * y

    k = 0
    pivots = []
    for r in range(len(A)):
        if k >= ncols:
            break
        for j in range(k + 1, ncols):
            if A[r][j] == 0:
                continue
            x, y = A[r][k], A[r][j]
            g, s, t = _xgcd(x, y)
            colop(k, j, s, t, -y // g, x // g)
        if A[r][k] == 0:
            continue
        if A[r][k] < 0:
            colop(k, k, -1, 0, 0, -1)
        pivots.append(r)
        k += 1
    return A, U, pivots


def hnf_rows(vectors):
    """Canonical row Hermite form of the lattice spanned by ``vectors``."""
    if not vectors:
        return []
    n = len(vectors[0])
    T = [list(col) for col in zip(*vectors)]  # n x m
    A, _, piv = column_echelon(T, len(vectors))
    rows = [[A[i][k] for i in range(n)] for k in range(len(piv))]
    for k, pr in enumerate(piv):
        for j in range(k):
            q = rows[j][pr] // rows[k][pr]
            if q:
                rows[j] = [a - q * b for a, b in zip(rows[j], rows[k])]
    return [tuple(r) for r in rows]


def integer_kernel(M, ncols):
    """Canonical basis of ``{z in Z^ncols : M z = 0}``."""
    _, U, piv = column_echelon(M, ncols)
    basis = [tuple(U[i][k] for i in range(ncols)) for k in range(len(piv), ncols)]
    return hnf_rows(basis)


def integer_solution(M, rhs, ncols):
    """Some integer ``z`` with ``M z = rhs``, or ``None``."""
    A, U, piv = column_echelon(M, ncols)
    y = [0] * ncols
    for r in range(len(A)):
        acc = sum(A[r][k] * y[k] for k in range(len(piv)))
        if r in piv:
            k = piv.index(r)
            q, rem = divmod(rhs[r] - acc, A[r][k])
            if rem:
                return None
            y[k] = q
        elif acc != rhs[r]:
            return None
    return tuple(sum(U[i][k] * y[k] for k in range(ncols)) for i in range(ncols))


def _primitive(vec):
    """Scale a rational vector to a primitive integer vector (same direction)."""
    den = lcm(*(Fraction(x).denominator for x in vec)) if vec else 1
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# affine maps


@dataclass(frozen=True)
class AffineMap:
    """``t -> A t + b`` from R^n to R^m with integer ``A`` (m x n) and ``b``."""

    A: tuple
    b: tuple
    n: int

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        b = tuple(int(x) for x in self.b)
        if any(len(r) != self.n for r in A) or len(b) != len(A):
            raise DimensionMismatch("inconsistent affine map data")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), (0,) * n, n)

    @classmethod
    def make(cls, A, b):
        A = [list(r) for r in A]
        n = len(A[0]) if A else 0
        return cls(tuple(map(tuple, A)), tuple(b), n)

    @property
    def m(self):
        return len(self.b)

    def __call__(self, t):
        if len(t) != self.n:
            raise DimensionMismatch(f"point of length {len(t)} for source dimension {self.n}")
        return tuple(_dot(row, t) + c for row, c in zip(self.A, self.b))

    apply_point = __call__

    def compose(self, inner):
        """``self o inner``."""
        if inner.m != self.n:
            raise DimensionMismatch(f"cannot compose R^{inner.n}->R^{inner.m} with R^{self.n}->R^{self.m}")
        A = tuple(tuple(sum(self.A[i][k] * inner.A[k][j] for k in range(self.n)) for j in range(inner.n)) for i in range(self.m))
        b = tuple(_dot(self.A[i], inner.b) + self.b[i] for i in range(self.m))
        return AffineMap(A, b, inner.n)

    def __matmul__(self, inner):
        return self.compose(inner)

    def image(self, S):
        if S.n != self.n:
            raise DimensionMismatch("polytope and map source differ")
        return Polytope.from_points([self(v) for v in S.vertices], self.m)

    def to_json(self):
        return {"A": [list(r) for r in self.A], "b": list(self.b), "n": self.n}

    @classmethod
    def from_json(cls, d):
        return cls(tuple(map(tuple, d["A"])), tuple(d["b"]), int(d.get("n", len(d["A"][0]) if d["A"] else 0)))


def apply(a, S):
    return a.image(S)


def compose(a, b):
    return a.compose(b)


def cube_face(n, i, sigma, N):
    """``[0,N]^(n-1) -> [0,N]^n`` inserting ``N sigma`` at slot ``i`` (1-based)."""
    A = []
    b = []
    for r in range(n):
        if r == i - 1:
            A.append((0,) * (n - 1))
            b.append(N * sigma)
        else:
            c = r if r < i - 1 else r - 1
            A.append(tuple(int(j == c) for j in range(n - 1)))
            b.append(0)
    return AffineMap(tuple(A), tuple(b), n - 1)


def cube_projection(n, i):
    """``[0,N]^n -> [0,N]^(n-1)`` dropping coordinate ``i`` (1-based)."""
    rows = [tuple(int(j == r) for j in range(n)) for r in range(n) if r != i - 1]
    return AffineMap(tuple(rows), (0,) * (n - 1), n)


def simplex_face(n, i):
    """``N Delta^(n-1) -> N Delta^n`` inserting 0 at slot ``i`` (0-based)."""
    rows = []
    for r in range(n + 1):
        if r == i:
            rows.append((0,) * n)
        else:
            c = r if r < i else r - 1
            rows.append(tuple(int(j == c) for j in range(n)))
    return AffineMap(tuple(rows), (0,) * (n + 1), n)


def simplex_degeneracy(n, i):
    """``N Delta^n -> N Delta^(n-1)`` merging slots ``i`` and ``i+1``."""
    rows = []
    for r in range(n):
        if r < i:
            rows.append(tuple(int(j == r) for j in range(n + 1)))
        elif r == i:
            rows.append(tuple(int(j in (i, i + 1)) for j in range(n + 1)))
        else:
            rows.append(tuple(int(j == r + 1) for j in range(n + 1)))
    return AffineMap(tuple(rows), (0,) * n, n + 1)


def reflection(m):
    """``t -> m - t`` on R^1."""
    return AffineMap(((-1,),), (m,), 1)


# ---------------------------------------------------------------------------
# polytopes


def _iter_vertices(ineqs, n):
    rows = [r[:-1] for r in ineqs]
    for idx in combinations(range(len(ineqs)), n):
        sol = _solve([rows[i] for i in idx], [-ineqs[i][-1] for i in idx])
        if sol is None:
            continue
        if all(_dot(r[:-1], sol) + r[-1] >= 0 for r in ineqs):
            yield sol


def _vertices(ineqs, n):
    if n == 0:
        return [()] if all(r[-1] >= 0 for r in ineqs) else []
    return sorted(set(_iter_vertices(ineqs, n)))


def _bounded(ineqs, n):
    if n == 0:
        return True
    box = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        box.append(tuple(e) + (1,))
        e[i] = -1
        box.append(tuple(e) + (1,))
    # the recession cone cut by the unit box has only the vertex 0
    cone = list(dict.fromkeys(tuple(r[:-1]) + (0,) for r in ineqs))
    return not any(any(v) for v in _iter_vertices(cone + box, n))


class _Empty:
    """The empty polytope; functions on it form the zero ring."""

    is_empty = True
    vertices = ()
    dim = -1

    def __repr__(self):
        return "Empty"

    def __eq__(self, other):
        return isinstance(other, _Empty)

    def __hash__(self):
        return 0

    def __bool__(self):
        return False


EMPTY = _Empty()


@lru_cache(maxsize=None)
def _standard(cls, shape, n, N):
    # polytopes are never mutated after construction, so the standard shapes are shared
    return getattr(cls, "_" + shape)(n, N)


class Polytope:
    """``{s in R^n : a_i . s + b_i >= 0}``, nonempty and bounded."""

    is_empty = False

    def __init__(self, n, ineqs, label=None):
        self.n = int(n)
        rows = []
        seen = set()
        for r in ineqs:
            r = tuple(int(x) for x in r)
            if len(r) != self.n + 1:
                raise DimensionMismatch(f"inequality {r} has wrong length for R^{self.n}")
            if all(x == 0 for x in r[:-1]):
                if r[-1] < 0:
                    raise EmptyPolytopeError("inconsistent constant inequality")
                continue
            g = 0
            for x in r:
                g = gcd(g, x)
            r = tuple(x // g for x in r)
            if r not in seen:
                seen.add(r)
                rows.append(r)
        self.ineqs = tuple(rows)
        if not _bounded(self.ineqs, self.n):
            raise Unbounded("inequalities do not cut out a bounded set")
        self.vertices = tuple(_vertices(self.ineqs, self.n))
        if not self.vertices:
            raise EmptyPolytopeError("inequalities have no common solution")
        self.label = label

    @classmethod
    def try_make(cls, n, ineqs):
        try:
            return cls(n, ineqs)
        except EmptyPolytopeError:
            return EMPTY

    # standard shapes ------------------------------------------------------

    @classmethod
    def cube(cls, n, N):
        return _standard(cls, "cube", n, N)

    @classmethod
    def _cube(cls, n, N):
        if N < 1:
            raise PolytopeError("N must be >= 1")
        rows = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            rows.append(tuple(e) + (0,))
            e[i] = -1
            rows.append(tuple(e) + (N,))
        return cls(n, rows, label=f"cube:{n}:{N}")

    @classmethod
    def interval(cls, N, lo=0):
        return cls(1, [(1, -lo), (-1, N)], label=f"interval:{lo}:{N}")

    @classmethod
    def box(cls, bounds):
        n = len(bounds)
        rows = []
        for i, (lo, hi) in enumerate(bounds):
            e = [0] * n
            e[i] = 1
            rows.append(tuple(e) + (-lo,))
            e[i] = -1
            rows.append(tuple(e) + (hi,))
        return cls(n, rows)

    @classmethod
    def simplex(cls, n, N):
        """``N Delta^n`` inside R^(n+1)."""
        return _standard(cls, "simplex", n, N)

    @classmethod
    def _simplex(cls, n, N):
        if N < 1:
            raise PolytopeError("N must be >= 1")
        m = n + 1
        rows = []
        for i in range(m):
            e = [0] * m
            e[i] = 1
            rows.append(tuple(e) + (0,))
        rows.append((1,) * m + (-N,))
        rows.append((-1,) * m + (N,))
        return cls(m, rows, label=f"simplex:{n}:{N}")

    @classmethod
    def point(cls, coords):
        n = len(coords)
        rows = []
        for i, c in enumerate(coords):
            e = [0] * n
            e[i] = 1
            rows.append(tuple(e) + (-c,))
            e[i] = -1
            rows.append(tuple(e) + (c,))
        return cls(n, rows)

    @classmethod
    def from_points(cls, points, n=None):
        """Convex hull of finitely many rational points with an integral hull."""
        points = sorted(set(tuple(Fraction(x) for x in p) for p in points))
        if not points:
            return EMPTY
        n = len(points[0]) if n is None else n
        hull = AffineHull(points, n)
        d = hull.dim
        local = [hull.to_local(p) for p in points]
        rows = []
        if d == 1:
            lo = min(x[0] for x in local)
            hi = max(x[0] for x in local)
            rows += [_primitive((1, -lo)), _primitive((-1, hi))]
        elif d > 1:
            for sub in combinations(local, d):
                normal = _hyperplane(sub, d)
                if normal is None:
                    continue
                sides = [_dot(normal[:-1], q) + normal[-1] for q in local]
                if all(s >= 0 for s in sides):
                    rows.append(_primitive(normal))
                elif all(s <= 0 for s in sides):
                    rows.append(_primitive(tuple(-x for x in normal)))
        # local inequalities c.s + e >= 0 pulled back along s = C (t - z0)
        amb = []
        for r in rows:
            c, e = r[:-1], r[-1]
            coef = [sum(c[k] * hull.C[k][j] for k in range(d)) for j in range(n)]
            const = e - _dot(coef, hull.z0)
            amb.append(tuple(coef) + (const,))
        for f in hull.L:
            amb.append(tuple(f))
            amb.append(tuple(-x for x in f))
        if n and not amb:
            amb = [(0,) * n + (0,)]
        return cls(n, amb)

    # queries --------------------------------------------------------------

    def __repr__(self):
        if self.label:
            return self.label
        return f"Polytope(n={self.n}, vertices={[tuple(str(x) for x in v) for v in self.vertices]})"

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.n == other.n and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.n, self.vertices))

    def contains(self, t):
        return all(_dot(r[:-1], t) + r[-1] >= 0 for r in self.ineqs)

    @cached_property
    def hull(self):
        return AffineHull(self.vertices, self.n)

    @property
    def dim(self):
        return self.hull.dim

    def barycenter(self):
        k = len(self.vertices)
        return tuple(sum(v[i] for v in self.vertices) / k for i in range(self.n))

    def implicit_equalities(self):
        return [r for r in self.ineqs if all(_dot(r[:-1], v) + r[-1] == 0 for v in self.vertices)]

    def proper_ineqs(self):
        return [r for r in self.ineqs if any(_dot(r[:-1], v) + r[-1] != 0 for v in self.vertices)]

    def in_relative_interior(self, t):
        if not self.contains(t):
            return False
        if not self.hull.contains(t):
            return False
        return all(_dot(r[:-1], t) + r[-1] > 0 for r in self.proper_ineqs())

    def lattice_L(self):
        return self.hull.L

    def is_thick(self):
        return not self.hull.L

    @cached_property
    def thick(self):
        return thick_representative(self)

    def product(self, other):
        n = self.n + other.n
        rows = [tuple(r[:-1]) + (0,) * other.n + (r[-1],) for r in self.ineqs]
        rows += [(0,) * self.n + tuple(r[:-1]) + (r[-1],) for r in other.ineqs]
        return Polytope(n, rows)

    def intersect(self, other):
        if other.n != self.n:
            raise DimensionMismatch("ambient dimensions differ")
        return Polytope.try_make(self.n, self.ineqs + other.ineqs)

    def to_json(self):
        return {"n": self.n, "ineqs": [list(r) for r in self.ineqs]}

    @classmethod
    def from_json(cls, d):
        return cls(int(d["n"]), [tuple(r) for r in d["ineqs"]])


def _hyperplane(points, d):
    """Affine form ``(c, e)`` through ``d`` points of R^d, if they span one."""
    base = points[0]
    diffs = [tuple(q[i] - base[i] for i in range(d)) for q in points[1:]]
    if rank(diffs) != d - 1:
        return None
    # normal: 1-dim rational kernel of diffs, computed by cofactors
    normal = []
    for j in range(d):
        minor = [[r[i] for i in range(d) if i != j] for r in diffs]
        normal.append((-1) ** j * _det(minor))
    e = -_dot(normal, base)
    return tuple(normal) + (e,)


def _det(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [[Fraction(x) for x in r] for r in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


class AffineHull:
    """Affine hull of rational points: ``L``, an integer point and local coordinates.

    Local coordinates ``s = C (t - z0)`` use the lexicographically first
    coordinate subset ``J`` on which the direction lattice projects
    unimodularly, so that when it exists the chart is the projection
    ``t -> t_J``.
    """

    def __init__(self, points, n):
        self.n = n
        pts = list(points)
        rows = []
        for v in pts:
            den = lcm(*(Fraction(x).denominator for x in v)) if n else 1
            rows.append([int(Fraction(x) * den) for x in v] + [den])
        self.L = integer_kernel(rows, n + 1) if rows else []
        # direction lattice: integer vectors killed by the linear parts of L
        lin = [list(f[:-1]) for f in self.L]
        if lin:
            self.directions = integer_kernel(lin, n)
        else:
            self.directions = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        self.dim = len(self.directions)
        if lin:
            z = integer_solution(lin, [-f[-1] for f in self.L], n)
            if z is None:
                raise NoIntegerPoint("affine hull contains no integer point")
        else:
            z = (0,) * n
        d = self.dim
        B = [list(col) for col in zip(*self.directions)] if d else [[] for _ in range(n)]  # n x d
        self.J = None
        for J in combinations(range(n), d):
            if abs(_det([B[j] for j in J])) == 1:
                self.J = J
                break
        if self.J is not None:
            BJinv = _inverse([B[j] for j in self.J])
            Bp = [[int(sum(B[i][k] * BJinv[k][c] for k in range(d))) for c in range(d)] for i in range(n)]
            # base point: the hull point with t_J = 0
            z0 = [z[i] - sum(Bp[i][c] * z[self.J[c]] for c in range(d)) for i in range(n)]
            self.B = Bp
            self.C = [[int(j == self.J[c]) for j in range(n)] for c in range(d)]
        else:
            # C with C B = I from a unimodular row reduction of B
            A, U, piv = column_echelon([list(r) for r in zip(*B)], n)  # (d x n) U
            H = [[A[r][k] for k in range(d)] for r in range(d)]
            Hinv = _inverse(H)
            Ut = [[U[j][k] for j in range(n)] for k in range(d)]  # first d columns of U, as rows
            # (B^T U)[:, :d] = H  =>  C = (U[:, :d] H^{-1})^T
            self.C = [[int(sum(Ut[k][j] * Hinv[k][c] for k in range(d))) for j in range(n)] for c in range(d)]
            self.B = B
            z0 = list(z)
        self.z0 = tuple(z0)

    def contains(self, t):
        return all(_dot(f[:-1], t) + f[-1] == 0 for f in self.L)

    def to_local(self, t):
        return tuple(sum(self.C[c][j] * (t[j] - self.z0[j]) for j in range(self.n)) for c in range(self.dim))

    def from_local(self, s):
        return tuple(self.z0[i] + sum(self.B[i][c] * s[c] for c in range(self.dim)) for i in range(self.n))

    def chart(self):
        """Integral affine maps ``(a, a_inv)`` between R^n and R^dim."""
        d, n = self.dim, self.n
        A = tuple(tuple(self.C[c]) for c in range(d))
        b = tuple(-_dot(self.C[c], self.z0) for c in range(d))
        a = AffineMap(A, b, n)
        a_inv = AffineMap(tuple(tuple(self.B[i]) for i in range(n)), self.z0, d)
        return a, a_inv


def _inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [r[n:] for r in a]


@dataclass(frozen=True)
class ThickRep:
    T: Polytope
    a: AffineMap
    a_inv: AffineMap

    def __iter__(self):
        return iter((self.T, self.a, self.a_inv))


def lattice_L(S):
    return S.lattice_L()


def thick_representative(S):
    """Thick ``T`` with mutually inverse integral affine maps ``a: S -> T``, ``a_inv``."""
    hull = S.hull
    a, a_inv = hull.chart()
    d = hull.dim
    rows = []
    for r in S.ineqs:
        c = r[:-1]
        coef = [sum(c[i] * a_inv.A[i][k] for i in range(S.n)) for k in range(d)]
        rows.append(tuple(coef) + (_dot(c, a_inv.b) + r[-1],))
    T = Polytope(d, rows)
    return ThickRep(T, a, a_inv)


def standard(kind, *args):
    """``standard("cube", n, N)``, ``("simplex", n, N)``, ``("interval", N)``, ``("box", bounds)``."""
    kinds = {
        "cube": Polytope.cube,
        "simplex": Polytope.simplex,
        "interval": Polytope.interval,
        "box": Polytope.box,
    }
    if kind not in kinds:
        raise PolytopeError(f"unknown polytope kind {kind!r}")
    return kinds[kind](*args)


def parse_shape(text):
    """``cube:2:4``, ``simplex:2:4``, ``interval:4`` or ``box:0,2;1,3``."""
    parts = text.split(":")
    kind = parts[0]
    if kind == "box":
        bounds = [tuple(int(x) for x in b.split(",")) for b in parts[1].split(";")]
        return Polytope.box(bounds)
    return standard(kind, *(int(x) for x in parts[1:]))


# ---------------------------------------------------------------------------
# covering algebra


def wedge(S, T):
    """Closure of ``ri(S) & ri(T)``, or ``EMPTY``."""
    if not S or not T:
        return EMPTY
    P = S.intersect(T)
    if not P:
        return EMPTY
    c = P.barycenter()
    if S.in_relative_interior(c) and T.in_relative_interior(c):
        return P
    return EMPTY


def _split(cells, h, d):
    out = []
    neg = tuple(-x for x in h)
    for cell in cells:
        for side in (h, neg):
            P = Polytope.try_make(cell.n, cell.ineqs + (side,))
            if P and P.dim == d:
                out.append(P)
    return out


def veebar_check(S, pieces):
    """Do the pieces subdivide ``S``: same hull, contained in ``S``, covering ``S``."""
    pieces = [P for P in pieces if P]
    if not pieces:
        return False
    d = S.dim
    for P in pieces:
        if P.n != S.n or P.dim != d:
            return False
        if not all(S.contains(v) and S.hull.contains(v) for v in P.vertices):
            return False
    hyper = []
    for P in pieces:
        for r in P.proper_ineqs():
            if r not in hyper and tuple(-x for x in r) not in hyper:
                hyper.append(r)
    cells = [S]
    for h in hyper:
        cells = _split(cells, h, d)
    return all(any(P.contains(c.barycenter()) for P in pieces) for c in cells)


def veebar(S, pieces):
    if not veebar_check(S, pieces):
        raise PolytopeError("pieces do not subdivide the polytope")
    return S
