"""Exact rational linear algebra and polyhedral primitives.

Everything here works over ``fractions.Fraction``; there is no floating point
anywhere. Algorithms are chosen for desk-scale inputs (a few dozen
half-spaces, rank at most 4): vertices come from solving every n-subset of
the constraints, volumes from a recursive pulling triangulation.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import factorial, floor, ceil, gcd, lcm
from typing import Iterable, Sequence

from .errors import (
    DuplicateAbscissaError,
    EmptyError,
    LatticeLimitError,
    OutOfDomainError,
    UnboundedError,
    ZeroVolumeError,
)

Rational = Fraction
RationalVector = tuple  # tuple[Fraction, ...]
LatticeVector = tuple  # tuple[int, ...]

DEFAULT_MAX_LATTICE_POINTS = 1_000_000


def Q(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def qvec(xs: Iterable) -> tuple:
    return tuple(Q(x) for x in xs)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), 0)


def sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def primitive(v: Sequence[int]) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(int(x) // g for x in v)


def integral_multiple(v: Sequence) -> tuple[tuple, int]:
    """Return (w, k) with w = k*v integral and k the least positive such integer."""
    k = 1
    for x in v:
        k = lcm(k, Q(x).denominator)
    return tuple(int(Q(x) * k) for x in v), k


# ---------------------------------------------------------------------------
# exact linear algebra


def _rref(rows: Sequence[Sequence], ncols: int):
    m = [[Q(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    rows = list(rows)
    if not rows:
        return 0
    return len(_rref(rows, ncols if ncols is not None else len(rows[0]))[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of {x : r.x = 0 for every row r}."""
    rows = list(rows)
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    m, pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -m[i][f]
        basis.append(tuple(x))
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> tuple | None:
    """Solve A x = b exactly.

    Returns the unique solution, or None when the system is inconsistent or
    underdetermined. Overdetermined consistent systems are fine.
    """
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    m, pivots = _rref(aug, n + 1)
    if n in pivots or len(pivots) < n:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = m[i][n]
    return tuple(x)


def det(M: Sequence[Sequence]) -> Fraction:
    m = [[Q(x) for x in r] for r in M]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def affine_dim(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    base = points[0]
    return rank([sub(p, base) for p in points[1:]], len(base)) if len(points) > 1 else 0


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class HalfSpace:
    """The inequality <u, normal> >= -offset."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(int(x) for x in self.normal))
        object.__setattr__(self, "offset", Q(self.offset))
        if not any(self.normal):
            raise ValueError("half-space normal must be nonzero")

    def value(self, u) -> Fraction:
        """Slack <u, normal> + offset; nonnegative iff u satisfies the inequality."""
        return dot(u, self.normal) + self.offset

    def contains(self, u) -> bool:
        return self.value(u) >= 0


@dataclass(frozen=True)
class Polytope:
    """Bounded polyhedron given by half-spaces; vertices are computed lazily."""

    halfspaces: tuple
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))
        for h in self.halfspaces:
            if len(h.normal) != self.dim:
                raise ValueError("half-space rank does not match polytope rank")

    @classmethod
    def from_inequalities(cls, normals, offsets, dim=None) -> "Polytope":
        normals = [tuple(n) for n in normals]
        dim = dim if dim is not None else len(normals[0])
        return cls(tuple(HalfSpace(n, b) for n, b in zip(normals, offsets)), dim)

    def contains(self, u) -> bool:
        return all(h.contains(u) for h in self.halfspaces)

    @cached_property
    def vertices(self) -> tuple:
        return tuple(vertices(self))

    @cached_property
    def _edges(self):
        return edges(self)

    @cached_property
    def _volume_data(self):
        return _triangulation_sums(self, 0)

    def tight(self, u) -> frozenset:
        """Indices of half-spaces attaining equality at u."""
        return frozenset(i for i, h in enumerate(self.halfspaces) if h.value(u) == 0)


def _int_det(M: list) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    m = [list(r) for r in M]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def _basic_solutions(halfspaces, n):
    """Feasible intersection points of every n-subset of bounding hyperplanes.

    Solved by Cramer's rule in integers after clearing offset denominators.
    """
    den = 1
    for h in halfspaces:
        den = lcm(den, h.offset.denominator)
    normals = [h.normal for h in halfspaces]
    rhs = [int(-h.offset * den) for h in halfspaces]
    seen = set()
    for idx in combinations(range(len(halfspaces)), n):
        A = [normals[i] for i in idx]
        d = _int_det(A)
        if d == 0:
            continue
        b = [rhs[i] for i in idx]
        x = tuple(
            Fraction(_int_det([row[:k] + (bi,) + row[k + 1:] for row, bi in zip(A, b)]), d * den)
            for k in range(n)
        )
        if x in seen:
            continue
        if all(h.value(x) >= 0 for h in halfspaces):
            seen.add(x)
    return seen


def _recession_ray(halfspaces, n):
    """A nonzero d with <d, normal> >= 0 for all normals, or None (normals of full rank)."""
    normals = [h.normal for h in halfspaces]
    for idx in combinations(range(len(normals)), n - 1):
        sub_rows = [normals[i] for i in idx]
        if rank(sub_rows, n) != n - 1:
            continue
        (d,) = nullspace(sub_rows, n)
        for s in (1, -1):
            if all(s * dot(d, a) >= 0 for a in normals):
                return scale(s, d)
    return None


def vertices(P: Polytope) -> list:
    """Vertices of P, deduplicated and sorted lexicographically.

    Raises EmptyError if P has no point and UnboundedError if it is not bounded.
    """
    n = P.dim
    hs = list(P.halfspaces)
    if rank([h.normal for h in hs], n) < n:
        # P = slice + lineality space; test feasibility on a complementary slice
        span = [h.normal for h in hs]
        extra = []
        for k in range(n):
            e = tuple(int(i == k) for i in range(n))
            if rank(span + [e], n) > rank(span, n):
                span.append(e)
                extra += [HalfSpace(e, 0), HalfSpace(tuple(-x for x in e), 0)]
        if _basic_solutions(hs + extra, n):
            raise UnboundedError("polyhedron contains a line")
        raise EmptyError("polytope is empty")
    pts = _basic_solutions(hs, n)
    if not pts:
        raise EmptyError("polytope is empty")
    if _recession_ray(hs, n) is not None:
        raise UnboundedError("polyhedron has a nonzero recession direction")
    return sorted(pts)


def intersect(P: Polytope, H: HalfSpace) -> Polytope:
    return Polytope(P.halfspaces + (H,), P.dim)


def edges(P: Polytope) -> list[tuple[int, int]]:
    """Pairs of vertex indices joined by an edge of P."""
    verts = P.vertices
    tight = [P.tight(v) for v in verts]
    out = []
    for i, j in combinations(range(len(verts)), 2):
        common = tight[i] & tight[j]
        if len(common) >= P.dim - 1 and rank([P.halfspaces[k].normal for k in common], P.dim) == P.dim - 1:
            out.append((i, j))
    return out


def cut(P: Polytope, H: HalfSpace) -> Polytope:
    """P ∩ H with its vertex set derived from P's vertices and edges.

    Same result as ``intersect`` but skips re-enumeration: the vertices of
    the cut are the vertices of P inside H plus the points where edges of P
    cross the boundary of H.
    """
    verts = P.vertices
    vals = [H.value(u) for u in verts]
    new = {u for u, x in zip(verts, vals) if x >= 0}
    for i, j in P._edges:
        a, b = vals[i], vals[j]
        if (a < 0 < b) or (b < 0 < a):
            lam = a / (a - b)
            new.add(tuple(x + lam * (y - x) for x, y in zip(verts[i], verts[j])))
    Q_ = intersect(P, H)
    if not new:
        Q_.__dict__["_empty"] = True
    else:
        Q_.__dict__["vertices"] = tuple(sorted(new))
    return Q_


def is_empty(P: Polytope) -> bool:
    if P.__dict__.get("_empty"):
        return True
    try:
        P.vertices
    except EmptyError:
        return True
    return False


# -- triangulation ----------------------------------------------------------


def triangulate(P: Polytope, root: int = 0) -> list[tuple]:
    """Pulling triangulation: cone from vertex ``root`` over the triangulated
    facets not containing it, recursively (lower levels pull their least vertex).

    Returns a list of n-simplices as tuples of vertex indices into P.vertices;
    empty when P is not full-dimensional.
    """
    verts = P.vertices
    n = P.dim
    if affine_dim(verts) < n:
        return []
    tight = [P.tight(v) for v in verts]
    all_idx = frozenset(range(len(verts)))
    memo: dict = {}

    def facets(face, d):
        out = set()
        for i in range(len(P.halfspaces)):
            g = frozenset(j for j in face if i in tight[j])
            if g and g != face and g not in out and affine_dim([verts[j] for j in sorted(g)]) == d - 1:
                out.add(g)
        return sorted(out, key=sorted)

    def tri(face, d, r):
        key = (face, r)
        if key in memo:
            return memo[key]
        if d == 0:
            res = [(r,)]
        else:
            res = []
            for g in facets(face, d):
                if r not in g:
                    res.extend((r,) + s for s in tri(g, d - 1, min(g)))
        memo[key] = res
        return res

    if not 0 <= root < len(verts):
        raise IndexError("root vertex index out of range")
    return tri(all_idx, n, root)


def simplex_volume(pts: Sequence[Sequence]) -> Fraction:
    n = len(pts) - 1
    return abs(det([sub(p, pts[0]) for p in pts[1:]])) / factorial(n)


def _triangulation_sums(P: Polytope, root: int):
    verts = P.vertices
    n = P.dim
    vol = Fraction(0)
    moment = [Fraction(0)] * n
    for s in triangulate(P, root):
        pts = [verts[i] for i in s]
        w = simplex_volume(pts)
        vol += w
        for k in range(n):
            moment[k] += w * sum(p[k] for p in pts) / (n + 1)
    return vol, tuple(moment)


def volume(P: Polytope, root: int = 0) -> Fraction:
    """Exact Euclidean volume; 0 for lower-dimensional P."""
    if root == 0:
        return P._volume_data[0]
    return _triangulation_sums(P, root)[0]


def barycenter(P: Polytope, root: int = 0) -> tuple:
    vol, moment = P._volume_data if root == 0 else _triangulation_sums(P, root)
    if vol == 0:
        raise ZeroVolumeError("barycenter needs a full-dimensional polytope")
    return tuple(c / vol for c in moment)


# -- lattice points ---------------------------------------------------------


def max_lattice_points() -> int:
    return int(os.environ.get("TT_MAX_LATTICE_POINTS", DEFAULT_MAX_LATTICE_POINTS))


def lattice_points(P: Polytope, m: int = 1, limit: int | None = None) -> list[tuple]:
    """Integer points of the dilate mP, sorted lexicographically.

    The first n-1 coordinates run over the exact bounding box; the last one
    is solved for directly from the integer-scaled inequalities.
    """
    if m < 1:
        raise ValueError("dilation factor must be a positive integer")
    limit = max_lattice_points() if limit is None else limit
    n = P.dim
    verts = P.vertices
    lo = [floor(min(v[k] for v in verts) * m) for k in range(n)]
    hi = [ceil(max(v[k] for v in verts) * m) for k in range(n)]
    # q*<u, a> >= -m*p  for offset p/q
    cons = [(h.normal, -m * h.offset.numerator, h.offset.denominator) for h in P.halfspaces]
    cons = [(tuple(q * a for a in normal), rhs) for normal, rhs, q in cons]
    last = [(a, r) for a, r in cons if a[-1] != 0]
    rest = [(a, r) for a, r in cons if a[-1] == 0]
    out: list[tuple] = []

    def rec(prefix):
        k = len(prefix)
        if k == n - 1:
            if any(dot(prefix, a[:-1]) < r for a, r in rest):
                return
            lo_t, hi_t = lo[-1], hi[-1]
            for a, r in last:
                s = r - dot(prefix, a[:-1])
                c = a[-1]
                if c > 0:
                    lo_t = max(lo_t, -((-s) // c))
                else:
                    hi_t = min(hi_t, s // c)
            if hi_t >= lo_t:
                if len(out) + hi_t - lo_t + 1 > limit:
                    raise LatticeLimitError(f"more than {limit} lattice points in {m}P")
                out.extend(prefix + (t,) for t in range(lo_t, hi_t + 1))
            return
        for x in range(lo[k], hi[k] + 1):
            rec(prefix + (x,))

    rec(())
    return out


def convex_hull_halfspaces(points: Sequence[Sequence]) -> list[HalfSpace]:
    """Facet inequalities (primitive integer normals) of conv(points).

    Points must affinely span the ambient space. Facets are found by trying
    every hyperplane through n affinely independent points.
    """
    pts = sorted(set(qvec(p) for p in points))
    n = len(pts[0])
    if affine_dim(pts) < n:
        raise ZeroVolumeError("points do not span a full-dimensional hull")
    found = {}
    for idx in combinations(range(len(pts)), n):
        base = pts[idx[0]]
        diffs = [sub(pts[i], base) for i in idx[1:]]
        if rank(diffs, n) != n - 1:
            continue
        (a,) = nullspace(diffs, n) if n > 1 else [(Fraction(1),)]
        a, _ = integral_multiple(a)
        a = primitive(a)
        c = dot(a, base)
        vals = [dot(a, p) - c for p in pts]
        if all(x >= 0 for x in vals):
            pass
        elif all(x <= 0 for x in vals):
            a, c = tuple(-x for x in a), -c
        else:
            continue
        found[a] = -c
    return [HalfSpace(a, found[a]) for a in sorted(found)]


# ---------------------------------------------------------------------------
# polynomials in one variable


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial, coefficients low degree first."""

    coeffs: tuple = (Fraction(0),)

    def __post_init__(self):
        c = [Q(x) for x in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) if c else (Fraction(0),))

    @property
    def degree(self) -> int:
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    def __call__(self, t):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs))[1:] or (0,))

    def antiderivative(self) -> "Polynomial":
        return Polynomial((Fraction(0),) + tuple(c / (k + 1) for k, c in enumerate(self.coeffs)))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    def __str__(self):
        terms = [f"{c}*t^{k}" for k, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms) or "0"


def interpolate_piece(samples: Sequence[tuple], degree: int) -> Polynomial:
    """The unique polynomial of degree <= ``degree`` through degree+1 samples."""
    samples = [(Q(t), Q(y)) for t, y in samples]
    if len(samples) != degree + 1:
        raise ValueError(f"need exactly {degree + 1} samples, got {len(samples)}")
    ts = [t for t, _ in samples]
    if len(set(ts)) != len(ts):
        raise DuplicateAbscissaError("interpolation abscissae must be distinct")
    A = [[t**k for k in range(degree + 1)] for t in ts]
    return Polynomial(solve(A, [y for _, y in samples]))


@dataclass(frozen=True)
class PiecewisePolynomial:
    breakpoints: tuple
    pieces: tuple

    def __post_init__(self):
        bp = tuple(Q(t) for t in self.breakpoints)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if len(bp) < 1 or any(a >= b for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if len(self.pieces) != max(len(bp) - 1, 0):
            raise ValueError("need one piece per interval")

    @property
    def domain(self) -> tuple:
        return self.breakpoints[0], self.breakpoints[-1]

    def piece_index(self, t) -> int:
        a, b = self.domain
        if not a <= t <= b:
            raise OutOfDomainError(f"{t} outside [{a}, {b}]")
        for j in range(len(self.pieces)):
            if t <= self.breakpoints[j + 1]:
                return j
        return len(self.pieces) - 1

    def __call__(self, t):
        t = Q(t)
        if not self.pieces:
            self.piece_index(t)
            return Fraction(0)
        return self.pieces[self.piece_index(t)](t)

    def continuity_defects(self) -> list:
        """Breakpoints where adjacent pieces disagree (empty when continuous)."""
        return [
            t
            for t, p, q in zip(self.breakpoints[1:-1], self.pieces, self.pieces[1:])
            if p(t) != q(t)
        ]


def integrate(f: PiecewisePolynomial, a, b) -> Fraction:
    """Exact definite integral of f over [a, b]."""
    a, b = Q(a), Q(b)
    if a > b:
        return -integrate(f, b, a)
    lo, hi = f.domain
    if a < lo or b > hi:
        raise OutOfDomainError(f"[{a}, {b}] not inside [{lo}, {hi}]")
    total = Fraction(0)
    for j, p in enumerate(f.pieces):
        l, r = max(a, f.breakpoints[j]), min(b, f.breakpoints[j + 1])
        if l < r:
            F = p.antiderivative()
            total += F(r) - F(l)
    return total


__all__ = [
    "Q", "qvec", "dot", "HalfSpace", "Polytope", "Polynomial", "PiecewisePolynomial",
    "vertices", "volume", "barycenter", "lattice_points", "intersect", "interpolate_piece",
    "integrate", "triangulate", "convex_hull_halfspaces", "solve", "rank", "nullspace", "det",
]
