"""Filtration invariants of a toric valuation on an ample toric divisor.

For v in N_Q and D ample with polytope P, the jumping numbers of the
filtration F_v on H^0(mD) are <u, v> - m psi(v) for u in mP ∩ M. Everything
else (S, T, S_m, T_m, the measures mu_m, the slice-volume function) is read
off from that description.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import ratgeom as rg
from .errors import InterpolationMismatchError, TrivialValuationError
from .toricvar import ToricDivisor, support_function
from .valuation import as_vector, log_discrepancy


def _nonzero(v) -> tuple:
    vec = as_vector(v)
    if not any(vec):
        raise TrivialValuationError("invariant undefined for the trivial valuation")
    return vec


def barycenter_of_points(points) -> tuple:
    n = len(points[0])
    N = len(points)
    return tuple(Fraction(sum(p[k] for p in points), N) for k in range(n))


def lattice_barycenter(D: ToricDivisor, m: int) -> tuple:
    """Barycenter of P ∩ m^-1 M."""
    pts = rg.lattice_points(D.polytope, m)
    return tuple(x / m for x in barycenter_of_points(pts))


def S_of(D: ToricDivisor, v) -> Fraction:
    """Expected vanishing order: <barycenter(P), v> - psi(v)."""
    D.require_ample()
    vec = _nonzero(v)
    return rg.dot(rg.barycenter(D.polytope), vec) - support_function(D, vec)


def T_of(D: ToricDivisor, v) -> Fraction:
    """Maximal vanishing order: the width of P in direction v."""
    D.require_ample()
    vec = _nonzero(v)
    return max(rg.dot(u, vec) for u in D.polytope.vertices) - support_function(D, vec)


def Sm_of(D: ToricDivisor, v, m: int) -> Fraction:
    D.require_ample()
    vec = _nonzero(v)
    return rg.dot(lattice_barycenter(D, m), vec) - support_function(D, vec)


def Tm_of(D: ToricDivisor, v, m: int) -> Fraction:
    D.require_ample()
    vec = _nonzero(v)
    top = max(rg.dot(u, vec) for u in rg.lattice_points(D.polytope, m))
    return top / m - support_function(D, vec)


@dataclass(frozen=True)
class JumpingSpectrum:
    m: int
    values: tuple  # sorted, with multiplicity

    @property
    def N_m(self) -> int:
        return len(self.values)

    def average(self) -> Fraction:
        """(m N_m)^-1 * sum of jumping numbers, i.e. S_m."""
        return Fraction(sum(self.values), self.m * self.N_m)

    def top(self) -> Fraction:
        """max / m, i.e. T_m."""
        return self.values[-1] / self.m


def jumping_spectrum(D: ToricDivisor, v, m: int) -> JumpingSpectrum:
    D.require_ample()
    vec = as_vector(v)
    shift = m * support_function(D, vec)
    vals = sorted(rg.dot(u, vec) - shift for u in rg.lattice_points(D.polytope, m))
    return JumpingSpectrum(m, tuple(vals))


@dataclass(frozen=True)
class AtomicMeasure:
    atoms: tuple  # ((location, weight), ...) sorted by location

    @property
    def mass(self) -> Fraction:
        return sum((w for _, w in self.atoms), Fraction(0))

    def moment(self, k: int, normalized: bool = True) -> Fraction:
        raw = sum((w * x**k for x, w in self.atoms), Fraction(0))
        return raw / self.mass if normalized else raw


def mu_m(D: ToricDivisor, v, m: int) -> AtomicMeasure:
    """m^-n * sum_j delta at a_{m,j}/m, equal locations merged."""
    spec = jumping_spectrum(D, v, m)
    weight = Fraction(1, m**D.rank)
    counts = Counter(a / m for a in spec.values)
    return AtomicMeasure(tuple((x, c * weight) for x, c in sorted(counts.items())))


def mu_m_unmerged(D: ToricDivisor, v, m: int) -> tuple:
    """One (location, weight) pair per jumping number."""
    spec = jumping_spectrum(D, v, m)
    weight = Fraction(1, m**D.rank)
    return tuple((a / m, weight) for a in spec.values)


@dataclass(frozen=True)
class SliceVolumeFunction:
    """G(t) = vol{u in P : <u, v> - psi(v) >= t}, i.e. vol(L; v >= t) / n!."""

    G: rg.PiecewisePolynomial

    @property
    def T(self) -> Fraction:
        return self.G.breakpoints[-1]

    def __call__(self, t) -> Fraction:
        return self.G(t)

    def density(self) -> tuple:
        """-G' per piece: the density of the limit measure mu_v up to the factor n!."""
        return tuple(
            rg.Polynomial(tuple(-c for c in p.derivative().coeffs)) for p in self.G.pieces
        )

    def moment(self, k: int, normalized: bool = True) -> Fraction:
        """Moment of -G'(t) dt; normalized by the total mass G(0)."""
        tk = rg.Polynomial((0,) * k + (1,))
        raw = Fraction(0)
        for j, dens in enumerate(self.density()):
            F = (tk * dens).antiderivative()
            raw += F(self.G.breakpoints[j + 1]) - F(self.G.breakpoints[j])
        return raw / self.G(0) if normalized else raw


def slice_volume(D: ToricDivisor, v, t) -> Fraction:
    """Exact vol{u in P : <u, v> - psi(v) >= t} by cutting P with a half-space."""
    vec = as_vector(v)
    w, scale = rg.integral_multiple(vec)
    level = Fraction(t) + support_function(D, vec)
    cut = rg.cut(D.polytope, rg.HalfSpace(w, -scale * level))
    if rg.is_empty(cut):
        return Fraction(0)
    return rg.volume(cut)


def slice_volume_function(D: ToricDivisor, v) -> SliceVolumeFunction:
    """Interpolate G exactly between consecutive vertex values of <., v> - psi(v).

    Each piece is fitted through n+1 interior samples and verified at one
    more interior point and at both ends.
    """
    D.require_ample()
    vec = _nonzero(v)
    n = D.rank
    psi = support_function(D, vec)
    bps = sorted({rg.dot(u, vec) - psi for u in D.polytope.vertices})
    pieces = []
    for a, b in zip(bps, bps[1:]):
        h = (b - a) / (n + 2)
        samples = [(a + k * h, slice_volume(D, vec, a + k * h)) for k in range(1, n + 2)]
        p = rg.interpolate_piece(samples, n)
        probe = a + h / 2
        if p(probe) != slice_volume(D, vec, probe):
            raise InterpolationMismatchError(f"slice volume is not polynomial on [{a}, {b}]")
        pieces.append(p)
    G = rg.PiecewisePolynomial(tuple(bps), tuple(pieces))
    for t in bps:
        if G(t) != slice_volume(D, vec, t):
            raise InterpolationMismatchError(f"interpolant disagrees with the slice volume at t = {t}")
    if G.continuity_defects():
        raise InterpolationMismatchError(f"discontinuity at {G.continuity_defects()}")
    return SliceVolumeFunction(G)


def S_via_integral(D: ToricDivisor, v) -> Fraction:
    """S(v) = vol(P)^-1 * integral over [0, T] of G."""
    f = slice_volume_function(D, v)
    return rg.integrate(f.G, 0, f.T) / rg.volume(D.polytope)


def volume_of_line_bundle(D: ToricDivisor) -> Fraction:
    """vol(L) = n! vol(P), the degree of L."""
    return factorial(D.rank) * rg.volume(D.polytope)


@dataclass(frozen=True)
class InvariantBundle:
    vector: tuple
    S: Fraction
    T: Fraction
    S_integral: Fraction
    A: Fraction
    levels: tuple  # ((m, S_m, T_m, N_m), ...)
    G: SliceVolumeFunction


def invariant_bundle(D: ToricDivisor, v, m_values=()) -> InvariantBundle:
    vec = _nonzero(v)
    G = slice_volume_function(D, vec)
    levels = []
    for m in m_values:
        spec = jumping_spectrum(D, vec, m)
        levels.append((m, spec.average(), spec.top(), spec.N_m))
    return InvariantBundle(
        vector=vec,
        S=S_of(D, vec),
        T=T_of(D, vec),
        S_integral=rg.integrate(G.G, 0, G.T) / rg.volume(D.polytope),
        A=log_discrepancy(D.fan, vec),
        levels=tuple(levels),
        G=G,
    )
