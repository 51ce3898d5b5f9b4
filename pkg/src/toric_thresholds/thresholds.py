"""Log canonical threshold alpha(L) and stability threshold delta(L).

Both are computed twice along independent routes: through lct(D_u) at the
vertices / barycenter of P, and as minima over the rays of A(v_i)/T(v_i)
and A(v_i)/S(v_i).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import ratgeom as rg
from .errors import CertificateViolation
from .invariants import S_of, T_of, lattice_barycenter
from .toricvar import ToricDivisor, divisor_Du
from .valuation import log_discrepancy


def lct_Du(D: ToricDivisor, u):
    """lct(D_u) = min_i 1/(<u, v_i> + b_i); math.inf when D_u = 0."""
    coeffs = divisor_Du(D, u)
    pos = [c for c in coeffs if c > 0]
    if not pos:
        return math.inf
    return 1 / max(pos)


def _argmin_rays(denoms) -> tuple[Fraction, tuple]:
    top = max(denoms)
    return 1 / top, tuple(i for i, c in enumerate(denoms) if c == top)


@dataclass(frozen=True)
class AlphaResult:
    value: Fraction
    witness_vertex: tuple
    witness_ray: int
    per_vertex_lct: tuple  # ((vertex, lct), ...)


@dataclass(frozen=True)
class DeltaResult:
    value: Fraction
    barycenter: tuple
    rays: tuple  # all ray indices attaining the minimum


def alpha(D: ToricDivisor) -> AlphaResult:
    D.require_ample()
    table = []
    best = None
    for u in D.polytope.vertices:
        coeffs = divisor_Du(D, u)
        val = lct_Du(D, u)
        table.append((u, val))
        i = max(range(len(coeffs)), key=lambda j: (coeffs[j], -j))
        if best is None or val < best[0]:
            best = (val, u, i)
    return AlphaResult(best[0], best[1], best[2], tuple(table))


def delta(D: ToricDivisor) -> DeltaResult:
    D.require_ample()
    ubar = rg.barycenter(D.polytope)
    value, rays = _argmin_rays(divisor_Du(D, ubar))
    return DeltaResult(value, ubar, rays)


def alpha_via_rays(D: ToricDivisor) -> Fraction:
    """min_i A(v_i) / T(v_i)."""
    return min(log_discrepancy(D.fan, v) / T_of(D, v) for v in D.fan.rays)


def delta_via_rays(D: ToricDivisor) -> Fraction:
    """min_i A(v_i) / S(v_i)."""
    return min(log_discrepancy(D.fan, v) / S_of(D, v) for v in D.fan.rays)


def toric_alpha_m(D: ToricDivisor, m: int) -> Fraction:
    """min of lct(D_u) over u in P ∩ m^-1 M.

    lct(D_u) is the reciprocal of a convex piecewise-linear function of u, so
    the minimum over all lattice points equals the minimum over the vertices
    of their convex hull.
    """
    D.require_ample()
    return min(lct_Du(D, tuple(Fraction(x, m) for x in w)) for w in rg.lattice_points(D.polytope, m))


def toric_delta_m(D: ToricDivisor, m: int) -> Fraction:
    """min_i 1/(<ubar_m, v_i> + b_i), ubar_m the barycenter of P ∩ m^-1 M."""
    D.require_ample()
    return _argmin_rays(divisor_Du(D, lattice_barycenter(D, m)))[0]


@dataclass(frozen=True)
class Certificate:
    name: str
    lhs: Fraction
    rhs: Fraction
    relation: str  # "<=", "=="

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs if self.relation == "==" else self.lhs <= self.rhs


def certify_inequalities(D: ToricDivisor, a: Fraction, d: Fraction, valuations=(), raise_on_failure=True):
    """Exact checks of the threshold and S/T inequalities.

    Checked: alpha <= delta <= (n+1) alpha, (n+1)/n alpha <= delta (ample L),
    and T/(n+1) <= S <= n/(n+1) T for every ray and every extra valuation.
    """
    n = D.rank
    certs = [
        Certificate("alpha <= delta", a, d, "<="),
        Certificate("delta <= (n+1) alpha", d, (n + 1) * a, "<="),
        Certificate("(n+1)/n alpha <= delta", Fraction(n + 1, n) * a, d, "<="),
    ]
    for v in list(D.fan.rays) + [rg.qvec(v) for v in valuations]:
        S, T = S_of(D, v), T_of(D, v)
        tag = "(" + ",".join(str(x) for x in v) + ")"
        certs.append(Certificate(f"T/(n+1) <= S at v={tag}", T / (n + 1), S, "<="))
        certs.append(Certificate(f"S <= n/(n+1) T at v={tag}", S, Fraction(n, n + 1) * T, "<="))
    bad = [c for c in certs if not c.passed]
    if bad and raise_on_failure:
        raise CertificateViolation(
            "; ".join(f"{c.name}: lhs={c.lhs}, rhs={c.rhs}" for c in bad)
        )
    return certs


@dataclass(frozen=True)
class ThresholdReport:
    alpha: Fraction
    delta: Fraction
    alpha_witness: tuple  # (vertex, ray index)
    delta_rays: tuple
    barycenter: tuple
    per_vertex_lct: tuple
    certificates: tuple = field(default=())


def threshold_report(D: ToricDivisor, valuations=()) -> ThresholdReport:
    a = alpha(D)
    d = delta(D)
    certs = list(certify_inequalities(D, a.value, d.value, valuations))
    certs.append(Certificate("alpha == min_i A(v_i)/T(v_i)", a.value, alpha_via_rays(D), "=="))
    certs.append(Certificate("delta == min_i A(v_i)/S(v_i)", d.value, delta_via_rays(D), "=="))
    for c in certs[-2:]:
        if not c.passed:
            raise CertificateViolation(f"{c.name}: {c.lhs} != {c.rhs}")
    return ThresholdReport(
        alpha=a.value,
        delta=d.value,
        alpha_witness=(a.witness_vertex, a.witness_ray),
        delta_rays=d.rays,
        barycenter=d.barycenter,
        per_vertex_lct=a.per_vertex_lct,
        certificates=tuple(certs),
    )
