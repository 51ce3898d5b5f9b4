"""K-stability of toric Q-Fano varieties."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ratgeom as rg
from .errors import CertificateViolation, NotQFanoError
from .invariants import volume_of_line_bundle
from .thresholds import alpha, delta
from .toricvar import Fan, ToricDivisor, anticanonical, is_q_fano
from .valuation import normalized_volume


def _fano_polytope(fan: Fan) -> ToricDivisor:
    check = is_q_fano(fan)
    if not check:
        raise NotQFanoError(check.reason)
    return anticanonical(fan)


def anticanonical_barycenter(fan: Fan) -> tuple:
    return rg.barycenter(_fano_polytope(fan).polytope)


def k_semistable(fan: Fan) -> bool:
    """K-semistable iff the barycenter of P_{-K} is the origin."""
    return not any(anticanonical_barycenter(fan))


def delta_fano(fan: Fan) -> tuple[Fraction, Fraction | None]:
    """(delta(-K), c): delta = 1 at zero barycenter, else c/(1+c) with
    c the largest scalar keeping -c * barycenter inside P_{-K}."""
    ubar = anticanonical_barycenter(fan)
    if not any(ubar):
        return Fraction(1), None
    pos = [rg.dot(ubar, v) for v in fan.rays if rg.dot(ubar, v) > 0]
    if not pos:
        raise CertificateViolation("nonzero barycenter pairs nonpositively with every ray")
    c = 1 / max(pos)
    return c / (1 + c), c


def uniform_k_stable(fan: Fan) -> bool:
    d, _ = delta_fano(fan)
    if d > 1:
        raise CertificateViolation(f"toric Q-Fano with delta(-K) = {d} > 1")
    return d > 1


@dataclass(frozen=True)
class AlphaCriterion:
    alpha: Fraction
    threshold: Fraction  # n/(n+1)
    fires_semistable: bool
    fires_uniform: bool
    k_semistable: bool
    uniformly_k_stable: bool

    @property
    def holds(self) -> bool:
        return (not self.fires_semistable or self.k_semistable) and (
            not self.fires_uniform or self.uniformly_k_stable
        )


def alpha_criterion(fan: Fan) -> AlphaCriterion:
    """alpha(-K) >= n/(n+1) should force semistability (> forces uniform stability)."""
    K = _fano_polytope(fan)
    a = alpha(K).value
    thr = Fraction(fan.rank, fan.rank + 1)
    rec = AlphaCriterion(a, thr, a >= thr, a > thr, k_semistable(fan), uniform_k_stable(fan))
    if not rec.holds:
        raise CertificateViolation(f"alpha criterion fired (alpha = {a}) but its conclusion fails")
    return rec


@dataclass(frozen=True)
class TheoremDCheck:
    valuation: tuple
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs


def theorem_d_bound(D: ToricDivisor, v) -> TheoremDCheck:
    """vol(L) <= ((n+1)/n)^n delta(L)^-n vol^(v) for v centered at a torus-fixed point."""
    n = D.rank
    vec = rg.qvec(v)
    lhs = volume_of_line_bundle(D)
    rhs = Fraction(n + 1, n) ** n * delta(D).value ** (-n) * normalized_volume(D.fan, vec)
    return TheoremDCheck(vec, lhs, rhs)


def default_interior_valuations(fan: Fan) -> list[tuple]:
    """Sum of the rays of each maximal cone: one interior point per cone."""
    out = []
    for k in range(len(fan.max_cones)):
        out.append(tuple(Fraction(sum(r[j] for r in fan.cone_rays(k))) for j in range(fan.rank)))
    return out


@dataclass(frozen=True)
class KStabilityReport:
    is_q_fano: bool
    barycenter: tuple
    k_semistable: bool
    uniformly_k_stable: bool
    delta: Fraction
    c_value: Fraction | None
    alpha: Fraction
    alpha_criterion_fires: bool
    theorem_d_checks: tuple


def kstability_report(fan: Fan, valuations=None) -> KStabilityReport:
    K = _fano_polytope(fan)
    ubar = anticanonical_barycenter(fan)
    semi = k_semistable(fan)
    d, c = delta_fano(fan)
    d_thresh = delta(K).value
    if d != d_thresh:
        raise CertificateViolation(f"delta via c/(1+c) = {d} but via barycenter lct = {d_thresh}")
    if semi != (d >= 1) or semi != (d_thresh == 1):
        raise CertificateViolation("barycenter, delta_fano and delta(-K) disagree on semistability")
    crit = alpha_criterion(fan)
    vals = default_interior_valuations(fan) if valuations is None else valuations
    checks = tuple(theorem_d_bound(K, v) for v in vals)
    failed = [ch for ch in checks if not ch.passed]
    if failed:
        raise CertificateViolation(f"volume bound fails at {failed[0].valuation}")
    return KStabilityReport(
        is_q_fano=True,
        barycenter=ubar,
        k_semistable=semi,
        uniformly_k_stable=uniform_k_stable(fan),
        delta=d,
        c_value=c,
        alpha=crit.alpha,
        alpha_criterion_fires=crit.fires_semistable,
        theorem_d_checks=checks,
    )
