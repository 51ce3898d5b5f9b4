"""Toric valuations v in N_Q and their intrinsic invariants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import ratgeom as rg
from .errors import (
    NotInteriorToMaximalConeError,
    NotQCartierError,
    NotQGorensteinError,
    TrivialValuationError,
)
from .toricvar import Fan, ToricDivisor, anticanonical, cartier_data, divisor_Du, support_function


@dataclass(frozen=True)
class ToricValuation:
    vector: tuple
    containing_cone: int

    @property
    def is_trivial(self) -> bool:
        return not any(self.vector)


def toric_valuation(fan: Fan, vector) -> ToricValuation:
    v = rg.qvec(vector)
    if len(v) != fan.rank:
        raise ValueError(f"valuation has length {len(v)}, lattice rank is {fan.rank}")
    return ToricValuation(v, fan.containing_cone(v))


def as_vector(v) -> tuple:
    return v.vector if isinstance(v, ToricValuation) else rg.qvec(v)


def _as_valuation(fan: Fan, v) -> ToricValuation:
    return v if isinstance(v, ToricValuation) else toric_valuation(fan, v)


def log_discrepancy_forms(fan: Fan) -> tuple:
    """Per maximal cone the linear form a(sigma) with <a(sigma), v_i> = 1 on its rays."""
    try:
        return cartier_data(anticanonical(fan)).b_sigma
    except NotQCartierError as e:
        raise NotQGorensteinError(f"K_X is not Q-Cartier on cone {e.cone_index}") from e


def is_q_gorenstein(fan: Fan) -> bool:
    try:
        log_discrepancy_forms(fan)
    except NotQGorensteinError:
        return False
    return True


def log_discrepancy(fan: Fan, v, strict_trivial: bool = False) -> Fraction:
    """A(v): the function linear on cones with A(v_i) = 1.

    The trivial valuation gets A = 0; pass strict_trivial=True to reject it.
    """
    v = _as_valuation(fan, v)
    if v.is_trivial:
        if strict_trivial:
            raise TrivialValuationError("the trivial valuation has log discrepancy 0")
        return Fraction(0)
    a = log_discrepancy_forms(fan)[v.containing_cone]
    return rg.dot(a, v.vector)


def value_on_Du(D: ToricDivisor, v, u) -> Fraction:
    """v(D_u) = <u, v> - psi(v)."""
    divisor_Du(D, u)  # membership check
    vec = as_vector(v)
    return rg.dot(rg.qvec(u), vec) - support_function(D, vec)


def valuation_volume(fan: Fan, v) -> Fraction:
    """vol(v) = n! * vol{u in sigma^dual : <u, v> <= 1} for v interior to sigma."""
    vec = as_vector(v)
    k = fan.interior_cone(vec)
    if k is None:
        raise NotInteriorToMaximalConeError(f"{vec} is not interior to a maximal cone")
    w, scale = rg.integral_multiple(vec)
    hs = [rg.HalfSpace(r, 0) for r in fan.cone_rays(k)]
    hs.append(rg.HalfSpace(tuple(-x for x in w), scale))  # <u, w> <= scale
    region = rg.Polytope(tuple(hs), fan.rank)
    return factorial(fan.rank) * rg.volume(region)


def normalized_volume(fan: Fan, v) -> Fraction:
    return log_discrepancy(fan, v) ** fan.rank * valuation_volume(fan, v)


def dual_cone_count(fan: Fan, v, level: int) -> int:
    """#{u in sigma^dual ∩ M : <u, v> < level}; lattice-count oracle for vol(v)."""
    vec = as_vector(v)
    k = fan.interior_cone(vec)
    if k is None:
        raise NotInteriorToMaximalConeError(f"{vec} is not interior to a maximal cone")
    w, scale = rg.integral_multiple(vec)
    hs = [rg.HalfSpace(r, 0) for r in fan.cone_rays(k)]
    # <u, w> <= level*scale - 1 for strict inequality on the integer side
    hs.append(rg.HalfSpace(tuple(-x for x in w), level * scale - 1))
    return len(rg.lattice_points(rg.Polytope(tuple(hs), fan.rank), 1))
