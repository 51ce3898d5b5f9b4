"""Exact toric computation of S, T, alpha, delta and K-stability verdicts."""

from .errors import *  # noqa: F401,F403
from .invariants import (
    S_of,
    S_via_integral,
    Sm_of,
    T_of,
    Tm_of,
    jumping_spectrum,
    mu_m,
    slice_volume_function,
)
from .kstability import (
    alpha_criterion,
    delta_fano,
    k_semistable,
    kstability_report,
    theorem_d_bound,
    uniform_k_stable,
)
from .ratgeom import HalfSpace, Polytope, barycenter, lattice_points, vertices, volume
from .thresholds import alpha, delta, lct_Du, threshold_report, toric_alpha_m, toric_delta_m
from .toricvar import (
    Fan,
    ToricDivisor,
    anticanonical,
    cartier_data,
    divisor_Du,
    is_ample,
    is_q_fano,
    polytope_of_divisor,
    support_function,
    validate_fan,
)
from .valuation import log_discrepancy, normalized_volume, toric_valuation, valuation_volume, value_on_Du

__version__ = "0.1.0"
