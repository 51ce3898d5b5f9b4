import random
from fractions import Fraction as F

import pytest

from toric_thresholds.errors import NotInteriorToMaximalConeError, NotQFanoError
from toric_thresholds.kstability import (
    alpha_criterion,
    anticanonical_barycenter,
    default_interior_valuations,
    delta_fano,
    k_semistable,
    kstability_report,
    theorem_d_bound,
    uniform_k_stable,
)
from toric_thresholds.samples import random_fano_fan, random_instances, random_interior_valuation
from toric_thresholds.thresholds import delta
from toric_thresholds.toricvar import ToricDivisor, anticanonical, product_fan, validate_fan

_rng = random.Random(51)
FANO_SUITE = (
    [random_fano_fan(_rng, 2) for _ in range(10)]
    + [random_fano_fan(_rng, 2, symmetric=True, nrays=3) for _ in range(4)]
    + [random_fano_fan(_rng, 3) for _ in range(3)]
    + [random_fano_fan(_rng, 3, symmetric=True, nrays=3)]
)


def test_suite_covers_both_branches():
    flags = {k_semistable(f) for f in FANO_SUITE}
    assert flags == {True, False}


def fan_id(fan):
    return f"rank{fan.rank}-" + "_".join(",".join(map(str, r)) for r in fan.rays)


def test_k_semistable_examples(p2, p1xp1, p112):
    assert k_semistable(p2)
    assert k_semistable(p1xp1)
    assert not k_semistable(p112)
    assert anticanonical_barycenter(p112) == (F(1, 3), F(-1, 3))


def test_delta_fano_examples(p2, p112, p1xp1):
    assert delta_fano(p2) == (1, None)
    assert delta_fano(p112) == (F(3, 4), 3)
    assert delta_fano(p1xp1) == (1, None)


def test_uniform_k_stability_never_holds(p2, p112, p1xp1, p3):
    for fan in (p2, p112, p1xp1, p3):
        assert uniform_k_stable(fan) is False


def test_alpha_criterion_examples(p1, p2, p112):
    c1 = alpha_criterion(p1)
    assert c1.alpha == F(1, 2) and c1.fires_semistable and not c1.fires_uniform
    assert c1.k_semistable and c1.holds
    c2 = alpha_criterion(p2)
    assert c2.alpha == F(1, 3) and not c2.fires_semistable and c2.holds
    c3 = alpha_criterion(p112)
    assert c3.alpha <= F(3, 4) < 1 and not c3.fires_semistable


def test_theorem_d_examples(p2_K, p3, p2_O1):
    ch = theorem_d_bound(p2_K, (1, 1))
    assert (ch.lhs, ch.rhs) == (9, 9) and ch.passed and ch.equality
    ch3 = theorem_d_bound(anticanonical(p3), (1, 1, 1))
    assert (ch3.lhs, ch3.rhs) == (64, 64) and ch3.equality
    ch1 = theorem_d_bound(p2_O1, (1, 2))
    assert (ch1.lhs, ch1.rhs) == (1, F(9, 8)) and ch1.passed and not ch1.equality


def test_theorem_d_requires_interior(p2_K):
    with pytest.raises(NotInteriorToMaximalConeError):
        theorem_d_bound(p2_K, (1, 0))


def test_not_q_fano(f2):
    for fn in (k_semistable, delta_fano, uniform_k_stable, alpha_criterion, kstability_report):
        with pytest.raises(NotQFanoError):
            fn(f2)


def test_report_p1xp1_p3(p1xp1, p3):
    rep = kstability_report(p1xp1)
    assert rep.k_semistable and rep.delta == 1 and rep.alpha == F(1, 2) and rep.c_value is None
    rep3 = kstability_report(p3)
    assert rep3.k_semistable and rep3.alpha == F(1, 4)
    assert all(ch.equality for ch in rep3.theorem_d_checks)


def test_product_of_semistable_is_semistable(p1, p2):
    assert k_semistable(product_fan(p1, p2))


# -- properties over a random Fano suite ----------------------------------------------

@pytest.mark.parametrize("fan", FANO_SUITE, ids=fan_id)
def test_triple_agreement(fan):
    assert validate_fan(fan) == []
    K = anticanonical(fan)
    d_fano, c = delta_fano(fan)
    d = delta(K).value
    assert d_fano == d
    semi = k_semistable(fan)
    assert semi == (d_fano == 1) == (d == 1) == (c is None)
    assert not uniform_k_stable(fan)
    assert alpha_criterion(fan).holds
    rep = kstability_report(fan)
    assert rep.delta == d and all(ch.passed for ch in rep.theorem_d_checks)


@pytest.mark.parametrize("D", random_instances(52, 10) + random_instances(53, 2, dim=3, box=2, npts=6),
                         ids=lambda D: f"rank{D.rank}-{D.fan.n_rays}rays")
def test_theorem_d_on_random_ample(D):
    rng = random.Random(D.fan.n_rays)
    vals = default_interior_valuations(D.fan) + [random_interior_valuation(rng, D.fan) for _ in range(5)]
    for v in vals:
        ch = theorem_d_bound(D, v)
        assert ch.passed, (v, ch.lhs, ch.rhs)


def test_theorem_d_scale_invariant_in_v(p2_O1):
    a = theorem_d_bound(p2_O1, (1, 2))
    b = theorem_d_bound(p2_O1, (F(3, 7), F(6, 7)))
    assert a.rhs == b.rhs


def test_theorem_d_homogeneous_in_L(p2):
    # both sides scale by r^n
    for r in (1, 2, 3):
        ch = theorem_d_bound(ToricDivisor(p2, (0, 0, r)), (1, 1))
        assert ch.lhs == r**2 and ch.rhs == F(9, 4) * F(r, 3) ** 2 * 4
