import random
from fractions import Fraction as F
from math import factorial, gcd

import pytest
from hypothesis import given, settings, strategies as st

from toric_thresholds import ratgeom as rg
from toric_thresholds.errors import (
    NotInPolytopeError,
    NotInteriorToMaximalConeError,
    NotQGorensteinError,
    TrivialValuationError,
)
from toric_thresholds.samples import random_instances, random_interior_valuation
from toric_thresholds.toricvar import Fan
from toric_thresholds.valuation import (
    dual_cone_count,
    log_discrepancy,
    is_q_gorenstein,
    normalized_volume,
    toric_valuation,
    value_on_Du,
    valuation_volume,
)


SUITE = random_instances(21, 8) + random_instances(22, 3, dim=3, box=2, npts=5)


def test_log_discrepancy_examples(p2, p112, p3):
    for fan in (p2, p112, p3):
        assert all(log_discrepancy(fan, r) == 1 for r in fan.rays)
    assert log_discrepancy(p2, (1, 2)) == 3
    assert log_discrepancy(p2, (-1, 0)) == 2  # -e1 = v3 + e2 in cone(e2, v3)
    assert log_discrepancy(p2, (0, 0)) == 0
    with pytest.raises(TrivialValuationError):
        log_discrepancy(p2, (0, 0), strict_trivial=True)


def test_log_discrepancy_singular_cone(p112):
    # cone(e2, (-1,-2)) is singular of index 2: a = (-3, 1) solves <a, e2> = 1 and <a, (-1,-2)> = 1
    assert log_discrepancy(p112, (-1, -1)) == 2
    assert log_discrepancy(p112, (-1, 0)) == 3


def test_value_on_Du_examples(p2_O1):
    assert value_on_Du(p2_O1, (1, 0), (1, 0)) == 1
    ubar = rg.barycenter(p2_O1.polytope)
    assert ubar == (F(1, 3), F(1, 3))
    assert value_on_Du(p2_O1, (-1, -1), ubar) == F(1, 3)
    assert value_on_Du(p2_O1, (0, 0), (0, 1)) == 0
    with pytest.raises(NotInPolytopeError):
        value_on_Du(p2_O1, (1, 0), (2, 0))


def test_valuation_volume_examples(p2, p3):
    assert valuation_volume(p2, (1, 1)) == 1
    assert valuation_volume(p2, (1, 2)) == F(1, 2)
    assert valuation_volume(p3, (1, 1, 1)) == 1
    assert normalized_volume(p2, (1, 1)) == 4
    assert normalized_volume(p2, (1, 2)) == F(9, 2)
    assert normalized_volume(p2, (2, 2)) == 4


def test_valuation_volume_singular_cone(p112):
    v = (-1, -1)  # = e2 + (-1,-2), interior to the index-2 cone
    assert valuation_volume(p112, v) == 1
    assert normalized_volume(p112, v) == 4
    ratio = F(dual_cone_count(p112, v, 200) * 2, 200**2)
    assert abs(ratio - 1) < F(2, 100)


def test_valuation_volume_requires_interior(p2):
    for v in [(1, 0), (0, 0), (-1, -1)]:
        with pytest.raises(NotInteriorToMaximalConeError):
            valuation_volume(p2, v)


def test_q_gorenstein_detection(p2, p112):
    assert is_q_gorenstein(p2) and is_q_gorenstein(p112)
    # random rank-3 hulls often have non-simplicial normal fans on which K is not Q-Cartier
    raw = random_instances(22, 12, dim=3, box=2, npts=5, q_gorenstein=False)
    assert any(not is_q_gorenstein(D.fan) for D in raw)
    for D in raw:
        if not is_q_gorenstein(D.fan):
            with pytest.raises(NotQGorensteinError):
                log_discrepancy(D.fan, D.fan.rays[0])


def test_toric_valuation_records_cone(p2):
    val = toric_valuation(p2, (1, 2))
    assert p2.cone_contains(val.containing_cone, val.vector, strict=True)
    assert not val.is_trivial and toric_valuation(p2, (0, 0)).is_trivial


# -- lattice-count oracle ------------------------------------------------------

SMOOTH_CONES = [
    Fan(2, ((1, 0), (0, 1)), ((0, 1),)),
    Fan(2, ((1, 0), (1, 1)), ((0, 1),)),
    Fan(2, ((0, 1), (-1, -1)), ((0, 1),)),
    Fan(2, ((2, 1), (1, 1)), ((0, 1),)),
]


@pytest.mark.parametrize("cone", SMOOTH_CONES, ids=lambda f: str(f.rays))
def test_volume_matches_lattice_count(cone):
    rng = random.Random(hash(cone.rays) & 0xFFFF)
    lam = 100
    done = 0
    while done < 4:
        # the leading correction is about (a + b - 1) / lam, so keep weights small
        a, b = rng.randint(1, 3), rng.randint(1, 3)
        if gcd(a, b) != 1:
            continue  # a non-primitive v only sees level lam / gcd
        done += 1
        v = tuple(a * x + b * y for x, y in zip(*cone.rays))
        vol = valuation_volume(cone, v)
        assert vol == F(1, a * b)  # monomial weights in the ray basis
        ratio = F(dual_cone_count(cone, v, lam) * factorial(2), lam**2)
        assert abs(ratio - vol) <= F(5, 100) * vol


def test_volume_matches_lattice_count_rank3(p3):
    v = (1, 2, 1)
    lam = 40
    vol = valuation_volume(p3, v)
    assert vol == F(1, 2)
    ratio = F(dual_cone_count(p3, v, lam) * factorial(3), lam**3)
    # the count is a degree-3 quasi-polynomial in lam; at 40 lower-order terms are about 10%
    assert abs(ratio - vol) < F(15, 100) * vol
    assert abs(F(dual_cone_count(p3, v, 120) * 6, 120**3) - vol) < F(5, 100) * vol


# -- properties ------------------------------------------------------------------

positive_t = st.fractions(F(1, 20), 20).filter(lambda t: t > 0)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SUITE), st.integers(0, 10**6), positive_t)
def test_homogeneity(D, seed, t):
    fan = D.fan
    v = random_interior_valuation(random.Random(seed), fan)
    tv = rg.scale(t, v)
    n = fan.rank
    assert log_discrepancy(fan, tv) == t * log_discrepancy(fan, v)
    assert valuation_volume(fan, tv) == t ** (-n) * valuation_volume(fan, v)
    assert normalized_volume(fan, tv) == normalized_volume(fan, v)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SUITE), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_log_discrepancy_positive(D, coords):
    v = tuple(coords[: D.rank])
    if not any(v):
        return
    assert log_discrepancy(D.fan, v) > 0


@pytest.mark.parametrize("D", SUITE, ids=lambda D: f"rank{D.rank}-{D.fan.n_rays}rays")
def test_value_on_Du_nonnegative_on_vertices(D):
    for u in D.polytope.vertices:
        vals = [value_on_Du(D, v, u) for v in D.fan.rays]
        assert min(vals) >= 0
        # the cone dual to u's face has every ray vanishing at u
        assert sum(1 for x in vals if x == 0) >= D.rank
