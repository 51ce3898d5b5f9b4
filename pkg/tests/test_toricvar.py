import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from toric_thresholds import ratgeom as rg
from toric_thresholds.errors import NotAmpleError, NotInPolytopeError, NotQCartierError
from toric_thresholds.samples import random_instances, random_interior_valuation
from toric_thresholds.toricvar import (
    Fan,
    ToricDivisor,
    anticanonical,
    cartier_data,
    divisor_Du,
    is_ample,
    is_q_fano,
    normal_fan,
    polytope_of_divisor,
    support_function,
    validate_fan,
)

from oracles import subsystem_vertices

FAN_SUITE = random_instances(11, 12) + random_instances(12, 3, dim=3, box=2, npts=8)


def kinds(fan):
    return [d.kind for d in validate_fan(fan)]


def test_p2_fan_valid(p2):
    assert validate_fan(p2) == []


def test_nonprimitive_ray():
    fan = Fan(2, ((2, 0), (0, 1), (-1, -1)), ((1, 2), (0, 2), (0, 1)))
    assert kinds(fan) == ["NonPrimitiveRay"]


def test_missing_cone(p2):
    fan = Fan(2, p2.rays, p2.max_cones[:2])
    assert set(kinds(fan)) == {"WallCountViolation"}


def test_overlapping_cones():
    # P^2 fan plus a subdivision of its first quadrant laid on top
    fan = Fan(2, ((1, 0), (0, 1), (-1, -1), (1, 1)), ((1, 2), (0, 2), (0, 3), (3, 1), (0, 1)))
    assert "OverlappingCones" in kinds(fan)


def test_non_strictly_convex_cone():
    fan = Fan(2, ((1, 0), (-1, 0), (0, 1), (0, -1)), ((0, 1, 2), (0, 1, 3)))
    assert "NonMaximalCone" in kinds(fan)


def test_lower_dimensional_cone():
    fan = Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0,), (1, 2), (0, 2)))
    assert "NonMaximalCone" in kinds(fan)


def test_rank3_fans_valid(p3, p1xp1):
    assert validate_fan(p3) == [] and validate_fan(p1xp1) == []


def test_polytope_of_divisor(p2, p1):
    assert polytope_of_divisor(ToricDivisor(p2, (0, 0, 1))).vertices == ((0, 0), (0, 1), (1, 0))
    K = polytope_of_divisor(ToricDivisor(p2, (1, 1, 1)))
    assert list(K.vertices) == subsystem_vertices(p2.rays, (1, 1, 1)) == [(-1, -1), (-1, 2), (2, -1)]
    assert polytope_of_divisor(ToricDivisor(p1, (0, 2))).vertices == ((0,), (2,))
    with pytest.raises(rg.EmptyError):
        polytope_of_divisor(ToricDivisor(p2, (-1, 0, 0)))


def test_support_function(p2_O1, p2):
    assert support_function(p2_O1, (-1, -1)) == -1  # min{0, -1, -1}
    assert support_function(p2_O1, (1, 1)) == 0
    assert support_function(p2_O1, (0, 0)) == 0
    with pytest.raises(NotAmpleError):
        support_function(ToricDivisor(p2, (0, 0, 0)), (1, 0))


def test_cartier_data_p2(p2_O1):
    cd = cartier_data(p2_O1)
    cones = p2_O1.fan.max_cones
    by_cone = dict(zip(cones, cd.b_sigma))
    assert by_cone[(0, 1)] == (0, 0)
    # <b, e2> = 0 and <b, (-1,-1)> = b_3 = 1
    assert by_cone[(1, 2)] == (-1, 0)


def test_not_q_cartier():
    # the normal fan of the octahedron has six non-simplicial four-ray cones;
    # a single nonzero coefficient cannot be linear on the cones containing that ray
    P = rg.Polytope(tuple(rg.convex_hull_halfspaces(
        [(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])), 3)
    fan, _ = normal_fan(P)
    assert all(len(c) == 4 for c in fan.max_cones)
    bad = ToricDivisor(fan, (1,) + (0,) * (fan.n_rays - 1))
    with pytest.raises(NotQCartierError):
        cartier_data(bad)


def test_is_ample_examples(p2, p1xp1, p1):
    assert is_ample(ToricDivisor(p2, (0, 0, 1)))
    assert not is_ample(ToricDivisor(p2, (0, 0, 0)))
    sq = ToricDivisor(p1xp1, (1, 1, 1, 1))
    assert is_ample(sq) and len(sq.polytope.vertices) == 4
    # O(1,0) on P1xP1 is nef but not ample
    assert not is_ample(ToricDivisor(p1xp1, (1, 0, 0, 0)))


def test_anticanonical(p2, p1, p112):
    assert anticanonical(p2).coeffs == (1, 1, 1)
    assert anticanonical(p1).coeffs == (1, 1)
    assert anticanonical(p112).coeffs == (1, 1, 1)


def test_is_q_fano(p2, p112, f2):
    assert is_q_fano(p2)
    assert is_q_fano(p112)
    assert anticanonical(p112).polytope.vertices == ((-1, -1), (-1, 1), (3, -1))
    check = is_q_fano(f2)
    assert not check and "not ample" in check.reason


def test_divisor_Du(p2_O1):
    assert divisor_Du(p2_O1, (1, 0)) == (1, 0, 0)
    assert divisor_Du(p2_O1, (0, 0)) == (0, 0, 1)
    assert divisor_Du(p2_O1, (F(1, 3), F(1, 3))) == (F(1, 3), F(1, 3), F(1, 3))
    with pytest.raises(NotInPolytopeError):
        divisor_Du(p2_O1, (1, 1))


# -- invariants over a randomized fan suite -----------------------------------

@pytest.mark.parametrize("D", FAN_SUITE, ids=lambda D: f"rank{D.rank}-{D.fan.n_rays}rays")
def test_random_fans_are_complete_and_ample(D):
    assert validate_fan(D.fan) == []
    assert is_ample(D)


@pytest.mark.parametrize("D", FAN_SUITE, ids=lambda D: f"rank{D.rank}-{D.fan.n_rays}rays")
def test_support_function_on_rays_and_cones(D):
    for v, b in zip(D.fan.rays, D.coeffs):
        assert support_function(D, v) == -b
    cd = cartier_data(D)
    rng = random.Random(D.fan.n_rays)
    for k in range(len(D.fan.max_cones)):
        for v in D.fan.cone_rays(k) + [random_interior_valuation(rng, D.fan, k) for _ in range(3)]:
            assert support_function(D, v) == -rg.dot(cd.b_sigma[k], v)
    assert set(D.polytope.vertices) == {tuple(-x for x in b) for b in cd.b_sigma}


@pytest.mark.parametrize("D", FAN_SUITE[:6], ids=lambda D: f"rank{D.rank}-{D.fan.n_rays}rays")
def test_Du_nonnegative_on_lattice_points(D):
    m_max = 10 if D.rank == 2 else 3
    for m in range(1, m_max + 1):
        for w in rg.lattice_points(D.polytope, m):
            assert min(divisor_Du(D, tuple(F(x, m) for x in w))) >= 0


def test_p2_anticanonical_barycenter(p2):
    assert rg.barycenter(anticanonical(p2).polytope) == (0, 0)


def test_normal_fan_round_trip(p2_K):
    fan, D = normal_fan(p2_K.polytope)
    assert validate_fan(fan) == [] and is_ample(D)
    assert set(fan.rays) == set(p2_K.fan.rays)
    assert D.polytope.vertices == p2_K.polytope.vertices


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=3, max_size=7))
def test_normal_fan_of_random_polygon_is_ample(pts):
    if rg.affine_dim(list(set(pts))) < 2:
        return
    P = rg.Polytope(tuple(rg.convex_hull_halfspaces(pts)), 2)
    fan, D = normal_fan(P)
    assert validate_fan(fan) == []
    assert is_ample(D)
    assert D.polytope.vertices == P.vertices
