"""Seeded random instances: ample divisors from random lattice polytopes."""

from __future__ import annotations

import random
from fractions import Fraction

from . import ratgeom as rg
from .toricvar import Fan, ToricDivisor, normal_fan
from .valuation import is_q_gorenstein


def random_polytope_divisor(rng: random.Random, dim: int = 2, box: int = 4, npts: int = 6,
                            rational: bool = True) -> ToricDivisor:
    """Normal-fan divisor of the hull of random lattice points.

    With ``rational`` the polytope is sometimes shrunk by 1/2 so that some
    vertices leave the lattice.
    """
    while True:
        pts = {tuple(rng.randint(-box, box) for _ in range(dim)) for _ in range(npts)}
        if len(pts) <= dim or rg.affine_dim(list(pts)) < dim:
            continue
        P = rg.Polytope(tuple(rg.convex_hull_halfspaces(list(pts))), dim)
        _, D = normal_fan(P)
        if rational and rng.random() < 0.5:
            D = D.scaled(Fraction(1, 2))
        return D


def random_fano_fan(rng: random.Random, dim: int = 2, box: int = 2, nrays: int = 6,
                    symmetric: bool = False) -> Fan:
    """Normal fan of {u : <u, a> >= -1} for random primitive a; -K is then ample.

    With ``symmetric`` every a comes with -a, so P_{-K} is centrally symmetric.
    """
    while True:
        vecs = [tuple(rng.randint(-box, box) for _ in range(dim)) for _ in range(nrays)]
        normals = {rg.primitive(a) for a in vecs if any(a)}
        if symmetric:
            normals |= {tuple(-x for x in a) for a in normals}
        if len(normals) <= dim:
            continue
        P = rg.Polytope(tuple(rg.HalfSpace(a, 1) for a in sorted(normals)), dim)
        try:
            fan, _ = normal_fan(P)
        except (rg.UnboundedError, rg.EmptyError, rg.ZeroVolumeError):
            continue
        return fan


def random_interior_valuation(rng: random.Random, fan: Fan, cone: int | None = None,
                              den: int = 5) -> tuple:
    """A random rational point interior to a maximal cone (positive combination of all its rays)."""
    k = rng.randrange(len(fan.max_cones)) if cone is None else cone
    coeffs = [Fraction(rng.randint(1, 3 * den), den) for _ in fan.max_cones[k]]
    return tuple(sum((c * r[j] for c, r in zip(coeffs, fan.cone_rays(k))), Fraction(0))
                 for j in range(fan.rank))


def random_instances(seed: int, count: int, dim: int = 2, q_gorenstein: bool = True, **kw) -> list[ToricDivisor]:
    """``count`` seeded instances; by default only fans on which K is Q-Cartier are kept."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        D = random_polytope_divisor(rng, dim, **kw)
        if not q_gorenstein or is_q_gorenstein(D.fan):
            out.append(D)
    return out
