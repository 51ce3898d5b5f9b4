"""Complete fans, torus-invariant divisors and their polytopes.

Sign conventions: a divisor D = sum b_i D_i has polytope
P_D = {u : <u, v_i> >= -b_i}; on a maximal cone sigma the Cartier datum
b(sigma) satisfies <b(sigma), v_i> = b_i for the rays of sigma, so that the
support function is psi(v) = -<b(sigma), v> there and psi(v_i) = -b_i.
For ample D, psi(v) = min over vertices u of <u, v>, and the vertex of P_D
attached to sigma is -b(sigma).
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Sequence

from . import ratgeom as rg
from .errors import (
    FanValidationError,
    NotAmpleError,
    NotInPolytopeError,
    NotQCartierError,
)


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    where: tuple = ()

    def __str__(self):
        return f"{self.kind}: {self.message}"


def cone_facets(rays: Sequence[tuple], n: int) -> list[tuple[tuple, frozenset]]:
    """Facets of the cone spanned by ``rays``.

    Returns (primitive inward normal, local indices of rays on the facet),
    sorted by normal. Only meaningful for full-dimensional cones.
    """
    out = {}
    for idx in combinations(range(len(rays)), n - 1):
        sub_rows = [rays[i] for i in idx]
        if rg.rank(sub_rows, n) != n - 1:
            continue
        (w,) = rg.nullspace(sub_rows, n)
        w = rg.primitive(rg.integral_multiple(w)[0])
        for s in (1, -1):
            ws = tuple(s * x for x in w)
            vals = [rg.dot(ws, r) for r in rays]
            if all(x >= 0 for x in vals) and any(x > 0 for x in vals):
                out[ws] = frozenset(i for i, x in enumerate(vals) if x == 0)
    return sorted(out.items())


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple
    max_cones: tuple

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        if any(len(r) != self.rank for r in rays):
            raise ValueError("every ray must have length equal to the lattice rank")
        if any(i < 0 or i >= len(rays) for c in cones for i in c):
            raise ValueError("cone refers to a nonexistent ray")

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cone_rays(self, k: int) -> list[tuple]:
        return [self.rays[i] for i in self.max_cones[k]]

    @cached_property
    def facets(self) -> tuple:
        """Per maximal cone: list of (inward normal, frozenset of global ray indices)."""
        out = []
        for k, cone in enumerate(self.max_cones):
            local = cone_facets(self.cone_rays(k), self.rank)
            out.append(tuple((w, frozenset(cone[i] for i in s)) for w, s in local))
        return tuple(out)

    def cone_contains(self, k: int, v, strict: bool = False) -> bool:
        vals = [rg.dot(w, v) for w, _ in self.facets[k]]
        if not vals:
            return False
        return all(x > 0 for x in vals) if strict else all(x >= 0 for x in vals)

    def containing_cone(self, v) -> int:
        for k in range(len(self.max_cones)):
            if self.cone_contains(k, v):
                return k
        raise ValueError(f"{v} lies in no maximal cone; fan is not complete")

    def interior_cone(self, v) -> int | None:
        for k in range(len(self.max_cones)):
            if self.cone_contains(k, v, strict=True):
                return k
        return None


def _separated(a: list, b: list, n: int) -> bool:
    """Is there a hyperplane with the rays of a on one side, the rays of b on the other?"""
    union = a + b
    for idx in combinations(range(len(union)), n - 1):
        sub_rows = [union[i] for i in idx]
        if rg.rank(sub_rows, n) != n - 1:
            continue
        (w,) = rg.nullspace(sub_rows, n)
        for s in (1, -1):
            if all(s * rg.dot(w, r) >= 0 for r in a) and all(s * rg.dot(w, r) <= 0 for r in b):
                return True
    return False


def validate_fan(fan: Fan) -> list[Diagnostic]:
    """Check primitivity, cone shape, wall pairing, connectivity and overlaps.

    Together these certify that the fan is complete. An empty list means valid.
    """
    n = fan.rank
    diags = []
    for i, r in enumerate(fan.rays):
        g = 0
        for x in r:
            g = gcd(g, x)
        if g != 1:
            diags.append(Diagnostic("NonPrimitiveRay", f"ray {i} = {list(r)} is not primitive", (i,)))
    if diags:
        return diags
    if len(set(fan.rays)) != len(fan.rays):
        diags.append(Diagnostic("DuplicateRay", "rays must be distinct"))
    used = {i for c in fan.max_cones for i in c}
    for i in range(fan.n_rays):
        if i not in used:
            diags.append(Diagnostic("UnusedRay", f"ray {i} belongs to no maximal cone", (i,)))
    if not fan.max_cones:
        diags.append(Diagnostic("WallCountViolation", "fan has no maximal cones"))
        return diags

    shape_ok = True
    for k, cone in enumerate(fan.max_cones):
        rays = fan.cone_rays(k)
        if rg.rank(rays, n) < n:
            diags.append(Diagnostic("NonMaximalCone", f"cone {k} is not full-dimensional", (k,)))
            shape_ok = False
            continue
        normals = [w for w, _ in fan.facets[k]]
        if rg.rank(normals, n) < n:
            diags.append(Diagnostic("NonMaximalCone", f"cone {k} is not strictly convex", (k,)))
            shape_ok = False
            continue
        for i in cone:
            tight = [w for w, s in fan.facets[k] if i in s]
            if rg.rank(tight, n) < n - 1:
                diags.append(
                    Diagnostic("NonMaximalCone", f"ray {i} is not an extreme ray of cone {k}", (k, i))
                )
                shape_ok = False
    if not shape_ok:
        return diags

    walls = Counter()
    owners: dict = {}
    for k in range(len(fan.max_cones)):
        for _, s in fan.facets[k]:
            walls[s] += 1
            owners.setdefault(s, []).append(k)
    for s, c in sorted(walls.items(), key=lambda kv: sorted(kv[0])):
        if c != 2:
            diags.append(
                Diagnostic(
                    "WallCountViolation",
                    f"wall spanned by rays {sorted(s)} lies on {c} maximal cone(s), expected 2",
                    tuple(sorted(s)),
                )
            )

    adj = {k: set() for k in range(len(fan.max_cones))}
    for ks in owners.values():
        for a in ks:
            adj[a].update(b for b in ks if b != a)
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b in adj[a] - seen:
            seen.add(b)
            queue.append(b)
    if len(seen) != len(fan.max_cones):
        diags.append(Diagnostic("WallCountViolation", "wall graph of maximal cones is disconnected"))

    for a, b in combinations(range(len(fan.max_cones)), 2):
        if not _separated(fan.cone_rays(a), fan.cone_rays(b), n):
            diags.append(
                Diagnostic("OverlappingCones", f"cones {a} and {b} share interior points", (a, b))
            )
    return diags


def check_fan(fan: Fan) -> Fan:
    diags = validate_fan(fan)
    if diags:
        raise FanValidationError(diags)
    return fan


@dataclass(frozen=True)
class CartierData:
    b_sigma: tuple  # one RationalVector per maximal cone


@dataclass(frozen=True)
class AmpleCertificate:
    ample: bool
    reason: str
    vertex_of_cone: tuple = ()

    def __bool__(self):
        return self.ample


@dataclass(frozen=True)
class ToricDivisor:
    fan: Fan
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", rg.qvec(self.coeffs))
        if len(self.coeffs) != self.fan.n_rays:
            raise ValueError("one coefficient per ray is required")

    @property
    def rank(self) -> int:
        return self.fan.rank

    @cached_property
    def polytope(self) -> rg.Polytope:
        return polytope_of_divisor(self)

    @cached_property
    def ample_certificate(self) -> AmpleCertificate:
        return is_ample(self)

    def require_ample(self) -> "ToricDivisor":
        cert = self.ample_certificate
        if not cert:
            raise NotAmpleError(f"divisor is not ample: {cert.reason}")
        return self

    def scaled(self, r) -> "ToricDivisor":
        return ToricDivisor(self.fan, tuple(r * b for b in self.coeffs))

    def translated(self, w) -> "ToricDivisor":
        """The linearly equivalent divisor whose polytope is P_D + w."""
        return ToricDivisor(self.fan, tuple(b - rg.dot(w, v) for b, v in zip(self.coeffs, self.fan.rays)))


def polytope_of_divisor(D: ToricDivisor) -> rg.Polytope:
    P = rg.Polytope.from_inequalities(D.fan.rays, D.coeffs, D.rank)
    P.vertices  # raises EmptyError for a divisor without sections
    return P


def cartier_data(D: ToricDivisor) -> CartierData:
    out = []
    for k, cone in enumerate(D.fan.max_cones):
        b = rg.solve([D.fan.rays[i] for i in cone], [D.coeffs[i] for i in cone])
        if b is None:
            raise NotQCartierError(k)
        out.append(b)
    return CartierData(tuple(out))


def is_ample(D: ToricDivisor) -> AmpleCertificate:
    """Ample iff the normal fan of P_D is the given fan.

    Each maximal cone must give a vertex -b(sigma) whose tight inequalities
    are exactly the cone's rays, and there must be no other vertices.
    """
    cd = cartier_data(D)
    try:
        verts = set(D.polytope.vertices)
    except rg.EmptyError:
        return AmpleCertificate(False, "polytope is empty")
    if len(verts) != len(D.fan.max_cones):
        return AmpleCertificate(
            False, f"{len(verts)} vertices but {len(D.fan.max_cones)} maximal cones"
        )
    chosen = []
    for k, b in enumerate(cd.b_sigma):
        u = tuple(-x for x in b)
        if u not in verts:
            return AmpleCertificate(False, f"-b(sigma_{k}) = {_fmt(u)} is not a vertex of P")
        tight = D.polytope.tight(u)
        if tight != frozenset(D.fan.max_cones[k]):
            return AmpleCertificate(
                False, f"vertex {_fmt(u)} is tight on rays {sorted(tight)}, cone {k} has {list(D.fan.max_cones[k])}"
            )
        chosen.append(u)
    return AmpleCertificate(True, "normal fan of P equals the fan", tuple(chosen))


def _fmt(u):
    return "(" + ", ".join(str(x) for x in u) + ")"


def support_function(D: ToricDivisor, v) -> Fraction:
    """psi_D(v) = min over vertices u of P_D of <u, v>."""
    D.require_ample()
    v = rg.qvec(v)
    return min(rg.dot(u, v) for u in D.polytope.vertices)


def anticanonical(fan: Fan) -> ToricDivisor:
    return ToricDivisor(fan, (1,) * fan.n_rays)


@dataclass(frozen=True)
class QFanoCheck:
    q_fano: bool
    reason: str

    def __bool__(self):
        return self.q_fano


def is_q_fano(fan: Fan) -> QFanoCheck:
    K = anticanonical(fan)
    try:
        cert = K.ample_certificate
    except NotQCartierError as e:
        return QFanoCheck(False, f"-K is not Q-Cartier on cone {e.cone_index}")
    if not cert:
        return QFanoCheck(False, f"-K is not ample: {cert.reason}")
    return QFanoCheck(True, "-K is ample and Q-Cartier")


def divisor_Du(D: ToricDivisor, u) -> tuple:
    """Coefficients <u, v_i> + b_i of the effective divisor D_u."""
    u = rg.qvec(u)
    coeffs = tuple(rg.dot(u, v) + b for v, b in zip(D.fan.rays, D.coeffs))
    if any(c < 0 for c in coeffs):
        raise NotInPolytopeError(f"{_fmt(u)} is not in P_D")
    return coeffs


def normal_fan(P: rg.Polytope) -> tuple[Fan, ToricDivisor]:
    """Inner normal fan of a full-dimensional polytope, with the divisor whose polytope is P.

    Redundant inequalities are dropped and normals made primitive.
    """
    verts = P.vertices
    n = P.dim
    if rg.affine_dim(verts) < n:
        raise rg.ZeroVolumeError("normal fan needs a full-dimensional polytope")
    facets = {}
    for h in P.halfspaces:
        g = 0
        for x in h.normal:
            g = gcd(g, x)
        a = tuple(x // g for x in h.normal)
        off = h.offset / g
        on = [u for u in verts if rg.dot(u, a) + off == 0]
        if rg.affine_dim(on) == n - 1:
            facets[a] = off
    rays = sorted(facets)
    cones = []
    for u in verts:
        cones.append(tuple(i for i, a in enumerate(rays) if rg.dot(u, a) + facets[a] == 0))
    fan = Fan(n, tuple(rays), tuple(cones))
    return fan, ToricDivisor(fan, tuple(facets[a] for a in rays))


# -- standard fans ------------------------------------------------------------


def projective_space_fan(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(-1,) * n]
    cones = [tuple(j for j in range(n + 1) if j != i) for i in range(n + 1)]
    return Fan(n, tuple(rays), tuple(cones))


def product_fan(a: Fan, b: Fan) -> Fan:
    rays = [r + (0,) * b.rank for r in a.rays] + [(0,) * a.rank + r for r in b.rays]
    cones = [ca + tuple(a.n_rays + j for j in cb) for ca in a.max_cones for cb in b.max_cones]
    return Fan(a.rank + b.rank, tuple(rays), tuple(cones))


def weighted_p112_fan() -> Fan:
    """P(1,1,2): rays e1, e2, (-1,-2)."""
    return Fan(2, ((1, 0), (0, 1), (-1, -2)), ((0, 1), (1, 2), (0, 2)))


def hirzebruch_fan(a: int) -> Fan:
    return Fan(2, ((1, 0), (0, 1), (-1, a), (0, -1)), ((0, 1), (1, 2), (2, 3), (0, 3)))
