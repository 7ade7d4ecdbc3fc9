"""Planar machinery for polygons invariant under complex multiplication:
the eta angle, the 2*pi/(3*eta) side-count bound, the hull-of-orbit oracle,
and the triangle-inequality checks behind the bound."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ClaimViolated, InvalidMultiplier, NoConvergence, TooFewPoints

TOL = 1e-9  # absolute tolerance on cross products / collinearity


@dataclass(frozen=True)
class Multiplier:
    """Complex multiplier with Im != 0, Re > 0 and |t| <= 1.

    A multiplier with Im < 0 is replaced by its conjugate (the geometry is
    mirror symmetric); |t| > 1 is rejected outright.
    """

    t: complex

    def __post_init__(self):
        t = complex(self.t)
        if t.imag == 0:
            raise InvalidMultiplier("Im(t) must be nonzero")
        if t.real <= 0:
            raise InvalidMultiplier("Re(t) must be positive")
        if abs(t) > 1:
            raise InvalidMultiplier("|t| must be at most 1")
        if t.imag < 0:
            t = t.conjugate()
        object.__setattr__(self, "t", t)


@dataclass(frozen=True)
class Polygon:
    """Convex polygon, vertices in counter-clockwise order."""

    vertices: tuple
    contains_origin: bool

    @property
    def sides(self):
        return len(self.vertices)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points, tol=TOL):
    """Monotone-chain hull, strictly convex vertices (CCW)."""
    pts = sorted(set((float(x), float(y)) for x, y in points))
    if len(pts) < 3:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= tol:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= tol:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def polygon_from_points(points, tol=TOL):
    hull = convex_hull(points, tol)
    if len(hull) < 3:
        raise TooFewPoints(f"hull has only {len(hull)} vertices")
    origin_inside = point_in_hull((0.0, 0.0), hull, tol)
    return Polygon(vertices=tuple(hull), contains_origin=origin_inside)


def point_in_hull(pt, vertices, tol=TOL):
    """Point inside or on a CCW convex polygon, absolute tolerance."""
    n = len(vertices)
    for i in range(n):
        if _cross(vertices[i], vertices[(i + 1) % n], pt) < -tol:
            return False
    return True


def origin_strictly_inside(poly, tol=TOL):
    n = len(poly.vertices)
    return all(
        _cross(poly.vertices[i], poly.vertices[(i + 1) % n], (0.0, 0.0)) > tol
        for i in range(n))


def eta_of(t):
    """The angle |arctan((1 - Re t) / Im t)| of the invariance bound."""
    m = t if isinstance(t, Multiplier) else Multiplier(t)
    return abs(math.atan((1.0 - m.t.real) / m.t.imag))


def is_invariant(polygon, t, tol=TOL):
    """True iff every vertex of t * polygon lies inside or on polygon."""
    m = t if isinstance(t, Multiplier) else Multiplier(t)
    for x, y in polygon.vertices:
        w = complex(x, y) * m.t
        if not point_in_hull((w.real, w.imag), polygon.vertices, tol):
            return False
    return True


class MinSidesBound(NamedTuple):
    bound: object   # float or None
    degenerate: bool


def min_sides_bound(t):
    """2*pi/(3*eta) when 0 < eta <= 1; None above 1; degenerate at eta = 0."""
    e = eta_of(t)
    if e == 0.0:
        return MinSidesBound(bound=None, degenerate=True)
    if e > 1.0:
        return MinSidesBound(bound=None, degenerate=False)
    return MinSidesBound(bound=2.0 * math.pi / (3.0 * e), degenerate=False)


def hull_orbit_polygon(z0, t, max_terms=20000, tol=TOL):
    """Convex hull of the truncated orbit {t^k z0} plus the origin.

    The orbit is extended until the next iterate lies inside the hull built
    so far; the image of the hull is then the hull of later iterates and the
    origin, so the polygon is invariant. Invariance is still re-verified
    because the hull prunes nearly-collinear vertices; if the pruned hull
    fails, the orbit keeps extending. Raises NoConvergence if max_terms
    iterates never close up (|t| extremely close to 1 with a tiny angle).
    """
    m = t if isinstance(t, Multiplier) else Multiplier(t)
    z0 = complex(z0)
    if z0 == 0:
        raise TooFewPoints("seed point is the origin")
    if abs(m.t) >= 1:
        raise InvalidMultiplier("orbit hull needs |t| < 1")

    # one full turn of the spiral, so the origin is enclosed before testing.
    # The hull is built with zero tolerance: pruning genuine near-collinear
    # vertices at small scales would re-open the hull near the origin.
    wrap = math.ceil(2.0 * math.pi / cmath.phase(m.t)) + 1
    pts = [(z0.real, z0.imag)]
    z = z0 * m.t
    for k in range(1, max_terms):
        if k > wrap:
            polygon = polygon_from_points(pts + [(0.0, 0.0)], 0.0)
            if (point_in_hull((z.real, z.imag), polygon.vertices, 0.0)
                    and is_invariant(polygon, m, tol)):
                return polygon
        pts.append((z.real, z.imag))
        z *= m.t
    raise NoConvergence(f"orbit did not close up within {max_terms} terms")


@dataclass(frozen=True)
class PolygonClaimReport:
    eta: float
    sides: int
    beta_min: float
    phi_max: float
    telescoping_product: float
    checks: tuple  # (name, ok) pairs


def claim_check(polygon, t, tol=TOL):
    """Verify the triangle inequalities behind the side-count bound.

    For each vertex P_j with l_j = |OP_j|, beta_j the angle at P_j in the
    triangle O P_j P_{j+1} and phi_j the angle at O:
      (1) beta_j >= pi/2 - eta
      (2) phi_j - eta < pi/2
      (3) l_{j+1}/l_j >= cos(eta)/cos(phi_j - eta) when phi_j >= eta
      (4) l_{j+1}/l_j >= cos(eta) when phi_j < eta
    plus the telescoping product of the ratios being 1, and the scalar
    inequality (1-x)^a >= 1 - 2ax on a grid over x in [0,1/2], a in [1,10].
    Failures raise ClaimViolated: these are proved facts about invariant
    polygons, so a failure signals an implementation bug.
    """
    m = t if isinstance(t, Multiplier) else Multiplier(t)
    if not is_invariant(polygon, m, tol):
        raise ClaimViolated("precondition", "polygon is not t-invariant")
    if not origin_strictly_inside(polygon, tol):
        raise ClaimViolated("precondition", "origin is not strictly interior")

    e = eta_of(m)
    verts = [complex(x, y) for x, y in polygon.vertices]
    n = len(verts)
    beta_min = math.inf
    phi_max = -math.inf
    product = 1.0
    for j in range(n):
        p, q = verts[j], verts[(j + 1) % n]
        lj, lj1 = abs(p), abs(q)
        phi = abs(cmath.phase(q / p))
        beta = abs(cmath.phase((q - p) / (-p)))
        ratio = lj1 / lj
        product *= ratio
        beta_min = min(beta_min, beta)
        phi_max = max(phi_max, phi)
        if beta < math.pi / 2 - e - tol:
            raise ClaimViolated("claim1", f"beta_{j}={beta:.6f} < pi/2 - eta")
        if phi - e >= math.pi / 2 + tol:
            raise ClaimViolated("claim2", f"phi_{j}={phi:.6f} too large")
        if phi >= e:
            lower = math.cos(e) / math.cos(phi - e)
            if ratio < lower * (1 - tol) - tol:
                raise ClaimViolated("claim3", f"ratio at j={j}: {ratio} < {lower}")
        else:
            if ratio < math.cos(e) * (1 - tol) - tol:
                raise ClaimViolated("claim4", f"ratio at j={j}: {ratio}")
    if abs(product - 1.0) > math.sqrt(tol):
        raise ClaimViolated("telescoping", f"product = {product}")
    for i in range(51):
        x = 0.5 * i / 50
        for k in range(19):
            a = 1.0 + 9.0 * k / 18
            if (1 - x) ** a < 1 - 2 * a * x - 1e-12:
                raise ClaimViolated("claim5", f"x={x}, a={a}")
    checks = (("claim1", True), ("claim2", True), ("claim3", True),
              ("claim4", True), ("claim5", True), ("telescoping", True))
    return PolygonClaimReport(eta=e, sides=n, beta_min=beta_min,
                              phi_max=phi_max, telescoping_product=product,
                              checks=checks)
