"""The one-parameter circle family behind the perpendicularity equation.

Fixing x (and y = y(x)) turns Peq into the circle Cir(x) in the (h, ht)
plane with center (c(x), 0), c = x^2 - y^2 + 1/2, and radius
r = x^2 + y^2 - 1/2.  Arc(x) is its piece in the quadrant h >= 1/2, ht > 0,
ending at the terminal point (1/2, z(x)).  The map

    F(x, theta) = (c(x) + r(x) cos(theta), r(x) sin(theta))

parameterizes the union of arcs; its Jacobian c'(x) r cos(theta) + r'(x) r
vanishes on the fold curve J0, whose image F(J0) is the envelope of the
arcs for x in [5/6, 1].  Counting quadrisections reduces to locating the
inverted apex relative to the doubly covered region bounded by that
envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .geometry import (
    CanonicalTriangle,
    Point2,
    TriangleSpec,
    canonicalize,
    invert_point,
)
from .solver import (
    XMAX,
    _check_x,
    enumerate_quadrisections,
    scan_roots,
    solve_base,
    y_of_x,
    y_prime,
)

J0_XMIN = 5.0 / 6.0   # fold curve leaves the domain D below this x
EPS_ENV = 1e-8        # envelope band: |incidence residual| classified as on-curve
I1_MATCH_TOL = 1e-8

# distinguished isosceles triangles
I2_POINT = Point2(0.5, 8.0 / 9.0)
I2_REFLECTION = Point2(175.0 / 337.0, 288.0 / 337.0)
I1_POINT = Point2(2.0 - math.sqrt(2.0), math.sqrt(2.0 * math.sqrt(2.0) - 2.0))


def c_of_x(x: float) -> float:
    y = y_of_x(x)
    return x * x - y * y + 0.5


def r_of_x(x: float) -> float:
    y = y_of_x(x)
    return x * x + y * y - 0.5


def c_prime(x: float) -> float:
    return 2.0 * x - 2.0 * y_of_x(x) * y_prime(x)


def r_prime(x: float) -> float:
    return 2.0 * x + 2.0 * y_of_x(x) * y_prime(x)


@dataclass(frozen=True)
class ArcData:
    """Circle data for a fixed base parameter x."""

    x: float
    y: float
    c: float
    r: float
    theta_end: float
    z: float

    @property
    def terminal(self) -> Point2:
        return Point2(0.5, self.z)


def arc_data(x: float) -> ArcData:
    x = _check_x(x)
    y = y_of_x(x)
    c = x * x - y * y + 0.5
    r = x * x + y * y - 0.5
    cos_end = (0.5 - c) / r
    theta_end = math.acos(max(-1.0, min(1.0, cos_end)))
    z = math.sqrt(max(r * r - (0.5 - c) ** 2, 0.0))
    return ArcData(x=x, y=y, c=c, r=r, theta_end=theta_end, z=z)


def map_F(x: float, theta: float) -> Point2:
    """Point of Arc(x) at angle theta; (x, theta) must lie in the domain D."""
    ad = arc_data(x)
    if not (-1e-12 <= theta <= ad.theta_end + 1e-12):
        raise ValueError(f"theta={theta} outside [0, theta_end(x)={ad.theta_end}]")
    return Point2(ad.c + ad.r * math.cos(theta), ad.r * math.sin(theta))


def jacobian_F(x: float, theta: float) -> float:
    """Jacobian determinant c'(x) r(x) cos(theta) + r'(x) r(x)."""
    ad = arc_data(x)
    if not (-1e-12 <= theta <= ad.theta_end + 1e-12):
        raise ValueError(f"theta={theta} outside [0, theta_end(x)={ad.theta_end}]")
    return c_prime(x) * ad.r * math.cos(theta) + r_prime(x) * ad.r


class Sheet(Enum):
    D1 = "D1"
    D2 = "D2"
    J0 = "J0"


@dataclass(frozen=True)
class DomainPoint:
    x: float
    theta: float
    sheet: Sheet


def fold_theta(x: float) -> float:
    """Angle arccos(-r'(x)/c'(x)) where the Jacobian of F vanishes."""
    x = _check_x(x)
    return math.acos(-r_prime(x) / c_prime(x))


def j0_point(x: float) -> DomainPoint:
    """Fold-curve point p(x); restricted to x in [5/6, 1] where it lies in D."""
    if x < J0_XMIN - 1e-12:
        raise ValueError(f"fold curve restricted to x in [5/6, 1], got {x}")
    theta = fold_theta(x)
    end = arc_data(x).theta_end
    if theta > end + 1e-9:
        raise ValueError(f"fold point at x={x} falls outside D ({theta} > {end})")
    return DomainPoint(x=x, theta=theta, sheet=Sheet.J0)


def sheet_of(x: float, theta: float, tol: float = 1e-9) -> Sheet:
    """Sheet of a domain point relative to the fold curve."""
    ad = arc_data(x)
    if not (-1e-12 <= theta <= ad.theta_end + 1e-12):
        raise ValueError(f"theta={theta} outside [0, theta_end(x)={ad.theta_end}]")
    if x < J0_XMIN:
        return Sheet.D1
    tj = fold_theta(x)
    if abs(theta - tj) <= tol:
        return Sheet.J0
    return Sheet.D2 if theta > tj else Sheet.D1


def envelope_point(x: float) -> Point2:
    """F at the fold curve: the envelope of the arcs, x in [5/6, 1]."""
    p = j0_point(x)
    return map_F(p.x, p.theta)


@dataclass(frozen=True)
class CurveSample:
    points: tuple[tuple[float, Point2], ...]


def envelope_curve(n: int = 256) -> CurveSample:
    xs = [J0_XMIN + (XMAX - J0_XMIN) * i / (n - 1) for i in range(n)]
    return CurveSample(tuple((x, envelope_point(x)) for x in xs))


def j0_curve(n: int = 256) -> CurveSample:
    xs = [J0_XMIN + (XMAX - J0_XMIN) * i / (n - 1) for i in range(n)]
    pts = [(x, j0_point(x)) for x in xs]
    return CurveSample(tuple((x, Point2(p.x, p.theta)) for x, p in pts))


def s2_point(x: float) -> Point2:
    """Separating curve in triangle space: envelope reflected about the unit
    circle at B.  Runs from the I2 reflection (at x=5/6) to I1 (at x=1)."""
    return invert_point(envelope_point(x), (1.0, 0.0), 1.0)


def s2_curve(n: int = 256) -> CurveSample:
    xs = [J0_XMIN + (XMAX - J0_XMIN) * i / (n - 1) for i in range(n)]
    return CurveSample(tuple((x, s2_point(x)) for x in xs))


def special_triangles() -> dict[str, Point2]:
    """The distinguished isosceles apexes.

    I1 is the envelope endpoint F(p(1)) after mirror normalization (the fold
    point at the other end of the parameter range maps to the mirror image
    with h < 1/2).  I2 = (1/2, 8/9) is the envelope endpoint at x = 5/6, and
    its reflection about the unit circle at B is the canonical-space twin
    (175/337, 288/337).
    """
    p = envelope_point(XMAX)
    h = p.x if p.x >= 0.5 else 1.0 - p.x
    return {"I1": Point2(h, p.y), "I2": I2_POINT, "I2_reflection": I2_REFLECTION}


class Membership(Enum):
    INSIDE = "INSIDE"
    ON_ENVELOPE = "ON_ENVELOPE"
    OUTSIDE = "OUTSIDE"


def arc_incidence_residual(xi: float, h: float, ht: float) -> float:
    """g(xi) = (h - c(xi))^2 + ht^2 - r(xi)^2; zero iff (h, ht) lies on Cir(xi).

    Identical root set to peq_residual: g = -4 * peq_residual(xi, h, ht).
    """
    c = c_of_x(xi)
    r = r_of_x(xi)
    return (h - c) ** 2 + ht * ht - r * r


@dataclass(frozen=True)
class MembershipReport:
    kind: Membership
    roots: tuple[float, ...]
    tangent_x: float | None
    min_residual: float      # |g| at the nearest critical point, inf if none
    boundary_band: bool      # on-envelope by the eps band, not an exact tangency


def in_FD2(p, *, eps_env: float = EPS_ENV) -> Membership:
    """Locate a quadrant point relative to the doubly covered arc region.

    INSIDE: the point lies on two distinct arcs (the double cover); the
    envelope is where the two incidences merge into a tangential double root,
    reported as ON_ENVELOPE within the eps_env band on the incidence
    residual; anything else (no arc, or a single transversal crossing through
    the boundary arc) is OUTSIDE.
    """
    return membership_report(p, eps_env=eps_env).kind


def membership_report(p, *, eps_env: float = EPS_ENV) -> MembershipReport:
    h, ht = p[0], p[1]
    if ht <= 0.0:
        raise ValueError(f"point {p} not in the open quadrant ht > 0")
    if h < 0.5:
        h = 1.0 - h
    sc = scan_roots(h, ht)

    # peq = -g/4, so the g-band maps to eps_env/4 on the scanned residual
    band = eps_env / 4.0
    cands = list(sc.criticals)
    for x, tang in sc.endpoint:
        if tang:
            cands.append((x, abs(arc_incidence_residual(x, h, ht)) / 4.0))
    near = [(x, v) for x, v in cands if v <= band]
    min_res = min((4.0 * v for _, v in cands), default=math.inf)

    simple = list(sc.transversal) + [x for x, tang in sc.endpoint if not tang]
    if near:
        xt, vt = min(near, key=lambda c: c[1])
        rest = [x for x in simple if abs(x - xt) > 1e-3]
        if not rest:
            return MembershipReport(kind=Membership.ON_ENVELOPE, roots=(xt,),
                                    tangent_x=xt, min_residual=4.0 * vt,
                                    boundary_band=vt > 4e-11)
        return MembershipReport(kind=Membership.INSIDE, roots=tuple(sorted(rest + [xt])),
                                tangent_x=xt, min_residual=4.0 * vt, boundary_band=False)
    if len(simple) >= 2:
        return MembershipReport(kind=Membership.INSIDE, roots=tuple(sorted(simple)),
                                tangent_x=None, min_residual=min_res, boundary_band=False)
    return MembershipReport(kind=Membership.OUTSIDE, roots=tuple(sorted(simple)),
                            tangent_x=None, min_residual=min_res, boundary_band=False)


class TheoremCase(Enum):
    CASE1_THREE = "CASE1_THREE"
    CASE2_TWO = "CASE2_TWO"
    CASE3_ONE = "CASE3_ONE"


@dataclass(frozen=True)
class CountReport:
    count: int
    theorem_case: TheoremCase
    oracle_count: int
    per_placement_roots: dict[str, int]
    boundary: bool
    canonical: CanonicalTriangle
    inverted_apex: Point2


def count_via_theorem(t: TriangleSpec, *, eps_env: float = EPS_ENV,
                      include_oracle: bool = True) -> CountReport:
    """Quadrisection count by the classification theorem, cross-checked
    against direct enumeration.

    The canonical apex C in the triangle space is inverted about the unit
    circle at B; the count is 3 when the image lies inside the doubly covered
    arc region, 2 on its envelope (except at I1), else 1.
    """
    ct = canonicalize(t)
    cp = invert_point((ct.h, ct.ht), (1.0, 0.0), 1.0)
    hp = cp.x if cp.x >= 0.5 else 1.0 - cp.x
    cp = Point2(hp, cp.y)
    rep = membership_report(cp, eps_env=eps_env)
    if rep.kind is Membership.INSIDE:
        count, case = 3, TheoremCase.CASE1_THREE
    elif rep.kind is Membership.ON_ENVELOPE:
        if math.hypot(cp.x - I1_POINT.x, cp.y - I1_POINT.y) <= I1_MATCH_TOL:
            count, case = 1, TheoremCase.CASE3_ONE
        else:
            count, case = 2, TheoremCase.CASE2_TWO
    else:
        count, case = 1, TheoremCase.CASE3_ONE

    per_placement: dict[str, int] = {}
    oracle = -1
    if include_oracle:
        from .geometry import side_placements
        for pl in side_placements(t):
            n = len(solve_base(pl.h, pl.ht))
            per_placement[pl.placement] = per_placement.get(pl.placement, 0) + n
        oracle = len(enumerate_quadrisections(t))
    return CountReport(count=count, theorem_case=case, oracle_count=oracle,
                       per_placement_roots=per_placement, boundary=rep.boundary_band,
                       canonical=ct, inverted_apex=cp)
