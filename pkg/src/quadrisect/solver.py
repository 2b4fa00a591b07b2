"""Base-coordinate equations, root finding, and quadrisection construction.

A quadrisection with its triangular part on AB is determined by the feet
X=(x,0), Y=(1-y,0).  Area balance forces the cut ratios s=1/(2x), r=1/(2y)
and ties x and y together through the area equation

    Aeq:  (x^2 + y^2) + 4(xy - x - y) + 5/2 = 0,

whose admissible branch is y(x) = 2 - 2x + sqrt(12x^2 - 16x + 6)/2 on
[sqrt(2)/2, 1].  Perpendicularity of the two cuts then reads

    Peq:  (x^2 - h/2)(y^2 - (1-h)/2) = (ht/2)^2,

so the solutions for a given apex (h, ht) are the roots of the single-
variable residual peq_residual(x, h, ht).  The residual is scanned on a
uniform grid, sign changes are bisected, and tangential double roots are
located through the closed-form derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geometry import (
    CanonicalTriangle,
    Point2,
    TriangleSpec,
    side_placements,
)

XMIN = math.sqrt(2.0) / 2.0
XMAX = 1.0
_X_SLACK = 1e-9

NSCAN = 2048          # scan points over [XMIN, XMAX]
TOL_EQ = 1e-10        # residual threshold for accepting x as a root
TOL_ROOT = 1e-12      # root identity / dedup threshold in x
TOL_AREA = 1e-9       # relative equal-area tolerance
TOL_PERP = 1e-9       # normalized perpendicularity tolerance
TANG_TOL = 1e-11      # |residual| at a critical point flagging a double root
SLOPE_TOL = 1e-8      # |d residual/dx| under which an endpoint root is double
BISECT_XTOL = 1e-14

_PLACEMENT_ORDER = {"shortest": 0, "middle": 1, "longest": 2}


def _check_x(x: float) -> float:
    if x < XMIN - _X_SLACK or x > XMAX + _X_SLACK:
        raise ValueError(f"x={x} outside the base-coordinate interval "
                         f"[sqrt(2)/2, 1]")
    return min(max(x, XMIN), XMAX)


def y_of_x(x: float) -> float:
    """The admissible area-equation branch y(x) on [sqrt(2)/2, 1].

    The other root of Aeq, 2 - 2x - sqrt(12x^2 - 16x + 6)/2, leaves the
    admissible square and is discarded.
    """
    x = _check_x(x)
    return 2.0 - 2.0 * x + math.sqrt(12.0 * x * x - 16.0 * x + 6.0) / 2.0


def y_prime(x: float) -> float:
    """dy/dx of the admissible branch."""
    x = _check_x(x)
    return -2.0 + (6.0 * x - 4.0) / math.sqrt(12.0 * x * x - 16.0 * x + 6.0)


def aeq_residual(x: float, y: float) -> float:
    return (x * x + y * y) + 4.0 * (x * y - x - y) + 2.5


def peq_residual(x: float, h: float, ht: float) -> float:
    """(x^2 - h/2)(y(x)^2 - (1-h)/2) - (ht/2)^2."""
    y = y_of_x(x)
    return (x * x - 0.5 * h) * (y * y - 0.5 * (1.0 - h)) - 0.25 * ht * ht


def peq_slope(x: float, h: float, ht: float) -> float:
    """d/dx of peq_residual at fixed (h, ht)."""
    x = _check_x(x)
    y = y_of_x(x)
    return (2.0 * x * (y * y - 0.5 * (1.0 - h))
            + (x * x - 0.5 * h) * 2.0 * y * y_prime(x))


@lru_cache(maxsize=8)
def _scan_grid(n: int):
    xs = np.linspace(XMIN, XMAX, n)
    ys = 2.0 - 2.0 * xs + np.sqrt(12.0 * xs * xs - 16.0 * xs + 6.0) / 2.0
    yp = -2.0 + (6.0 * xs - 4.0) / np.sqrt(12.0 * xs * xs - 16.0 * xs + 6.0)
    return xs, xs * xs, ys * ys, 2.0 * ys * yp


def residual_grids(h: float, ht: float, n: int = NSCAN):
    """Vectorized peq residual and its x-derivative on the scan grid."""
    xs, x2, y2, yyp2 = _scan_grid(n)
    fac2 = y2 - 0.5 * (1.0 - h)
    fac1 = x2 - 0.5 * h
    res = fac1 * fac2 - 0.25 * ht * ht
    slope = 2.0 * xs * fac2 + fac1 * yyp2
    return xs, res, slope


def _bisect(f, a: float, b: float, fa: float) -> float:
    while b - a > BISECT_XTOL:
        m = 0.5 * (a + b)
        fm = f(m)
        if fa * fm <= 0.0:
            b = m
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


@dataclass(frozen=True)
class BaseRoot:
    x: float
    tangential: bool


@dataclass(frozen=True)
class RootScan:
    """Raw structure of peq_residual over the interval for one apex point.

    transversal: sign-change roots; endpoint: interval ends where the residual
    vanishes, with the double-root flag; criticals: interior critical points
    as (x, |residual|) pairs.
    """

    transversal: tuple[float, ...]
    endpoint: tuple[tuple[float, bool], ...]
    criticals: tuple[tuple[float, float], ...]


def scan_roots(h: float, ht: float, *, nscan: int = NSCAN,
               tol_root: float = TOL_ROOT, slope_tol: float = SLOPE_TOL) -> RootScan:
    xs, res, slope = residual_grids(h, ht, nscan)

    f = lambda x: peq_residual(x, h, ht)
    df = lambda x: peq_slope(x, h, ht)

    trans = []
    s = np.sign(res)
    for i in np.nonzero(s[:-1] * s[1:] < 0)[0]:
        trans.append(float(_bisect(f, float(xs[i]), float(xs[i + 1]), float(res[i]))))

    ends = []
    for e in (XMIN, XMAX):
        if abs(f(e)) <= tol_root and not any(abs(e - r) <= 1e-9 for r in trans):
            ends.append((e, abs(df(e)) <= slope_tol))

    crits = []
    sd = np.sign(slope)
    for i in np.nonzero(sd[:-1] * sd[1:] < 0)[0]:
        xc = float(_bisect(df, float(xs[i]), float(xs[i + 1]), float(slope[i])))
        crits.append((xc, abs(f(xc))))

    return RootScan(tuple(trans), tuple(ends), tuple(crits))


_ROOT_CLUSTER = 1e-6   # a simple root this close to a double root is its split half


def solve_base(h: float, ht: float, *, nscan: int = NSCAN, tol_root: float = TOL_ROOT,
               tang_tol: float = TANG_TOL) -> list[BaseRoot]:
    """All x in [sqrt(2)/2, 1] with peq_residual(x, h, ht) = 0.

    Sign-change roots are bisected to BISECT_XTOL; tangential double roots
    (residual touching zero without a sign change, |residual| <= tang_tol at
    the critical point) are reported once with the flag set.  Simple roots
    within the cluster radius of a double root are rounding-induced splits of
    the tangency and are absorbed into it.  The empty list is a valid
    outcome.
    """
    if not (h >= 0.5 - 1e-12 and ht > 0.0):
        raise ValueError(f"apex ({h}, {ht}) outside the quadrant h >= 1/2, ht > 0")
    sc = scan_roots(h, ht, nscan=nscan, tol_root=tol_root)
    tangential = [xc for xc, fval in sc.criticals if fval <= tang_tol]
    tangential += [e for e, tang in sc.endpoint if tang]
    simple = list(sc.transversal) + [e for e, tang in sc.endpoint if not tang]
    roots = [BaseRoot(x, True) for x in sorted(set(tangential))]
    for x in simple:
        if not any(abs(x - r.x) <= _ROOT_CLUSTER for r in roots):
            roots.append(BaseRoot(x, False))
    return sorted(roots, key=lambda r: r.x)


@dataclass(frozen=True)
class BaseSolution:
    """One quadrisection in canonical coordinates.

    X=(x,0) and Y=(1-y,0) are the feet on AB, P on AC and Q on BC the far
    ends of the two cuts, O their interior intersection at parameter u along
    XP.
    """

    x: float
    y: float
    s: float
    r: float
    u: float
    X: Point2
    Y: Point2
    P: Point2
    Q: Point2
    O: Point2
    aeq_residual: float
    peq_residual: float


def build_quadrisection(ct: CanonicalTriangle, x: float, *,
                        tol_eq: float = TOL_EQ, validate: bool = True) -> BaseSolution:
    """Construct the full solution geometry for a root x of the apex (h, ht)."""
    h, ht = ct.h, ct.ht
    pres = peq_residual(x, h, ht)
    if validate and abs(pres) > tol_eq:
        raise ValueError(f"x={x} is not a quadrisection root for apex "
                         f"({h}, {ht}): |peq|={abs(pres):.3e}")
    x = _check_x(x)
    y = y_of_x(x)
    s = 1.0 / (2.0 * x)
    r = 1.0 / (2.0 * y)
    X = Point2(x, 0.0)
    Y = Point2(1.0 - y, 0.0)
    P = Point2(s * h, s * ht)
    Q = Point2((1.0 - r) + r * h, r * ht)
    u = ((x + y) - 1.0) / ((x + (s / r) * y) - s)
    O = Point2(u * P.x + (1.0 - u) * X.x, u * P.y + (1.0 - u) * X.y)
    if validate:
        # independent ordinate formula for O
        y0 = ht * (1.0 - (x + y)) / (1.0 - 2.0 * (x * x + y * y))
        if abs(O.y - y0) > 1e-10:
            raise RuntimeError(f"intersection ordinate mismatch: {O.y} vs {y0}")
    return BaseSolution(x=x, y=y, s=s, r=r, u=u, X=X, Y=Y, P=P, Q=Q, O=O,
                        aeq_residual=aeq_residual(x, y), peq_residual=pres)


Segment = tuple[Point2, Point2]


@dataclass(frozen=True)
class Quadrisection:
    """A quadrisection mapped back to the original triangle's coordinates."""

    base_placement: str
    solution: BaseSolution
    segments_original: tuple[Segment, Segment]
    region_areas: tuple[float, float, float, float]
    base_vertex_indices: tuple[int, int]


@dataclass(frozen=True)
class VerificationReport:
    areas: tuple[float, float, float, float]
    total_area: float
    max_area_deviation: float   # relative to total
    perp_residual: float        # |d1 . d2| / (|d1| |d2|)
    intersection_inside: bool
    passed: bool


def _clip_halfplane(poly, a, b, keep_positive: bool):
    """Sutherland-Hodgman clip of a convex polygon by the line through a, b.

    Points exactly on the line are kept on both sides, so the four regions
    tile the triangle without gaps.
    """
    ax, ay = a
    ux, uy = b[0] - a[0], b[1] - a[1]
    sign = 1.0 if keep_positive else -1.0
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        cp = sign * (ux * (p[1] - ay) - uy * (p[0] - ax))
        cq = sign * (ux * (q[1] - ay) - uy * (q[0] - ax))
        if cp >= 0.0:
            out.append(p)
        if (cp > 0.0 and cq < 0.0) or (cp < 0.0 and cq > 0.0):
            t = cp / (cp - cq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _shoelace(poly) -> float:
    area = 0.0
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        area += p[0] * q[1] - p[1] * q[0]
    return 0.5 * abs(area)


def _seg_intersection(seg1, seg2):
    (p1, p2), (p3, p4) = seg1, seg2
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (p4[0] - p3[0], p4[1] - p3[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0.0:
        return None
    w = (p3[0] - p1[0], p3[1] - p1[1])
    t = (w[0] * d2[1] - w[1] * d2[0]) / den
    u = (w[0] * d1[1] - w[1] * d1[0]) / den
    return t, u


def verify_quadrisection(t: TriangleSpec, q: Quadrisection, *,
                         tol_area: float = TOL_AREA,
                         tol_perp: float = TOL_PERP) -> VerificationReport:
    """Independent check: split the triangle along both cut lines and measure.

    The four regions are the intersections of the triangle with the four
    halfplane sign patterns (++, +-, -+, --); their areas come from the
    shoelace formula, so the check shares nothing with the solver formulas
    beyond the segment endpoints themselves.  Everything is measured relative
    to the first vertex: shifting to local coordinates keeps the shoelace
    sums free of large-offset cancellation.
    """
    ox, oy = t.vertices[0]
    tri = [(v[0] - ox, v[1] - oy) for v in t.vertices]
    seg1, seg2 = [tuple((p[0] - ox, p[1] - oy) for p in seg)
                  for seg in q.segments_original]
    areas = []
    for s1 in (True, False):
        for s2 in (True, False):
            poly = _clip_halfplane(tri, seg1[0], seg1[1], s1)
            if poly:
                poly = _clip_halfplane(poly, seg2[0], seg2[1], s2)
            areas.append(_shoelace(poly) if len(poly) >= 3 else 0.0)
    total = _shoelace(tri)
    quarter = total / 4.0
    max_dev = max(abs(a - quarter) for a in areas) / total

    d1 = (seg1[1][0] - seg1[0][0], seg1[1][1] - seg1[0][1])
    d2 = (seg2[1][0] - seg2[0][0], seg2[1][1] - seg2[0][1])
    n1 = math.hypot(*d1)
    n2 = math.hypot(*d2)
    perp = abs(d1[0] * d2[0] + d1[1] * d2[1]) / (n1 * n2) if n1 * n2 > 0 else math.inf

    inside = False
    tu = _seg_intersection(seg1, seg2)
    if tu is not None:
        tt, uu = tu
        inside = -1e-12 <= tt <= 1.0 + 1e-12 and -1e-12 <= uu <= 1.0 + 1e-12

    passed = inside and max_dev <= tol_area and perp <= tol_perp
    return VerificationReport(areas=tuple(areas), total_area=total,
                              max_area_deviation=max_dev, perp_residual=perp,
                              intersection_inside=inside, passed=passed)


def _segments_in_original(ct: CanonicalTriangle, sol: BaseSolution):
    tr = ct.transform
    return ((tr.apply(sol.X), tr.apply(sol.P)),
            (tr.apply(sol.Y), tr.apply(sol.Q)))


def _same_segment(s1, s2, atol: float) -> bool:
    def close(p, q):
        return abs(p[0] - q[0]) <= atol and abs(p[1] - q[1]) <= atol
    a, b = s1
    c, d = s2
    return (close(a, c) and close(b, d)) or (close(a, d) and close(b, c))


def _same_quadrisection(q1: Quadrisection, q2: Quadrisection, atol: float) -> bool:
    a1, b1 = q1.segments_original
    a2, b2 = q2.segments_original
    return ((_same_segment(a1, a2, atol) and _same_segment(b1, b2, atol))
            or (_same_segment(a1, b2, atol) and _same_segment(b1, a2, atol)))


def enumerate_quadrisections(t: TriangleSpec, *, nscan: int = NSCAN,
                             tol_eq: float = TOL_EQ,
                             tol_root: float = TOL_ROOT,
                             tol_area: float = TOL_AREA,
                             tol_perp: float = TOL_PERP) -> list[Quadrisection]:
    """All quadrisections of the triangle, in original coordinates.

    Every side role is solved separately; congruent placements of isosceles
    triangles regenerate the same geometry, so the results are merged by
    comparing the unordered segment pairs within 1e-9.  Output is sorted by
    placement role then x, independent of discovery order.
    """
    raw: list[Quadrisection] = []
    for ct in side_placements(t):
        for root in solve_base(ct.h, ct.ht, nscan=nscan, tol_root=tol_root):
            sol = build_quadrisection(ct, root.x, tol_eq=max(tol_eq, 4e-11))
            segs = _segments_in_original(ct, sol)
            raw.append(Quadrisection(base_placement=ct.placement, solution=sol,
                                     segments_original=segs, region_areas=(0.0,) * 4,
                                     base_vertex_indices=ct.base_indices))
    raw.sort(key=lambda q: (_PLACEMENT_ORDER[q.base_placement], q.solution.x))
    # identity tolerance scales with the triangle (1e-9 at unit size)
    atol = 1e-9 * max(t.sides)
    unique: list[Quadrisection] = []
    for q in raw:
        if not any(_same_quadrisection(q, u, atol) for u in unique):
            unique.append(q)

    out = []
    for q in unique:
        rep = verify_quadrisection(t, q, tol_area=tol_area, tol_perp=tol_perp)
        if not rep.passed:
            raise RuntimeError(
                f"constructed quadrisection failed verification: {rep}")
        out.append(Quadrisection(base_placement=q.base_placement, solution=q.solution,
                                 segments_original=q.segments_original,
                                 region_areas=rep.areas,
                                 base_vertex_indices=q.base_vertex_indices))
    return out
