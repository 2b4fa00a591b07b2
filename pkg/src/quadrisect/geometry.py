"""Triangle input handling, canonical placement and circle inversion.

Every computation downstream works on a triangle in canonical position:
vertices A=(0,0), B=(1,0) and apex C=(h, ht) with h >= 1/2 and ht > 0.
Any triangle is similar to exactly one canonical triangle once a side is
chosen to play AB; choosing the middle side lands the apex in the half-lune
Upsilon between the two unit circles centered at A and B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

EPS_REGION = 1e-9
SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

EQUILATERAL_POINT = (0.5, SQRT3 / 2.0)


class Point2(NamedTuple):
    x: float
    y: float


class RegionLabel(Enum):
    """Side-role region of an apex point; boundary tags win within EPS_REGION."""

    R1 = "R1"            # AB is the longest side: h^2 + ht^2 < 1
    R2 = "R2"            # AB is the middle side
    R3 = "R3"            # AB is the shortest side: (h-1)^2 + ht^2 > 1
    B12 = "B12"          # isosceles boundary |AC| = |AB|: h^2 + ht^2 = 1
    B23 = "B23"          # isosceles boundary |BC| = |AB|: (h-1)^2 + ht^2 = 1
    ISO_MID = "ISO_MID"  # isosceles line |AC| = |BC|: h = 1/2
    EQUILATERAL = "EQUILATERAL"


class TriangleAngles(NamedTuple):
    alpha: float
    beta: float
    gamma: float


class DegenerateTriangleError(ValueError):
    """Input fails the strict triangle inequality / vertices are collinear."""


_DEGENERACY_TOL = 1e-12


class TriangleSpec:
    """A triangle given by three side lengths or by three vertices.

    For side input ``(s1, s2, s3)`` the synthesized vertices are
    V1=(0,0), V2=(s1,0), V3 above the axis, with s1=|V1V2|, s2=|V2V3|,
    s3=|V3V1|.
    """

    def __init__(self, vertices: Sequence[Point2], sides: tuple[float, float, float]):
        self.vertices: tuple[Point2, Point2, Point2] = tuple(Point2(*v) for v in vertices)
        self.sides = sides

    @classmethod
    def from_sides(cls, s1: float, s2: float, s3: float) -> "TriangleSpec":
        for s in (s1, s2, s3):
            if not (math.isfinite(s) and s > 0):
                raise DegenerateTriangleError(f"side lengths must be positive, got {(s1, s2, s3)}")
        lo, mid, hi = sorted((s1, s2, s3))
        if lo + mid - hi <= _DEGENERACY_TOL * hi:
            raise DegenerateTriangleError(
                f"triangle inequality violated for sides {(s1, s2, s3)}")
        # V3 from the law of cosines; ht > 0 by construction
        x3 = (s1 * s1 + s3 * s3 - s2 * s2) / (2.0 * s1)
        y3sq = s3 * s3 - x3 * x3
        if y3sq <= 0.0:
            raise DegenerateTriangleError(f"degenerate triangle for sides {(s1, s2, s3)}")
        verts = (Point2(0.0, 0.0), Point2(s1, 0.0), Point2(x3, math.sqrt(y3sq)))
        return cls(verts, (float(s1), float(s2), float(s3)))

    @classmethod
    def from_vertices(cls, p1, p2, p3) -> "TriangleSpec":
        verts = (Point2(*p1), Point2(*p2), Point2(*p3))
        for v in verts:
            if not (math.isfinite(v.x) and math.isfinite(v.y)):
                raise DegenerateTriangleError(f"non-finite vertex {v}")
        area2 = abs(_cross(_sub(verts[1], verts[0]), _sub(verts[2], verts[0])))
        scale = max(_norm(_sub(verts[i], verts[j])) for i in range(3) for j in range(i))
        if scale <= 0.0 or area2 <= _DEGENERACY_TOL * scale * scale:
            raise DegenerateTriangleError(f"collinear or coincident vertices {verts}")
        sides = (
            _norm(_sub(verts[1], verts[0])),
            _norm(_sub(verts[2], verts[1])),
            _norm(_sub(verts[0], verts[2])),
        )
        return cls(verts, sides)

    def __repr__(self):
        return f"TriangleSpec(sides={self.sides})"


def _sub(p, q):
    return Point2(p[0] - q[0], p[1] - q[1])


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _norm(u):
    return math.hypot(u[0], u[1])


@dataclass(frozen=True)
class Similarity:
    """Affine map canonical -> original: p |-> M @ p + t.

    M is scale times a rotation, times a reflection when ``reflected``.
    """

    m00: float
    m01: float
    m10: float
    m11: float
    tx: float
    ty: float
    scale: float
    reflected: bool

    def apply(self, p) -> Point2:
        x, y = p[0], p[1]
        return Point2(self.m00 * x + self.m01 * y + self.tx,
                      self.m10 * x + self.m11 * y + self.ty)

    def apply_many(self, pts):
        return [self.apply(p) for p in pts]


@dataclass(frozen=True)
class CanonicalTriangle:
    """Canonical apex (h, ht) plus the similarity back to original coordinates.

    ``placement`` tags which original side plays AB ('shortest', 'middle' or
    'longest'; ties broken by vertex order).  ``base_indices`` are the original
    vertex indices mapped to canonical A and B.
    """

    h: float
    ht: float
    transform: Similarity
    placement: str
    base_indices: tuple[int, int]

    @property
    def apex(self) -> Point2:
        return Point2(self.h, self.ht)


def invert_point(p, center, radius: float) -> Point2:
    """Inverse of p about the circle (center, radius): c + r^2 (p-c)/|p-c|^2."""
    dx, dy = p[0] - center[0], p[1] - center[1]
    d2 = dx * dx + dy * dy
    if d2 == 0.0:
        raise ValueError("inversion undefined at the circle center")
    f = radius * radius / d2
    return Point2(center[0] + f * dx, center[1] + f * dy)


def classify_region(h: float, ht: float, eps: float = EPS_REGION) -> RegionLabel:
    """Region tag of an apex point per the side-role inequalities."""
    if not (h >= 0.5 - eps and ht > 0.0):
        raise ValueError(f"apex ({h}, {ht}) outside the quadrant h >= 1/2, ht > 0")
    d1 = h * h + ht * ht              # |AC|^2
    d2 = (h - 1.0) ** 2 + ht * ht     # |BC|^2
    on_b12 = abs(d1 - 1.0) <= eps
    on_b23 = abs(d2 - 1.0) <= eps
    if on_b12 and on_b23:
        return RegionLabel.EQUILATERAL
    if on_b12:
        return RegionLabel.B12
    if on_b23:
        return RegionLabel.B23
    if abs(h - 0.5) <= eps:
        return RegionLabel.ISO_MID
    if d1 < 1.0:
        return RegionLabel.R1
    if d2 < 1.0:
        return RegionLabel.R2
    return RegionLabel.R3


def upsilon_contains(h: float, ht: float) -> bool:
    """Membership in the triangle space Upsilon (closed lune, open at ht=0).

    Upper bound ht <= sqrt(h(2-h)) for all h; the lower circle bound applies
    only while h <= 1, since sqrt(1-h^2) does not exist past h=1.  A one-ulp
    slack keeps boundary points (the equilateral pinch, the isosceles
    circles) inside despite rounding.
    """
    slack = 1e-12
    if not (0.5 - slack <= h < 2.0) or not (ht > 0.0):
        return False
    if ht * ht > h * (2.0 - h) + slack:
        return False
    if h <= 1.0 and ht * ht < 1.0 - h * h - slack:
        return False
    return True


def _upsilon_margin(h, ht):
    # signed slack inside Upsilon; positive means inside
    m = h * (2.0 - h) - ht * ht
    if h <= 1.0:
        m = min(m, ht * ht - (1.0 - h * h))
    return m


def _place_role(verts, ia, ib, ic) -> CanonicalTriangle:
    """Canonicalize with original side (ia, ib) playing AB; swap ends if needed
    so that h >= 1/2.  At most one swap: when h sits on 1/2 within rounding,
    both orientations can land a hair under and the first result stands."""
    for attempt in range(2):
        va, vb, vc = verts[ia], verts[ib], verts[ic]
        u = _sub(vb, va)
        scale = _norm(u)
        cr = _cross(u, _sub(vc, va))
        reflected = cr < 0.0
        # v = image of canonical (0,1): perpendicular of u, flipped when C is below
        v = Point2(-u.y, u.x) if not reflected else Point2(u.y, -u.x)
        det = u.x * v.y - u.y * v.x
        w = _sub(vc, va)
        h = (w.x * v.y - w.y * v.x) / det
        ht = (u.x * w.y - u.y * w.x) / det
        if h >= 0.5 or attempt == 1:
            break
        ia, ib = ib, ia
    sim = Similarity(u.x, v.x, u.y, v.y, va.x, va.y, scale, reflected)
    return CanonicalTriangle(h=h, ht=ht, transform=sim, placement="",
                             base_indices=(ia, ib))


_ROLE_VERTS = ((0, 1, 2), (1, 2, 0), (2, 0, 1))  # side V1V2, V2V3, V3V1 as AB


def side_placements(t: TriangleSpec) -> list[CanonicalTriangle]:
    """One canonical placement per side role, always three entries.

    Unlike :func:`placements` this does not merge congruent placements of an
    isosceles triangle: the repeated canonical points carry different
    transforms, and enumeration over quadrisections needs all of them.
    """
    sides = t.sides
    order = sorted(range(3), key=lambda i: (sides[i], i))
    rank = {}
    for tag, i in zip(("shortest", "middle", "longest"), order):
        rank[i] = tag
    out = []
    for i, (ia, ib, ic) in enumerate(_ROLE_VERTS):
        ct = _place_role(t.vertices, ia, ib, ic)
        out.append(CanonicalTriangle(h=ct.h, ht=ct.ht, transform=ct.transform,
                                     placement=rank[i], base_indices=ct.base_indices))
    return out


def placements(t: TriangleSpec) -> list[CanonicalTriangle]:
    """Canonical placements deduplicated by apex point (3 scalene, 2 isosceles,
    1 equilateral)."""
    out: list[CanonicalTriangle] = []
    for ct in side_placements(t):
        if not any(abs(ct.h - o.h) <= 1e-9 and abs(ct.ht - o.ht) <= 1e-9 for o in out):
            out.append(ct)
    return out


def canonicalize(t: TriangleSpec) -> CanonicalTriangle:
    """The representative with apex in Upsilon (AB = middle side).

    For isosceles input the tie is broken towards the placement inside
    Upsilon; all equilateral placements coincide.
    """
    cands = side_placements(t)
    best = max(cands, key=lambda ct: _upsilon_margin(ct.h, ct.ht))
    if _upsilon_margin(best.h, best.ht) < -1e-9:
        raise DegenerateTriangleError(
            f"no placement of {t} lands in the triangle space")
    return best


def triangle_angles(ct: CanonicalTriangle) -> TriangleAngles:
    """Interior angles at A, B, C of the canonical triangle."""
    h, ht = ct.h, ct.ht
    alpha = math.atan2(ht, h)
    beta = math.atan2(ht, 1.0 - h)
    gamma = math.pi - alpha - beta
    return TriangleAngles(alpha, beta, gamma)


def triangle_from_apex(h: float, ht: float) -> TriangleSpec:
    """Triangle with vertices (0,0), (1,0), (h,ht)."""
    return TriangleSpec.from_vertices((0.0, 0.0), (1.0, 0.0), (h, ht))
