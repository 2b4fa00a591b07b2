"""Classification of the triangle space and SVG / dataset rendering.

The triangle space is sampled on a nested lattice (resolution N halves the
step of N/2, so refinements share sample points), every point inside the
half-lune is classified by the counting theorem, and the result is rendered
as a layered SVG atlas plus CSV/JSON datasets.  Rendering is deterministic:
identical inputs produce byte-identical documents.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .arcs import (
    EPS_ENV,
    I1_POINT,
    I2_POINT,
    I2_REFLECTION,
    Membership,
    envelope_curve,
    membership_report,
    s2_curve,
)
from .geometry import (
    EQUILATERAL_POINT,
    RegionLabel,
    TriangleSpec,
    classify_region,
    upsilon_contains,
)
from .solver import Quadrisection, _scan_grid

H_WINDOW = (0.5, 2.0)
HT_WINDOW = (0.0, 1.0)

_CASE_BY_COUNT = {3: "CASE1_THREE", 2: "CASE2_TWO", 1: "CASE3_ONE"}


@dataclass(frozen=True)
class AtlasCell:
    h: float
    ht: float
    count: int
    case: str
    region: RegionLabel
    boundary: bool


@dataclass(frozen=True)
class AtlasGrid:
    resolution: tuple[int, int]
    cells: tuple[AtlasCell, ...]

    def counts_by_point(self) -> dict[tuple[float, float], int]:
        return {(c.h, c.ht): c.count for c in self.cells}


def _lattice(nh: int, nht: int):
    hs = [H_WINDOW[0] + i * (H_WINDOW[1] - H_WINDOW[0]) / nh for i in range(nh + 1)]
    hts = [j * (HT_WINDOW[1] - HT_WINDOW[0]) / nht for j in range(1, nht + 1)]
    return hs, hts


def _counts_vectorized(hp: np.ndarray, htp: np.ndarray, n: int = 2048):
    """Theorem counts for a batch of already-inverted apex points.

    Counts sign changes of the incidence residual along the arc parameter;
    rows whose minimum |residual| comes close to the envelope band are
    returned as unresolved (-1) for scalar reclassification.
    """
    xs, x2, y2, yyp2 = _scan_grid(n)
    res = (x2[None, :] - 0.5 * hp[:, None]) * (y2[None, :] - 0.5 * (1.0 - hp[:, None])) \
        - 0.25 * (htp[:, None] ** 2)
    s = np.sign(res)
    nsc = np.sum(s[:, :-1] * s[:, 1:] < 0, axis=1)
    minabs = np.min(np.abs(res), axis=1)
    counts = np.where(nsc >= 2, 3, 1)
    # rows flirting with a root at the interval ends or with a tangency are
    # handed to the scalar classifier
    unresolved = (minabs <= 1e-6) | (nsc == 1)
    counts = np.where(unresolved, -1, counts)
    return counts


def classify_grid(resolution, *, eps_env: float = EPS_ENV,
                  eps_region: float = 1e-9) -> AtlasGrid:
    """Classify every lattice point of the window inside the triangle space.

    resolution may be an integer N (N x N) or an (nh, nht) pair.  Points
    straddling the separating curve (differing neighbor counts, or landing
    in the envelope band) carry the boundary flag.
    """
    if isinstance(resolution, int):
        nh = nht = resolution
    else:
        nh, nht = resolution
    if nh < 2 or nht < 2:
        raise ValueError(f"resolution must be at least 2x2, got {(nh, nht)}")
    hs, hts = _lattice(nh, nht)

    pts = [(h, ht) for h in hs for ht in hts if upsilon_contains(h, ht)]
    if not pts:
        return AtlasGrid(resolution=(nh, nht), cells=())
    arr = np.asarray(pts)
    # theorem path: invert about the unit circle at B, mirror-normalize
    d2 = (arr[:, 0] - 1.0) ** 2 + arr[:, 1] ** 2
    hp = 1.0 + (arr[:, 0] - 1.0) / d2
    htp = arr[:, 1] / d2
    hp = np.where(hp < 0.5, 1.0 - hp, hp)

    counts = np.empty(len(pts), dtype=int)
    step = 1024
    for i in range(0, len(pts), step):
        counts[i:i + step] = _counts_vectorized(hp[i:i + step], htp[i:i + step])

    boundary_band = np.zeros(len(pts), dtype=bool)
    for i in np.nonzero(counts < 0)[0]:
        rep = membership_report((hp[i], htp[i]), eps_env=eps_env)
        if rep.kind is Membership.INSIDE:
            counts[i] = 3
        elif rep.kind is Membership.ON_ENVELOPE:
            dist = math.hypot(hp[i] - I1_POINT.x, htp[i] - I1_POINT.y)
            counts[i] = 1 if dist <= 1e-8 else 2
            boundary_band[i] = rep.boundary_band
        else:
            counts[i] = 1

    by_point = {pt: int(c) for pt, c in zip(pts, counts)}
    dh = (H_WINDOW[1] - H_WINDOW[0]) / nh
    dht = (HT_WINDOW[1] - HT_WINDOW[0]) / nht
    cells = []
    for (h, ht), c, bb in zip(pts, counts, boundary_band):
        neigh = ((h + dh, ht), (h - dh, ht), (h, ht + dht), (h, ht - dht))
        straddle = any(by_point.get(nb, c) != c for nb in neigh)
        cells.append(AtlasCell(h=h, ht=ht, count=int(c), case=_CASE_BY_COUNT[int(c)],
                               region=classify_region(h, ht, eps=eps_region),
                               boundary=bool(bb or straddle)))
    return AtlasGrid(resolution=(nh, nht), cells=tuple(cells))


@dataclass(frozen=True)
class RenderSpec:
    """Canvas geometry and layer toggles for the SVG renderers."""

    width: int = 900
    height: int = 640
    margin: int = 40
    stroke: float = 1.5
    layers: frozenset = frozenset(
        {"regions", "upsilon", "s2", "right_segment", "points"})

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("canvas dimensions must be positive")


_COUNT_FILL = {1: "#c6d4e8", 2: "#f2b66d", 3: "#8fd18f"}


def _fmt(v: float) -> str:
    return f"{v:.6f}"


class _Svg:
    def __init__(self, width, height):
        self.w, self.h = width, height
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}" version="1.1">']

    def rect(self, x, y, w, h, fill):
        self.parts.append(f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" '
                          f'height="{_fmt(h)}" fill="{fill}"/>')

    def polyline(self, pts, stroke, width, layer):
        body = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        self.parts.append(f'<polyline id="{layer}" points="{body}" fill="none" '
                          f'stroke="{stroke}" stroke-width="{_fmt(width)}"/>')

    def line(self, p, q, stroke, width):
        self.parts.append(f'<line x1="{_fmt(p[0])}" y1="{_fmt(p[1])}" '
                          f'x2="{_fmt(q[0])}" y2="{_fmt(q[1])}" stroke="{stroke}" '
                          f'stroke-width="{_fmt(width)}"/>')

    def circle(self, p, r, fill):
        self.parts.append(f'<circle cx="{_fmt(p[0])}" cy="{_fmt(p[1])}" '
                          f'r="{_fmt(r)}" fill="{fill}"/>')

    def text(self, p, s, size=12, fill="#222222"):
        self.parts.append(f'<text x="{_fmt(p[0])}" y="{_fmt(p[1])}" '
                          f'font-size="{size}" font-family="sans-serif" '
                          f'fill="{fill}">{s}</text>')

    def finish(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def render_space_svg(grid: AtlasGrid, spec: RenderSpec = RenderSpec()) -> str:
    """Layered SVG of the triangle space: count-colored lattice, lune
    boundary, separating curve, right-triangle segment and marked points."""
    m = spec.margin
    sx = (spec.width - 2 * m) / (H_WINDOW[1] - H_WINDOW[0])
    sy = (spec.height - 2 * m) / (HT_WINDOW[1] - HT_WINDOW[0])

    def to_px(p):
        return (m + (p[0] - H_WINDOW[0]) * sx,
                spec.height - m - (p[1] - HT_WINDOW[0]) * sy)

    svg = _Svg(spec.width, spec.height)
    svg.rect(0, 0, spec.width, spec.height, "#ffffff")

    nh, nht = grid.resolution
    dh = (H_WINDOW[1] - H_WINDOW[0]) / nh
    dht = (HT_WINDOW[1] - HT_WINDOW[0]) / nht
    if "regions" in spec.layers:
        for c in grid.cells:
            x, y = to_px((c.h - dh / 2, c.ht + dht / 2))
            svg.rect(x, y, dh * sx, dht * sy, _COUNT_FILL[c.count])

    if "upsilon" in spec.layers:
        lower = [(h, math.sqrt(max(1.0 - h * h, 0.0)))
                 for h in np.linspace(0.5, 1.0, 257)]
        upper = [(h, math.sqrt(max(h * (2.0 - h), 0.0)))
                 for h in np.linspace(0.5, 2.0, 513)]
        svg.polyline([to_px(p) for p in lower], "#333333", spec.stroke, "upsilon-lower")
        svg.polyline([to_px(p) for p in upper], "#333333", spec.stroke, "upsilon-upper")

    if "arcs" in spec.layers:
        from .arcs import arc_data
        for x in np.linspace(math.sqrt(2) / 2, 1.0, 9):
            ad = arc_data(float(x))
            thetas = np.linspace(0.0, ad.theta_end, 65)
            pts = [(ad.c + ad.r * math.cos(t), ad.r * math.sin(t)) for t in thetas]
            svg.polyline([to_px(p) for p in pts], "#9aa5b1", spec.stroke * 0.6, "arc")

    if "envelope" in spec.layers:
        env = [p for _, p in envelope_curve(257).points]
        svg.polyline([to_px(p) for p in env], "#7030a0", spec.stroke, "envelope")

    if "s2" in spec.layers:
        s2 = [p for _, p in s2_curve(256).points]
        svg.polyline([to_px(p) for p in s2], "#c00000", spec.stroke, "s2")

    if "right_segment" in spec.layers:
        svg.polyline([to_px((1.0, 1e-6)), to_px((1.0, 1.0))], "#1f4e79",
                     spec.stroke, "right-triangles")

    if "points" in spec.layers:
        marks = [("E", EQUILATERAL_POINT), ("I1", I1_POINT), ("I2", I2_POINT),
                 ("I2'", I2_REFLECTION)]
        for name, p in marks:
            px = to_px(p)
            svg.circle(px, 3.5, "#111111")
            svg.text((px[0] + 5, px[1] - 5), name)

    return svg.finish()


def render_quadrisection_svg(t: TriangleSpec, qs: list[Quadrisection],
                             spec: RenderSpec = RenderSpec(width=640, height=560)) -> str:
    """Triangle outline with every quadrisection's two cuts, intersection
    points, and the four region areas as labels."""
    verts = [tuple(v) for v in t.vertices]
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    m = spec.margin
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    s = (min(spec.width, spec.height) - 2 * m) / span

    def to_px(p):
        return (m + (p[0] - min(xs)) * s, spec.height - m - (p[1] - min(ys)) * s)

    palette = ["#c00000", "#1f4e79", "#375623", "#7030a0", "#806000"]
    svg = _Svg(spec.width, spec.height)
    svg.rect(0, 0, spec.width, spec.height, "#ffffff")
    svg.polyline([to_px(p) for p in verts + [verts[0]]], "#111111",
                 spec.stroke * 1.2, "triangle")
    for i, q in enumerate(qs):
        color = palette[i % len(palette)]
        (a, b), (c, d) = q.segments_original
        svg.line(to_px(a), to_px(b), color, spec.stroke)
        svg.line(to_px(c), to_px(d), color, spec.stroke)
        o = _segment_cross(q)
        if o is not None:
            svg.circle(to_px(o), 2.5, color)
        areas = ", ".join(f"{ar:.6g}" for ar in q.region_areas)
        svg.text((m, 16 + 14 * i), f"#{i + 1} [{q.base_placement}] areas: {areas}",
                 size=11, fill=color)
    return svg.finish()


def _segment_cross(q: Quadrisection):
    (p1, p2), (p3, p4) = q.segments_original
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (p4[0] - p3[0], p4[1] - p3[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0.0:
        return None
    w = (p3[0] - p1[0], p3[1] - p1[1])
    tt = (w[0] * d2[1] - w[1] * d2[0]) / den
    return (p1[0] + tt * d1[0], p1[1] + tt * d1[1])


def grid_to_csv(grid: AtlasGrid) -> str:
    buf = io.StringIO()
    buf.write("h,ht,count,case,region\n")
    for c in grid.cells:
        buf.write(f"{c.h!r},{c.ht!r},{c.count},{c.case},{c.region.value}\n")
    return buf.getvalue()


def grid_to_json(grid: AtlasGrid) -> str:
    doc = {
        "schema": 1,
        "resolution": list(grid.resolution),
        "cells": [
            {"h": c.h, "ht": c.ht, "count": c.count, "case": c.case,
             "region": c.region.value}
            for c in grid.cells
        ],
    }
    return json.dumps(doc, indent=None, separators=(",", ":")) + "\n"
