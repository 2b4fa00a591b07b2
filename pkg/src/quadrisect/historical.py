"""Bernoulli's degree-8 polynomial and Euler's trigonometric equation.

Bernoulli (1687) reduced the quadrisection construction to a degree-8
polynomial; Euler (1779) solved the problem trigonometrically and proved
every scalene triangle has a quadrisection based on its middle side.  Both
formulations are solved numerically here and cross-checked against the
direct solver, reproducing the corrected values for the two classical
worked examples (Bernoulli's 484/490/495 triangle, Euler's right triangle
with sides 2, 1, sqrt(5)).

Bernoulli's triangle is labeled AC = a (the base carrying the feet),
CB = b, BA = c, and his polynomial variable is the foot distance from the
C end of the base, normalized by a.  In the conventions used here that is
the solver's y coordinate; his y is the solver's x ("Bernoulli's x and y
are our y and x").
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import TriangleSpec, canonicalize
from .solver import XMAX, XMIN, enumerate_quadrisections

T_SCAN_MAX = 64.0       # tan(phi) scan upper bound
T_SCAN_MIN = 1e-6
T_SCAN_POINTS = 4096


@dataclass(frozen=True)
class BernoulliParams:
    """Side lengths in Bernoulli's labeling: a = AC (base), b = CB, c = BA."""

    a: float
    b: float
    c: float

    def normalized(self) -> tuple[float, float]:
        return self.b / self.a, self.c / self.a


@dataclass(frozen=True)
class Degree8Poly:
    """Monic degree-8 polynomial, coefficients highest power first."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        if len(self.coefficients) != 9 or self.coefficients[0] != 1.0:
            raise ValueError("expected 9 coefficients with leading coefficient 1")

    def __call__(self, x: float) -> float:
        v = 0.0
        for co in self.coefficients:
            v = v * x + co
        return v

    def real_roots(self, imag_tol: float = 1e-9) -> list[float]:
        roots = np.roots(self.coefficients)
        out = []
        deriv = np.polyder(np.asarray(self.coefficients))
        for r in roots:
            if abs(r.imag) > imag_tol:
                continue
            x = r.real
            # two Newton polish steps off the companion-matrix root
            for _ in range(2):
                d = np.polyval(deriv, x)
                if d != 0.0:
                    x -= np.polyval(self.coefficients, x) / d
            out.append(float(x))
        return sorted(out)


def bernoulli_polynomial(b: float, c: float) -> Degree8Poly:
    """The degree-8 polynomial in the normalized foot coordinate (a = 1)."""
    if not all(math.isfinite(v) and v > 0 for v in (b, c)):
        raise ValueError(f"sides must be positive, got b={b}, c={c}")
    lo, mid, hi = sorted((1.0, b, c))
    if lo + mid <= hi:
        raise ValueError(f"(1, {b}, {c}) violates the triangle inequality")
    b2, c2 = b * b, c * c
    b4, c4 = b2 * b2, c2 * c2
    return Degree8Poly((
        1.0,
        -8.0,
        3.0 * b2 - 3.0 * c2 + 17.0,
        -2.0 * (b2 - c2 + 5.0),
        -0.25 * (3.0 * b4 - 6.0 * b2 * c2 + 3.0 * c4 + 38.0 * b2 - 24.0 * c2 + 17.0),
        b4 - 2.0 * b2 * c2 + c4 + 12.0 * b2 - 6.0 * c2 + 5.0,
        0.25 * (4.0 * b4 - 5.0 * b2 * c2 + c4 - 7.0 * b2 - 1.0),
        -0.5 * (4.0 * b4 - 5.0 * b2 * c2 + c4 + 5.0 * b2 - 2.0 * c2 + 1.0),
        0.75 * b4 - 0.75 * b2 * c2 + 0.75 * b2 - 0.125 * c2 + c4 / 16.0 + 1.0 / 16.0,
    ))


def bernoulli_eq1_residual(xb: float, yb: float) -> float:
    """Bernoulli's first (area) equation under a=1, in his variables."""
    return yb * yb - (4.0 * yb - 4.0 * xb * yb - 2.5 + 4.0 * xb - xb * xb)


def bernoulli_eq2_residual(xb: float, yb: float, h: float, ht: float,
                           sign_f: int = +1, sign_e: int = -1) -> float:
    """Bernoulli's second (perpendicularity) equation under a=1.

    The branch that reproduces Peq is (+) on the a*f/2 term and (-) on the
    2*a*e term; the other sign choices are kept selectable so the resolution
    is testable.
    """
    den = 4.0 * xb * xb + sign_e * 2.0 * (1.0 - h)
    return yb * yb - (sign_f * 0.5 * h + ht * ht / den)


@dataclass(frozen=True)
class RootMatch:
    root: float              # normalized polynomial root (his x)
    solver_value: float      # matching solver coordinate, normalized
    original_units: float    # root scaled by the base side a
    error: float
    solver_coordinate: str   # 'x' or 'y' of the direct solver


@dataclass(frozen=True)
class HistoricalResult:
    method: str
    roots: tuple[float, ...]
    matches: tuple[RootMatch, ...]
    extraneous: tuple[float, ...]
    residuals: tuple[float, ...]
    quadrisection_count: int
    notes: tuple[str, ...] = field(default_factory=tuple)


def _base_side_values(t: TriangleSpec):
    """Solver foot coordinates on the base side V1V2, as 'his x' values.

    The canonical placement may have swapped the base ends to keep h >= 1/2;
    his x counts from the C end of the base (vertex V2), which is the
    canonical B when unswapped, so his x is the solver's y, else its x.
    """
    vals = []
    for q in enumerate_quadrisections(t):
        if set(q.base_vertex_indices) != {0, 1}:
            continue
        if q.base_vertex_indices == (0, 1):
            vals.append((q.solution.y, "y"))
        else:
            vals.append((q.solution.x, "x"))
    return vals


def bernoulli_compare(t: TriangleSpec, match_tol: float = 1e-6) -> HistoricalResult:
    """Solve Bernoulli's polynomial for the triangle and match the real roots
    in the admissible interval against the direct solver.

    The triangle's first side is the base a = AC; extraneous real roots (from
    the eliminated branch) are reported separately and must not match solver
    output.
    """
    a, b, c = t.sides
    poly = bernoulli_polynomial(b / a, c / a)
    roots = poly.real_roots()
    admissible = [r for r in roots if XMIN - 1e-9 < r < XMAX + 1e-9]
    solver_vals = _base_side_values(t)

    matches = []
    matched_roots = set()
    for val, coord in solver_vals:
        best = min(admissible, key=lambda r: abs(r - val), default=None)
        if best is not None and abs(best - val) <= match_tol:
            matched_roots.add(best)
            matches.append(RootMatch(root=best, solver_value=val,
                                     original_units=best * a,
                                     error=abs(best - val), solver_coordinate=coord))
    extraneous = tuple(r for r in roots if r not in matched_roots)
    residuals = tuple(abs(poly(val)) for val, _ in solver_vals)
    count = len(enumerate_quadrisections(t))
    notes = tuple(
        f"root {m.root:.9f} (= {m.original_units:.4f} in original units) matches "
        f"the solver's {m.solver_coordinate} coordinate" for m in matches)
    return HistoricalResult(method="bernoulli", roots=tuple(roots),
                            matches=tuple(matches), extraneous=extraneous,
                            residuals=residuals, quadrisection_count=count,
                            notes=notes)


@dataclass(frozen=True)
class EulerParams:
    """f = cot(alpha), g = cot(beta), ksq = triangle area; t = tan(phi) is
    the unknown."""

    f: float
    g: float
    ksq: float
    t: float | None = None


def euler_params(t: TriangleSpec) -> EulerParams:
    ct = canonicalize(t)
    area = 0.5 * abs(
        (t.vertices[1].x - t.vertices[0].x) * (t.vertices[2].y - t.vertices[0].y)
        - (t.vertices[1].y - t.vertices[0].y) * (t.vertices[2].x - t.vertices[0].x))
    return EulerParams(f=ct.h / ct.ht, g=(1.0 - ct.h) / ct.ht, ksq=area)


def euler_residual(t: float, p: EulerParams) -> float:
    """LHS - RHS of Euler's equation
    sqrt(f + 1/t) + sqrt(g + t) - sqrt(2(f+g)) = sqrt((1 + t^2)/(2t))."""
    if t <= 0.0:
        raise ValueError(f"t must be positive, got {t}")
    r1 = p.f + 1.0 / t
    r2 = p.g + t
    if r1 < 0.0 or r2 < 0.0:
        raise ValueError(f"negative radicand at t={t}: f+1/t={r1}, g+t={r2}")
    return (math.sqrt(r1) + math.sqrt(r2) - math.sqrt(2.0 * (p.f + p.g))
            - math.sqrt((1.0 + t * t) / (2.0 * t)))


def _euler_scan_roots(p: EulerParams) -> list[float]:
    ts = np.geomspace(T_SCAN_MIN, T_SCAN_MAX, T_SCAN_POINTS)
    ok = (p.f + 1.0 / ts >= 0.0) & (p.g + ts >= 0.0)
    vals = np.full_like(ts, np.nan)
    vt = ts[ok]
    vals[ok] = (np.sqrt(p.f + 1.0 / vt) + np.sqrt(p.g + vt)
                - math.sqrt(2.0 * (p.f + p.g)) - np.sqrt((1.0 + vt * vt) / (2.0 * vt)))
    roots = []
    for i in range(len(ts) - 1):
        va, vb = vals[i], vals[i + 1]
        if math.isnan(va) or math.isnan(vb) or va * vb > 0.0:
            continue
        a, b, fa = float(ts[i]), float(ts[i + 1]), float(va)
        while b - a > 1e-14 * max(1.0, a):
            m = 0.5 * (a + b)
            fm = euler_residual(m, p)
            if fa * fm <= 0.0:
                b = m
            else:
                a, fa = m, fm
        roots.append(0.5 * (a + b))
    return roots


def euler_solve(t: TriangleSpec, match_tol: float = 1e-8) -> HistoricalResult:
    """Solve Euler's equation for tan(phi) and recover the foot distances.

    Roots are bracketed on a logarithmic scan of (0, 64]; each admitted root
    yields x = k sqrt(f + 1/t), y = k sqrt(g + t) in original units, filtered
    to the admissible base-coordinate range and compared against the direct
    solver's middle-side quadrisection.
    """
    ct = canonicalize(t)
    p = euler_params(t)
    k = math.sqrt(p.ksq)
    scale = ct.transform.scale
    roots = _euler_scan_roots(p)

    quads = enumerate_quadrisections(t)
    middle = [q for q in quads if q.base_placement == "middle"]

    matches, admitted, residuals = [], [], []
    notes = []
    for tv in roots:
        x = k * math.sqrt(p.f + 1.0 / tv)
        y = k * math.sqrt(p.g + tv)
        xn, yn = x / scale, y / scale
        if not (XMIN - 1e-9 <= xn <= XMAX + 1e-9 and XMIN - 1e-9 <= yn <= XMAX + 1e-9):
            notes.append(f"root t={tv:.6g} rejected: feet ({xn:.6f}, {yn:.6f}) "
                         "outside the admissible range")
            continue
        admitted.append(tv)
        residuals.append(abs(euler_residual(tv, p)))
        for q in middle:
            if abs(q.solution.x - xn) <= match_tol and abs(q.solution.y - yn) <= match_tol:
                matches.append(RootMatch(root=tv, solver_value=q.solution.x,
                                         original_units=x,
                                         error=abs(q.solution.x - xn),
                                         solver_coordinate="x"))
                break
    notes.append(f"x = {matches[0].original_units:.5f}" if matches
                 else "no admitted root matched the solver")
    return HistoricalResult(method="euler", roots=tuple(admitted),
                            matches=tuple(matches), extraneous=tuple(
                                r for r in roots if r not in admitted),
                            residuals=tuple(residuals),
                            quadrisection_count=len(quads), notes=tuple(notes))
