"""Acceptance suite: one test per criterion, printing a pass line each.

Run with ``pytest tests/test_acceptance.py -v -s`` for the per-criterion
report.  Criterion 8 carries three assertions; the quoted check value
p(386/484)*484 = 2.85 for Bernoulli's worked example is not reproducible
from the degree-8 polynomial as printed (exact rational evaluation gives
-0.17821), so test_criterion_08_bernoulli_check_value fails by design and
documents the discrepancy.  The corrected root 368.86 and the solver
cross-check (the other two assertions of criterion 8) hold.
"""

import math

import numpy as np

from quadrisect.arcs import (
    J0_XMIN,
    arc_data,
    arc_incidence_residual,
    c_of_x,
    c_prime,
    count_via_theorem,
    envelope_point,
    j0_point,
    jacobian_F,
    r_of_x,
    r_prime,
    s2_point,
)
from quadrisect.atlas import classify_grid
from quadrisect.geometry import (
    TriangleSpec,
    triangle_from_apex,
    upsilon_contains,
)
from quadrisect.historical import bernoulli_compare, bernoulli_polynomial, euler_solve
from quadrisect.solver import (
    XMAX,
    XMIN,
    enumerate_quadrisections,
    solve_base,
    verify_quadrisection,
    y_of_x,
    y_prime,
)
from conftest import sample_upsilon_interior

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


def _pass(n, msg):
    print(f"[criterion {n:02d}] PASS  {msg}")


def test_criterion_01_arc_table():
    expected = [
        (SQRT2 / 2, 0.0, 1.0, math.pi / 3, (0.5, SQRT3 / 2)),
        (5 / 6, 0.5, 8 / 9, math.pi / 2, (0.5, 8 / 9)),
        (1.0, 1.0, 1.0, 2 * math.pi / 3, (0.5, SQRT3 / 2)),
    ]
    for x, c, r, theta, term in expected:
        ad = arc_data(x)
        assert abs(ad.c - c) <= 1e-12
        assert abs(ad.r - r) <= 1e-12
        assert abs(ad.theta_end - theta) <= 1e-12
        assert abs(ad.terminal.x - term[0]) <= 1e-12
        assert abs(ad.terminal.y - term[1]) <= 1e-12
    _pass(1, "arc table at x in {sqrt2/2, 5/6, 1} reproduced to 1e-12")


def test_criterion_02_named_triangle_counts():
    cases = [
        ((0.5, SQRT3 / 2), 3),
        ((1.0, 0.3), 1),
        ((1.0, 0.5), 1),
        ((1.0, 1.0), 1),
        ((0.5, 8 / 9), 2),
        ((175 / 337, 288 / 337), 2),
    ]
    for apex, expected in cases:
        rep = count_via_theorem(triangle_from_apex(*apex))
        assert rep.count == expected, (apex, rep.count)
        assert rep.oracle_count == expected, (apex, rep.oracle_count)
    _pass(2, "counts 3/1/1/1/2/2 on the named triangles, theorem = oracle")


def test_criterion_03_middle_leg_theorem():
    rng = np.random.default_rng(12345)
    pts = sample_upsilon_interior(rng, 1000, margin=1e-3)
    failures = 0
    for h, ht in pts:
        if len(solve_base(h, ht)) != 1:
            failures += 1
            continue
        t = triangle_from_apex(h, ht)
        from quadrisect.geometry import placements
        longest = next(p for p in placements(t) if p.placement == "longest")
        if solve_base(longest.h, longest.ht):
            failures += 1
    assert failures == 0
    _pass(3, "1000 scalene samples: middle side 1 root, longest side 0 roots")


def test_criterion_04_theorem_vs_oracle_grid():
    grid = classify_grid(200)
    s2 = [s2_point(float(x)) for x in np.linspace(J0_XMIN, XMAX, 4097)]
    s2h = np.array([p.x for p in s2])
    s2t = np.array([p.y for p in s2])

    checked = 0
    mismatches = []
    for c in grid.cells:
        if c.boundary:
            continue
        if np.min(np.hypot(s2h - c.h, s2t - c.ht)) <= 1e-6:
            continue
        n = len(enumerate_quadrisections(triangle_from_apex(c.h, c.ht)))
        checked += 1
        if n != c.count:
            mismatches.append((c.h, c.ht, c.count, n))
    assert not mismatches, mismatches[:10]
    assert checked > 20000
    _pass(4, f"200x200 grid: theorem count = enumeration count at "
             f"{checked}/{checked} off-boundary cells")


def test_criterion_05_rational_quadrisection():
    t = triangle_from_apex(0.5, 8 / 9)
    qs = enumerate_quadrisections(t)
    q = next(q for q in qs if abs(q.solution.x - 5 / 6) < 1e-6)
    sol = q.solution
    assert abs(sol.x - 5 / 6) <= 1e-12
    assert abs(sol.y - 5 / 6) <= 1e-12
    assert abs(sol.O.x - 0.5) <= 1e-12 and abs(sol.O.y - 1 / 3) <= 1e-12
    assert abs(sol.P.x - 0.3) <= 1e-12 and abs(sol.P.y - 8 / 15) <= 1e-12
    assert abs(sol.Q.x - 0.7) <= 1e-12 and abs(sol.Q.y - 8 / 15) <= 1e-12
    rep = verify_quadrisection(t, q)
    for a in rep.areas:
        assert abs(a - 1 / 9) <= 1e-12
    _pass(5, "rational quadrisection of (1/2, 8/9): x=y=5/6, O=(1/2,1/3), "
             "areas 1/9, all to 1e-12")


def test_criterion_06_special_apex_angles():
    # I1 independently as the mirror-normalized envelope endpoint F(p(1))
    p = envelope_point(1.0)
    h = p.x if p.x >= 0.5 else 1.0 - p.x
    ht = p.y
    # apex between the equal sides AB and CB, at B
    v1 = (-1.0, 0.0)
    v2 = (h - 1.0, ht)
    cosb = (v1[0] * v2[0] + v1[1] * v2[1]) / math.hypot(*v2)
    i1_deg = math.degrees(math.acos(cosb))
    assert abs(i1_deg - 65.53) <= 0.02
    # I2 apex at C of (1/2, 8/9)
    va = (0.0 - 0.5, 0.0 - 8 / 9)
    vb = (1.0 - 0.5, 0.0 - 8 / 9)
    cosc = (va[0] * vb[0] + va[1] * vb[1]) / (math.hypot(*va) * math.hypot(*vb))
    i2_deg = math.degrees(math.acos(cosc))
    assert abs(i2_deg - 58.72) <= 0.02
    _pass(6, f"apex angles: I1 = {i1_deg:.4f} deg, I2 = {i2_deg:.4f} deg")


def test_criterion_07_euler_reproduction():
    res = euler_solve(TriangleSpec.from_sides(2.0, 1.0, math.sqrt(5.0)))
    assert len(res.matches) == 1
    x = res.matches[0].original_units
    assert abs(x - 1.51443) <= 1e-4
    historical_estimate = 1.5146
    assert abs(historical_estimate - x) > 1e-4
    _pass(7, f"Euler's right triangle: x = {x:.5f}; the 1779 estimate 1.5146 "
             f"deviates by {abs(historical_estimate - x):.2e} > 1e-4")


def test_criterion_08_bernoulli_check_value():
    # quoted check: p(386/484) * 484 = 2.85 within 0.01.  Exact evaluation of
    # the polynomial as printed gives -0.17821; kept as stated, this fails
    # and records the discrepancy (the root assertions below do hold).
    p = bernoulli_polynomial(490 / 484, 495 / 484)
    value = p(386 / 484) * 484
    assert abs(value - 2.85) <= 0.01, (
        f"p(386/484)*484 = {value:.5f}, quoted 2.85 is not reproducible "
        f"from the printed polynomial")
    _pass(8, "Bernoulli check value 2.85 reproduced")


def test_criterion_08_bernoulli_root_and_solver_match():
    p = bernoulli_polynomial(490 / 484, 495 / 484)
    target = 368.86 / 484
    root = min(p.real_roots(), key=lambda r: abs(r - target))
    assert abs(root - target) <= 1e-3

    res = bernoulli_compare(TriangleSpec.from_sides(484.0, 490.0, 495.0))
    match = min(res.matches, key=lambda m: abs(m.original_units - 368.86))
    assert match.error <= 1e-6
    assert abs(match.original_units - 368.86) <= 0.01
    assert res.quadrisection_count == 3
    _pass(8, f"Bernoulli root {match.original_units:.4f} matches the solver "
             f"(error {match.error:.1e}); corrected value 368.86 confirmed")


def test_criterion_09_envelope_and_fold():
    for x in np.linspace(J0_XMIN, XMAX, 50):
        pnt = j0_point(float(x))
        assert abs(jacobian_F(pnt.x, pnt.theta)) <= 1e-9

    eps = 1e-7
    for x in np.linspace(J0_XMIN + 0.01, XMAX - 0.01, 20):
        x = float(x)
        h, ht = envelope_point(x)
        g0 = arc_incidence_residual(x, h, ht)
        gp = (arc_incidence_residual(x + eps, h, ht)
              - arc_incidence_residual(x - eps, h, ht)) / (2 * eps)
        assert abs(g0) <= 1e-7 and abs(gp) <= 1e-7

    fd_eps = 1e-6
    for x in np.linspace(XMIN + 2 * fd_eps, XMAX - 2 * fd_eps, 40):
        x = float(x)
        for fn, dfn in ((y_of_x, y_prime), (c_of_x, c_prime), (r_of_x, r_prime)):
            fd = (fn(x + fd_eps) - fn(x - fd_eps)) / (2 * fd_eps)
            assert abs(dfn(x) - fd) <= 1e-6
    _pass(9, "Jacobian vanishes on the fold (50 pts), envelope tangency "
             "double roots (20 pts), closed-form derivatives match FD")


def test_criterion_10_separating_curve():
    # on-curve: count 2 strictly between the endpoints
    for x in np.linspace(J0_XMIN, XMAX, 22)[1:-1]:
        s = s2_point(float(x))
        rep = count_via_theorem(triangle_from_apex(*s))
        assert rep.count == 2, (s, rep.count)

    # probes 1e-3 towards/away from the equilateral point; the space pinches
    # towards the one-quadrisection endpoint, so probes sample the sub-arc
    # that admits a two-sided 1e-3 band
    E = (0.5, SQRT3 / 2)
    for x in np.linspace(0.84, 0.97, 20):
        s = s2_point(float(x))
        d = (E[0] - s.x, E[1] - s.y)
        n = math.hypot(*d)
        d = (d[0] / n, d[1] / n)
        pin = (s.x + 1e-3 * d[0], s.y + 1e-3 * d[1])
        pout = (s.x - 1e-3 * d[0], s.y - 1e-3 * d[1])
        assert upsilon_contains(*pin) and upsilon_contains(*pout)
        assert count_via_theorem(triangle_from_apex(*pin)).count == 3, pin
        assert count_via_theorem(triangle_from_apex(*pout)).count == 1, pout
    _pass(10, "separating curve: 20 on-curve points count 2; 1e-3 probes "
              "toward/away from equilateral count 3/1")
