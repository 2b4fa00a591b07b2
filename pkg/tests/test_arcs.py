import math

import numpy as np
import pytest

from quadrisect.arcs import (
    I1_POINT,
    I2_POINT,
    I2_REFLECTION,
    J0_XMIN,
    Membership,
    Sheet,
    TheoremCase,
    arc_data,
    arc_incidence_residual,
    c_of_x,
    c_prime,
    count_via_theorem,
    envelope_point,
    fold_theta,
    in_FD2,
    j0_point,
    jacobian_F,
    map_F,
    membership_report,
    r_of_x,
    r_prime,
    s2_point,
    sheet_of,
    special_triangles,
)
from quadrisect.geometry import (
    TriangleSpec,
    invert_point,
    triangle_angles,
    triangle_from_apex,
)
from quadrisect.solver import XMAX, XMIN, peq_residual

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


class TestArcData:
    @pytest.mark.parametrize("x,c,r,theta,term", [
        (SQRT2 / 2, 0.0, 1.0, math.pi / 3, (0.5, SQRT3 / 2)),
        (5 / 6, 0.5, 8 / 9, math.pi / 2, (0.5, 8 / 9)),
        (1.0, 1.0, 1.0, 2 * math.pi / 3, (0.5, SQRT3 / 2)),
    ])
    def test_table(self, x, c, r, theta, term):
        ad = arc_data(x)
        assert ad.c == pytest.approx(c, abs=1e-12)
        assert ad.r == pytest.approx(r, abs=1e-12)
        assert ad.theta_end == pytest.approx(theta, abs=1e-12)
        assert ad.terminal == pytest.approx(term, abs=1e-12)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            arc_data(0.6)

    def test_radius_positive_everywhere(self):
        for x in np.linspace(XMIN, XMAX, 200):
            assert r_of_x(float(x)) > 0.3


class TestMapF:
    def test_terminal_values(self):
        assert map_F(SQRT2 / 2, math.pi / 3) == pytest.approx((0.5, SQRT3 / 2), abs=1e-12)
        assert map_F(5 / 6, math.pi / 2) == pytest.approx((0.5, 8 / 9), abs=1e-12)

    def test_theta_zero_on_axis(self):
        for x in (0.75, 0.9):
            p = map_F(x, 0.0)
            assert p.y == 0.0
            assert p.x == pytest.approx(c_of_x(x) + r_of_x(x), abs=1e-14)

    def test_rejects_outside_domain(self):
        with pytest.raises(ValueError):
            map_F(0.75, 3.0)

    def test_arc_identity_ties_back_to_peq(self):
        # every arc point solves the perpendicularity equation at its own x
        for x in np.linspace(XMIN, XMAX, 100):
            end = arc_data(float(x)).theta_end
            for theta in np.linspace(0.0, end, 20)[1:]:
                h, ht = map_F(float(x), float(theta))
                if ht <= 0:
                    continue
                assert abs(peq_residual(float(x), h, ht)) <= 1e-10

    def test_terminal_abscissa_is_half(self):
        for x in np.linspace(XMIN, XMAX, 100):
            p = map_F(float(x), arc_data(float(x)).theta_end)
            assert p.x == pytest.approx(0.5, abs=1e-12)


class TestJacobianAndFold:
    def test_fold_examples(self):
        p = j0_point(5 / 6)
        assert p.theta == pytest.approx(math.pi / 2, abs=1e-9)
        p1 = j0_point(1.0)
        assert p1.theta == pytest.approx(math.acos(1.0 - SQRT2), abs=1e-12)
        mid = j0_point(0.95)
        assert p.theta < mid.theta < p1.theta

    def test_restricted_domain(self):
        with pytest.raises(ValueError):
            j0_point(0.8)

    def test_jacobian_vanishes_on_fold(self):
        for x in np.linspace(J0_XMIN, XMAX, 50):
            p = j0_point(float(x))
            assert abs(jacobian_F(p.x, p.theta)) <= 1e-9

    def test_jacobian_sign_split(self):
        # positive on the D1 side (theta below the fold), negative on D2
        assert jacobian_F(0.9, 0.3) > 0
        tj = fold_theta(0.9)
        end = arc_data(0.9).theta_end
        assert jacobian_F(0.9, 0.5 * (tj + end)) < 0

    def test_sheets(self):
        assert sheet_of(0.9, 0.3) is Sheet.D1
        assert sheet_of(0.9, fold_theta(0.9)) is Sheet.J0
        end = arc_data(0.9).theta_end
        assert sheet_of(0.9, 0.5 * (fold_theta(0.9) + end)) is Sheet.D2
        assert sheet_of(0.75, arc_data(0.75).theta_end) is Sheet.D1

    def test_closed_form_derivatives(self):
        eps = 1e-6
        for x in np.linspace(XMIN + 2 * eps, XMAX - 2 * eps, 60):
            x = float(x)
            fd_c = (c_of_x(x + eps) - c_of_x(x - eps)) / (2 * eps)
            fd_r = (r_of_x(x + eps) - r_of_x(x - eps)) / (2 * eps)
            assert c_prime(x) == pytest.approx(fd_c, abs=1e-6)
            assert r_prime(x) == pytest.approx(fd_r, abs=1e-6)


class TestEnvelope:
    def test_endpoints(self):
        assert envelope_point(5 / 6) == pytest.approx((0.5, 8 / 9), abs=1e-12)
        p1 = envelope_point(1.0)
        assert p1 == pytest.approx((2.0 - SQRT2, math.sqrt(2 * SQRT2 - 2)), abs=1e-12)
        assert p1 == pytest.approx((0.58579, 0.91018), abs=1e-5)

    def test_i1_is_isosceles(self):
        p = envelope_point(1.0)
        assert (p.x - 1.0) ** 2 + p.y**2 == pytest.approx(1.0, abs=1e-12)

    def test_tangency_double_root(self):
        # at an envelope point the incidence residual has |g| and |g'| tiny
        eps = 1e-7
        for x in np.linspace(J0_XMIN + 0.01, XMAX - 0.01, 20):
            x = float(x)
            h, ht = envelope_point(x)
            g0 = arc_incidence_residual(x, h, ht)
            gp = (arc_incidence_residual(x + eps, h, ht)
                  - arc_incidence_residual(x - eps, h, ht)) / (2 * eps)
            assert abs(g0) <= 1e-7
            assert abs(gp) <= 1e-7

    def test_s2_endpoints(self):
        assert s2_point(5 / 6) == pytest.approx(tuple(I2_REFLECTION), abs=1e-12)
        assert s2_point(1.0) == pytest.approx(tuple(I1_POINT), abs=1e-12)


class TestSpecialTriangles:
    def test_points(self):
        st = special_triangles()
        assert st["I2"] == pytest.approx((0.5, 8 / 9), abs=1e-14)
        assert st["I2_reflection"] == pytest.approx((175 / 337, 288 / 337), abs=1e-14)
        assert st["I1"] == pytest.approx(tuple(I1_POINT), abs=1e-12)

    def test_inversion_links_i2_points(self):
        q = invert_point(I2_POINT, (1.0, 0.0), 1.0)
        assert q == pytest.approx(tuple(I2_REFLECTION), abs=1e-12)

    def test_apex_angles(self):
        from quadrisect.geometry import placements
        st = special_triangles()
        # I2 apex at C of the (1/2, 8/9) placement
        pls = placements(triangle_from_apex(*st["I2"]))
        ct = next(p for p in pls if abs(p.h - 0.5) < 1e-9)
        assert math.degrees(triangle_angles(ct).gamma) == pytest.approx(58.72, abs=0.02)
        # I1 apex at B (equal sides AB and CB)
        pls = placements(triangle_from_apex(*st["I1"]))
        ct = next(p for p in pls if abs(p.h - st["I1"].x) < 1e-9)
        assert math.degrees(triangle_angles(ct).beta) == pytest.approx(65.53, abs=0.02)


class TestMembership:
    def test_equilateral_inside(self):
        assert in_FD2((0.5, SQRT3 / 2)) is Membership.INSIDE

    def test_i2_on_envelope(self):
        # the envelope membership belongs to the inverted apex (1/2, 8/9);
        # its triangle-space twin (175/337, 288/337) sits on a single arc
        assert in_FD2((0.5, 8 / 9)) is Membership.ON_ENVELOPE
        assert in_FD2(tuple(I2_REFLECTION)) is Membership.OUTSIDE

    def test_right_triangle_image_outside(self):
        assert in_FD2((1.0, 2.0)) is Membership.OUTSIDE

    def test_envelope_band_flag(self):
        rep = membership_report((0.5, 8 / 9))
        assert rep.kind is Membership.ON_ENVELOPE
        assert rep.tangent_x == pytest.approx(5 / 6, abs=1e-9)
        assert not rep.boundary_band
        # a point a hair off the envelope classifies as boundary band
        rep2 = membership_report((0.5, 8 / 9 + 1e-9))
        assert rep2.kind is Membership.ON_ENVELOPE
        assert rep2.boundary_band

    def test_mirror_normalization(self):
        mirrored = (1.0 - 0.5, SQRT3 / 2)  # fixed point of the mirror
        assert in_FD2(mirrored) is Membership.INSIDE
        assert in_FD2((2 - SQRT2 - 1e-16, math.sqrt(2 * SQRT2 - 2))) is not None


class TestCounting:
    @pytest.mark.parametrize("apex,count,case", [
        ((0.5, SQRT3 / 2), 3, TheoremCase.CASE1_THREE),
        ((0.5, 8 / 9), 2, TheoremCase.CASE2_TWO),
        ((175 / 337, 288 / 337), 2, TheoremCase.CASE2_TWO),
        ((1.0, 0.5), 1, TheoremCase.CASE3_ONE),
        ((1.0, 0.3), 1, TheoremCase.CASE3_ONE),
        ((1.0, 1.0), 1, TheoremCase.CASE3_ONE),
        ((1.0, 2.0), 1, TheoremCase.CASE3_ONE),
    ])
    def test_named_triangles(self, apex, count, case):
        rep = count_via_theorem(triangle_from_apex(*apex))
        assert rep.count == count
        assert rep.theorem_case is case
        assert rep.oracle_count == count

    def test_i1_exception(self):
        rep = count_via_theorem(triangle_from_apex(*I1_POINT))
        assert rep.count == 1
        assert rep.theorem_case is TheoremCase.CASE3_ONE
        assert rep.oracle_count == 1

    def test_b23_isosceles_split_by_i1(self):
        near = triangle_from_apex(0.52, math.sqrt(0.52 * (2 - 0.52)))
        far = triangle_from_apex(0.7, math.sqrt(0.7 * 1.3))
        assert count_via_theorem(near).count == 3
        assert count_via_theorem(far).count == 1

    def test_per_placement_roots(self):
        rep = count_via_theorem(TriangleSpec.from_sides(3, 4, 5))
        assert rep.per_placement_roots == {"shortest": 0, "middle": 1, "longest": 0}

    def test_sides_equivalent_to_apex(self):
        rep = count_via_theorem(TriangleSpec.from_sides(1, 1, 1))
        assert rep.count == 3 and rep.oracle_count == 3

    def test_theorem_matches_oracle_on_samples(self, rng, upsilon_sampler):
        for h, ht in upsilon_sampler(rng, 60):
            rep = count_via_theorem(triangle_from_apex(h, ht))
            assert rep.count == rep.oracle_count, (h, ht, rep)
