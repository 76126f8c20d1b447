"""Normalization, octagon construction, cut lemma, and the case machine."""

import math
import random
from fractions import Fraction as F

import pytest

from circumquad import (
    AreaIdentityViolated,
    CaseId,
    ContactBox,
    ConvexPolygon,
    DomainError,
    HypothesisViolated,
    InconsistentCase,
    LemmaBranch,
    NormalizationViolated,
    Point,
    Quadrilateral,
    TheoremConstants,
    apply_contact_reflections,
    axis_box_with_contacts,
    build_octagon,
    case_machine,
    contains_polygon,
    convex_hull,
    inner_ball_inclusion,
    lemma_octagon_quad,
    min_circumscribed_quadrilateral,
    normalize_to_square,
    outer_ball_check,
    reflection_normalize,
    regular_polygon,
    unit_square,
    zeta,
    zeta_bound,
)
from circumquad.pipeline import _classify_normalized


def box(a1, a2, b1, b2, v1y=F(0), v2x=F(0), w1y=F(0), w2x=F(0)):
    return ContactBox(
        a1=a1, a2=a2, b1=b1, b2=b2,
        v1=Point(a1, v1y), v2=Point(v2x, a2),
        w1=Point(b1, w1y), w2=Point(w2x, b2),
    )


def hull_with_square(contacts):
    return convex_hull(list(unit_square().vertices) + list(contacts.contacts))


class TestContactBox:
    def test_extents(self):
        cb = box(F(-3, 2), F(-5, 4), F(1), F(2))
        assert cb.x == F(5, 2)
        assert cb.y == F(13, 4)
        assert cb.box_area == F(65, 8)

    def test_structural_validation(self):
        with pytest.raises(DomainError):
            ContactBox(
                a1=F(0), a2=F(0), b1=F(-1), b2=F(1),
                v1=Point(F(0), F(0)), v2=Point(F(0), F(0)),
                w1=Point(F(-1), F(0)), w2=Point(F(0), F(1)),
            )
        with pytest.raises(DomainError):
            ContactBox(
                a1=F(-1), a2=F(-1), b1=F(1), b2=F(1),
                v1=Point(F(0), F(0)),  # not on the left edge
                v2=Point(F(0), F(-1)),
                w1=Point(F(1), F(0)), w2=Point(F(0), F(1)),
            )


class TestAxisBox:
    def test_contacts_found(self):
        body = ConvexPolygon(
            [(F(-6, 5), F(0)), (F(0), F(-7, 5)), (F(11, 10), F(0)), (F(0), F(6, 5))]
        )
        cb = axis_box_with_contacts(body)
        assert cb.a1 == F(-6, 5) and cb.b1 == F(11, 10)
        assert cb.v1 == Point(F(-6, 5), F(0))
        assert cb.w2 == Point(F(0), F(6, 5))

    def test_tie_break_minimizes_other_coordinate(self):
        # Two vertices share the maximal x; the one with smaller |y| wins.
        body = ConvexPolygon(
            [
                (F(-2), F(0)),
                (F(0), F(-2)),
                (F(1), F(-3, 4)),
                (F(1), F(1, 4)),
                (F(0), F(2)),
            ]
        )
        cb = axis_box_with_contacts(body)
        assert cb.w1 == Point(F(1), F(1, 4))

    def test_tie_break_prefers_negative_on_abs_tie(self):
        body = ConvexPolygon(
            [
                (F(-2), F(0)),
                (F(0), F(-2)),
                (F(1), F(-1, 2)),
                (F(1), F(1, 2)),
                (F(0), F(2)),
            ]
        )
        cb = axis_box_with_contacts(body)
        assert cb.w1 == Point(F(1), F(-1, 2))

    def test_box_must_cover_square(self):
        small = ConvexPolygon([(F(-1), F(-1)), (F(1), F(-1)), (F(0), F(1, 2))])
        with pytest.raises(NormalizationViolated):
            axis_box_with_contacts(small)


class TestBuildOctagon:
    def test_area_identity_exact(self):
        cb = box(
            F(-6, 5), F(-11, 10), F(7, 5), F(13, 10),
            v1y=F(1, 3), v2x=F(1, 7), w1y=F(-2, 5), w2x=F(3, 8),
        )
        body = hull_with_square(cb)
        scene = build_octagon(body, cb)
        assert scene.octagon_area == cb.x + cb.y
        assert contains_polygon(scene.body, scene.octagon)

    def test_contacts_on_square_edges_degenerate_to_square(self):
        cb = box(F(-1), F(-1), F(1), F(1))
        body = unit_square()
        scene = build_octagon(body, cb)
        assert scene.octagon_area == 4
        assert len(scene.octagon) == 4

    def test_identity_violation_detected(self):
        # Off-axis contact coordinate beyond the square breaks |O| = x + y.
        cb = box(F(-3, 2), F(-3, 2), F(3, 2), F(3, 2), v1y=F(5, 4))
        body = hull_with_square(cb)
        with pytest.raises(AreaIdentityViolated):
            build_octagon(body, cb)

    def test_octagon_escaping_body_detected(self):
        cb = box(F(-3, 2), F(-3, 2), F(3, 2), F(3, 2))
        slim = ConvexPolygon(
            [(F(-3, 2), F(0)), (F(0), F(-3, 2)), (F(3, 2), F(0)), (F(0), F(3, 2))]
        )
        with pytest.raises(NormalizationViolated):
            build_octagon(slim, cb)


class TestReflections:
    def test_normalization_makes_left_bottom_shallow(self):
        cb = box(F(-7, 4), F(-1), F(1), F(8, 5), w1y=F(1, 3))
        normed, flags = reflection_normalize(cb)
        assert flags == (True, False)
        assert -normed.a1 <= normed.b1
        assert -normed.a2 <= normed.b2
        # the deep left contact became the right contact, mirrored
        assert normed.w1 == Point(F(7, 4), F(0))
        assert normed.v1 == Point(F(-1), F(1, 3))

    def test_double_application_is_identity(self):
        cb = box(F(-7, 4), F(-6, 5), F(1), F(8, 5), v1y=F(-1, 3), w2x=F(2, 7))
        for fx in (False, True):
            for fy in (False, True):
                twice = apply_contact_reflections(
                    apply_contact_reflections(cb, fx, fy), fx, fy
                )
                assert twice == cb


class TestLemma:
    C, D = F(3), F(1, 10)

    def base(self, w1y=F(0), w2x=F(0)):
        return box(F(-3, 2), F(-3, 2), F(3, 2), F(3, 2), w1y=w1y, w2x=w2x)

    def test_u_top_frozen(self):
        quad, branch = lemma_octagon_quad(self.base(w1y=F(-1, 2)), self.C, self.D)
        assert branch is LemmaBranch.U_TOP
        assert quad.area == F(35, 4)
        assert set(quad.vertices) == {
            Point(F(-3, 2), F(-3, 2)),
            Point(F(11, 6), F(-3, 2)),
            Point(F(1), F(3, 2)),
            Point(F(-3, 2), F(3, 2)),
        }

    def test_branch_selection(self):
        cases = [
            (F(-1, 2), F(0), LemmaBranch.U_TOP),
            (F(1, 2), F(0), LemmaBranch.U_BOTTOM),
            (F(0), F(-1, 2), LemmaBranch.U_RIGHT),
            (F(0), F(1, 2), LemmaBranch.U_LEFT),
            (F(0), F(0), LemmaBranch.MIDPOINT_CASE),
        ]
        for w1y, w2x, want in cases:
            quad, branch = lemma_octagon_quad(self.base(w1y, w2x), self.C, self.D)
            assert branch is want
            hull = hull_with_square(self.base(w1y, w2x))
            assert contains_polygon(quad, hull)

    def test_band_edges_go_to_midpoint_case(self):
        # w1_y exactly on the band boundary (inclusive band).
        lo = F(-3, 2) + (F(1, 2) - self.D) * self.C
        _, branch = lemma_octagon_quad(self.base(w1y=lo), self.C, self.D)
        assert branch is LemmaBranch.MIDPOINT_CASE

    def test_midpoint_case_frozen_corner(self):
        quad, branch = lemma_octagon_quad(self.base(), self.C, self.D)
        assert branch is LemmaBranch.MIDPOINT_CASE
        assert quad.area == zeta(self.C, self.D, F(-3, 2)) == F(5451, 580)
        assert Point(F(111, 58), F(201, 290)) in quad.vertices

    def test_area_never_exceeds_lemma_bound(self):
        corner_peak = self.C * (self.C * (1 + self.D) + 2 * self.D) / (1 + 2 * self.D)
        bound = max(corner_peak, zeta_bound(self.C, self.D))
        rng = random.Random(77)
        for _ in range(100):
            w1y = F(rng.randrange(-100, 101), 100)
            w2x = F(rng.randrange(-100, 101), 100)
            quad, _ = lemma_octagon_quad(self.base(w1y, w2x), self.C, self.D)
            assert quad.area <= bound

    def test_hypothesis_violations_are_named(self):
        bad = box(F(-3, 2), F(-3, 2), F(3, 2), F(3, 2), w1y=F(5, 4))
        with pytest.raises(HypothesisViolated, match="w1_y"):
            lemma_octagon_quad(bad, self.C, self.D)
        wide = box(F(-3, 2), F(-3, 2), F(2), F(3, 2))
        with pytest.raises(HypothesisViolated, match="b1 - a1"):
            lemma_octagon_quad(wide, self.C, self.D)
        unreflected = box(F(-3, 2), F(-3, 2), F(11, 10), F(3, 2))
        with pytest.raises(HypothesisViolated, match="-a1 <= b1"):
            lemma_octagon_quad(unreflected, self.C, self.D)
        shallow = box(F(-1, 2), F(-3, 2), F(3, 2), F(3, 2))
        with pytest.raises(HypothesisViolated, match="a1 <= -1"):
            lemma_octagon_quad(shallow, self.C, self.D)

    def test_parameter_domain(self):
        with pytest.raises(DomainError):
            lemma_octagon_quad(self.base(), F(2), self.D)
        with pytest.raises(DomainError):
            lemma_octagon_quad(self.base(), self.C, F(1, 5))

    def test_tolerance_admits_slightly_violating_floats(self):
        cb = box(-1.5, -1.5, 1.5, 1.5 + 1e-12)
        quad, _ = lemma_octagon_quad(cb, 3.0, 0.1, tol=1e-9)
        assert quad.area == pytest.approx(float(F(5451, 580)), rel=1e-9)


class TestNormalization:
    def test_square_body_normalizes_to_diamond_frame(self):
        sq = ConvexPolygon([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
        quad, _ = min_circumscribed_quadrilateral(sq)
        scene, m = normalize_to_square(sq.to_float(), quad)
        # Normalized quadrilateral has area 8 (twice the unit square's 4).
        norm_quad_area = float(
            Quadrilateral(tuple(m.apply(v) for v in quad.vertices)).area
        )
        assert norm_quad_area == pytest.approx(8.0, rel=1e-9)
        cb = axis_box_with_contacts(scene.body, tol=1e-8)
        assert float(cb.x) == pytest.approx(4.0, rel=1e-9)
        assert float(cb.y) == pytest.approx(4.0, rel=1e-9)

    def test_exact_rational_normalization(self):
        # Kite with known midpoint parallelogram: exact arithmetic end to end.
        quad = Quadrilateral(
            (Point(F(3), F(0)), Point(F(0), F(2)), Point(F(-3), F(0)), Point(F(0), F(-2)))
        )
        body = ConvexPolygon(
            [(F(3), F(0)), (F(0), F(2)), (F(-3), F(0)), (F(0), F(-2))]
        )
        scene, m = normalize_to_square(body, quad)
        assert scene.body.is_exact
        norm_quad = Quadrilateral(tuple(m.apply(v) for v in quad.vertices))
        assert norm_quad.area == 8


class TestBalls:
    def test_outer_ball_kite(self):
        eps = F(1, 100)
        q = Quadrilateral(
            (
                Point(F(3, 2), F(-1) + eps),
                Point(F(1, 2), F(3) - eps),
                Point(F(-5, 2), F(-1) + eps),
                Point(F(1, 2), F(-1) - eps),
            )
        )
        assert outer_ball_check(q)
        far = Quadrilateral(
            (Point(F(4), F(0)), Point(F(0), F(1)), Point(F(-1), F(0)), Point(F(0), F(-1)))
        )
        assert not far.degenerate_triangle
        assert not outer_ball_check(far)
        assert outer_ball_check(far, tol=2)

    def test_inner_ball_inclusion_exact(self):
        small, hull, ball = inner_ball_inclusion(Point(F(2), F(1)), F(2), F(1))
        assert contains_polygon(hull, small)
        assert contains_polygon(ball, small)

    def test_inner_ball_zero_radius(self):
        small, hull, ball = inner_ball_inclusion(Point(F(2), F(1)), F(2), F(0))
        assert len(small) == 1
        assert len(ball) == 1

    def test_inner_ball_domain(self):
        with pytest.raises(DomainError):
            inner_ball_inclusion(Point(F(3), F(0)), F(2), F(1))
        with pytest.raises(DomainError):
            inner_ball_inclusion(Point(F(1), F(0)), F(2), F(4))


class TestCaseMachine:
    def test_square_is_box_large(self):
        rep = case_machine(ConvexPolygon([(0, 0), (1, 0), (1, 1), (0, 1)]))
        assert rep.case_id is CaseId.BOX_LARGE
        assert rep.empirical_ratio == pytest.approx(1.0, abs=1e-9)
        assert rep.details["box_area"] == pytest.approx(16.0, rel=1e-6)

    def test_triangle_case(self):
        rep = case_machine(ConvexPolygon([(0, 0), (2, 0), (0.6, 1.7)]))
        assert rep.case_id is CaseId.DEGENERATE_TRIANGLE
        assert rep.certified_factor == pytest.approx(1 / math.sqrt(2), abs=1e-15)

    def test_disk_exceeds_octagon(self):
        rep = case_machine(regular_polygon(64))
        assert rep.case_id is CaseId.BODY_EXCEEDS_OCTAGON
        assert rep.details["max_octagon_gap"] > 0.05

    def test_factor_below_theorem_margin(self):
        for body in (
            ConvexPolygon([(0, 0), (1, 0), (1, 1), (0, 1)]),
            regular_polygon(16),
        ):
            rep = case_machine(body)
            assert rep.certified_factor <= 1 - 2.6e-7

    def test_report_has_witness_and_map(self):
        rep = case_machine(regular_polygon(7))
        assert rep.witness.is_proper
        assert "normalizing_map" in rep.details


class TestClassifier:
    """Drive the case ladder directly with synthetic normalized bodies."""

    CONSTS = TheoremConstants()

    def octagon_body(self, ax, ay, bx, by):
        cb = box(F(-ax), F(-ay), F(bx), F(by))
        return hull_with_square(cb).to_float()

    def test_skewed_box_case(self):
        # x = 2.9, y = 2.7: box area 7.83 <= 8*c1 but x > c2 * y.
        body = self.octagon_body(F(29, 20), F(27, 20), F(29, 20), F(27, 20))
        case_id, factor, details = _classify_normalized(body, self.CONSTS, 1e-8)
        assert case_id is CaseId.BOX_SKEWED
        assert factor == pytest.approx(self.CONSTS.case_factors()[1])

    def test_octagon_improved_case(self):
        s = F(1414, 1000)
        body = self.octagon_body(s, s, s, s)
        case_id, factor, details = _classify_normalized(body, self.CONSTS, 1e-8)
        assert case_id is CaseId.OCTAGON_IMPROVED
        assert details["lemma_branch"] is LemmaBranch.MIDPOINT_CASE
        assert (1 + self.CONSTS.r_value()) ** 2 * details["cut_quad_area"] < 8

    def test_box_large_case(self):
        body = self.octagon_body(F(2), F(2), F(2), F(2))
        case_id, _, _ = _classify_normalized(body, self.CONSTS, 1e-8)
        assert case_id is CaseId.BOX_LARGE

    def test_inconsistent_case_raises_with_bloated_cut(self):
        # A legitimate hugging configuration but with c3 large enough that
        # the cut quadrilateral cannot beat area 8.
        s = F(1414, 1000)
        body = self.octagon_body(s, s, s, s)
        bad = TheoremConstants(c3=F(7, 2))
        with pytest.raises(InconsistentCase):
            _classify_normalized(body, bad, 1e-8)
