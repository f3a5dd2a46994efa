import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_rational
from oracles import bernstein_table, constrained_lsq, direct_rational, jacobi_rule, rational_taylor
from ratbez import (ApproximationRequest, BezierCurve, CompositeCurve, ConstraintSpec, JacobiWeight,
                    RationalBezierCurve, ValidationError, approximate, approximate_composite, degree_elevate,
                    l2_error, max_error, poly_eval, rational_eval, subdivide)
from ratbez.approximator import (boundary_control_points, endpoint_rho, inner_control_points,
                                 split_segments)
from ratbez.bezier import endpoint_derivative
from ratbez.chebyshev import rational_moments
from ratbez.dual import build_ctable


def run(curve, m, k=0, l=0, a=0.0, b=0.0, **kw):
    return approximate(ApproximationRequest(curve, m, ConstraintSpec(k, l), JacobiWeight(a, b)), **kw)


def weighted_norm(curve, a, b, npts=500):
    t, w = jacobi_rule(npts, a, b)
    R = rational_eval(curve, t)
    return math.sqrt(np.sum(w * np.sum(R**2, axis=1)))


class TestEndpointRho:
    def test_values(self, closed8):
        np.testing.assert_array_equal(endpoint_rho(closed8, "left", 0)[0], closed8.control_points[0])
        np.testing.assert_array_equal(endpoint_rho(closed8, "right", 0)[0], closed8.control_points[-1])

    def test_first_derivative_formula(self, open9):
        n, w, r = open9.degree, open9.weights, open9.control_points
        expected = n * w[1] / w[0] * (r[1] - r[0])
        np.testing.assert_allclose(endpoint_rho(open9, "left", 1)[1], expected, rtol=1e-14)

    @pytest.mark.parametrize("end", ["left", "right"])
    def test_first_derivative_finite_difference(self, open9, end):
        h = 1e-6
        t0 = 0.0 if end == "left" else 1.0
        # central difference; the homogeneous scheme extrapolates just past the ends
        fd = (rational_eval(open9, t0 + h) - rational_eval(open9, t0 - h)) / (2 * h)
        got = endpoint_rho(open9, end, 1)[1]
        assert np.linalg.norm(got - fd) <= 1e-5 * np.linalg.norm(got)

    @pytest.mark.parametrize("end", ["left", "right"])
    def test_equal_weights_give_polynomial_derivatives(self, rng, end):
        pts = rng.uniform(-5, 5, (7, 2))
        curve = RationalBezierCurve(pts, np.full(7, 3.0))
        rho = endpoint_rho(curve, end, 6)
        for i in range(7):
            np.testing.assert_allclose(rho[i], endpoint_derivative(BezierCurve(pts), end, i), rtol=1e-12, atol=1e-9)

    @pytest.mark.parametrize("end", ["left", "right"])
    def test_matches_exact_series(self, rng, end):
        for _ in range(5):
            curve = random_rational(rng, int(rng.integers(2, 8)))
            q = curve.degree
            ref = rational_taylor(curve.control_points, curve.weights, q, end)
            got = endpoint_rho(curve, end, q)
            scale = np.maximum(np.linalg.norm(ref, axis=1), 1.0)
            assert np.max(np.linalg.norm(got - ref, axis=1) / scale) < 1e-11

    def test_order_above_degree(self, closed8):
        with pytest.raises(ValidationError):
            endpoint_rho(closed8, "left", closed8.degree + 1)

    def test_empty(self, closed8):
        assert endpoint_rho(closed8, "left", -1).shape == (0, 2)

    def test_bad_end(self, closed8):
        with pytest.raises(ValidationError):
            endpoint_rho(closed8, "middle", 1)


class TestBoundaryPoints:
    def test_interpolation(self, closed8):
        left, right = boundary_control_points(endpoint_rho(closed8, "left", 0), endpoint_rho(closed8, "right", 0),
                                              10, ConstraintSpec(1, 1))
        np.testing.assert_array_equal(left[0], closed8.control_points[0])
        np.testing.assert_array_equal(right[-1], closed8.control_points[-1])

    def test_second_left_point(self, open9):
        m = 11
        rho0 = endpoint_rho(open9, "left", 1)
        left, _ = boundary_control_points(rho0, np.zeros((0, 2)), m, ConstraintSpec(2, 0), 2)
        np.testing.assert_allclose(left[1], rho0[1] / m + left[0], rtol=1e-15)

    @pytest.mark.parametrize("k,l", [(3, 0), (0, 3), (2, 3)])
    def test_derivatives_reproduced(self, open9, k, l):
        m = 9
        rho0, rho1 = endpoint_rho(open9, "left", k - 1), endpoint_rho(open9, "right", l - 1)
        left, right = boundary_control_points(rho0, rho1, m, ConstraintSpec(k, l), 2)
        p = np.zeros((m + 1, 2))
        p[:k], p[m - l + 1:] = left, right
        curve = BezierCurve(p)
        for i in range(k):
            np.testing.assert_allclose(endpoint_derivative(curve, "left", i), rho0[i], rtol=1e-12)
        for i in range(l):
            np.testing.assert_allclose(endpoint_derivative(curve, "right", i), rho1[i], rtol=1e-12)

    def test_unconstrained(self):
        left, right = boundary_control_points(np.zeros((0, 3)), np.zeros((0, 3)), 5, ConstraintSpec(), 3)
        assert left.shape == (0, 3) and right.shape == (0, 3)


class TestInnerPoints:
    def test_polynomial_input_reproduced(self, rng):
        pts = rng.uniform(-3, 3, (5, 2))
        curve = RationalBezierCurve(pts, np.ones(5))
        for m in (4, 7, 11):
            res = run(curve, m)
            np.testing.assert_allclose(res.approximant.control_points,
                                       degree_elevate(BezierCurve(pts), m - 4).control_points, atol=1e-11)

    def test_small_example_against_normal_equations(self):
        curve = RationalBezierCurve([0.0, 1.0, 0.0], [1.0, 2.0, 1.0])
        m = 3
        t, w = jacobi_rule(200, 0.0, 0.0)
        B = bernstein_table(m, t)
        R = direct_rational(curve.control_points, curve.weights, t)[:, 0]
        # p_0 = p_3 = 0 from the endpoint values; solve for p_1, p_2
        G = (B[1:3] * w) @ B[1:3].T
        rhs = (B[1:3] * w) @ R
        ref = np.linalg.solve(G, rhs)
        res = run(curve, m, 1, 1)
        np.testing.assert_allclose(res.approximant.control_points[1:3, 0], ref, rtol=1e-9)

    def test_rejects_mismatched_table(self, closed8):
        cons, w = ConstraintSpec(1, 1), JacobiWeight()
        table = build_ctable(9, cons, w)
        moments = rational_moments(closed8, 10, cons, w)
        with pytest.raises(ValidationError):
            inner_control_points(closed8, 10, cons, w, table, moments, closed8.control_points[:1],
                                 closed8.control_points[-1:])

    def test_rejects_mismatched_moments(self, closed8):
        cons, w = ConstraintSpec(1, 1), JacobiWeight()
        table = build_ctable(10, cons, w)
        moments = rational_moments(closed8, 9, cons, w)
        with pytest.raises(ValidationError):
            inner_control_points(closed8, 10, cons, w, table, moments, closed8.control_points[:1],
                                 closed8.control_points[-1:])


class TestApproximate:
    def test_constant_curve(self):
        c = np.array([3.0, -2.0])
        curve = RationalBezierCurve(np.tile(c, (6, 1)), [1, 2, 5, 1, 3, 2])
        res = run(curve, 4, 1, 1, with_errors=True)
        np.testing.assert_allclose(res.approximant.control_points, np.tile(c, (5, 1)), atol=1e-12)
        assert res.errors.e_inf < 1e-12 and res.errors.e_2 < 1e-12

    def test_example_closed(self, closed8):
        res = run(closed8, 10, 1, 1, with_errors=True)
        assert res.errors.e_inf == pytest.approx(0.664, rel=1e-2)
        assert res.errors.e_2 == pytest.approx(0.167, rel=1e-2)

    def test_example_open(self, open9):
        res = run(open9, 10, 1, 1, with_errors=True)
        assert res.errors.e_inf == pytest.approx(0.398, rel=1e-2)
        assert res.errors.e_2 == pytest.approx(0.106, rel=1e-2)

    def test_diagnostics(self, closed8):
        res = run(closed8, 10, 1, 1)
        assert res.chebyshev_order >= 32 and res.errors is None
        assert res.rho0.shape == (1, 2) and res.rho1.shape == (1, 2)
        assert res.residual_orthogonality < 1e-8

    def test_polynomial_request_is_promoted(self):
        res = approximate(ApproximationRequest(BezierCurve([[0, 0], [1, 2], [3, 0]]), 3))
        np.testing.assert_allclose(res.approximant(np.linspace(0, 1, 5)),
                                   poly_eval(BezierCurve([[0, 0], [1, 2], [3, 0]]), np.linspace(0, 1, 5)), atol=1e-12)

    def test_all_constrained_degree(self, open9):
        # m = k + l leaves exactly one free control point
        res = run(open9, 4, 2, 2, 0.5, 0.5)
        ref = constrained_lsq(open9.control_points, open9.weights, 4, 2, 2, 0.5, 0.5)
        scale = np.maximum(np.linalg.norm(ref, axis=1), 1.0)
        assert np.max(np.linalg.norm(res.approximant.control_points - ref, axis=1) / scale) < 1e-8

    def test_constraints_beyond_source_degree(self, rng):
        curve = random_rational(rng, 1)
        res = run(curve, 8, 3, 3)
        ref = constrained_lsq(curve.control_points, curve.weights, 8, 3, 3, 0.0, 0.0)
        scale = np.maximum(np.linalg.norm(ref, axis=1), 1.0)
        assert np.max(np.linalg.norm(res.approximant.control_points - ref, axis=1) / scale) < 1e-8

    def test_invalid_requests(self, closed8):
        with pytest.raises(ValidationError):
            ApproximationRequest(closed8, -1)
        with pytest.raises(ValidationError):
            ApproximationRequest(closed8, 3, ConstraintSpec(2, 2))

    @pytest.mark.parametrize("seed", range(6))
    def test_constraint_satisfaction(self, seed):
        rng = np.random.default_rng(seed)
        curve = random_rational(rng, int(rng.integers(2, 8)))
        k, l = int(rng.integers(0, 4)), int(rng.integers(0, 4))
        m = int(rng.integers(k + l, 14))
        res = run(curve, m, k, l, 0.5, 1.0)
        P = res.approximant
        for i in range(k):
            rho = res.rho0[i]
            assert np.linalg.norm(endpoint_derivative(P, "left", i) - rho) <= 1e-8 * (1 + np.linalg.norm(rho))
        for i in range(l):
            rho = res.rho1[i]
            assert np.linalg.norm(endpoint_derivative(P, "right", i) - rho) <= 1e-8 * (1 + np.linalg.norm(rho))

    @pytest.mark.parametrize("seed", range(6))
    def test_residual_orthogonality_by_quadrature(self, seed):
        rng = np.random.default_rng(100 + seed)
        curve = random_rational(rng, int(rng.integers(2, 9)))
        k, l = int(rng.integers(0, 3)), int(rng.integers(0, 3))
        m = int(rng.integers(k + l, 13))
        a, b = [float(x) for x in rng.choice([0.0, 0.5, 1.0], 2)]
        res = run(curve, m, k, l, a, b)
        t, w = jacobi_rule(500, a, b)
        E = rational_eval(curve, t) - poly_eval(res.approximant, t)
        B = bernstein_table(m, t)
        inner = (B[k: m - l + 1] * w) @ E
        assert np.max(np.abs(inner)) <= 1e-8 * weighted_norm(curve, a, b)

    @settings(max_examples=15, deadline=None)
    @given(seed=st.integers(0, 2**31), n=st.integers(1, 8), extra=st.integers(0, 6),
           k=st.integers(0, 2), l=st.integers(0, 2))
    def test_polynomial_exactness(self, seed, n, extra, k, l):
        rng = np.random.default_rng(seed)
        m = max(n + extra, k + l)
        pts = rng.uniform(-10, 10, (n + 1, 3))
        curve = RationalBezierCurve(pts, np.full(n + 1, rng.uniform(0.2, 5)))
        res = run(curve, m, k, l, 0.5, 0.0)
        e_inf, _ = max_error(curve, res.approximant, 2000)
        assert e_inf < 1e-10 * (1 + np.max(np.linalg.norm(pts, axis=1)))

    @pytest.mark.parametrize("seed", range(4))
    def test_affine_equivariance(self, seed):
        rng = np.random.default_rng(200 + seed)
        curve = random_rational(rng, 6)
        a = rng.uniform(-3, 3)
        shift = rng.uniform(-5, 5, 2)
        moved = RationalBezierCurve(a * curve.control_points + shift, curve.weights)
        p = run(curve, 9, 1, 2, 0.5, 0.5).approximant.control_points
        q = run(moved, 9, 1, 2, 0.5, 0.5).approximant.control_points
        scale = max(1.0, np.max(np.abs(q)))
        assert np.max(np.abs(q - (a * p + shift))) <= 1e-10 * scale

    def test_rotation_equivariance(self, open9):
        th = 0.7
        Q = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
        moved = RationalBezierCurve(open9.control_points @ Q.T, open9.weights)
        p = run(open9, 10, 1, 1).approximant.control_points
        q = run(moved, 10, 1, 1).approximant.control_points
        assert np.max(np.abs(q - p @ Q.T)) <= 1e-10 * np.max(np.abs(q))

    @pytest.mark.parametrize("a,b", [(0.0, 0.0), (0.5, 0.5)])
    def test_perturbation_increases_error(self, closed8, a, b):
        m, k, l = 10, 1, 1
        P = run(closed8, m, k, l, a, b).approximant
        w = JacobiWeight(a, b)
        base = l2_error(closed8, P, w)
        for i in range(k, m - l + 1):
            for axis in range(2):
                for delta in (1e-3, -1e-3):
                    p = P.control_points.copy()
                    p[i, axis] += delta
                    assert l2_error(closed8, BezierCurve(p), w) > base


class TestComposite:
    def test_single_segment_matches_approximate(self, open9):
        comp = CompositeCurve((open9,), 0)
        out = approximate_composite(comp, 10, ConstraintSpec(1, 1))
        np.testing.assert_array_equal(out.curve.segments[0].control_points,
                                      run(open9, 10, 1, 1).approximant.control_points)

    def test_example_left_panel(self, sketch88):
        out = approximate_composite(sketch88.composite(), [13, 8], ConstraintSpec(1, 1), JacobiWeight(0.5, 0.5),
                                    with_errors=True)
        got = [(p.errors.e_inf, p.errors.e_2) for p in out.pieces]
        for (e_inf, e_2), (r_inf, r_2) in zip(got, [(3.152, 0.166), (2.814, 0.284)]):
            assert e_inf == pytest.approx(r_inf, rel=0.02) and e_2 == pytest.approx(r_2, rel=0.02)

    def test_joins_are_continuous(self, sketch88):
        out = approximate_composite(sketch88.composite(), [12, 11, 7, 6], ConstraintSpec(2, 2),
                                    JacobiWeight(0.5, 0.5), subdivisions=0.5)
        segs = out.curve.segments
        assert len(segs) == 4
        for a, b in zip(segs, segs[1:]):
            np.testing.assert_allclose(a.control_points[-1], b.control_points[0], atol=1e-9)
        # halves of one source segment share the (equally scaled) tangent at the split
        for a, b in ((segs[0], segs[1]), (segs[2], segs[3])):
            np.testing.assert_allclose(endpoint_derivative(a, "right", 1), endpoint_derivative(b, "left", 1),
                                       rtol=1e-8)

    def test_continuity_needs_constraints(self, sketch88):
        with pytest.raises(ValidationError, match="continuity"):
            approximate_composite(sketch88.composite(), 10, ConstraintSpec(0, 0))

    def test_degree_count(self, sketch88):
        with pytest.raises(ValidationError):
            approximate_composite(sketch88.composite(), [10, 10, 10])

    def test_split_segments(self, open9):
        comp = CompositeCurve((open9,), 0)
        pieces = split_segments(comp, [[0.25, 0.75]])
        assert len(pieces) == 3
        t = np.linspace(0, 1, 7)
        np.testing.assert_allclose(rational_eval(pieces[1], t), rational_eval(open9, 0.25 + 0.5 * t), atol=1e-12)
        np.testing.assert_allclose(rational_eval(pieces[0], 1.0), rational_eval(subdivide(open9, 0.25)[0], 1.0))

    @pytest.mark.parametrize("bad", [[[0.5, 0.5]], [[1.0]], [[0.3], [0.4]]])
    def test_split_validation(self, open9, bad):
        with pytest.raises(ValidationError):
            split_segments(CompositeCurve((open9,), 0), bad)
