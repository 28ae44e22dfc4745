"""
Test direction fields, RK4 tracing and curve residuals
"""
from dataclasses import replace

import numpy as np
import pytest

from src.curves import (
    DirectionField,
    asymptotic_fields,
    asymptotic_fields_front_K,
    curvature_line_fields,
    g_asymptotic_residual,
    gaussian_line_residual,
    kernel_direction,
    line_of_curvature_residual,
    null_vectors,
    trace_flow,
    velocity_determinant,
)
from src.errors import (
    ChartSelectionFailed,
    DomainError,
    NonNegativeCurvature,
    NotExtendable,
    UmbilicChart,
    WrongGeneratorKind,
)
from src.models import Domain, FieldKind, TerminationReason, TracedCurve


def constant_field(vector):
    value = np.asarray(vector, dtype=float)
    return DirectionField(FieldKind.CUSTOM, lambda u, v: value)


class TestTracing:
    """Tests for fixed-step RK4"""

    def test_constant_field(self):
        curve = trace_flow(constant_field([1.0, 1.0]), (0.0, 0.0), h=0.01, n_steps=100)
        assert curve.termination == TerminationReason.STEPS_EXHAUSTED
        assert len(curve.vertices) == 101
        assert len(curve.velocities) == 101
        np.testing.assert_allclose(curve.vertices[-1], [1.0, 1.0, 1.0], atol=1e-12)
        np.testing.assert_array_equal(curve.vertices[0], [0.0, 0.0, 0.0])

    def test_zero_field(self):
        curve = trace_flow(constant_field([0.0, 0.0]), (0.3, 0.3), h=0.01, n_steps=10)
        assert curve.termination == TerminationReason.FIELD_DEGENERATE
        assert len(curve.vertices) == 1

    def test_leaves_domain(self):
        """The point outside the domain is not recorded"""
        domain = Domain(-1.0, 1.0, -1.0, 1.0)
        curve = trace_flow(constant_field([1.0, 0.0]), (0.0, 0.0), h=0.3, n_steps=10, domain=domain)
        assert curve.termination == TerminationReason.LEFT_DOMAIN
        assert len(curve.vertices) == 4
        assert curve.vertices[-1, 1] == pytest.approx(0.9)

    def test_field_failure_inside_domain(self):
        """A field that cannot be evaluated stops with numerical-failure, not left-domain"""
        def evaluator(u, v):
            if u > 0.5:
                raise DomainError(f"field undefined at u = {u}")
            return np.array([1.0, 0.0])

        field = DirectionField(FieldKind.CUSTOM, evaluator)
        curve = trace_flow(field, (0.0, 0.0), h=0.2, n_steps=10, domain=Domain(-1.0, 1.0, -1.0, 1.0))
        assert curve.termination == TerminationReason.NUMERICAL_FAILURE
        assert curve.vertices[-1, 1] == pytest.approx(0.4)
        assert len(curve.velocities) == len(curve.vertices)

    def test_stage_outside_domain_is_not_evaluated(self):
        """Fields undefined off the domain still end with left-domain"""
        def evaluator(u, v):
            if abs(u) > 1.0:
                raise DomainError(f"field undefined at u = {u}")
            return np.array([1.0, 0.0])

        field = DirectionField(FieldKind.CUSTOM, evaluator)
        curve = trace_flow(field, (0.0, 0.0), h=0.3, n_steps=10, domain=Domain(-1.0, 1.0, -1.0, 1.0))
        assert curve.termination == TerminationReason.LEFT_DOMAIN
        assert len(curve.vertices) == 4

    def test_start_outside_domain(self):
        with pytest.raises(ValueError):
            trace_flow(constant_field([1.0, 0.0]), (2.0, 0.0), domain=Domain(-1.0, 1.0, -1.0, 1.0))

    def test_fourth_order_convergence(self):
        """Halving h divides the rotation error by about 16"""
        rotation = DirectionField(FieldKind.CUSTOM, lambda u, v: np.array([-v, u]))
        exact = np.array([np.cos(1.0), np.sin(1.0)])
        errors = []
        for h in (0.1, 0.05, 0.025):
            curve = trace_flow(rotation, (1.0, 0.0), h=h, n_steps=int(round(1.0 / h)))
            errors.append(np.linalg.norm(curve.points[-1] - exact))
        for coarse, fine in zip(errors, errors[1:]):
            assert 12.0 <= coarse / fine <= 20.0


class TestFieldHelpers:
    """Tests for null vectors and kernel directions"""

    @pytest.mark.parametrize("case", [1, 2])
    def test_null_vectors(self, case):
        C = np.array([[1.0, 2.0], [2.0, 1.0]])
        first, second = null_vectors(C, case)
        assert first @ C @ first == pytest.approx(0.0, abs=1e-12)
        assert second @ C @ second == pytest.approx(0.0, abs=1e-12)
        assert abs(first[0] * second[1] - first[1] * second[0]) > 1e-6

    def test_kernel_direction(self):
        M = np.array([[1.0, 2.0], [2.0, 4.0]])
        k = kernel_direction(M)
        np.testing.assert_allclose(M @ k, 0.0, atol=1e-14)
        assert np.linalg.norm(k) > 0


class TestAsymptoticCurves:
    """Tests for G-asymptotic direction fields"""

    def test_saddle_traces(self, saddle):
        """Traced curves annihilate II and the two fields stay transversal"""
        first, second = asymptotic_fields(saddle, (0.2, 0.1))
        assert first.provenance["case"] == 1
        for field in (first, second):
            curve = trace_flow(field, (0.2, 0.1), h=0.005, n_steps=40)
            assert len(curve.vertices) > 1
            assert g_asymptotic_residual(saddle, curve) <= 1e-6
        det = velocity_determinant(first, second, [(0.2, 0.1), (0.3, 0.2), (0.1, -0.1)])
        assert np.all(np.abs(det) > 1e-10)

    def test_straight_segment_is_not_asymptotic(self, saddle):
        """A diagonal segment is a negative control for the residual"""
        t = np.linspace(0.0, 0.1, 11)
        vertices = np.stack([t, 0.2 + t, 0.1 + t], axis=-1)
        curve = TracedCurve(FieldKind.CUSTOM, vertices, np.ones((11, 2)), TerminationReason.STEPS_EXHAUSTED)
        assert g_asymptotic_residual(saddle, curve) > 1e-3

    def test_sphere_has_positive_curvature(self, sphere):
        with pytest.raises(NonNegativeCurvature):
            asymptotic_fields(sphere, (0.1, 0.1))

    def test_needs_b_field(self, cuspidal_edge):
        with pytest.raises(NotExtendable):
            asymptotic_fields(cuspidal_edge, (0.1, 0.1))

    def test_no_case_holds(self, plane):
        """A vanishing B field satisfies neither factorization case"""
        flat = replace(plane, b_field=lambda u, v: np.zeros(np.shape(np.asarray(u) + np.asarray(v)) + (2, 2)))
        with pytest.raises(ChartSelectionFailed):
            asymptotic_fields(flat, (0.0, 0.0))

    def test_wave_fields(self, wave_K):
        """Constant fields (-1, 1) and (1, 1) for c = -1"""
        first, second = asymptotic_fields_front_K(wave_K)
        np.testing.assert_allclose(first(0.3, 0.2), [-1.0, 1.0])
        np.testing.assert_allclose(second(0.3, 0.2), [1.0, 1.0])
        for field in (first, second):
            curve = trace_flow(field, (0.0, 0.0), h=0.01, n_steps=50, domain=wave_K.domain)
            assert curve.termination == TerminationReason.STEPS_EXHAUSTED
            assert g_asymptotic_residual(wave_K, curve) <= 1e-6

    def test_wave_fields_need_wave_surface(self, saddle):
        with pytest.raises(WrongGeneratorKind):
            asymptotic_fields_front_K(saddle)


class TestCurvatureLines:
    """Tests for Gaussian lines of curvature"""

    def test_traces_satisfy_identities(self, ellipsoid_like):
        """Both families are lines of curvature and Gaussian lines"""
        fields = curvature_line_fields(ellipsoid_like, (0.2, 0.1))
        for field in fields:
            curve = trace_flow(field, (0.2, 0.1), h=0.005, n_steps=40)
            assert len(curve.vertices) > 1
            assert line_of_curvature_residual(ellipsoid_like, curve) <= 1e-6
            assert gaussian_line_residual(ellipsoid_like, curve, field.eigenvalue) <= 1e-6

    def test_branches_ordered(self, ellipsoid_like):
        first, second = curvature_line_fields(ellipsoid_like, (0.2, 0.1))
        assert first.eigenvalue(0.2, 0.1) > second.eigenvalue(0.2, 0.1)

    def test_sphere_is_umbilic(self, sphere):
        with pytest.raises(UmbilicChart):
            curvature_line_fields(sphere, (0.1, 0.1))
