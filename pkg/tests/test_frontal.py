"""
Test frontal invariants, singularities and extendability
"""
import numpy as np
import pytest

from src.errors import DegenerateBasis, NotExtendable, NotProperFrontal, UmbilicLike, ZeroDirection
from src.frontal import (
    check_proper,
    classical_frame,
    classify_singularity,
    extendability_test,
    extended_curvatures,
    frame_arrays,
    invariant_frame,
    parallel_surface,
    parallelly_smoothable_test,
    principal_directions,
    rebased,
    relative_normal_curvature,
    singular_set,
    surface_from_expressions,
)
from src.generators import gen_rank0_front, gen_rank1_from_h, gen_rank1_front
from src.models import FrontType

from conftest import UNIT


class TestInvariantFrame:
    """Tests for pointwise invariants"""

    def test_plane(self, plane):
        """The plane has lambda = 1 and vanishing curvatures"""
        f = invariant_frame(plane, (0.3, -0.2))
        assert f.lam == pytest.approx(1.0)
        assert f.K_omega == pytest.approx(0.0)
        assert f.H_omega == pytest.approx(0.0)
        np.testing.assert_allclose(f.first_form, np.eye(2))
        np.testing.assert_allclose(f.first_form_omega, np.eye(2))

    def test_cuspidal_edge_origin(self, cuspidal_edge):
        """II_Omega = [[0, 0], [0, 1]] and H_Omega = 1/2 at the origin"""
        f = invariant_frame(cuspidal_edge, (0.0, 0.0))
        np.testing.assert_allclose(f.second_form_omega, [[0.0, 0.0], [0.0, 1.0]], atol=1e-12)
        np.testing.assert_allclose(f.mu, [[0.0, 0.0], [0.0, -1.0]], atol=1e-12)
        assert f.lam == pytest.approx(0.0, abs=1e-12)
        assert f.K_omega == pytest.approx(0.0, abs=1e-12)
        assert f.H_omega == pytest.approx(0.5, abs=1e-9)

    def test_extendable_normal_origin(self, extendable_normal):
        """Lambda^T = [[1, 0], [0, 0]] and II_Omega = [[0, 0], [1, 0]] at the origin"""
        f = invariant_frame(extendable_normal, (0.0, 0.0))
        np.testing.assert_allclose(f.Lambda.T, [[1.0, 0.0], [0.0, 0.0]], atol=1e-12)
        np.testing.assert_allclose(f.second_form_omega, [[0.0, 0.0], [1.0, 0.0]], atol=1e-12)
        assert f.H_omega == pytest.approx(0.0, abs=1e-9)
        assert f.K_omega == pytest.approx(0.0, abs=1e-9)

    def test_decomposition_on_grid(self, cuspidal_edge):
        """Dx = Omega Lambda^T and Dn = Omega mu^T"""
        us, vs = cuspidal_edge.domain.grid(12, 12)
        U, V = np.meshgrid(us, vs, indexing="ij")
        a = frame_arrays(cuspidal_edge, U, V)
        np.testing.assert_allclose(a.Dx, a.omega @ np.swapaxes(a.Lambda, -1, -2), atol=1e-9)
        np.testing.assert_allclose(a.Dn, a.omega @ np.swapaxes(a.mu, -1, -2), atol=1e-8)

    def test_degenerate_basis(self):
        """Dependent basis columns raise DegenerateBasis"""
        s = surface_from_expressions(["u", "v", "0"], ["1", "0", "0"], ["2", "0", "0"], UNIT)
        with pytest.raises(DegenerateBasis):
            invariant_frame(s, (0.0, 0.0))

    def test_scaling_against_classical(self, cuspidal_edge, rng):
        """K_Omega = lambda K and H_Omega = lambda H at regular points"""
        for u, v in rng.uniform(-0.9, 0.9, (20, 2)):
            if abs(v) < 0.05:
                continue
            f = invariant_frame(cuspidal_edge, (u, v))
            c = classical_frame(cuspidal_edge, (u, v))
            assert f.K_omega == pytest.approx(f.lam * c.K, abs=1e-8 * (1 + abs(f.K_omega)))
            assert f.H_omega == pytest.approx(f.lam * c.H, abs=1e-8 * (1 + abs(f.K_omega)))

    def test_basis_change(self, cuspidal_edge):
        """lambda, K_Omega and H_Omega scale by 1/det B"""
        B = np.array([[1.0, 2.0], [0.0, 3.0]])
        f = invariant_frame(cuspidal_edge, (0.2, 0.4))
        g = invariant_frame(rebased(cuspidal_edge, B), (0.2, 0.4))
        assert g.lam == pytest.approx(f.lam / 3.0)
        assert g.K_omega == pytest.approx(f.K_omega / 3.0)
        assert g.H_omega == pytest.approx(f.H_omega / 3.0)


class TestRelativeCurvatures:
    """Tests for relative normal and principal curvatures"""

    def test_homogeneity(self, cuspidal_edge):
        """omega and 2 omega give the same value"""
        f = invariant_frame(cuspidal_edge, (0.2, 0.3))
        w = np.array([0.4, -1.1])
        assert relative_normal_curvature(f, w) == pytest.approx(relative_normal_curvature(f, 2 * w))

    def test_plane_is_flat(self, plane):
        """Every direction of the plane has zero relative normal curvature"""
        f = invariant_frame(plane, (0.0, 0.0))
        assert relative_normal_curvature(f, [1.0, 2.0]) == pytest.approx(0.0)

    def test_zero_direction(self, plane):
        """omega = 0 raises ZeroDirection"""
        with pytest.raises(ZeroDirection):
            relative_normal_curvature(invariant_frame(plane, (0.0, 0.0)), [0.0, 0.0])

    def test_principal_directions_cuspidal_edge(self, cuspidal_edge):
        """k1 = 0, k2 = 1 along e1, e2 at the origin"""
        w1, w2, k1, k2 = principal_directions(invariant_frame(cuspidal_edge, (0.0, 0.0)))
        assert k1 == pytest.approx(0.0, abs=1e-12)
        assert k2 == pytest.approx(1.0)
        np.testing.assert_allclose(w1, [1.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(w2, [0.0, 1.0], atol=1e-12)

    def test_plane_is_umbilic(self, plane):
        """Equal relative principal curvatures leave the directions undefined"""
        with pytest.raises(UmbilicLike):
            principal_directions(invariant_frame(plane, (0.0, 0.0)))


class TestSingularities:
    """Tests for singular sets and classification"""

    def test_classify_cuspidal_edge(self, cuspidal_edge):
        """The cuspidal edge origin is a rank-1 front singularity"""
        r = classify_singularity(cuspidal_edge, (0.0, 0.0))
        assert r.is_singular
        assert r.rank == 1
        assert r.front_type == FrontType.FRONT_RANK1
        assert r.H_omega == pytest.approx(0.5, abs=1e-9)

    def test_classify_rank0(self, rank0_cubic):
        """h = (u^3 + v^3)/6 gives a rank-0 front singularity with K_Omega = 1"""
        r = classify_singularity(rank0_cubic, (0.0, 0.0))
        assert r.rank == 0
        assert r.front_type == FrontType.FRONT_RANK0
        assert r.K_omega == pytest.approx(1.0, abs=1e-9)

    def test_classify_extendable_normal(self, extendable_normal):
        """The extendable-normal origin is singular but not a front"""
        r = classify_singularity(extendable_normal, (0.0, 0.0))
        assert r.rank == 1
        assert r.front_type == FrontType.NON_FRONT

    def test_classify_regular(self, plane):
        """Points of the plane are regular"""
        assert classify_singularity(plane, (0.1, 0.1)).front_type == FrontType.REGULAR

    def test_singular_set_cuspidal_edge(self, cuspidal_edge):
        """The singular set is the line z = 0"""
        polylines = singular_set(cuspidal_edge, 16, 16)
        assert polylines
        for line in polylines:
            np.testing.assert_allclose(line[:, 1], 0.0, atol=1e-8)

    def test_singular_set_rank0_axes(self, rank0_cubic):
        """lambda = uv vanishes on both axes"""
        polylines = singular_set(rank0_cubic, 16, 16)
        vertices = np.concatenate(polylines)
        assert np.all(np.abs(vertices[:, 0] * vertices[:, 1]) <= 1e-9)
        assert np.any(np.abs(vertices[:, 0]) > 0.5)
        assert np.any(np.abs(vertices[:, 1]) > 0.5)

    def test_singular_set_plane_empty(self, plane):
        assert singular_set(plane, 16, 16) == []

    def test_coarse_grid_rejected(self, plane):
        with pytest.raises(ValueError):
            singular_set(plane, 8, 8)

    def test_non_proper(self):
        """h = 0 gives lambda = 0 everywhere"""
        with pytest.raises(NotProperFrontal):
            check_proper(gen_rank1_from_h("0", UNIT))


class TestExtendability:
    """Tests for extendability and extended curvatures"""

    def test_false_singularity_analytic(self, sphere):
        """Sphere compositions have extendable normal curvature"""
        verdict = extendability_test(sphere, "analytic", grid=12)
        assert verdict.extendable
        assert verdict.mode == "analytic"
        assert verdict.evidence["residual"] <= 1e-8

    def test_cuspidal_edge_numeric(self, cuspidal_edge):
        """A wavefront's normal curvature does not extend"""
        verdict = extendability_test(cuspidal_edge, "numeric", grid=16)
        assert not verdict.extendable
        assert verdict.mode == "numeric"
        assert verdict.evidence["singular_points"] > 0

    def test_analytic_needs_b_field(self, cuspidal_edge):
        with pytest.raises(NotExtendable):
            extendability_test(cuspidal_edge, "analytic", grid=16)

    def test_sphere_extended_gaussian(self, sphere):
        """K = 1 on the unit sphere, including the singular line u = 0"""
        for p in [(0.0, 0.1), (0.3, -0.2)]:
            assert extended_curvatures(sphere, p).K == pytest.approx(1.0, abs=1e-9)

    def test_wave_singular_point_uses_generator_K(self, wave_K):
        """Without a B field, K at a singular point comes from the generator and H stays open"""
        ext = extended_curvatures(wave_K, (0.0, 0.0))
        assert ext.mode == "generator"
        assert ext.K == pytest.approx(-1.0)
        assert ext.H is None
        assert ext.to_dict()["W"] is None

    def test_cuspidal_edge_singular_point_not_extendable(self, cuspidal_edge):
        with pytest.raises(NotExtendable):
            extended_curvatures(cuspidal_edge, (0.0, 0.0))

    def test_regular_point_matches_classical(self, extendable_normal):
        """Numeric extended K at a regular point is the classical K"""
        p = (0.3, 0.3)
        ext = extended_curvatures(extendable_normal, p, mode="numeric")
        assert ext.K == pytest.approx(classical_frame(extendable_normal, p).K, rel=1e-6)


class TestParallels:
    """Tests for parallel surfaces and smoothability"""

    def test_plane_parallel(self, plane):
        """The unit parallel of the plane is the shifted plane"""
        p = parallel_surface(plane, 1.0)
        x = p.position(0.2, 0.3, 0)
        assert [float(c.value) for c in x] == pytest.approx([0.2, 0.3, 1.0])
        assert invariant_frame(p, (0.2, 0.3)).lam == pytest.approx(1.0)

    def test_no_sign_change_is_smoothable(self):
        """lambda_hat = z^2 keeps its sign"""
        s = gen_rank1_front("z^2", "0", "0", UNIT)
        assert parallelly_smoothable_test(s, (0.0, 0.0), 0.1).smoothable

    def test_sign_change_not_smoothable(self, cuspidal_edge):
        """lambda_hat = z changes sign"""
        assert not parallelly_smoothable_test(cuspidal_edge, (0.0, 0.0), 0.1).smoothable

    def test_convex_rank0_smoothable(self):
        """Convex h = (u^2 + v^2)^2/4"""
        s = gen_rank0_front("(u^2 + v^2)^2/4", UNIT)
        assert parallelly_smoothable_test(s, (0.0, 0.0), 0.1).smoothable
