"""
Test the invariant suite
"""
import numpy as np
import pytest

from src.frontal import with_basis
from src.models import IdentityCheck
from src.validation import regular_points, run_invariant_suite

GENERIC = {
    "decomposition-x",
    "decomposition-n",
    "symmetry",
    "scaling-K",
    "scaling-H",
    "normal-curvature-scaling",
    "change-of-basis",
    "change-of-basis-direction",
    "principal-directions",
}


def by_name(checks):
    return {c.name: c for c in checks}


class TestIdentityCheck:

    def test_passed(self):
        assert IdentityCheck("x", 1e-12, 1e-9).passed
        assert not IdentityCheck("x", 1e-6, 1e-9).passed
        assert not IdentityCheck("x", float("nan"), 1e-9).passed

    def test_to_dict(self):
        d = IdentityCheck("symmetry", 0.0, 1e-9, 4, "max |S - S^T|").to_dict()
        assert d["passed"] is True
        assert d["samples"] == 4


class TestInvariantSuite:
    """Tests for run_invariant_suite"""

    def test_plane_passes(self, plane):
        checks = by_name(run_invariant_suite(plane, grid=8, samples=10))
        assert set(checks) == GENERIC
        assert all(c.passed for c in checks.values())

    def test_cuspidal_edge_passes(self, cuspidal_edge):
        checks = run_invariant_suite(cuspidal_edge, grid=8, samples=10)
        failed = [c.name for c in checks if not c.passed]
        assert failed == []

    def test_wave_surface_entries(self, wave_K):
        """Extendable-K surfaces add the PDE and extended-K identities"""
        checks = by_name(run_invariant_suite(wave_K, grid=6, samples=8))
        assert checks["pde"].passed
        assert checks["extended-K"].passed
        assert checks["extended-K"].samples == 8

    def test_b_field_entries(self, sphere):
        checks = by_name(run_invariant_suite(sphere, grid=8, samples=10))
        assert checks["compatibility"].passed
        assert checks["b-field"].passed

    def test_principal_direction_follows_basis_change(self, ellipsoid_like):
        """The larger relative curvature direction maps to B^-1 w under Omega B"""
        check = by_name(run_invariant_suite(ellipsoid_like, grid=8, samples=10))["change-of-basis-direction"]
        assert check.samples > 0
        assert check.passed

    def test_umbilic_plane_skips_direction_check(self, plane):
        check = by_name(run_invariant_suite(plane, grid=8, samples=10))["change-of-basis-direction"]
        assert check.samples == 0
        assert check.passed

    def test_non_tangent_basis_fails(self, plane):
        """w2 = (0, 1, 1) does not span the tangent plane"""
        tilted = with_basis(plane, ["1", "0", "0"], ["0", "1", "1"])
        checks = by_name(run_invariant_suite(tilted, grid=8, samples=10))
        assert not checks["decomposition-x"].passed

    def test_deterministic(self, cuspidal_edge):
        first = [c.to_dict() for c in run_invariant_suite(cuspidal_edge, grid=6, samples=5, seed=3)]
        second = [c.to_dict() for c in run_invariant_suite(cuspidal_edge, grid=6, samples=5, seed=3)]
        assert first == second


class TestRegularPoints:

    def test_avoids_singular_set(self, cuspidal_edge, rng):
        """lambda = v on the cuspidal edge"""
        points = regular_points(cuspidal_edge, 20, rng)
        assert len(points) == 20
        assert np.all(np.abs(points[:, 1]) > 1e-3)

    def test_inside_domain(self, saddle, rng):
        points = regular_points(saddle, 10, rng)
        assert np.all(np.abs(points) <= 0.5)
        assert points.shape == (10, 2)
