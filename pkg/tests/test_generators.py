"""
Test representation-formula generators, quadrature and run configuration
"""
import numpy as np
import pytest

from src.errors import (
    HarmonicityViolated,
    NonProperComposition,
    PreconditionFailed,
    RunConfigError,
    ToleranceNotMet,
    WrongGeneratorKind,
)
from src.exprlang import eval_jet, parse
from src.frontal import classical_frame, frame_arrays, invariant_frame
from src.generators import (
    build_surface,
    gen_extendable_K,
    gen_false_singularity,
    gen_rank0_front,
    gen_rank1_from_h,
    gen_rank1_front,
    gen_vanishing_K,
    integrate_1d,
    rank1_to_nonvanishing,
    ruled_parts,
)
from src.jets import seed_pair
from src.utils.run_config import GeneratorSpec, parse_run_config
from src.validation import run_invariant_suite

from conftest import HALF, UNIT


def values(jets):
    return [float(c.value) for c in jets]


class TestQuadrature:
    """Tests for adaptive Gauss-Kronrod quadrature"""

    def test_linear(self):
        result = integrate_1d(lambda t: t, 0.0, 1.0)
        assert result.value == pytest.approx(0.5, abs=1e-14)

    def test_sine(self):
        result = integrate_1d(np.sin, 0.0, 1.0)
        assert result.value == pytest.approx(1.0 - np.cos(1.0), abs=1e-13)
        assert result.error <= 1e-12

    def test_empty_interval(self):
        assert integrate_1d(np.cos, 0.4, 0.4).value == 0.0

    def test_reversed_limits(self):
        with pytest.raises(ValueError):
            integrate_1d(np.cos, 1.0, 0.0)

    def test_depth_limit(self):
        """A kink the first panel cannot resolve fails without bisection"""
        with pytest.raises(ToleranceNotMet):
            integrate_1d(lambda t: np.sqrt(np.abs(t - 0.3)), 0.0, 1.0, tol=1e-14, max_depth=0)


class TestExtendableNormal:
    """Tests for the extendable-normal representation formula"""

    @pytest.mark.parametrize("p", [(0.0, 0.0), (0.2, -0.3), (-0.4, 0.35), (0.45, 0.1)])
    def test_reproduces_explicit_surface(self, extendable_normal_generated, extendable_normal, p):
        """x = (u, 2/5 v^5 + v^2, u v^2) with w1 = (1, 0, v^2), w2 = (0, 1, u/(v^3 + 1))"""
        u, v = p
        np.testing.assert_allclose(values(extendable_normal_generated.x(u, v, 0)),
                                   values(extendable_normal.x(u, v, 0)), atol=1e-8)
        w1, w2 = extendable_normal_generated.omega(u, v, 0)
        e1, e2 = extendable_normal.omega(u, v, 0)
        np.testing.assert_allclose(values(w1), values(e1), atol=1e-8)
        np.testing.assert_allclose(values(w2), values(e2), atol=1e-8)

    @pytest.mark.parametrize("p", [(0.0, 0.0), (0.1, 0.2), (-0.3, -0.25)])
    def test_b_field_factorizes_second_form(self, extendable_normal_generated, p):
        """II_Omega = C Lambda^T at singular and regular points"""
        f = invariant_frame(extendable_normal_generated, p)
        C = extendable_normal_generated.b_field(*p)
        np.testing.assert_allclose(f.second_form_omega, C @ f.Lambda.T, atol=1e-8)

    def test_parameters_recorded(self, extendable_normal_generated):
        prov = extendable_normal_generated.provenance
        assert prov.kind == "extendable-normal"
        assert set(prov.parameters) == {"b", "h", "l", "r"}


class TestWavefronts:
    """Tests for rank-1 and rank-0 wavefront germs"""

    def test_cuspidal_edge_position(self, cuspidal_edge):
        """lambda_hat = z gives y = (w, z^2/2, z^3/3)"""
        np.testing.assert_allclose(values(cuspidal_edge.x(0.3, 0.4, 0)), [0.3, 0.08, 0.064 / 3], atol=1e-12)

    def test_rank1_precondition(self):
        with pytest.raises(PreconditionFailed):
            gen_rank1_front("1 + z", "0", "0", UNIT)

    def test_rank1_f_depends_on_w_only(self):
        with pytest.raises(PreconditionFailed):
            gen_rank1_front("z", "z", "0", UNIT)

    def test_rank1_from_h(self):
        """h = -v^3/6 gives lambda = v"""
        s = gen_rank1_from_h("-v^3/6", UNIT)
        assert invariant_frame(s, (0.2, 0.3)).lam == pytest.approx(0.3, abs=1e-9)
        assert invariant_frame(s, (0.2, 0.0)).lam == pytest.approx(0.0, abs=1e-12)

    def test_rank0_precondition(self):
        with pytest.raises(PreconditionFailed):
            gen_rank0_front("u^2", UNIT)

    def test_rank0_lambda_is_hessian(self, rank0_cubic):
        """Lambda^T = Hess(h), so lambda = u v for h = (u^3 + v^3)/6"""
        assert invariant_frame(rank0_cubic, (0.4, -0.5)).lam == pytest.approx(-0.2, abs=1e-9)

    def test_normalization(self, cuspidal_edge):
        """Adding w^2 makes K_Omega nonzero at the origin"""
        assert invariant_frame(cuspidal_edge, (0.0, 0.0)).K_omega == pytest.approx(0.0, abs=1e-12)
        s = rank1_to_nonvanishing(cuspidal_edge)
        assert abs(invariant_frame(s, (0.0, 0.0)).K_omega) > 1e-8
        assert s.provenance.kind == "rank1-normalized"
        assert s.annotations["base_kind"] == "rank1-front"

    def test_normalization_needs_rank1_front(self, plane):
        with pytest.raises(WrongGeneratorKind):
            rank1_to_nonvanishing(plane)


class TestVanishingK:
    """Tests for ruled wavefronts with K = 0"""

    @pytest.fixture
    def ruled(self):
        return gen_vanishing_K("v", "v^2", 0.0, 0.0, UNIT)

    def test_gaussian_curvature_vanishes(self, ruled):
        for p in [(0.3, 0.2), (-0.5, 0.6), (0.8, -0.1)]:
            assert classical_frame(ruled, p).K == pytest.approx(0.0, abs=1e-7)

    def test_relative_gaussian_vanishes_on_grid(self, ruled):
        """K_Omega is identically zero, including the singular set"""
        U, V = np.meshgrid(np.linspace(-1.0, 1.0, 12), np.linspace(-1.0, 1.0, 12), indexing="ij")
        a = frame_arrays(ruled, U, V)
        assert a.K_omega.shape == (12, 12)
        np.testing.assert_allclose(a.K_omega, 0.0, atol=1e-7)

    def test_suite_passes(self, ruled):
        checks = run_invariant_suite(ruled, grid=12, samples=10)
        assert [c.name for c in checks if not c.passed] == []
        assert "flat" in {c.name for c in checks}

    def test_ruled_parts(self, ruled):
        """Directrix (0, r2, int t r2') and ruling (1, r1, int t r1')"""
        directrix, ruling = ruled_parts(ruled, [0.0, 0.5])
        np.testing.assert_allclose(directrix, [[0.0, 0.0, 0.0], [0.0, 0.25, 1.0 / 12.0]], atol=1e-12)
        np.testing.assert_allclose(ruling, [[1.0, 0.0, 0.0], [1.0, 0.5, 0.125]], atol=1e-12)

    def test_slope_precondition(self):
        with pytest.raises(PreconditionFailed):
            gen_vanishing_K("v", "v", 0.0, 0.0, UNIT)

    def test_ruled_parts_needs_vanishing_K(self, cuspidal_edge):
        with pytest.raises(WrongGeneratorKind):
            ruled_parts(cuspidal_edge, [0.0])


class TestExtendableK:
    """Tests for wave and laplace modes"""

    def test_wave_extended_gaussian(self, wave_K):
        assert wave_K.extended_gaussian(0.0, 0.0) == pytest.approx(-1.0)
        assert wave_K.provenance.constants == {"c": -1.0}

    def test_wave_pde(self, wave_K):
        """h_uu + c h_vv = 0 with c = -1"""
        h = parse(wave_K.provenance.parameters["h"])
        for u0, v0 in [(0.1, 0.2), (-0.6, 0.4), (0.9, -0.9)]:
            ju, jv = seed_pair(u0, v0, 2)
            jet = eval_jet(h, {"u": ju, "v": jv})
            assert jet.duu - jet.dvv == pytest.approx(0.0, abs=1e-10)

    def test_laplace_mode(self):
        """F = u^2 - v^2 with c = 4 gives h = u^2 - v^2/4"""
        s = gen_extendable_K("laplace", 4.0, UNIT, F="u^2 - v^2")
        assert s.provenance.kind == "extendable-K-laplace"
        assert s.extended_gaussian(0.0, 0.0) == pytest.approx(4.0)
        # lambda = -h_vv = 1/2
        assert invariant_frame(s, (0.1, 0.1)).lam == pytest.approx(0.5, abs=1e-9)

    def test_laplace_rejects_non_harmonic(self):
        with pytest.raises(HarmonicityViolated):
            gen_extendable_K("laplace", 1.0, UNIT, F="u^2")

    @pytest.mark.parametrize("mode, c", [("wave", 1.0), ("laplace", -1.0)])
    def test_sign_of_c(self, mode, c):
        with pytest.raises(PreconditionFailed):
            gen_extendable_K(mode, c, UNIT, h1="s", h2="s", F="u*v")

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            gen_extendable_K("heat", 1.0, UNIT)


class TestFalseSingularity:
    """Tests for compositions y o m"""

    def test_degenerate_inner_map(self):
        with pytest.raises(NonProperComposition):
            gen_false_singularity("graph", "0", "v", HALF, phi="s*t")

    def test_unknown_immersion(self):
        with pytest.raises(PreconditionFailed):
            gen_false_singularity("torus", "u^3", "v", HALF)

    def test_graph_needs_phi(self):
        with pytest.raises(PreconditionFailed):
            gen_false_singularity("graph", "u^3", "v", HALF)

    def test_saddle_extended_gaussian(self, saddle):
        """K of z = s t is -1/(1 + s^2 + t^2)^2 at (s, t) = (u^3, v)"""
        assert saddle.extended_gaussian(0.0, 0.0) == pytest.approx(-1.0)
        expected = -1.0 / (1.0 + 0.3 ** 6 + 0.2 ** 2) ** 2
        assert saddle.extended_gaussian(0.3, 0.2) == pytest.approx(expected)

    def test_lambda_is_jacobian(self, saddle):
        """Lambda = Dm^T, so lambda = 3 u^2"""
        assert invariant_frame(saddle, (0.2, 0.1)).lam == pytest.approx(0.12)
        assert invariant_frame(saddle, (0.0, 0.1)).lam == pytest.approx(0.0, abs=1e-14)


class TestRegistry:
    """Tests for building surfaces from generator specs"""

    def test_basis_override(self):
        spec = GeneratorSpec(
            kind="explicit",
            parameters={"x": "u, v, 0", "w1": "1, 0, 0", "w2": "0, 1, 0"},
            basis_override={"w1": "1, 0, 0", "w2": "0, 2, 0"},
        )
        s = build_surface(spec)
        assert invariant_frame(s, (0.1, 0.2)).lam == pytest.approx(0.5)

    def test_normalized_from_base(self):
        spec = GeneratorSpec(
            kind="rank1-normalized",
            base={"kind": "rank1-front", "parameters": {"lambda_hat": "z", "f1": "0", "f2": "0"}},
        )
        assert build_surface(spec).provenance.kind == "rank1-normalized"

    def test_constants_reach_generator(self):
        spec = GeneratorSpec(kind="extendable-K-wave", parameters={"h1": "s^3/6", "h2": "s^3/6"},
                             constants={"c": -2.0})
        assert build_surface(spec).extended_gaussian(0.0, 0.0) == pytest.approx(-2.0)


class TestRunConfig:
    """Tests for run configuration validation"""

    @staticmethod
    def config(**overrides):
        data = {
            "generator": {"kind": "rank1-front", "parameters": {"lambda_hat": "z", "f1": "0", "f2": "0"}},
            "grid": [10, 10],
            "outputs": [{"type": "mesh"}],
        }
        data.update(overrides)
        return data

    def test_valid(self):
        run = parse_run_config(self.config())
        assert run.grid == (10, 10)
        assert run.outputs[0].type == "mesh"

    def test_seed_outside_domain(self):
        outputs = [{"type": "trace", "field": "asymptotic-1", "seeds": [[3.0, 0.0]]}]
        with pytest.raises(RunConfigError) as info:
            parse_run_config(self.config(outputs=outputs))
        assert "seed [3.0, 0.0]" in str(info.value)

    def test_unknown_kind(self):
        with pytest.raises(RunConfigError) as info:
            parse_run_config(self.config(generator={"kind": "torus"}))
        assert "torus" in str(info.value)

    def test_grid_too_small(self):
        with pytest.raises(RunConfigError):
            parse_run_config(self.config(grid=[1, 10]))

    def test_missing_parameter(self):
        with pytest.raises(RunConfigError) as info:
            parse_run_config(self.config(generator={"kind": "rank1-front", "parameters": {"lambda_hat": "z"}}))
        assert "f1" in str(info.value)

    def test_unknown_output_type(self):
        with pytest.raises(RunConfigError):
            parse_run_config(self.config(outputs=[{"type": "movie"}]))

    def test_malformed_json(self):
        with pytest.raises(RunConfigError):
            parse_run_config("{not json")
