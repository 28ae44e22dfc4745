"""
Test the expression language
"""
import numpy as np
import pytest

from src.errors import DomainError, ExprSyntaxError, UnknownIdentifier
from src.exprlang import IntPow, Var, eval_jet, evaluate, free_variables, parse, substitute, to_text
from src.jets import seed_pair


class TestParser:
    """Tests for parsing and printing"""

    def test_precedence(self):
        """* binds tighter than +, ^ tighter than unary minus"""
        assert float(evaluate(parse("1 + 2 * 3"))) == 7.0
        assert float(evaluate(parse("-2^2"))) == -4.0
        assert float(evaluate(parse("2^3^2"))) == 512.0

    def test_integer_power_node(self):
        """Literal integer exponents become IntPow"""
        e = parse("u^3")
        assert isinstance(e, IntPow)
        assert e.exponent == 3

    def test_aliases(self):
        """w, z, s, t map to u, v"""
        assert parse("w") == Var("u")
        assert parse("z") == Var("v")
        assert free_variables(parse("s*t")) == frozenset({"u", "v"})

    def test_syntax_error_offset(self):
        """A dangling operator is reported at the end of input"""
        with pytest.raises(ExprSyntaxError) as info:
            parse("u +")
        assert info.value.offset == 3
        assert "number" in info.value.expected

    def test_unbalanced_parenthesis(self):
        """A missing ) names the expected token"""
        with pytest.raises(ExprSyntaxError) as info:
            parse("(u + v")
        assert ")" in info.value.expected

    def test_unknown_identifier(self):
        """Names outside variables, aliases and functions are rejected"""
        with pytest.raises(UnknownIdentifier) as info:
            parse("u + foo")
        assert info.value.name == "foo"
        assert info.value.offset == 4

    def test_printer_round_trip(self):
        """to_text output parses back to the same tree"""
        e = parse("sin(u)^2 - 3*v/(1 + u^2) + exp(-v)")
        assert parse(to_text(e)) == e

    def test_substitute(self):
        """Variables are replaced simultaneously"""
        e = substitute(parse("u*v"), {"u": Var("v"), "v": Var("u")})
        assert float(evaluate(e, 2.0, 3.0)) == 6.0
        assert free_variables(e) == frozenset({"u", "v"})


class TestEvaluator:
    """Tests for numeric and jet evaluation"""

    def test_evaluate_arrays(self):
        """Plain evaluation broadcasts over numpy arrays"""
        out = evaluate(parse("u^2 + v"), np.array([0.0, 1.0, 2.0]), 1.0)
        np.testing.assert_allclose(out, [1.0, 2.0, 5.0])

    def test_pythagorean_identity_jet(self):
        """sin(u)^2 + cos(u)^2 has value 1 and vanishing derivatives"""
        u, v = seed_pair(0.4, 0.0, 2)
        jet = eval_jet(parse("sin(u)^2 + cos(u)^2"), {"u": u, "v": v})
        assert jet.value == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(jet.coeffs[1:], 0.0, atol=1e-12)

    def test_constant_expression_jet(self):
        """Constants evaluate to constant jets of the binding order"""
        u, v = seed_pair(0.0, 0.0, 2)
        jet = eval_jet(parse("2/5"), {"u": u, "v": v})
        assert jet.order == 2
        assert jet.value == pytest.approx(0.4)
        assert jet.du == 0.0

    def test_jet_matches_numeric_value(self, rng):
        """Jet value slot equals the numeric evaluation"""
        e = parse("exp(u*v) - log(2 + u^2) + sqrt(1 + v^2)")
        for u0, v0 in rng.uniform(-1, 1, (10, 2)):
            u, v = seed_pair(u0, v0, 1)
            assert eval_jet(e, {"u": u, "v": v}).value == pytest.approx(float(evaluate(e, u0, v0)))

    def test_jet_on_grid(self):
        """Sums with literals evaluate over a 2-D grid of points"""
        U, V = np.meshgrid(np.linspace(-0.5, 0.5, 4), np.linspace(-0.5, 0.5, 4), indexing="ij")
        u, v = seed_pair(U, V, 2)
        jet = eval_jet(parse("u/(v^3 + 1) - 1"), {"u": u, "v": v})
        assert jet.shape == (4, 4)
        np.testing.assert_allclose(jet.value, U / (V ** 3 + 1) - 1)
        np.testing.assert_allclose(jet.du, 1 / (V ** 3 + 1))
        np.testing.assert_allclose(jet.dv, -3 * U * V ** 2 / (V ** 3 + 1) ** 2)

    def test_domain_errors(self):
        """Numeric evaluation outside a function's domain raises DomainError"""
        with pytest.raises(DomainError):
            evaluate(parse("log(u)"), 0.0, 0.0)
        with pytest.raises(DomainError):
            evaluate(parse("1/u"), 0.0, 0.0)
