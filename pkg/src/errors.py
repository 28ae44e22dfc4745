"""
Exception hierarchy for frontal-lab.

Two families are distinguished because the CLI maps them to different
exit codes: configuration problems (bad input, unmet generator
preconditions) and numerical failures (degenerate geometry, quadrature,
eigenproblems).
"""
from typing import Iterable, Optional, Tuple


class FrontalLabError(Exception):
    """Base class for all library errors"""


class ConfigurationError(FrontalLabError):
    """Input that cannot be turned into a valid computation (exit code 2)"""


class NumericalError(FrontalLabError):
    """Computation failed on valid input (exit code 3)"""


# --- expression language -------------------------------------------------

class ExprSyntaxError(ConfigurationError):
    """Malformed expression text"""

    def __init__(self, text: str, offset: int, expected: Iterable[str], found: str = ""):
        self.text = text
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        self.found = found
        got = f" got {found!r}" if found else " got end of input"
        super().__init__(
            f"syntax error at byte offset {offset}: expected one of "
            f"{', '.join(self.expected)};{got}"
        )


class UnknownIdentifier(ConfigurationError):
    """Identifier that is neither a variable nor a library function"""

    def __init__(self, name: str, offset: int):
        self.name = name
        self.offset = offset
        super().__init__(f"unknown identifier {name!r} at byte offset {offset}")


# --- generators ----------------------------------------------------------

class PreconditionFailed(ConfigurationError):
    """A generator's point condition does not hold"""


class HarmonicityViolated(ConfigurationError):
    """Laplace-mode function F is not harmonic on the domain"""


class WrongGeneratorKind(ConfigurationError):
    """Operation requires a surface produced by a specific generator"""


class NonProperComposition(ConfigurationError):
    """Inner map of a false-singularity composition degenerates on an open set"""


class RunConfigError(ConfigurationError):
    """Run configuration failed schema validation"""


# --- numerics ------------------------------------------------------------

class DomainError(NumericalError):
    """Jet operation outside its domain (zero divisor, nonpositive log/sqrt, NaN)"""


class DegenerateBasis(NumericalError):
    """Tangent moving basis columns are linearly dependent"""

    def __init__(self, point: Tuple[float, float], cross_norm: float):
        self.point = point
        self.cross_norm = cross_norm
        super().__init__(
            f"tangent moving basis degenerate at {point}: |w1 x w2| = {cross_norm:.3e}"
        )


class ZeroDirection(NumericalError):
    """Direction vector is zero"""


class UmbilicLike(NumericalError):
    """Relative principal curvatures coincide, directions undefined"""


class ComplexEigen(NumericalError):
    """Negative discriminant in the relative principal curvature problem"""


class NotProperFrontal(NumericalError):
    """Singular set has interior points"""

    def __init__(self, message: str, cell: Optional[Tuple[float, float]] = None):
        self.cell = cell
        super().__init__(message)


class NotExtendable(NumericalError):
    """Normal curvature has no smooth extension (or no B field is available)"""


class ToleranceNotMet(NumericalError):
    """Adaptive quadrature exhausted its recursion depth"""

    def __init__(self, interval: Tuple[float, float], error: float, tol: float):
        self.interval = interval
        self.error = error
        self.tol = tol
        super().__init__(
            f"quadrature on [{interval[0]:.6g}, {interval[1]:.6g}] did not reach "
            f"tolerance {tol:.1e} (estimate {error:.3e})"
        )


class NonNegativeCurvature(NumericalError):
    """Extended Gaussian curvature is not negative on the chart"""


class UmbilicChart(NumericalError):
    """Extended principal curvatures coincide somewhere on the chart"""


class ChartSelectionFailed(NumericalError):
    """No factorization branch holds uniformly even on the smallest chart"""
