"""
Data models for frontal-lab
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

Point = Tuple[float, float]


class FrontType(Enum):
    """Singularity classification by the front criterion"""
    REGULAR = "regular"
    FRONT_RANK1 = "front-rank1"
    FRONT_RANK0 = "front-rank0"
    NON_FRONT = "non-front-singularity"


class FieldKind(Enum):
    """Direction field families"""
    ASYMPTOTIC_1 = "asymptotic-1"
    ASYMPTOTIC_2 = "asymptotic-2"
    CURVATURE_LINE_1 = "curvature-line-1"
    CURVATURE_LINE_2 = "curvature-line-2"
    CUSTOM = "custom"


class TerminationReason(Enum):
    """Why a traced curve stopped"""
    STEPS_EXHAUSTED = "steps-exhausted"
    LEFT_DOMAIN = "left-domain"
    FIELD_DEGENERATE = "field-degenerate"
    NUMERICAL_FAILURE = "numerical-failure"


def _matrix(m: np.ndarray) -> List[List[float]]:
    return [[float(x) for x in row] for row in np.asarray(m)]


@dataclass(frozen=True)
class Domain:
    """Closed parameter rectangle [u0, u1] x [v0, v1]"""
    u0: float
    u1: float
    v0: float
    v1: float

    def __post_init__(self):
        if not (self.u0 < self.u1 and self.v0 < self.v1):
            raise ValueError(f"empty domain {self}")

    @classmethod
    def square(cls, half: float, center: Point = (0.0, 0.0)) -> "Domain":
        return cls(center[0] - half, center[0] + half, center[1] - half, center[1] + half)

    def contains(self, p: Point, slack: float = 0.0) -> bool:
        u, v = p
        return (self.u0 - slack <= u <= self.u1 + slack) and (self.v0 - slack <= v <= self.v1 + slack)

    @property
    def center(self) -> Point:
        return (0.5 * (self.u0 + self.u1), 0.5 * (self.v0 + self.v1))

    @property
    def min_extent(self) -> float:
        return min(self.u1 - self.u0, self.v1 - self.v0)

    def grid(self, n: int, m: int) -> Tuple[np.ndarray, np.ndarray]:
        """Sample coordinates: n values along u, m along v"""
        return np.linspace(self.u0, self.u1, n), np.linspace(self.v0, self.v1, m)

    def intersect(self, other: "Domain") -> "Domain":
        return Domain(max(self.u0, other.u0), min(self.u1, other.u1),
                      max(self.v0, other.v0), min(self.v1, other.v1))

    def to_dict(self) -> Dict:
        return {"u": [self.u0, self.u1], "v": [self.v0, self.v1]}


@dataclass(frozen=True)
class Provenance:
    """Which generator built a surface, and from what"""
    kind: str
    parameters: Dict[str, str] = field(default_factory=dict)
    constants: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "kind": self.kind,
            "parameters": dict(sorted(self.parameters.items())),
            "constants": dict(sorted(self.constants.items())),
        }


@dataclass
class InvariantFrame:
    """Pointwise invariants of a frontal with respect to its tangent moving basis"""
    point: Point
    first_form: np.ndarray           # I
    second_form: np.ndarray          # II
    first_form_omega: np.ndarray     # I_Omega
    second_form_omega: np.ndarray    # II_Omega
    Lambda: np.ndarray
    mu: np.ndarray
    alpha: np.ndarray
    lam: float
    K_omega: float
    H_omega: float
    k1_omega: Optional[float]
    k2_omega: Optional[float]
    normal: np.ndarray
    Dx: np.ndarray
    Dn: np.ndarray
    omega: np.ndarray

    @property
    def discriminant(self) -> float:
        return self.H_omega ** 2 - self.lam * self.K_omega

    def to_dict(self) -> Dict:
        return {
            "point": list(self.point),
            "I": _matrix(self.first_form),
            "II": _matrix(self.second_form),
            "I_omega": _matrix(self.first_form_omega),
            "II_omega": _matrix(self.second_form_omega),
            "Lambda": _matrix(self.Lambda),
            "mu": _matrix(self.mu),
            "alpha": _matrix(self.alpha),
            "lambda": self.lam,
            "K_omega": self.K_omega,
            "H_omega": self.H_omega,
            "k1_omega": self.k1_omega,
            "k2_omega": self.k2_omega,
            "normal": [float(x) for x in self.normal],
        }


@dataclass
class ClassicalFrame:
    """Classical first/second forms and curvatures at a regular point"""
    point: Point
    first_form: np.ndarray
    second_form: np.ndarray
    weingarten: np.ndarray   # I^{-1} II
    K: float
    H: float
    k1: float
    k2: float
    normal: np.ndarray

    def to_dict(self) -> Dict:
        return {
            "point": list(self.point),
            "I": _matrix(self.first_form),
            "II": _matrix(self.second_form),
            "K": self.K,
            "H": self.H,
            "k1": self.k1,
            "k2": self.k2,
        }


@dataclass
class ExtendedCurvatures:
    """Smooth extensions of K and H at a point, with the extension matrix W (mu = Lambda W)"""
    point: Point
    K: float
    H: Optional[float]
    mode: str  # analytic | numeric | generator
    W: Optional[np.ndarray]

    def to_dict(self) -> Dict:
        return {
            "point": list(self.point),
            "K": self.K,
            "H": self.H,
            "mode": self.mode,
            "W": None if self.W is None else _matrix(self.W),
        }


@dataclass
class SingularityReport:
    """Classification of one parameter point"""
    point: Point
    rank: int
    is_singular: bool
    front_type: FrontType
    H_omega: float
    K_omega: float
    lam: float

    def to_dict(self) -> Dict:
        return {
            "point": list(self.point),
            "rank": self.rank,
            "is_singular": self.is_singular,
            "front_type": self.front_type.value,
            "H_omega": self.H_omega,
            "K_omega": self.K_omega,
            "lambda": self.lam,
        }


@dataclass
class ExtendabilityVerdict:
    """Outcome of the normal-curvature extendability test"""
    extendable: bool
    mode: str  # analytic | numeric
    b_estimates: List[Dict] = field(default_factory=list)
    evidence: Dict = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "extendable": self.extendable,
            "mode": self.mode,
            "b_estimates": self.b_estimates,
            "evidence": self.evidence,
        }


@dataclass
class SmoothabilityVerdict:
    """Outcome of the parallel-smoothability test at a singular point"""
    point: Point
    epsilon: float
    smoothable: bool
    side: Optional[str]  # "positive" | "negative" | None
    min_singular_value: Dict[str, float] = field(default_factory=dict)
    sign_change: Dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "point": list(self.point),
            "epsilon": self.epsilon,
            "smoothable": self.smoothable,
            "side": self.side,
            "min_singular_value": self.min_singular_value,
            "sign_change": self.sign_change,
        }


@dataclass
class TracedCurve:
    """Polyline in parameter space produced by a direction-field flow"""
    kind: FieldKind
    vertices: np.ndarray          # rows (t, u, v)
    velocities: np.ndarray        # field value at each vertex
    termination: TerminationReason
    residuals: List[float] = field(default_factory=list)
    residual_name: Optional[str] = None

    @property
    def points(self) -> np.ndarray:
        return self.vertices[:, 1:3]

    @property
    def max_residual(self) -> Optional[float]:
        return max(self.residuals) if self.residuals else None

    def to_dict(self) -> Dict:
        return {
            "kind": self.kind.value,
            "seed": [float(self.vertices[0, 1]), float(self.vertices[0, 2])],
            "termination": self.termination.value,
            "vertices": [[float(x) for x in row] for row in self.vertices],
            "residual": self.residual_name,
            "residuals": [float(r) for r in self.residuals],
            "max_residual": self.max_residual,
        }


@dataclass
class IdentityCheck:
    """One named identity of the invariant suite"""
    name: str
    residual: float
    tolerance: float
    samples: int = 0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tolerance)

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "samples": self.samples,
            "detail": self.detail,
        }
