"""
Numeric policy for frontal-lab.

All thresholds and tolerances used by the library live here so that a run
is fully described by its config file plus this table.
"""
import os
from dataclasses import dataclass


@dataclass
class Config:
    """Main configuration class"""

    # Output
    OUTPUT_DIR: str = "out"
    SCHEMA_VERSION: int = 1
    FLOAT_DIGITS: int = 17

    # Singularity thresholds
    TAU_SING: float = 1e-10
    TAU_FRONT: float = 1e-8
    TAU_BRANCH: float = 1e-6
    TAU_DISC: float = 1e-10
    BASIS_DEGENERACY: float = 1e-12
    # |lambda| floor for comparisons against classical (regular-point) formulas
    REGULAR_LAMBDA: float = 1e-3
    # |lambda| below which a tangential zero of grad(lambda) counts as singular
    TOUCH_LAMBDA: float = 1e-8

    # Eigenproblems
    UMBILIC_GAP: float = 1e-10
    DISC_FLOOR: float = -1e-12

    # Quadrature
    QUAD_TOL: float = 1e-10
    QUAD_INNER_TOL: float = 1e-11
    QUAD_MAX_DEPTH: int = 40

    # Numeric extendability (ray limits)
    RAY_COUNT: int = 8
    RAY_SCALES: int = 8
    RAY_START: float = 0.1
    RAY_RATIO: float = 1.0 / 3.0
    RAY_STABILITY: float = 1e-3
    RAY_BOUND: float = 1e3
    RAY_MAX_POINTS: int = 6

    # Analytic identities
    B_FIELD_TOL: float = 1e-8
    HARMONIC_TOL: float = 1e-8
    PDE_TOL: float = 1e-8
    PROPER_GRID: int = 16

    # Curves
    RK4_STEP: float = 1e-3
    FIELD_DEGENERACY: float = 1e-12
    CHART_HALF_WIDTH: float = 0.25
    CHART_SAMPLES: int = 9
    CHART_MAX_HALVINGS: int = 6
    # extended K must stay below -CURVATURE_SIGN_TOL for asymptotic fields
    CURVATURE_SIGN_TOL: float = 1e-10

    # Parallel smoothability
    SMOOTHABLE_SCALES: int = 8
    RANK_TOL: float = 1e-8

    # Grids
    DEFAULT_GRID: int = 32
    SINGULAR_REFINE_STEPS: int = 80

    @property
    def output_dir(self) -> str:
        os.makedirs(self.OUTPUT_DIR, exist_ok=True)
        return self.OUTPUT_DIR


# Singleton config
config = Config()
