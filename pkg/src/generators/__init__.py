"""
Surfaces from representation formulas, and the quadrature they rely on
"""
from .false_singularity import gen_false_singularity
from .kinds import GENERATOR_KINDS, IMMERSIONS
from .quadrature import QuadratureResult, integrate_1d
from .registry import SurfaceRegistry, build_surface, registry
from .representation import (
    gen_extendable_K,
    gen_extendable_normal,
    gen_rank0_front,
    gen_rank1_from_h,
    gen_rank1_front,
    gen_vanishing_K,
    rank1_to_nonvanishing,
    ruled_parts,
)

__all__ = [
    "GENERATOR_KINDS",
    "IMMERSIONS",
    "QuadratureResult",
    "SurfaceRegistry",
    "build_surface",
    "gen_extendable_K",
    "gen_extendable_normal",
    "gen_false_singularity",
    "gen_rank0_front",
    "gen_rank1_from_h",
    "gen_rank1_front",
    "gen_vanishing_K",
    "integrate_1d",
    "rank1_to_nonvanishing",
    "registry",
    "ruled_parts",
]
