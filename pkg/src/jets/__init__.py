"""
Forward-mode differentiation kernel (truncated two-variable Taylor jets)
"""
from .jet import (
    ARITH_OPS,
    MAX_ORDER,
    UNARY_FUNCTIONS,
    Jet2,
    JetVector,
    coefficient_count,
    combine,
    cross,
    dot,
    jet_arith,
    jet_seed,
    norm,
    scale,
    seed_pair,
)

__all__ = [
    "ARITH_OPS",
    "MAX_ORDER",
    "UNARY_FUNCTIONS",
    "Jet2",
    "JetVector",
    "coefficient_count",
    "combine",
    "cross",
    "dot",
    "jet_arith",
    "jet_seed",
    "norm",
    "scale",
    "seed_pair",
]
