"""
Numerical identity checks on generated surfaces
"""
from .suite import regular_points, run_invariant_suite

__all__ = ["regular_points", "run_invariant_suite"]
