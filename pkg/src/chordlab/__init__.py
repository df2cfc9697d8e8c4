"""Exact computations with linear chord diagrams, their intersection matrix and
symplectic invariant tensors."""

from .chords import SizeGuardError, enumerate_diagrams, intersection_matrix, pairing
from .partitions import eigenvalue_mu, enumerate_partitions, hook_dim, invariant_dim, mu_to_partition
from .polyg import PolyG, RatG

__version__ = "0.1.0"

__all__ = [
    "PolyG",
    "RatG",
    "SizeGuardError",
    "eigenvalue_mu",
    "enumerate_diagrams",
    "enumerate_partitions",
    "hook_dim",
    "intersection_matrix",
    "invariant_dim",
    "mu_to_partition",
    "pairing",
]
