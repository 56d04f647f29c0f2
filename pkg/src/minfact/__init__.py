"""Minimal factorizations of the long cycle, noncrossing partition chains and tree enumerations."""

from .perm import Permutation, compose, length, long_cycle
from .ncpart import NCPartition, Shape
from .poly import Monomial, Polynomial
from .chains import Chain, Factorization, FactorizationType, enumerate_chains, weighted_sum

__all__ = [
    "Chain",
    "Factorization",
    "FactorizationType",
    "Monomial",
    "NCPartition",
    "Permutation",
    "Polynomial",
    "Shape",
    "compose",
    "enumerate_chains",
    "length",
    "long_cycle",
    "weighted_sum",
]
