"""Quadrature settings and shared numeric helpers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss-Legendre settings for all integral operators.

    Refinement halves every parameter interval and compares successive
    values; ``max_subdivisions`` caps the number of halving rounds.
    """

    nodes_per_segment: int = 16
    tol: float = 1e-9
    max_subdivisions: int = 12
    parallel: bool = False

    def __post_init__(self):
        if self.nodes_per_segment < 2:
            raise ValueError("nodes_per_segment must be >= 2")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_subdivisions < 0:
            raise ValueError("max_subdivisions must be >= 0")


@lru_cache(maxsize=64)
def gauss_rule(n: int):
    """Nodes and weights on [0, 1] (cached)."""
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


def subdivided_rule(n: int, pieces: int):
    """Composite rule: ``pieces`` equal subintervals of [0, 1], n nodes each."""
    x, w = gauss_rule(n)
    width = 1.0 / pieces
    starts = np.arange(pieces) * width
    nodes = (starts[:, None] + x[None, :] * width).ravel()
    weights = np.tile(w * width, pieces)
    return nodes, weights


def csum(values: np.ndarray) -> complex:
    """Compensated (exactly rounded) sum of a 1-D complex array.

    Using ``math.fsum`` makes the reduction independent of evaluation
    chunking, so serial and parallel runs produce identical results.
    """
    return complex(math.fsum(values.real), math.fsum(values.imag))


def csum_components(values: np.ndarray) -> np.ndarray:
    """Column-wise compensated sum of an (n, k) complex array."""
    return np.array([csum(values[:, j]) for j in range(values.shape[1])])
