"""Quaternion-valued fields of (x, y, z) with exact partial derivatives.

The Stokes and Gauss-Ostrogradsky analogues hold for any continuously
differentiable field, monogenic or not, so the harness needs fields
beyond monogenic maps.  A field is a callable taking (n, 3) real points
to (n, 4) complex component arrays, plus ``partial(axis, points)`` with
axis 0 -> x, 1 -> y, 2 -> z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import expr
from .monogenic import GMonogenicMap

FIELD_VARS = ("x", "y", "z")
FIELD_FUNCS = ("exp", "sin", "cos")


def _env(points: np.ndarray) -> dict:
    points = np.asarray(points, dtype=float)
    return {"x": points[..., 0], "y": points[..., 1], "z": points[..., 2]}


def _stack4(trees, points: np.ndarray) -> np.ndarray:
    env = _env(points)
    shape = env["x"].shape
    cols = [np.broadcast_to(np.asarray(expr.evaluate(t, env), dtype=complex), shape)
            for t in trees]
    return np.stack(cols, axis=-1)


@dataclass(frozen=True)
class ExprField:
    """Four expression trees over x, y, z, one per idempotent component."""

    trees: tuple
    sources: tuple[str, str, str, str] = ("", "", "", "")
    _partials: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def parse(cls, components: Sequence[str]) -> "ExprField":
        if len(components) != 4:
            raise ValueError("need exactly four component expressions")
        trees = tuple(expr.parse(s, variables=FIELD_VARS, functions=FIELD_FUNCS)
                      for s in components)
        return cls(trees, tuple(components))

    def __call__(self, points) -> np.ndarray:
        return _stack4(self.trees, points)

    def partial(self, axis: int, points) -> np.ndarray:
        if axis not in (0, 1, 2):
            raise ValueError("axis must be 0, 1, or 2")
        if axis not in self._partials:
            var = FIELD_VARS[axis]
            self._partials[axis] = tuple(expr.derivative(t, var) for t in self.trees)
        return _stack4(self._partials[axis], points)


@dataclass(frozen=True)
class ConstantField:
    value: tuple[complex, complex, complex, complex]

    def __call__(self, points) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        out = np.empty(points.shape[:-1] + (4,), dtype=complex)
        out[...] = np.asarray(self.value, dtype=complex)
        return out

    def partial(self, axis: int, points) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        return np.zeros(points.shape[:-1] + (4,), dtype=complex)


@dataclass(frozen=True)
class MapField:
    """Adapter exposing a monogenic map through the field protocol."""

    gmap: GMonogenicMap

    def __call__(self, points) -> np.ndarray:
        return self.gmap.eval(points)

    def partial(self, axis: int, points) -> np.ndarray:
        return self.gmap.partial(axis, points)
