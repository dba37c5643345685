"""Monogenic mappings built from holomorphic components.

A map takes values in the span of the two idempotents' "rows": each of
the four components is a holomorphic function of one of the plane
variables xi_1, xi_2, with the assignment pattern fixed by handedness.
Right-handed maps satisfy d/dy = i2 * d/dx and d/dz = i3 * d/dx; for
left-handed maps the frame factors multiply from the right instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .frame import Frame, as_point
from .holo import HoloFn

RIGHT = "right"
LEFT = "left"

# Which plane variable (1 or 2) feeds each of the four components.
_ARGS = {RIGHT: (1, 2, 1, 2), LEFT: (1, 2, 2, 1)}


@dataclass(frozen=True)
class GMonogenicMap:
    frame: Frame
    components: tuple[HoloFn, HoloFn, HoloFn, HoloFn]
    handedness: str = RIGHT

    def __post_init__(self):
        if self.handedness not in _ARGS:
            raise ValueError(f"handedness must be 'right' or 'left', "
                             f"got {self.handedness!r}")
        if len(self.components) != 4:
            raise ValueError("need exactly four components")

    @property
    def arg_indices(self) -> tuple[int, int, int, int]:
        return _ARGS[self.handedness]

    def eval(self, points) -> np.ndarray:
        """Values at (n, 3) real points as an (n, 4) complex array."""
        points = np.asarray(points, dtype=float)
        xi = {1: self.frame.xi_many(1, points), 2: self.frame.xi_many(2, points)}
        cols = []
        for fn, j in zip(self.components, self.arg_indices):
            cols.append(np.broadcast_to(np.asarray(fn.eval(xi[j]), dtype=complex),
                                        xi[j].shape))
        return np.stack(cols, axis=-1)

    def eval_point(self, p) -> np.ndarray:
        """Value at a single point as a (4,) complex array."""
        p = as_point(p)
        return self.eval(np.array([[p.x, p.y, p.z]]))[0]

    @cached_property
    def derivative(self) -> "GMonogenicMap":
        """The map with each component differentiated (equals d/dx)."""
        return GMonogenicMap(self.frame,
                             tuple(fn.deriv() for fn in self.components),
                             self.handedness)

    def partial(self, axis: int, points) -> np.ndarray:
        """Exact partial along axis 0->x, 1->y, 2->z at (n, 3) points."""
        if axis not in (0, 1, 2):
            raise ValueError("axis must be 0, 1, or 2")
        values = self.derivative.eval(points)
        if axis == 0:
            return values
        for comp, j in enumerate(self.arg_indices):
            a, b = self.frame.pair(j)
            values[..., comp] *= a if axis == 1 else b
        return values


def cr_residual(gmap: GMonogenicMap, point, h: float,
                test_handedness: str | None = None) -> float:
    """Finite-difference Cauchy-Riemann defect at one point.

    Central differences with step h approximate the three partials; the
    returned value is the combined norm of (d/dy - i2-coupled d/dx) and
    (d/dz - i3-coupled d/dx), where the coupling side follows
    ``test_handedness`` (defaulting to the map's own).  For a monogenic
    map tested against its own handedness this shrinks like h^2.
    """
    hand = test_handedness if test_handedness is not None else gmap.handedness
    if hand not in _ARGS:
        raise ValueError(f"unknown handedness {hand!r}")
    p = as_point(point)
    base = np.array([p.x, p.y, p.z], dtype=float)
    steps = np.zeros((6, 3))
    for axis in range(3):
        steps[2 * axis, axis] = h
        steps[2 * axis + 1, axis] = -h
    vals = gmap.eval(base + steps)
    px = (vals[0] - vals[1]) / (2.0 * h)
    py = (vals[2] - vals[3]) / (2.0 * h)
    pz = (vals[4] - vals[5]) / (2.0 * h)

    frame = gmap.frame
    i2 = np.array([frame.a1, frame.a2, 0.0, 0.0], dtype=complex)
    i3 = np.array([frame.b1, frame.b2, 0.0, 0.0], dtype=complex)
    from .algebra import mul_arrays
    if hand == RIGHT:
        ry = py - mul_arrays(i2, px)
        rz = pz - mul_arrays(i3, px)
    else:
        ry = py - mul_arrays(px, i2)
        rz = pz - mul_arrays(px, i3)
    return float(np.linalg.norm(np.concatenate([ry.view(float), rz.view(float)])))


def gateaux_residual(gmap: GMonogenicMap, point, direction, eps: float) -> float:
    """Check the derivative against a first-order difference quotient.

    Along a spatial direction d, the increment of a monogenic map is
    measure(d) * derivative (right) or derivative * measure(d) (left)
    up to O(eps); the returned norm of the mismatch shrinks like eps.
    """
    from .algebra import mul_arrays
    p = as_point(point)
    base = np.array([p.x, p.y, p.z], dtype=float)
    d = np.asarray(direction, dtype=float)
    quotient = (gmap.eval(base[None, :] + eps * d[None, :])[0]
                - gmap.eval_point(p)) / eps
    weights = gmap.frame.diagonal_weights(d[None, :])[0]
    measure = np.array([weights[0], weights[1], 0.0, 0.0], dtype=complex)
    deriv = gmap.derivative.eval_point(p)
    if gmap.handedness == RIGHT:
        predicted = mul_arrays(measure, deriv)
    else:
        predicted = mul_arrays(deriv, measure)
    return float(np.linalg.norm((quotient - predicted).view(float)))
