"""Holomorphic functions of one complex variable and plane contours.

:class:`HoloFn` is a thin wrapper around an expression tree in the
variable ``xi`` with exact symbolic differentiation.  The module also
provides piecewise-smooth parametric paths in the complex plane,
adaptive Gauss-Legendre contour integration, and winding numbers; these
serve as the independent complex-plane route against which the
quaternion-valued integrals are checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import expr
from .errors import Ambiguous, NoConvergence, TooClose
from .quad import QuadratureSpec, csum, subdivided_rule


class HoloFn:
    """Holomorphic function built from the closed expression grammar."""

    def __init__(self, tree: expr.Node, source: str | None = None):
        self.tree = tree
        self.source = source if source is not None else expr.to_string(tree)

    @classmethod
    def parse(cls, text: str) -> "HoloFn":
        return cls(expr.parse(text, variables=("xi",), functions=("exp",)), text)

    @classmethod
    def constant(cls, value: complex) -> "HoloFn":
        return cls(expr.Const(complex(value)))

    @classmethod
    def identity(cls) -> "HoloFn":
        return cls(expr.Var("xi"), "xi")

    def eval(self, z):
        """Value at ``z`` (scalar or ndarray); raises PoleHit near poles."""
        return expr.evaluate(self.tree, {"xi": z})

    __call__ = eval

    def deriv(self) -> "HoloFn":
        return HoloFn(expr.derivative(self.tree, "xi"))

    def compose(self, inner: "HoloFn") -> "HoloFn":
        """f.compose(g) is the function xi -> f(g(xi))."""
        return HoloFn(expr.substitute(self.tree, "xi", inner.tree))

    def __repr__(self):
        return f"HoloFn({self.source!r})"


@dataclass(frozen=True)
class Seg2:
    """Smooth map [0,1] -> C with derivative; both accept ndarray t."""

    point: Callable[[np.ndarray], np.ndarray]
    velocity: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Curve2:
    """Piecewise-smooth path in C; joints must be continuous."""

    segments: tuple[Seg2, ...]
    closed: bool = False
    _JOINT_TOL = 1e-12

    def __post_init__(self):
        if not self.segments:
            raise ValueError("curve needs at least one segment")
        ends = [complex(seg.point(np.array([1.0]))[0]) for seg in self.segments]
        starts = [complex(seg.point(np.array([0.0]))[0]) for seg in self.segments]
        for k in range(len(self.segments) - 1):
            if abs(ends[k] - starts[k + 1]) > self._JOINT_TOL:
                raise ValueError(f"gap between segments {k} and {k + 1}")
        if self.closed and abs(ends[-1] - starts[0]) > self._JOINT_TOL:
            raise ValueError("closed curve endpoints do not match")

    def reversed(self) -> "Curve2":
        segs = tuple(
            Seg2(point=_flip(seg.point), velocity=_flip_neg(seg.velocity))
            for seg in reversed(self.segments))
        return Curve2(segs, self.closed)


def _flip(fn):
    return lambda t: fn(1.0 - np.asarray(t))


def _flip_neg(fn):
    return lambda t: -fn(1.0 - np.asarray(t))


def segment2(z0: complex, z1: complex) -> Seg2:
    z0, z1 = complex(z0), complex(z1)
    return Seg2(point=lambda t: z0 + np.asarray(t) * (z1 - z0),
                velocity=lambda t: np.full(np.shape(t), z1 - z0, dtype=complex))


def polyline2(points: Sequence[complex], closed: bool = False) -> Curve2:
    pts = [complex(p) for p in points]
    if closed and abs(pts[0] - pts[-1]) > 1e-12:
        pts = pts + [pts[0]]
    segs = tuple(segment2(a, b) for a, b in zip(pts[:-1], pts[1:]))
    return Curve2(segs, closed)


def circle2(center: complex = 0.0, radius: float = 1.0, turns: int = 1) -> Curve2:
    """Positively oriented circle; ``turns`` full revolutions in one segment."""
    center = complex(center)
    omega = 2j * np.pi * turns

    def point(t):
        return center + radius * np.exp(omega * np.asarray(t))

    def velocity(t):
        return radius * omega * np.exp(omega * np.asarray(t))

    return Curve2((Seg2(point, velocity),), closed=True)


def _contour_level(curve: Curve2, values: Callable, n: int, pieces: int) -> complex:
    nodes, weights = subdivided_rule(n, pieces)
    contributions = []
    for seg in curve.segments:
        z = seg.point(nodes)
        dz = seg.velocity(nodes)
        contributions.append(values(z) * dz * weights)
    return csum(np.concatenate(contributions))


def adaptive_contour(curve: Curve2, values: Callable, quad: QuadratureSpec) -> complex:
    """Integrate ``values(z) dz`` along the curve, halving until converged."""
    previous = _contour_level(curve, values, quad.nodes_per_segment, 1)
    for level in range(1, quad.max_subdivisions + 1):
        current = _contour_level(curve, values, quad.nodes_per_segment, 2 ** level)
        if abs(current - previous) <= quad.tol:
            return current
        previous = current
    raise NoConvergence(
        f"contour integral did not converge within {quad.max_subdivisions} subdivisions")


def contour_integral(f: HoloFn, curve: Curve2, quad: QuadratureSpec | None = None) -> complex:
    """Integral of f(z) dz along the curve by composite Gauss-Legendre."""
    quad = quad or QuadratureSpec()
    return adaptive_contour(curve, f.eval, quad)


def curve_min_distance(curve: Curve2, z0: complex, samples_per_segment: int = 512) -> float:
    """Sampled minimum distance from ``z0`` to the curve."""
    t = np.linspace(0.0, 1.0, samples_per_segment + 1)
    return min(float(np.min(np.abs(seg.point(t) - z0))) for seg in curve.segments)


#: Acceptance band around integers for the winding integral.
WINDING_BAND = 0.1


def snap_winding(value: complex) -> int:
    """Round a winding integral to an integer; raise Ambiguous outside the band."""
    nearest = round(value.real)
    if abs(value - nearest) > WINDING_BAND:
        raise Ambiguous(f"winding integral {value} is not close to an integer")
    return int(nearest)


def winding_number(curve: Curve2, z0: complex,
                   clearance: float = 1e-6,
                   quad: QuadratureSpec | None = None) -> int:
    """Winding of a closed curve around ``z0`` via the logarithmic integral."""
    if not curve.closed:
        raise ValueError("winding number requires a closed curve")
    if curve_min_distance(curve, z0) < clearance:
        raise TooClose(f"curve passes within {clearance} of {z0}")
    quad = quad or QuadratureSpec()
    z0 = complex(z0)
    integral = adaptive_contour(curve, lambda z: 1.0 / (z - z0), quad)
    return snap_winding(integral / (2j * np.pi))
