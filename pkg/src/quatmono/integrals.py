"""Adaptive Gauss-Legendre integrals of quaternion-valued integrands.

Values are batched as (n, 4) complex arrays in the idempotent basis, so
one product call handles a whole node set.  Refinement halves parameter
intervals per level (curves double, patches quadruple, boxes octuple the
piece count) and stops when two consecutive levels agree to the configured
tolerance.  Reductions go through compensated summation, so results do
not depend on evaluation chunking; the optional parallel mode only
splits node evaluation across threads.

The public entry points take an order tag naming which side the measure
multiplies on:

    d_zeta_left   integral of  d zeta * Psi      along a curve
    d_zeta_right  integral of  Psi * d zeta
    sigma_left    integral of  sigma * Psi       over a surface
    sigma_right   integral of  Psi * sigma

A field here is any callable mapping (n, 3) real points to (n, 4)
complex values.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algebra import mul_arrays
from .errors import NoConvergence, PoleHit
from .frame import Frame
from .geometry import Curve3, Region3, Surface3
from .quad import QuadratureSpec, csum_components, subdivided_rule

D_ZETA_LEFT = "d_zeta_left"
D_ZETA_RIGHT = "d_zeta_right"
SIGMA_LEFT = "sigma_left"
SIGMA_RIGHT = "sigma_right"

_PARALLEL_MIN_NODES = 4096
_PARALLEL_WORKERS = 4


@dataclass(frozen=True)
class IntegralResult:
    value: np.ndarray          # (4,) complex, idempotent components
    level: int                 # refinement level that met the tolerance
    error: float               # difference between the last two levels
    nodes: int                 # nodes evaluated at the final level


def norm4(value) -> float:
    """Euclidean norm over the real coordinate pairs of an (…,4) value."""
    value = np.asarray(value, dtype=complex)
    return float(np.sqrt(np.sum(value.real ** 2) + np.sum(value.imag ** 2)))


def _run_chunked(fn, arrays: Sequence[np.ndarray], quad: QuadratureSpec) -> np.ndarray:
    n = arrays[0].shape[0]
    if not quad.parallel or n < _PARALLEL_MIN_NODES:
        return fn(*arrays)
    bounds = np.linspace(0, n, _PARALLEL_WORKERS + 1).astype(int)
    pieces = [tuple(a[lo:hi] for a in arrays)
              for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
    with ThreadPoolExecutor(max_workers=_PARALLEL_WORKERS) as pool:
        parts = list(pool.map(lambda args: fn(*args), pieces))
    return np.concatenate(parts, axis=0)


def _adaptive(level_fn: Callable[[int], tuple[np.ndarray, int]],
              quad: QuadratureSpec, what: str) -> IntegralResult:
    prev, _ = level_fn(0)
    for level in range(1, quad.max_subdivisions + 1):
        cur, nodes = level_fn(level)
        err = norm4(cur - prev)
        if err <= quad.tol * max(1.0, norm4(cur)):
            return IntegralResult(cur, level, err, nodes)
        prev = cur
    raise NoConvergence(
        f"{what} did not converge to {quad.tol:g} within "
        f"{quad.max_subdivisions} refinement levels")


# --------------------------- node-level drivers ----------------------------

def _curve_level(curve: Curve3, node_fn, quad: QuadratureSpec,
                 level: int) -> tuple[np.ndarray, int]:
    t, w = subdivided_rule(quad.nodes_per_segment, 2 ** level)
    total = np.zeros(4, dtype=complex)
    nodes = 0
    for seg in curve.segments:
        points = seg.point(t)
        vels = seg.velocity(t)
        vals = _run_chunked(node_fn, (points, vels), quad)
        total = total + csum_components(vals * w[:, None])
        nodes += t.size
    return total, nodes


def integrate_curve(curve: Curve3, node_fn, quad: QuadratureSpec) -> IntegralResult:
    """Integrate node_fn(points, velocities) -> (n, 4) along a curve."""
    return _adaptive(lambda r: _curve_level(curve, node_fn, quad, r),
                     quad, "line integral")


def _surface_level(surface: Surface3, node_fn, quad: QuadratureSpec,
                   level: int) -> tuple[np.ndarray, int]:
    t, w = subdivided_rule(quad.nodes_per_segment, 2 ** level)
    uu, vv = np.meshgrid(t, t, indexing="ij")
    u = uu.ravel()
    v = vv.ravel()
    ww = np.outer(w, w).ravel()
    total = np.zeros(4, dtype=complex)
    nodes = 0
    for patch in surface.patches:
        points = patch.point(u, v)
        areas = patch.area_vectors(u, v)
        vals = _run_chunked(node_fn, (points, areas), quad)
        total = total + csum_components(vals * ww[:, None])
        nodes += u.size
    return total, nodes


def integrate_surface(surface: Surface3, node_fn,
                      quad: QuadratureSpec) -> IntegralResult:
    """Integrate node_fn(points, area_vectors) -> (n, 4) over a surface.

    Area vectors carry the (dydz, dzdx, dxdy) density, so node_fn must
    not apply any further Jacobian factor.
    """
    return _adaptive(lambda r: _surface_level(surface, node_fn, quad, r),
                     quad, "surface integral")


def _volume_level(region: Region3, node_fn, quad: QuadratureSpec,
                  level: int) -> tuple[np.ndarray, int]:
    t, w = subdivided_rule(quad.nodes_per_segment, 2 ** level)
    total = np.zeros(4, dtype=complex)
    nodes = 0
    for box in region.boxes:
        axes = [lo + (hi - lo) * t for lo, hi in zip(box.lo, box.hi)]
        xs, ys, zs = np.meshgrid(*axes, indexing="ij")
        points = np.stack([xs.ravel(), ys.ravel(), zs.ravel()], axis=-1)
        wx, wy, wz = np.meshgrid(*(w * (hi - lo) for lo, hi in zip(box.lo, box.hi)),
                                 indexing="ij")
        weights = (wx * wy * wz).ravel()
        vals = _run_chunked(node_fn, (points,), quad)
        total = total + csum_components(vals * weights[:, None])
        nodes += points.shape[0]
    return total, nodes


def integrate_region(region: Region3, node_fn,
                     quad: QuadratureSpec) -> IntegralResult:
    """Integrate node_fn(points) -> (n, 4) over a union of boxes."""
    return _adaptive(lambda r: _volume_level(region, node_fn, quad, r),
                     quad, "volume integral")


# --------------------------- integrand builders ----------------------------

def embed4(frame: Frame, vectors: np.ndarray) -> np.ndarray:
    """Map (n, 3) direction/area vectors to diagonal (n, 4) weights.

    Used both for the curve measure (tangents -> d zeta) and the surface
    measure (area vectors -> sigma); the two share one linear map.
    """
    diag = frame.diagonal_weights(vectors)
    out = np.zeros(diag.shape[:-1] + (4,), dtype=complex)
    out[..., 0] = diag[..., 0]
    out[..., 1] = diag[..., 1]
    return out


def measure_then_value(frame: Frame, value_fn) -> Callable:
    """node_fn for integrals of (measure * value), e.g. d zeta * Phi."""
    def node(points, vectors):
        return mul_arrays(embed4(frame, vectors), value_fn(points))
    return node


def value_then_measure(frame: Frame, value_fn) -> Callable:
    """node_fn for integrals of (value * measure), e.g. Phi-hat * d zeta."""
    def node(points, vectors):
        return mul_arrays(value_fn(points), embed4(frame, vectors))
    return node


def _ordered_node(order: str, frame: Frame, value_fn) -> Callable:
    if order in (D_ZETA_LEFT, SIGMA_LEFT):
        return measure_then_value(frame, value_fn)
    if order in (D_ZETA_RIGHT, SIGMA_RIGHT):
        return value_then_measure(frame, value_fn)
    raise ValueError(f"unknown integral order {order!r}")


def line_integral(order: str, field, curve: Curve3, frame: Frame,
                  quad: QuadratureSpec) -> IntegralResult:
    """Curve integral of d zeta * field (d_zeta_left) or field * d zeta."""
    if order not in (D_ZETA_LEFT, D_ZETA_RIGHT):
        raise ValueError(f"line_integral order must be {D_ZETA_LEFT!r} or "
                         f"{D_ZETA_RIGHT!r}, got {order!r}")
    return integrate_curve(curve, _ordered_node(order, frame, field), quad)


def surface_integral(order: str, field, surface: Surface3, frame: Frame,
                     quad: QuadratureSpec) -> IntegralResult:
    """Surface integral of sigma * field (sigma_left) or field * sigma."""
    if order not in (SIGMA_LEFT, SIGMA_RIGHT):
        raise ValueError(f"surface_integral order must be {SIGMA_LEFT!r} or "
                         f"{SIGMA_RIGHT!r}, got {order!r}")
    return integrate_surface(surface, _ordered_node(order, frame, field), quad)


def volume_integral(field, region: Region3, quad: QuadratureSpec) -> IntegralResult:
    """Plain volume integral of an (n, 4)-valued field over boxes."""
    return integrate_region(region, lambda pts: field(pts), quad)


def resolvent_weights(frame: Frame, points: np.ndarray, center,
                      eps: float = 1e-12) -> np.ndarray:
    """Diagonal (n, 4) values of (zeta - zeta_0)^{-1} along sampled points."""
    xi1 = frame.xi_many(1, points)
    xi2 = frame.xi_many(2, points)
    c1, c2 = center
    den1 = xi1 - c1
    den2 = xi2 - c2
    small = min(float(np.min(np.abs(den1))), float(np.min(np.abs(den2))))
    if small <= eps:
        raise PoleHit(f"resolvent denominator at magnitude {small:.3g}")
    out = np.zeros(points.shape[:-1] + (4,), dtype=complex)
    out[..., 0] = 1.0 / den1
    out[..., 1] = 1.0 / den2
    return out


def cauchy_right_node(frame: Frame, value_fn, center, eps: float = 1e-12):
    """node_fn for (zeta - zeta_0)^{-1} d zeta Phi."""
    def node(points, vectors):
        kernel = mul_arrays(resolvent_weights(frame, points, center, eps),
                            embed4(frame, vectors))
        return mul_arrays(kernel, value_fn(points))
    return node


def cauchy_left_node(frame: Frame, value_fn, center, eps: float = 1e-12):
    """node_fn for Phi-hat (zeta - zeta_0)^{-1} d zeta."""
    def node(points, vectors):
        kernel = mul_arrays(resolvent_weights(frame, points, center, eps),
                            embed4(frame, vectors))
        return mul_arrays(value_fn(points), kernel)
    return node
