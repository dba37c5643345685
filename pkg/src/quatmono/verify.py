"""Executable checks for the integral theorems.

Each ``verify_*`` function evaluates both sides of one identity with
independent code paths, reports the norm of the difference as the
residual, and packages the inputs into a serializable report.  The
``_r``/``_l`` suffixes on theorem ids track the side on which the
measure multiplies: ``_l`` forms put d zeta or sigma on the left of the
field, ``_r`` forms on the right.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass

import numpy as np

from .algebra import as_array, mul_arrays
from .errors import FrameNotHarmonic, NotEmbracing
from .fields import ConstantField, ExprField, MapField
from .frame import Frame, as_point
from .geometry import (Curve3, Patch, Region3, Surface3, box_boundary,
                       patch_boundary, project_curve)
from .holo import adaptive_contour, winding_number
from .integrals import (D_ZETA_LEFT, D_ZETA_RIGHT, SIGMA_LEFT, SIGMA_RIGHT,
                        cauchy_left_node, cauchy_right_node, integrate_curve,
                        integrate_region, integrate_surface, line_integral,
                        norm4, surface_integral)
from .monogenic import LEFT, RIGHT, GMonogenicMap
from .quad import QuadratureSpec

THEOREM_TOL = 1e-8
HARMONIC_EPS = 1e-12
EMBRACE_CLEARANCE = 1e-3

ORDER_LEFT = "left"
ORDER_RIGHT = "right"


class TheoremId(str, enum.Enum):
    T1_CURVE = "T1_curve"
    T2_HOMOTOPY_INSTANCE = "T2_homotopy_instance"
    LEMMA = "Lemma"
    T3_FORMULA_RIGHT = "T3_formula_right"
    T3_FORMULA_LEFT = "T3_formula_left"
    STOKES_R = "Stokes_r"
    STOKES_L = "Stokes_l"
    GAUSS_OSTR_R = "GaussOstr_r"
    GAUSS_OSTR_L = "GaussOstr_l"
    T4_SURFACE = "T4_surface"
    COROLLARY = "Corollary"


ALL_THEOREM_IDS = tuple(t.value for t in TheoremId)


@dataclass(frozen=True)
class VerificationReport:
    theorem_id: TheoremId
    residual: float
    tol: float
    passed: bool
    metadata: dict

    def __post_init__(self):
        if self.passed != (self.residual <= self.tol):
            raise ValueError("passed flag inconsistent with residual <= tol")

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id.value,
            "residual": self.residual,
            "tol": self.tol,
            "passed": self.passed,
            "metadata": self.metadata,
        }


# ------------------------------ descriptors --------------------------------

def complex_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def frame_descriptor(frame: Frame) -> dict:
    return {"a1": complex_pair(frame.a1), "a2": complex_pair(frame.a2),
            "b1": complex_pair(frame.b1), "b2": complex_pair(frame.b2)}


def map_descriptor(gmap: GMonogenicMap) -> dict:
    from . import expr
    sources = [fn.source if fn.source is not None else expr.to_string(fn.tree)
               for fn in gmap.components]
    return {"handedness": gmap.handedness, "components": sources}


def field_descriptor(field) -> dict:
    if isinstance(field, ExprField):
        return {"kind": "expressions", "components": list(field.sources)}
    if isinstance(field, ConstantField):
        return {"kind": "constant",
                "components": [complex_pair(c) for c in field.value]}
    if isinstance(field, MapField):
        return {"kind": "monogenic", **map_descriptor(field.gmap)}
    return {"kind": type(field).__name__}


def quad_descriptor(quad: QuadratureSpec) -> dict:
    return {"nodes_per_segment": quad.nodes_per_segment, "tol": quad.tol,
            "max_subdivisions": quad.max_subdivisions, "parallel": quad.parallel}


def _report(theorem_id: TheoremId, residual: float, tol: float,
            metadata: dict, started: float) -> VerificationReport:
    metadata = dict(metadata)
    metadata["wall_time_s"] = time.perf_counter() - started
    return VerificationReport(theorem_id, residual, tol,
                              residual <= tol, metadata)


def _base_meta(frame: Frame, quad: QuadratureSpec, geometry: dict | None,
               **extra) -> dict:
    meta = {"frame": frame_descriptor(frame),
            "quadrature": quad_descriptor(quad),
            "geometry": geometry if geometry is not None else {"kind": "programmatic"}}
    meta.update(extra)
    return meta


def _frame_consts(frame: Frame) -> tuple[np.ndarray, np.ndarray]:
    i2 = np.array([frame.a1, frame.a2, 0.0, 0.0], dtype=complex)
    i3 = np.array([frame.b1, frame.b2, 0.0, 0.0], dtype=complex)
    return i2, i3


# ----------------------------- curve theorems ------------------------------

def _cauchy_order(gmap: GMonogenicMap) -> str:
    # Right-monogenic maps satisfy the vanishing with d zeta in front;
    # left-monogenic maps with d zeta behind.
    return D_ZETA_LEFT if gmap.handedness == RIGHT else D_ZETA_RIGHT


def verify_cauchy_curve(gmap: GMonogenicMap, curve: Curve3,
                        quad: QuadratureSpec | None = None,
                        tol: float = THEOREM_TOL,
                        geometry: dict | None = None) -> VerificationReport:
    """Vanishing of the closed-curve integral of a monogenic map."""
    started = time.perf_counter()
    quad = quad or QuadratureSpec()
    if not curve.closed:
        raise ValueError("the closed-curve theorem needs a closed curve")
    result = line_integral(_cauchy_order(gmap), gmap.eval, curve, gmap.frame, quad)
    meta = _base_meta(gmap.frame, quad, geometry, map=map_descriptor(gmap),
                      order=_cauchy_order(gmap))
    return _report(TheoremId.T1_CURVE, norm4(result.value), tol, meta, started)


def verify_homotopy_pair(gmap: GMonogenicMap, curve_a: Curve3, curve_b: Curve3,
                         quad: QuadratureSpec | None = None,
                         tol: float = 2 * THEOREM_TOL,
                         geometry: dict | None = None) -> VerificationReport:
    """Equal integrals over two closed curves deformable into each other."""
    started = time.perf_counter()
    quad = quad or QuadratureSpec()
    if not (curve_a.closed and curve_b.closed):
        raise ValueError("homotopy comparison needs two closed curves")
    order = _cauchy_order(gmap)
    value_a = line_integral(order, gmap.eval, curve_a, gmap.frame, quad).value
    value_b = line_integral(order, gmap.eval, curve_b, gmap.frame, quad).value
    meta = _base_meta(gmap.frame, quad, geometry, map=map_descriptor(gmap),
                      order=order)
    return _report(TheoremId.T2_HOMOTOPY_INSTANCE, norm4(value_a - value_b),
                   tol, meta, started)


def verify_lemma(gmap: GMonogenicMap, curve: Curve3,
                 quad: QuadratureSpec | None = None,
                 tol: float = THEOREM_TOL,
                 geometry: dict | None = None,
                 swap_routes: bool = False) -> VerificationReport:
    """Quaternionic line integral vs its plane contour-integral reduction.

    Each component function integrates over the projection of the curve
    into its own plane variable; the component-to-projection routing
    differs between handedness.  ``swap_routes`` deliberately applies
    the wrong routing and exists for negative-control tests.
    """
    started = time.perf_counter()
    quad = quad or QuadratureSpec()
    frame = gmap.frame
    quat_side = line_integral(_cauchy_order(gmap), gmap.eval, curve, frame, quad).value

    routes = list(gmap.arg_indices)
    if swap_routes:
        routes[2], routes[3] = routes[3], routes[2]
    projections = {1: project_curve(curve, frame, 1),
                   2: project_curve(curve, frame, 2)}
    reduced = np.array([adaptive_contour(projections[j], fn.eval, quad)
                        for fn, j in zip(gmap.components, routes)], dtype=complex)
    meta = _base_meta(frame, quad, geometry, map=map_descriptor(gmap),
                      swapped_routes=swap_routes)
    return _report(TheoremId.LEMMA, norm4(quat_side - reduced), tol, meta, started)


def verify_cauchy_formula(gmap: GMonogenicMap, p0, curve: Curve3,
                          quad: QuadratureSpec | None = None,
                          tol: float = THEOREM_TOL,
                          clearance: float = EMBRACE_CLEARANCE,
                          geometry: dict | None = None) -> VerificationReport:
    """Reconstruction of the map's value from the resolvent integral.

    The curve must embrace the interior point once: both projections
    wind exactly once, positively, around the projected point.
    """
    started = time.perf_counter()
    quad = quad or QuadratureSpec()
    frame = gmap.frame
    if not curve.closed:
        raise ValueError("the integral formula needs a closed curve")
    point = as_point(p0)
    center = (frame.xi(1, point), frame.xi(2, point))
    for k in (1, 2):
        wind = winding_number(project_curve(curve, frame, k), center[k - 1],
                              clearance=clearance, quad=quad)
        if wind != 1:
            raise NotEmbracing(
                f"projection {k} winds {wind} times around the point, need 1")

    if gmap.handedness == RIGHT:
        node = cauchy_right_node(frame, gmap.eval, center)
        theorem = TheoremId.T3_FORMULA_RIGHT
    else:
        node = cauchy_left_node(frame, gmap.eval, center)
        theorem = TheoremId.T3_FORMULA_LEFT
    integral = integrate_curve(curve, node, quad).value
    reconstructed = integral / (2j * np.pi)
    residual = norm4(reconstructed - gmap.eval_point(point))
    meta = _base_meta(frame, quad, geometry, map=map_descriptor(gmap),
                      point=[point.x, point.y, point.z])
    return _report(theorem, residual, tol, meta, started)


# ------------------------- surface/volume theorems -------------------------

def _stokes_surface_node(field, frame: Frame, order: str):
    i2, i3 = _frame_consts(frame)

    def node(points, areas):
        px = field.partial(0, points)
        py = field.partial(1, points)
        pz = field.partial(2, points)
        if order == ORDER_LEFT:
            t_dydz = mul_arrays(i3, py) - mul_arrays(i2, pz)
            t_dzdx = pz - mul_arrays(i3, px)
            t_dxdy = mul_arrays(i2, px) - py
        else:
            t_dydz = mul_arrays(py, i3) - mul_arrays(pz, i2)
            t_dzdx = pz - mul_arrays(px, i3)
            t_dxdy = mul_arrays(px, i2) - py
        return (t_dydz * areas[..., 0:1] + t_dzdx * areas[..., 1:2]
                + t_dxdy * areas[..., 2:3])

    return node


def verify_stokes(field, patch: Patch, frame: Frame,
                  quad: QuadratureSpec | None = None,
                  tol: float = THEOREM_TOL,
                  order: str = ORDER_LEFT,
                  geometry: dict | None = None) -> VerificationReport:
    """Boundary circulation vs curl-style surface integral on one patch."""
    started = time.perf_counter()
    quad = quad or QuadratureSpec()
    if order not in (ORDER_LEFT, ORDER_RIGHT):
        raise ValueError(f"order must be 'left' or 'right', got {order!r}")
    boundary = patch_boundary(patch)
    curve_order = D_ZETA_LEFT if order == ORDER_LEFT else D_ZETA_RIGHT
    curve_side = line_integral(curve_order, field, boundary, frame, quad).value
    surface_side = integrate_surface(Surface3((patch,)),
                                     _stokes_surface_node(field, frame, order),
                                     quad).value
    theorem = TheoremId.STOKES_L if order == ORDER_LEFT else TheoremId.STOKES_R
    meta = _base_meta(frame, quad, geometry, field=field_descriptor(field),
                      order=order)
    return _report(theorem, norm4(curve_side - surface_side), tol, meta, started)


def _divergence_node(field, frame: Frame, order: str):
    i2, i3 = _frame_consts(frame)

    def node(points):
        px = field.partial(0, points)
        py = field.partial(1, points)
        pz = field.partial(2, points)
        if order == ORDER_LEFT:
            return px + mul_arrays(i2, py) + mul_arrays(i3, pz)
        return px + mul_arrays(py, i2) + mul_arrays(pz, i3)

    return node


def verify_gauss_ostr(field, region: Region3, frame: Frame,
                      quad: QuadratureSpec | None = None,
                      tol: float = THEOREM_TOL,
                      order: str = ORDER_LEFT,
                      geometry: dict | None = None) -> VerificationReport:
    """Closed-surface integral vs volume integral of the weighted gradient."""
    started = time.perf_counter()
    quad = quad or QuadratureSpec()
    if order not in (ORDER_LEFT, ORDER_RIGHT):
        raise ValueError(f"order must be 'left' or 'right', got {order!r}")
    boundary = box_boundary(region)
    surface_order = SIGMA_LEFT if order == ORDER_LEFT else SIGMA_RIGHT
    surface_side = surface_integral(surface_order, field, boundary, frame, quad).value
    volume_side = integrate_region(region, _divergence_node(field, frame, order),
                                   quad).value
    theorem = (TheoremId.GAUSS_OSTR_L if order == ORDER_LEFT
               else TheoremId.GAUSS_OSTR_R)
    meta = _base_meta(frame, quad, geometry, field=field_descriptor(field),
                      order=order)
    return _report(theorem, norm4(surface_side - volume_side), tol, meta, started)


def verify_surface_theorem(gmap: GMonogenicMap, region: Region3,
                           quad: QuadratureSpec | None = None,
                           tol: float = THEOREM_TOL,
                           geometry: dict | None = None) -> VerificationReport:
    """Boundary integral vs defect-weighted volume integral of the derivative."""
    started = time.perf_counter()
    quad = quad or QuadratureSpec()
    frame = gmap.frame
    boundary = box_boundary(region)
    defect = as_array(frame.laplace_defect())
    deriv = gmap.derivative
    if gmap.handedness == RIGHT:
        surface_side = surface_integral(SIGMA_LEFT, gmap.eval, boundary,
                                        frame, quad).value
        volume_node = lambda pts: mul_arrays(defect, deriv.eval(pts))
    else:
        surface_side = surface_integral(SIGMA_RIGHT, gmap.eval, boundary,
                                        frame, quad).value
        volume_node = lambda pts: mul_arrays(deriv.eval(pts), defect)
    volume_side = integrate_region(region, volume_node, quad).value
    meta = _base_meta(frame, quad, geometry, map=map_descriptor(gmap))
    return _report(TheoremId.T4_SURFACE, norm4(surface_side - volume_side),
                   tol, meta, started)


def verify_corollary(gmap: GMonogenicMap, region: Region3,
                     quad: QuadratureSpec | None = None,
                     tol: float = THEOREM_TOL,
                     geometry: dict | None = None) -> VerificationReport:
    """Both boundary integrals vanish when the frame has zero defect.

    The given components are read in both handedness patterns: sigma
    multiplies the right-pattern map from the left and the left-pattern
    map from the right.
    """
    started = time.perf_counter()
    quad = quad or QuadratureSpec()
    frame = gmap.frame
    defect_size = norm4(as_array(frame.laplace_defect()))
    if defect_size > HARMONIC_EPS:
        raise FrameNotHarmonic(
            f"frame defect has norm {defect_size:.3g}; the corollary needs 0")
    boundary = box_boundary(region)
    right_variant = GMonogenicMap(frame, gmap.components, RIGHT)
    left_variant = GMonogenicMap(frame, gmap.components, LEFT)
    left_value = surface_integral(SIGMA_LEFT, right_variant.eval, boundary,
                                  frame, quad).value
    right_value = surface_integral(SIGMA_RIGHT, left_variant.eval, boundary,
                                   frame, quad).value
    residual = max(norm4(left_value), norm4(right_value))
    meta = _base_meta(frame, quad, geometry, map=map_descriptor(gmap))
    return _report(TheoremId.COROLLARY, residual, tol, meta, started)
