"""Piecewise-smooth curves, surfaces, and box regions in R^3.

Curve segments and surface patches are parametric maps over [0,1] (or
[0,1]^2) carrying exact derivatives; all callables are vectorized over
numpy arrays of parameters.  Surface orientation follows the signed
Jacobian minors in the fixed order (dydz, dzdx, dxdy), i.e. the
components of d(point)/du x d(point)/dv, optionally flipped per patch.

Regions are unions of axis-aligned boxes, which keeps outward normals
exact and boundary orientation trivially consistent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from . import expr
from .frame import Frame
from .holo import Curve2, Seg2

JOINT_TOL = 1e-12


@dataclass(frozen=True)
class Seg3:
    """Smooth map [0,1] -> R^3 with derivative; vectorized over t."""

    point: Callable[[np.ndarray], np.ndarray]
    velocity: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Curve3:
    segments: tuple[Seg3, ...]
    closed: bool = False

    def __post_init__(self):
        if not self.segments:
            raise ValueError("curve needs at least one segment")
        t0 = np.array([0.0])
        t1 = np.array([1.0])
        ends = [seg.point(t1)[0] for seg in self.segments]
        starts = [seg.point(t0)[0] for seg in self.segments]
        for k in range(len(self.segments) - 1):
            if np.linalg.norm(ends[k] - starts[k + 1]) > JOINT_TOL:
                raise ValueError(f"gap between segments {k} and {k + 1}")
        if self.closed and np.linalg.norm(ends[-1] - starts[0]) > JOINT_TOL:
            raise ValueError("closed curve endpoints do not match")

    def reversed(self) -> "Curve3":
        segs = tuple(
            Seg3(point=_flip3(seg.point), velocity=_flip3_neg(seg.velocity))
            for seg in reversed(self.segments))
        return Curve3(segs, self.closed)


def _flip3(fn):
    return lambda t: fn(1.0 - np.asarray(t))


def _flip3_neg(fn):
    return lambda t: -fn(1.0 - np.asarray(t))


def concat_curves(a: Curve3, b: Curve3, closed: bool = False) -> Curve3:
    return Curve3(a.segments + b.segments, closed)


def restrict_seg(seg: Seg3, t0: float, t1: float) -> Seg3:
    """Reparametrize the sub-arc [t0, t1] back onto [0, 1]."""
    width = t1 - t0
    return Seg3(point=lambda t: seg.point(t0 + np.asarray(t) * width),
                velocity=lambda t: seg.velocity(t0 + np.asarray(t) * width) * width)


def split_curve(curve: Curve3, seg_index: int, t: float) -> tuple[Curve3, Curve3]:
    """Split one curve into two open curves at parameter t of a segment."""
    seg = curve.segments[seg_index]
    first = curve.segments[:seg_index] + (restrict_seg(seg, 0.0, t),)
    second = (restrict_seg(seg, t, 1.0),) + curve.segments[seg_index + 1:]
    return Curve3(first, False), Curve3(second, False)


# ----------------------------- constructors --------------------------------

def line_seg3(p0: Sequence[float], p1: Sequence[float]) -> Seg3:
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    delta = p1 - p0
    return Seg3(point=lambda t: p0 + np.multiply.outer(np.asarray(t, dtype=float), delta),
                velocity=lambda t: np.broadcast_to(delta, (np.size(t), 3)).copy())


def polyline3(points: Sequence[Sequence[float]], closed: bool = False) -> Curve3:
    pts = [np.asarray(p, dtype=float) for p in points]
    if closed and np.linalg.norm(pts[0] - pts[-1]) > JOINT_TOL:
        pts = pts + [pts[0]]
    segs = tuple(line_seg3(a, b) for a, b in zip(pts[:-1], pts[1:]))
    return Curve3(segs, closed)


def _plane_axes(normal: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    normal = normal / np.linalg.norm(normal)
    helper = np.array([0.0, 0.0, 1.0])
    if abs(normal @ helper) > 0.9:
        # near-vertical normals: start from the y-axis so that the
        # plain xy-circle comes out as (cos, sin, 0)
        helper = np.array([0.0, 1.0, 0.0])
    u = np.cross(helper, normal)
    u /= np.linalg.norm(u)
    v = np.cross(normal, u)
    return u, v


def circle3(center: Sequence[float] = (0, 0, 0), radius: float = 1.0,
            normal: Sequence[float] = (0, 0, 1),
            axis_u: Sequence[float] | None = None,
            axis_v: Sequence[float] | None = None,
            turns: int = 1) -> Curve3:
    """Circle traversed positively about ``normal`` (right-hand rule)."""
    center = np.asarray(center, dtype=float)
    if axis_u is not None and axis_v is not None:
        u = np.asarray(axis_u, dtype=float)
        v = np.asarray(axis_v, dtype=float)
    else:
        u, v = _plane_axes(np.asarray(normal, dtype=float))
    omega = 2.0 * np.pi * turns

    def point(t):
        ang = omega * np.asarray(t, dtype=float)
        return (center + radius * (np.multiply.outer(np.cos(ang), u)
                                   + np.multiply.outer(np.sin(ang), v)))

    def velocity(t):
        ang = omega * np.asarray(t, dtype=float)
        return radius * omega * (np.multiply.outer(-np.sin(ang), u)
                                 + np.multiply.outer(np.cos(ang), v))

    return Curve3((Seg3(point, velocity),), closed=True)


def lissajous3(amplitudes: Sequence[float], frequencies: Sequence[int],
               phases: Sequence[float] = (0.0, 0.0, 0.0)) -> Curve3:
    """Closed smooth curve (A_k sin(2 pi n_k t + phi_k)) over t in [0,1]."""
    amp = np.asarray(amplitudes, dtype=float)
    freq = np.asarray(frequencies, dtype=float)
    phase = np.asarray(phases, dtype=float)
    if not np.allclose(freq, np.round(freq)):
        raise ValueError("frequencies must be integers for a closed curve")

    def point(t):
        ang = 2.0 * np.pi * np.multiply.outer(np.asarray(t, dtype=float), freq) + phase
        return amp * np.sin(ang)

    def velocity(t):
        ang = 2.0 * np.pi * np.multiply.outer(np.asarray(t, dtype=float), freq) + phase
        return amp * 2.0 * np.pi * freq * np.cos(ang)

    return Curve3((Seg3(point, velocity),), closed=True)


_GEOM_FUNCS = ("exp", "sin", "cos")
_IMAG_TOL = 1e-9


def _real_eval(tree, env):
    values = expr.evaluate(tree, env)
    values = np.asarray(values, dtype=complex)
    if values.size and np.max(np.abs(values.imag)) > _IMAG_TOL:
        raise ValueError("geometry expression produced non-real values")
    return values.real


def parametric_seg3(x: str, y: str, z: str) -> Seg3:
    """Segment from coordinate expressions in the variable t."""
    trees = [expr.parse(s, variables=("t",), functions=_GEOM_FUNCS) for s in (x, y, z)]
    dtrees = [expr.derivative(tr, "t") for tr in trees]

    def point(t):
        t = np.asarray(t, dtype=float)
        return np.stack([np.broadcast_to(_real_eval(tr, {"t": t}), t.shape)
                         for tr in trees], axis=-1)

    def velocity(t):
        t = np.asarray(t, dtype=float)
        return np.stack([np.broadcast_to(_real_eval(tr, {"t": t}), t.shape)
                         for tr in dtrees], axis=-1)

    return Seg3(point, velocity)


def parametric_curve3(x: str, y: str, z: str, closed: bool = False) -> Curve3:
    return Curve3((parametric_seg3(x, y, z),), closed)


# ------------------------------ surfaces -----------------------------------

@dataclass(frozen=True)
class Patch:
    """Smooth map [0,1]^2 -> R^3 with partials; ``sign`` flips orientation."""

    point: Callable[[np.ndarray, np.ndarray], np.ndarray]
    du: Callable[[np.ndarray, np.ndarray], np.ndarray]
    dv: Callable[[np.ndarray, np.ndarray], np.ndarray]
    sign: float = 1.0

    def area_vectors(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Signed (dydz, dzdx, dxdy) components, i.e. sign * (r_u x r_v)."""
        return self.sign * np.cross(self.du(u, v), self.dv(u, v))

    def flipped(self) -> "Patch":
        return replace(self, sign=-self.sign)


@dataclass(frozen=True)
class Surface3:
    patches: tuple[Patch, ...]

    def __post_init__(self):
        if not self.patches:
            raise ValueError("surface needs at least one patch")

    def flipped(self) -> "Surface3":
        return Surface3(tuple(p.flipped() for p in self.patches))


def check_patch_rank(surface: Surface3, seed: int = 0, tol: float = 1e-10) -> None:
    """Spot-check that every patch has rank-2 Jacobian on a sample grid."""
    rng = np.random.default_rng(seed)
    base = np.linspace(0.05, 0.95, 5)
    uu, vv = np.meshgrid(base, base)
    extra = rng.uniform(0.0, 1.0, size=(2, 8))
    u = np.concatenate([uu.ravel(), extra[0]])
    v = np.concatenate([vv.ravel(), extra[1]])
    for idx, patch in enumerate(surface.patches):
        areas = np.linalg.norm(np.cross(patch.du(u, v), patch.dv(u, v)), axis=-1)
        if np.min(areas) <= tol:
            raise ValueError(f"patch {idx} is rank-deficient on the sample grid")


def make_surface(patches: Sequence[Patch], seed: int = 0) -> Surface3:
    surface = Surface3(tuple(patches))
    check_patch_rank(surface, seed)
    return surface


def affine_patch(origin: Sequence[float], eu: Sequence[float],
                 ev: Sequence[float], sign: float = 1.0) -> Patch:
    origin = np.asarray(origin, dtype=float)
    eu = np.asarray(eu, dtype=float)
    ev = np.asarray(ev, dtype=float)

    def point(u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return origin + np.multiply.outer(u, eu) + np.multiply.outer(v, ev)

    def du(u, v):
        return np.broadcast_to(eu, (np.size(u), 3)).copy()

    def dv(u, v):
        return np.broadcast_to(ev, (np.size(u), 3)).copy()

    return Patch(point, du, dv, sign)


def expr_patch(x: str, y: str, z: str, sign: float = 1.0) -> Patch:
    """Patch from coordinate expressions in the variables u, v."""
    trees = [expr.parse(s, variables=("u", "v"), functions=_GEOM_FUNCS)
             for s in (x, y, z)]
    du_trees = [expr.derivative(tr, "u") for tr in trees]
    dv_trees = [expr.derivative(tr, "v") for tr in trees]

    def evaluator(tree_list):
        def run(u, v):
            u = np.asarray(u, dtype=float)
            v = np.asarray(v, dtype=float)
            env = {"u": u, "v": v}
            return np.stack([np.broadcast_to(_real_eval(tr, env), u.shape)
                             for tr in tree_list], axis=-1)
        return run

    return Patch(evaluator(trees), evaluator(du_trees), evaluator(dv_trees), sign)


def patch_boundary(patch: Patch) -> Curve3:
    """Edge of a patch, oriented to match the patch's area vectors."""
    def edge(pt_fn, vel_fn):
        return Seg3(point=pt_fn, velocity=vel_fn)

    zeros = lambda t: np.zeros(np.size(t))
    ones = lambda t: np.ones(np.size(t))
    ts = lambda t: np.asarray(t, dtype=float)
    rts = lambda t: 1.0 - np.asarray(t, dtype=float)

    edges = (
        edge(lambda t: patch.point(ts(t), zeros(t)),
             lambda t: patch.du(ts(t), zeros(t))),
        edge(lambda t: patch.point(ones(t), ts(t)),
             lambda t: patch.dv(ones(t), ts(t))),
        edge(lambda t: patch.point(rts(t), ones(t)),
             lambda t: -patch.du(rts(t), ones(t))),
        edge(lambda t: patch.point(zeros(t), rts(t)),
             lambda t: -patch.dv(zeros(t), rts(t))),
    )
    boundary = Curve3(edges, closed=True)
    return boundary if patch.sign > 0 else boundary.reversed()


# ------------------------------- regions -----------------------------------

@dataclass(frozen=True)
class Box3:
    lo: tuple[float, float, float]
    hi: tuple[float, float, float]

    def __post_init__(self):
        if not all(l < h for l, h in zip(self.lo, self.hi)):
            raise ValueError("box needs lo < hi componentwise")

    def volume(self) -> float:
        return math.prod(h - l for l, h in zip(self.lo, self.hi))

    def split(self) -> list["Box3"]:
        """The 8 half-size sub-boxes."""
        mid = tuple((l + h) / 2 for l, h in zip(self.lo, self.hi))
        out = []
        for ix in range(2):
            for iy in range(2):
                for iz in range(2):
                    lo = tuple(m if b else l for b, l, m in
                               zip((ix, iy, iz), self.lo, mid))
                    hi = tuple(h if b else m for b, m, h in
                               zip((ix, iy, iz), mid, self.hi))
                    out.append(Box3(lo, hi))
        return out


def _boxes_overlap(a: Box3, b: Box3) -> bool:
    return all(a.lo[i] < b.hi[i] and b.lo[i] < a.hi[i] for i in range(3))


@dataclass(frozen=True)
class Region3:
    boxes: tuple[Box3, ...]

    def __post_init__(self):
        if not self.boxes:
            raise ValueError("region needs at least one box")
        for i in range(len(self.boxes)):
            for j in range(i + 1, len(self.boxes)):
                if _boxes_overlap(self.boxes[i], self.boxes[j]):
                    raise ValueError(f"boxes {i} and {j} overlap")


def box_region(lo: Sequence[float], hi: Sequence[float]) -> Region3:
    return Region3((Box3(tuple(float(v) for v in lo),
                         tuple(float(v) for v in hi)),))


def box_boundary(region: Region3) -> Surface3:
    """Outward-oriented boundary of a single-box region (six patches)."""
    if len(region.boxes) != 1:
        raise ValueError("box_boundary requires a single-box region")
    box = region.boxes[0]
    (x0, y0, z0), (x1, y1, z1) = box.lo, box.hi
    dx, dy, dz = x1 - x0, y1 - y0, z1 - z0
    patches = (
        affine_patch((x1, y0, z0), (0, dy, 0), (0, 0, dz)),   # +x
        affine_patch((x0, y0, z0), (0, 0, dz), (0, dy, 0)),   # -x
        affine_patch((x0, y1, z0), (0, 0, dz), (dx, 0, 0)),   # +y
        affine_patch((x0, y0, z0), (dx, 0, 0), (0, 0, dz)),   # -y
        affine_patch((x0, y0, z1), (dx, 0, 0), (0, dy, 0)),   # +z
        affine_patch((x0, y0, z0), (0, dy, 0), (dx, 0, 0)),   # -z
    )
    return Surface3(patches)


# ----------------------------- projections ---------------------------------

def project_curve(curve: Curve3, frame: Frame, k: int) -> Curve2:
    """Image of a space curve under the coordinate functional xi_k."""
    a, b = frame.pair(k)

    def project_seg(seg: Seg3) -> Seg2:
        def point(t):
            p = seg.point(np.asarray(t, dtype=float))
            return p[..., 0] + a * p[..., 1] + b * p[..., 2]

        def velocity(t):
            vel = seg.velocity(np.asarray(t, dtype=float))
            return vel[..., 0] + a * vel[..., 1] + b * vel[..., 2]

        return Seg2(point, velocity)

    return Curve2(tuple(project_seg(s) for s in curve.segments), curve.closed)
