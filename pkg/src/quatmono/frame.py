"""Embedding of R^3 into the diagonal part of the algebra.

A frame fixes the two complex parameter pairs (a1, a2) and (b1, b2)
that define the spanning vectors

    i1 = 1 = e1 + e2,   i2 = a1*e1 + a2*e2,   i3 = b1*e1 + b2*e2.

A point (x, y, z) embeds as xi1*e1 + xi2*e2 with the coordinate
functionals xi1 = x + y*a1 + z*b1 and xi2 = x + y*a2 + z*b2.  A frame is
usable when {i1, i2, i3} are linearly independent over R and each
functional is onto C (each parameter pair contains a properly complex
entry).  Points where xi1 = 0 or xi2 = 0 are not invertible; they form
two straight lines through the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import HQ
from .errors import DependentBasis, NotSurjective

RANK_TOL = 1e-10


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


def as_point(p) -> Point3:
    """Coerce a Point3, sequence, or ndarray to Point3."""
    if isinstance(p, Point3):
        return p
    x, y, z = (float(v) for v in p)
    return Point3(x, y, z)


@dataclass(frozen=True)
class Line3:
    """Line through ``point`` with unit ``direction``."""

    point: Point3
    direction: tuple[float, float, float]

    def __post_init__(self):
        norm = math.sqrt(sum(d * d for d in self.direction))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError("direction must be a unit vector")


def _real_rank(matrix: np.ndarray, tol: float = RANK_TOL) -> int:
    """Rank by Gaussian elimination with partial pivoting."""
    m = np.array(matrix, dtype=float)
    rows, cols = m.shape
    rank = 0
    row = 0
    for col in range(cols):
        pivot = row + int(np.argmax(np.abs(m[row:, col])))
        if abs(m[pivot, col]) <= tol:
            continue
        m[[row, pivot]] = m[[pivot, row]]
        m[row] /= m[row, col]
        for r in range(rows):
            if r != row:
                m[r] -= m[r, col] * m[row]
        rank += 1
        row += 1
        if row == rows:
            break
    return rank


@dataclass(frozen=True)
class Frame:
    """Parameter choice (a1, a2, b1, b2); construction never raises.

    Use :func:`make_frame` to get a validated frame; the validity
    properties below report the two admissibility conditions.
    """

    a1: complex
    a2: complex
    b1: complex
    b2: complex

    @property
    def is_independent(self) -> bool:
        matrix = np.array([
            [1.0, self.a1.real, self.b1.real],
            [0.0, self.a1.imag, self.b1.imag],
            [1.0, self.a2.real, self.b2.real],
            [0.0, self.a2.imag, self.b2.imag],
        ])
        return _real_rank(matrix) == 3

    @property
    def is_surjective(self) -> bool:
        return ((self.a1.imag != 0 or self.b1.imag != 0)
                and (self.a2.imag != 0 or self.b2.imag != 0))

    @property
    def is_valid(self) -> bool:
        return self.is_independent and self.is_surjective

    # -- coordinates -------------------------------------------------------

    def pair(self, k: int) -> tuple[complex, complex]:
        if k == 1:
            return self.a1, self.b1
        if k == 2:
            return self.a2, self.b2
        raise ValueError("k must be 1 or 2")

    def xi(self, k: int, p) -> complex:
        """Coordinate functional xi_k at a point."""
        p = as_point(p)
        a, b = self.pair(k)
        return p.x + p.y * a + p.z * b

    def xi_many(self, k: int, points: np.ndarray) -> np.ndarray:
        """xi_k over an (n, 3) array of points."""
        a, b = self.pair(k)
        return points[:, 0] + points[:, 1] * a + points[:, 2] * b

    def embed(self, p) -> HQ:
        """The element xi1(p)*e1 + xi2(p)*e2."""
        return HQ(self.xi(1, p), self.xi(2, p), 0, 0)

    def dzeta(self, tangent: Sequence[float]) -> HQ:
        """Differential weight dx + i2*dy + i3*dz for a tangent vector."""
        return self.embed(tangent)

    def sigma(self, area_element: Sequence[float]) -> HQ:
        """Surface weight dydz + dzdx*i2 + dxdy*i3 for signed area components."""
        return self.embed(area_element)

    def diagonal_weights(self, vectors: np.ndarray) -> np.ndarray:
        """(n, 2) array of the e1/e2 coefficients of dzeta/sigma per row."""
        return np.stack([self.xi_many(1, vectors), self.xi_many(2, vectors)], axis=1)

    # -- derived quantities ------------------------------------------------

    def noninvertibility_line(self, k: int) -> Line3:
        """Points whose embedding has xi_k = 0; a line through the origin."""
        a, b = self.pair(k)
        # Im-part equation first: (y, z) proportional to (Im b, -Im a).
        y0, z0 = b.imag, -a.imag
        if y0 == 0 and z0 == 0:
            raise NotSurjective(f"pair {k} is all-real; the zero set is a plane")
        x0 = -(y0 * a.real + z0 * b.real)
        norm = math.sqrt(x0 * x0 + y0 * y0 + z0 * z0)
        # `+ 0.0` turns any negative zero into plain zero for display.
        return Line3(Point3(0.0, 0.0, 0.0),
                     (x0 / norm + 0.0, y0 / norm + 0.0, z0 / norm + 0.0))

    def laplace_defect(self) -> HQ:
        """The element 1 + i2^2 + i3^2 = (1+a1^2+b1^2)e1 + (1+a2^2+b2^2)e2."""
        return HQ(1 + self.a1 ** 2 + self.b1 ** 2,
                  1 + self.a2 ** 2 + self.b2 ** 2, 0, 0)

    def describe(self) -> str:
        """Human-readable summary of the derived quantities."""
        def fmt(c):
            return f"({c.real:g}{c.imag:+g}i)"

        lines = [
            f"xi1 = x + {fmt(self.a1)}*y + {fmt(self.b1)}*z",
            f"xi2 = x + {fmt(self.a2)}*y + {fmt(self.b2)}*z",
            f"independent over R: {self.is_independent}",
            f"surjective onto C:  {self.is_surjective}",
        ]
        if self.is_valid:
            for k in (1, 2):
                d = self.noninvertibility_line(k).direction
                lines.append(
                    f"noninvertibility line {k}: direction "
                    f"({d[0]:.6g}, {d[1]:.6g}, {d[2]:.6g})")
            defect = self.laplace_defect()
            lines.append(f"laplace defect: {fmt(complex(defect.c1))}*e1 "
                         f"+ {fmt(complex(defect.c2))}*e2 (norm {defect.norm():.3g})")
        return "\n".join(lines)


def make_frame(a1: complex, a2: complex, b1: complex, b2: complex) -> Frame:
    """Validated frame; raises DependentBasis or NotSurjective."""
    frame = Frame(complex(a1), complex(a2), complex(b1), complex(b2))
    if not frame.is_independent:
        raise DependentBasis("the vectors 1, i2, i3 are linearly dependent over R")
    if not frame.is_surjective:
        raise NotSurjective(
            "each of the pairs (a1, b1) and (a2, b2) needs a non-real entry")
    return frame
