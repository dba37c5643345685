"""Arithmetic of the complexified quaternion algebra.

Elements are stored in the idempotent basis {e1, e2, e3, e4}, in which
e1 and e2 are orthogonal idempotents (e1*e1 = e1, e2*e2 = e2, e1*e2 = 0)
and the unit decomposes as 1 = e1 + e2.  The full product table is

        .  |  e1   e2   e3   e4
        ---+--------------------
        e1 |  e1   0    e3   0
        e2 |  0    e2   0    e4
        e3 |  0    e3   0    e1
        e4 |  e4   0    e2   0

which is noncommutative: e3*e4 = e1 while e4*e3 = e2.  The standard
basis {1, I, J, K} with I^2 = J^2 = K^2 = -1, IJ = K is available at the
conversion boundary only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotInvertible, WrongForm

#: Default magnitude guard below which a diagonal coefficient counts as zero.
INVERT_EPS = 1e-12


@dataclass(frozen=True)
class HQ:
    """Algebra element c1*e1 + c2*e2 + c3*e3 + c4*e4 with complex ck."""

    c1: complex
    c2: complex
    c3: complex
    c4: complex

    def __add__(self, other: "HQ") -> "HQ":
        return HQ(self.c1 + other.c1, self.c2 + other.c2,
                  self.c3 + other.c3, self.c4 + other.c4)

    def __sub__(self, other: "HQ") -> "HQ":
        return HQ(self.c1 - other.c1, self.c2 - other.c2,
                  self.c3 - other.c3, self.c4 - other.c4)

    def __neg__(self) -> "HQ":
        return HQ(-self.c1, -self.c2, -self.c3, -self.c4)

    def __mul__(self, other):
        if isinstance(other, HQ):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        # other is a scalar here; scalars commute with everything.
        return self.scale(other)

    def scale(self, s: complex) -> "HQ":
        return HQ(s * self.c1, s * self.c2, s * self.c3, s * self.c4)

    def coeffs(self) -> tuple[complex, complex, complex, complex]:
        return (self.c1, self.c2, self.c3, self.c4)

    def norm(self) -> float:
        """Euclidean norm of the 8 real components."""
        return math.sqrt(abs(self.c1) ** 2 + abs(self.c2) ** 2
                         + abs(self.c3) ** 2 + abs(self.c4) ** 2)

    def is_close(self, other: "HQ", tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol

    def __repr__(self):
        return (f"HQ({self.c1:.6g}*e1 + {self.c2:.6g}*e2 + "
                f"{self.c3:.6g}*e3 + {self.c4:.6g}*e4)")


@dataclass(frozen=True)
class StdQuat:
    """Element q0 + qI*I + qJ*J + qK*K in the standard basis."""

    q0: complex
    qI: complex
    qJ: complex
    qK: complex


E1 = HQ(1, 0, 0, 0)
E2 = HQ(0, 1, 0, 0)
E3 = HQ(0, 0, 1, 0)
E4 = HQ(0, 0, 0, 1)
ZERO = HQ(0, 0, 0, 0)
ONE = HQ(1, 1, 0, 0)  # 1 = e1 + e2


def mul(a: HQ, b: HQ) -> HQ:
    """Bilinear product following the idempotent-basis table."""
    return HQ(a.c1 * b.c1 + a.c3 * b.c4,
              a.c2 * b.c2 + a.c4 * b.c3,
              a.c1 * b.c3 + a.c3 * b.c2,
              a.c2 * b.c4 + a.c4 * b.c1)


def mul_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Same product on stacked coefficient arrays of shape (..., 4)."""
    out = np.empty(np.broadcast_shapes(a.shape, b.shape), dtype=complex)
    out[..., 0] = a[..., 0] * b[..., 0] + a[..., 2] * b[..., 3]
    out[..., 1] = a[..., 1] * b[..., 1] + a[..., 3] * b[..., 2]
    out[..., 2] = a[..., 0] * b[..., 2] + a[..., 2] * b[..., 1]
    out[..., 3] = a[..., 1] * b[..., 3] + a[..., 3] * b[..., 0]
    return out


def as_array(a: HQ) -> np.ndarray:
    """Coefficients as a (4,) complex array for batched arithmetic."""
    return np.array(a.coeffs(), dtype=complex)


def from_array(arr) -> HQ:
    c1, c2, c3, c4 = np.asarray(arr, dtype=complex)
    return HQ(complex(c1), complex(c2), complex(c3), complex(c4))


def add(a: HQ, b: HQ) -> HQ:
    return a + b


def scale(s: complex, a: HQ) -> HQ:
    return a.scale(s)


def norm(a: HQ) -> float:
    return a.norm()


def to_std(a: HQ) -> StdQuat:
    """Coefficients in {1, I, J, K}.  Exact linear change of basis."""
    return StdQuat((a.c1 + a.c2) / 2,
                   1j * (a.c1 - a.c2) / 2,
                   1j * (a.c3 + a.c4) / 2,
                   (a.c4 - a.c3) / 2)


def from_std(s: StdQuat) -> HQ:
    """Inverse of :func:`to_std`."""
    return HQ(s.q0 - 1j * s.qI,
              s.q0 + 1j * s.qI,
              -1j * s.qJ - s.qK,
              -1j * s.qJ + s.qK)


def mul_std(a: StdQuat, b: StdQuat) -> StdQuat:
    """Product via the Hamilton rules IJ = K etc., coefficients complex.

    Kept separate from :func:`mul` so the two routes can be checked
    against each other.
    """
    return StdQuat(
        a.q0 * b.q0 - a.qI * b.qI - a.qJ * b.qJ - a.qK * b.qK,
        a.q0 * b.qI + a.qI * b.q0 + a.qJ * b.qK - a.qK * b.qJ,
        a.q0 * b.qJ - a.qI * b.qK + a.qJ * b.q0 + a.qK * b.qI,
        a.q0 * b.qK + a.qI * b.qJ - a.qJ * b.qI + a.qK * b.q0,
    )


def inv_e3(zeta: HQ, eps: float = INVERT_EPS) -> HQ:
    """Inverse of a diagonal element xi1*e1 + xi2*e2.

    Exists iff both xi1 and xi2 are nonzero; raises WrongForm if the
    element has e3/e4 parts, NotInvertible if a diagonal coefficient is
    within ``eps`` of zero.
    """
    if zeta.c3 != 0 or zeta.c4 != 0:
        raise WrongForm("inverse is only defined for xi1*e1 + xi2*e2 elements")
    if abs(zeta.c1) <= eps or abs(zeta.c2) <= eps:
        raise NotInvertible(
            f"diagonal coefficients ({zeta.c1}, {zeta.c2}) too close to zero")
    return HQ(1 / zeta.c1, 1 / zeta.c2, 0, 0)


def resolvent(t: complex, zeta: HQ, eps: float = INVERT_EPS) -> HQ:
    """(t*1 - zeta)^{-1} = e1/(t - xi1) + e2/(t - xi2) for diagonal zeta."""
    if zeta.c3 != 0 or zeta.c4 != 0:
        raise WrongForm("resolvent requires a diagonal element")
    d1 = t - zeta.c1
    d2 = t - zeta.c2
    if abs(d1) <= eps or abs(d2) <= eps:
        raise NotInvertible(f"t={t} is a pole of the resolvent")
    return HQ(1 / d1, 1 / d2, 0, 0)


BASIS = (E1, E2, E3, E4)

#: Row p, column q holds the coefficient 4-tuple of the product e_{p+1}*e_{q+1}.
BASIS_TABLE = tuple(tuple(mul(ep, eq).coeffs() for eq in BASIS) for ep in BASIS)
