"""Complexified-quaternion algebra and numerical integral-theorem checks.

The package splits into an algebra core (idempotent-basis arithmetic,
frames for embedding R^3, holomorphic component functions), adaptive
quadrature over parametric curves/surfaces/box regions, and a harness
that evaluates both sides of each integral identity and reports
residuals.
"""

from .algebra import (E1, E2, E3, E4, ONE, ZERO, HQ, StdQuat, from_std,
                      inv_e3, mul, mul_arrays, mul_std, resolvent, to_std)
from .errors import (Ambiguous, ConfigError, DependentBasis, FrameNotHarmonic,
                     NoConvergence, NotEmbracing, NotInvertible, NotSurjective,
                     ParseError, PoleHit, QuatmonoError, TooClose, WrongForm)
from .fields import ConstantField, ExprField, MapField
from .frame import Frame, Line3, Point3, make_frame
from .geometry import (Box3, Curve3, Patch, Region3, Seg3, Surface3,
                       box_boundary, box_region, circle3, lissajous3,
                       parametric_curve3, patch_boundary, polyline3,
                       project_curve)
from .holo import (Curve2, HoloFn, Seg2, circle2, contour_integral, polyline2,
                   winding_number)
from .integrals import (IntegralResult, line_integral, norm4, surface_integral,
                        volume_integral)
from .monogenic import GMonogenicMap, cr_residual
from .quad import QuadratureSpec
from .verify import (TheoremId, VerificationReport, verify_cauchy_curve,
                     verify_cauchy_formula, verify_corollary,
                     verify_gauss_ostr, verify_homotopy_pair, verify_lemma,
                     verify_stokes, verify_surface_theorem)

__version__ = "0.1.0"
