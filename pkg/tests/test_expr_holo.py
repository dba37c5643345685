"""Expression engine and holomorphic plane functions."""

import numpy as np
import pytest

from quatmono import expr
from quatmono.errors import Ambiguous, NoConvergence, ParseError, PoleHit, TooClose
from quatmono.holo import (Curve2, HoloFn, Seg2, circle2, contour_integral,
                           curve_min_distance, polyline2, segment2,
                           snap_winding, winding_number)
from quatmono.quad import QuadratureSpec


def ev(text, z, **kw):
    return expr.evaluate(expr.parse(text, **kw), {"xi": z})


# ------------------------------ parsing ------------------------------------

def test_parse_precedence_and_literals():
    assert ev("2 + 3*xi", 4.0) == 14.0
    assert ev("(2 + 3)*xi", 4.0) == 20.0
    assert ev("2*xi^3", 2.0) == 16.0          # power binds tighter than *
    assert ev("-xi^2", 3.0) == -9.0           # and tighter than unary minus
    assert ev("2^3^1", 2.0) == 8.0


def test_imaginary_literal_and_constants():
    assert ev("1i*xi", 2.0) == 2j
    assert ev("2.5i", 0.0) == 2.5j
    assert abs(ev("exp(1i*pi)", 0.0) + 1.0) < 1e-15
    assert ev("i*xi", 3.0) == 3j              # bare i is the unit


def test_parse_float_forms():
    assert ev("1.5e2 + xi", 0.5) == 150.5
    assert ev(".25*xi", 4.0) == 1.0


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as info:
        expr.parse("xi + * 2")
    assert info.value.position == 5
    with pytest.raises(ParseError):
        expr.parse("xi + (2")
    with pytest.raises(ParseError):
        expr.parse("bogus(xi)")
    with pytest.raises(ParseError):
        expr.parse("xi^2.5")                  # only integer exponents


def test_unknown_variable_rejected():
    with pytest.raises(ParseError):
        expr.parse("x + 1")                   # default grammar knows only xi
    tree = expr.parse("x + y", variables=("x", "y"))
    assert expr.evaluate(tree, {"x": 1.0, "y": 2.0}) == 3.0


def test_negative_power_and_pole_guard():
    assert ev("xi^-2", 2.0) == 0.25
    with pytest.raises(PoleHit):
        ev("xi^-1", 0.0)
    with pytest.raises(PoleHit):
        ev("1/(xi - 1)", 1.0)


def test_evaluate_vectorized():
    z = np.array([1.0, 2.0, 3.0], dtype=complex)
    out = ev("xi^2 + 1", z)
    assert np.allclose(out, [2.0, 5.0, 10.0])


def test_division_pole_guard_vectorized():
    z = np.array([0.5, 1.0], dtype=complex)
    with pytest.raises(PoleHit):
        ev("1/(xi - 1)", z)


# ---------------------------- differentiation ------------------------------

def test_derivative_rules_exact():
    d = expr.derivative(expr.parse("xi^3"), "xi")
    assert expr.evaluate(d, {"xi": 2.0}) == 12.0
    d = expr.derivative(expr.parse("exp(xi)"), "xi")
    assert abs(expr.evaluate(d, {"xi": 1.0}) - np.e) < 1e-15
    d = expr.derivative(expr.parse("1/(xi - 3)"), "xi")
    assert abs(expr.evaluate(d, {"xi": 1.0}) + 0.25) < 1e-15
    d = expr.derivative(expr.parse("sin(xi)", functions=("sin", "cos")), "xi")
    assert abs(expr.evaluate(d, {"xi": 0.7}) - np.cos(0.7)) < 1e-15


def test_derivative_vs_central_difference():
    """FD error drops ~100x when h shrinks 10x (second-order stencil)."""
    rng = np.random.default_rng(11)
    sources = ["xi^3 + 2*xi", "exp(xi)*xi^2", "1/(xi - 3)",
               "exp(2*xi) + xi^-2"]
    for src in sources:
        f = HoloFn.parse(src)
        df = f.deriv()
        for _ in range(5):
            z = complex(rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5))
            errs = []
            for h in (1e-3, 1e-4):
                fd = (f.eval(z + h) - f.eval(z - h)) / (2 * h)
                errs.append(abs(fd - df.eval(z)))
            ratio = errs[0] / errs[1]
            assert 80.0 < ratio < 120.0, (src, z, ratio)


def test_compose_and_substitute():
    outer = HoloFn.parse("xi^2 + 1")
    inner = HoloFn.parse("exp(xi)")
    comp = outer.compose(inner)
    z = 0.3 + 0.1j
    assert abs(comp.eval(z) - (np.exp(z) ** 2 + 1)) < 1e-14
    # chain rule carried by the symbolic derivative
    assert abs(comp.deriv().eval(z) - 2 * np.exp(2 * z)) < 1e-13


def test_to_string_round_trip():
    src = "xi^2 + (3+1i)*exp(xi)"
    tree = expr.parse(src)
    again = expr.parse(expr.to_string(tree))
    z = 0.2 - 0.4j
    assert abs(expr.evaluate(tree, {"xi": z})
               - expr.evaluate(again, {"xi": z})) < 1e-14


# --------------------------- contour integrals -----------------------------

def test_entire_function_closed_contour_vanishes():
    quad = QuadratureSpec()
    for src in ("xi", "xi^3 + 2*xi", "exp(xi)"):
        val = contour_integral(HoloFn.parse(src), circle2(0, 1.3), quad)
        assert abs(val) < 1e-12


def test_cauchy_kernel_gives_2_pi_i():
    val = contour_integral(HoloFn.parse("1/xi"), circle2(0, 1.0))
    assert abs(val - 2j * np.pi) < 1e-12


def test_open_contour_matches_antiderivative():
    # segment from 1 to 2+1i; antiderivative of xi^2 is xi^3/3
    curve = Curve2((segment2(1.0, 2.0 + 1.0j),), closed=False)
    val = contour_integral(HoloFn.parse("xi^2"), curve)
    expected = ((2.0 + 1.0j) ** 3 - 1.0) / 3.0
    assert abs(val - expected) < 1e-13


def test_polyline_contour_square():
    square = polyline2([1, 1j, -1, -1j], closed=True)
    val = contour_integral(HoloFn.parse("1/xi"), square)
    assert abs(val - 2j * np.pi) < 1e-11


def test_curve2_rejects_gaps():
    with pytest.raises(ValueError):
        Curve2((segment2(0, 1), segment2(2, 3)), closed=False)
    with pytest.raises(ValueError):
        Curve2((segment2(0, 1),), closed=True)


def test_no_convergence_when_budget_tiny():
    quad = QuadratureSpec(nodes_per_segment=2, tol=1e-14, max_subdivisions=1)
    with pytest.raises(NoConvergence):
        contour_integral(HoloFn.parse("1/(xi - 0.99)"), circle2(0, 1.0), quad)


# ------------------------------ winding ------------------------------------

def test_winding_basic():
    assert winding_number(circle2(0, 1), 0.2 + 0.1j) == 1
    assert winding_number(circle2(0, 1).reversed(), 0.2 + 0.1j) == -1
    assert winding_number(circle2(0, 1), 3.0) == 0
    assert winding_number(circle2(0, 1, turns=2), 0.0) == 2


def test_winding_square_polyline():
    square = polyline2([1.5, 1.5j, -1.5, -1.5j], closed=True)
    assert winding_number(square, 0.1 - 0.2j) == 1


def test_winding_too_close():
    with pytest.raises(TooClose):
        winding_number(circle2(0, 1), 1.0 + 1e-9j)


def test_winding_requires_closed():
    open_curve = Curve2((segment2(0, 1),), closed=False)
    with pytest.raises(ValueError):
        winding_number(open_curve, 5.0)


def test_snap_winding_band():
    assert snap_winding(1.02 + 0.01j) == 1
    assert snap_winding(-0.03 + 0j) == 0
    with pytest.raises(Ambiguous):
        snap_winding(0.5 + 0j)
    with pytest.raises(Ambiguous):
        snap_winding(1.0 + 0.2j)


def test_curve_min_distance():
    d = curve_min_distance(circle2(0, 1), 0.0)
    assert abs(d - 1.0) < 1e-4
