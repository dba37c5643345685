"""Acceptance suite: ten end-to-end criteria, one test (and one line) each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
summary lines alongside the pass/fail verdicts.
"""

from pathlib import Path

import numpy as np
import pytest

from quatmono.algebra import (E1, E2, E3, E4, HQ, ONE, ZERO, as_array, mul,
                              mul_std, from_std, to_std)
from quatmono.cli import main
from quatmono.errors import NotEmbracing
from quatmono.fields import ExprField, MapField
from quatmono.geometry import circle3, expr_patch
from quatmono.integrals import _curve_level, norm4, volume_integral
from quatmono.monogenic import cr_residual
from quatmono.quad import QuadratureSpec
from quatmono.verify import (verify_cauchy_curve, verify_cauchy_formula,
                             verify_corollary, verify_gauss_ostr,
                             verify_homotopy_pair, verify_lemma, verify_stokes,
                             verify_surface_theorem)

from conftest import make_map, random_points, tilted_circle, tilted_square

QUAD = QuadratureSpec()
REPO = Path(__file__).resolve().parents[1]

BASIS = {"e1": E1, "e2": E2, "e3": E3, "e4": E4}
TABLE = {
    ("e1", "e1"): E1, ("e1", "e2"): ZERO, ("e1", "e3"): E3, ("e1", "e4"): ZERO,
    ("e2", "e1"): ZERO, ("e2", "e2"): E2, ("e2", "e3"): ZERO, ("e2", "e4"): E4,
    ("e3", "e1"): ZERO, ("e3", "e2"): E3, ("e3", "e3"): ZERO, ("e3", "e4"): E1,
    ("e4", "e1"): E4, ("e4", "e2"): ZERO, ("e4", "e3"): E2, ("e4", "e4"): ZERO,
}


def _random_hq(rng) -> HQ:
    c = rng.standard_normal(8)
    return HQ(complex(c[0], c[1]), complex(c[2], c[3]),
              complex(c[4], c[5]), complex(c[6], c[7]))


def _diff(a: HQ, b: HQ) -> float:
    return float(np.linalg.norm(as_array(a) - as_array(b)))


def test_criterion_01_algebra_fidelity():
    for (p, q), expected in TABLE.items():
        assert mul(BASIS[p], BASIS[q]) == expected
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(1000):
        a, b, c = (_random_hq(rng) for _ in range(3))
        worst = max(worst, _diff(mul(mul(a, b), c), mul(a, mul(b, c))),
                    _diff(mul(ONE, a), a), _diff(mul(a, ONE), a))
    assert worst < 1e-12
    print(f"\ncriterion 1 PASS: 16 table products exact, "
          f"max associativity/unit residual {worst:.2e}")


def test_criterion_02_basis_change_consistency():
    rng = np.random.default_rng(102)
    worst = 0.0
    for _ in range(1000):
        a, b = _random_hq(rng), _random_hq(rng)
        worst = max(worst, _diff(from_std(to_std(a)), a))
        lhs = to_std(mul(a, b))
        rhs = mul_std(to_std(a), to_std(b))
        cross = np.linalg.norm(
            np.array([lhs.q0 - rhs.q0, lhs.qI - rhs.qI,
                      lhs.qJ - rhs.qJ, lhs.qK - rhs.qK]))
        worst = max(worst, float(cross))
    assert worst < 1e-12
    print(f"\ncriterion 2 PASS: roundtrip and cross-basis residual "
          f"{worst:.2e} over 1000 pairs")


def test_criterion_03_cauchy_riemann(maps_general, maps_harmonic):
    rng = np.random.default_rng(103)
    ratios = []
    for stock in (maps_general, maps_harmonic):
        for gmap in stock.values():
            for point in random_points(rng, 20):
                coarse = cr_residual(gmap, point, h=1e-3)
                fine = cr_residual(gmap, point, h=1e-4)
                assert fine > 0
                ratios.append(coarse / fine)
    ratios = np.array(ratios)
    assert np.all((ratios >= 60.0) & (ratios <= 140.0)), (ratios.min(),
                                                          ratios.max())
    # negative control: evaluating against the wrong handedness pattern
    bad = cr_residual(maps_general["mixed"], (0.7, 0.2, -0.3), h=1e-3,
                      test_handedness="left")
    assert bad > 1e-3
    print(f"\ncriterion 3 PASS: O(h^2) ratios in "
          f"[{ratios.min():.0f}, {ratios.max():.0f}] over 200 samples; "
          f"wrong-pattern residual {bad:.2e}")


def test_criterion_04_cauchy_theorems(maps_general, maps_harmonic,
                                      closed_curves):
    worst = 0.0
    for stock in (maps_general, maps_harmonic):
        for gmap in stock.values():
            for curve in closed_curves.values():
                report = verify_cauchy_curve(gmap, curve, QUAD)
                assert report.passed, report.residual
                worst = max(worst, report.residual)
    pair = verify_homotopy_pair(maps_general["mixed"], closed_curves["circle"],
                                closed_curves["square"], QUAD)
    assert pair.passed and pair.residual < 2e-8
    print(f"\ncriterion 4 PASS: 40 closed-curve integrals vanish "
          f"(max {worst:.2e}); homotopic pair agrees to {pair.residual:.2e}")


def test_criterion_05_contour_reduction(maps_general, open_arc,
                                        closed_curves):
    worst = 0.0
    for gmap in maps_general.values():
        for curve in (open_arc, closed_curves["tilted"]):
            report = verify_lemma(gmap, curve, QUAD)
            assert report.passed, report.residual
            worst = max(worst, report.residual)
    swapped = verify_lemma(maps_general["cubic"], open_arc, QUAD,
                           swap_routes=True)
    assert not swapped.passed and swapped.residual > 1e-3
    print(f"\ncriterion 5 PASS: reduction max residual {worst:.2e}; "
          f"swapped index pattern fails at {swapped.residual:.2e}")


def test_criterion_06_cauchy_formula(frame_general):
    curves = [tilted_circle(30.0, 1.2), tilted_circle(20.0, 1.0),
              tilted_square(30.0, 1.1)]
    points = [(0.1, 0.2, 0.05), (-0.2, 0.1, -0.1), (0.15, -0.1, 0.1),
              (0.0, 0.05, 0.1)]
    variants = [make_map(frame_general, ("xi^2 + 1", "exp(xi)", "xi^3", "xi")),
                make_map(frame_general, ("exp(xi)", "xi^3", "xi^2", "2*xi"),
                         "left")]
    worst = 0.0
    for gmap in variants:
        for curve in curves:
            for point in points:
                report = verify_cauchy_formula(gmap, point, curve, QUAD)
                assert report.passed, (point, report.residual)
                worst = max(worst, report.residual)
    with pytest.raises(NotEmbracing):
        verify_cauchy_formula(variants[0], (5.0, 5.0, 0.0), curves[0], QUAD)
    print(f"\ncriterion 6 PASS: 24 reconstructions within {worst:.2e}; "
          f"non-embracing point rejected")


def test_criterion_07_stokes_and_divergence(frame_general, maps_general,
                                            unit_box):
    fields = [ExprField.parse(c) for c in (
        ("x^2*y", "x*z", "y*z^2", "x + y + z"),
        ("x^3", "y^3", "z^3", "x*y*z"),
        ("x*y", "y*z", "z*x", "x^2 - y^2"),
        ("z^2*x", "x^2*y + z", "y^2*z", "x + 2*y"),
    )]
    patch = expr_patch("u - 0.5", "v - 0.5", "0.2*u*v + 0.1*u^2")
    integrands = fields + [MapField(m) for m in maps_general.values()]
    worst_s = worst_g = 0.0
    for field in integrands:
        for order in ("left", "right"):
            s = verify_stokes(field, patch, frame_general, QUAD, order=order)
            g = verify_gauss_ostr(field, unit_box, frame_general, QUAD,
                                  order=order)
            assert s.passed, (order, s.residual)
            assert g.passed, (order, g.residual)
            worst_s = max(worst_s, s.residual)
            worst_g = max(worst_g, g.residual)
    print(f"\ncriterion 7 PASS: 9 integrands x 2 orders; Stokes max "
          f"{worst_s:.2e}, divergence max {worst_g:.2e}")


def test_criterion_08_surface_theorem(frame_general, frame_harmonic,
                                      maps_general, unit_box, flat_box):
    worst = 0.0
    for gmap in (maps_general["mixed"], maps_general["poly_exp"]):
        for region in (unit_box, flat_box):
            report = verify_surface_theorem(gmap, region, QUAD)
            assert report.passed, report.residual
            worst = max(worst, report.residual)
    harmonic = make_map(frame_harmonic, ("xi^3", "exp(xi)", "xi^2", "xi"))
    corollary = verify_corollary(harmonic, unit_box, QUAD)
    assert corollary.passed and corollary.residual < 1e-8
    print(f"\ncriterion 8 PASS: surface/volume sides agree to {worst:.2e}; "
          f"harmonic-frame surface integrals vanish to "
          f"{corollary.residual:.2e}")


def test_criterion_09_quadrature_quality(unit_box):
    curve = circle3((0, 0, 0), 1.0, (0, 0, 1))
    field = ExprField.parse(("exp(x)*sin(y)", "exp(y + z)", "x*y", "cos(x)"))
    node = lambda pts, vels: field(pts)
    coarse = QuadratureSpec(nodes_per_segment=4)
    reference, _ = _curve_level(curve, node, coarse, 5)
    errors = [norm4(_curve_level(curve, node, coarse, lvl)[0] - reference)
              for lvl in (0, 1, 2)]
    gains = (errors[0] / errors[1], errors[1] / errors[2])
    assert min(gains) >= 10.0

    smooth = ExprField.parse(("exp(x)*y", "sin(x + z)", "x*y*z", "cos(y)"))
    serial = volume_integral(smooth, unit_box, QuadratureSpec())
    parallel = volume_integral(smooth, unit_box, QuadratureSpec(parallel=True))
    gap = norm4(serial.value - parallel.value) / max(1.0, norm4(serial.value))
    assert gap < 1e-13
    print(f"\ncriterion 9 PASS: per-level error gains "
          f"{gains[0]:.0f}x, {gains[1]:.0f}x; parallel-serial gap {gap:.1e}")


def test_criterion_10_cli_end_to_end(tmp_path, capsys):
    full = str(REPO / "configs" / "full_suite.toml")
    broken = str(REPO / "configs" / "broken_map.toml")
    corrupt = tmp_path / "corrupt.toml"
    corrupt.write_text("[frames.general\na1 = ")

    assert main(["run", "--config", full]) == 0
    assert main(["run", "--config", str(corrupt)]) == 2
    assert main(["run", "--config", broken]) == 1
    capsys.readouterr()
    print(f"\ncriterion 10 PASS: bundled suite exit 0, corrupt config exit 2, "
          f"broken-map fixture exit 1")
