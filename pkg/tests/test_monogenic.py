"""Monogenic maps: component patterns, derivatives, CR conditions."""

import numpy as np
import pytest

from quatmono.monogenic import GMonogenicMap, cr_residual, gateaux_residual

from conftest import make_map


def test_right_vs_left_argument_pattern(frame_general):
    """F3 reads xi_1 in right maps and xi_2 in left maps; F4 the reverse."""
    right = make_map(frame_general, ("0", "0", "xi", "xi"), "right")
    left = make_map(frame_general, ("0", "0", "xi", "xi"), "left")
    p = (0.4, 0.3, -0.2)
    xi1 = frame_general.xi(1, p)
    xi2 = frame_general.xi(2, p)
    rv = right.eval_point(p)
    lv = left.eval_point(p)
    assert abs(rv[2] - xi1) < 1e-15 and abs(rv[3] - xi2) < 1e-15
    assert abs(lv[2] - xi2) < 1e-15 and abs(lv[3] - xi1) < 1e-15


def test_eval_batched_matches_pointwise(maps_general):
    rng = np.random.default_rng(8)
    pts = rng.uniform(-0.8, 0.8, (16, 3))
    for gmap in maps_general.values():
        batch = gmap.eval(pts)
        for i in range(16):
            single = gmap.eval_point(tuple(pts[i]))
            assert np.max(np.abs(batch[i] - single)) < 1e-13


def test_identity_map_derivative_is_one(frame_general):
    ident = make_map(frame_general, ("xi", "xi", "0", "0"))
    d = ident.derivative
    val = d.eval_point((0.3, 0.9, -0.4))
    assert np.allclose(val, [1, 1, 0, 0])


def test_partial_x_equals_derivative(maps_general):
    pts = np.array([[0.5, 0.2, -0.1], [0.9, -0.3, 0.4]])
    for gmap in maps_general.values():
        assert np.max(np.abs(gmap.partial(0, pts)
                             - gmap.derivative.eval(pts))) < 1e-13


def test_partials_match_finite_differences(maps_general, maps_harmonic):
    h = 1e-6
    base = np.array([0.6, 0.1, -0.2])
    for gmap in list(maps_general.values()) + list(maps_harmonic.values()):
        for axis in range(3):
            step = np.zeros(3)
            step[axis] = h
            fd = (gmap.eval((base + step)[None, :])[0]
                  - gmap.eval((base - step)[None, :])[0]) / (2 * h)
            exact = gmap.partial(axis, base[None, :])[0]
            assert np.max(np.abs(fd - exact)) < 1e-8


def test_cr_residual_second_order(maps_general):
    """The FD defect of a monogenic map decays like h^2."""
    gmap = maps_general["mixed"]
    p = (0.7, 0.25, -0.15)
    r3 = cr_residual(gmap, p, 1e-3)
    r4 = cr_residual(gmap, p, 1e-4)
    assert r3 < 1e-4
    assert 60.0 < r3 / r4 < 140.0


def test_cr_residual_wrong_handedness_large(maps_general):
    """Testing a left map against the right-handed conditions must fail."""
    gmap = maps_general["poly_exp"]            # a left map
    p = (0.7, 0.25, -0.15)
    own = cr_residual(gmap, p, 1e-4)
    crossed = cr_residual(gmap, p, 1e-4, test_handedness="right")
    assert own < 1e-6
    assert crossed > 1e-3


def test_gateaux_quotient_first_order(maps_general):
    gmap = maps_general["cubic"]
    p = (0.5, 0.2, 0.3)
    direction = (0.3, -0.5, 0.8)
    r1 = gateaux_residual(gmap, p, direction, 1e-4)
    r2 = gateaux_residual(gmap, p, direction, 1e-5)
    assert r1 < 1e-2
    assert 5.0 < r1 / r2 < 20.0      # first-order quotient: ~10x per decade


def test_gateaux_left_map(maps_general):
    gmap = maps_general["poly_exp"]
    r = gateaux_residual(gmap, (0.5, 0.2, 0.3), (1.0, 0.4, -0.2), 1e-6)
    assert r < 1e-4


def test_handedness_validation(frame_general):
    with pytest.raises(ValueError):
        make_map(frame_general, ("xi", "xi", "0", "0"), "sideways")


def test_component_count_validation(frame_general):
    from quatmono.holo import HoloFn
    with pytest.raises(ValueError):
        GMonogenicMap(frame_general, (HoloFn.identity(),) * 3, "right")
