"""Shared fixtures: frames, stock monogenic maps, curves, and regions."""

import math

import numpy as np
import pytest

from quatmono import (GMonogenicMap, HoloFn, box_region, circle3, lissajous3,
                      make_frame, polyline3)

GENERAL = (1j, 1j, 1j, -1j)
HARMONIC = (1j, 0, 0, 1j)


@pytest.fixture(scope="session")
def frame_general():
    return make_frame(*GENERAL)


@pytest.fixture(scope="session")
def frame_harmonic():
    return make_frame(*HARMONIC)


def make_map(frame, components, handedness="right"):
    return GMonogenicMap(frame, tuple(HoloFn.parse(s) for s in components),
                         handedness)


# Five stock maps: polynomial, entire, mixed, rational (pole at xi = 3,
# outside every test domain), and a left-handed one.
STOCK_COMPONENTS = {
    "cubic": (("xi^3", "xi^2", "xi", "1"), "right"),
    "entire": (("exp(xi)", "exp(xi)", "0", "exp(xi)"), "right"),
    "mixed": (("xi^2 + 1", "exp(xi)", "xi^3", "xi"), "right"),
    "rational": (("1/(xi - 3)", "1/(xi - 3)", "0", "xi"), "right"),
    "poly_exp": (("exp(xi)", "xi^3", "xi^2", "2*xi"), "left"),
}


def stock_maps(frame):
    return {name: make_map(frame, comps, hand)
            for name, (comps, hand) in STOCK_COMPONENTS.items()}


@pytest.fixture(scope="session")
def maps_general(frame_general):
    return stock_maps(frame_general)


@pytest.fixture(scope="session")
def maps_harmonic(frame_harmonic):
    return stock_maps(frame_harmonic)


def tilted_circle(phi_deg: float, radius: float):
    """Circle spanned by the x-axis and a direction tilted out of the plane."""
    phi = math.radians(phi_deg)
    return circle3((0, 0, 0), radius, axis_u=(1, 0, 0),
                   axis_v=(0, math.cos(phi), math.sin(phi)))


def tilted_square(phi_deg: float, size: float):
    phi = math.radians(phi_deg)
    v = (0, size * math.cos(phi), size * math.sin(phi))
    return polyline3([(size, 0, 0), v, (-size, 0, 0), (0, -v[1], -v[2])],
                     closed=True)


@pytest.fixture(scope="session")
def closed_curves():
    return {
        "circle": circle3((0, 0, 0), 1.0, (0, 0, 1)),
        "tilted": tilted_circle(30.0, 1.2),
        "square": polyline3([(1.1, 0, 0), (0, 1.1, 0), (-1.1, 0, 0),
                             (0, -1.1, 0)], closed=True),
        "lissajous": lissajous3((0.9, 0.8, 0.5), (2, 3, 1), (0.0, 1.0, 0.5)),
    }


@pytest.fixture(scope="session")
def open_arc():
    return polyline3([(0, 0, 0), (0.5, 0.2, 0.1), (1, 0.1, 0.4)])


@pytest.fixture(scope="session")
def unit_box():
    return box_region((0, 0, 0), (1, 1, 1))


@pytest.fixture(scope="session")
def flat_box():
    return box_region((-0.5, 0, 0), (0.5, 0.8, 1.3))


def random_points(rng, n):
    """Sample points keeping xi away from 0 and from the pole at 3."""
    pts = np.empty((n, 3))
    pts[:, 0] = rng.uniform(0.4, 1.2, n)
    pts[:, 1] = rng.uniform(-0.5, 0.5, n)
    pts[:, 2] = rng.uniform(-0.5, 0.5, n)
    return pts
