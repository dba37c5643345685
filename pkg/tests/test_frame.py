"""Frames: embeddings, validity flags, noninvertibility lines, defect."""

import numpy as np
import pytest

from quatmono.algebra import HQ, ONE, mul
from quatmono.errors import DependentBasis, NotSurjective
from quatmono.frame import Frame, Point3, as_point, make_frame


def test_xi_formulas_general(frame_general):
    f = frame_general
    p = (0.3, -0.2, 0.7)
    assert abs(f.xi(1, p) - (0.3 + 1j * (-0.2 + 0.7))) < 1e-15
    assert abs(f.xi(2, p) - (0.3 + 1j * (-0.2 - 0.7))) < 1e-15


def test_xi_formulas_harmonic(frame_harmonic):
    f = frame_harmonic
    p = (0.3, -0.2, 0.7)
    assert abs(f.xi(1, p) - (0.3 - 0.2j)) < 1e-15
    assert abs(f.xi(2, p) - (0.3 + 0.7j)) < 1e-15


def test_xi_many_matches_scalar(frame_general):
    rng = np.random.default_rng(0)
    pts = rng.standard_normal((40, 3))
    for k in (1, 2):
        batch = frame_general.xi_many(k, pts)
        for i in range(40):
            assert abs(batch[i] - frame_general.xi(k, pts[i])) < 1e-14


def test_embed_is_diagonal(frame_general):
    z = frame_general.embed((0.5, 0.1, -0.3))
    assert z.c3 == 0 and z.c4 == 0
    assert abs(z.c1 - frame_general.xi(1, (0.5, 0.1, -0.3))) < 1e-15


def test_embed_multiplicativity(frame_general):
    """f_k is multiplicative: embed(p)*embed(q) has xi_k(p)*xi_k(q) parts."""
    p, q = (0.3, 0.1, -0.2), (-0.5, 0.4, 0.6)
    prod = mul(frame_general.embed(p), frame_general.embed(q))
    assert abs(prod.c1 - frame_general.xi(1, p) * frame_general.xi(1, q)) < 1e-15
    assert abs(prod.c2 - frame_general.xi(2, p) * frame_general.xi(2, q)) < 1e-15


def test_dzeta_and_sigma_share_the_linear_map(frame_general):
    v = (0.2, -0.7, 0.4)
    assert frame_general.dzeta(v) == frame_general.sigma(v)
    w = frame_general.diagonal_weights(np.array([v]))
    assert abs(w[0, 0] - frame_general.xi(1, v)) < 1e-15


def test_unit_x_direction_gives_unit_weight(frame_general, frame_harmonic):
    for f in (frame_general, frame_harmonic):
        assert (f.dzeta((1, 0, 0)) - ONE).norm() < 1e-15


def test_laplace_defect_values(frame_general, frame_harmonic):
    # 1 + i^2 + i^2 = -1 per idempotent component for the general frame
    d = frame_general.laplace_defect()
    assert (d - HQ(-1, -1, 0, 0)).norm() < 1e-15
    assert frame_harmonic.laplace_defect().norm() < 1e-15


def test_noninvertibility_lines_harmonic(frame_harmonic):
    d1 = frame_harmonic.noninvertibility_line(1).direction
    d2 = frame_harmonic.noninvertibility_line(2).direction
    assert np.allclose(np.abs(d1), [0, 0, 1])
    assert np.allclose(np.abs(d2), [0, 1, 0])


def test_noninvertibility_line_zeroes_xi(frame_general):
    for k in (1, 2):
        line = frame_general.noninvertibility_line(k)
        d = np.asarray(line.direction)
        for t in (-1.7, 0.0, 2.3):
            assert abs(frame_general.xi(k, tuple(t * d))) < 1e-12


def test_make_frame_rejects_dependent_basis():
    with pytest.raises(DependentBasis):
        make_frame(1, 2, 3, 4)            # everything real and coplanar


def test_make_frame_rejects_all_real_pair():
    # independent over R, but (a1, b1) has no imaginary part
    with pytest.raises(NotSurjective):
        make_frame(1, 2, 0, 1j)


def test_lenient_frame_reports_flags():
    f = Frame(1, 2, 3, 4)
    assert not f.is_independent
    assert not f.is_surjective
    assert not f.is_valid
    text = f.describe()
    assert "False" in text


def test_describe_valid_frame(frame_harmonic):
    text = frame_harmonic.describe()
    assert "xi1" in text and "defect" in text
    assert "True" in text


def test_point_coercion():
    p = as_point((1, 2, 3))
    assert isinstance(p, Point3)
    assert p == as_point(p)
    assert np.allclose(p.as_array(), [1, 2, 3])


def test_frame_rank_boundary_case():
    # a2 differing from a1 only below the rank tolerance: still dependent
    f = Frame(1j, 1j * (1 + 1e-14), 1j, 1j)
    assert not f.is_independent
