from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import exact_shear, halfplane_coeffs, koebe_coeffs
from qcharmonic import bounds as bd
from qcharmonic.catalog import a_alpha, b_alpha
from qcharmonic.errors import DegenerateDenominator
from qcharmonic.harmonic import DilatationSpec, dilatation
from qcharmonic.series import TruncatedSeries
from qcharmonic.shear import (
    ShearMode,
    ShearProblem,
    construct_P,
    construct_P_alpha,
    construct_P_k,
    half_plane,
    koebe,
    shear,
    shear_residual,
)

KS = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]


def test_zero_dilatation_returns_phi():
    phi = half_plane(10)
    f = shear(ShearProblem(phi, TruncatedSeries.zero(10), ShearMode.SUM))
    assert f.h == phi
    assert f.g.max_abs() == 0.0


@pytest.mark.parametrize("k", [Fraction(1, 10), Fraction(1, 2), Fraction(9, 10)])
def test_P_k_matches_exact_rational_shear(k):
    a, b = exact_shear(koebe_coeffs(24), [0, k], -1, 24)
    f = construct_P_k(float(k), 24)
    assert np.max(np.abs(f.a - np.array([float(x) for x in a]))) < 1e-10
    assert np.max(np.abs(f.b - np.array([float(x) for x in b]))) < 1e-10


@pytest.mark.parametrize("k", [Fraction(1, 10), Fraction(1, 2), Fraction(9, 10)])
def test_P_matches_exact_rational_shear(k):
    a, b = exact_shear(halfplane_coeffs(24), [0, -k], +1, 24)
    f = construct_P(float(k), 24)
    assert np.max(np.abs(f.a - np.array([float(x) for x in a]))) < 1e-12
    assert np.max(np.abs(f.b - np.array([float(x) for x in b]))) < 1e-12


def test_P_k_signs_are_positive():
    f = construct_P_k(0.5, 8)
    assert np.all(f.b[2:].real > 0)


def test_P_alpha_at_pi_is_P():
    assert np.allclose(construct_P_alpha(0.5, np.pi, 20).a, construct_P(0.5, 20).a, atol=1e-14)
    assert np.allclose(construct_P_alpha(0.5, np.pi, 20).b, construct_P(0.5, 20).b, atol=1e-14)
    f = construct_P_alpha(0.5, np.pi, 4)
    assert f.a[2] == pytest.approx(1.25)
    assert -f.b[2] == pytest.approx(0.25)


def test_P_alpha_with_k_zero_is_half_plane():
    f = construct_P_alpha(0.0, 1.0, 12)
    assert np.allclose(f.a[1:], 1.0) and f.g.max_abs() == 0.0


@pytest.mark.parametrize("alpha", [0.0, np.pi / 3, np.pi])
@pytest.mark.parametrize("k", KS)
def test_P_alpha_matches_coefficient_law(k, alpha):
    f = construct_P_alpha(k, alpha, 64)
    n = range(2, 65)
    assert np.max(np.abs(f.a[2:] - [a_alpha(m, k, alpha) for m in n])) < 1e-9
    assert np.max(np.abs(f.b[2:] + np.array([b_alpha(m, k, alpha) for m in n]))) < 1e-9


def test_degenerate_denominator():
    omega = TruncatedSeries.constant(8, -1.0)
    with pytest.raises(DegenerateDenominator):
        shear(ShearProblem(half_plane(8), omega, ShearMode.SUM))


def test_phi_normalization_checked():
    with pytest.raises(ValueError):
        ShearProblem(TruncatedSeries([0, 2, 0]), TruncatedSeries.zero(2))


def test_short_omega_rejected():
    with pytest.raises(ValueError):
        shear(ShearProblem(koebe(10), TruncatedSeries([0, 0.5]), ShearMode.DIFF))


def test_mode_parses_from_string():
    p = ShearProblem(koebe(4), TruncatedSeries.monomial(4, 1, 0.3), "diff")
    assert p.mode is ShearMode.DIFF and p.mode.sign == -1


@given(st.sampled_from(list(ShearMode)), st.floats(0.0, 0.95),
       st.lists(st.builds(complex, st.floats(-0.6, 0.6), st.floats(-0.6, 0.6)), max_size=3),
       st.floats(0, 2 * np.pi), st.booleans())
@settings(max_examples=60, deadline=None)
def test_shear_consistency_and_dilatation_round_trip(mode, k, zeros, t, vanishing):
    spec = DilatationSpec.blaschke(k, zeros, np.exp(1j * t), vanishing)
    omega = spec.series(64)
    phi = koebe(64) if mode is ShearMode.DIFF else half_plane(64)
    f = shear(ShearProblem(phi, omega, mode))
    assert shear_residual(f, phi, mode) < 1e-10
    w = dilatation(f)
    assert np.max(np.abs(w.coeffs - omega.coeffs[: w.order + 1])) < 1e-9


@pytest.mark.parametrize("k", KS)
def test_dilatation_round_trip_P_k(k):
    w = dilatation(construct_P_k(k, 64)).coeffs
    target = np.zeros_like(w)
    target[1] = k
    assert np.max(np.abs(w - target)) < 1e-9


def test_bounds_agree_with_exact_shear_at_rational_k():
    k = Fraction(3, 7)
    a, b = exact_shear(koebe_coeffs(12), [0, k], -1, 12)
    for n in range(2, 13):
        assert bd.A(n, float(k)) == pytest.approx(float(a[n]), rel=1e-13)
        assert bd.B(n, float(k)) == pytest.approx(float(b[n]), rel=1e-13)
