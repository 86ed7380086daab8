import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcharmonic import bounds as bd
from qcharmonic.errors import AffineDegenerate, DegenerateAnalyticPart, NonRealCoefficients
from qcharmonic.harmonic import (
    DilatationSpec,
    HarmonicMap,
    affine_combine,
    dilatation,
    dumps,
    jacobian_at,
    loads,
    quasiregular_excess,
    rotate,
    star_to_convex,
    trusted_radius,
    typically_real_residual,
)
from qcharmonic.series import differentiate, evaluate
from qcharmonic.shear import construct_P_alpha, construct_P_k

N = 32


def f0(k, order=N):
    b = np.zeros(order + 1)
    b[2] = k / 2
    return HarmonicMap.from_coefficients(np.eye(1, order + 1, 1)[0], b, "f0")


def test_normalization_is_validated():
    with pytest.raises(ValueError):
        HarmonicMap.from_coefficients([0, 2, 0], [0, 0, 0])
    with pytest.raises(ValueError):
        HarmonicMap.from_coefficients([0, 1, 0], [0, 0])
    HarmonicMap.from_coefficients([1, 2], [0, 0], normalized=False)


def test_evaluation_is_h_plus_conj_g():
    f = HarmonicMap.from_coefficients([0, 1, 0], [0, 0, 0.5j])
    z = 0.3 + 0.4j
    assert f(z) == pytest.approx(z + np.conj(0.5j * z**2))


def test_dilatation_of_analytic_map_is_zero():
    assert dilatation(HarmonicMap.identity(8)).max_abs() == 0.0


def test_dilatation_of_P_k_is_kz():
    w = dilatation(construct_P_k(0.5, 64)).coeffs
    assert w[1] == pytest.approx(0.5, abs=1e-12)
    assert np.max(np.abs(np.delete(w, 1))) < 1e-10


def test_dilatation_of_P_alpha_is_rotated_kz():
    w = dilatation(construct_P_alpha(0.7, 1.2, 64)).coeffs
    assert abs(w[1] - 0.7 * np.exp(1.2j)) < 1e-12
    assert np.max(np.abs(np.delete(w, 1))) < 1e-10


def test_dilatation_needs_nonzero_h_prime():
    f = HarmonicMap.from_coefficients([0, 0, 1], [0, 1, 0], normalized=False)
    with pytest.raises(DegenerateAnalyticPart):
        dilatation(f)


def test_jacobian_examples():
    assert jacobian_at(HarmonicMap.identity(4), 0.3 + 0.2j) == pytest.approx(1.0)
    assert jacobian_at(f0(0.5), 0.0) == pytest.approx(1.0)
    pk = construct_P_k(0.5, 64)
    z = 0.3
    dh = evaluate(differentiate(pk.h), z)
    assert jacobian_at(pk, z) == pytest.approx(abs(dh) ** 2 * (1 - 0.25 * 0.09), rel=1e-12)


def test_quasiregular_excess_examples():
    assert quasiregular_excess(HarmonicMap.identity(8), 0.3) == pytest.approx(-0.3)
    pk = construct_P_k(0.5, 64)
    assert quasiregular_excess(pk, 0.5, radii=[0.99]) == pytest.approx(-0.005, abs=1e-9)
    assert quasiregular_excess(pk, 0.4, radii=[0.99]) == pytest.approx(0.095, abs=1e-9)


def test_affine_combine_identity_and_law():
    pk = construct_P_k(0.4, 16)
    assert affine_combine(pk, 0).h == pk.h
    b1 = 0.3 - 0.2j
    f = affine_combine(pk, b1)
    assert np.allclose(f.a, pk.a + np.conj(b1) * pk.b)
    assert np.allclose(f.b, pk.b + b1 * pk.a)
    assert "0.3" in f.label
    with pytest.raises(AffineDegenerate):
        affine_combine(pk, 1.0)


@given(st.floats(0, 0.95), st.floats(0, 2 * np.pi))
@settings(max_examples=40)
def test_affine_combine_dilatation_at_origin_is_b1(r, t):
    b1 = r * np.exp(1j * t)
    f = affine_combine(construct_P_k(0.5, 8), b1)
    assert abs(dilatation(f)[0] - b1) < 1e-12


def test_star_to_convex_examples():
    koebe = HarmonicMap.from_coefficients(np.arange(9), np.zeros(9))
    assert np.allclose(star_to_convex(koebe).a[1:], 1.0)
    ident = HarmonicMap.identity(6)
    assert np.allclose(star_to_convex(ident).a, ident.a)
    n = np.arange(2, 17)
    conv = star_to_convex(construct_P_k(0.5, 16))
    assert np.allclose(conv.a[2:], [bd.A(m, 0.5) / m for m in n])
    assert np.allclose(conv.b[2:], [-bd.B(m, 0.5) / m for m in n])


def test_rotation_preserves_moduli_and_is_conjugation():
    f = construct_P_alpha(0.6, 0.4, 20)
    g = rotate(f, 0.9)
    assert np.allclose(np.abs(g.a), np.abs(f.a))
    assert np.allclose(np.abs(g.b), np.abs(f.b))
    z = 0.4 - 0.1j
    assert g(z) == pytest.approx(np.exp(-0.9j) * f(np.exp(0.9j) * z))


def test_typically_real_examples():
    assert typically_real_residual(HarmonicMap.identity(8)) == 0.0
    assert typically_real_residual(construct_P_k(0.5, 64), samples=10_000) <= 1e-8
    flat = HarmonicMap.from_coefficients([0, 1, 0], [0, 0.99, 0])
    assert typically_real_residual(flat) == 0.0
    assert jacobian_at(flat, 0.1) == pytest.approx(1 - 0.99**2)
    with pytest.raises(NonRealCoefficients):
        typically_real_residual(construct_P_alpha(0.5, 1.0, 8))


def test_a_map_that_is_not_typically_real_is_caught():
    f = HarmonicMap.from_coefficients([0, 1, -3, 0], [0, 0, 0, 0])
    assert typically_real_residual(f, radius=0.9) > 0.1


def test_trusted_radius_shrinks_with_slow_decay():
    assert trusted_radius(HarmonicMap.identity(4)) == 0.95
    r = trusted_radius(construct_P_k(0.5, 32))
    assert 0.2 < r < 0.95
    pk = construct_P_k(0.5, 32)
    lead = abs(pk.a[-1]) + abs(pk.b[-1])
    assert lead * r**33 / (1 - r) <= 1e-12


def test_record_round_trip():
    f = construct_P_alpha(0.3, 2.0, 10)
    g = loads(dumps(f))
    assert g.h == f.h and g.g == f.g and g.label == f.label


def test_dilatation_spec_blaschke():
    spec = DilatationSpec.blaschke(0.6, [0.5j, -0.3], rotation=1j)
    assert spec.sup_modulus() <= 0.6 + 1e-9
    s = spec.series(20)
    z = 0.3 + 0.2j
    assert abs(evaluate(s, z) - spec(z)) < 1e-10
    assert not spec.has_real_coefficients
    real = DilatationSpec.blaschke(0.6, [0.5 + 0.2j, 0.5 - 0.2j], rotation=-1)
    assert real.has_real_coefficients
    assert np.max(np.abs(real.series(20).coeffs.imag)) < 1e-14
    with pytest.raises(ValueError):
        DilatationSpec.blaschke(0.6, [1.2])
    with pytest.raises(ValueError):
        DilatationSpec.linear(1.0)


@given(st.floats(0.01, 0.99), st.lists(st.builds(complex, st.floats(-0.65, 0.65), st.floats(-0.65, 0.65)),
                                        max_size=3), st.floats(0, 2 * np.pi))
@settings(max_examples=50)
def test_every_blaschke_dilatation_is_bounded_by_k(k, zeros, t):
    spec = DilatationSpec.blaschke(k, zeros, rotation=np.exp(1j * t))
    assert spec.sup_modulus(0.999, 2048) <= k + 1e-9


@given(st.floats(0.0, 0.9), st.floats(0, 2 * np.pi), st.floats(0, 0.9), st.floats(0, 2 * np.pi))
@settings(max_examples=40)
def test_jacobian_factorises_through_dilatation(k, alpha, r, t):
    f = construct_P_alpha(k, alpha, 48)
    z = 0.5 * r * np.exp(1j * t)
    dh = evaluate(differentiate(f.h), z)
    omega = evaluate(dilatation(f), z)
    assert abs(jacobian_at(f, z) - abs(dh) ** 2 * (1 - abs(omega) ** 2)) < 1e-9
