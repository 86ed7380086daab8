import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import slit_endpoint_mp
from qcharmonic.catalog import coefficients, evaluate_closed
from qcharmonic.geometry import (
    M,
    TraceResult,
    area,
    area_with_tail,
    hyperbola_trace,
    hyperbola_u,
    min_boundary_modulus,
    real_axis_trace,
    slit_check,
)
from qcharmonic.harmonic import HarmonicMap, rotate


def test_M_examples():
    assert M(0.0) == -0.25
    assert M(0.5) == pytest.approx(3.25 + 12 * math.log(0.75), abs=1e-15)
    assert M(0.5) == pytest.approx(-0.2021849, abs=1e-7)
    assert abs(M(1 - 1e-3) + 1 / 6) < 1e-2


@pytest.mark.parametrize("k", [1e-12, 1e-8, 1e-5, 0.1, 0.5, 0.9, 0.97, 0.98, 0.981, 0.99, 0.999, 0.99999])
def test_M_matches_high_precision(k):
    assert M(k) == pytest.approx(slit_endpoint_mp(k), abs=1e-12)


def test_M_tends_to_minus_one_sixth():
    assert abs(M(1 - 1e-9) + 1 / 6) < 1e-9


def test_M_is_continuous_across_branches():
    for k in (1e-8, 0.9):
        assert abs(M(k) - M(np.nextafter(k, 0))) < 1e-13


def test_M_matches_boundary_minimum():
    w = evaluate_closed("pk:0.5", 0.99999 * np.exp(1j * np.linspace(0.5, 2 * np.pi - 0.5, 4001)))
    assert w.real.max() == pytest.approx(M(0.5), abs=1e-6)


def test_slit_check_koebe():
    res = slit_check(0.0, 4096, 0.999)
    assert res.info["max_re"] <= -0.2499 + 1e-3


def test_slit_check_pk():
    res = slit_check(0.5, 4096, 0.999)
    assert res.ok
    assert res.info["max_abs_im"] < 5e-3
    assert res.info["max_re"] <= M(0.5) + 5e-3
    assert res.info["slack"] == pytest.approx(res.info["max_re"] - M(0.5))


def test_slit_residuals_decrease_toward_circle():
    res = [slit_check(0.5, 2048, r).residual_max for r in (0.9, 0.99, 0.999)]
    assert res[0] > res[1] > res[2]


def test_slit_check_validates():
    with pytest.raises(ValueError):
        slit_check(0.5, 8, 0.9)
    with pytest.raises(ValueError):
        slit_check(0.5, 64, 1.0)


@pytest.mark.parametrize("k", [0.0, 0.3, 0.5, 0.9])
def test_real_axis_trace(k):
    res = real_axis_trace(k)
    assert res.ok
    assert res.info["min_re"] > M(k)


def test_hyperbola_koebe_point():
    zeta = 1 + 1j
    z = (zeta - 1) / (zeta + 1)
    assert z == pytest.approx(1j / (2 + 1j))
    w = evaluate_closed("pk:0", z)
    assert w == pytest.approx(z / (1 - z) ** 2)
    assert w.imag == pytest.approx(0.5)
    assert hyperbola_u(0.0, 1.0, 1.0) == pytest.approx(w.real)


@pytest.mark.parametrize("k", [0.0, 0.2, 0.5, 0.9])
@pytest.mark.parametrize("c", [1.0, -0.5, 3.0])
def test_hyperbola_formula_agrees_with_direct_evaluation(k, c):
    res = hyperbola_trace(k, c, (0.1, 10.0), 801)
    assert res.residual_max < 1e-8
    assert res.verdicts["u_increasing"]


def test_hyperbola_mirror():
    up = hyperbola_trace(0.5, 1.5)
    down = hyperbola_trace(0.5, -1.5)
    assert np.allclose(up.points, np.conj(down.points))
    assert np.allclose(down.points.imag, -0.75)


def test_hyperbola_validates():
    with pytest.raises(ValueError):
        hyperbola_trace(0.5, 0.0)
    with pytest.raises(ValueError):
        hyperbola_trace(0.5, 1.0, (-1.0, 2.0))


def test_area_examples():
    assert area(HarmonicMap.identity(5)) == pytest.approx(math.pi)
    for k in np.arange(1, 10) / 10:
        f0 = coefficients(f"f0:{k}", 2)
        assert abs(area(f0) - math.pi * (1 - k * k / 2)) < 1e-12
        for alpha in (0.3, 1.7, 4.0):
            b = np.zeros(3, dtype=complex)
            b[2] = k / 2 * np.exp(1j * alpha)
            rotated = HarmonicMap.from_coefficients([0, 1, 0], b)
            assert abs(area(rotated) - area(f0)) < 1e-12


def test_area_tail():
    assert area_with_tail(coefficients("f0:0.5", 4))[1] == 0.0
    _, tail = area_with_tail(coefficients("p:0.3", 40))
    assert math.isinf(tail)
    v, tail = area_with_tail(HarmonicMap.from_coefficients(0.5 ** np.arange(30) * (np.arange(30) > 0) * 2,
                                                           np.zeros(30), normalized=False))
    n = np.arange(30, 400)
    assert tail == pytest.approx(math.pi * np.sum(n * 4 * 0.25**n), rel=1e-9)


@given(st.floats(0, 2 * np.pi), st.sampled_from(["pk:0.5", "p:0.7", "palpha:0.4:2", "qk:0.3", "l"]))
@settings(max_examples=30)
def test_area_rotation_invariant(theta, cid):
    f = coefficients(cid, 24)
    assert abs(area(rotate(f, theta)) - area(f)) < 1e-12 * max(1.0, abs(area(f)))


def test_min_boundary_modulus():
    assert min_boundary_modulus(HarmonicMap.identity(4), 0.9, 256) == pytest.approx(0.9)
    assert min_boundary_modulus("pk:0.5", 0.9999) == pytest.approx(abs(M(0.5)), abs=1e-6)
    assert min_boundary_modulus("pk:0", 0.9999) == pytest.approx(0.25, abs=1e-6)
    assert min_boundary_modulus(lambda z: 2 * z, 0.5, 64) == pytest.approx(1.0)


def test_trace_exports(tmp_path):
    res = slit_check(0.5, 64, 0.99)
    text = res.to_csv()
    assert text.splitlines()[0] == "parameter,re,im,residual"
    assert len(text.splitlines()) == 65
    path = tmp_path / "slit.svg"
    res.plot(path)
    assert path.read_text().lstrip().startswith("<?xml")
    assert "slit:" in res.summary()


def test_trace_result_invariants():
    with pytest.raises(ValueError):
        TraceResult("x", [], [], [])
    with pytest.raises(ValueError):
        TraceResult("x", [0.0], [1.0], [-1.0])
