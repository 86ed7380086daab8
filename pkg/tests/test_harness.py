import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcharmonic import bounds as bd
from qcharmonic.errors import GenerationFailure
from qcharmonic.harmonic import DilatationSpec, HarmonicMap, quasiregular_excess, typically_real_residual
from qcharmonic.harness import (
    Family,
    TrialConfig,
    attainment_report,
    draw_dilatation_spec,
    gen_dilatation,
    gen_direction_convex_analytic,
    gen_typically_real_analytic,
    mobius_dilatation_sup,
    run_trials,
)
from qcharmonic.series import TruncatedSeries
from qcharmonic.shear import ShearMode, ShearProblem, half_plane, koebe, shear


def test_degree_zero_gives_kz():
    s = gen_dilatation(DilatationSpec.linear(0.4), seed=1, order=6)
    assert np.allclose(s.coeffs, [0, 0.4, 0, 0, 0, 0, 0])


def test_seeded_draw_is_deterministic():
    spec = DilatationSpec.blaschke(0.5)
    assert gen_dilatation(spec, 3, 20, degree=2) == gen_dilatation(spec, 3, 20, degree=2)
    assert gen_dilatation(spec, 3, 20, degree=2) != gen_dilatation(spec, 4, 20, degree=2)


@given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.floats(0.05, 0.95), st.booleans())
@settings(max_examples=40)
def test_drawn_dilatations_are_bounded(seed, degree, k, real):
    spec = draw_dilatation_spec(k, degree, np.random.default_rng(seed), real=real)
    assert spec.sup_modulus(0.999, 2048) <= k + 1e-9
    assert len(spec.zeros) == degree
    if real:
        assert np.max(np.abs(spec.series(24).coeffs.imag)) < 1e-12


def test_robertson_atoms():
    koebe_atom = gen_typically_real_analytic(0, 1, 10, nodes=[1.0], weights=[1.0])
    assert np.allclose(koebe_atom.coeffs, np.arange(11))
    rot = gen_typically_real_analytic(0, 1, 8, nodes=[0.0], weights=[1.0])
    assert set(np.round(rot.coeffs.real).astype(int)) <= {-1, 0, 1}
    with pytest.raises(ValueError):
        gen_typically_real_analytic(0, 0, 8)


@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
@settings(max_examples=40)
def test_robertson_mixture_coefficient_bound(seed, atoms):
    c = gen_typically_real_analytic(seed, atoms, 64).coeffs
    assert c[1] == pytest.approx(1.0)
    assert np.all(np.abs(c.imag) == 0)
    assert np.all(np.abs(c) <= np.arange(65) + 1e-12)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30)
def test_direction_convex_generator_is_convex(seed):
    phi, desc = gen_direction_convex_analytic(np.random.default_rng(seed), 24)
    c = phi.coeffs
    assert c[0] == 0 and c[1] == pytest.approx(1.0)
    # convex univalent maps have |c_n| <= 1
    assert np.all(np.abs(c) <= 1 + 1e-12)
    assert desc


def test_extremal_shears_have_zero_margins():
    k, N = 0.5, 32
    p = shear(ShearProblem(half_plane(N), TruncatedSeries.monomial(N, 1, -k), ShearMode.SUM))
    pk = shear(ShearProblem(koebe(N), TruncatedSeries.monomial(N, 1, k), ShearMode.DIFF))
    for n in range(2, N + 1):
        assert abs(bd.a(n, k) - abs(p.a[n])) < 1e-10 and abs(bd.b(n, k) - abs(p.b[n])) < 1e-10
        assert abs(bd.A(n, k) - abs(pk.a[n])) < 1e-10 and abs(bd.B(n, k) - abs(pk.b[n])) < 1e-10


@pytest.mark.parametrize("family", list(Family))
def test_trials_find_no_violations(family):
    rep = run_trials(TrialConfig(family, 0.5, 32, 60, seed=11))
    assert rep.ok, rep.violations[:3]
    assert rep.worst_margin > -1e-9
    assert not rep.skipped


def test_report_is_deterministic_and_json():
    cfg = TrialConfig("typically-real", 0.7, 24, 15, seed=5)
    a, b = run_trials(cfg).to_json(), run_trials(cfg).to_json()
    assert a == b
    d = json.loads(a)
    assert d["config"]["family"] == "typically-real"
    assert len(d["worst_margins"]) == 15


def test_trials_are_independent_of_count():
    short = run_trials(TrialConfig("direction-convex", 0.3, 16, 5, seed=2))
    long = run_trials(TrialConfig("direction-convex", 0.3, 16, 10, seed=2))
    assert [o.worst_margin for o in short.outcomes] == [o.worst_margin for o in long.outcomes[:5]]


def test_a_planted_violation_is_reported(monkeypatch):
    from qcharmonic import harness

    def bad_build(cfg, rng):
        f = HarmonicMap.from_coefficients([0, 1, 10.0], [0, 0, 0])
        return f, DilatationSpec.blaschke(cfg.k, [0.1]), f.h, "planted"

    monkeypatch.setattr(harness, "_build", bad_build)
    monkeypatch.setattr(harness, "_soundness", lambda cfg, f, phi: None)
    rep = run_trials(TrialConfig("typically-real", 0.5, 2, 2, seed=0))
    assert not rep.ok
    off = rep.violations[0]
    assert off["n"] == 2 and off["part"] == "a" and off["phi"] == "planted" and off["seed"] == 0


def test_failed_generation_is_skipped(monkeypatch):
    from qcharmonic import harness

    def failing(cfg, rng):
        raise GenerationFailure("no luck")

    monkeypatch.setattr(harness, "_build", failing)
    rep = run_trials(TrialConfig("convex-halfplane", 0.5, 8, 3))
    assert rep.ok and len(rep.skipped) == 3 and "no luck" in rep.skipped[0]["reason"]


def test_config_validation():
    with pytest.raises(ValueError):
        TrialConfig("convex-halfplane", 0.0)
    with pytest.raises(ValueError):
        TrialConfig("convex-halfplane", 0.5, trials=0)
    with pytest.raises(ValueError):
        TrialConfig("nope", 0.5)


def test_generated_maps_pass_soundness_checks():
    rng = np.random.default_rng(9)
    for _ in range(10):
        spec = draw_dilatation_spec(0.8, 3, rng, real=True)
        phi = gen_typically_real_analytic(rng, 3, 32)
        f = shear(ShearProblem(phi, spec.series(32), ShearMode.DIFF))
        assert quasiregular_excess(f, 0.8, radii=[0.3, 0.5]) <= 1e-9
        assert typically_real_residual(f) <= 1e-9


def test_attainment_report():
    k = 0.5
    k0 = bd.k0_of_k(k)
    t = attainment_report(32, k)
    for fam in ("conjB/a@pk", "conjB/b@pk", "convex0/a@p", "convex0/b@p", "full/a@qk", "full/b@qk",
                "convex/a@q-aligned", "convex/b@q-aligned"):
        assert t.max_abs_margin(fam) < 1e-9, fam
    for row in t.select("convex/a@q"):
        assert abs(row.margin - 2 * k * bd.b(row.n, k0)) < 1e-9
    for row in t.select("convex/b@q"):
        assert abs(row.margin - min(2 * bd.b(row.n, k0), 2 * k * bd.a(row.n, k0))) < 1e-9
    assert t.notes["sup_omega_q"] > k


def test_mobius_sup_exceeds_k():
    for k in (0.1, 0.5, 0.9):
        k0 = bd.k0_of_k(k)
        assert mobius_dilatation_sup(k0, k, 1) == pytest.approx(k * (3 + k * k) / (1 + 3 * k * k))
