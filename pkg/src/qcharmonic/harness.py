"""
Seeded random stress tests of the coefficient bounds, and attainment tables
for the extremal maps.

Three families of sheared maps are generated:

``CONVEX_HALFPLANE_SHEAR``
    ``h + g = z/(1-z)`` with a random vanishing dilatation; checked against
    the convex bounds ``a(n,k), b(n,k)``.
``DIRECTION_CONVEX_SHEAR``
    ``h - g = phi`` with ``phi`` a random convex map (convex in the horizontal
    direction is all the shear needs); checked against ``A(n,k), B(n,k)``.
``TYPICALLY_REAL_SHEAR``
    ``h - g = phi`` with ``phi`` a Robertson mixture and a dilatation with
    real coefficients; checked against ``A(n,k), B(n,k)``.

Every trial draws from its own generator seeded by ``(seed, trial)``, so
reports do not depend on execution order.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, replace
from enum import Enum

import numpy as np

from . import bounds as bd
from .bounds import BoundFamily, BoundTable
from .errors import GenerationFailure, QCHarmonicError
from .harmonic import DilatationSpec, HarmonicMap, affine_combine, quasiregular_excess, trusted_radius, typically_real_residual
from .series import TruncatedSeries
from .shear import ShearMode, ShearProblem, construct_P, construct_P_k, half_plane, shear, shear_residual

__all__ = [
    "Family",
    "TrialConfig",
    "TrialOutcome",
    "ViolationReport",
    "SuiteReport",
    "draw_dilatation_spec",
    "gen_dilatation",
    "gen_typically_real_analytic",
    "gen_direction_convex_analytic",
    "run_trials",
    "default_suite",
    "attainment_report",
    "mobius_dilatation_sup",
    "TOLERANCE",
]

TOLERANCE = 1e-9
ZERO_RADIUS = 0.9
DEFAULT_KS = (0.1, 0.3, 0.5, 0.7, 0.9)


class Family(str, Enum):
    CONVEX_HALFPLANE_SHEAR = "convex-halfplane"
    DIRECTION_CONVEX_SHEAR = "direction-convex"
    TYPICALLY_REAL_SHEAR = "typically-real"

    @property
    def mode(self) -> ShearMode:
        return ShearMode.SUM if self is Family.CONVEX_HALFPLANE_SHEAR else ShearMode.DIFF

    @property
    def bound_family(self) -> BoundFamily:
        return BoundFamily.CONVEX0 if self is Family.CONVEX_HALFPLANE_SHEAR else BoundFamily.CONJ_B

    def gap_bound(self, n: int) -> float:
        """Bound on ``||a_n| - |b_n||``: the matching ``a - b`` or ``A - B``."""
        return 1.0 if self is Family.CONVEX_HALFPLANE_SHEAR else float(n)


@dataclass(frozen=True)
class TrialConfig:
    family: Family
    k: float
    order: int = 32
    trials: int = 200
    seed: int = 0
    dilatation_degree: int = 2
    tolerance: float = TOLERANCE

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not 0.0 < self.k < 1.0:
            raise ValueError(f"k must lie in (0, 1), got {self.k}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.dilatation_degree < 1:
            raise ValueError("dilatation_degree must be >= 1")
        if self.order < 2:
            raise ValueError("order must be >= 2")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["family"] = self.family.value
        return d


# -- generators -----------------------------------------------------------------

def _random_disk_points(rng: np.random.Generator, count: int, radius: float = ZERO_RADIUS) -> np.ndarray:
    r = radius * np.sqrt(rng.random(count))
    return r * np.exp(2j * np.pi * rng.random(count))


def draw_dilatation_spec(k: float, degree: int, rng: np.random.Generator, *, real: bool = False,
                         vanishing: bool = True) -> DilatationSpec:
    """
    ``k * rotation * z * prod (z - a)/(1 - conj(a) z)`` with ``degree`` random zeros.

    With ``real=True`` zeros come in conjugate pairs (plus one real zero for odd
    degree) and the rotation is ``+-1``, so every Taylor coefficient is real.
    """
    if real:
        pairs = _random_disk_points(rng, degree // 2)
        zeros = [z for p in pairs for z in (p, p.conjugate())]
        if degree % 2:
            zeros.append(complex(ZERO_RADIUS * (2 * rng.random() - 1)))
        rotation = 1.0 if rng.random() < 0.5 else -1.0
    else:
        zeros = list(_random_disk_points(rng, degree))
        rotation = np.exp(2j * np.pi * rng.random())
    return DilatationSpec.blaschke(k, zeros, rotation, vanishing)


def gen_dilatation(spec: DilatationSpec, seed: int, order: int, degree: int = 0,
                   real: bool = False) -> TruncatedSeries:
    """
    Series of a dilatation bounded by ``spec.k``.

    With ``degree=0`` the template ``spec`` is used as given (``k z`` for the
    linear kind).  Otherwise ``degree`` Blaschke zeros are drawn from
    ``default_rng(seed)``, keeping ``spec.k`` and ``spec.vanishing``.

    Raises
    ------
    GenerationFailure
        If the realized ``sup |omega|`` on ``|z| = 0.999`` exceeds ``k + 1e-9``.
    """
    if degree:
        spec = draw_dilatation_spec(spec.k, degree, np.random.default_rng(seed), real=real,
                                    vanishing=spec.vanishing)
    if spec.sup_modulus() > spec.k + TOLERANCE:
        raise GenerationFailure(f"dilatation sup exceeds k = {spec.k}")
    return spec.series(order)


def _robertson_atom(order: int, t: float) -> np.ndarray:
    # z / (1 - 2tz + z^2) = sum U_{n-1}(t) z^n, Chebyshev of the second kind
    c = np.zeros(order + 1)
    if order >= 1:
        c[1] = 1.0
    if order >= 2:
        c[2] = 2.0 * t
    for n in range(3, order + 1):
        c[n] = 2.0 * t * c[n - 1] - c[n - 2]
    return c


def gen_typically_real_analytic(seed: int | np.random.Generator, atoms: int, order: int,
                                nodes=None, weights=None) -> TruncatedSeries:
    """
    ``sum w_i z/(1 - 2 t_i z + z^2)`` with ``t_i`` in ``[-1, 1]`` and weights on the simplex.

    ``nodes`` and ``weights`` may be given explicitly; otherwise both are drawn.

    Raises
    ------
    GenerationFailure
        If some ``|c_n|`` exceeds ``n + 1e-12``.
    """
    if atoms < 1:
        raise ValueError("atoms must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    t = np.asarray(nodes, dtype=float) if nodes is not None else rng.uniform(-1.0, 1.0, atoms)
    w = np.asarray(weights, dtype=float) if weights is not None else rng.dirichlet(np.ones(atoms))
    if t.size != atoms or w.size != atoms or np.any(np.abs(t) > 1) or np.any(w < 0):
        raise ValueError("need atoms nodes in [-1, 1] and non-negative weights")
    w = w / w.sum()
    c = sum(wi * _robertson_atom(order, ti) for wi, ti in zip(w, t))
    if np.any(np.abs(c) > np.arange(order + 1) + 1e-12):
        raise GenerationFailure("Robertson mixture exceeds |c_n| <= n")
    return TruncatedSeries(c)


def gen_direction_convex_analytic(rng: np.random.Generator, order: int) -> tuple[TruncatedSeries, str]:
    """
    A random convex map, hence convex in the horizontal direction.

    One of ``z/(1 - xz)``, ``-conj(x) log(1 - xz)`` with ``|x| = 1`` arbitrary,
    or ``t z/(1 - xz) + (1-t)(-x log(1 - xz))`` with ``x = +-1``.
    """
    n = np.arange(order + 1)
    nn = np.where(n == 0, 1, n)
    kind = int(rng.integers(3))
    if kind == 2:
        x = 1.0 if rng.random() < 0.5 else -1.0
        t = float(rng.random())
        desc = f"mix(t={t:.6g},x={x:+.0f})"
    else:
        theta = float(2 * np.pi * rng.random())
        x = np.exp(1j * theta)
        desc = ("halfplane" if kind == 0 else "log") + f"(theta={theta:.6g})"
    pole = np.where(n >= 1, x ** (n - 1.0), 0.0)
    strip = np.where(n >= 1, x ** (n - 1.0) / nn, 0.0)
    c = {0: pole, 1: strip}.get(kind)
    if c is None:
        c = t * pole + (1 - t) * strip
    return TruncatedSeries(c), desc


# -- trials -------------------------------------------------------------------------

@dataclass
class TrialOutcome:
    trial: int
    worst_margin: float | None
    skipped: str | None = None
    offenders: list = field(default_factory=list)


@dataclass
class ViolationReport:
    """Per-trial worst margins and every offending coefficient, for one config."""

    config: TrialConfig
    outcomes: list[TrialOutcome] = field(default_factory=list)

    @property
    def violations(self) -> list[dict]:
        return [o for out in self.outcomes for o in out.offenders]

    @property
    def skipped(self) -> list[dict]:
        return [{"trial": o.trial, "reason": o.skipped} for o in self.outcomes if o.skipped]

    @property
    def worst_margin(self) -> float:
        m = [o.worst_margin for o in self.outcomes if o.worst_margin is not None]
        return min(m) if m else math.nan

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "trials_run": sum(o.skipped is None for o in self.outcomes),
            "trials_skipped": len(self.skipped),
            "violations": len(self.violations),
            "worst_margin": _num(self.worst_margin),
            "worst_margins": [_num(o.worst_margin) for o in self.outcomes],
            "offenders": self.violations,
            "skipped": self.skipped,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)


@dataclass
class SuiteReport:
    reports: list[ViolationReport]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    @property
    def violations(self) -> int:
        return sum(len(r.violations) for r in self.reports)

    def to_json(self) -> str:
        return json.dumps({"violations": self.violations, "reports": [r.to_dict() for r in self.reports]},
                          indent=1, sort_keys=True)


def _num(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return None
    return float(f"{x:.12g}")


def _build(cfg: TrialConfig, rng: np.random.Generator) -> tuple[HarmonicMap, DilatationSpec, TruncatedSeries, str]:
    N = cfg.order
    fam = cfg.family
    real = fam is Family.TYPICALLY_REAL_SHEAR
    spec = draw_dilatation_spec(cfg.k, cfg.dilatation_degree, rng, real=real)
    if fam is Family.CONVEX_HALFPLANE_SHEAR:
        phi, desc = half_plane(N), "halfplane"
    elif fam is Family.DIRECTION_CONVEX_SHEAR:
        phi, desc = gen_direction_convex_analytic(rng, N)
    else:
        atoms = int(rng.integers(1, 5))
        phi = gen_typically_real_analytic(rng, atoms, N)
        desc = f"robertson(atoms={atoms})"
    omega = gen_dilatation(spec, 0, N)
    f = shear(ShearProblem(phi, omega, fam.mode, f"{fam.value}:{desc}"))
    return f, spec, phi, desc


def _soundness(cfg: TrialConfig, f: HarmonicMap, phi: TruncatedSeries) -> str | None:
    if shear_residual(f, phi, cfg.family.mode) > cfg.tolerance:
        return "shear residual above tolerance"
    r = trusted_radius(f)
    radii = [x for x in (0.5 * r, 0.9 * r, r) if x > 0]
    if radii and quasiregular_excess(f, cfg.k, radii=radii) > cfg.tolerance:
        return "series dilatation exceeds k"
    if cfg.family is Family.TYPICALLY_REAL_SHEAR and typically_real_residual(f) > cfg.tolerance:
        return "typical-reality sign test failed"
    return None


def _run_one(cfg: TrialConfig, trial: int) -> TrialOutcome:
    rng = np.random.default_rng([cfg.seed, trial])
    try:
        f, spec, phi, desc = _build(cfg, rng)
    except QCHarmonicError as exc:
        return TrialOutcome(trial, None, skipped=f"{type(exc).__name__}: {exc}")
    reason = _soundness(cfg, f, phi)
    if reason:
        return TrialOutcome(trial, None, skipped=reason)

    tol = cfg.tolerance
    offenders = []
    worst = math.inf
    if abs(f.a[1] - 1.0) > tol:
        offenders.append({"trial": trial, "n": 1, "part": "a1", "value": _num(abs(f.a[1])), "bound": 1.0})
    repro = {
        "seed": cfg.seed,
        "trial": trial,
        "phi": desc,
        "zeros": [[_num(z.real), _num(z.imag)] for z in spec.zeros],
        "rotation": [_num(spec.rotation.real), _num(spec.rotation.imag)],
    }
    for n in range(2, cfg.order + 1):
        ba, bb = cfg.family.bound_family.bounds(n, cfg.k)
        xa, xb = abs(f.a[n]), abs(f.b[n])
        checks = (("a", xa, ba), ("b", xb, bb), ("gap", abs(xa - xb), cfg.family.gap_bound(n)))
        for part, value, bound in checks:
            margin = bound - value
            worst = min(worst, margin)
            if margin < -tol:
                offenders.append({**repro, "n": n, "part": part, "value": _num(value), "bound": _num(bound),
                                  "margin": _num(margin)})
    return TrialOutcome(trial, worst, offenders=offenders)


def run_trials(cfg: TrialConfig) -> ViolationReport:
    """Run ``cfg.trials`` independent trials; skipped trials are counted with a reason."""
    return ViolationReport(cfg, [_run_one(cfg, i) for i in range(cfg.trials)])


def default_suite(seed: int = 20240607, trials: int = 200, order: int = 32, ks=DEFAULT_KS) -> SuiteReport:
    """All three families at each ``k`` in ``ks``."""
    reports = [run_trials(TrialConfig(fam, k, order, trials, seed)) for fam in Family for k in ks]
    return SuiteReport(reports)


# -- attainment ---------------------------------------------------------------------

def mobius_dilatation_sup(k0: float, b1: complex, sign: int, samples: int = 4096) -> float:
    """
    ``sup |omega|`` for ``f0 + conj(b1 f0)`` when ``f0`` has dilatation ``sign * k0 * z``.

    The combined dilatation is ``(omega0 + b1)/(1 + conj(b1) omega0)``.
    """
    z = np.exp(2j * np.pi * np.arange(samples) / samples)
    w0 = sign * k0 * z
    return float(np.max(np.abs((w0 + b1) / (1 + np.conj(b1) * w0))))


def _attained(f: HarmonicMap):
    return lambda n: (abs(f.a[n]), abs(f.b[n]))


def attainment_report(n_max: int, k: float) -> BoundTable:
    """
    Coefficient moduli of the extremal maps (built by shearing) against their bounds.

    Family tags are ``<bounds>/<part>@<map>``:

    * ``conjB@pk``: ``P_k`` against ``A, B``.
    * ``convex0@p``: ``P`` against ``a, b``.
    * ``full@qk``: ``P_k0 + k conj(P_k0)`` against ``E, F``.
    * ``convex@q``: ``P(k0) + k conj(P(k0))`` against ``C, D``; the analytic
      margin is ``2k b(n,k0)``, not zero.
    * ``convex@q-aligned``: the same with ``b1 = -k``, which attains ``C, D``.

    ``notes`` records ``sup |omega|`` of the three affine maps; all exceed ``k``.
    """
    if not 0.0 < k < 1.0:
        raise ValueError(f"k must lie in (0, 1), got {k}")
    k0 = bd.k0_of_k(k)
    order = n_max
    pk = construct_P_k(k, order)
    p = construct_P(k, order)
    qk = affine_combine(construct_P_k(k0, order), k)
    base_p = construct_P(k0, order)
    q = affine_combine(base_p, k)
    q_aligned = affine_combine(base_p, -k)

    table = BoundTable()
    for fam, f, tag in ((BoundFamily.CONJ_B, pk, "pk"), (BoundFamily.CONVEX0, p, "p"),
                        (BoundFamily.FULL, qk, "qk"), (BoundFamily.CONVEX, q, "q"),
                        (BoundFamily.CONVEX, q_aligned, "q-aligned")):
        sub = bd.bound_table(fam, k, n_max, _attained(f))
        for row in sub.rows:
            table.rows.append(replace(row, family=f"{row.family}@{tag}"))
    table.notes = {
        "k": k,
        "k0": k0,
        "sup_omega_qk": mobius_dilatation_sup(k0, k, +1),
        "sup_omega_q": mobius_dilatation_sup(k0, k, -1),
        "sup_omega_q_aligned": mobius_dilatation_sup(k0, -k, -1),
        "q_analytic_margin_law": "2*k*b(n,k0)",
        "q_coanalytic_margin_law": "min(2*b(n,k0), 2*k*a(n,k0))",
    }
    return table
