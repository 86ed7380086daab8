"""
Harmonic maps ``f = h + conj(g)`` on the unit disk, stored as a pair of
truncated series, together with the dilatation ``omega = g'/h'`` and the
pointwise checks built on it.

Coefficient convention: ``h.coeffs[n]`` is ``a_n`` and ``g.coeffs[n]`` is
``b_n`` with ``h = sum a_n z^n``, ``g = sum b_n z^n``.  The coefficient of
``conj(z)^n`` in the expansion of ``f`` is therefore ``conj(b_n)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .errors import AffineDegenerate, DegenerateAnalyticPart, NonRealCoefficients
from .series import TruncatedSeries, div, differentiate, evaluate

__all__ = [
    "HarmonicMap",
    "DilatationSpec",
    "dilatation",
    "jacobian_at",
    "quasiregular_excess",
    "affine_combine",
    "star_to_convex",
    "rotate",
    "typically_real_residual",
    "trusted_radius",
    "to_record",
    "from_record",
    "dumps",
    "loads",
]

RECORD_FORMAT = "qcharmonic.harmonic_map"
RECORD_VERSION = 1

DEGENERATE_TOL = 1e-14
REALNESS_TOL = 1e-10
DEFAULT_RADII = (0.9, 0.99, 0.999)


@dataclass(frozen=True)
class HarmonicMap:
    """``f = h + conj(g)`` with ``h`` and ``g`` of equal order."""

    h: TruncatedSeries
    g: TruncatedSeries
    label: str = ""
    normalized: bool = True

    def __post_init__(self):
        if self.h.order != self.g.order:
            raise ValueError(f"h and g orders differ: {self.h.order} != {self.g.order}")
        if self.normalized:
            a = self.h.coeffs
            if abs(a[0]) > 1e-12 or (self.h.order >= 1 and abs(a[1] - 1.0) > 1e-12):
                raise ValueError("normalized map needs h(0) = 0 and h'(0) = 1")

    @classmethod
    def from_coefficients(cls, a, b, label: str = "", normalized: bool = True) -> HarmonicMap:
        return cls(TruncatedSeries(a), TruncatedSeries(b), label, normalized)

    @classmethod
    def identity(cls, order: int) -> HarmonicMap:
        return cls(TruncatedSeries.identity(order), TruncatedSeries.zero(order), "identity")

    @property
    def order(self) -> int:
        return self.h.order

    @property
    def a(self) -> np.ndarray:
        return self.h.coeffs

    @property
    def b(self) -> np.ndarray:
        return self.g.coeffs

    def __call__(self, z):
        hz = evaluate(self.h, z)
        gz = evaluate(self.g, z)
        return hz + np.conj(gz)

    def truncate(self, order: int) -> HarmonicMap:
        return replace(self, h=self.h.truncate(order), g=self.g.truncate(order))

    def relabel(self, label: str) -> HarmonicMap:
        return replace(self, label=label)


@dataclass(frozen=True)
class DilatationSpec:
    """
    Closed-form description of an admissible dilatation with ``sup |omega| <= k``.

    ``kind="linear"`` is ``k e^{i alpha} z``.  ``kind="blaschke"`` is
    ``k * rotation * z**vanishing * prod (z - a)/(1 - conj(a) z)`` over
    ``zeros``; ``rotation`` has modulus one.
    """

    kind: str
    k: float
    alpha: float = 0.0
    zeros: tuple = ()
    rotation: complex = 1.0
    vanishing: bool = True

    def __post_init__(self):
        if self.kind not in ("linear", "blaschke"):
            raise ValueError(f"unknown dilatation kind {self.kind!r}")
        if not 0.0 <= self.k < 1.0:
            raise ValueError(f"k must lie in [0, 1), got {self.k}")
        if any(abs(a) >= 1.0 for a in self.zeros):
            raise ValueError("Blaschke zeros must lie in the open unit disk")
        if abs(abs(self.rotation) - 1.0) > 1e-12:
            raise ValueError("rotation must be unimodular")

    @classmethod
    def linear(cls, k: float, alpha: float = 0.0) -> DilatationSpec:
        return cls("linear", float(k), alpha=float(alpha))

    @classmethod
    def blaschke(cls, k: float, zeros=(), rotation: complex = 1.0, vanishing: bool = True) -> DilatationSpec:
        return cls("blaschke", float(k), zeros=tuple(complex(a) for a in zeros),
                   rotation=complex(rotation), vanishing=bool(vanishing))

    @property
    def has_real_coefficients(self) -> bool:
        if self.kind == "linear":
            return abs(np.sin(self.alpha)) < 1e-15
        closed = not self.zeros or np.max(np.abs(np.poly(self.zeros).imag)) < 1e-12
        return bool(closed) and abs(self.rotation.imag) < 1e-15

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.kind == "linear":
            out = self.k * np.exp(1j * self.alpha) * z
        else:
            out = self.k * self.rotation * (z if self.vanishing else np.ones_like(z))
            for a in self.zeros:
                out = out * (z - a) / (1.0 - np.conj(a) * z)
        return complex(out) if out.ndim == 0 else out

    def series(self, order: int) -> TruncatedSeries:
        """Taylor series of ``omega`` up to ``order``."""
        if self.kind == "linear":
            return TruncatedSeries.monomial(order, 1, self.k * np.exp(1j * self.alpha))
        out = TruncatedSeries.constant(order, self.k * self.rotation)
        if self.vanishing:
            out = out.shift(1)
        z = TruncatedSeries.identity(order)
        for a in self.zeros:
            out = out * div(z - a, 1.0 - np.conj(a) * z)
        return out

    def sup_modulus(self, radius: float = 0.999, angles: int = 2048) -> float:
        t = np.linspace(0.0, 2.0 * np.pi, angles, endpoint=False)
        return float(np.max(np.abs(self(radius * np.exp(1j * t)))))


def dilatation(f: HarmonicMap) -> TruncatedSeries:
    """
    Series of ``omega = g'/h'`` (order drops by one).

    Raises
    ------
    DegenerateAnalyticPart
        If ``|h'(0)| <= 1e-14``.
    """
    dh = differentiate(f.h)
    if abs(dh.coeffs[0]) <= DEGENERATE_TOL:
        raise DegenerateAnalyticPart(f"h'(0) = {dh.coeffs[0]!r}")
    return div(differentiate(f.g), dh)


def jacobian_at(f: HarmonicMap, z):
    """``|h'(z)|^2 - |g'(z)|^2`` from the partial sums."""
    dh = evaluate(differentiate(f.h), z)
    dg = evaluate(differentiate(f.g), z)
    return np.abs(dh) ** 2 - np.abs(dg) ** 2


def quasiregular_excess(f: HarmonicMap, k: float, radii=DEFAULT_RADII, samples: int = 2048) -> float:
    """
    ``max |omega(z)| - k`` over ``samples`` angles on each circle in ``radii``.

    A value at or below a small tolerance is consistent with ``|omega| <= k``;
    by the maximum modulus principle the outermost circle dominates.
    """
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    if np.any(radii <= 0) or np.any(radii >= 1):
        raise ValueError("radii must lie in (0, 1)")
    omega = dilatation(f)
    t = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    z = (radii[:, None] * np.exp(1j * t)[None, :]).ravel()
    return float(np.max(np.abs(evaluate(omega, z))) - k)


def affine_combine(f0: HarmonicMap, b1: complex) -> HarmonicMap:
    """
    ``f = f0 + conj(b1 f0)``, i.e. analytic part ``h0 + conj(b1) g0`` and
    co-analytic part ``g0 + b1 h0``.

    The result keeps ``f0``'s normalization flag and records ``b1`` in its label.
    """
    b1 = complex(b1)
    if abs(b1) >= 1.0:
        raise AffineDegenerate(f"|b1| = {abs(b1)} must be < 1")
    h = f0.h + b1.conjugate() * f0.g
    g = f0.g + b1 * f0.h
    label = f"{f0.label}+conj(({b1.real:.9g}{b1.imag:+.9g}j)*f)"
    return HarmonicMap(h, g, label, normalized=f0.normalized and not _breaks_norm(h))


def _breaks_norm(h: TruncatedSeries) -> bool:
    return h.order >= 1 and (abs(h.coeffs[0]) > 1e-12 or abs(h.coeffs[1] - 1.0) > 1e-12)


def star_to_convex(f: HarmonicMap) -> HarmonicMap:
    """``H, G`` with ``zH' = h``, ``zG' = -g`` and ``H(0) = G(0) = 0``."""
    if abs(f.a[0]) > 1e-12 or abs(f.b[0]) > 1e-12:
        raise ValueError("star_to_convex needs h(0) = g(0) = 0")
    n = np.arange(f.order + 1, dtype=float)
    n[0] = 1.0
    return HarmonicMap.from_coefficients(f.a / n, -f.b / n, f"convex[{f.label}]", f.normalized)


def rotate(f: HarmonicMap, theta: float) -> HarmonicMap:
    """``e^{-i theta} f(e^{i theta} z)``; preserves every coefficient modulus."""
    n = np.arange(f.order + 1)
    a = f.a * np.exp(1j * (n - 1) * theta)
    b = f.b * np.exp(1j * (n + 1) * theta)
    return HarmonicMap.from_coefficients(a, b, f"rot({theta:.6g})[{f.label}]", f.normalized)


def trusted_radius(f: HarmonicMap, tol: float = 1e-12, cap: float = 0.95) -> float:
    """
    Largest ``r <= cap`` whose tail estimate ``(|a_N| + |b_N|) r^(N+1)/(1-r)``
    stays below ``tol``.
    """
    lead = abs(f.a[-1]) + abs(f.b[-1])
    if lead == 0.0:
        return cap
    r = np.linspace(cap, 0.0, 20001, endpoint=False)
    ok = lead * r ** (f.order + 1) / (1.0 - r) <= tol
    return float(r[np.argmax(ok)]) if ok.any() else 0.0


def typically_real_residual(f: HarmonicMap, samples: int = 10_000, radius: float | None = None) -> float:
    """
    ``max(0, -sign(Im z) Im f(z))`` over an off-axis polar grid in ``|z| <= radius``.

    A sampled sign test, not a proof.  With ``radius=None`` the grid stops at
    :func:`trusted_radius` (capped at 0.95) so truncation error cannot flip signs.

    Raises
    ------
    NonRealCoefficients
        If any coefficient has ``|Im| >= 1e-10``.
    """
    if max(np.max(np.abs(f.a.imag)), np.max(np.abs(f.b.imag))) >= REALNESS_TOL:
        raise NonRealCoefficients(f"{f.label or 'map'} has complex coefficients")
    if radius is None:
        radius = trusted_radius(f)
    m = max(int(np.sqrt(samples / 2)), 2)
    r = radius * np.arange(1, m + 1) / m
    t = np.pi * (np.arange(m) + 0.5) / m
    z = (r[:, None] * np.exp(1j * t)[None, :]).ravel()
    z = np.concatenate([z, z.conj()])
    w = f(z)
    residual = np.maximum(0.0, -np.sign(z.imag) * w.imag)
    return float(residual.max())


def to_record(f: HarmonicMap) -> dict:
    def pairs(c):
        return [[float(x.real), float(x.imag)] for x in c]

    return {
        "format": RECORD_FORMAT,
        "version": RECORD_VERSION,
        "label": f.label,
        "order": f.order,
        "normalized": bool(f.normalized),
        "h_coeffs": pairs(f.a),
        "g_coeffs": pairs(f.b),
    }


def from_record(rec: dict) -> HarmonicMap:
    if rec.get("format") != RECORD_FORMAT:
        raise ValueError(f"not a harmonic map record: format={rec.get('format')!r}")
    if rec.get("version") != RECORD_VERSION:
        raise ValueError(f"unsupported record version {rec.get('version')!r}")
    a = [complex(re, im) for re, im in rec["h_coeffs"]]
    b = [complex(re, im) for re, im in rec["g_coeffs"]]
    if len(a) != rec["order"] + 1 or len(b) != rec["order"] + 1:
        raise ValueError("coefficient count does not match order")
    return HarmonicMap.from_coefficients(a, b, rec.get("label", ""), rec.get("normalized", True))


def dumps(f: HarmonicMap, **kw) -> str:
    return json.dumps(to_record(f), **kw)


def loads(s: str) -> HarmonicMap:
    return from_record(json.loads(s))
