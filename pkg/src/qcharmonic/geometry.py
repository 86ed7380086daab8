"""
Image geometry of ``P_k``: the slit endpoint ``M(k)``, boundary and
hyperbola traces, the Parseval area functional, and a boundary-modulus probe.

``P_k`` maps the disk onto the plane minus ``(-inf, M(k)]``.  Under
``zeta = (1+z)/(1-z) = xi + i eta`` the image is written in closed form;
the level sets ``xi * eta = c`` go to horizontal lines ``Im w = c/2``.

Boundary traces use the closed form rather than the truncated series, since
partial sums are not reliable close to ``|z| = 1``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .catalog import CatalogId, closed_parts, evaluate_closed, parse_catalog_id
from .harmonic import HarmonicMap

__all__ = [
    "TraceResult",
    "M",
    "slit_check",
    "real_axis_trace",
    "hyperbola_u",
    "hyperbola_trace",
    "area",
    "area_with_tail",
    "min_boundary_modulus",
    "SLIT_ARC_EXCLUSION",
]

# half-width of the arc around t = 0 left out of slit traces; at t = pi/3 the
# chord |1 - e^{it}| equals 1, so |Im P_k| <= r(1-r^2) there
SLIT_ARC_EXCLUSION = math.pi / 3

_SMALL_K = 1e-8
_NEAR_ONE = 0.1


@dataclass
class TraceResult:
    """
    Sampled images with per-sample residuals.

    Attributes
    ----------
    parameters : ndarray
        Curve parameter per sample (angle ``t`` or ``xi``).
    points : ndarray
        Complex image points.
    residuals : ndarray
        Non-negative residual per sample; its meaning is given by ``kind``.
    verdicts : dict
        One boolean per claim checked.
    info : dict
        Scalars describing the run (``k``, ``radius``, ``M``, ``slack`` ...).
    """

    kind: str
    parameters: np.ndarray
    points: np.ndarray
    residuals: np.ndarray
    verdicts: dict[str, bool] = field(default_factory=dict)
    info: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        self.parameters = np.asarray(self.parameters, dtype=float)
        self.points = np.asarray(self.points, dtype=complex)
        self.residuals = np.asarray(self.residuals, dtype=float)
        if self.points.size == 0:
            raise ValueError("a trace needs at least one sample")
        if not (self.parameters.shape == self.points.shape == self.residuals.shape):
            raise ValueError("parameters, points and residuals must have equal shapes")
        if np.any(self.residuals < 0):
            raise ValueError("residuals must be non-negative")

    @property
    def residual_max(self) -> float:
        return float(self.residuals.max())

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def summary(self) -> str:
        lines = [f"{self.kind}: samples={self.points.size} residual_max={self.residual_max:.9g}"]
        lines += [f"  {key} = {val:.9g}" for key, val in self.info.items()]
        lines += [f"  {key}: {'pass' if val else 'FAIL'}" for key, val in self.verdicts.items()]
        return "\n".join(lines)

    def to_csv(self, fh=None) -> str | None:
        """Write ``parameter,re,im,residual`` rows; return the text if ``fh`` is None."""
        out = fh if fh is not None else io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["parameter", "re", "im", "residual"])
        for t, p, r in zip(self.parameters, self.points, self.residuals):
            w.writerow([f"{t:.9g}", f"{p.real:.9g}", f"{p.imag:.9g}", f"{r:.9g}"])
        return out.getvalue() if fh is None else None

    def plot(self, path, title: str | None = None) -> None:
        """Static SVG (or any matplotlib format) of the traced curve with the slit and ``M(k)``."""
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6, 4.5))
        ax.plot(self.points.real, self.points.imag, ".", ms=1.5, label=self.kind)
        if "M" in self.info:
            m = self.info["M"]
            lo = min(float(self.points.real.min()), m - 1.0)
            ax.plot([lo, m], [0.0, 0.0], "k-", lw=2, label="slit")
            ax.plot([m], [0.0], "ro", label=f"M(k) = {m:.6g}")
        ax.set_xlabel("Re w")
        ax.set_ylabel("Im w")
        ax.set_title(title or f"{self.kind}, k = {self.info.get('k', float('nan')):.4g}")
        ax.legend(loc="best", fontsize=8)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)


# -- slit endpoint ------------------------------------------------------------

def _M_near_one(s: float, terms: int = 40) -> float:
    # log(1 - s/2) = sum c_j s^j with c_j = -1/(j 2^j); the poles in s cancel
    c = lambda j: -1.0 / (j * 2.0**j)  # noqa: E731
    return -1.0 / 6.0 + sum((4 * c(p + 3) - 6 * c(p + 2) + 2 * c(p + 1)) * s**p for p in range(1, terms))


def M(k: float) -> float:
    """
    Left endpoint of the omitted ray ``(-inf, M(k)]`` of ``P_k``.

    ``M(k) = (k^2+8k-1)/(4(1-k)^2) + 2k(k+1)/(1-k)^3 log((1+k)/2)``, with a
    linear expansion for ``k <= 1e-8`` and an expansion in ``s = 1-k`` for
    ``s < 0.1`` where the displayed form loses digits to cancellation.

    Examples
    --------
    >>> M(0.0)
    -0.25
    >>> round(M(0.5), 7)
    -0.2021849
    """
    if not 0.0 <= k < 1.0:
        raise ValueError(f"k must lie in [0, 1), got {k}")
    if k <= _SMALL_K:
        return -0.25 + k * (1.5 - 2.0 * math.log(2.0))
    s = 1.0 - k
    if s < _NEAR_ONE:
        return _M_near_one(s)
    return (k * k + 8 * k - 1) / (4 * s * s) + 2 * k * (k + 1) / s**3 * math.log1p(-s / 2)


# -- traces ---------------------------------------------------------------------

def _pk(k: float) -> CatalogId:
    return CatalogId("pk", k=k)


def real_axis_trace(k: float, samples: int = 2001, radius: float = 0.999) -> TraceResult:
    """``P_k`` on ``[-radius, radius]``: real, strictly increasing, above ``M(k)``."""
    x = np.linspace(-radius, radius, samples)
    w = evaluate_closed(_pk(k), x.astype(complex))
    m = M(k)
    res = np.abs(w.imag)
    return TraceResult(
        "real-axis",
        x,
        w,
        res,
        verdicts={
            "real": bool(res.max() <= 1e-12 * max(1.0, np.abs(w).max())),
            "increasing": bool(np.all(np.diff(w.real) > 0)),
            "above_M": bool(w.real.min() > m),
        },
        info={"k": k, "radius": radius, "M": m, "min_re": float(w.real.min())},
    )


def slit_check(k: float, samples: int = 4096, radius: float = 0.999, tol: float = 5e-3,
               exclude: float = SLIT_ARC_EXCLUSION) -> TraceResult:
    """
    Trace ``P_k(radius e^{it})`` and compare it with the slit ``(-inf, M(k)]``.

    The arc ``|t| < exclude`` is skipped: near ``z = 1`` the image runs off to
    infinity and ``Im P_k`` is not small for any ``radius < 1``.  The residual
    per sample is ``max(|Im w|, Re w - M(k), 0)``.  ``slack`` in ``info`` is the
    observed ``max Re w - M(k)``; it is measured, not modelled.

    Parameters
    ----------
    k : float
        Dilatation bound in ``[0, 1)``.
    samples : int
        Number of angles, at least 16.
    radius : float
        Circle radius in ``(0, 1)``.
    tol : float
        Threshold used for the ``im_small`` and ``re_below_M`` verdicts.
    exclude : float
        Half-width of the skipped arc around ``t = 0``.
    """
    if samples < 16:
        raise ValueError("samples must be >= 16")
    if not 0.0 < radius < 1.0:
        raise ValueError("radius must lie in (0, 1)")
    t = np.linspace(exclude, 2 * math.pi - exclude, samples)
    w = evaluate_closed(_pk(k), radius * np.exp(1j * t))
    m = M(k)
    im = np.abs(w.imag)
    excess = w.real - m
    res = np.maximum(np.maximum(im, excess), 0.0)
    axis = real_axis_trace(k, radius=radius)
    return TraceResult(
        "slit",
        t,
        w,
        res,
        verdicts={
            "im_small": bool(im.max() < tol),
            "re_below_M": bool(w.real.max() <= m + tol),
            "real_axis_increasing": axis.verdicts["increasing"],
            "real_axis_above_M": axis.verdicts["above_M"],
        },
        info={
            "k": k,
            "radius": radius,
            "M": m,
            "max_abs_im": float(im.max()),
            "max_re": float(w.real.max()),
            "slack": float(excess.max()),
        },
    )


def hyperbola_u(k: float, c: float, xi):
    """
    ``Re P_k`` along ``xi * eta = c`` in terms of ``xi``.

    Obtained by putting ``eta = c/xi`` in the closed form of ``P_k`` in the
    ``zeta`` variable; ``eta^2`` enters with a minus sign and the logarithm
    carries ``(1-k)^2 eta^2``.
    """
    xi = np.asarray(xi, dtype=float)
    s = 1.0 - k
    e2 = c * c / xi**2
    quad = (1 - 4 * k - k * k) / (4 * s * s) * (xi**2 - 1 - e2) + k / (s * s) * ((xi - 1) ** 2 - e2)
    lg = np.log(((1 + k + s * xi) ** 2 + s * s * e2) / 4)
    return quad + k * (k + 1) / s**3 * lg


def hyperbola_trace(k: float, c: float, xi_range=(0.2, 5.0), samples: int = 1001,
                    tol: float = 1e-8) -> TraceResult:
    """
    Compare :func:`hyperbola_u` with direct evaluation of ``P_k`` at
    ``z = (zeta - 1)/(zeta + 1)``, ``zeta = xi + i c/xi``.

    The residual is ``max(|u - Re w|, |Im w - c/2|) / max(1, |w|)``.
    """
    if c == 0:
        raise ValueError("c must be nonzero")
    lo, hi = xi_range
    if not 0.0 < lo < hi:
        raise ValueError("xi_range must be an interval inside (0, inf)")
    xi = np.linspace(lo, hi, samples)
    zeta = xi + 1j * c / xi
    w = evaluate_closed(_pk(k), (zeta - 1) / (zeta + 1))
    u = hyperbola_u(k, c, xi)
    scale = np.maximum(1.0, np.abs(w))
    res = np.maximum(np.abs(u - w.real), np.abs(w.imag - c / 2)) / scale
    return TraceResult(
        "hyperbola",
        xi,
        w,
        res,
        verdicts={"agree": bool(res.max() <= tol), "u_increasing": bool(np.all(np.diff(u) > 0))},
        info={"k": k, "c": c, "im_target": c / 2},
    )


# -- area -----------------------------------------------------------------------

def area_with_tail(f: HarmonicMap) -> tuple[float, float]:
    """
    Parseval area ``pi * sum n (|a_n|^2 - |b_n|^2)`` and a tail estimate.

    The tail is extrapolated geometrically from the last two coefficient pairs;
    it is zero when the top coefficients vanish and infinite when they do not
    decay.
    """
    n = np.arange(f.order + 1)
    terms = n * (np.abs(f.a) ** 2 - np.abs(f.b) ** 2)
    value = math.pi * float(terms.sum())
    top = np.abs(f.a[-1]) ** 2 + np.abs(f.b[-1]) ** 2
    if top == 0.0:
        return value, 0.0
    prev = np.abs(f.a[-2]) ** 2 + np.abs(f.b[-2]) ** 2 if f.order >= 1 else 0.0
    if prev == 0.0 or top >= prev:
        return value, math.inf
    q = top / prev
    N = f.order
    # sum_{m>N} m q^{m-N} top
    tail = top * q * ((N + 1) - N * q) / (1 - q) ** 2
    return value, math.pi * float(tail)


def area(f: HarmonicMap) -> float:
    """Parseval area of the image of the disk over the retained coefficients."""
    return area_with_tail(f)[0]


# -- covering probe -------------------------------------------------------------

def min_boundary_modulus(f: HarmonicMap | CatalogId | str | Callable, radius: float = 0.999,
                         samples: int = 4096) -> float:
    """
    ``min_t |f(radius e^{it})|``.

    A catalog id (or its string) is evaluated by its closed form, which is the
    only reliable choice near ``|z| = 1``; a :class:`HarmonicMap` uses its
    partial sums; any other callable is applied to the sample points.
    """
    if not 0.0 < radius < 1.0:
        raise ValueError("radius must lie in (0, 1)")
    z = radius * np.exp(2j * math.pi * np.arange(samples) / samples)
    if isinstance(f, str):
        f = parse_catalog_id(f)
    if isinstance(f, CatalogId):
        h, g = closed_parts(f, z)
        w = h + np.conj(g)
    else:
        w = np.asarray(f(z))
    return float(np.abs(w).min())
