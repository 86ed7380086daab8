"""
Clunie--Sheil-Small shearing on truncated series.

Given an analytic target ``phi`` and a dilatation ``omega``, solve

    SUM:   h' + g' = phi',  g' = omega h'   =>  h' = phi' / (1 + omega)
    DIFF:  h' - g' = phi',  g' = omega h'   =>  h' = phi' / (1 - omega)

and integrate with ``h(0) = g(0) = 0``.

Sign conventions are fixed here once:

* DIFF with ``phi = z/(1-z)^2`` and ``omega = kz`` gives ``P_k`` whose
  co-analytic coefficients are ``+B(n,k)``.
* SUM with ``phi = z/(1-z)`` and ``omega = k e^{i alpha} z`` gives ``P_k^alpha``
  with ``g`` coefficients ``-b(n,k,alpha)``, so the ``conj(z)^n`` coefficient
  of the map is ``-conj(b(n,k,alpha))``.  At ``alpha = pi`` this is ``P`` with
  ``g`` coefficients ``-b(n,k)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateDenominator
from .harmonic import DilatationSpec, HarmonicMap
from .series import TruncatedSeries, differentiate, div, integrate

__all__ = [
    "ShearMode",
    "ShearProblem",
    "shear",
    "shear_residual",
    "half_plane",
    "koebe",
    "construct_P_alpha",
    "construct_P",
    "construct_P_k",
]


class ShearMode(str, Enum):
    SUM = "sum"
    DIFF = "diff"

    @property
    def sign(self) -> int:
        return 1 if self is ShearMode.SUM else -1


@dataclass(frozen=True)
class ShearProblem:
    phi: TruncatedSeries
    omega: TruncatedSeries
    mode: ShearMode = ShearMode.SUM
    label: str = "shear"

    def __post_init__(self):
        object.__setattr__(self, "mode", ShearMode(self.mode))
        if self.phi.order < 1:
            raise ValueError("phi needs order >= 1")
        if abs(self.phi[0]) > 1e-12 or abs(self.phi[1] - 1.0) > 1e-12:
            raise ValueError("phi must satisfy phi(0) = 0, phi'(0) = 1")


def shear(p: ShearProblem) -> HarmonicMap:
    """
    Harmonic map ``h + conj(g)`` with ``h +/- g = phi`` and ``g' = omega h'``.

    The result has the order of ``phi``; it is flagged normalized only when
    ``h'(0) = 1``, i.e. when ``omega(0) = 0``.

    Raises
    ------
    DegenerateDenominator
        If ``|1 +/- omega(0)| <= 1e-14``.
    """
    n = p.phi.order
    dphi = differentiate(p.phi)
    omega = p.omega.truncate(n - 1) if p.omega.order >= n - 1 else p.omega
    denom = 1.0 + p.mode.sign * omega
    if abs(denom[0]) <= 1e-14:
        raise DegenerateDenominator(f"1 {'+' if p.mode.sign > 0 else '-'} omega(0) vanishes")
    dh = div(dphi, denom)
    dg = omega * dh
    h, g = integrate(dh), integrate(dg)
    if h.order != n:
        raise ValueError(f"omega order {p.omega.order} is too small for phi order {n}")
    # a non-vanishing omega gives h'(0) = 1/(1 +/- omega(0)), so no normalization
    normalized = bool(abs(h[1] - 1.0) <= 1e-12)
    return HarmonicMap(h, g, p.label, normalized)


def shear_residual(f: HarmonicMap, phi: TruncatedSeries, mode: ShearMode | str) -> float:
    """Max coefficient modulus of ``h +/- g - phi``."""
    mode = ShearMode(mode)
    return (f.h + mode.sign * f.g - phi).max_abs()


def half_plane(order: int) -> TruncatedSeries:
    """``z / (1 - z)``."""
    return TruncatedSeries.geometric(order).shift(1)


def koebe(order: int) -> TruncatedSeries:
    """``z / (1 - z)^2``."""
    return TruncatedSeries(np.arange(order + 1))


def construct_P_alpha(k: float, alpha: float, order: int) -> HarmonicMap:
    """SUM shear of ``z/(1-z)`` with ``omega = k e^{i alpha} z``."""
    if not 0.0 <= k < 1.0:
        raise ValueError(f"k must lie in [0, 1), got {k}")
    omega = DilatationSpec.linear(k, alpha).series(order)
    return shear(ShearProblem(half_plane(order), omega, ShearMode.SUM, f"palpha:{k:.9g}:{alpha:.9g}"))


def construct_P(k: float, order: int) -> HarmonicMap:
    """The convex half-plane extremal, ``P_k^alpha`` at ``alpha = pi`` (``omega = -kz``)."""
    if not 0.0 <= k < 1.0:
        raise ValueError(f"k must lie in [0, 1), got {k}")
    omega = TruncatedSeries.monomial(order, 1, -k)
    return shear(ShearProblem(half_plane(order), omega, ShearMode.SUM, f"p:{k:.9g}"))


def construct_P_k(k: float, order: int) -> HarmonicMap:
    """DIFF shear of the Koebe function with ``omega = kz``."""
    if not 0.0 <= k < 1.0:
        raise ValueError(f"k must lie in [0, 1), got {k}")
    omega = TruncatedSeries.monomial(order, 1, k)
    return shear(ShearProblem(koebe(order), omega, ShearMode.DIFF, f"pk:{k:.9g}"))
