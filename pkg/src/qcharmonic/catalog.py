"""
Named harmonic maps: closed-form coefficient laws and closed-form evaluators.

Identifiers parse from short strings::

    koebe-h          harmonic Koebe function
    pk:<k>           K-quasiconformal harmonic Koebe function P_k
    palpha:<k>:<a>   half-plane shear P_k^alpha with dilatation k e^{ia} z
    p:<k>            convex extremal P = P_k^pi
    q:<k>            P(k0) + k conj(P(k0)),  k0 = 2k/(1+k^2)
    qk:<k>           P_k0 + k conj(P_k0)
    l                convex harmonic map L with dilatation -z
    f0:<k>           z + (k/2) conj(z)^2

``coefficients`` never runs series machinery; it writes the closed-form
coefficients directly, so comparing it with :mod:`qcharmonic.shear` output is
a genuine two-route check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds as bd
from .errors import AffineDegenerate, BranchAmbiguity, ParseError
from .harmonic import HarmonicMap, affine_combine

__all__ = [
    "CatalogId",
    "parse_catalog_id",
    "coefficients",
    "evaluate_closed",
    "closed_parts",
    "build_general_Q",
    "a_alpha",
    "b_alpha",
    "q_factor",
]

_ARITY = {"koebe-h": 0, "pk": 1, "palpha": 2, "p": 1, "q": 1, "qk": 1, "l": 0, "f0": 1}


@dataclass(frozen=True)
class CatalogId:
    """A named map; ``name`` is one of the parse keys, plus ``general-q``."""

    name: str
    k: float = 0.0
    alpha: float = 0.0
    base: CatalogId | None = None
    b1: complex = 0.0

    def __post_init__(self):
        if self.name not in _ARITY and self.name != "general-q":
            raise ParseError(f"unknown catalog name {self.name!r}")
        if not 0.0 <= self.k < 1.0:
            raise ParseError(f"k must satisfy 0 <= k < 1 (K = (1+k)/(1-k) finite), got {self.k}")
        if self.name == "general-q":
            if self.base is None:
                raise ParseError("general-q needs a base map")
            if abs(self.b1) >= 1.0:
                raise AffineDegenerate(f"|b1| = {abs(self.b1)} must be < 1")

    @classmethod
    def general_q(cls, base: CatalogId, b1: complex) -> CatalogId:
        return cls("general-q", base=base, b1=complex(b1))

    def __str__(self) -> str:
        if self.name == "general-q":
            return f"general-q[{self.base}|{self.b1.real:.9g}{self.b1.imag:+.9g}j]"
        arity = _ARITY[self.name]
        params = [self.k, self.alpha][:arity]
        return ":".join([self.name] + [f"{p:.9g}" for p in params])


def parse_catalog_id(text: str) -> CatalogId:
    """Parse ``name[:param[:param]]``; raises :class:`ParseError` on malformed input."""
    parts = text.strip().lower().split(":")
    name, params = parts[0], parts[1:]
    if name not in _ARITY:
        raise ParseError(f"unknown catalog name {name!r}; expected one of {', '.join(_ARITY)}")
    if len(params) != _ARITY[name]:
        raise ParseError(f"{name!r} takes {_ARITY[name]} parameter(s), got {len(params)}")
    try:
        values = [float(p) for p in params]
    except ValueError as exc:
        raise ParseError(f"bad numeric parameter in {text!r}") from exc
    if any(not math.isfinite(v) for v in values):
        raise ParseError(f"non-finite parameter in {text!r}")
    k = values[0] if values else 0.0
    alpha = values[1] if len(values) > 1 else 0.0
    if name == "palpha" and not 0.0 <= alpha < 2 * math.pi:
        raise ParseError(f"alpha must lie in [0, 2pi), got {alpha}")
    return CatalogId(name, k=k, alpha=alpha)


# -- coefficient laws ---------------------------------------------------------

def a_alpha(n: int, k: float, alpha: float) -> complex:
    u = k * np.exp(1j * alpha)
    return (n + (n + 1) * u - (-1) ** n * u ** (n + 1)) / (n * (1 + u) ** 2)


def b_alpha(n: int, k: float, alpha: float) -> complex:
    u = k * np.exp(1j * alpha)
    return -((n - 1) * u + n * u**2 + (-1) ** n * u ** (n + 1)) / (n * (1 + u) ** 2)


def q_factor(k: float) -> float:
    """``(sqrt(K0) - 1)/(sqrt(K0) + 1)`` with ``K0 = K^2``; equals ``k``."""
    K0 = bd.K_of_k(k) ** 2
    return (math.sqrt(K0) - 1.0) / (math.sqrt(K0) + 1.0)


def _from_laws(order: int, a_law, b_law, label: str) -> HarmonicMap:
    a = np.zeros(order + 1, dtype=complex)
    b = np.zeros(order + 1, dtype=complex)
    if order >= 1:
        a[1] = 1.0
    for n in range(2, order + 1):
        a[n] = a_law(n)
        b[n] = b_law(n)
    return HarmonicMap.from_coefficients(a, b, label)


def coefficients(cid: CatalogId | str, order: int) -> HarmonicMap:
    """Closed-form coefficients of the named map up to ``order``."""
    if isinstance(cid, str):
        cid = parse_catalog_id(cid)
    if order < 1:
        raise ValueError("order must be >= 1")
    k, label = cid.k, str(cid)
    name = cid.name
    if name == "koebe-h":
        return _from_laws(order, lambda n: (n + 1) * (2 * n + 1) / 6, lambda n: (n - 1) * (2 * n - 1) / 6, label)
    if name == "pk":
        return _from_laws(order, lambda n: bd.A(n, k), lambda n: bd.B(n, k), label)
    if name == "palpha":
        return _from_laws(order, lambda n: a_alpha(n, k, cid.alpha), lambda n: -b_alpha(n, k, cid.alpha), label)
    if name == "p":
        return _from_laws(order, lambda n: bd.a(n, k), lambda n: -bd.b(n, k), label)
    if name == "l":
        return _from_laws(order, lambda n: (n + 1) / 2, lambda n: -(n - 1) / 2, label)
    if name == "f0":
        return _from_laws(order, lambda n: 0.0, lambda n: k / 2 if n == 2 else 0.0, label)
    if name in ("q", "qk"):
        k0 = bd.k0_of_k(k)
        base = CatalogId("p" if name == "q" else "pk", k=k0)
        return affine_combine(coefficients(base, order), q_factor(k)).relabel(label)
    if name == "general-q":
        return build_general_Q(coefficients(cid.base, order), cid.b1)
    raise ParseError(f"unhandled catalog name {name!r}")


def build_general_Q(base: HarmonicMap, b1: complex) -> HarmonicMap:
    """``base + conj(b1 base)`` for any ``|b1| < 1``; see :func:`affine_combine`."""
    return affine_combine(base, b1)


# -- closed-form evaluation ---------------------------------------------------

def _log_ratio(num, den):
    """Principal ``log(num/den)`` for ``num, den`` in the right half-plane."""
    return np.log(num) - np.log(den)


def closed_parts(cid: CatalogId | str, z):
    """``(h(z), g(z))`` from the displayed closed forms."""
    if isinstance(cid, str):
        cid = parse_catalog_id(cid)
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise BranchAmbiguity("closed forms are only single-valued on |z| < 1")
    k, name = cid.k, cid.name
    if name == "koebe-h":
        d = (1 - z) ** 3
        return (z - z**2 / 2 + z**3 / 6) / d, (z**2 / 2 + z**3 / 6) / d
    if name == "pk":
        lg = _log_ratio(1 - z, 1 - k * z)
        c = 1.0 / (k - 1) ** 3
        h = c * ((k - 1) * (1 - 3 * k + 2 * k * z) * z / (1 - z) ** 2 + k * (k + 1) * lg)
        g = k * c * ((1 - k) * (1 + k - 2 * z) * z / (1 - z) ** 2 + (k + 1) * lg)
        return h, g
    if name == "palpha":
        u = k * np.exp(1j * cid.alpha)
        l1 = z / ((1 + u) * (1 - z))
        l2 = u / (1 + u) ** 2 * _log_ratio(1 + u * z, 1 - z)
        return l1 + l2, u * l1 - l2
    if name == "p":
        lg = _log_ratio(1 - k * z, 1 - z)
        h = z / ((1 - k) * (1 - z)) - k / (1 - k) ** 2 * lg
        g = -k * z / ((1 - k) * (1 - z)) + k / (1 - k) ** 2 * lg
        return h, g
    if name == "l":
        return 0.5 * (z / (1 - z) + z / (1 - z) ** 2), 0.5 * (z / (1 - z) - z / (1 - z) ** 2)
    if name == "f0":
        return z, k / 2 * z**2
    if name in ("q", "qk", "general-q"):
        if name == "general-q":
            base, b1 = cid.base, cid.b1
        else:
            base, b1 = CatalogId("p" if name == "q" else "pk", k=bd.k0_of_k(k)), q_factor(k)
        h0, g0 = closed_parts(base, z)
        return h0 + np.conj(b1) * g0, g0 + b1 * h0
    raise ParseError(f"unhandled catalog name {name!r}")


def evaluate_closed(cid: CatalogId | str, z):
    """``f(z) = h(z) + conj(g(z))`` from the closed forms, principal log branch."""
    h, g = closed_parts(cid, z)
    out = h + np.conj(g)
    return complex(out) if np.ndim(out) == 0 else out
