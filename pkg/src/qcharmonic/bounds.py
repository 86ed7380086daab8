"""
Closed-form coefficient bounds for K-quasiconformal harmonic maps, the
parameter change ``k -> k0 = 2k/(1+k^2)``, limit values as ``k -> 1``, and
the auxiliary lemma polynomials used to show monotonicity in ``k``.

Every bound comes in two algebraically equal flavours:

* the rational forms, literally as displayed (``A_displayed``, ``A_cubic``,
  ``a_displayed`` ...), which lose digits as ``(1-k)^3 -> 0``;
* the coefficient-domination sums, e.g.
  ``B(n,k) = (1/n) sum_{m=1}^{n-1} k^m (n-m)^2`` and ``A = n + B``, which
  have only positive terms and stay accurate up to ``k = 1``.

The public ``A, B, a, b`` use the rational form below ``K_CROSSOVER`` and
the sum form above it.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple

import numpy as np

K_CROSSOVER = 0.999


def _check(n: int, k: float) -> None:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not 0.0 <= k < 1.0:
        raise ValueError(f"k must lie in [0, 1), got {k}")


def _geom(n: int, k: float) -> float:
    """1 + k + ... + k^(n-1)."""
    return math.fsum(k**j for j in range(n))


# -- conjectured bounds A, B --------------------------------------------------

def A_displayed(n: int, k: float) -> float:
    _check(n, k)
    return ((1 - k) * n**2 - 2 * k * n + k * (k + 1) * _geom(n, k)) / (n * (1 - k) ** 2)


def B_displayed(n: int, k: float) -> float:
    _check(n, k)
    return (k * (1 - k) * n**2 - 2 * k * n + k * (k + 1) * _geom(n, k)) / (n * (1 - k) ** 2)


def A_cubic(n: int, k: float) -> float:
    _check(n, k)
    num = n**2 + (-2 * n**2 - 2 * n + 1) * k + (n + 1) ** 2 * k**2 - k ** (n + 1) - k ** (n + 2)
    return num / (n * (1 - k) ** 3)


def B_cubic(n: int, k: float) -> float:
    _check(n, k)
    num = (n - 1) ** 2 + (-2 * n**2 + 2 * n + 1) * k + n**2 * k**2 - k**n - k ** (n + 1)
    return k * num / (n * (1 - k) ** 3)


def B_sum(n: int, k: float) -> float:
    _check(n, k)
    return math.fsum(k**m * (n - m) ** 2 for m in range(1, n)) / n


def A_sum(n: int, k: float) -> float:
    return n + B_sum(n, k)


def A(n: int, k: float) -> float:
    """Conjectured sharp bound for ``|a_n|`` on S_H^0(K); attained by P_k."""
    return A_displayed(n, k) if k < K_CROSSOVER else A_sum(n, k)


def B(n: int, k: float) -> float:
    """Conjectured sharp bound for ``|b_n|`` on S_H^0(K); attained by P_k."""
    return B_displayed(n, k) if k < K_CROSSOVER else B_sum(n, k)


# -- convex bounds a, b -------------------------------------------------------

def a_displayed(n: int, k: float) -> float:
    _check(n, k)
    return (n - k * (n + 1) + k ** (n + 1)) / (n * (1 - k) ** 2)


def b_displayed(n: int, k: float) -> float:
    _check(n, k)
    return k * (n - 1 - n * k + k**n) / (n * (1 - k) ** 2)


def b_sum(n: int, k: float) -> float:
    _check(n, k)
    return math.fsum(k**m * (n - m) for m in range(1, n)) / n


def a_sum(n: int, k: float) -> float:
    return 1.0 + b_sum(n, k)


def a(n: int, k: float) -> float:
    """Sharp bound for ``|a_n|`` on C_H^0(K)."""
    return a_displayed(n, k) if k < K_CROSSOVER else a_sum(n, k)


def b(n: int, k: float) -> float:
    """Sharp bound for ``|b_n|`` on C_H^0(K)."""
    return b_displayed(n, k) if k < K_CROSSOVER else b_sum(n, k)


# -- parameter conversions ----------------------------------------------------

def k0_of_k(k: float) -> float:
    """Dilatation bound after removing ``b_1``: ``2k / (1 + k^2)``."""
    return 2.0 * k / (1.0 + k * k)


def k_of_k0(k0: float) -> float:
    """
    Inverse of :func:`k0_of_k` on ``[0, 1)``.

    Evaluated as ``k0 / (1 + sqrt(1 - k0^2))``, which equals
    ``(1 - sqrt(1 - k0^2)) / k0`` but has no cancellation and returns 0 at 0.
    """
    if not 0.0 <= k0 < 1.0:
        raise ValueError(f"k0 must lie in [0, 1), got {k0}")
    return k0 / (1.0 + math.sqrt(1.0 - k0 * k0))


def k_of_k0_displayed(k0: float) -> float:
    return (1.0 - math.sqrt(1.0 - k0 * k0)) / k0


def K_of_k(k: float) -> float:
    return (1.0 + k) / (1.0 - k)


def k_of_K(K: float) -> float:
    return (K - 1.0) / (K + 1.0)


# -- bounds for the classes without b_1 = 0 -----------------------------------

def C_n(n: int, k: float) -> float:
    k0 = k0_of_k(k)
    return a(n, k0) + k_of_k0(k0) * b(n, k0)


def D_n(n: int, k: float) -> float:
    k0 = k0_of_k(k)
    return b(n, k0) + k_of_k0(k0) * a(n, k0)


def E_n(n: int, k: float) -> float:
    k0 = k0_of_k(k)
    return A(n, k0) + k_of_k0(k0) * B(n, k0)


def F_n(n: int, k: float) -> float:
    k0 = k0_of_k(k)
    return B(n, k0) + k_of_k0(k0) * A(n, k0)


class LimitValues(NamedTuple):
    """Values as ``k -> 1^-``; ``C`` is shared by ``C_n, D_n`` and ``E`` by ``E_n, F_n``."""

    A: float
    B: float
    a: float
    b: float
    C: float
    E: float


def limit_values(n: int) -> LimitValues:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return LimitValues(
        A=(2 * n + 1) * (n + 1) / 6,
        B=(2 * n - 1) * (n - 1) / 6,
        a=(n + 1) / 2,
        b=(n - 1) / 2,
        C=float(n),
        E=(2 * n * n + 1) / 3,
    )


class BoundFamily(str, Enum):
    CONJ_B = "conjB"
    CONVEX0 = "convex0"
    CONVEX = "convex"
    FULL = "full"

    def bounds(self, n: int, k: float) -> tuple[float, float]:
        """``(bound on |a_n|, bound on |b_n|)``."""
        return _FAMILY_FUNCS[self][0](n, k), _FAMILY_FUNCS[self][1](n, k)


_FAMILY_FUNCS = {
    BoundFamily.CONJ_B: (A, B),
    BoundFamily.CONVEX0: (a, b),
    BoundFamily.CONVEX: (C_n, D_n),
    BoundFamily.FULL: (E_n, F_n),
}


# -- geometric sums -----------------------------------------------------------

@dataclass(frozen=True)
class GeometricSums:
    """Closed forms and direct sums of ``sum_{m=1}^{n-1} m^p k^m`` for p = 0, 1, 2."""

    n: int
    k: float
    s0_closed: float
    s1_closed: float
    s2_closed: float
    s0_direct: float
    s1_direct: float
    s2_direct: float

    def max_rel_gap(self) -> float:
        gaps = []
        for c, d in ((self.s0_closed, self.s0_direct), (self.s1_closed, self.s1_direct),
                     (self.s2_closed, self.s2_direct)):
            gaps.append(abs(c - d) / max(abs(d), 1e-300) if d else abs(c))
        return max(gaps)


def geometric_sums(n: int, k: float) -> GeometricSums:
    _check(n, k)
    s0 = k * (1 - k ** (n - 1)) / (1 - k)
    s1 = k / (1 - k) ** 2 * (1 - n * k ** (n - 1) + (n - 1) * k**n)
    s2 = k / (1 - k) ** 3 * (1 + k - n * n * k ** (n - 1) + (2 * n * n - 2 * n - 1) * k**n
                            - (n - 1) ** 2 * k ** (n + 1))
    m = range(1, n)
    return GeometricSums(
        n, k, s0, s1, s2,
        math.fsum(k**j for j in m),
        math.fsum(j * k**j for j in m),
        math.fsum(j * j * k**j for j in m),
    )


# -- lemma polynomials --------------------------------------------------------
#
# Polynomials are lists of exact ints, lowest degree first.

def _padd(p, q):
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return out


def _pscale(p, s):
    return [s * c for c in p]


def _pmul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def _pderiv(p):
    return [i * c for i, c in enumerate(p)][1:] or [0]


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


ONE_MINUS_X = [1, -1]
X = [0, 1]


def M_coeffs(n: int) -> list[int]:
    c = [0] * (n + 3)
    c[0] += n * n
    c[1] += -2 * n * n - 2 * n + 1
    c[2] += (n + 1) ** 2
    c[n + 1] -= 1
    c[n + 2] -= 1
    return _trim(c)


def L_coeffs(n: int) -> list[int]:
    c = [0] * (n + 2)
    c[0] += n
    c[1] -= n + 1
    c[n + 1] += 1
    return _trim(c)


def D_coeffs(n: int) -> list[int]:
    """``(1-x) M_n' + 3 M_n``, the numerator of ``phi_n'`` over ``(1-x)^4``."""
    m = M_coeffs(n)
    return _trim(_padd(_pmul(ONE_MINUS_X, _pderiv(m)), _pscale(m, 3)))


def E_coeffs(n: int) -> list[int]:
    """``(1-x)[x M_{n-1}' + M_{n-1}] + 3x M_{n-1}``, the numerator of ``psi_n'``."""
    m = M_coeffs(n - 1)
    inner = _padd(_pmul(X, _pderiv(m)), m)
    return _trim(_padd(_pmul(ONE_MINUS_X, inner), _pmul([0, 3], m)))


def F_coeffs(n: int) -> list[int]:
    """``(1-x) L_n' + 2 L_n``, the numerator of ``G_n'`` over ``(1-x)^3``."""
    ell = L_coeffs(n)
    return _trim(_padd(_pmul(ONE_MINUS_X, _pderiv(ell)), _pscale(ell, 2)))


def J_coeffs(n: int) -> list[int]:
    """``(1-x)[x L_{n-1}' + L_{n-1}] + 2x L_{n-1}``, the numerator of ``H_n'``."""
    ell = L_coeffs(n - 1)
    inner = _padd(_pmul(X, _pderiv(ell)), ell)
    return _trim(_padd(_pmul(ONE_MINUS_X, inner), _pmul([0, 2], ell)))


def deflate_at_one(p: list[int]) -> tuple[list[int], int]:
    """
    Write ``p = (1-x)^m q`` with ``q(1) != 0`` using exact integer arithmetic.

    ``(1-x) q = p`` gives ``q_j = p_0 + ... + p_j``.
    """
    p = _trim(p)
    if p == [0]:
        raise ValueError("zero polynomial")
    m = 0
    while sum(p) == 0:
        q, acc = [], 0
        for c in p[:-1]:
            acc += c
            q.append(acc)
        p, m = _trim(q), m + 1
    return p, m


def _horner(p, x):
    acc = np.zeros_like(x, dtype=float)
    for c in reversed(p):
        acc = acc * x + float(c)
    return acc


# (numerator builder, extra factor x?, power of (1-x) in the denominator, minimum n)
_LEMMA_TABLE: dict[str, tuple[Callable[[int], list[int]], bool, int, int]] = {
    "M": (M_coeffs, False, 0, 1),
    "D": (D_coeffs, False, 0, 1),
    "E": (E_coeffs, False, 0, 2),
    "L": (L_coeffs, False, 0, 1),
    "F": (F_coeffs, False, 0, 1),
    "J": (J_coeffs, False, 0, 3),
    "PHI": (M_coeffs, False, 3, 2),
    "PSI": (lambda n: M_coeffs(n - 1), True, 3, 2),
    "G": (L_coeffs, False, 2, 2),
    "H": (lambda n: L_coeffs(n - 1), True, 2, 2),
}


@dataclass(frozen=True)
class LemmaPoly:
    """
    One of the auxiliary functions of the monotonicity lemmas, by name.

    ``M, D, E`` (and the ratios ``PHI = M_n/(1-x)^3``, ``PSI = x M_{n-1}/(1-x)^3``)
    belong to the conjectured bounds; ``L, F, J`` (and ``G = L_n/(1-x)^2``,
    ``H = x L_{n-1}/(1-x)^2``) to the convex bounds.  Evaluation factors the
    exact zero at ``x = 1`` out of the integer numerator first, so values near
    ``x = 1`` are accurate instead of cancellation noise.
    """

    kind: str
    n: int
    coeffs: tuple = field(init=False, repr=False, compare=False)
    root_multiplicity: int = field(init=False, repr=False, compare=False)
    _quotient: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in _LEMMA_TABLE:
            raise ValueError(f"unknown lemma polynomial {self.kind!r}")
        build, _, _, n_min = _LEMMA_TABLE[self.kind]
        if self.n < n_min:
            raise ValueError(f"{self.kind}_n needs n >= {n_min}, got {self.n}")
        num = build(self.n)
        q, m = deflate_at_one(num)
        object.__setattr__(self, "coeffs", tuple(num))
        object.__setattr__(self, "root_multiplicity", m)
        object.__setattr__(self, "_quotient", tuple(q))

    def __call__(self, x):
        return lemma_poly_eval(self, x)

    def expanded(self, x):
        """Plain Horner on the expanded numerator (no deflation)."""
        x = np.asarray(x, dtype=float)
        _, with_x, d, _ = _LEMMA_TABLE[self.kind]
        val = _horner(self.coeffs, x) * (x if with_x else 1.0) / (1.0 - x) ** d
        return float(val) if val.ndim == 0 else val


def lemma_poly_eval(p: LemmaPoly, x):
    """Value of ``p`` at ``x`` in ``[0, 1]`` (``x < 1`` for the ratio kinds)."""
    x = np.asarray(x, dtype=float)
    _, with_x, d, _ = _LEMMA_TABLE[p.kind]
    power = p.root_multiplicity - d
    val = _horner(p._quotient, x)
    if power:
        val = val * (1.0 - x) ** power
    if with_x:
        val = val * x
    return float(val) if val.ndim == 0 else val


# -- grid scans ---------------------------------------------------------------

@dataclass(frozen=True)
class ScanReport:
    label: str
    points: int
    lo: float
    hi: float
    min_step: float
    violations: int
    first_violation: float | None

    @property
    def ok(self) -> bool:
        return self.violations == 0


def _vectorize(func):
    def call(x):
        try:
            out = np.asarray(func(x), dtype=float)
            if out.shape == x.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([func(float(t)) for t in x], dtype=float)

    return call


def monotonicity_scan(func, grid: int = 10_000, lo: float = 0.0, hi: float = 1.0 - 1e-6,
                      label: str | None = None) -> ScanReport:
    """
    Check strict increase of ``func`` across consecutive points of a uniform grid.

    ``func`` may be a :class:`LemmaPoly` or any callable of one real variable.
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    x = np.linspace(lo, hi, grid)
    y = _vectorize(func)(x)
    step = np.diff(y)
    bad = np.nonzero(~(step > 0))[0]
    return ScanReport(
        label or repr(func),
        grid,
        lo,
        hi,
        float(step.min()),
        int(bad.size),
        float(x[bad[0]]) if bad.size else None,
    )


def positivity_scan(func, grid: int = 10_000, lo: float = 0.0, hi: float = 1.0 - 1e-6,
                    label: str | None = None) -> ScanReport:
    """Same report shape as :func:`monotonicity_scan`, checking ``func > 0``; ``min_step`` holds the minimum value."""
    x = np.linspace(lo, hi, grid)
    y = _vectorize(func)(x)
    bad = np.nonzero(~(y > 0))[0]
    return ScanReport(label or repr(func), grid, lo, hi, float(y.min()), int(bad.size),
                      float(x[bad[0]]) if bad.size else None)


# -- bound tables -------------------------------------------------------------

CSV_COLUMNS = ("n", "bound", "attained", "margin", "family", "k")


@dataclass(frozen=True)
class BoundRow:
    n: int
    bound: float
    attained: float
    margin: float
    family: str
    k: float


@dataclass
class BoundTable:
    rows: list[BoundRow] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def add(self, n: int, bound: float, attained: float, family: str, k: float) -> None:
        self.rows.append(BoundRow(n, bound, attained, bound - attained, family, k))

    def select(self, family: str) -> list[BoundRow]:
        return [r for r in self.rows if r.family == family]

    def families(self) -> list[str]:
        return list(dict.fromkeys(r.family for r in self.rows))

    def max_abs_margin(self, family: str) -> float:
        return max(abs(r.margin) for r in self.select(family))

    def to_csv(self, fh=None) -> str | None:
        """Write ``n,bound,attained,margin,family,k`` with 9 significant digits."""
        buf = fh if fh is not None else io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([r.n, f"{r.bound:.9g}", f"{r.attained:.9g}", f"{r.margin:.9g}", r.family, f"{r.k:.9g}"])
        return buf.getvalue() if fh is None else None


def bound_table(family: BoundFamily | str, k: float, n_max: int, attained=None) -> BoundTable:
    """
    Per-``n`` bounds for ``family``.  ``attained`` maps ``n`` to
    ``(|a_n|, |b_n|)``; when omitted the attained column repeats the bound.
    """
    family = BoundFamily(family)
    table = BoundTable()
    for n in range(2, n_max + 1):
        ba, bb = family.bounds(n, k)
        xa, xb = attained(n) if attained is not None else (ba, bb)
        table.add(n, ba, xa, f"{family.value}/a", k)
        table.add(n, bb, xb, f"{family.value}/b", k)
    return table
