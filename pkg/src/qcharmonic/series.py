"""
Truncated power series with complex coefficients.

A :class:`TruncatedSeries` of order ``N`` stores ``c_0 .. c_N`` of an analytic
germ at the origin.  Coefficients above ``N`` are unknown, not zero, so every
binary operation truncates to the smaller operand order and nothing is ever
silently extended.

    >>> g = TruncatedSeries.geometric(4)
    >>> (g * g).coeffs.real
    array([1., 2., 3., 4., 5.])
    >>> log_unit(TruncatedSeries([1, -1, 0, 0])).coeffs.real
    array([ 0.        , -1.        , -0.5       , -0.33333333])

Values are immutable: the coefficient array is flagged read-only, so a series
can be shared freely between threads.
"""

from __future__ import annotations

from numbers import Number

import numpy as np

from .errors import NonUnitConstantTerm, ZeroConstantTerm

__all__ = [
    "TruncatedSeries",
    "add",
    "sub",
    "mul",
    "div",
    "differentiate",
    "integrate",
    "log_unit",
    "evaluate",
    "evaluate_with_error",
]

ZERO_TOL = 1e-14
UNIT_TOL = 1e-12


class TruncatedSeries:
    """Dense truncated power series ``c_0 + c_1 z + ... + c_N z^N``."""

    __slots__ = ("_c",)
    # numpy scalars defer to our reflected operators instead of broadcasting
    __array_ufunc__ = None

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a truncated series needs at least one coefficient")
        c.flags.writeable = False
        self._c = c

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls(np.zeros(order + 1))

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls.monomial(order, 0)

    @classmethod
    def constant(cls, order: int, value: complex) -> TruncatedSeries:
        return cls.monomial(order, 0, value)

    @classmethod
    def monomial(cls, order: int, power: int, scale: complex = 1.0) -> TruncatedSeries:
        """``scale * z**power`` truncated at ``order``."""
        c = np.zeros(order + 1, dtype=complex)
        if power <= order:
            c[power] = scale
        return cls(c)

    @classmethod
    def identity(cls, order: int) -> TruncatedSeries:
        return cls.monomial(order, 1)

    @classmethod
    def geometric(cls, order: int, ratio: complex = 1.0) -> TruncatedSeries:
        """``1 / (1 - ratio*z)``."""
        return cls(np.asarray(ratio, dtype=complex) ** np.arange(order + 1))

    # -- basic protocol -----------------------------------------------------

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, n):
        return self._c[n]

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, coeffs={np.array2string(self._c, precision=6, threshold=8)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self._c, other._c))

    def __hash__(self):
        return hash((self.order, self._c.tobytes()))

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self._c[: order + 1])

    def shift(self, m: int = 1) -> TruncatedSeries:
        """Multiply by ``z**m`` keeping the order fixed."""
        c = np.zeros_like(self._c)
        if m <= self.order:
            c[m:] = self._c[: self.order + 1 - m]
        return TruncatedSeries(c)

    def conj(self) -> TruncatedSeries:
        """Series of ``conj(f(conj(z)))``: coefficientwise conjugate."""
        return TruncatedSeries(self._c.conj())

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._c)))

    # -- arithmetic operators ----------------------------------------------

    def _coerce(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, Number):
            return TruncatedSeries.constant(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return other if other is NotImplemented else add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return other if other is NotImplemented else sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return other if other is NotImplemented else sub(other, self)

    def __neg__(self):
        return TruncatedSeries(-self._c)

    def __mul__(self, other):
        if isinstance(other, Number):
            return TruncatedSeries(self._c * other)
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return TruncatedSeries(self._c / other)
        if isinstance(other, TruncatedSeries):
            return div(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other if other is NotImplemented else div(other, self)

    def __call__(self, z):
        return evaluate(self, z)

    def deriv(self) -> TruncatedSeries:
        return differentiate(self)

    def integ(self) -> TruncatedSeries:
        return integrate(self)

    def truncation_error(self, z) -> np.ndarray | float:
        """Heuristic tail size ``|c_N| |z|^(N+1) / (1 - |z|)``."""
        r = np.abs(np.asarray(z, dtype=complex))
        with np.errstate(divide="ignore", invalid="ignore"):
            est = np.where(r < 1.0, abs(self._c[-1]) * r ** (self.order + 1) / (1.0 - r), np.inf)
        return float(est) if est.ndim == 0 else est


def _common(a: TruncatedSeries, b: TruncatedSeries) -> tuple[np.ndarray, np.ndarray, int]:
    n = min(a.order, b.order)
    return a.coeffs[: n + 1], b.coeffs[: n + 1], n


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    x, y, _ = _common(a, b)
    return TruncatedSeries(x + y)


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    x, y, _ = _common(a, b)
    return TruncatedSeries(x - y)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at ``min(a.order, b.order)``."""
    x, y, n = _common(a, b)
    return TruncatedSeries(np.convolve(x, y)[: n + 1])


def div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """
    Quotient ``a / b`` by forward substitution on the Cauchy-product recurrence

        q_n = (a_n - sum_{j=1}^{n} b_j q_{n-j}) / b_0.

    Raises
    ------
    ZeroConstantTerm
        If ``|b_0| <= 1e-14``.
    """
    x, y, n = _common(a, b)
    b0 = y[0]
    if abs(b0) <= ZERO_TOL:
        raise ZeroConstantTerm(f"divisor has constant term {b0!r}")
    q = np.zeros(n + 1, dtype=complex)
    yr = y[1:]
    for m in range(n + 1):
        acc = x[m]
        if m:
            # sum_{j=1}^{m} b_j q_{m-j}
            acc -= np.dot(yr[:m], q[m - 1 :: -1])
        q[m] = acc / b0
    return TruncatedSeries(q)


def differentiate(a: TruncatedSeries) -> TruncatedSeries:
    """Term-by-term derivative; the order drops by one (an order-0 series gives ``0``)."""
    if a.order == 0:
        return TruncatedSeries([0.0])
    n = np.arange(1, a.order + 1)
    return TruncatedSeries(a.coeffs[1:] * n)


def integrate(a: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative vanishing at 0; the order rises by one."""
    c = np.zeros(a.order + 2, dtype=complex)
    c[1:] = a.coeffs / np.arange(1, a.order + 2)
    return TruncatedSeries(c)


def log_unit(a: TruncatedSeries) -> TruncatedSeries:
    """
    Principal logarithm of a series with ``c_0 = 1``, via ``log a = int(a'/a)``.

    Raises
    ------
    NonUnitConstantTerm
        If ``|c_0 - 1| > 1e-12``.
    """
    if abs(a.coeffs[0] - 1.0) > UNIT_TOL:
        raise NonUnitConstantTerm(f"log_unit needs c_0 = 1, got {a.coeffs[0]!r}")
    if a.order == 0:
        return TruncatedSeries([0.0])
    return integrate(div(differentiate(a), a.truncate(a.order - 1)))


def evaluate(a: TruncatedSeries, z):
    """Horner evaluation of the partial sum at scalar or array ``z``."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in a.coeffs[::-1]:
        acc = acc * z + c
    return complex(acc) if acc.ndim == 0 else acc


def evaluate_with_error(a: TruncatedSeries, z, r_max: float = 1.0):
    """
    Partial sum together with the tail estimate ``|c_N| |z|^(N+1)/(1-|z|)``.

    ``r_max`` is the radius the caller considers meaningful; points beyond it
    get an infinite error estimate.
    """
    value = evaluate(a, z)
    err = np.asarray(a.truncation_error(z), dtype=float)
    err = np.where(np.abs(np.asarray(z, dtype=complex)) <= r_max, err, np.inf)
    return value, (float(err) if err.ndim == 0 else err)
