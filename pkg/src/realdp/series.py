"""Truncated power series with exact rational coefficients.

A :class:`FormalSeries` stores ``c_0 .. c_N`` and knows its order ``N``.
Ring operations keep the smaller order of their operands; nothing is
ever read beyond the stored order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable

from .errors import BadConstantTerm, DivisionByZeroInSpecialization
from .invariants import _seeds, n_closed

DEFAULT_ORDER = 12
MAX_ORDER = 30


@dataclass(frozen=True)
class FormalSeries:
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a series needs at least its constant term")
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))

    @classmethod
    def from_coefficients(cls, coeffs: Iterable, order: int | None = None) -> FormalSeries:
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        return cls(tuple(cs))

    @classmethod
    def constant(cls, c, order: int) -> FormalSeries:
        return cls.from_coefficients([c], order)

    @classmethod
    def x(cls, order: int) -> FormalSeries:
        return cls.from_coefficients([0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} is beyond the truncation order {self.order}")
        return self.coefficients[n]

    def truncate(self, order: int) -> FormalSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return FormalSeries(self.coefficients[: order + 1])

    def _lift(self, other) -> FormalSeries:
        if isinstance(other, FormalSeries):
            return other
        return FormalSeries.constant(other, self.order)

    def __add__(self, other) -> FormalSeries:
        other = self._lift(other)
        n = min(self.order, other.order)
        return FormalSeries(tuple(self.coefficients[i] + other.coefficients[i] for i in range(n + 1)))

    __radd__ = __add__

    def __neg__(self) -> FormalSeries:
        return FormalSeries(tuple(-c for c in self.coefficients))

    def __sub__(self, other) -> FormalSeries:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> FormalSeries:
        return self._lift(other) - self

    def __mul__(self, other) -> FormalSeries:
        if not isinstance(other, FormalSeries):
            return self.scale(other)
        n = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        return FormalSeries(tuple(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1)))

    __rmul__ = __mul__

    def scale(self, c) -> FormalSeries:
        c = Fraction(c)
        return FormalSeries(tuple(c * a for a in self.coefficients))

    def __pow__(self, n: int) -> FormalSeries:
        if not isinstance(n, int) or n < 0:
            raise ValueError("integer powers must be non-negative; use pow_rational otherwise")
        out = FormalSeries.constant(1, self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self) -> FormalSeries:
        """Loses one order."""
        cs = tuple(k * self.coefficients[k] for k in range(1, self.order + 1))
        return FormalSeries(cs or (Fraction(0),))

    def integral(self) -> FormalSeries:
        """Zero constant term; gains one order."""
        return FormalSeries((Fraction(0),) + tuple(c / (k + 1) for k, c in enumerate(self.coefficients)))

    def shift_down(self, k: int = 1) -> FormalSeries:
        """Divide by ``x^k``; the first ``k`` coefficients must vanish. Loses ``k`` orders."""
        if k > self.order:
            raise ValueError("shift exceeds the truncation order")
        if any(self.coefficients[:k]):
            raise BadConstantTerm(f"series is not divisible by x^{k}")
        return FormalSeries(self.coefficients[k:])

    def substitute_scale(self, b) -> FormalSeries:
        """``f(b x)``."""
        b = Fraction(b)
        return FormalSeries(tuple(c * b**k for k, c in enumerate(self.coefficients)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coefficients[: n + 1] == other.coefficients[: n + 1]

    __hash__ = None  # equality ignores the longer tail

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c:
                terms.append(str(c) if k == 0 else f"{c}*x^{k}")
        return " + ".join(terms or ["0"]) + f" + O(x^{self.order + 1})"


def exp(f: FormalSeries) -> FormalSeries:
    """``e^f`` for ``f(0) = 0``, via ``g' = f' g``."""
    if f[0] != 0:
        raise BadConstantTerm(f"exp needs a zero constant term, got {f[0]}")
    n = f.order
    a = f.coefficients
    g = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        g[k] = sum((j * a[j] * g[k - j] for j in range(1, k + 1)), Fraction(0)) / k
    return FormalSeries(tuple(g))


def log(f: FormalSeries) -> FormalSeries:
    """``log f`` for ``f(0) = 1``, via ``f g' = f'``."""
    if f[0] != 1:
        raise BadConstantTerm(f"log needs constant term 1, got {f[0]}")
    n = f.order
    a = f.coefficients
    g = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        g[k] = a[k] - sum((j * g[j] * a[k - j] for j in range(1, k)), Fraction(0)) / k
    return FormalSeries(tuple(g))


def pow_rational(f: FormalSeries, s) -> FormalSeries:
    """``f^s = exp(s log f)`` for ``f(0) = 1``."""
    if f[0] != 1:
        raise BadConstantTerm(f"fractional powers need constant term 1, got {f[0]}")
    return exp(log(f).scale(s))


def tree_function(order: int) -> FormalSeries:
    """``T(x) = sum n^(n-1) x^n / n!``, the solution of ``T = x e^T``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    return FormalSeries((Fraction(0),) + tuple(Fraction(n ** (n - 1), factorial(n)) for n in range(1, order + 1)))


def _check_order(order: int) -> None:
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in 0..{MAX_ORDER}, got {order}")


def n_even_series(d: int, order: int = DEFAULT_ORDER, route: str = "formula") -> FormalSeries:
    """``sum N_{2n+2,1} x^n / n!``."""
    _check_order(order)
    s = _seeds(d)
    if route == "coefficients":
        return FormalSeries(tuple(Fraction(n_closed(d, 2 * n + 2, 1), factorial(n)) for n in range(order + 1)))
    if route != "formula":
        raise ValueError(f"unknown route {route!r}")
    t = tree_function(order + 1)
    inner = (t - (t * t).scale(Fraction(1, 2))).shift_down(1)
    return inner.substitute_scale(s.b).scale(s.n21)


def n_odd_series(d: int, order: int = DEFAULT_ORDER, route: str = "formula") -> FormalSeries:
    """``sum N_{2n+1,0} x^n / n!``; the zero series in degree 2."""
    _check_order(order)
    s = _seeds(d)
    if route == "coefficients":
        return FormalSeries(tuple(Fraction(n_closed(d, 2 * n + 1, 0), factorial(n)) for n in range(order + 1)))
    if route != "formula":
        raise ValueError(f"unknown route {route!r}")
    t = tree_function(order + 1)
    u = t.shift_down(1)  # T/x, constant term 1
    # x^(-1/2) (T^(1/2) - T^(3/2)/3) = (T/x)^(1/2) (1 - T/3)
    inner = pow_rational(u, Fraction(1, 2)) * (1 - t.truncate(order).scale(Fraction(1, 3)))
    return inner.substitute_scale(s.b).scale(s.n10)


def helper_identity_check(order: int = DEFAULT_ORDER) -> bool:
    """``sum (1/2)(n+1/2)^(n-1) x^n/n! == e^(T/2) == (T/x)^(1/2)``."""
    lhs = FormalSeries(tuple(
        Fraction(1, 2) * Fraction(2 * n + 1, 2) ** (n - 1) / factorial(n) for n in range(order + 1)
    ))
    t = tree_function(order + 1)
    mid = exp(t.truncate(order).scale(Fraction(1, 2)))
    rhs = pow_rational(t.shift_down(1), Fraction(1, 2))
    return lhs == mid == rhs


def tree_equation_check(order: int = DEFAULT_ORDER) -> bool:
    """``T == x e^T`` to the truncation order."""
    t = tree_function(order)
    return t == FormalSeries.x(order) * exp(t)


def _power(base: Fraction, e: int) -> Fraction:
    if base == 0 and e < 0:
        raise DivisionByZeroInSpecialization("a factor with negative exponent vanishes")
    return base**e


def abel_check(m: int, x, y, z) -> bool:
    """``(x+y)^m / x == sum_k C(m,k) (x - k z)^(k-1) (y + k z)^(m-k)``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    x, y, z = Fraction(x), Fraction(y), Fraction(z)
    if x == 0:
        raise DivisionByZeroInSpecialization("x must be non-zero")
    lhs = (x + y) ** m / x
    rhs = sum(comb(m, k) * _power(x - k * z, k - 1) * _power(y + k * z, m - k) for k in range(m + 1))
    return lhs == rhs


def abel_even_row(n: int) -> bool:
    """Specialization ``x = -z = 1, y = n, m = n - 1``."""
    return abel_check(n - 1, 1, n, -1)


def abel_odd_row(n: int) -> bool:
    """Specialization ``x = -z = 1, y = n - 1/2, m = n - 1``."""
    return abel_check(n - 1, 1, Fraction(2 * n - 1, 2), -1)


__all__ = [
    "DEFAULT_ORDER", "FormalSeries", "abel_check", "abel_even_row", "abel_odd_row",
    "exp", "helper_identity_check", "log", "n_even_series", "n_odd_series", "pow_rational",
    "tree_equation_check", "tree_function",
]
