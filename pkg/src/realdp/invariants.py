"""The invariants N_{m,k}, Gamma_{m,k} and layer sums of Gromov-Witten invariants.

Every quantity is an exact integer or :class:`~fractions.Fraction`.  The
closed forms and the recursions are independent routes to the same
numbers; :func:`n_closed` and :func:`n_recursive` never share code
beyond the seed values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DegreeOutOfRange, NonIntegralResult, ParityMismatch


@dataclass(frozen=True)
class SeedConstants:
    """Initial values for one degree, with where each number comes from."""

    degree: int
    n10: int
    n21: int
    a: int
    gw_initial: tuple[int, int, int]
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def b(self) -> Fraction:
        return Fraction(4 * self.n21, self.degree)


# Initial layer GW sums, m = 1..3, for degrees 1..6.
GW_INITIAL: dict[int, tuple[int, int, int]] = {
    1: (252, 5130, 446400),
    2: (56, 138, 344),
    3: (27, 27, 84),
    4: (16, 10, 16),
    5: (10, 5, 5),
    6: (6, 3, 2),
}


_TABLE = "table of N_{m,k} for m <= 6"
_GW_TABLE = "table of initial layer GW sums"

SEEDS: dict[int, SeedConstants] = {
    1: SeedConstants(1, 8, 30, 60, GW_INITIAL[1],
                     {"n10": _TABLE, "n21": _TABLE, "a": "root-weighted GW sum constant",
                      "gw_initial": _GW_TABLE}),
    2: SeedConstants(2, 0, 6, 6, GW_INITIAL[2],
                     {"n10": _TABLE, "n21": _TABLE, "a": "root-weighted GW sum constant",
                      "gw_initial": _GW_TABLE}),
    3: SeedConstants(3, 3, 3, 2, GW_INITIAL[3],
                     {"n10": _TABLE, "n21": _TABLE, "a": "root-weighted GW sum constant",
                      "gw_initial": _GW_TABLE}),
}

def _seeds(d: int) -> SeedConstants:
    if d not in SEEDS:
        raise DegreeOutOfRange(f"N_(m,k) is defined for degrees 1..3, got {d}")
    return SEEDS[d]


def _exact_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NonIntegralResult(f"{what} = {x} is not an integer")
    return x.numerator


def _check_mk(m: int, k: int) -> None:
    if m < 1 or k < 0 or k > m - 1:
        raise ValueError(f"need m >= 1 and 0 <= k <= m-1, got (m, k) = ({m}, {k})")
    if (k - (m - 1)) % 2:
        raise ParityMismatch(f"k must be congruent to m-1 mod 2, got (m, k) = ({m}, {k})")


def n_closed(d: int, m: int, k: int) -> int:
    """``N_{m,k}`` from the explicit solution of the recursions."""
    _check_mk(m, k)
    s = _seeds(d)
    if k >= 2:
        return 0
    b = s.b
    if m % 2:
        n = (m - 1) // 2
        value = Fraction(s.n10, 4) * b**n * (Fraction(2 * n + 1, 2)) ** (n - 2)
    else:
        n = (m - 2) // 2
        value = s.n21 * b**n * Fraction(n + 1) ** (n - 2)
    return _exact_int(value, f"N_({m},{k}) in degree {d}")


@lru_cache(maxsize=None)
def _n_rec(d: int, m: int) -> int:
    s = _seeds(d)
    if m == 1:
        return s.n10
    if m == 2:
        return s.n21
    n = (m - 1) // 2 if m % 2 else (m - 2) // 2
    total = 0
    for j in range(1, n + 1):
        total += comb(n - 1, n - j) * j * (m - 2 * j) ** 2 * _n_rec(d, m - 2 * j) * _n_rec(d, 2 * j)
    q, r = divmod(2 * total, m * d)
    if r:
        raise NonIntegralResult(f"recursion for N_({m}) in degree {d} left remainder {r}")
    return q


def n_recursive(d: int, m: int, k: int) -> int:
    """``N_{m,k}`` from the two quadratic recursions and the seeds ``N_{1,0}, N_{2,1}``."""
    _check_mk(m, k)
    _seeds(d)
    if k >= 2:
        return 0
    return _n_rec(d, m)


def n_value(d: int, m: int, k: int, method: str = "closed") -> int:
    if method == "closed":
        return n_closed(d, m, k)
    if method == "recursion":
        return n_recursive(d, m, k)
    raise ValueError(f"unknown method {method!r}")


def admissible_k(m: int) -> list[int]:
    return list(range((m - 1) % 2, m, 2))


def gamma_from_n(m: int, k: int, n: int) -> Fraction:
    """``Gamma_{m,k} = -N_{m,k} / 2^(l-1)`` with ``l = (m-k-1)/2``."""
    _check_mk(m, k)
    l = (m - k - 1) // 2
    return -Fraction(n) / Fraction(2) ** (l - 1)


def n_from_gamma(m: int, k: int, gamma: Fraction) -> Fraction:
    _check_mk(m, k)
    l = (m - k - 1) // 2
    return -Fraction(2) ** (l - 1) * Fraction(gamma)


def gw_layer_sum(d: int, m: int, initial: tuple[int, int, int] | None = None) -> int:
    """``sum of GW(alpha)`` over the layer of degree ``m`` (degrees 1 to 6).

    Seeds for ``m <= 3`` (the stored table unless ``initial`` is given);
    for ``m >= 4`` the quadratic layer recursion with ``C(a, b) = 0``
    outside ``0 <= b <= a``, divided exactly by ``d^2``.
    """
    if d not in GW_INITIAL:
        raise DegreeOutOfRange(f"layer GW recursion holds for degrees 1..6, got {d}")
    if m < 1:
        raise ValueError(f"layer degree must be positive, got {m}")
    return _gw(d, m, tuple(initial) if initial is not None else GW_INITIAL[d])


@lru_cache(maxsize=None)
def _gw(d: int, m: int, initial: tuple[int, int, int]) -> int:
    if m <= 3:
        return initial[m - 1]
    total = 0
    for m1 in range(1, m):
        m2 = m - m1
        bracket = m2 * _binom(m - 4, m1 - 2) - m1 * _binom(m - 4, m1 - 1)
        if bracket:
            total += _gw(d, m1, initial) * _gw(d, m2, initial) * m1 * m1 * m2 * bracket
    q, r = divmod(total, d * d)
    if r:
        raise NonIntegralResult(f"layer GW sum N_{m} in degree {d} is not integral ({total}/{d * d})")
    return q


def _binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def root_weighted_gw_sum(d: int, n: int) -> int:
    """``sum over the layer of (e.alpha)^2 GW(alpha) = 2 d a^n n^(n-3)`` for any root ``e``."""
    s = _seeds(d)
    if n < 1:
        raise ValueError(f"layer degree must be positive, got {n}")
    value = 2 * d * Fraction(s.a) ** n * Fraction(n) ** (n - 3)
    return _exact_int(value, f"root-weighted GW sum of layer {n} in degree {d}")


def magic_rhs(d: int, m: int) -> Fraction:
    return Fraction(2) ** (m - 3) * root_weighted_gw_sum(d, m)


def magic_check(d: int, m: int) -> bool:
    """``N_{2m,1} == 2^(m-3) * sum (e.alpha)^2 GW(alpha)``."""
    if m < 1:
        raise ValueError("m must be positive")
    return Fraction(n_closed(d, 2 * m, 1)) == magic_rhs(d, m)


def binom_square_sum(n: int) -> bool:
    """``n 2^n == sum_k (n - 2k)^2 C(n, k)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return n * 2**n == sum((n - 2 * k) ** 2 * comb(n, k) for k in range(n + 1))


@dataclass(frozen=True)
class GrowthRow:
    m: int
    gw_excess: float          # log N^GW_{2m} - 2m log m
    even_excess: float        # log N_{2m,1} - m log m
    odd_excess: float | None  # log N_{2m+1,0} - m log m; None when the row vanishes


@dataclass(frozen=True)
class GrowthReport:
    degree: int
    rows: tuple[GrowthRow, ...]

    @property
    def constant(self) -> float:
        """Smallest ``C`` with ``|excess| <= C m`` for every reported excess."""
        c = 0.0
        for r in self.rows:
            for x in (r.gw_excess, r.even_excess, r.odd_excess):
                if x is not None:
                    c = max(c, abs(x) / r.m)
        return c


def growth_report(d: int, m_max: int) -> GrowthReport:
    """Compare the growth of the layer GW sums with that of the real invariants."""
    if not 1 <= m_max <= 30:
        raise ValueError("m_max must be in 1..30")
    _seeds(d)
    rows = []
    for m in range(1, m_max + 1):
        mlogm = m * math.log(m)
        gw = math.log(gw_layer_sum(d, 2 * m)) - 2 * mlogm
        even = math.log(n_closed(d, 2 * m, 1)) - mlogm
        odd_n = n_closed(d, 2 * m + 1, 0)
        odd = math.log(odd_n) - mlogm if odd_n else None
        rows.append(GrowthRow(m, gw, even, odd))
    return GrowthReport(d, tuple(rows))


@dataclass
class InvariantTable:
    """Computed ``N_{m,k}`` and layer GW sums for one degree."""

    degree: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)
    gw_entries: dict[int, int] = field(default_factory=dict)

    @classmethod
    def build(cls, d: int, m_max: int, method: str = "closed", with_gw: bool = True) -> InvariantTable:
        table = cls(d)
        for m in range(1, m_max + 1):
            for k in admissible_k(m):
                table.entries[(m, k)] = n_value(d, m, k, method)
            if with_gw:
                table.gw_entries[m] = gw_layer_sum(d, m)
        return table

    def gamma(self, m: int, k: int) -> Fraction:
        return gamma_from_n(m, k, self.entries[(m, k)])
