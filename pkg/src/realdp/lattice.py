"""Picard lattices of del Pezzo surfaces in the blow-up basis.

A surface of degree ``d`` is the plane blown up at ``9 - d`` points, so
``Pic(X)`` is ``Z^(10-d)`` with basis ``(h, e_1, ..., e_{9-d})`` and
intersection form ``diag(1, -1, ..., -1)``.  The canonical class is
``K = -3h + e_1 + ... + e_{9-d}``.

Classes are exact integer vectors.  The only half-integral classes are
the outputs of :func:`project_perp`; they carry ``denom == 2`` and are
never silently rounded.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import isqrt
from typing import Iterable, Iterator, Sequence

from .errors import DegreeOutOfRange, LatticeMismatch, NotARoot


@dataclass(frozen=True, order=True)
class DivisorClass:
    """Integer (or half-integer) vector ``coords / denom`` in the blow-up basis."""

    coords: tuple[int, ...]
    denom: int = 1

    def __post_init__(self):
        if self.denom not in (1, 2):
            raise ValueError(f"denominator must be 1 or 2, got {self.denom}")
        if self.denom == 2 and all(c % 2 == 0 for c in self.coords):
            object.__setattr__(self, "coords", tuple(c // 2 for c in self.coords))
            object.__setattr__(self, "denom", 1)

    @classmethod
    def of(cls, *coords: int) -> DivisorClass:
        return cls(tuple(int(c) for c in coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def degree_of_surface(self) -> int:
        return 10 - len(self.coords)

    @property
    def is_integral(self) -> bool:
        return self.denom == 1

    def _common(self, other: DivisorClass) -> tuple[tuple[int, ...], tuple[int, ...], int]:
        _check_same(self, other)
        if self.denom == other.denom:
            return self.coords, other.coords, self.denom
        a = tuple(c * (2 // self.denom) for c in self.coords)
        b = tuple(c * (2 // other.denom) for c in other.coords)
        return a, b, 2

    def __add__(self, other: DivisorClass) -> DivisorClass:
        a, b, den = self._common(other)
        return DivisorClass(tuple(x + y for x, y in zip(a, b)), den)

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        a, b, den = self._common(other)
        return DivisorClass(tuple(x - y for x, y in zip(a, b)), den)

    def __neg__(self) -> DivisorClass:
        return DivisorClass(tuple(-c for c in self.coords), self.denom)

    def __rmul__(self, n: int) -> DivisorClass:
        if isinstance(n, Fraction):
            if n.denominator == 1:
                n = n.numerator
            elif n.denominator == 2 and self.denom == 1:
                return DivisorClass(tuple(n.numerator * c for c in self.coords), 2)
            else:
                raise ValueError(f"cannot scale a class by {n}")
        return DivisorClass(tuple(n * c for c in self.coords), self.denom)

    __mul__ = __rmul__

    def dot(self, other: DivisorClass):
        return pair(self, other)

    def __str__(self) -> str:
        body = ",".join(str(c) for c in self.coords)
        return f"({body})" if self.denom == 1 else f"({body})/2"

    def as_fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.denom) for c in self.coords)


def _check_same(a: DivisorClass, b: DivisorClass) -> None:
    if len(a.coords) != len(b.coords):
        raise LatticeMismatch(
            f"classes live in lattices of rank {len(a.coords)} and {len(b.coords)}"
        )


def pair(a: DivisorClass, b: DivisorClass) -> int | Fraction:
    """Intersection number ``a . b``; a :class:`Fraction` only if it is not integral."""
    _check_same(a, b)
    x, y = a.coords, b.coords
    raw = 2 * x[0] * y[0] - sum(map(int.__mul__, x, y))
    if a.denom == b.denom == 1:
        return raw
    value = Fraction(raw, a.denom * b.denom)
    return value.numerator if value.denominator == 1 else value


@dataclass(frozen=True)
class DelPezzoLattice:
    """``Pic(X)`` for a del Pezzo surface of degree ``degree`` (1 to 6)."""

    degree: int

    def __post_init__(self):
        if not isinstance(self.degree, int) or not 1 <= self.degree <= 6:
            raise DegreeOutOfRange(f"degree must be in 1..6, got {self.degree!r}")

    @property
    def rank(self) -> int:
        return 10 - self.degree

    @property
    def n_points(self) -> int:
        return 9 - self.degree

    @cached_property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        r = self.rank
        return tuple(
            tuple((1 if i == 0 else -1) if i == j else 0 for j in range(r)) for i in range(r)
        )

    @cached_property
    def K(self) -> DivisorClass:
        return DivisorClass((-3,) + (1,) * self.n_points)

    @cached_property
    def h(self) -> DivisorClass:
        return self.basis_vector(0)

    def e(self, i: int) -> DivisorClass:
        """Exceptional class ``e_i``, 1-based."""
        if not 1 <= i <= self.n_points:
            raise IndexError(f"e_{i} does not exist in degree {self.degree}")
        return self.basis_vector(i)

    def basis_vector(self, i: int) -> DivisorClass:
        return DivisorClass(tuple(1 if j == i else 0 for j in range(self.rank)))

    def zero(self) -> DivisorClass:
        return DivisorClass((0,) * self.rank)

    def cls(self, coords: Sequence[int]) -> DivisorClass:
        if len(coords) != self.rank:
            raise LatticeMismatch(f"expected {self.rank} coordinates, got {len(coords)}")
        return DivisorClass(tuple(int(c) for c in coords))

    def owns(self, v: DivisorClass) -> None:
        if v.rank != self.rank:
            raise LatticeMismatch(f"class of rank {v.rank} used with degree-{self.degree} lattice")

    def anticanonical_degree(self, v: DivisorClass):
        """``-v.K``."""
        self.owns(v)
        return -pair(v, self.K)

    @cached_property
    def simple_roots(self) -> tuple[DivisorClass, ...]:
        n = self.n_points
        out = [self.e(i) - self.e(i + 1) for i in range(1, n)]
        out.append(self.h - self.e(1) - self.e(2) - self.e(3))
        return tuple(out)

    @cached_property
    def roots(self) -> tuple[DivisorClass, ...]:
        return tuple(vectors_with(self, 0, -2))

    @cached_property
    def lines(self) -> tuple[DivisorClass, ...]:
        return tuple(vectors_with(self, 1, -1))


@lru_cache(maxsize=None)
def make_lattice(d: int) -> DelPezzoLattice:
    return DelPezzoLattice(d)


def lattice_of(v: DivisorClass) -> DelPezzoLattice:
    return make_lattice(v.degree_of_surface)


def arithmetic_genus(L: DelPezzoLattice, alpha: DivisorClass) -> int:
    """``1 + (alpha^2 + alpha.K) / 2`` by adjunction."""
    L.owns(alpha)
    twice = pair(alpha, alpha) + pair(alpha, L.K)
    if isinstance(twice, Fraction) or twice % 2:
        raise ValueError(f"{alpha} has non-integral arithmetic genus")
    return 1 + twice // 2


def is_root(L: DelPezzoLattice, v: DivisorClass) -> bool:
    L.owns(v)
    return v.is_integral and pair(v, L.K) == 0 and pair(v, v) == -2


def _require_root(e: DivisorClass) -> DelPezzoLattice:
    L = lattice_of(e)
    if not is_root(L, e):
        raise NotARoot(f"{e} is not a root (need e.K = 0 and e.e = -2)")
    return L


def reflect(e: DivisorClass, v: DivisorClass) -> DivisorClass:
    """Picard-Lefschetz reflection ``v + (e.v) e``."""
    _require_root(e)
    _check_same(e, v)
    return v + pair(e, v) * e


def project_perp(e: DivisorClass, v: DivisorClass) -> DivisorClass:
    """Orthogonal projection ``v + (e.v)/2 e`` onto ``e^perp``; may be half-integral."""
    _require_root(e)
    _check_same(e, v)
    return v + Fraction(pair(e, v), 2) * e


def weyl_orbit(L: DelPezzoLattice, v: DivisorClass) -> tuple[DivisorClass, ...]:
    """Closure of ``{v}`` under the simple reflections, sorted."""
    L.owns(v)
    seen = {v}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for r in L.simple_roots:
            w = u + pair(r, u) * r
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return tuple(sorted(seen))


def _h_coefficient_range(d: int, n: int, m: int, s: int, slack: int) -> range:
    # (m - 3a)^2 = (sum b)^2 <= n * sum b^2 = n (a^2 - s)
    # <=> d a^2 - 6 m a + m^2 + n s <= 0   (d = 9 - n)
    disc = 36 * m * m - 4 * d * (m * m + n * s)
    if disc < 0:
        return range(0)
    r = isqrt(disc)
    lo = (6 * m - r - 1) // (2 * d) - 1
    hi = (6 * m + r) // (2 * d) + 2
    while lo < hi and d * lo * lo - 6 * m * lo + m * m + n * s > 0:
        lo += 1
    while hi > lo and d * (hi - 1) ** 2 - 6 * m * (hi - 1) + m * m + n * s > 0:
        hi -= 1
    return range(lo - slack, hi + slack)


def _tails(k: int, total: int, squares: int, slack: int) -> Iterator[tuple[int, ...]]:
    """All integer k-tuples with the given sum and sum of squares."""
    if k == 0:
        if total == 0 and squares == 0:
            yield ()
        return
    if squares < 0 or total * total > k * squares or (squares - total) % 2:
        return
    bound = isqrt(squares) + slack
    for b in range(bound, -bound - 1, -1):
        yield from ((b,) + rest for rest in _tails(k - 1, total - b, squares - b * b, slack))


def vectors_with(
    L: DelPezzoLattice, m: int, s: int, slack: int = 0
) -> list[DivisorClass]:
    """All classes with ``-v.K == m`` and ``v.v == s``, sorted.

    The search is exhaustive: ``K^perp`` is negative definite, and the
    Cauchy-Schwarz bound on the ``h`` coefficient follows from it.
    ``slack`` widens every bound (used to confirm nothing lies beyond).
    """
    n = L.n_points
    out = []
    for a in _h_coefficient_range(L.degree, n, m, s, slack):
        for tail in _tails(n, m - 3 * a, a * a - s, slack):
            out.append(DivisorClass((a,) + tail))
    out.sort()
    return out


def classes_in(vs: Iterable[DivisorClass]) -> tuple[DivisorClass, ...]:
    return tuple(sorted(set(vs)))
