"""Effective classes, lines and anticanonical layers for degrees 1 to 3."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterator

import numpy as np

from .errors import DegreeOutOfRange
from .lattice import DelPezzoLattice, DivisorClass, arithmetic_genus, make_lattice, pair, vectors_with


@dataclass(frozen=True)
class LayerSet:
    """Effective classes of anticanonical degree ``m``."""

    lattice: DelPezzoLattice
    m: int
    classes: tuple[DivisorClass, ...]
    rational_only: bool = False

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[DivisorClass]:
        return iter(self.classes)

    def __contains__(self, v: object) -> bool:
        return v in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.classes)


def _low_degree(L: DelPezzoLattice) -> None:
    if L.degree > 3:
        raise DegreeOutOfRange(f"effective cone is only modelled for degree <= 3, got {L.degree}")


def lines(L: DelPezzoLattice) -> tuple[DivisorClass, ...]:
    """Classes with ``a.a == a.K == -1``."""
    return L.lines


def effective_generators(L: DelPezzoLattice) -> tuple[DivisorClass, ...]:
    """Lines, together with ``-K`` in degree 1."""
    _low_degree(L)
    if L.degree == 1:
        return L.lines + (-L.K,)
    return L.lines


def effective_decomposition(L: DelPezzoLattice, alpha: DivisorClass) -> tuple[DivisorClass, ...] | None:
    """A multiset of generators summing to ``alpha``, or ``None`` if there is none."""
    _low_degree(L)
    L.owns(alpha)
    if not alpha.is_integral:
        return None
    return _decompose(L.degree, alpha)


@lru_cache(maxsize=None)
def _generator_set(d: int) -> frozenset:
    return frozenset(effective_generators(make_lattice(d)))


@lru_cache(maxsize=None)
def _generator_table(d: int) -> tuple[tuple[DivisorClass, ...], np.ndarray]:
    gens = tuple(sorted(effective_generators(make_lattice(d))))
    signed = np.array([g.coords for g in gens], dtype=np.int64)
    signed[:, 1:] *= -1
    return gens, signed


@lru_cache(maxsize=200_000)
def _decompose(d: int, alpha: DivisorClass) -> tuple[DivisorClass, ...] | None:
    L = make_lattice(d)
    m = -pair(alpha, L.K)
    if m < 0:
        return None
    if m == 0:
        return () if alpha == L.zero() else None
    if m == 1:
        return (alpha,) if alpha in _generator_set(d) else None
    gens, signed = _generator_table(d)
    products = signed @ np.array(alpha.coords, dtype=np.int64)
    # Distinct generators meet non-negatively, so a generator pairing
    # negatively with alpha must occur in every decomposition.
    negative = np.flatnonzero(products < 0)
    if negative.size:
        order = negative[:1]
    else:
        # Complete search; generators meeting alpha least leave the largest
        # remainder norm, which is where decompositions are found first.
        order = np.argsort(products, kind="stable")
    for i in order:
        g = gens[i]
        rest = _decompose(d, alpha - g)
        if rest is not None:
            return tuple(sorted(rest + (g,)))
    return None


def is_effective(L: DelPezzoLattice, alpha: DivisorClass) -> bool:
    """Exact membership in the semigroup spanned by :func:`effective_generators`."""
    return effective_decomposition(L, alpha) is not None


def is_rational_candidate(L: DelPezzoLattice, alpha: DivisorClass) -> bool:
    """Filter used for irreducible rational curve counts: ``g_a >= 0`` and ``a.a >= -1``."""
    return pair(alpha, alpha) >= -1 and arithmetic_genus(L, alpha) >= 0


@lru_cache(maxsize=None)
def _full_layer(d: int, m: int) -> tuple[DivisorClass, ...]:
    L = make_lattice(d)
    gens = effective_generators(L)
    if m == 1:
        return tuple(sorted(set(gens)))
    prev = _full_layer(d, m - 1)
    return tuple(sorted({b + g for b in prev for g in gens}))


@lru_cache(maxsize=None)
def _rational_layer(d: int, m: int) -> tuple[DivisorClass, ...]:
    L = make_lattice(d)
    lo = max(-1, m - 2)
    hi = (m * m) // d
    out = []
    for s in range(lo, hi + 1):
        if (s - m) % 2:
            continue
        out.extend(v for v in vectors_with(L, m, s) if is_effective(L, v))
    return tuple(sorted(out))


def layer(L: DelPezzoLattice, m: int, rational_only: bool = False) -> LayerSet:
    """All effective classes with ``-a.K == m``.

    With ``rational_only`` the norm window ``max(-1, m - 2) <= a.a <= m^2/d``
    is enumerated directly (the upper end is the Hodge index bound);
    otherwise the layer is built as the ``m``-fold sumset of generators,
    every generator having anticanonical degree 1.
    """
    _low_degree(L)
    if m < 1:
        raise ValueError(f"layer degree must be positive, got {m}")
    classes = _rational_layer(L.degree, m) if rational_only else _full_layer(L.degree, m)
    return LayerSet(L, m, classes, rational_only)


def disjoint_line_pairs(L: DelPezzoLattice) -> int:
    """Number of unordered pairs of disjoint lines on a cubic surface."""
    if L.degree != 3:
        raise DegreeOutOfRange("disjoint line pairs are only counted on cubic surfaces")
    return sum(1 for a, b in combinations(L.lines, 2) if pair(a, b) == 0)
