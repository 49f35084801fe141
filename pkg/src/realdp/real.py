"""Real structures on Picard lattices and their Z/4 quadratic functions.

A real structure is modelled by the integral involution ``conj_*``.  The
anti-invariant part ``H2^- = ker(1 + conj_*)`` carries the quadratic
functions ``q`` with ``q(x + y) = q(x) + q(y) + 2 x.y (mod 4)``; they are
stored by their values on a basis of ``H2^-``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Callable, Iterable, Sequence

from .curves import LayerSet, layer
from .errors import (
    DegreeMismatch,
    InconsistentConstraints,
    KNotAntiInvariant,
    NotAnInvolution,
    NotAnIsometry,
    VectorOutsideDomain,
)
from .lattice import DelPezzoLattice, DivisorClass, pair, vectors_with

Matrix = tuple[tuple[int, ...], ...]

PRESETS = ("maximal", "aux-d1", "aux-d2", "aux-d3")


# -- small exact linear algebra ------------------------------------------------

def _matvec(M: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def _transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M))


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def integer_kernel(M: Matrix) -> list[tuple[int, ...]]:
    """Basis of ``{x in Z^n : M x = 0}``; saturated by construction.

    Row-reduces ``[M^T | I]`` with unimodular integer operations; the
    identity-part rows whose ``M^T`` part vanishes span the kernel.
    """
    n = len(M[0])
    rows = [list(col) + list(e) for col, e in zip(_transpose(M), _identity(n))]
    width = len(M)
    pivot_row = 0
    for c in range(width):
        while True:
            live = [r for r in range(pivot_row, n) if rows[r][c] != 0]
            if not live:
                break
            best = min(live, key=lambda r: abs(rows[r][c]))
            rows[pivot_row], rows[best] = rows[best], rows[pivot_row]
            done = True
            for r in range(pivot_row + 1, n):
                if rows[r][c]:
                    q = rows[r][c] // rows[pivot_row][c]
                    rows[r] = [a - q * b for a, b in zip(rows[r], rows[pivot_row])]
                    if rows[r][c]:
                        done = False
            if done:
                pivot_row += 1
                break
    return [tuple(row[width:]) for row in rows[pivot_row:]]


def _determinant(M: Sequence[Sequence[Fraction]]) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det


def _solve(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Solve a square non-singular system exactly."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


def gram_matrix(vectors: Sequence[DivisorClass]) -> tuple[tuple, ...]:
    return tuple(tuple(pair(a, b) for b in vectors) for a in vectors)


def coordinates(basis: Sequence[DivisorClass], v: DivisorClass) -> tuple[int, ...]:
    """Integer coefficients of ``v`` in ``basis``; raises if ``v`` is outside the span."""
    if not basis:
        if any(v.coords):
            raise VectorOutsideDomain(f"{v} is not in the zero lattice")
        return ()
    G = gram_matrix(basis)
    a = _solve(G, [pair(b, v) for b in basis])
    if any(x.denominator != 1 for x in a):
        raise VectorOutsideDomain(f"{v} is not an integral combination of the basis")
    a = tuple(int(x) for x in a)
    back = combine(basis, a)
    if back != v:
        raise VectorOutsideDomain(f"{v} is not in the span of the basis")
    return a


def combine(basis: Sequence[DivisorClass], a: Sequence[int]) -> DivisorClass:
    out = None
    for coef, b in zip(a, basis):
        term = coef * b
        out = term if out is None else out + term
    return out


def _class_from_fractions(xs: Sequence[Fraction]) -> DivisorClass:
    dens = {x.denominator for x in xs}
    if dens <= {1}:
        return DivisorClass(tuple(int(x) for x in xs))
    if dens <= {1, 2}:
        return DivisorClass(tuple(int(x * 2) for x in xs), 2)
    raise ValueError(f"coordinates {xs} are not half-integral")


# -- real structures -------------------------------------------------------------

@dataclass(frozen=True)
class RealStructure:
    """Integral involution ``conj_*`` with ``conj_*(K) = -K``."""

    lattice: DelPezzoLattice
    conj: Matrix
    name: str
    basis: tuple[DivisorClass, ...]
    named: dict = field(default_factory=dict, compare=False, hash=False)

    def apply(self, v: DivisorClass) -> DivisorClass:
        self.lattice.owns(v)
        return DivisorClass(_matvec(self.conj, v.coords), v.denom)

    def is_anti_invariant(self, v: DivisorClass) -> bool:
        return self.apply(v) == -v

    @property
    def minus_rank(self) -> int:
        return len(self.basis)

    @property
    def plus_rank(self) -> int:
        return self.lattice.rank - self.minus_rank

    @property
    def euler_characteristic(self) -> int:
        """``chi(X_R)`` from the Lefschetz fixed point formula, ``2 + tr(conj_*)``."""
        return 2 + sum(self.conj[i][i] for i in range(len(self.conj)))

    def coordinates(self, v: DivisorClass) -> tuple[int, ...]:
        if not self.is_anti_invariant(v):
            raise VectorOutsideDomain(f"{v} is not anti-invariant under {self.name}")
        return coordinates(self.basis, v)

    @cached_property
    def basis_gram(self) -> tuple[tuple, ...]:
        return gram_matrix(self.basis)

    def real_roots(self) -> tuple[DivisorClass, ...]:
        return tuple(r for r in self.lattice.roots if self.is_anti_invariant(r))


def _reflection_through(L: DelPezzoLattice, span: Sequence[DivisorClass]) -> Matrix:
    """``1 - 2P`` where ``P`` projects orthogonally onto ``span``."""
    G = gram_matrix(span)
    cols = []
    for k in range(L.rank):
        v = L.basis_vector(k)
        coef = _solve(G, [pair(s, v) for s in span])
        proj = [sum(c * s.coords[i] for c, s in zip(coef, span)) for i in range(L.rank)]
        col = [v.coords[i] - 2 * proj[i] for i in range(L.rank)]
        if any(Fraction(x).denominator != 1 for x in col):
            raise NotAnIsometry("reflection through the given span is not integral")
        cols.append([int(x) for x in col])
    return _transpose(tuple(tuple(c) for c in cols))


def _preset(L: DelPezzoLattice, name: str) -> tuple[Matrix, tuple[DivisorClass, ...] | None, dict]:
    d = L.degree
    K = L.K
    if name == "maximal":
        return tuple(tuple(-x for x in row) for row in _identity(L.rank)), None, {}
    if name == "aux-d1":
        if d != 1:
            raise DegreeMismatch("aux-d1 needs a degree 1 lattice")
        e = L.e(1) - L.e(2)
        return _reflection_through(L, [K, e]), (K, e), {"e": e}
    if name == "aux-d2":
        if d != 2:
            raise DegreeMismatch("aux-d2 needs a degree 2 lattice")
        r = (L.e(1) - L.e(2), L.e(3) - L.e(4), L.h - L.e(5) - L.e(6) - L.e(7))
        half = Fraction(1, 2) * (-K - r[0] - r[1] - r[2])
        named = {"r1": r[0], "r2": r[1], "r3": r[2], "half": half}
        return _reflection_through(L, [K, *r]), (half, *r), named
    if name == "aux-d3":
        if d != 3:
            raise DegreeMismatch("aux-d3 needs a degree 3 lattice")
        l1, l2 = L.e(1), L.h - L.e(1) - L.e(2)
        lines3 = (l1, l2, -K - l1 - l2)
        named = {"L1": lines3[0], "L2": lines3[1], "L3": lines3[2]}
        return _reflection_through(L, list(lines3)), lines3, named
    raise ValueError(f"unknown real structure preset {name!r}; choose from {', '.join(PRESETS)}")


def make_real_structure(L: DelPezzoLattice, source: str | Sequence[Sequence[int]]) -> RealStructure:
    """Build a real structure from a preset name or an explicit matrix.

    Matrices act on coordinate column vectors.  The basis of ``H2^-`` is
    the saturated integer kernel of ``1 + conj``; presets replace it by
    their named generators after checking those span the same lattice.
    """
    if isinstance(source, str):
        conj, preferred, named = _preset(L, source)
        name = source
    else:
        conj = tuple(tuple(int(x) for x in row) for row in source)
        preferred, named, name = None, {}, "custom"
    n = L.rank
    if len(conj) != n or any(len(row) != n for row in conj):
        raise ValueError(f"conj must be a {n}x{n} matrix")
    if _matmul(conj, conj) != _identity(n):
        raise NotAnInvolution("conj o conj is not the identity")
    if _matmul(_matmul(_transpose(conj), L.gram), conj) != L.gram:
        raise NotAnIsometry("conj does not preserve the intersection form")
    if _matvec(conj, L.K.coords) != (-L.K).coords:
        raise KNotAntiInvariant("conj must send K to -K")
    one_plus = tuple(tuple(conj[i][j] + (i == j) for j in range(n)) for i in range(n))
    kernel = tuple(DivisorClass(v) for v in integer_kernel(one_plus))
    basis = kernel
    if preferred is not None:
        if len(preferred) != len(kernel) or abs(_determinant(gram_matrix(preferred))) != abs(
            _determinant(gram_matrix(kernel))
        ):
            raise AssertionError(f"preset generators of {name} do not span H2^-")
        basis = tuple(preferred)
    return RealStructure(L, conj, name, basis, named)


def real_layer(R: RealStructure, m: int, rational_only: bool = False) -> LayerSet:
    """Effective anti-invariant classes of anticanonical degree ``m``."""
    full = layer(R.lattice, m, rational_only)
    return LayerSet(R.lattice, m, tuple(a for a in full if R.is_anti_invariant(a)), rational_only)


# -- involutions and symmetries -----------------------------------------------------

def geiser_action(L: DelPezzoLattice, v: DivisorClass) -> DivisorClass:
    """Geiser involution on a degree 2 lattice: ``(v.K) K - v``."""
    if L.degree != 2:
        raise DegreeMismatch("the Geiser involution lives on degree 2 surfaces")
    L.owns(v)
    return pair(v, L.K) * L.K - v


def bertini_action(L: DelPezzoLattice, v: DivisorClass) -> DivisorClass:
    """Bertini involution on a degree 1 lattice: ``2 (v.K) K - v``."""
    if L.degree != 1:
        raise DegreeMismatch("the Bertini involution lives on degree 1 surfaces")
    L.owns(v)
    return (2 * pair(v, L.K)) * L.K - v


def aux_d2_symmetries(R: RealStructure) -> list[Callable[[DivisorClass], DivisorClass]]:
    """The dihedral group of order 8 acting on ``H2^-`` of the aux-d2 structure.

    It acts by signed permutations of ``r1, r2`` (the symmetries of the
    square with vertices ``+-r1, +-r2``) and negates ``r3`` exactly when an
    odd number of signs flips, so the set of real lines
    ``(-K +- r1 +- r2 +- r3)/2`` and its split by sign parity are preserved.
    """
    if R.name != "aux-d2":
        raise ValueError("D4 symmetries are defined for the aux-d2 preset only")
    K = R.lattice.K
    r = (R.named["r1"], R.named["r2"], R.named["r3"])
    maps = []
    for perm in permutations((0, 1)):
        for s1, s2 in product((1, -1), repeat=2):
            s3 = s1 * s2
            images = {0: (perm[0], s1), 1: (perm[1], s2)}

            def act(v, images=images, s3=s3):
                x = Fraction(pair(v, K), 2)
                y = [Fraction(-pair(v, ri), 2) for ri in r]
                new = [Fraction(0)] * 3
                for i in (0, 1):
                    j, s = images[i]
                    new[j] += s * y[i]
                new[2] = s3 * y[2]
                coords = [x * K.coords[k] + sum(new[i] * r[i].coords[k] for i in range(3))
                          for k in range(R.lattice.rank)]
                return _class_from_fractions(coords)

            maps.append(act)
    return maps


# -- quadratic functions -----------------------------------------------------------

@dataclass(frozen=True)
class QuadraticFunction:
    """Z/4-valued quadratic refinement given by its values on a basis."""

    basis: tuple[DivisorClass, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.basis) != len(self.values):
            raise ValueError("one value per basis vector is required")
        object.__setattr__(self, "values", tuple(v % 4 for v in self.values))
        for b, v in zip(self.basis, self.values):
            if (v - pair(b, b)) % 2:
                raise ValueError(f"q({b}) = {v} has the wrong parity (need q(v) = v.v mod 2)")

    @cached_property
    def gram(self) -> tuple[tuple, ...]:
        return gram_matrix(self.basis)

    def __call__(self, v: DivisorClass) -> int:
        return quad_eval(self, v)

    def rebased(self, new_basis: Sequence[DivisorClass]) -> QuadraticFunction:
        return QuadraticFunction(tuple(new_basis), tuple(self(b) for b in new_basis))


def quad_eval(q: QuadraticFunction, v: DivisorClass) -> int:
    """``q(sum a_i b_i)`` from the quadratic rule, reduced mod 4."""
    a = coordinates(q.basis, v)
    G = q.gram
    total = 0
    for i, ai in enumerate(a):
        total += ai * q.values[i] + ai * (ai - 1) * G[i][i]
        for j in range(i + 1, len(a)):
            total += 2 * ai * a[j] * G[i][j]
    return total % 4


Constraint = tuple[DivisorClass, int]


def _satisfies(q: QuadraticFunction, constraints: Sequence[Constraint]) -> bool:
    return all(q(v) == r % 4 for v, r in constraints)


def _solutions(R: RealStructure, constraints: Sequence[Constraint]) -> list[QuadraticFunction]:
    choices = [(p, p + 2) for p in (pair(b, b) % 2 for b in R.basis)]
    out = []
    for values in product(*choices):
        q = QuadraticFunction(R.basis, values)
        if _satisfies(q, constraints):
            out.append(q)
    return out


def minimal_conflict(R: RealStructure, constraints: Sequence[Constraint]) -> list[Constraint]:
    """Shrink an inconsistent constraint list to a minimal inconsistent subset."""
    core = list(constraints)
    i = 0
    while i < len(core):
        trial = core[:i] + core[i + 1:]
        if not _solutions(R, trial):
            core = trial
        else:
            i += 1
    return core


def quad_solve(
    R: RealStructure, constraints: Iterable[Constraint], strict: bool = False
) -> list[QuadraticFunction]:
    """All quadratic functions on ``H2^-`` meeting ``q(v) = r (mod 4)`` constraints.

    Each basis value is fixed mod 2 by parity, so there are at most
    ``2^rank`` candidates; they are scanned in lexicographic order.  An
    empty result means the constraints are inconsistent; with ``strict``
    that raises :class:`InconsistentConstraints` naming a minimal conflict.
    """
    constraints = [(v, int(r)) for v, r in constraints]
    for v, _ in constraints:
        R.coordinates(v)
    sols = _solutions(R, constraints)
    if not sols and strict:
        conflict = minimal_conflict(R, constraints)
        raise InconsistentConstraints(
            "no quadratic function satisfies: "
            + "; ".join(f"q{v} = {r}" for v, r in conflict),
            conflict,
        )
    return sols


def geiser_skew_table(R: RealStructure, q: QuadraticFunction) -> list[tuple[DivisorClass, int, int]]:
    """Rows ``(v, q(v), q(gamma v))`` over the basis and its pairwise sums."""
    L = R.lattice
    tests = list(R.basis) + [a + b for a, b in combinations(R.basis, 2)]
    return [(v, q(v), q(geiser_action(L, v))) for v in tests]


def check_geiser_skew(R: RealStructure, q: QuadraticFunction) -> bool:
    """Whether ``q(gamma v) = -q(v) (mod 4)`` on a spanning test set."""
    if R.lattice.degree != 2:
        raise DegreeMismatch("Geiser skew-symmetry is a degree 2 statement")
    return all((a + b) % 4 == 0 for _, a, b in geiser_skew_table(R, q))


# -- the set W_R -----------------------------------------------------------------

@dataclass(frozen=True)
class WRealSet:
    """``{w in K^perp cap H2^- : w.w = -d(1+d), -K - w in d H2^-}`` and its sums."""

    structure: RealStructure
    elements: tuple[DivisorClass, ...]
    real_lines: tuple[DivisorClass, ...]

    @property
    def sum_w(self) -> DivisorClass:
        return sum(self.elements, self.structure.lattice.zero())

    @property
    def sum_lines(self) -> DivisorClass:
        return sum(self.real_lines, self.structure.lattice.zero())

    @property
    def sum_w_vanishes(self) -> bool:
        return self.sum_w == self.structure.lattice.zero()

    @property
    def sum_lines_matches(self) -> bool:
        """``d * sum(H) == -|W_R| K``."""
        L = self.structure.lattice
        return L.degree * self.sum_lines == -len(self.elements) * L.K


def in_wreal(R: RealStructure, w: DivisorClass) -> bool:
    L = R.lattice
    d = L.degree
    if not w.is_integral or pair(w, L.K) != 0 or pair(w, w) != -d * (1 + d):
        return False
    if not R.is_anti_invariant(w):
        return False
    rest = -L.K - w
    if any(c % d for c in rest.coords):
        return False
    return R.is_anti_invariant(DivisorClass(tuple(c // d for c in rest.coords)))


def wreal(R: RealStructure) -> WRealSet:
    """Enumerate ``W_R`` straight from its definition, with the real lines it indexes."""
    L = R.lattice
    d = L.degree
    ws = tuple(w for w in vectors_with(L, 0, -d * (1 + d)) if in_wreal(R, w))
    lines1 = tuple(a for a in real_layer(R, 1) if a != -L.K)
    return WRealSet(R, ws, lines1)
