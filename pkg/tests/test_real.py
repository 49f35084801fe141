import random
from collections import Counter
from fractions import Fraction

import pytest

from realdp.curves import layer
from realdp.errors import (DegreeMismatch, InconsistentConstraints, KNotAntiInvariant,
                           NotAnInvolution, NotAnIsometry, VectorOutsideDomain)
from realdp.lattice import DivisorClass, make_lattice, pair
from realdp.real import (QuadraticFunction, aux_d2_symmetries, bertini_action, check_geiser_skew,
                         combine, geiser_action, in_wreal, integer_kernel, make_real_structure,
                         quad_solve, real_layer, wreal)

PRESET_DEGREES = [("maximal", 3), ("maximal", 2), ("maximal", 1), ("aux-d1", 1), ("aux-d2", 2), ("aux-d3", 3)]


def structure(name, d):
    return make_real_structure(make_lattice(d), name)


@pytest.mark.parametrize("name, d", PRESET_DEGREES)
def test_presets_are_valid(name, d):
    R = structure(name, d)
    L = R.lattice
    assert R.apply(R.apply(L.h)) == L.h
    assert R.apply(L.K) == -L.K
    assert all(R.is_anti_invariant(b) for b in R.basis)


@pytest.mark.parametrize("name, d, rank, chi, lines1, w", [
    ("maximal", 3, 7, -5, 27, 27),
    ("aux-d3", 3, 3, 3, 3, 3),
    ("aux-d2", 2, 4, 2, 8, 8),
    ("aux-d1", 1, 2, 7, 3, 2),
    ("maximal", 2, 8, -6, 56, 56),
])
def test_structure_numbers(name, d, rank, chi, lines1, w):
    R = structure(name, d)
    assert R.minus_rank == rank
    assert R.euler_characteristic == chi
    assert len(real_layer(R, 1)) == lines1
    assert len(wreal(R).elements) == w


def test_aux_d3_lines():
    R = structure("aux-d3", 3)
    assert R.basis_gram == ((-1, 1, 1), (1, -1, 1), (1, 1, -1))
    L = R.lattice
    assert sum(R.basis, L.zero()) == -L.K
    assert set(real_layer(R, 1)) == set(R.basis)


def test_aux_d1_layer():
    R = structure("aux-d1", 1)
    L, e = R.lattice, R.named["e"]
    assert set(real_layer(R, 1)) == {-L.K, -L.K + e, -L.K - e}
    assert bertini_action(L, -L.K + e) == -L.K - e
    assert bertini_action(L, L.K) == L.K


def test_aux_d2_lines_and_orbits():
    R = structure("aux-d2", 2)
    L = R.lattice
    r1, r2, r3 = R.named["r1"], R.named["r2"], R.named["r3"]
    expected = {Fraction(1, 2) * (-L.K + s1 * r1 + s2 * r2 + s3 * r3)
                for s1 in (1, -1) for s2 in (1, -1) for s3 in (1, -1)}
    lines8 = set(real_layer(R, 1))
    assert lines8 == expected
    syms = aux_d2_symmetries(R)
    assert len(syms) == 8
    orbits = {frozenset(g(a) for g in syms) for a in lines8}
    assert sorted(len(o) for o in orbits) == [4, 4]
    o1, o2 = orbits
    assert {geiser_action(L, a) for a in o1} == o2
    assert geiser_action(L, L.K) == L.K
    # multiples of K are the only classes fixed by Geiser and D4 together
    for v in R.basis:
        fixed = all(g(v) == v for g in syms) and geiser_action(L, v) == v
        assert not fixed


def test_aux_d2_fixed_classes_are_multiples_of_k():
    R = structure("aux-d2", 2)
    L = R.lattice
    syms = aux_d2_symmetries(R)
    rng = random.Random(5)
    for _ in range(200):
        v = combine(R.basis, [rng.randint(-3, 3) for _ in R.basis])
        if all(g(v) == v for g in syms) and geiser_action(L, v) == v:
            assert pair(v, L.K) * L.K == pair(L.K, L.K) * v


def test_wrong_degree_presets():
    with pytest.raises(DegreeMismatch):
        structure("aux-d2", 3)
    with pytest.raises(DegreeMismatch):
        geiser_action(make_lattice(3), make_lattice(3).K)
    with pytest.raises(ValueError):
        structure("nonsense", 3)


def test_matrix_validation():
    L = make_lattice(3)
    n = L.rank
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    with pytest.raises(KNotAntiInvariant):
        make_real_structure(L, ident)
    doubled = [[2 * x for x in row] for row in ident]
    with pytest.raises(NotAnInvolution):
        make_real_structure(L, doubled)
    swap = [row[:] for row in ident]
    swap[0], swap[1] = swap[1], swap[0]  # h <-> e1 is an involution but not an isometry
    with pytest.raises(NotAnIsometry):
        make_real_structure(L, swap)
    minus = [[-x for x in row] for row in ident]
    assert make_real_structure(L, minus).minus_rank == 7


def test_custom_matrix_from_preset_matches():
    R = structure("aux-d3", 3)
    again = make_real_structure(R.lattice, R.conj)
    assert again.name == "custom"
    # both bases are integral bases of the same anti-invariant lattice
    assert all(len(R.coordinates(b)) == 3 for b in again.basis)
    assert all(len(again.coordinates(b)) == 3 for b in R.basis)


def test_integer_kernel_is_saturated():
    ker = integer_kernel(((2, 4), (1, 2)))
    assert ker == [(-2, 1)] or ker == [(2, -1)]


def test_real_layer_is_anti_invariant_subset():
    for name, d in [("aux-d2", 2), ("aux-d3", 3)]:
        R = structure(name, d)
        for m in (1, 2):
            full = set(layer(R.lattice, m, rational_only=True))
            real = real_layer(R, m, rational_only=True)
            assert set(real) <= full
            assert all(R.is_anti_invariant(a) for a in real)


# -- quadratic functions ------------------------------------------------------------

@pytest.mark.parametrize("name, d", PRESET_DEGREES)
def test_quadratic_rule_random(name, d):
    R = structure(name, d)
    rng = random.Random(f"{name}-{d}")
    qs = quad_solve(R, [])
    for _ in range(1000):
        q = rng.choice(qs)
        x = combine(R.basis, [rng.randint(-4, 4) for _ in R.basis])
        y = combine(R.basis, [rng.randint(-4, 4) for _ in R.basis])
        assert q(x + y) == (q(x) + q(y) + 2 * pair(x, y)) % 4


@pytest.mark.parametrize("name, d", PRESET_DEGREES)
def test_unconstrained_solution_count(name, d):
    R = structure(name, d)
    assert len(quad_solve(R, [])) == 2 ** R.minus_rank


def test_quad_eval_basics():
    R = structure("aux-d3", 3)
    q = QuadraticFunction(R.basis, (1, 3, 1))
    L = R.lattice
    assert q(L.zero()) == 0
    l1, l2, l3 = R.basis
    assert q(l1 + l2 + l3) == (1 + 3 + 1 + 2) % 4
    v = l1 + l2
    assert q(2 * v) == (2 * q(v) + 2 * pair(v, v)) % 4
    with pytest.raises(VectorOutsideDomain):
        q(L.e(2))


def test_parity_enforced():
    R = structure("aux-d3", 3)
    with pytest.raises(ValueError):
        QuadraticFunction(R.basis, (0, 1, 1))


def test_basis_independence():
    R = structure("aux-d2", 2)
    K = R.lattice.K
    other = (K, R.named["r1"], R.named["r2"], R.named["half"])
    rng = random.Random(11)
    for q in quad_solve(R, [])[:6]:
        q2 = q.rebased(other)
        for _ in range(50):
            v = combine(R.basis, [rng.randint(-3, 3) for _ in R.basis])
            assert q(v) == q2(v)


def test_quad_solve_aux_d1():
    R = structure("aux-d1", 1)
    e, K = R.named["e"], R.lattice.K
    sols = quad_solve(R, [(e, 0)])
    assert len(sols) == 2
    assert sorted(q(K) for q in sols) == [1, 3]
    assert quad_solve(R, [(e, 0), (e, 2)]) == []
    with pytest.raises(InconsistentConstraints) as info:
        quad_solve(R, [(K, 1), (e, 0), (e, 2)], strict=True)
    assert len(info.value.conflict) == 2
    with pytest.raises(VectorOutsideDomain):
        quad_solve(R, [(R.lattice.e(1), 0)])


def test_geiser_skew():
    R = structure("aux-d2", 2)
    K = R.lattice.K
    for q in quad_solve(R, [(K, 0)]):
        assert check_geiser_skew(R, q)
    # odd q(-K) is ruled out by parity already
    assert all(q(K) % 2 == 0 for q in quad_solve(R, []))


# -- W_R ----------------------------------------------------------------------------

@pytest.mark.parametrize("name, d", [("aux-d1", 1), ("aux-d2", 2), ("aux-d3", 3), ("maximal", 3), ("maximal", 1)])
def test_wreal_sums(name, d):
    W = wreal(structure(name, d))
    assert W.sum_w_vanishes
    assert W.sum_lines_matches
    L = W.structure.lattice
    # w = -K - d H puts W_R in bijection with the real lines other than -K
    assert sorted(-L.K - L.degree * H for H in W.real_lines) == sorted(W.elements)


def test_wreal_aux_d1():
    R = structure("aux-d1", 1)
    e = R.named["e"]
    W = wreal(R)
    assert set(W.elements) == {e, -e}
    assert in_wreal(R, e) and not in_wreal(R, 2 * e)


def test_wreal_aux_d2_sum():
    R = structure("aux-d2", 2)
    W = wreal(R)
    assert W.sum_lines == -4 * R.lattice.K


def test_vanishing_cycle_functions_on_the_maximal_cubic():
    R = structure("maximal", 3)
    L = R.lattice
    qs = quad_solve(R, [(r, 0) for r in L.simple_roots])
    assert len(qs) == 2
    assert all(q(r) % 2 == 0 for q in qs for r in L.roots)
    # a root sum r + r' with r.r' = 1 picks up 2, so q cannot vanish on every root
    assert all(any(q(r) == 2 for r in L.roots) for q in qs)
    splits = sorted(tuple(sorted(Counter(q(a) for a in L.lines).items())) for q in qs)
    assert splits == [((1, 12), (3, 15)), ((1, 15), (3, 12))]


def test_divisor_class_is_hashable_key():
    assert len({DivisorClass((1, 0)), DivisorClass((1, 0))}) == 1
