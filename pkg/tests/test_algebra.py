import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from decklab.algebra import (
    Groupoid,
    bounded_lattice2,
    cyclic_group,
    is_irreducible,
    make_gf,
    make_semiring,
    parse_field_spec,
    poly_mod,
    poly_mul,
    smallest_irreducible,
)
from decklab.config import Caps
from decklab.errors import (
    CapExceeded,
    NotCommutative,
    NotCommutativeMonoid,
    NotPrime,
    OutOfRange,
    RightAnnihilationViolation,
    RightDistributivityViolation,
    RightIdentityViolation,
)
from decklab.reconstruction import search_example1_witness

from .conftest import commutative_tables


def test_z2_profile():
    p = Groupoid([[0, 1], [1, 0]]).profile
    assert p.associative and p.neutral_element == 0 and p.boolean_group
    assert not p.pairwise_sum_injective   # 0+0 = 1+1


def test_max_semilattice():
    p = Groupoid([[0, 1], [1, 1]]).profile
    assert p.associative and p.neutral_element == 0 and not p.cancellative


def test_asymmetric_table_rejected():
    with pytest.raises(NotCommutative) as e:
        Groupoid([[0, 1], [0, 0]])
    assert (e.value.i, e.value.j) == (0, 1)


def test_out_of_range():
    with pytest.raises(OutOfRange):
        Groupoid([[0, 2], [2, 0]])


def test_z4_not_boolean():
    p = cyclic_group(4).profile
    assert p.associative and p.neutral_element == 0 and not p.boolean_group


def test_example1_witness_is_nonassociative():
    w = search_example1_witness(5, require_distinct=True)
    assert w.groupoid.order == 5
    assert not w.groupoid.profile.associative


def _brute_profile(g):
    n = g.order
    a = g.add
    R = range(n)
    assoc = all(a(a(x, y), z) == a(x, a(y, z)) for x, y, z in itertools.product(R, R, R))
    left = all(a(x, a(x, y)) == a(a(x, x), y) for x, y in itertools.product(R, R))
    right = all(a(y, a(x, x)) == a(a(y, x), x) for x, y in itertools.product(R, R))
    sums = [a(x, y) for x in R for y in R if x <= y]
    return assoc, left, right, len(set(sums)) == len(sums)


@given(commutative_tables())
def test_profile_matches_loops(t):
    g = Groupoid(t)
    p = g.profile
    assert (p.associative, p.left_alternative, p.right_alternative, p.pairwise_sum_injective) \
        == _brute_profile(g)


def test_gf2_semiring():
    f = make_gf(2)
    assert f.add_table.tolist() == [[0, 1], [1, 0]]
    assert f.mul_table.tolist() == [[0, 0], [0, 1]]
    assert f.semiring.cancellative


def test_lattice_not_cancellative():
    s = bounded_lattice2()
    assert not s.cancellative


def test_right_identity_violation():
    with pytest.raises(RightIdentityViolation):
        make_semiring([[0, 1], [1, 0]], [[0, 0], [0, 0]], 0, 1)


def test_distributivity_violation():
    with pytest.raises(RightDistributivityViolation):
        make_semiring(cyclic_group(3), [[0, 0, 0], [0, 1, 1], [0, 2, 1]], 0, 1)


def test_annihilation_violation():
    with pytest.raises((RightAnnihilationViolation, RightDistributivityViolation)):
        make_semiring([[0, 1], [1, 1]], [[1, 0], [1, 1]], 0, 1)


def test_nonassociative_addition_rejected():
    with pytest.raises(NotCommutativeMonoid):
        make_semiring([[1, 0], [0, 0]], [[0, 0], [0, 1]], 0, 1)


def test_axiom_cap():
    with pytest.raises(CapExceeded):
        make_semiring(cyclic_group(3), [[0, 0, 0], [0, 1, 2], [0, 2, 1]], 0, 1, Caps(axiom_order=2))


def test_gf3_arithmetic():
    f = make_gf(3)
    assert f.add(1, 2) == 0 and f.mul(2, 2) == 1


def test_gf4_via_x2_x_1():
    f = parse_field_spec("2_2")
    assert f.q == 4 and tuple(f.reduction_polynomial) == (1, 1, 1)
    nz = [1, 2, 3]
    # the nonzero elements form a cyclic group of order 3
    assert all(f.mul(a, b) in nz for a in nz for b in nz)
    gens = [g for g in nz if len({f.mul(g, f.mul(g, g)), f.mul(g, g), g}) == 3]
    assert gens
    for a, b, c in itertools.product(nz, repeat=3):
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))


def test_not_prime():
    with pytest.raises(NotPrime):
        make_gf(4)


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (2, 6)])
def test_field_axioms(p, k):
    f = make_gf(p, k)
    q = f.q
    A, M = f.add_table, f.mul_table
    x = np.arange(q)
    assert np.array_equal(A, A.T) and np.array_equal(M, M.T)
    assert np.array_equal(A[A[:, :, None], x], A[x[:, None, None], A[None]])
    assert np.array_equal(M[M[:, :, None], x], M[x[:, None, None], M[None]])
    assert np.array_equal(M[x[:, None, None], A[None]], A[M[:, :, None], M[:, None, :]])
    assert all(sorted(M[a, 1:]) == list(range(1, q)) for a in range(1, q))


def test_smallest_irreducible_is_smallest():
    for p, k in [(2, 2), (2, 3), (3, 2), (2, 4)]:
        best = smallest_irreducible(p, k)
        enc = sum(c * p ** i for i, c in enumerate(best))
        for code in range(p ** k, enc):
            cand = [(code // p ** i) % p for i in range(k + 1)]
            assert cand[k] != 1 or not is_irreducible(cand, p)


@given(st.lists(st.integers(0, 2), max_size=5), st.lists(st.integers(0, 2), min_size=2, max_size=4))
def test_poly_mod_remainder(a, m):
    m = m[:-1] + [1]
    r = poly_mod(a, m, 3)
    assert len(r) < len(m) or not any(r)
    assert not any(poly_mod(poly_mul(a, m, 3), m, 3))
