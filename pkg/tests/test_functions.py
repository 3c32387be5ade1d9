import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from decklab.algebra import make_gf
from decklab.config import Caps
from decklab.errors import ArityCapExceeded, BadCouple, InvalidTable, PreconditionViolated
from decklab.functions import (
    FiniteFunction,
    batch_deck_keys,
    canonical_tables,
    canonicalize,
    constant,
    equivalent,
    essential_args,
    function_deck,
    identification_minor,
    permute_args,
    projection,
    verify_willard,
    willard_sweep,
)
from decklab.polyparse import compile_polynomial

GF2, GF3 = make_gf(2), make_gf(3)


@st.composite
def functions(draw, max_a=3, max_n=4):
    a = draw(st.integers(2, max_a))
    n = draw(st.integers(2, max_n))
    table = draw(st.lists(st.integers(0, a - 1), min_size=a ** n, max_size=a ** n))
    return FiniteFunction(a, a, n, table)


def test_table_length_checked():
    with pytest.raises(InvalidTable):
        FiniteFunction(2, 2, 2, [0, 1, 0])


def test_minor_convention_pinned():
    """x_i is written at position j; later arguments shift right."""
    f = FiniteFunction.from_callable(3, 27, 3, lambda x, y, z: 9 * x + 3 * y + z)
    m12 = identification_minor(f, (1, 2))
    assert [m12(a, b) for a in range(3) for b in range(3)] == [9 * a + 3 * a + b for a in range(3) for b in range(3)]
    m13 = identification_minor(f, (1, 3))
    assert m13(1, 2) == 9 * 1 + 3 * 2 + 1
    m23 = identification_minor(f, (2, 3))
    assert m23(2, 1) == 9 * 2 + 3 * 1 + 1


def test_minor_convention_arity4():
    f = FiniteFunction.from_callable(2, 16, 4, lambda a, b, c, d: 8 * a + 4 * b + 2 * c + d)
    g = identification_minor(f, (2, 4))
    # f_{2,4}(a1,a2,a3) = f(a1, a2, a3, a2)
    for a1, a2, a3 in itertools.product(range(2), repeat=3):
        assert g(a1, a2, a3) == f(a1, a2, a3, a2)


def test_bad_couple():
    with pytest.raises(BadCouple):
        identification_minor(projection(2, 3, 1), (2, 2))
    with pytest.raises(BadCouple):
        identification_minor(projection(2, 3, 1), (1, 4))


def test_majority_minors_are_projections():
    f = compile_polynomial("x1*x2 + x1*x3 + x2*x3", GF2)
    for c in itertools.combinations(range(1, 4), 2):
        m = identification_minor(f, c)
        assert m in (projection(2, 2, 1), projection(2, 2, 2))
    assert essential_args(f) == {1, 2, 3}


def test_xor_minor_is_zero():
    f = compile_polynomial("x1 + x2", GF2)
    assert identification_minor(f, (1, 2)) == constant(2, 2, 1, 0)


def test_projection_minor():
    m = identification_minor(projection(2, 3, 3), (1, 2))
    assert m == projection(2, 2, 2)


def test_essential_args():
    assert essential_args(constant(3, 3, 3, 1)) == frozenset()
    assert essential_args(projection(2, 3, 2)) == {2}


def test_projections_equivalent():
    assert canonicalize(projection(2, 2, 1)) == canonicalize(projection(2, 2, 2))
    f = compile_polynomial("x1 + 2*x2", GF3)
    g = compile_polynomial("2*x1 + x2", GF3)
    assert equivalent(f, g)


@given(functions())
def test_canonical_idempotent(f):
    c = canonicalize(f).as_function()
    assert canonicalize(c).as_function() == c
    assert tuple(c.table) <= tuple(f.table)


@given(functions(), st.data())
def test_canonical_invariant_under_permutation(f, data):
    sigma = data.draw(st.permutations(range(f.n)))
    g = permute_args(f, sigma)
    assert canonicalize(f) == canonicalize(g)
    assert function_deck(f) == function_deck(g)


@given(functions(max_n=3), st.data())
def test_permute_semantics(f, data):
    sigma = data.draw(st.permutations(range(f.n)))
    g = permute_args(f, sigma)
    for x in itertools.product(range(f.a), repeat=f.n):
        assert g(*x) == f(*(x[s] for s in sigma))


def test_canonical_arity_cap():
    with pytest.raises(ArityCapExceeded):
        canonical_tables(np.zeros((1, 2 ** 3)), 2, 3, Caps(arity=2))


@given(st.lists(functions(max_a=2, max_n=3), min_size=1, max_size=6))
def test_batch_deck_keys_match_decks(fs):
    fs = [f for f in fs if f.n == fs[0].n]
    keys = batch_deck_keys(np.stack([f.table for f in fs]), 2, fs[0].n)
    for i, j in itertools.product(range(len(fs)), repeat=2):
        assert (keys[i] == keys[j]) == (function_deck(fs[i]) == function_deck(fs[j]))


def test_deck_size():
    f = compile_polynomial("x1 + x2 + x3 + x4", GF3)
    assert function_deck(f).total() == 6


def test_willard_xor3():
    f = compile_polynomial("x1 + x2 + x3", GF2)
    assert verify_willard(f) == (1, 2)


def test_willard_precondition():
    with pytest.raises(PreconditionViolated):
        verify_willard(projection(2, 3, 1))


def test_willard_sweep_matches_scalar():
    rng = np.random.default_rng(1)
    tables = rng.integers(0, 2, size=(300, 16))
    res = willard_sweep(tables, 2, 4)
    full = [i for i, t in enumerate(tables) if len(essential_args(FiniteFunction(2, 2, 4, t))) == 4]
    assert res["checked"] == len(full) and res["violations"] == []
    for i in full[:40]:
        assert verify_willard(FiniteFunction(2, 2, 4, tables[i])) is not None


def test_willard_sampled_gf3():
    rng = np.random.default_rng(7)
    tables = rng.integers(0, 3, size=(10_000, 81))
    res = willard_sweep(tables, 3, 4)
    assert res["checked"] > 9000 and res["violations"] == []


def test_json_roundtrip():
    f = compile_polynomial("x1*x2 + 1", GF3)
    assert FiniteFunction.from_json(f.to_json()) == f
