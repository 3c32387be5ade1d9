import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decklab.algebra import Groupoid
from decklab.io import dumps
from decklab.multiset import Multiset, cards, multisets
from decklab.reconstruction import table_count, table_from_index, verify_theorem
from decklab.sweep import (
    analyse_tables,
    deck_equal_matrix,
    multiset_tuples,
    pairwise_sum_injective,
    sweep_theorem,
    tables_chunk,
)

from .conftest import commutative_tables


def _nonzero(tags):
    return {k: v for k, v in dict(tags).items() if v}


def test_chunk_matches_index():
    T = tables_chunk(3, 0, table_count(3))
    for i in (0, 1, 17, 400, 728):
        assert T[i].tolist() == table_from_index(3, i)


def test_multiset_tuples_match_enumeration():
    for order, n in [(2, 3), (3, 4), (4, 2)]:
        got = [Multiset.of(order, t) for t in multiset_tuples(order, n).tolist()]
        assert got == multisets(order, n)


@settings(max_examples=40)
@given(commutative_tables(min_order=2, max_order=4), st.integers(2, 5))
def test_deck_equal_matrix_oracle(t, n):
    g = Groupoid(t)
    tuples = multiset_tuples(g.order, n)
    if len(tuples) > 60:
        return
    eq = deck_equal_matrix(np.array([t]), tuples)[0]
    decks = [cards(g, Multiset.of(g.order, x)) for x in tuples.tolist()]
    want = np.array([[a == b for b in decks] for a in decks])
    assert np.array_equal(eq, want)


@settings(max_examples=40)
@given(commutative_tables(min_order=1, max_order=3), st.integers(2, 5))
def test_batch_analysis_matches_per_groupoid(t, n):
    """Vectorized sweep and the per-groupoid checker are independent routes."""
    g = Groupoid(t)
    res = analyse_tables(np.array([t]), n)
    ref = verify_theorem(g, n)
    assert res["deck_equal_pairs"] == ref["deck_equal_pairs"]
    assert res["bad"] == [] and not ref["falsified"]
    if n in (3, 4):
        assert _nonzero(res["tag_counts"]) == _nonzero(ref["tag_counts"])


@settings(max_examples=30)
@given(st.integers(0, table_count(4) - 1))
def test_batch_analysis_order4(idx):
    t = table_from_index(4, idx)
    for n in (3, 4):
        res = analyse_tables(np.array([t]), n)
        ref = verify_theorem(Groupoid(t), n)
        assert res["deck_equal_pairs"] == ref["deck_equal_pairs"]
        assert _nonzero(res["tag_counts"]) == _nonzero(ref["tag_counts"])


def test_pairwise_sum_injective_vectorized():
    T = tables_chunk(3, 0, table_count(3))
    got = pairwise_sum_injective(T)
    want = [Groupoid(t).profile.pairwise_sum_injective for t in T.tolist()]
    assert got.tolist() == want


def test_sweep_small_known_counts():
    r = sweep_theorem(3, 3)
    assert r["deck_equal_pairs"] == 598
    assert r["tag_counts"] == {"THM3_II": 299, "THM3_III": 326}
    assert r["violations"] == []


def test_sweep_n4_order3():
    r = sweep_theorem(4, 3)
    assert r["deck_equal_pairs"] == 81 and not r["falsified"]


def test_sweep_n2_reports_injectivity():
    r = sweep_theorem(2, 3)
    assert r["psi_mismatches"] == 0 and not r["falsified"]


@pytest.mark.parametrize("n", [2, 3, 5])
def test_sweep_independent_of_chunking_and_workers(n):
    a = sweep_theorem(n, 3, workers=1)
    b = sweep_theorem(n, 3, workers=2, chunk=100)
    assert dumps(a) == dumps(b)
