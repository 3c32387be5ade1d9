from collections import Counter
from itertools import product

import pytest
from hypothesis import given, settings

from decklab.algebra import Groupoid, cyclic_group
from decklab.errors import PreconditionViolated
from decklab.multiset import Multiset, cards, deck_equal, multisets
from decklab.reconstruction import (
    PatternTag,
    ambiguous_at,
    brute_force_example1,
    canonical_under_relabeling,
    classify_pair,
    is_reconstructible,
    min_determining_cards,
    search_counterexamples,
    search_example1_witness,
    set_deck_probe,
    table_count,
    table_from_index,
    two_card_construction,
    verify_theorem,
)

from .conftest import commutative_tables

Z2, Z3, Z4 = cyclic_group(2), cyclic_group(3), cyclic_group(4)
MAX2 = Groupoid([[0, 1], [1, 1]])


def ms(order, text):
    return Multiset.parse(order, text)


def test_z2_1111_reconstructible():
    v = is_reconstructible(Z2, ms(2, "<1,1,1,1>"))
    assert v.reconstructible and v.witnesses == []


def test_z2_100_has_witness():
    v = is_reconstructible(Z2, ms(2, "<1,0,0>"))
    assert not v.reconstructible
    assert [str(w) for w in v.witnesses] == ["<1,1,1>"]
    assert v.matched_patterns[0][0].tag is PatternTag.THM3_II
    assert PatternTag.THM3_II.example is PatternTag.EX2_BOOLEANISH


def test_z4_112_witness():
    v = is_reconstructible(Z4, ms(4, "<1,1,2>"))
    assert [str(w) for w in v.witnesses] == ["<2,3,3>"]
    assert v.matched_patterns[0][0].tag is PatternTag.THM3_III


def test_classify_booleanish():
    (m,) = classify_pair(Z2, ms(2, "<1,0,0>"), ms(2, "<1,1,1>"))
    assert m.tag is PatternTag.THM3_II and dict(m.binding) == {"r": 1, "s": 0, "t": 0}


def test_classify_sumzero():
    found = {m.tag: dict(m.binding) for m in classify_pair(Z4, ms(4, "<1,1,2>"), ms(4, "<2,3,3>"))}
    assert found[PatternTag.THM3_III] == {"r": 1, "s": 1, "t": 2}


def test_classify_pairsum():
    (m,) = classify_pair(MAX2, ms(2, "<0,1>"), ms(2, "<1,1>"))
    assert m.tag is PatternTag.EX4_PAIRSUM


def test_classify_preconditions():
    with pytest.raises(PreconditionViolated):
        classify_pair(Z2, ms(2, "<1,1,1,1>"), ms(2, "<0,0,1,1>"))
    with pytest.raises(PreconditionViolated):
        classify_pair(Z2, ms(2, "<1,0,0>"), ms(2, "<1,0,0>"))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_verify_theorem_small_groups(n):
    for g in (Z2, Z3, MAX2):
        r = verify_theorem(g, n)
        assert not r["falsified"]


def test_verify_theorem_z2_n2():
    r = verify_theorem(Z2, 2)
    assert r["deck_equal_pairs"] == 1


@settings(max_examples=60)
@given(commutative_tables(max_order=3))
def test_verify_theorem_random(t):
    g = Groupoid(t)
    for n in (2, 3, 4, 5):
        assert not verify_theorem(g, n)["falsified"]


@settings(max_examples=25)
@given(commutative_tables(min_order=2, max_order=3))
def test_classification_both_orientations(t):
    g = Groupoid(t)
    for n in (3, 4):
        ms_ = multisets(g.order, n)
        decks = [cards(g, m) for m in ms_]
        for i, j in product(range(len(ms_)), repeat=2):
            if i != j and deck_equal(decks[i], decks[j]):
                for tag in classify_pair(g, ms_[i], ms_[j]):
                    assert tag.tag is not PatternTag.UNCLASSIFIED


def test_search_order2_n2_has_pairsum():
    found = list(search_counterexamples(2, 2))
    hits = [c for c in found if c.groupoid == MAX2 and {str(c.m), str(c.m2)} == {"<0,1>", "<1,1>"}]
    assert hits and hits[0].tags[0].tag is PatternTag.EX4_PAIRSUM


def test_search_order2_n3_has_booleanish():
    found = list(search_counterexamples(2, 3, PatternTag.THM3_II))
    assert any(c.groupoid == Z2 and {str(c.m), str(c.m2)} == {"<0,0,1>", "<1,1,1>"} for c in found)


@pytest.mark.parametrize("n", [5, 6])
def test_search_order2_large_n_is_empty(n):
    assert list(search_counterexamples(2, n)) == []


def test_search_iso_filter_shrinks():
    full = list(search_counterexamples(2, 3))
    iso = list(search_counterexamples(2, 3, iso_filter=True))
    assert 0 < len(iso) <= len(full)


def test_table_index_roundtrip():
    seen = {tuple(map(tuple, table_from_index(2, i))) for i in range(table_count(2))}
    assert len(seen) == 8
    assert table_from_index(2, 0) == [[0, 0], [0, 0]]


def test_relabeling_canonical_form():
    a = Groupoid([[1, 0], [0, 0]])
    b = Groupoid([[1, 1], [1, 0]])   # swap labels 0 <-> 1
    assert canonical_under_relabeling(a) == canonical_under_relabeling(b)


def test_example1_witness_distinct():
    w = search_example1_witness(5, require_distinct=True)
    b = dict(w.binding)
    assert w.groupoid.order == 5
    assert len({b["r"], b["s"], b["t"]}) == 3
    assert deck_equal(cards(w.groupoid, w.m), cards(w.groupoid, w.m2))
    assert (b["r"], b["s"], b["t"], b["u"], b["v"]) in brute_force_example1(w.groupoid)
    assert search_example1_witness(4, require_distinct=True) is None


def test_example1_witness_any():
    w = search_example1_witness(6)
    b = dict(w.binding)
    assert w.groupoid.order == 3 and b["r"] == b["s"] == b["t"]
    p = w.groupoid.profile
    assert not (p.left_alternative and p.right_alternative)
    assert brute_force_example1(w.groupoid)


def test_example1_shared_deck():
    w = search_example1_witness(5, require_distinct=True)
    g, b = w.groupoid, dict(w.binding)
    r, s, t, u, v = (b[k] for k in "rstuv")
    want = Counter(tuple(sorted(c)) for c in [
        (r, s, u), (r, t, u), (s, t, u), (r, s, v), (r, t, v), (s, t, v)])
    assert cards(g, w.m).as_counter() == want == cards(g, w.m2).as_counter()


def test_min_cards_z2():
    res = min_determining_cards(Z2, 4)
    assert res.m > 5
    assert {res.certificate["M"], res.certificate["M2"]} == {"<1,1,1,1>", "<0,0,1,1>"}
    assert res.certificate["shared_cards"] == [{"card": [0, 1, 1], "mult": 5}]


def test_min_cards_z3():
    res = min_determining_cards(Z3, 3)
    assert res.m is None or res.m >= 3


@pytest.mark.parametrize("g", [Z2, Z3, MAX2, Groupoid([[0, 2, 1], [2, 1, 0], [1, 0, 2]])])
def test_min_cards_n2_matches_injectivity(g):
    res = min_determining_cards(g, 2)
    assert (res.m == 1) == g.profile.pairwise_sum_injective


@pytest.mark.parametrize("g,n", [(Z2, 3), (Z2, 4), (Z3, 3), (MAX2, 4), (Z4, 3)])
def test_min_cards_vs_brute_force(g, n):
    res = min_determining_cards(g, n)
    if res.m is None:
        assert ambiguous_at(g, n, 3 if n == 3 else 6) is not None
        return
    assert ambiguous_at(g, n, res.m) is None
    if res.m > 1:
        assert ambiguous_at(g, n, res.m - 1) is not None


@pytest.mark.parametrize("g", [Z3, Z4])
def test_two_card_construction(g):
    r = two_card_construction(g, (0, 1, 2))
    assert r["in_deck_M"] and r["in_deck_M2"]
    for elems in product(range(g.order), repeat=4):
        r = two_card_construction(g, elems)
        assert r["in_deck_M"] and r["in_deck_M2"]


def test_two_card_needs_group():
    with pytest.raises(PreconditionViolated):
        two_card_construction(MAX2, (0, 1, 1))


def test_set_deck_probe():
    out = set_deck_probe(Z2, 4)
    pairs = {frozenset((p["M"], p["M2"])) for p in out["pairs"]}
    assert frozenset(("<1,1,1,1>", "<0,0,1,1>")) not in pairs
    out3 = set_deck_probe(Z2, 3)
    assert frozenset(("<0,0,1>", "<1,1,1>")) in {frozenset((p["M"], p["M2"])) for p in out3["pairs"]}
