"""Multisets over a groupoid, their cards and decks."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterable, Iterator

from .algebra import Groupoid
from .config import DEFAULT_CAPS
from .errors import CardinalityTooSmall, EnumerationCapExceeded, OrderMismatch, ParseError


@dataclass(frozen=True, order=True)
class Multiset:
    """Multiplicity vector over the elements ``0..groupoid_order-1``."""

    groupoid_order: int
    counts: tuple

    def __post_init__(self):
        if len(self.counts) != self.groupoid_order:
            raise OrderMismatch("counts length must equal the groupoid order")
        if any(c < 0 for c in self.counts):
            raise ValueError("multiplicities must be nonnegative")

    @classmethod
    def of(cls, order: int, elements: Iterable[int]) -> "Multiset":
        counts = [0] * order
        for x in elements:
            if not 0 <= x < order:
                raise OrderMismatch(f"element {x} outside 0..{order - 1}")
            counts[x] += 1
        return cls(order, tuple(counts))

    @classmethod
    def parse(cls, order: int, text: str) -> "Multiset":
        m = re.fullmatch(r"\s*<\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)>\s*", text)
        if not m:
            col = next((i for i, ch in enumerate(text) if ch not in "<>0123456789, "), len(text))
            raise ParseError(f"malformed multiset {text!r}", 1, col)
        body = m.group(1).strip()
        elems = [int(x) for x in body.split(",")] if body else []
        return cls.of(order, elems)

    def __len__(self) -> int:
        return sum(self.counts)

    @property
    def cardinality(self) -> int:
        return sum(self.counts)

    def elements(self) -> tuple:
        """Nondecreasing listing; the canonical realizing tuple."""
        return tuple(x for x, c in enumerate(self.counts) for _ in range(c))

    def __contains__(self, x) -> bool:
        return self.counts[x] > 0

    def __str__(self) -> str:
        return "<" + ",".join(map(str, self.elements())) + ">"

    def issubset(self, other: "Multiset") -> bool:
        _check(self, other)
        return all(a <= b for a, b in zip(self.counts, other.counts))


def _check(a: Multiset, b: Multiset):
    if a.groupoid_order != b.groupoid_order:
        raise OrderMismatch(f"orders {a.groupoid_order} and {b.groupoid_order} differ")


def ms_sum(a: Multiset, b: Multiset) -> Multiset:
    _check(a, b)
    return Multiset(a.groupoid_order, tuple(x + y for x, y in zip(a.counts, b.counts)))


def ms_diff(a: Multiset, b: Multiset) -> Multiset:
    _check(a, b)
    return Multiset(a.groupoid_order, tuple(max(x - y, 0) for x, y in zip(a.counts, b.counts)))


def ms_intersect(a: Multiset, b: Multiset) -> Multiset:
    _check(a, b)
    return Multiset(a.groupoid_order, tuple(min(x, y) for x, y in zip(a.counts, b.counts)))


def couples(n: int) -> list:
    """2-subsets of {1..n} as (min, max) pairs, lexicographic."""
    return list(combinations(range(1, n + 1), 2))


@dataclass(frozen=True)
class Deck:
    """Cards keyed by their sorted element tuple."""

    cards: tuple          # sorted ((card, multiplicity), ...)
    source_cardinality: int

    @classmethod
    def from_cards(cls, cards: Iterable[tuple], n: int) -> "Deck":
        return cls(tuple(sorted(Counter(cards).items())), n)

    def as_counter(self) -> Counter:
        return Counter(dict(self.cards))

    def card_set(self) -> frozenset:
        return frozenset(c for c, _ in self.cards)

    def total(self) -> int:
        return sum(m for _, m in self.cards)

    def to_json(self) -> dict:
        return {"n": self.source_cardinality,
                "cards": [{"card": list(c), "mult": m} for c, m in self.cards]}


def card_tuples(g: Groupoid, elems: tuple) -> list:
    """The card M_I, for every couple I in lexicographic order, of the
    realizing tuple ``elems``; each card is a sorted element tuple."""
    n = len(elems)
    rows = g.rows()
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            rest = list(elems[:i] + elems[i + 1:j] + elems[j + 1:])
            rest.append(rows[elems[i]][elems[j]])
            rest.sort()
            out.append(tuple(rest))
    return out


def cards(g: Groupoid, m: Multiset) -> Deck:
    if m.groupoid_order != g.order:
        raise OrderMismatch("multiset and groupoid orders differ")
    n = m.cardinality
    if n < 2:
        raise CardinalityTooSmall(f"cards need n >= 2, got {n}")
    return Deck.from_cards(card_tuples(g, m.elements()), n)


deck = cards


def deck_equal(d1: Deck, d2: Deck) -> bool:
    return d1.source_cardinality == d2.source_cardinality and d1.cards == d2.cards


@dataclass(frozen=True)
class DeckStats:
    N: tuple
    delta: tuple


def deck_stats(g: Groupoid, m: Multiset) -> DeckStats:
    d = cards(g, m)
    n = m.cardinality
    N = [0] * g.order
    for card, mult in d.cards:
        for x in card:
            N[x] += mult
    base = comb(n - 1, 2)
    delta = tuple(N[x] - m.counts[x] * base for x in range(g.order))
    return DeckStats(tuple(N), delta)


def count_multisets(order: int, n: int) -> int:
    return comb(order + n - 1, n)


def multisets(order: int, n: int, caps=DEFAULT_CAPS) -> list:
    """All n-multisets over ``order`` elements in colexicographic order of
    their count vectors."""
    total = count_multisets(order, n)
    if total > caps.enumeration:
        raise EnumerationCapExceeded(f"C({order}+{n}-1, {n}) = {total} exceeds cap {caps.enumeration}")
    out = [Multiset.of(order, e) for e in combinations_with_replacement(range(order), n)]
    out.sort(key=lambda m: m.counts[::-1])
    return out


def iter_multisets(order: int, n: int, caps=DEFAULT_CAPS) -> Iterator[Multiset]:
    yield from multisets(order, n, caps)


def sub_multisets(items: Counter, size: int) -> Iterator[Counter]:
    """All sub-multisets of the given size of a Counter-encoded multiset."""
    keys = sorted(items)

    def rec(i, left):
        if left == 0:
            yield Counter()
            return
        if i == len(keys):
            return
        k = keys[i]
        for take in range(min(items[k], left), -1, -1):
            for rest in rec(i + 1, left - take):
                if take:
                    rest = rest.copy()
                    rest[k] = take
                yield rest

    yield from rec(0, size)


def format_multiset(m: Multiset) -> str:
    return str(m)
