"""Reconstructibility of multisets: per-groupoid decision, pattern
classification of deck-equal pairs, searches and the card-count probes."""

from __future__ import annotations

import enum
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import permutations, product
from math import comb
from typing import Iterator, Optional

from .algebra import Groupoid
from .config import DEFAULT_CAPS
from .errors import CapExceeded, PreconditionViolated
from .multiset import Multiset, cards, deck_equal, multisets, sub_multisets


class PatternTag(enum.Enum):
    EX1_4RSTUV = "EX1_4RSTUV"
    EX2_BOOLEANISH = "EX2_BOOLEANISH"
    EX3_SUMZERO = "EX3_SUMZERO"
    EX4_PAIRSUM = "EX4_PAIRSUM"
    THM4_II = "THM4_II"
    THM3_II = "THM3_II"
    THM3_III = "THM3_III"
    UNCLASSIFIED = "UNCLASSIFIED"

    @property
    def example(self) -> "PatternTag":
        """The example pattern a theorem condition corresponds to."""
        return _EXAMPLE_OF.get(self, self)


_EXAMPLE_OF = {
    PatternTag.THM4_II: PatternTag.EX1_4RSTUV,
    PatternTag.THM3_II: PatternTag.EX2_BOOLEANISH,
    PatternTag.THM3_III: PatternTag.EX3_SUMZERO,
}


@dataclass(frozen=True)
class PatternMatch:
    tag: PatternTag
    binding: tuple = ()   # ((variable, element), ...)

    def as_dict(self) -> dict:
        return {"tag": self.tag.value, "binding": dict(self.binding)}


# --- pattern identities -----------------------------------------------------

def holds_ex1(g: Groupoid, r, s, t, u, v) -> bool:
    """x+u = v and x+v = u for x in {r,s,t}; r+s = s, s+t = t, t+r = r."""
    a = g.add
    return (all(a(x, u) == v and a(x, v) == u for x in (r, s, t))
            and a(r, s) == s and a(s, t) == t and a(t, r) == r)


def holds_ex2(g: Groupoid, r, s, t) -> bool:
    a = g.add
    rs, rt = a(r, s), a(r, t)
    return a(r, rs) == s and a(r, rt) == t and a(rs, rt) == a(s, t)


def holds_ex3(g: Groupoid, r, s, t) -> bool:
    a = g.add
    rs, rt, st = a(r, s), a(r, t), a(s, t)
    return a(rs, rt) == r and a(rs, st) == s and a(rt, st) == t


def classify_pair(g: Groupoid, m: Multiset, m2: Multiset) -> list:
    """Explain a deck-equal pair M != M' by the pattern it instantiates.

    ``m`` plays the role of M. Returns ``[PatternMatch(UNCLASSIFIED)]`` when
    no binding exists for n <= 4 and ``[]`` for n >= 5.
    """
    n = m.cardinality
    if n != m2.cardinality:
        raise PreconditionViolated("cardinalities differ")
    if m == m2:
        raise PreconditionViolated("multisets are equal")
    if not deck_equal(cards(g, m), cards(g, m2)):
        raise PreconditionViolated("decks differ")
    if n >= 5:
        return []
    a = g.add
    found = []
    elems = m.elements()
    if n == 2:
        (r, s), (t, u) = elems, m2.elements()
        if a(r, s) == a(t, u):
            found.append(PatternMatch(PatternTag.EX4_PAIRSUM, (("r", r), ("s", s), ("t", t), ("u", u))))
    elif n == 3:
        target = m2.counts
        seen = set()
        for r, s, t in permutations(elems):
            if (r, s, t) in seen:
                continue
            seen.add((r, s, t))
            b = (("r", r), ("s", s), ("t", t))
            if holds_ex2(g, r, s, t) and _counts(g.order, (r, a(r, s), a(r, t))) == target:
                found.append(PatternMatch(PatternTag.THM3_II, b))
            if holds_ex3(g, r, s, t) and _counts(g.order, (a(r, s), a(r, t), a(s, t))) == target:
                found.append(PatternMatch(PatternTag.THM3_III, b))
    elif n == 4:
        lost = [x for x in range(g.order) for _ in range(max(m.counts[x] - m2.counts[x], 0))]
        gained = [x for x in range(g.order) for _ in range(max(m2.counts[x] - m.counts[x], 0))]
        if len(lost) == 1:
            (u,), (v,) = lost, gained
            rest = list(elems)
            rest.remove(u)
            seen = set()
            for r, s, t in permutations(rest):
                if (r, s, t) not in seen:
                    seen.add((r, s, t))
                    if holds_ex1(g, r, s, t, u, v):
                        found.append(PatternMatch(
                            PatternTag.THM4_II,
                            (("r", r), ("s", s), ("t", t), ("u", u), ("v", v))))
    # one match per tag, the first in enumeration order
    out, tags = [], set()
    for f in found:
        if f.tag not in tags:
            tags.add(f.tag)
            out.append(f)
    return out or [PatternMatch(PatternTag.UNCLASSIFIED)]


def _counts(order, elems) -> tuple:
    c = [0] * order
    for x in elems:
        c[x] += 1
    return tuple(c)


# --- reconstructibility -------------------------------------------------------

@dataclass
class ReconVerdict:
    reconstructible: bool
    witnesses: list = field(default_factory=list)
    matched_patterns: list = field(default_factory=list)   # per witness

    def as_dict(self) -> dict:
        return {
            "reconstructible": self.reconstructible,
            "witnesses": [str(w) for w in self.witnesses],
            "matched_patterns": [[p.as_dict() for p in ps] for ps in self.matched_patterns],
        }


def is_reconstructible(g: Groupoid, m: Multiset, caps=DEFAULT_CAPS) -> ReconVerdict:
    d = cards(g, m)
    witnesses = [w for w in multisets(g.order, m.cardinality, caps)
                 if w != m and deck_equal(cards(g, w), d)]
    return ReconVerdict(not witnesses, witnesses, [classify_pair(g, m, w) for w in witnesses])


# --- theorem conformance on one groupoid ------------------------------------

THEOREM_NAMES = {2: "n=2", 3: "n=3", 4: "n=4"}


def theorem_name(n: int) -> str:
    return THEOREM_NAMES.get(n, "n>=5")


def _allowed(n: int) -> set:
    return {2: {PatternTag.EX4_PAIRSUM}, 3: {PatternTag.THM3_II, PatternTag.THM3_III},
            4: {PatternTag.THM4_II}}.get(n, set())


def verify_theorem(g: Groupoid, n: int, caps=DEFAULT_CAPS) -> dict:
    """Check every ordered deck-equal pair M != M' of n-multisets against the
    conditions the characterization allows for cardinality n."""
    ms = multisets(g.order, n, caps)
    groups = defaultdict(list)
    for m in ms:
        groups[cards(g, m).cards].append(m)
    allowed = _allowed(n)
    tag_counts = Counter()
    violations = []
    equal_pairs = 0
    for members in groups.values():
        for i, m in enumerate(members):
            for m2 in members[i + 1:]:
                equal_pairs += 1
                fwd = {p.tag for p in classify_pair(g, m, m2)} & allowed
                bwd = {p.tag for p in classify_pair(g, m2, m)} & allowed
                for tag in fwd:
                    tag_counts[tag.value] += 1
                if not fwd or not bwd:
                    violations.append({"M": str(m), "M2": str(m2)})
    return {
        "theorem": theorem_name(n),
        "n": n,
        "order": g.order,
        "pairs_checked": comb(len(ms), 2),
        "deck_equal_pairs": equal_pairs,
        "tag_counts": dict(sorted(tag_counts.items())),
        "violations": violations,
        "falsified": bool(violations),
    }


# --- searches -----------------------------------------------------------------

def table_entries(order: int) -> list:
    return [(i, j) for i in range(order) for j in range(i, order)]


def table_count(order: int) -> int:
    return order ** (order * (order + 1) // 2)


def table_from_index(order: int, index: int) -> list:
    """Commutative table number ``index``; entry (0,0) is the most significant
    digit, so indices follow lexicographic order of the upper triangle."""
    entries = table_entries(order)
    t = [[0] * order for _ in range(order)]
    for (i, j), k in zip(reversed(entries), range(len(entries))):
        d = (index // order ** k) % order
        t[i][j] = t[j][i] = d
    return t


def canonical_under_relabeling(g: Groupoid) -> tuple:
    best = None
    n = g.order
    for p in permutations(range(n)):
        inv = [0] * n
        for i, x in enumerate(p):
            inv[x] = i
        # relabel element x as p[x]
        t = tuple(tuple(p[g.add(inv[i], inv[j])] for j in range(n)) for i in range(n))
        if best is None or t < best:
            best = t
    return best


@dataclass(frozen=True)
class Counterexample:
    groupoid: Groupoid
    table_index: Optional[int]
    m: Multiset
    m2: Multiset
    tags: tuple

    def as_dict(self) -> dict:
        return {
            "table_index": self.table_index,
            "table": [list(r) for r in self.groupoid.rows()],
            "M": str(self.m),
            "M2": str(self.m2),
            "tags": [p.as_dict() for p in self.tags],
        }


def search_counterexamples(order: int, n: int, tag_filter: Optional[PatternTag] = None,
                           iso_filter: bool = False, caps=DEFAULT_CAPS,
                           samples: Optional[int] = None, seed: int = 0) -> Iterator[Counterexample]:
    """Stream every deck-equal distinct pair over commutative tables of the
    given order. Exhaustive up to ``caps.search_order``; beyond that only
    ``samples`` random tables drawn with ``seed`` are examined."""
    from .sweep import deck_equal_pairs_for_tables, tables_chunk

    total = table_count(order)
    if order > caps.search_order and samples is None:
        raise CapExceeded(f"order {order} exceeds exhaustive search cap {caps.search_order}; pass samples")
    ms = multisets(order, n, caps)
    if samples is None:
        chunk = 16384
        ranges = ((s, min(s + chunk, total)) for s in range(0, total, chunk))
        batches = ((list(range(a, b)), tables_chunk(order, a, b)) for a, b in ranges)
    else:
        rng = random.Random(seed)
        idx = sorted(rng.randrange(total) for _ in range(samples))
        batches = iter([(idx, None)])
    import numpy as np
    for indices, arr in batches:
        if arr is None:
            arr = np.array([table_from_index(order, i) for i in indices], dtype=np.int64)
        for b, i, j in deck_equal_pairs_for_tables(arr, n):
            g = Groupoid(arr[b])
            if iso_filter and canonical_under_relabeling(g) != g.rows():
                continue
            m, m2 = ms[i], ms[j]
            tags = tuple(classify_pair(g, m, m2))
            if tag_filter is not None and tag_filter not in {t.tag for t in tags} \
                    and tag_filter not in {t.tag.example for t in tags}:
                continue
            yield Counterexample(g, indices[b], m, m2, tags)


@dataclass(frozen=True)
class Example1Witness:
    groupoid: Groupoid
    binding: tuple
    m: Multiset
    m2: Multiset


def _set_partitions(k: int):
    """Restricted growth strings of length k."""
    def rec(prefix, top):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            yield from rec(prefix + [v], max(top, v))
    yield from rec([0], 0)


def search_example1_witness(max_order: int, require_distinct: bool = False) -> Optional[Example1Witness]:
    """Smallest commutative groupoid carrying elements r,s,t,u,v (u != v) with
    x+u = v, x+v = u for x in {r,s,t} and r+s = s, s+t = t, t+r = r.

    Every witness is, after relabeling, an assignment of the five variables to
    0..j-1 by an equality pattern, so trying all patterns decides existence at
    each order; unconstrained entries are filled with 0.
    """
    if max_order > 6:
        raise CapExceeded("max_order must be <= 6")
    best = None
    for rgs in _set_partitions(5):
        r, s, t, u, v = rgs
        if u == v:
            continue
        if require_distinct and len({r, s, t}) != 3:
            continue
        size = max(rgs) + 1
        if size > max_order:
            continue
        forced = {}
        ok = True
        for (x, y), val in [((x, u), v) for x in (r, s, t)] + [((x, v), u) for x in (r, s, t)] \
                + [((r, s), s), ((s, t), t), ((t, r), r)]:
            key = (min(x, y), max(x, y))
            if forced.setdefault(key, val) != val:
                ok = False
                break
        if ok and (best is None or size < best[0]):
            best = (size, rgs, forced)
    if best is None:
        return None
    size, (r, s, t, u, v), forced = best
    table = [[0] * size for _ in range(size)]
    for (x, y), val in forced.items():
        table[x][y] = table[y][x] = val
    g = Groupoid(table)
    m = Multiset.of(size, (r, s, t, u))
    m2 = Multiset.of(size, (r, s, t, v))
    assert holds_ex1(g, r, s, t, u, v)
    assert deck_equal(cards(g, m), cards(g, m2))
    return Example1Witness(g, (("r", r), ("s", s), ("t", t), ("u", u), ("v", v)), m, m2)


def brute_force_example1(g: Groupoid) -> list:
    """All Example-1 bindings in g by scanning every 5-tuple."""
    return [b for b in product(range(g.order), repeat=5) if b[3] != b[4] and holds_ex1(g, *b)]


# --- few-card reconstruction ----------------------------------------------------

@dataclass
class MinCardsResult:
    m: Optional[int]          # None: some pair has equal decks; no card count suffices
    some_m: Optional[int]     # "some m cards" reading
    certificate: Optional[dict]

    def as_dict(self) -> dict:
        return {"m": self.m, "some_m": self.some_m, "certificate": self.certificate}


def shared_cards(d1: Counter, d2: Counter) -> Counter:
    return d1 & d2


def min_determining_cards(g: Groupoid, n: int, caps=DEFAULT_CAPS) -> MinCardsResult:
    """Smallest m such that any m cards of any n-multiset determine it.

    M is pinned down by every m-card sub-deck iff no other deck contains one
    of them, i.e. iff m exceeds the size of every intersection deck M & deck M'.
    """
    ms = multisets(g.order, n, caps)
    decks = [cards(g, m).as_counter() for m in ms]
    total = comb(n, 2)
    best_shared, cert = -1, None
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            common = decks[i] & decks[j]
            k = sum(common.values())
            if k > best_shared:
                best_shared = k
                cert = (i, j, common)
    if cert is None:     # a single multiset
        return MinCardsResult(1, 1, None)
    i, j, common = cert
    certificate = {
        "M": str(ms[i]), "M2": str(ms[j]), "shared": best_shared,
        "shared_cards": [{"card": list(c), "mult": k} for c, k in sorted(common.items())],
    }
    if best_shared >= total:
        return MinCardsResult(None, None, certificate)
    return MinCardsResult(best_shared + 1, _min_some_cards(decks), certificate)


def _min_some_cards(decks: list) -> int:
    """Smallest m such that every deck has some m-card sub-deck contained in
    no other deck."""
    worst = 0
    for i, d in enumerate(decks):
        others = [e for j, e in enumerate(decks) if j != i]
        size = sum(d.values())
        for k in range(1, size + 1):
            if any(all(not _contained(s, e) for e in others) for s in sub_multisets(d, k)):
                worst = max(worst, k)
                break
    return worst


def _contained(small: Counter, big: Counter) -> bool:
    return all(big[c] >= k for c, k in small.items())


def ambiguous_at(g: Groupoid, n: int, m: int, caps=DEFAULT_CAPS) -> Optional[tuple]:
    """Brute-force search for M != M' and an m-card sub-deck of deck M contained
    in deck M'. Independent of the intersection argument."""
    ms = multisets(g.order, n, caps)
    decks = [cards(g, x).as_counter() for x in ms]
    for i, d in enumerate(decks):
        for s in sub_multisets(d, m):
            for j, e in enumerate(decks):
                if j != i and _contained(s, e):
                    return ms[i], ms[j], s
    return None


def negate(g: Groupoid, x: int) -> int:
    e = g.profile.neutral_element
    if e is None:
        raise PreconditionViolated("groupoid has no neutral element")
    for y in range(g.order):
        if g.add(x, y) == e:
            return y
    raise PreconditionViolated(f"{x} has no inverse")


def two_card_construction(g: Groupoid, elems: tuple) -> dict:
    """M = <m1..mn>, M' = <m1+m2, m2+m3, -m2, m4..mn> over a commutative
    group; the two cards <m1+m2, m3, m4..> and <m1, m2+m3, m4..> are checked to
    lie in both decks by sub-deck containment."""
    prof = g.profile
    if not (prof.associative and prof.neutral_element is not None and prof.cancellative):
        raise PreconditionViolated("two-card construction needs a commutative group")
    if len(elems) < 3:
        raise PreconditionViolated("needs n >= 3")
    m1, m2, m3, *tail = elems
    a = g.add
    M = Multiset.of(g.order, elems)
    M2 = Multiset.of(g.order, [a(m1, m2), a(m2, m3), negate(g, m2), *tail])
    c1 = tuple(sorted([a(m1, m2), m3, *tail]))
    c2 = tuple(sorted([m1, a(m2, m3), *tail]))
    both = Counter([c1, c2])
    d, d2 = cards(g, M).as_counter(), cards(g, M2).as_counter()
    return {
        "M": str(M), "M2": str(M2), "distinct": M != M2,
        "cards": [list(c1), list(c2)],
        "in_deck_M": _contained(both, d), "in_deck_M2": _contained(both, d2),
    }


def set_deck_probe(g: Groupoid, n: int, caps=DEFAULT_CAPS) -> dict:
    """Pairs of distinct n-multisets whose sets of cards coincide."""
    ms = multisets(g.order, n, caps)
    ds = [cards(g, m) for m in ms]
    pairs = []
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            if ds[i].card_set() == ds[j].card_set():
                pairs.append({"M": str(ms[i]), "M2": str(ms[j]),
                              "multiset_deck_equal": deck_equal(ds[i], ds[j]),
                              "card_set": [list(c) for c in sorted(ds[i].card_set())]})
    return {"n": n, "order": g.order, "multisets": len(ms),
            "set_deck_equal_pairs": len(pairs), "pairs": pairs}
