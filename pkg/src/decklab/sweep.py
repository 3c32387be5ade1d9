"""Vectorized theorem sweeps over every commutative Cayley table of an order.

Tables are processed in fixed-size chunks of consecutive table indices so the
merged result does not depend on how chunks are spread over workers.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations, combinations_with_replacement, product
from math import comb

import numpy as np

from .parallel import run_chunks
from .reconstruction import table_count, table_entries, theorem_name

CHUNK = 32768
MAX_LISTED = 50


def tables_chunk(order: int, start: int, stop: int) -> np.ndarray:
    """Tables ``start..stop-1`` as an int64 array of shape (B, order, order)."""
    entries = table_entries(order)
    m = len(entries)
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), order, order), dtype=np.int64)
    for e, (i, j) in enumerate(entries):
        d = (idx // order ** (m - 1 - e)) % order
        out[:, i, j] = d
        out[:, j, i] = d
    return out


def multiset_tuples(order: int, n: int) -> np.ndarray:
    """Sorted element tuples of all n-multisets, colex order on count vectors."""
    tuples = list(combinations_with_replacement(range(order), n))

    def colex(t):
        c = [0] * order
        for x in t:
            c[x] += 1
        return c[::-1]

    tuples.sort(key=colex)
    return np.array(tuples, dtype=np.int64).reshape(len(tuples), n)


class _Index:
    """Maps count-vector codes sum(count[e] * (n+1)**e) to multiset indices."""

    def __init__(self, order: int, n: int, tuples: np.ndarray):
        self.weights = (n + 1) ** np.arange(order, dtype=np.int64)
        self.lut = np.full((n + 1) ** order, -1, dtype=np.int64)
        self.lut[self.weights[tuples].sum(axis=1)] = np.arange(len(tuples))

    def of_tuple(self, elems) -> int:
        return int(self.lut[sum(int(self.weights[e]) for e in elems)])

    def of_columns(self, *cols) -> np.ndarray:
        code = sum(self.weights[c] for c in cols)
        return self.lut[code]


def deck_ids(T: np.ndarray, tuples: np.ndarray) -> np.ndarray:
    """(B, K) array; two multisets of one table share an id iff decks agree."""
    B = T.shape[0]
    K, n = tuples.shape
    order = T.shape[1]
    pw = n ** np.arange(order, dtype=np.int64)     # card counts are < n
    C = comb(n, 2)
    codes = np.empty((B, K, C), dtype=np.int64)
    for k in range(K):
        elems = tuples[k]
        for c, (i, j) in enumerate(combinations(range(n), 2)):
            rest = int(pw[np.delete(elems, [i, j])].sum())
            codes[:, k, c] = rest + pw[T[:, elems[i], elems[j]]]
    codes.sort(axis=2)
    base = int(n ** order)
    if base ** C < 2 ** 62:
        key = np.zeros((B, K), dtype=np.int64)
        for c in range(C):
            key = key * base + codes[:, :, c]
        return key
    flat = np.ascontiguousarray(codes.reshape(B * K, C))
    _, inv = np.unique(flat, axis=0, return_inverse=True)
    return inv.reshape(B, K)


def deck_equal_matrix(T: np.ndarray, tuples: np.ndarray) -> np.ndarray:
    ids = deck_ids(T, tuples)
    return ids[:, :, None] == ids[:, None, :]


def explained_n4(T, order, index) -> np.ndarray:
    """Ordered pairs (M, M') realized by a condition-(ii) binding."""
    B = T.shape[0]
    K = len(index.lut[index.lut >= 0])
    out = np.zeros((B, K, K), dtype=bool)
    for r, s, t in product(range(order), repeat=3):
        rows = np.nonzero((T[:, r, s] == s) & (T[:, s, t] == t) & (T[:, t, r] == r))[0]
        if not len(rows):
            continue
        sub = T[rows]
        for u, v in product(range(order), repeat=2):
            if u == v:
                continue
            cond = np.ones(len(rows), dtype=bool)
            for x in (r, s, t):
                cond &= (sub[:, x, u] == v) & (sub[:, x, v] == u)
            hit = rows[cond]
            if len(hit):
                out[hit, index.of_tuple((r, s, t, u)), index.of_tuple((r, s, t, v))] = True
    return out


def explained_n3(T, order, index):
    """Ordered pairs realized by condition (ii) and by condition (iii)."""
    B = T.shape[0]
    K = len(index.lut[index.lut >= 0])
    ii = np.zeros((B, K, K), dtype=bool)
    iii = np.zeros((B, K, K), dtype=bool)
    ar = np.arange(B)
    for r, s, t in product(range(order), repeat=3):
        i_m = index.of_tuple((r, s, t))
        rs, rt, st = T[:, r, s], T[:, r, t], T[:, s, t]
        c2 = (T[ar, r, rs] == s) & (T[ar, r, rt] == t) & (T[ar, rs, rt] == st)
        hit = np.nonzero(c2)[0]
        if len(hit):
            rcol = np.full(len(hit), r)
            ii[hit, i_m, index.of_columns(rcol, rs[hit], rt[hit])] = True
        c3 = (T[ar, rs, rt] == r) & (T[ar, rs, st] == s) & (T[ar, rt, st] == t)
        hit = np.nonzero(c3)[0]
        if len(hit):
            iii[hit, i_m, index.of_columns(rs[hit], rt[hit], st[hit])] = True
    return ii, iii


def pairwise_sum_injective(T: np.ndarray) -> np.ndarray:
    """Per table: a+b = c+d implies {a,b} = {c,d}, over all 4-tuples."""
    order = T.shape[1]
    ok = np.ones(T.shape[0], dtype=bool)
    for a, b, c, d in product(range(order), repeat=4):
        if (a, b) == (c, d) or (a, b) == (d, c):
            continue
        ok &= T[:, a, b] != T[:, c, d]
    return ok


def analyse_tables(T: np.ndarray, n: int, tuples: np.ndarray = None) -> dict:
    """Theorem check of cardinality n on a batch of tables.

    Returns counts plus ``bad`` = list of (batch_row, i, j) ordered violating
    pairs, where i, j index ``tuples``.
    """
    order = T.shape[1]
    if tuples is None:
        tuples = multiset_tuples(order, n)
    K = len(tuples)
    B = T.shape[0]
    eq = deck_equal_matrix(T, tuples)
    off = ~np.eye(K, dtype=bool)
    eq_off = eq & off
    tags = Counter()
    extra = {}
    if n == 2:
        a, b = tuples[:, 0], tuples[:, 1]
        sums = T[:, a, b]
        explained = sums[:, :, None] == sums[:, None, :]
        tags["EX4_PAIRSUM"] = int((eq_off & explained).sum()) // 2
        all_recon = ~eq_off.any(axis=(1, 2))
        psi = pairwise_sum_injective(T)
        extra["psi_mismatch_rows"] = np.nonzero(all_recon != psi)[0].tolist()
        extra["pairwise_sum_injective_tables"] = int(psi.sum())
        # deck-equal iff sums equal, in both directions
        bad_mask = (eq_off != (explained & off))
    elif n == 3:
        index = _Index(order, n, tuples)
        ii, iii = explained_n3(T, order, index)
        tags["THM3_II"] = int((eq_off & ii).sum()) // 2
        tags["THM3_III"] = int((eq_off & iii).sum()) // 2
        explained = ii | iii
        bad_mask = (eq_off & ~explained) | (explained & off & ~eq)
    elif n == 4:
        index = _Index(order, n, tuples)
        explained = explained_n4(T, order, index)
        tags["THM4_II"] = int((eq_off & explained).sum()) // 2
        bad_mask = (eq_off & ~explained) | (explained & off & ~eq)
    else:
        bad_mask = eq_off
    bad = np.argwhere(bad_mask)
    return {
        "tables": B,
        "pairs_checked": B * comb(K, 2),
        "deck_equal_pairs": int(eq_off.sum()) // 2,
        "tag_counts": tags,
        "bad": [tuple(map(int, x)) for x in bad],
        **extra,
    }


def deck_equal_pairs_for_tables(T: np.ndarray, n: int):
    """Yield (batch_row, i, j), i < j, for deck-equal distinct multisets."""
    tuples = multiset_tuples(T.shape[1], n)
    eq = deck_equal_matrix(T, tuples)
    K = len(tuples)
    upper = np.triu(np.ones((K, K), dtype=bool), 1)
    for b, i, j in np.argwhere(eq & upper):
        yield int(b), int(i), int(j)


def _chunk_job(args):
    order, n, start, stop = args
    T = tables_chunk(order, start, stop)
    res = analyse_tables(T, n)
    res["bad"] = [(start + b, i, j) for b, i, j in res["bad"]]
    if "psi_mismatch_rows" in res:
        res["psi_mismatch_rows"] = [start + b for b in res["psi_mismatch_rows"]]
    res["tag_counts"] = dict(res["tag_counts"])
    return res


def sweep_theorem(n: int, max_order: int, workers: int = 1, min_order: int = 1,
                  chunk: int = CHUNK) -> dict:
    """Exhaustive conformance check of the cardinality-n characterization over
    every commutative groupoid of order min_order..max_order."""
    from .reconstruction import table_from_index

    per_order = []
    tag_total = Counter()
    violations = []
    violation_count = 0
    psi_mismatch = 0
    for order in range(min_order, max_order + 1):
        total = table_count(order)
        jobs = [(order, n, s, min(s + chunk, total)) for s in range(0, total, chunk)]
        results = run_chunks(_chunk_job, jobs, workers)
        tuples = multiset_tuples(order, n)
        row = {"order": order, "tables": 0, "pairs_checked": 0, "deck_equal_pairs": 0}
        tags = Counter()
        for res in results:
            for key in ("tables", "pairs_checked", "deck_equal_pairs"):
                row[key] += res[key]
            tags.update(res["tag_counts"])
            for t_idx, i, j in res["bad"]:
                violation_count += 1
                if len(violations) < MAX_LISTED:
                    violations.append({
                        "order": order, "table_index": t_idx,
                        "table": table_from_index(order, t_idx),
                        "M": _fmt(tuples[i]), "M2": _fmt(tuples[j]),
                    })
            if n == 2:
                row["pairwise_sum_injective_tables"] = row.get("pairwise_sum_injective_tables", 0) \
                    + res["pairwise_sum_injective_tables"]
                psi_mismatch += len(res["psi_mismatch_rows"])
                for t_idx in res["psi_mismatch_rows"]:
                    violation_count += 1
                    if len(violations) < MAX_LISTED:
                        violations.append({"order": order, "table_index": t_idx,
                                           "table": table_from_index(order, t_idx),
                                           "reason": "2-multiset reconstructibility != pairwise_sum_injective"})
        row["tag_counts"] = dict(sorted(tags.items()))
        tag_total.update(tags)
        per_order.append(row)
    report = {
        "theorem": theorem_name(n),
        "n": n,
        "max_order": max_order,
        "orders": per_order,
        "tables": sum(r["tables"] for r in per_order),
        "pairs_checked": sum(r["pairs_checked"] for r in per_order),
        "deck_equal_pairs": sum(r["deck_equal_pairs"] for r in per_order),
        "tag_counts": dict(sorted(tag_total.items())),
        "violation_count": violation_count,
        "violations": violations,
        "falsified": violation_count > 0,
    }
    if n == 2:
        report["psi_mismatches"] = psi_mismatch
    return report


def _fmt(t) -> str:
    return "<" + ",".join(str(int(x)) for x in t) + ">"
