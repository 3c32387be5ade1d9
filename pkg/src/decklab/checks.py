"""Verification suites behind the acceptance criteria.

Each ``criterion_*`` function returns a JSON-ready dict with a ``passed``
flag. Outputs depend only on their arguments and the seed, never on the
worker count; elapsed times are added by the caller.
"""

from __future__ import annotations

import random
from itertools import combinations, product
from math import comb

from .affine import (
    bridge_check,
    function_tables_range,
    verify_recognizability,
    verify_weak_reconstructibility,
)
from .algebra import Groupoid, cyclic_group, make_gf
from .functions import willard_sweep
from .multiset import Multiset, cards, deck_stats
from .parallel import run_chunks
from .reconstruction import min_determining_cards, two_card_construction
from .sweep import sweep_theorem

DEFAULT_SEED = 1729


def criterion_1(workers=1, seed=DEFAULT_SEED):
    reports = [sweep_theorem(n, 3, workers) for n in (5, 6)]
    ok = all(r["deck_equal_pairs"] == 0 and not r["falsified"] and r["pairs_checked"] > 0
             for r in reports)
    return {"criterion": 1, "name": "n>=5 decks determine multisets", "passed": ok, "reports": reports}


def criterion_2(workers=1, seed=DEFAULT_SEED):
    r = sweep_theorem(4, 4, workers)
    return {"criterion": 2, "name": "n=4 characterization", "passed": not r["falsified"], "reports": [r]}


def criterion_3(workers=1, seed=DEFAULT_SEED):
    r = sweep_theorem(3, 4, workers)
    return {"criterion": 3, "name": "n=3 characterization", "passed": not r["falsified"], "reports": [r]}


def criterion_4(workers=1, seed=DEFAULT_SEED):
    r = sweep_theorem(2, 4, workers)
    ok = not r["falsified"] and r["psi_mismatches"] == 0
    return {"criterion": 4, "name": "n=2 characterization", "passed": ok, "reports": [r]}


Z2_DECK_1111 = [{"card": [0, 1, 1], "mult": 6}]
Z2_DECK_0011 = [{"card": [0, 0, 0], "mult": 1}, {"card": [0, 1, 1], "mult": 5}]


def criterion_5(workers=1, seed=DEFAULT_SEED):
    z2 = cyclic_group(2)
    res = min_determining_cards(z2, 4)
    d1 = cards(z2, Multiset.parse(2, "<1,1,1,1>")).to_json()["cards"]
    d2 = cards(z2, Multiset.parse(2, "<0,0,1,1>")).to_json()["cards"]
    cert = res.certificate or {}
    ok = (res.m is not None and res.m > 5
          and {cert.get("M"), cert.get("M2")} == {"<1,1,1,1>", "<0,0,1,1>"}
          and cert.get("shared") == 5
          and d1 == Z2_DECK_1111 and d2 == Z2_DECK_0011)
    return {"criterion": 5, "name": "Z2 five-card ambiguity", "passed": ok,
            "result": res.as_dict(), "deck_1111": d1, "deck_0011": d2}


def criterion_6(workers=1, seed=DEFAULT_SEED):
    rows = []
    ok = True
    for q in (3, 4):
        g = cyclic_group(q)
        for n in (3, 4):
            total = distinct = 0
            example = None
            for elems in product(range(q), repeat=n):
                r = two_card_construction(g, elems)
                total += 1
                ok &= r["in_deck_M"] and r["in_deck_M2"]
                if r["distinct"]:
                    distinct += 1
                    example = example or r
            rows.append({"group": f"Z{q}", "n": n, "instances": total, "distinct_pairs": distinct,
                         "example": example})
            ok &= distinct > 0
    return {"criterion": 6, "name": "group two-card ambiguity", "passed": bool(ok), "instances": rows}


def criterion_7(workers=1, seed=DEFAULT_SEED):
    gf2 = make_gf(2)
    r4 = verify_recognizability(gf2, 4, workers=workers)
    r3 = verify_recognizability(gf2, 3, workers=workers)
    b = r3["boundary_example"]
    ok = (r4["functions"] == 65536 and r4["violation_count"] == 0
          and not b["affine"] and b["minors_affine"])
    return {"criterion": 7, "name": "non-affine functions have a non-affine minor", "passed": ok,
            "reports": [r4, r3]}


def criterion_8(workers=1, seed=DEFAULT_SEED):
    reports = [verify_weak_reconstructibility(make_gf(p), n) for p in (2, 3) for n in (4, 5)]
    sharp = verify_weak_reconstructibility(make_gf(2), 3)
    ok = (all(not r["falsified"] and r["deck_equal_not_equivalent"] == 0
              and r["multiset_route_violations"] == 0 for r in reports)
          and sharp["sharpness_pair"]["decks_equal"] and not sharp["sharpness_pair"]["equivalent"])
    return {"criterion": 8, "name": "affine weak reconstructibility", "passed": ok,
            "reports": reports + [sharp]}


def _random_table(rng, k):
    t = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            t[i][j] = t[j][i] = rng.randrange(k)
    return t


def _delta_job(args):
    seed, chunk_no, count = args
    rng = random.Random(seed * 1_000_003 + chunk_no)
    bad = []
    for i in range(count):
        k = rng.randint(1, 5)
        n = rng.randint(2, 7)
        g = Groupoid(_random_table(rng, k))
        m = Multiset.of(k, [rng.randrange(k) for _ in range(n)])
        st = deck_stats(g, m)
        base = comb(n - 1, 2)
        # delta[x] counted independently: couples whose sum is x
        e = m.elements()
        pair_sums = [0] * k
        for a, b in combinations(range(n), 2):
            pair_sums[g.add(e[a], e[b])] += 1
        if any(st.N[x] != m.counts[x] * base + st.delta[x] for x in range(k)) \
                or list(st.delta) != pair_sums or sum(st.delta) != comb(n, 2):
            bad.append({"chunk": chunk_no, "i": i, "table": g.table.tolist(), "M": str(m)})
    return bad


def criterion_9(workers=1, seed=DEFAULT_SEED, instances=100_000, chunk=10_000):
    jobs = [(seed, c, min(chunk, instances - c * chunk)) for c in range((instances + chunk - 1) // chunk)]
    bad = [b for r in run_chunks(_delta_job, jobs, workers) for b in r]
    return {"criterion": 9, "name": "occurrence-count identity fuzz", "passed": not bad,
            "seed": seed, "instances": instances, "violations": bad[:50]}


def _willard_job(args):
    start, stop = args
    r = willard_sweep(function_tables_range(2, 2, 4, start, stop), 2, 4)
    r["violations"] = [start + v for v in r["violations"]]
    return r


def criterion_10(workers=1, seed=DEFAULT_SEED, chunk=8192):
    jobs = [(s, min(s + chunk, 65536)) for s in range(0, 65536, chunk)]
    res = run_chunks(_willard_job, jobs, workers)
    checked = sum(r["checked"] for r in res)
    bad = [v for r in res for v in r["violations"]]
    return {"criterion": 10, "name": "Willard lemma, GF(2) arity 4", "passed": not bad and checked > 0,
            "functions_depending_on_all": checked, "violations": bad[:50]}


FIELDS = ((2, 1), (3, 1), (2, 2))


def _bridge_job(args):
    seed, chunk_no, count = args
    rng = random.Random(seed * 1_000_003 + chunk_no)
    bad = []
    fields = {pk: make_gf(*pk) for pk in FIELDS}
    for i in range(count):
        field = fields[FIELDS[rng.randrange(len(FIELDS))]]
        n = rng.randint(2, 5)
        coeffs = [rng.randrange(field.q) for _ in range(n)]
        c = rng.randrange(field.q)
        if not bridge_check(field, coeffs, c):
            bad.append({"field": field.name, "coefficients": coeffs, "constant": c})
    return bad


def criterion_11(workers=1, seed=DEFAULT_SEED, instances=1000, chunk=100):
    jobs = [(seed, c, min(chunk, instances - c * chunk)) for c in range((instances + chunk - 1) // chunk)]
    bad = [b for r in run_chunks(_bridge_job, jobs, workers) for b in r]
    return {"criterion": 11, "name": "function deck = image of coefficient deck", "passed": not bad,
            "seed": seed, "instances": instances, "violations": bad[:50]}


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
    7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10, 11: criterion_11,
}


def run_criterion(k: int, workers: int = 1, seed: int = DEFAULT_SEED) -> dict:
    return CRITERIA[k](workers=workers, seed=seed)
