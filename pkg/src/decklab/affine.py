"""Affine functions a1*x1 + ... + an*xn + c over nonassociative right semirings
and finite fields, and their decks."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional, Union

import numpy as np

from .algebra import FiniteField, RightSemiring
from .config import DEFAULT_CAPS
from .errors import (
    CapExceeded,
    CarrierMismatch,
    DomainMismatch,
    FalsificationEvent,
    HypothesisUnmet,
    PreconditionViolated,
)
from .functions import (
    FiniteFunction,
    all_tuples,
    batch_deck_keys,
    canonical_tables,
    canonicalize,
    function_deck,
    minor_index,
)
from .multiset import Multiset, cards


def _semiring(s: Union[RightSemiring, FiniteField]) -> RightSemiring:
    return s.semiring if isinstance(s, FiniteField) else s


@dataclass(frozen=True, eq=False)
class AffineFunction:
    semiring: RightSemiring
    coefficients: tuple
    constant: int

    @property
    def arity(self) -> int:
        return len(self.coefficients)

    @property
    def linear(self) -> bool:
        return self.constant == self.semiring.zero

    @property
    def coefficient_multiset(self) -> Multiset:
        return Multiset.of(self.semiring.order, self.coefficients)

    def key(self) -> "AffineClassKey":
        return AffineClassKey(self.coefficient_multiset, self.constant)

    def __repr__(self):
        terms = " + ".join(f"{a}*x{i}" for i, a in enumerate(self.coefficients, 1))
        return f"AffineFunction({terms} + {self.constant})"


@dataclass(frozen=True, order=True)
class AffineClassKey:
    coefficients: Multiset
    constant: int


def affine_tables(s: RightSemiring, coeffs: np.ndarray, consts: np.ndarray) -> np.ndarray:
    """Tables of a batch of affine functions: coeffs (B, n), consts (B,)."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    q = s.order
    n = coeffs.shape[1]
    X = all_tuples(q, n)
    add = s.add.table
    mul = np.asarray(s.mul)
    acc = np.broadcast_to(np.asarray(consts, dtype=np.int64)[:, None], (coeffs.shape[0], q ** n))
    for k in range(n):
        # right multiplication convention: a_k * x_k
        acc = add[acc, mul[coeffs[:, k:k + 1], X[None, :, k]]]
    return np.ascontiguousarray(acc)


def compile_affine(s, coeffs, constant: int):
    s = _semiring(s)
    coeffs = tuple(int(a) for a in coeffs)
    if any(not 0 <= a < s.order for a in coeffs + (constant,)):
        raise CarrierMismatch("coefficients must be carrier elements")
    if not coeffs:
        raise CarrierMismatch("arity must be positive")
    f = AffineFunction(s, coeffs, int(constant))
    table = affine_tables(s, np.array([coeffs]), np.array([constant]))[0]
    return f, FiniteFunction(s.order, s.order, len(coeffs), table)


def recover_representation(s, table: FiniteFunction) -> tuple:
    """(coefficients, constant) read from f(0..0) and f(e_i); only exact when
    the semiring is cancellative or the function is linear."""
    s = _semiring(s)
    n = table.n
    c = table(*([s.zero] * n))
    coeffs = []
    for i in range(n):
        e = [s.zero] * n
        e[i] = s.one
        target = table(*e)
        # a_i + c = f(e_i); solve for a_i by search (no subtraction in general)
        sols = [a for a in range(s.order) if s.plus(a, c) == target]
        if len(sols) != 1:
            raise HypothesisUnmet(f"coefficient {i + 1} is not determined by f(e_i)")
        coeffs.append(sols[0])
    return tuple(coeffs), c


def _check_hypothesis(f: AffineFunction, g: AffineFunction):
    if f.semiring is not g.semiring:
        raise CarrierMismatch("functions live over different semirings")
    if f.arity != g.arity:
        raise PreconditionViolated("arities differ")
    if not (f.semiring.cancellative or (f.linear and g.linear)):
        raise HypothesisUnmet("needs both functions linear or a cancellative semiring")


def affine_equivalent(f: AffineFunction, g: AffineFunction, caps=DEFAULT_CAPS) -> bool:
    _check_hypothesis(f, g)
    verdict = f.coefficient_multiset == g.coefficient_multiset and f.constant == g.constant
    _, tf = compile_affine(f.semiring, f.coefficients, f.constant)
    _, tg = compile_affine(g.semiring, g.coefficients, g.constant)
    if verdict != (canonicalize(tf, caps) == canonicalize(tg, caps)):
        raise FalsificationEvent({"lemma": "f == g iff C_f = C_g and equal constants",
                                  "f": repr(f), "g": repr(g)})
    return verdict


@dataclass(frozen=True)
class AffineDeck:
    function_deck: object
    multiset_deck: object
    coherent: bool


def class_of_card(s: RightSemiring, card: tuple, constant: int, caps=DEFAULT_CAPS):
    """Equivalence class F_{M,c} realized by the function with sorted
    coefficient list M and constant c."""
    _, t = compile_affine(s, card, constant)
    return canonicalize(t, caps)


def affine_deck(f: AffineFunction, caps=DEFAULT_CAPS) -> AffineDeck:
    if f.arity < 2:
        raise PreconditionViolated("decks need arity >= 2")
    s = f.semiring
    _, table = compile_affine(s, f.coefficients, f.constant)
    fdeck = function_deck(table, caps)
    mdeck = cards(s.add, f.coefficient_multiset)
    c = table(*([s.zero] * f.arity))
    image = Counter()
    for card, mult in mdeck.cards:
        image[class_of_card(s, card, c, caps)] += mult
    return AffineDeck(fdeck, mdeck, Counter(dict(fdeck.classes)) == image)


# --- finite fields ------------------------------------------------------------

def _check_field_function(field: FiniteField, f: FiniteFunction):
    if f.a != field.q or f.b != field.q:
        raise DomainMismatch(f"function is {f.a}->{f.b}, field has {field.q} elements")


def is_affine(field: FiniteField, f: FiniteFunction) -> Optional[AffineFunction]:
    _check_field_function(field, f)
    n = f.n
    c = f(*([0] * n))
    coeffs = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        coeffs.append(field.sub(f(*e), c))
    cand, table = compile_affine(field, coeffs, c)
    return cand if table == f else None


def batch_is_affine(field: FiniteField, tables: np.ndarray, n: int) -> np.ndarray:
    q = field.q
    tables = np.asarray(tables, dtype=np.int64)
    c = tables[:, 0]
    acc = c[:, None]
    X = all_tuples(q, n)
    for i in range(n):
        a_i = field.sub_table[tables[:, q ** (n - 1 - i)], c]
        acc = field.add_table[acc, field.mul_table[a_i[:, None], X[None, :, i]]]
    return (acc == tables).all(axis=1)


def gauss_solve(field: FiniteField, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Solve A X = B over the field for square nonsingular A."""
    A = np.array(A, dtype=np.int64)
    B = np.array(B, dtype=np.int64)
    if B.ndim == 1:
        B = B[:, None]
    n = A.shape[0]
    add, mul, sub, inv = field.add_table, field.mul_table, field.sub_table, field.inv
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r, col] != 0), None)
        if piv is None:
            raise PreconditionViolated("singular system")
        A[[col, piv]] = A[[piv, col]]
        B[[col, piv]] = B[[piv, col]]
        k = inv[A[col, col]]
        A[col] = mul[k, A[col]]
        B[col] = mul[k, B[col]]
        for r in range(n):
            if r != col and A[r, col] != 0:
                m = A[r, col]
                A[r] = sub[A[r], mul[m, A[col]]]
                B[r] = sub[B[r], mul[m, B[col]]]
    return B


def power_table(field: FiniteField) -> np.ndarray:
    """pw[x, e] = x**e with 0**0 = 1."""
    q = field.q
    pw = np.zeros((q, q), dtype=np.int64)
    pw[:, 0] = 1
    for e in range(1, q):
        pw[:, e] = field.mul_table[pw[:, e - 1], np.arange(q)]
    return pw


def canonical_polynomial(field: FiniteField, f: FiniteFunction, caps=DEFAULT_CAPS) -> dict:
    """Coefficients {exponent vector: coefficient} (nonzero only) of the unique
    polynomial with all exponents < q inducing f.

    The evaluation matrix of the monomial basis is the n-fold Kronecker power
    of the univariate Vandermonde matrix, so it is inverted one axis at a time.
    """
    _check_field_function(field, f)
    q, n = field.q, f.n
    if q ** n > caps.polynomial:
        raise CapExceeded(f"q**n = {q ** n} exceeds cap {caps.polynomial}")
    vinv = gauss_solve(field, power_table(field), np.eye(q, dtype=np.int64))
    vals = f.table.reshape((q,) * n).copy()
    for ax in range(n):
        moved = np.moveaxis(vals, ax, -1)
        out = np.zeros_like(moved)
        for e in range(q):
            acc = np.zeros(moved.shape[:-1], dtype=np.int64)
            for x in range(q):
                acc = field.add_table[acc, field.mul_table[vinv[e, x], moved[..., x]]]
            out[..., e] = acc
        vals = np.moveaxis(out, -1, ax)
    return {tuple(int(r) for r in idx): int(vals[idx]) for idx in zip(*np.nonzero(vals))}


def evaluate_polynomial(field: FiniteField, coeffs: dict, n: int) -> FiniteFunction:
    q = field.q
    pw = power_table(field)
    X = all_tuples(q, n)
    acc = np.zeros(q ** n, dtype=np.int64)
    for exps, a in sorted(coeffs.items()):
        term = np.full(q ** n, a, dtype=np.int64)
        for i, e in enumerate(exps):
            if e:
                term = field.mul_table[term, pw[X[:, i], e]]
        acc = field.add_table[acc, term]
    return FiniteFunction(q, q, n, acc)


def has_nonlinear_monomial(coeffs: dict) -> bool:
    return any(sum(r) >= 2 for r in coeffs)


# --- sweeps ---------------------------------------------------------------------

def _recog_job(args):
    field_pq, n, kind, payload = args
    from .algebra import make_gf
    field = make_gf(*field_pq)
    q = field.q
    if kind == "range":
        start, stop = payload
        tables = function_tables_range(q, q, n, start, stop)
        ids = np.arange(start, stop)
    else:
        seed, chunk_no, count = payload
        rng = np.random.default_rng([seed, chunk_no])
        tables = rng.integers(0, q, size=(count, q ** n))
        ids = np.arange(count) + chunk_no * 1_000_000_000
    aff = batch_is_affine(field, tables, n)
    non = tables[~aff]
    some_nonaffine_minor = np.zeros(len(non), dtype=bool)
    for i, j in combinations(range(1, n + 1), 2):
        some_nonaffine_minor |= ~batch_is_affine(field, non[:, minor_index(q, n, i, j)], n - 1)
    bad = ids[~aff][~some_nonaffine_minor]
    return {"functions": len(tables), "non_affine": int(len(non)), "violations": bad.tolist()}


def function_tables_range(a: int, b: int, n: int, start: int, stop: int) -> np.ndarray:
    """Functions numbered start..stop-1; the first table entry is the most
    significant base-b digit."""
    L = a ** n
    idx = np.arange(start, stop, dtype=np.int64)
    pw = b ** np.arange(L - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // pw[None, :]) % b


def verify_recognizability(field: FiniteField, n: int, samples: Optional[int] = None,
                           seed: int = 0, workers: int = 1, caps=DEFAULT_CAPS,
                           chunk: int = 8192) -> dict:
    """Every non-affine f of arity n has a non-affine identification minor
    (claimed for n > max(q, 3)). Exhaustive when ``samples`` is None."""
    from .parallel import run_chunks

    q = field.q
    space = q ** (q ** n)
    pq = (field.p, field.k)
    if samples is None:
        if space > caps.enumeration * 10:
            raise CapExceeded(f"{space} functions is too many for an exhaustive sweep")
        jobs = [(pq, n, "range", (s, min(s + chunk, space))) for s in range(0, space, chunk)]
    else:
        jobs = [(pq, n, "random", (seed, c, min(chunk, samples - c * chunk)))
                for c in range((samples + chunk - 1) // chunk)]
    results = run_chunks(_recog_job, jobs, workers)
    violations = [v for r in results for v in r["violations"]]
    in_scope = n > max(q, 3)
    report = {
        "check": "recognizability",
        "field": field.name,
        "n": n,
        "mode": "exhaustive" if samples is None else "random",
        "seed": seed if samples is not None else None,
        "functions": sum(r["functions"] for r in results),
        "non_affine": sum(r["non_affine"] for r in results),
        "violation_count": len(violations),
        "violations": violations[:50],
        "claim_applies": in_scope,
        "falsified": in_scope and bool(violations),
    }
    if q == 2 and n == 3:
        f = FiniteFunction.from_callable(2, 2, 3, lambda x, y, z: (x * y + x * z + y * z) % 2)
        report["boundary_example"] = {
            "function": "x1*x2 + x1*x3 + x2*x3",
            "affine": is_affine(field, f) is not None,
            "minors_affine": all(is_affine(field, FiniteFunction(2, 2, 2, f.table[minor_index(2, 3, i, j)]))
                                 is not None for i, j in combinations(range(1, 4), 2)),
        }
    return report


def verify_weak_reconstructibility(s, n: int, linear_only: Optional[bool] = None,
                                   caps=DEFAULT_CAPS) -> dict:
    """Over all affine (or linear) functions of arity n: deck equality iff
    equivalence, plus the multiset route deck f = deck g => deck C_f = deck C_g
    => C_f = C_g."""
    s = _semiring(s)
    q = s.order
    if linear_only is None:
        linear_only = not s.cancellative
    consts = [s.zero] if linear_only else list(range(q))
    count = q ** n * len(consts)
    if count > caps.enumeration:
        raise CapExceeded(f"{count} affine functions exceed cap {caps.enumeration}")
    rows = [(cs, c) for c in consts for cs in product(range(q), repeat=n)]
    coeffs = np.array([r[0] for r in rows], dtype=np.int64)
    cvec = np.array([r[1] for r in rows], dtype=np.int64)
    tables = affine_tables(s, coeffs, cvec)
    deck_keys = batch_deck_keys(tables, q, n, caps)
    canon = [t.tobytes() for t in canonical_tables(tables, q, n, caps)]
    by_deck = defaultdict(set)
    by_class = defaultdict(set)
    for dk, ck in zip(deck_keys, canon):
        by_deck[dk].add(ck)
        by_class[ck].add(dk)
    deck_not_equiv = sum(1 for v in by_deck.values() if len(v) > 1)
    equiv_not_deck = sum(1 for v in by_class.values() if len(v) > 1)
    # (C_f, c) and the equivalence class must determine each other
    class_keys = defaultdict(set)
    key_classes = defaultdict(set)
    rep = {}
    for (cs, c), ck in zip(rows, canon):
        key = (Multiset.of(q, cs), c)
        class_keys[ck].add(key)
        key_classes[key].add(ck)
        rep.setdefault(ck, key)
    lemma_fail = sum(1 for v in class_keys.values() if len(v) > 1) + \
        sum(1 for v in key_classes.values() if len(v) > 1)
    # multiset route: deck f = deck g => equal constants, deck C_f = deck C_g,
    # and C_f = C_g once addition is associative
    assoc = s.add.profile.associative
    route_fail = 0
    for cks in by_deck.values():
        if len(cks) < 2:
            continue
        (m0, c0), *others = [rep[ck] for ck in sorted(cks)]
        d0 = cards(s.add, m0)
        for m, c in others:
            if c != c0 or cards(s.add, m) != d0 or (assoc and m != m0):
                route_fail += 1
    in_scope = n >= 4
    report = {
        "check": "weak-reconstructibility",
        "order": q,
        "n": n,
        "linear_only": linear_only,
        "functions": len(rows),
        "classes": len(by_class),
        "deck_groups": len(by_deck),
        "deck_equal_not_equivalent": deck_not_equiv,
        "equivalent_not_deck_equal": equiv_not_deck,
        "lemma_cf_violations": lemma_fail,
        "multiset_route_violations": route_fail if in_scope else None,
        "additive_associative": assoc,
        "claim_applies": in_scope,
        "falsified": bool(equiv_not_deck or lemma_fail or (in_scope and (deck_not_equiv or route_fail))),
    }
    if q == 2 and n == 3 and not linear_only:
        _, f = compile_affine(s, (1, 1, 1), 0)
        _, g = compile_affine(s, (1, 0, 0), 0)
        report["sharpness_pair"] = {
            "f": "x1 + x2 + x3", "g": "x1",
            "decks_equal": function_deck(f, caps) == function_deck(g, caps),
            "equivalent": canonicalize(f, caps) == canonicalize(g, caps),
        }
    return report


def bridge_check(s, coeffs, constant: int, caps=DEFAULT_CAPS) -> bool:
    f, _ = compile_affine(s, coeffs, constant)
    return affine_deck(f, caps).coherent
