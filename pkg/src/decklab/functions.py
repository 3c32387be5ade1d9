"""Finite functions A^n -> B as dense tables, identification minors,
essential arguments, canonical forms under argument permutation and decks.

Tuples are encoded in mixed radix with argument 1 the most significant digit,
so a table reshaped to ``(a,)*n`` is indexed ``table[x1, ..., xn]``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Optional

import numpy as np

from .config import DEFAULT_CAPS
from .errors import ArityCapExceeded, BadCouple, InvalidTable, PreconditionViolated


class FiniteFunction:
    __slots__ = ("a", "b", "n", "table")

    def __init__(self, a: int, b: int, n: int, table):
        t = np.asarray(table, dtype=np.int64).reshape(-1)
        if n < 1:
            raise InvalidTable("arity must be positive")
        if t.size != a ** n:
            raise InvalidTable(f"table length {t.size} != {a}**{n}")
        if t.size and (t.min() < 0 or t.max() >= b):
            raise InvalidTable("table values outside the codomain")
        t = t.copy()
        t.setflags(write=False)
        self.a, self.b, self.n, self.table = a, b, n, t

    @classmethod
    def from_callable(cls, a: int, b: int, n: int, fn) -> "FiniteFunction":
        args = all_tuples(a, n)
        return cls(a, b, n, [fn(*row) for row in args.tolist()])

    def __call__(self, *args) -> int:
        idx = 0
        for x in args:
            idx = idx * self.a + x
        return int(self.table[idx])

    def cube(self) -> np.ndarray:
        return self.table.reshape((self.a,) * self.n)

    def key(self) -> tuple:
        return (self.a, self.b, self.n, self.table.tobytes())

    def __eq__(self, other):
        return isinstance(other, FiniteFunction) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FiniteFunction(a={self.a}, b={self.b}, n={self.n}, table={self.table.tolist()})"

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "n": self.n, "table": self.table.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteFunction":
        return cls(obj["a"], obj["b"], obj["n"], obj["table"])


@lru_cache(maxsize=None)
def all_tuples(a: int, n: int) -> np.ndarray:
    """All of A^n in table order, shape (a**n, n)."""
    grid = np.indices((a,) * n).reshape(n, -1).T
    grid.setflags(write=False)
    return grid


def check_couple(n: int, couple) -> tuple:
    i, j = sorted(couple)
    if i == j or i < 1 or j > n:
        raise BadCouple(f"{couple} is not a 2-subset of [{n}]")
    return i, j


@lru_cache(maxsize=None)
def minor_index(a: int, n: int, i: int, j: int) -> np.ndarray:
    """Positions in an n-ary table read by the minor f_{i,j} (1-based i < j).

    f_I(x_1..x_{n-1}) = f(x_1, .., x_{j-1}, x_i, x_j, .., x_{n-1}): the value
    of x_i is written again at position j and later arguments shift right.
    """
    small = all_tuples(a, n - 1)
    src = [p if p < j else (i if p == j else p - 1) for p in range(1, n + 1)]
    cols = small[:, [s - 1 for s in src]]
    weights = a ** np.arange(n - 1, -1, -1)
    out = cols @ weights
    out.setflags(write=False)
    return out


def identification_minor(f: FiniteFunction, couple) -> FiniteFunction:
    if f.n < 2:
        raise PreconditionViolated("identification minors need arity >= 2")
    i, j = check_couple(f.n, couple)
    return FiniteFunction(f.a, f.b, f.n - 1, f.table[minor_index(f.a, f.n, i, j)])


def essential_args(f: FiniteFunction) -> frozenset:
    """1-based indices of essential arguments."""
    cube = f.cube()
    out = set()
    for ax in range(f.n):
        first = np.take(cube, [0], axis=ax)
        if np.any(cube != first):
            out.add(ax + 1)
    return frozenset(out)


def batch_essential(tables: np.ndarray, a: int, n: int) -> np.ndarray:
    """(B, n) boolean: argument k+1 essential for function b."""
    cube = tables.reshape((tables.shape[0],) + (a,) * n)
    out = np.empty((tables.shape[0], n), dtype=bool)
    for ax in range(n):
        first = np.take(cube, [0], axis=ax + 1)
        out[:, ax] = (cube != first).reshape(tables.shape[0], -1).any(axis=1)
    return out


def permute_args(f: FiniteFunction, sigma) -> FiniteFunction:
    """g(x_1..x_n) = f(x_sigma(1), .., x_sigma(n)); sigma is 0-based."""
    return FiniteFunction(f.a, f.b, f.n, permuted_tables(f.table[None], f.a, f.n, sigma)[0])


def permuted_tables(tables: np.ndarray, a: int, n: int, sigma) -> np.ndarray:
    # g[x] = f[x_sigma]: cube axis k of f is read from axis sigma^-1 ... realized by transpose
    cube = tables.reshape((tables.shape[0],) + (a,) * n)
    inv = np.argsort(sigma)
    return np.transpose(cube, [0] + [1 + int(k) for k in inv]).reshape(tables.shape[0], -1)


def _lex_less(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Row-wise x < y lexicographically for 2-D arrays."""
    diff = x != y
    any_diff = diff.any(axis=1)
    first = diff.argmax(axis=1)
    rows = np.arange(x.shape[0])
    return any_diff & (x[rows, first] < y[rows, first])


def canonical_tables(tables: np.ndarray, a: int, n: int, caps=DEFAULT_CAPS) -> np.ndarray:
    """Lexicographically least table over all n! argument permutations, per row."""
    if n > caps.arity:
        raise ArityCapExceeded(f"arity {n} exceeds cap {caps.arity}")
    tables = np.asarray(tables, dtype=np.int64).reshape(len(tables), -1)
    best = tables.copy()
    for sigma in permutations(range(n)):
        cand = permuted_tables(tables, a, n, sigma)
        less = _lex_less(cand, best)
        best[less] = cand[less]
    return best


@dataclass(frozen=True)
class CanonicalClass:
    domain_size: int
    codomain_size: int
    arity: int
    canonical_table: tuple

    def as_function(self) -> FiniteFunction:
        return FiniteFunction(self.domain_size, self.codomain_size, self.arity, self.canonical_table)


def canonicalize(f: FiniteFunction, caps=DEFAULT_CAPS) -> CanonicalClass:
    best = canonical_tables(f.table[None], f.a, f.n, caps)[0]
    return CanonicalClass(f.a, f.b, f.n, tuple(int(x) for x in best))


def equivalent(f: FiniteFunction, g: FiniteFunction, caps=DEFAULT_CAPS) -> bool:
    return f.n == g.n and f.a == g.a and canonicalize(f, caps) == canonicalize(g, caps)


@dataclass(frozen=True)
class FunctionDeck:
    classes: tuple       # sorted ((CanonicalClass, multiplicity), ...)
    source_arity: int

    @classmethod
    def from_classes(cls, classes, n: int) -> "FunctionDeck":
        return cls(tuple(sorted(Counter(classes).items(), key=lambda kv: kv[0].canonical_table)), n)

    def total(self) -> int:
        return sum(m for _, m in self.classes)

    def to_json(self) -> dict:
        return {"n": self.source_arity,
                "cards": [{"table": list(c.canonical_table), "mult": m} for c, m in self.classes]}


def function_deck(f: FiniteFunction, caps=DEFAULT_CAPS) -> FunctionDeck:
    if f.n < 2:
        raise PreconditionViolated("decks need arity >= 2")
    return FunctionDeck.from_classes(
        [canonicalize(identification_minor(f, c), caps) for c in combinations(range(1, f.n + 1), 2)],
        f.n)


def batch_deck_keys(tables: np.ndarray, a: int, n: int, caps=DEFAULT_CAPS) -> list:
    """Hashable deck key per row: sorted canonical minor tables as bytes."""
    tables = np.asarray(tables, dtype=np.int64)
    per_minor = []
    for i, j in combinations(range(1, n + 1), 2):
        minors = tables[:, minor_index(a, n, i, j)]
        per_minor.append(canonical_tables(minors, a, n - 1, caps).astype(np.uint8))
    keys = []
    for b in range(tables.shape[0]):
        keys.append(tuple(sorted(m[b].tobytes() for m in per_minor)))
    return keys


def verify_willard(f: FiniteFunction) -> Optional[tuple]:
    """A couple I whose minor keeps at least n-2 essential arguments; None
    would contradict the lemma."""
    if f.n <= f.a:
        raise PreconditionViolated(f"needs n > |A| (n={f.n}, |A|={f.a})")
    if len(essential_args(f)) != f.n:
        raise PreconditionViolated("f must depend on all of its arguments")
    for c in combinations(range(1, f.n + 1), 2):
        if len(essential_args(identification_minor(f, c))) >= f.n - 2:
            return c
    return None


def willard_sweep(tables: np.ndarray, a: int, n: int) -> dict:
    """Vectorized Willard check for a batch; rows not depending on every
    argument are skipped."""
    full = batch_essential(tables, a, n).all(axis=1)
    sub = tables[full]
    found = np.zeros(len(sub), dtype=bool)
    for i, j in combinations(range(1, n + 1), 2):
        ess = batch_essential(sub[:, minor_index(a, n, i, j)], a, n - 1).sum(axis=1)
        found |= ess >= n - 2
    return {"checked": int(full.sum()), "violations": np.nonzero(full)[0][~found].tolist()}


def projection(a: int, n: int, k: int) -> FiniteFunction:
    return FiniteFunction(a, a, n, all_tuples(a, n)[:, k - 1])


def constant(a: int, b: int, n: int, value: int) -> FiniteFunction:
    return FiniteFunction(a, b, n, np.full(a ** n, value))
