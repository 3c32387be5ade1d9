"""Finite commutative groupoids, nonassociative right semirings and finite fields.

Elements are always the dense indices ``0..order-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .config import DEFAULT_CAPS
from .errors import (
    CapExceeded,
    InvalidTable,
    NotCommutative,
    NotCommutativeMonoid,
    NotPrime,
    OutOfRange,
    RightAnnihilationViolation,
    RightDistributivityViolation,
    RightIdentityViolation,
)


def _as_table(rows) -> np.ndarray:
    arr = np.asarray(rows)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InvalidTable(f"table must be a non-empty square array, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise InvalidTable("table entries must be integers")
    order = arr.shape[0]
    bad = np.argwhere((arr < 0) | (arr >= order))
    if len(bad):
        i, j = map(int, bad[0])
        raise OutOfRange(i, j, int(arr[i, j]), order)
    out = arr.astype(np.int64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class GroupoidProfile:
    associative: bool
    left_alternative: bool
    right_alternative: bool
    neutral_element: Optional[int]
    cancellative: bool
    boolean_group: bool
    pairwise_sum_injective: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


class Groupoid:
    """A finite commutative groupoid given by its Cayley table."""

    def __init__(self, table):
        t = _as_table(table)
        asym = np.argwhere(t != t.T)
        if len(asym):
            i, j = sorted(map(int, asym[0]))
            raise NotCommutative(i, j)
        self.table = t
        self.order = t.shape[0]
        self._rows = tuple(tuple(int(x) for x in row) for row in t)

    def add(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def rows(self) -> tuple:
        return self._rows

    @cached_property
    def profile(self) -> GroupoidProfile:
        return compute_profile(self)

    def __eq__(self, other):
        return isinstance(other, Groupoid) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"Groupoid({[list(r) for r in self._rows]})"


def make_groupoid(table) -> Groupoid:
    return Groupoid(table)


def compute_profile(g: Groupoid) -> GroupoidProfile:
    """Every flag is decided by an exhaustive loop over element tuples."""
    t = g.table
    n = g.order
    idx = np.arange(n)
    # t[t[x, y], z] vs t[x, t[y, z]] over all triples
    left = t[t[:, :, None], idx[None, None, :]]
    right = t[idx[:, None, None], t[None, :, :]]
    associative = bool(np.array_equal(left, right))
    diag = t[idx, idx]
    # x(xy) = (xx)y  and  y(xx) = (yx)x
    left_alt = bool(np.array_equal(t[idx[:, None], t], t[diag[:, None], idx[None, :]]))
    right_alt = bool(np.array_equal(t[idx[None, :], diag[:, None]], t[t.T, idx[:, None]]))
    neutral = None
    for e in range(n):
        if np.array_equal(t[e], idx):
            neutral = e
            break
    cancellative = all(len(set(row)) == n for row in g.rows())
    boolean_group = (
        associative and neutral is not None and bool(np.all(diag == neutral))
    )
    sums = {}
    injective = True
    for a in range(n):
        for b in range(a, n):
            s = g.add(a, b)
            if s in sums:
                injective = False
                break
            sums[s] = (a, b)
        if not injective:
            break
    return GroupoidProfile(
        associative=associative,
        left_alternative=left_alt,
        right_alternative=right_alt,
        neutral_element=neutral,
        cancellative=cancellative,
        boolean_group=boolean_group,
        pairwise_sum_injective=injective,
    )


def profile(g: Groupoid) -> GroupoidProfile:
    return g.profile


def cyclic_group(order: int) -> Groupoid:
    idx = np.arange(order)
    return Groupoid((idx[:, None] + idx[None, :]) % order)


@dataclass(frozen=True, eq=False)
class RightSemiring:
    add: Groupoid
    mul: np.ndarray
    zero: int
    one: int
    cancellative: bool

    @property
    def order(self) -> int:
        return self.add.order

    @cached_property
    def mul_rows(self) -> tuple:
        return tuple(tuple(int(x) for x in row) for row in self.mul)

    def times(self, a: int, b: int) -> int:
        return self.mul_rows[a][b]

    def plus(self, a: int, b: int) -> int:
        return self.add.add(a, b)


def make_semiring(add_table, mul_table, zero: int, one: int, caps=DEFAULT_CAPS) -> RightSemiring:
    g = add_table if isinstance(add_table, Groupoid) else Groupoid(add_table)
    mul = _as_table(mul_table)
    n = g.order
    if mul.shape[0] != n:
        raise InvalidTable(f"mul table has order {mul.shape[0]}, add table has order {n}")
    if n > caps.axiom_order:
        raise CapExceeded(f"order {n} exceeds axiom-check cap {caps.axiom_order}")
    if not (0 <= zero < n and 0 <= one < n):
        raise InvalidTable("zero/one must be elements")
    prof = g.profile
    if not prof.associative:
        a, b, c = _assoc_witness(g)
        raise NotCommutativeMonoid((a, b, c))
    if prof.neutral_element != zero or any(g.add(zero, a) != a for a in range(n)):
        bad = next((a for a in range(n) if g.add(zero, a) != a), zero)
        raise NotCommutativeMonoid((zero, bad))
    for a in range(n):
        if mul[a, one] != a:
            raise RightIdentityViolation((a, one))
    for a, b, c in product(range(n), repeat=3):
        if mul[g.add(a, b), c] != g.add(int(mul[a, c]), int(mul[b, c])):
            raise RightDistributivityViolation((a, b, c))
    for a in range(n):
        if mul[a, zero] != zero:
            raise RightAnnihilationViolation((a, zero))
    return RightSemiring(g, mul, zero, one, prof.cancellative)


def _assoc_witness(g: Groupoid):
    for a, b, c in product(range(g.order), repeat=3):
        if g.add(g.add(a, b), c) != g.add(a, g.add(b, c)):
            return a, b, c
    return (0, 0, 0)


# --- polynomials over Z_p, coefficient lists low degree first --------------

def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list:
    a = _trim([x % p for x in a])
    m = _trim([x % p for x in m])
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mc) % p
        _trim(a)
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _monic_polys(p: int, degree: int):
    """Monic polynomials of the given degree in increasing integer encoding."""
    for code in range(p ** degree):
        low = [(code // p ** i) % p for i in range(degree)]
        yield low + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim(list(poly))
    k = len(poly) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for q in _monic_polys(p, d):
            if not poly_mod(poly, q, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> list:
    """Smallest monic irreducible of degree k, ordering polynomials by the
    integer sum(c_i * p**i)."""
    for poly in _monic_polys(p, k):
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("every degree has an irreducible polynomial")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True, eq=False)
class FiniteField:
    p: int
    k: int
    q: int
    reduction_polynomial: tuple
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    semiring: RightSemiring = field(repr=False)

    @property
    def order(self) -> int:
        return self.q

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add_table == 0, axis=1)

    @cached_property
    def inv(self) -> np.ndarray:
        out = np.argmax(self.mul_table == 1, axis=1)
        out[0] = 0
        return out

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg]

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def from_int(self, c: int) -> int:
        """Image of the integer c under Z -> F (prime subfield)."""
        return c % self.p

    @property
    def name(self) -> str:
        return f"GF({self.q})"

    def __repr__(self):
        return f"FiniteField(p={self.p}, k={self.k}, poly={list(self.reduction_polynomial)})"


def make_gf(p: int, k: int = 1, caps=DEFAULT_CAPS) -> FiniteField:
    """GF(p**k) with explicit tables. Element index = sum(c_i * p**i) for the
    residue polynomial sum(c_i x**i)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("exponent must be positive")
    q = p ** k
    if q > caps.field_order:
        raise CapExceeded(f"q = {q} exceeds field cap {caps.field_order}")
    poly = smallest_irreducible(p, k)
    digits = [[(e // p ** i) % p for i in range(k)] for e in range(q)]

    def encode(c):
        c = list(c) + [0] * (k - len(c))
        return sum(x * p ** i for i, x in enumerate(c[:k]))

    add = np.array([[encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                     for b in range(q)] for a in range(q)], dtype=np.int64)
    if k == 1:
        mul = np.array([[a * b % p for b in range(q)] for a in range(q)], dtype=np.int64)
    else:
        mul = np.array([[encode(poly_mod(poly_mul(_trim(list(digits[a])), _trim(list(digits[b])), p), poly, p))
                         for b in range(q)] for a in range(q)], dtype=np.int64)
    add.setflags(write=False)
    mul.setflags(write=False)
    g = Groupoid(add)
    semiring = RightSemiring(g, mul, 0, 1, True)
    return FiniteField(p, k, q, tuple(poly), add, mul, semiring)


def parse_field_spec(text: str, caps=DEFAULT_CAPS) -> FiniteField:
    """``"2_2"`` -> GF(4); ``"3"`` -> GF(3)."""
    p, _, k = text.partition("_")
    return make_gf(int(p), int(k) if k else 1, caps)


def bounded_lattice2() -> RightSemiring:
    """({0,1}; max, min)."""
    return make_semiring([[0, 1], [1, 1]], [[0, 0], [0, 1]], 0, 1)
