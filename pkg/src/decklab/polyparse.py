"""Compile polynomial expressions in x1..xn to function tables.

Grammar: integer constants, variables ``x1``.. ``xn``, binary ``+ - *``,
unary ``-`` and ``**``/``^`` with a nonnegative integer exponent. Over a field
an integer constant k denotes k*1; over a bare semiring it denotes element k
and subtraction is unavailable.
"""

from __future__ import annotations

import ast
import re

import numpy as np

from .algebra import FiniteField, RightSemiring
from .errors import ParseError
from .functions import FiniteFunction, all_tuples

_VAR = re.compile(r"x(\d+)$")


def _parse(text: str) -> ast.Expression:
    try:
        return ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}", exc.lineno or 1, (exc.offset or 1) - 1) from None


def variables(text: str) -> set:
    tree = _parse(text)
    out = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.Name):
            m = _VAR.match(node.id)
            if not m or int(m.group(1)) < 1:
                raise ParseError(f"unknown name {node.id!r}", node.lineno, node.col_offset)
            out.add(int(m.group(1)))
    return out


def compile_polynomial(text: str, structure, n: int = None) -> FiniteFunction:
    if isinstance(structure, FiniteField):
        q = structure.q
        add, mul, neg = structure.add_table, structure.mul_table, structure.neg
        const = structure.from_int
        one = 1
    elif isinstance(structure, RightSemiring):
        q = structure.order
        add, mul, neg = structure.add.table, np.asarray(structure.mul), None
        one = structure.one

        def const(k):
            if not 0 <= k < q:
                raise ParseError(f"constant {k} is not an element", 1, 0)
            return k
    else:
        raise TypeError("structure must be a FiniteField or RightSemiring")
    used = variables(text)
    arity = n if n is not None else max(used, default=1)
    if used and max(used) > arity:
        raise ParseError(f"x{max(used)} exceeds declared arity {arity}", 1, 0)
    X = all_tuples(q, arity)
    size = q ** arity

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return np.full(size, const(node.value), dtype=np.int64)
        if isinstance(node, ast.Name):
            return X[:, int(_VAR.match(node.id).group(1)) - 1].astype(np.int64)
        if isinstance(node, ast.UnaryOp):
            val = ev(node.operand)
            if isinstance(node.op, ast.UAdd):
                return val
            if isinstance(node.op, ast.USub) and neg is not None:
                return neg[val]
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int) and e.value >= 0):
                    raise ParseError("exponent must be a nonnegative integer", e.lineno, e.col_offset)
                base = ev(node.left)
                out = np.full(size, one, dtype=np.int64)
                for _ in range(e.value):
                    out = mul[out, base]
                return out
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return add[left, right]
            if isinstance(node.op, ast.Mult):
                return mul[left, right]
            if isinstance(node.op, ast.Sub) and neg is not None:
                return add[left, neg[right]]
        raise ParseError(f"unsupported syntax {ast.dump(node)[:40]}",
                         getattr(node, "lineno", 1), getattr(node, "col_offset", 0))

    return FiniteFunction(q, q, arity, ev(_parse(text)))
