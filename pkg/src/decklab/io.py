"""File formats and built-in structure aliases."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .algebra import Groupoid, RightSemiring, bounded_lattice2, cyclic_group, make_gf, make_semiring
from .errors import ParseError
from .functions import FiniteFunction


@dataclass
class Structure:
    groupoid: Groupoid
    semiring: Optional[RightSemiring] = None
    name: str = ""


def _alias(name: str) -> Optional[Structure]:
    if name in ("z2", "z3", "z4"):
        return Structure(cyclic_group(int(name[1])), None, name)
    if name in ("gf2", "gf3", "gf4"):
        q = int(name[2])
        field = make_gf(2, 2) if q == 4 else make_gf(q)
        return Structure(field.semiring.add, field.semiring, name)
    if name == "lattice2":
        s = bounded_lattice2()
        return Structure(s.add, s, name)
    return None


ALIASES = ("z2", "z3", "z4", "gf2", "gf3", "gf4", "lattice2")


def structure_from_json(obj: dict, name: str = "") -> Structure:
    try:
        order = obj["order"]
        add = obj["add"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"structure is missing field {exc}") from None
    g = Groupoid(add)
    if g.order != order:
        raise ParseError(f"declared order {order} != table order {g.order}")
    s = None
    if "mul" in obj:
        s = make_semiring(g, obj["mul"], obj.get("zero", 0), obj.get("one", 1))
    return Structure(g, s, name)


def structure_to_json(st: Structure) -> dict:
    out = {"order": st.groupoid.order, "add": [list(r) for r in st.groupoid.rows()]}
    if st.semiring is not None:
        out["mul"] = [list(r) for r in st.semiring.mul_rows]
        out["zero"] = st.semiring.zero
        out["one"] = st.semiring.one
    return out


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None


def load_structure(ref: str) -> Structure:
    """Alias name, or path to a structure JSON file. ``z2.json`` falls back to
    the ``z2`` alias when no such file exists."""
    st = _alias(ref)
    if st is not None:
        return st
    path = Path(ref)
    if not path.exists():
        st = _alias(path.stem) if path.suffix == ".json" else None
        if st is not None:
            return st
    return structure_from_json(_load_json(ref), ref)


def load_function(path: str) -> FiniteFunction:
    obj = _load_json(path)
    try:
        return FiniteFunction.from_json(obj)
    except KeyError as exc:
        raise ParseError(f"function file is missing field {exc}") from None


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))
