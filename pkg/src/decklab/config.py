"""Size caps shared by every exhaustive routine."""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import ParseError


@dataclass(frozen=True)
class Caps:
    enumeration: int = 200_000   # multisets / functions enumerated per call
    axiom_order: int = 8         # order cap for ternary-quantified axiom checks
    field_order: int = 64        # largest q with dense tables
    arity: int = 7               # n! canonicalization
    polynomial: int = 4096       # q**n for canonical polynomials
    search_order: int = 4        # exhaustive Cayley-table enumeration

    def replace(self, **kw) -> "Caps":
        return dataclasses.replace(self, **kw)


def caps_from_env(env=None) -> Caps:
    """Read DECKLAB_CAP: a bare integer sets the enumeration cap; ``key=value``
    pairs separated by commas set individual caps."""
    env = os.environ if env is None else env
    raw = env.get("DECKLAB_CAP", "").strip()
    if not raw:
        return Caps()
    if raw.isdigit():
        return Caps(enumeration=int(raw))
    values = {}
    names = {f.name for f in dataclasses.fields(Caps)}
    for item in raw.split(","):
        key, _, val = item.partition("=")
        key = key.strip()
        if key not in names or not val.strip().isdigit():
            raise ParseError(f"bad DECKLAB_CAP entry {item!r}")
        values[key] = int(val)
    return Caps(**values)


DEFAULT_CAPS = Caps()
