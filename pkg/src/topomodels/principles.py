"""Named propositional principles, loaded from a JSON manifest.

Each manifest entry is ``{"id", "schema", "class", "cite"}`` with an optional
``"arity_limit"`` for schemas that need more metavariables than the default
enumeration budget.  Metavariables are taken in sorted name order, so
``p, q, r, s`` line up with positional arguments.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Sequence

from .formula import Formula, atoms, parse, substitute
from .semantics import DEFAULT_ARITY_LIMIT

CLASSES = ("LEM-class", "WLEM-class", "DGP-class", "IPC-valid", "unclassified")
# classes whose members are claimed to agree on every space
EQUIVALENCE_CLASSES = CLASSES[:3]


@dataclass(frozen=True)
class Principle:
    id: str
    schema: Formula
    eq_class: str
    citation: str = ""
    arity_limit: int = DEFAULT_ARITY_LIMIT

    @property
    def metavariables(self) -> list[str]:
        return sorted(atoms(self.schema))

    @property
    def arity(self) -> int:
        return len(atoms(self.schema))

    def instantiate(self, args: Sequence[Formula | str]) -> Formula:
        return instantiate(self, args)


def _entry(raw: dict) -> Principle:
    cls = raw.get("class", "unclassified")
    if cls not in CLASSES:
        raise ValueError(f"{raw.get('id')}: unknown class {cls!r}")
    return Principle(
        id=raw["id"],
        schema=parse(raw["schema"]),
        eq_class=cls,
        citation=raw.get("cite", ""),
        arity_limit=int(raw.get("arity_limit", DEFAULT_ARITY_LIMIT)),
    )


def load_catalog(path: str | Path | None = None) -> list[Principle]:
    if path is None:
        text = resources.files(__package__).joinpath("data/principles.json").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    entries = [_entry(raw) for raw in json.loads(text)]
    ids = [p.id for p in entries]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate principle ids in catalog")
    return entries


@lru_cache(maxsize=1)
def _default() -> tuple[Principle, ...]:
    return tuple(load_catalog())


def catalog() -> list[Principle]:
    return list(_default())


def lookup(pid: str, entries: Sequence[Principle] | None = None) -> Principle:
    for p in entries if entries is not None else _default():
        if p.id == pid:
            return p
    raise KeyError(f"unknown principle {pid!r}")


def instantiate(principle: Principle, args: Sequence[Formula | str]) -> Formula:
    """Replace the metavariables positionally by ``args``."""
    names = principle.metavariables
    if len(args) != len(names):
        raise ValueError(f"{principle.id} takes {len(names)} arguments, got {len(args)}")
    binding = {m: parse(a) if isinstance(a, str) else a for m, a in zip(names, args)}
    return substitute(principle.schema, binding)


def equivalence_classes(entries: Sequence[Principle] | None = None) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {c: [] for c in EQUIVALENCE_CLASSES}
    for p in entries if entries is not None else _default():
        if p.eq_class in out:
            out[p.eq_class].append(p.id)
    return out
