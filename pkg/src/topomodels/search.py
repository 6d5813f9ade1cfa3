"""Countermodel and separation search over canonical finite spaces.

Spaces are visited by ascending point count, then ascending canonical code;
witness valuations follow the assignment order of
:func:`semantics.counterexample_kind`.  Every answer is therefore the same
regardless of the number of worker processes.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from . import principles as _principles
from .principles import Principle
from .semantics import STRONG, VALIDATES, Valuation, counterexample_kind, valid_schema
from .topology import DEFAULT_CAP, FiniteSpace, canonical_codes, check_cap, space_from_code


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("TOPOMODELS_JOBS", "1")))
    except ValueError:
        return 1


@lru_cache(maxsize=None)
def _codes(n: int) -> tuple[bytes, ...]:
    return tuple(canonical_codes(n))


def canonical_spaces(max_points: int, *, min_points: int = 1,
                     cap: int = DEFAULT_CAP) -> Iterator[FiniteSpace]:
    check_cap(max_points, cap)
    for n in range(min_points, max_points + 1):
        for code in _codes(n):
            yield space_from_code(code)


def _map(fn, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _resolve(ids: Iterable[str], entries) -> list[Principle]:
    return [_principles.lookup(i, entries) for i in ids]


@dataclass
class SeparationResult:
    space: Optional[FiniteSpace]
    validated: list[str] = field(default_factory=list)
    refuted: list[tuple[str, Valuation, int]] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.space is not None

    def to_json(self) -> dict:
        out = {"found": self.found, "stats": self.stats}
        if self.space is None:
            return out
        sp = self.space
        out.update(
            n=sp.n,
            points=list(sp.points),
            opens=[sp.labels(u) for u in sp.opens],
            validated=list(self.validated),
            witnesses={pid: w.to_json() for pid, w, _ in self.refuted},
            truth_sets={pid: sp.labels(t) for pid, _, t in self.refuted},
        )
        return out


def _separates(args) -> bool:
    space, validate, refute, strong = args
    if not all(valid_schema(space, p) for p in validate):
        return False
    for p in refute:
        if strong:
            if counterexample_kind(space, p).kind != STRONG:
                return False
        elif valid_schema(space, p):
            return False
    return True


def find_separating_model(validate: Iterable[str], refute: Iterable[str], max_points: int, *,
                          strong: bool = False, entries: Sequence[Principle] | None = None,
                          jobs: int = 1, cap: int = DEFAULT_CAP) -> SeparationResult:
    """Smallest canonical space validating every ``validate`` id and refuting every ``refute`` id.

    Refuting means a weak counterexample, or a strong one with ``strong``.
    ``result.found`` is false when no space up to ``max_points`` qualifies.
    """
    check_cap(max_points, cap)
    validate = _resolve(validate, entries)
    refute = _resolve(refute, entries)
    examined = 0
    for n in range(1, max_points + 1):
        spaces = [space_from_code(c) for c in _codes(n)]
        flags = _map(_separates, [(s, validate, refute, strong) for s in spaces], jobs)
        for space, ok in zip(spaces, flags):
            examined += 1
            if ok:
                refuted = []
                for p in refute:
                    report = counterexample_kind(space, p)
                    refuted.append((p.id, report.witness, report.truth_set))
                return SeparationResult(
                    space, [p.id for p in validate], refuted,
                    {"spaces_examined": examined, "points_reached": n},
                )
    return SeparationResult(None, stats={"spaces_examined": examined,
                                         "points_reached": max_points})


@dataclass(frozen=True)
class Profile:
    code: bytes
    ids: tuple[str, ...]
    vector: tuple[bool, ...]

    def as_dict(self) -> dict[str, bool]:
        return dict(zip(self.ids, self.vector))


def _row(args) -> tuple[bool, ...]:
    space, entries = args
    return tuple(valid_schema(space, p) for p in entries)


def profile(space: FiniteSpace, entries: Sequence[Principle] | None = None) -> Profile:
    entries = list(entries) if entries is not None else _principles.catalog()
    return Profile(space.canonical_form(), tuple(p.id for p in entries), _row((space, entries)))


# --------------------------------------------------------------------------
# Survey

@dataclass
class SurveyResult:
    max_points: int
    ids: list[str]
    # (a, b) -> None (no model validates a and refutes b) or a SeparationResult
    separations: dict[tuple[str, str], Optional[SeparationResult]]
    spaces_examined: int

    def implies(self, a: str, b: str) -> bool:
        return self.separations[(a, b)] is None

    def hasse_edges(self) -> list[tuple[str, str]]:
        """Transitive reduction of the empirical implication order.

        Mutually implying entries are collapsed onto the first of them.
        """
        ids = self.ids
        rep = {}
        for a in ids:
            rep[a] = next(b for b in ids if b == a or (self.implies(a, b) and self.implies(b, a)))
        nodes = [a for a in ids if rep[a] == a]
        above = {(a, b) for a in nodes for b in nodes if a != b and self.implies(a, b)}
        return [(a, b) for (a, b) in sorted(above, key=lambda e: (ids.index(e[0]), ids.index(e[1])))
                if not any((a, c) in above and (c, b) in above for c in nodes)]

    def to_dot(self) -> str:
        label = f"no countermodel, n<={self.max_points}"
        lines = ["digraph implications {", "  rankdir=TB;"]
        lines += [f'  "{a}";' for a in self.ids]
        lines += [f'  "{a}" -> "{b}" [label="{label}"];' for a, b in self.hasse_edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        pairs = []
        for (a, b), sep in self.separations.items():
            entry = {"validate": a, "refute": b, "implication_consistent": sep is None}
            if sep is not None:
                entry["witness"] = sep.to_json()
            pairs.append(entry)
        return {
            "max_points": self.max_points,
            "principles": self.ids,
            "spaces_examined": self.spaces_examined,
            "pairs": pairs,
            "hasse": [list(e) for e in self.hasse_edges()],
        }


def survey_representatives(entries: Sequence[Principle]) -> list[Principle]:
    reps = []
    for cls in ("LEM-class", "WLEM-class", "DGP-class"):
        members = [p for p in entries if p.eq_class == cls]
        if members:
            reps.append(members[0])
    reps += [p for p in entries if p.eq_class == "unclassified"]
    return reps


def survey(max_points: int, *, entries: Sequence[Principle] | None = None, jobs: int = 1,
           cap: int = DEFAULT_CAP) -> SurveyResult:
    """Separate every ordered pair of class representatives on spaces up to ``max_points``."""
    check_cap(max_points, cap)
    entries = list(entries) if entries is not None else _principles.catalog()
    reps = survey_representatives(entries)
    spaces = list(canonical_spaces(max_points, cap=cap))
    rows = _map(_row, [(s, reps) for s in spaces], jobs)
    ids = [p.id for p in reps]
    separations = {}
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            if i == j:
                continue
            hit = next((k for k, row in enumerate(rows) if row[i] and not row[j]), None)
            if hit is None:
                separations[(a.id, b.id)] = None
                continue
            space = spaces[hit]
            report = counterexample_kind(space, b)
            separations[(a.id, b.id)] = SeparationResult(
                space, [a.id], [(b.id, report.witness, report.truth_set)],
                {"spaces_examined": hit + 1, "points_reached": space.n},
            )
    return SurveyResult(max_points, ids, separations, len(spaces))


# --------------------------------------------------------------------------
# Class verification

@dataclass
class Violation:
    space: FiniteSpace
    eq_class: str
    results: dict[str, bool]
    # failing member -> refuting assignment
    witnesses: dict[str, Valuation]

    def to_json(self) -> dict:
        return {
            "class": self.eq_class,
            "points": list(self.space.points),
            "opens": [self.space.labels(u) for u in self.space.opens],
            "results": self.results,
            "witnesses": {k: w.to_json() for k, w in self.witnesses.items()},
        }


@dataclass
class ClassReport:
    max_points: int
    spaces_checked: int
    classes: dict[str, list[str]]
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "max_points": self.max_points,
            "spaces_checked": self.spaces_checked,
            "classes": self.classes,
            "violations": [v.to_json() for v in self.violations],
        }


def verify_equivalence_classes(max_points: int, *, entries: Sequence[Principle] | None = None,
                               jobs: int = 1, cap: int = DEFAULT_CAP) -> ClassReport:
    """Check that class members agree on every canonical space, and that
    IPC-valid entries hold everywhere."""
    check_cap(max_points, cap)
    entries = list(entries) if entries is not None else _principles.catalog()
    groups = _principles.equivalence_classes(entries)
    checked = [p for p in entries if p.eq_class in groups or p.eq_class == "IPC-valid"]
    spaces = list(canonical_spaces(max_points, cap=cap))
    rows = _map(_row, [(s, checked) for s in spaces], jobs)
    violations = []
    for space, row in zip(spaces, rows):
        result = {p.id: ok for p, ok in zip(checked, row)}
        buckets = [(cls, ids) for cls, ids in groups.items() if ids]
        buckets.append(("IPC-valid", [p.id for p in checked if p.eq_class == "IPC-valid"]))
        for cls, ids in buckets:
            values = {i: result[i] for i in ids}
            bad = (len(set(values.values())) > 1 if cls != "IPC-valid"
                   else not all(values.values()))
            if bad:
                witnesses = {i: counterexample_kind(space, _principles.lookup(i, entries)).witness
                             for i, ok in values.items() if not ok}
                violations.append(Violation(space, cls, values, witnesses))
    return ClassReport(max_points, len(spaces), groups, violations)
