"""Open-set semantics: truth values, forcing, schema validity, countermodels."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from . import kernels
from .formula import And, Atom, Bottom, Formula, Imp, Or, atoms, neg, parse
from .topology import FiniteSpace

DEFAULT_ARITY_LIMIT = 3

VALIDATES, WEAK, STRONG = "validates", "weak", "strong"


class ArityLimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Valuation:
    """Assignment of open sets (bit masks) to atom names on a fixed space."""

    space: FiniteSpace
    assignment: Mapping[str, int]

    def __post_init__(self):
        for name, u in self.assignment.items():
            if not self.space.is_open(u):
                raise ValueError(f"value of {name!r} is not an open set")

    @classmethod
    def from_labels(cls, space: FiniteSpace, assignment: Mapping[str, object]) -> "Valuation":
        return cls(space, {k: space.mask(v) for k, v in assignment.items()})

    def __getitem__(self, name):
        return self.assignment[name]

    def format(self) -> str:
        return " ".join(f"{k}↦{self.space.format_set(u)}" for k, u in self.assignment.items())

    def to_json(self) -> dict:
        return {k: self.space.labels(u) for k, u in self.assignment.items()}


@dataclass(frozen=True)
class CounterexampleReport:
    kind: str
    witness: Optional[Valuation] = None
    truth_set: Optional[int] = None


def _as_formula(f) -> Formula:
    return parse(f) if isinstance(f, str) else f


def _valuation_map(valuation) -> Mapping[str, int]:
    return valuation.assignment if isinstance(valuation, Valuation) else valuation


def eval(space: FiniteSpace, valuation, f) -> int:  # noqa: A001 - mirrors ⟦·⟧
    """Truth value ``⟦f⟧`` as an open bit mask."""
    f = _as_formula(f)
    v = _valuation_map(valuation)

    def go(g):
        if isinstance(g, Atom):
            try:
                return v[g.name]
            except KeyError:
                raise KeyError(f"atom {g.name!r} has no assigned value") from None
        if isinstance(g, Bottom):
            return 0
        a, b = go(g.left), go(g.right)
        if isinstance(g, And):
            return a & b
        if isinstance(g, Or):
            return a | b
        return space.interior_table[(space.full & ~a) | b]

    return go(f)


def forces(space: FiniteSpace, valuation, f) -> bool:
    return eval(space, valuation, f) == space.full


def entails(space: FiniteSpace, valuation, phi, psi) -> bool:
    """``⟦phi⟧ ⊆ ⟦psi⟧``, which coincides with forcing ``phi -> psi``."""
    return eval(space, valuation, phi) & ~eval(space, valuation, psi) == 0


def _schema_of(principle):
    """(formula, ordered metavariables, arity limit) for a principle or formula."""
    if hasattr(principle, "schema"):
        return principle.schema, principle.metavariables, principle.arity_limit
    f = _as_formula(principle)
    return f, sorted(atoms(f)), DEFAULT_ARITY_LIMIT


def _prepare(principle, arity_limit):
    f, names, own_limit = _schema_of(principle)
    limit = max(own_limit, arity_limit or DEFAULT_ARITY_LIMIT)
    if len(names) > limit:
        raise ArityLimitExceeded(f"schema has {len(names)} metavariables; limit is {limit}")
    return f, names


def _decode(space, names, number):
    """Assignment with mixed-radix ``number`` (first metavariable most significant)."""
    k = len(space.opens)
    values = []
    for _ in names:
        number, r = divmod(number, k)
        values.append(space.opens[r])
    return Valuation(space, dict(zip(names, reversed(values))))


def _scan(space, f, names, mode, backend):
    k = backend or kernels.ACTIVE
    prog = kernels.compile_formula(f, names)
    return k.scan_schema(prog, space.opens, space.interior_table, space.full, len(names), mode)


def valid_schema(space: FiniteSpace, principle, *, arity_limit: int | None = None,
                 backend: kernels.Kernels | None = None) -> bool:
    """True iff every assignment of opens to the metavariables forces the schema."""
    f, names = _prepare(principle, arity_limit)
    return _scan(space, f, names, 0, backend) < 0


def counterexample_kind(space: FiniteSpace, principle, *, witness_order: str = "first",
                        arity_limit: int | None = None,
                        backend: kernels.Kernels | None = None) -> CounterexampleReport:
    """Classify ``space`` as validating, weakly or strongly refuting the schema.

    Assignments are ordered lexicographically by position in ``space.opens``.
    A strong witness is the first assignment with empty truth value (so the
    negated instance is forced).  A weak witness is the first failing
    assignment, or with ``witness_order="smallest"`` one of minimal truth
    set size, ties going to the earlier assignment.
    """
    f, names = _prepare(principle, arity_limit)
    first_fail = _scan(space, f, names, 0, backend)
    if first_fail < 0:
        return CounterexampleReport(VALIDATES)
    strong = _scan(space, f, names, 1, backend)
    if strong >= 0:
        return CounterexampleReport(STRONG, _decode(space, names, strong), 0)
    if witness_order == "first":
        w = _decode(space, names, first_fail)
        return CounterexampleReport(WEAK, w, eval(space, w, f))
    if witness_order != "smallest":
        raise ValueError(f"unknown witness order {witness_order!r}")
    best = None
    for number in range(first_fail, len(space.opens) ** len(names)):
        w = _decode(space, names, number)
        value = eval(space, w, f)
        if value != space.full and (best is None or bin(value).count("1") < bin(best[1]).count("1")):
            best = (w, value)
    return CounterexampleReport(WEAK, *best)


def negation_forced(space: FiniteSpace, valuation, f) -> bool:
    return forces(space, valuation, neg(_as_formula(f)))
