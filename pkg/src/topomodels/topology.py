"""Finite topological spaces as Heyting algebras of open sets.

Subsets of an ``n``-point space are bit masks: bit ``i`` stands for the
point at index ``i`` of :attr:`FiniteSpace.points`.  External point labels
(ints or strings) are only used at the edges, for construction and display.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence

from . import kernels

DEFAULT_CAP = 6
HARD_CAP = 7


class CapExceeded(ValueError):
    pass


def check_cap(n: int, cap: int = DEFAULT_CAP) -> None:
    if cap > HARD_CAP:
        raise CapExceeded(f"point cap {cap} exceeds the hard limit {HARD_CAP}")
    if n > cap:
        raise CapExceeded(f"{n} points exceeds the point cap {cap}")


def bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """A finite set of labelled points with a topology given by its open sets.

    ``opens`` is kept sorted and deduplicated.  Construct through
    :func:`from_subbase`, :func:`from_opens` or :func:`from_preorder`, which
    validate; the raw constructor trusts its arguments.
    """

    points: tuple
    opens: tuple[int, ...]
    interior_table: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    def __eq__(self, other):
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self.points == other.points and self.opens == other.opens

    def __hash__(self):
        return hash((self.points, self.opens))

    # -- labels ------------------------------------------------------------

    def index(self, label) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            pass
        # command-line and JSON labels arrive as strings
        for i, p in enumerate(self.points):
            if str(p) == str(label):
                return i
        raise KeyError(f"unknown point label {label!r}")

    def mask(self, labels: Iterable) -> int:
        m = 0
        for label in labels:
            m |= 1 << self.index(label)
        return m

    def labels(self, mask: int) -> list:
        return [self.points[i] for i in bits(mask)]

    def format_set(self, mask: int) -> str:
        return "{" + ",".join(str(x) for x in self.labels(mask)) + "}"

    # -- lattice -----------------------------------------------------------

    def is_open(self, mask: int) -> bool:
        return mask in self._open_set

    @property
    def _open_set(self) -> frozenset:
        cached = self.__dict__.get("_opens_frozen")
        if cached is None:
            cached = frozenset(self.opens)
            object.__setattr__(self, "_opens_frozen", cached)
        return cached

    def interior(self, mask: int) -> int:
        if mask & ~self.full:
            raise ValueError("subset is not contained in the space")
        return self.interior_table[mask]

    def _require_open(self, mask):
        if not self.is_open(mask):
            raise ValueError(f"{self.format_set(mask)} is not open")

    def heyting_imp(self, u: int, v: int) -> int:
        """Relative pseudo-complement ``Int(U' | V)``."""
        self._require_open(u)
        self._require_open(v)
        return self.interior_table[(self.full & ~u) | v]

    def pseudo_complement(self, u: int) -> int:
        return self.heyting_imp(u, 0)

    # -- structure ---------------------------------------------------------

    def specialization_preorder(self) -> tuple[int, ...]:
        """Row ``i`` is the mask of points ``y`` with ``i ⊑ y``.

        ``x ⊑ y`` iff every open containing ``x`` also contains ``y``; row
        ``i`` is therefore the smallest open neighbourhood of ``i``.
        """
        rows = []
        for i in range(self.n):
            row = self.full
            for u in self.opens:
                if (u >> i) & 1:
                    row &= u
            rows.append(row)
        return tuple(rows)

    def canonical_form(self, backend: kernels.Kernels | None = None) -> bytes:
        return canonical_code(self.specialization_preorder(), self.n, backend)

    def relabel(self, perm: Sequence[int]) -> "FiniteSpace":
        """Move the point at index ``i`` to index ``perm[i]`` (labels travel along)."""
        n = self.n
        points = [None] * n
        for i, j in enumerate(perm):
            points[j] = self.points[i]

        def move(m):
            out = 0
            for i in bits(m):
                out |= 1 << perm[i]
            return out

        return _make(tuple(points), {move(u) for u in self.opens})

    def to_json(self) -> dict:
        return {"points": list(self.points), "opens": [self.labels(u) for u in self.opens]}


def _interior_table(n: int, opens: Iterable[int]) -> tuple[int, ...]:
    table = [0] * (1 << n)
    opens = sorted(opens)
    for a in range(1 << n):
        acc = 0
        for u in opens:
            if u & ~a == 0:
                acc |= u
        table[a] = acc
    return tuple(table)


def _make(points: tuple, opens: Iterable[int]) -> FiniteSpace:
    ordered = tuple(sorted(set(opens)))
    return FiniteSpace(points, ordered, _interior_table(len(points), ordered))


def is_topology(n_or_points, opens: Iterable[int]) -> bool:
    """True iff ``opens`` holds the empty set and the whole space and is
    closed under pairwise union and intersection."""
    n = n_or_points if isinstance(n_or_points, int) else len(n_or_points)
    full = (1 << n) - 1
    family = set(opens)
    if 0 not in family or full not in family:
        return False
    if any(u & ~full for u in family):
        return False
    for u in family:
        for v in family:
            if (u | v) not in family or (u & v) not in family:
                return False
    return True


def _normalize_points(points, subsets):
    if points is None:
        seen = {}
        for s in subsets:
            for x in s:
                seen.setdefault(x)
        try:
            points = sorted(seen)
        except TypeError:
            points = list(seen)
    points = tuple(points)
    if len(set(points)) != len(points):
        raise ValueError("duplicate point labels")
    return points


def _to_mask(points, labels) -> int:
    m = 0
    for label in labels:
        try:
            i = points.index(label)
        except ValueError:
            raise KeyError(f"unknown point label {label!r}") from None
        m |= 1 << i
    return m


def from_subbase(subbase: Iterable[Iterable[Hashable]], points: Sequence | None = None,
                 *, cap: int = DEFAULT_CAP) -> FiniteSpace:
    """Smallest topology on ``points`` containing every member of ``subbase``.

    Without ``points`` the space is the union of the subbase.  Intersections
    are closed to a fixpoint first, then unions, each with the same
    grow-until-stable loop.
    """
    subbase = [list(s) for s in subbase]
    points = _normalize_points(points, subbase)
    check_cap(len(points), cap)
    full = (1 << len(points)) - 1
    family = {_to_mask(points, s) for s in subbase} | {full}
    for combine in (int.__and__, int.__or__):
        size, previous = len(family), 0
        while size > previous:
            family = {combine(a, b) for a in family for b in family}
            previous, size = size, len(family)
    family.add(0)
    return _make(points, family)


def from_opens(opens: Iterable[Iterable[Hashable]], points: Sequence | None = None,
               *, cap: int = DEFAULT_CAP) -> FiniteSpace:
    """Space from an explicit family of open sets, which is validated, not closed."""
    opens = [list(u) for u in opens]
    points = _normalize_points(points, opens)
    check_cap(len(points), cap)
    masks = {_to_mask(points, u) for u in opens}
    if not is_topology(len(points), masks):
        raise ValueError("the given open sets do not form a topology")
    return _make(points, masks)


def from_preorder(rows: Sequence[int], points: Sequence | None = None) -> FiniteSpace:
    """Space whose opens are the up-closed sets of a preorder given by rows."""
    n = len(rows)
    points = tuple(points) if points is not None else tuple(range(1, n + 1))
    opens = [a for a in range(1 << n) if all(rows[i] & ~a == 0 for i in bits(a))]
    return _make(points, opens)


def load_space(data: dict, *, cap: int = DEFAULT_CAP) -> FiniteSpace:
    """Build a space from the JSON object form ``{"points", "subbase"|"opens"}``."""
    points = data.get("points")
    if "opens" in data:
        return from_opens(data["opens"], points, cap=cap)
    if "subbase" in data:
        return from_subbase(data["subbase"], points, cap=cap)
    raise ValueError('space description needs "subbase" or "opens"')


# --------------------------------------------------------------------------
# Named spaces

def sierpinski() -> FiniteSpace:
    return from_subbase([[1]], [0, 1])


def t2() -> FiniteSpace:
    return from_subbase([[1], [2]], [1, 2, 3])


def prop853_s() -> FiniteSpace:
    return from_subbase([[1], [1, 2], [3], [3, 4]], [1, 2, 3, 4])


def prop853_t() -> FiniteSpace:
    return from_subbase([[1], [1, 2], [1, 3], [1, 2, 3, 4]], [1, 2, 3, 4])


def discrete(n: int, *, cap: int = DEFAULT_CAP) -> FiniteSpace:
    return from_subbase([[i] for i in range(1, n + 1)], range(1, n + 1), cap=cap)


def indiscrete(n: int, *, cap: int = DEFAULT_CAP) -> FiniteSpace:
    return from_subbase([], range(1, n + 1), cap=cap)


BUILTIN = {
    "sierpinski": sierpinski,
    "t2": t2,
    "prop853-S": prop853_s,
    "prop853-T": prop853_t,
}


def builtin(name: str, *, cap: int = DEFAULT_CAP) -> FiniteSpace:
    """Resolve ``sierpinski``, ``t2``, ``prop853-S``, ``prop853-T``,
    ``discrete:N`` or ``indiscrete:N``."""
    if name in BUILTIN:
        return BUILTIN[name]()
    kind, _, count = name.partition(":")
    if kind in ("discrete", "indiscrete") and count.isdigit():
        return (discrete if kind == "discrete" else indiscrete)(int(count), cap=cap)
    raise KeyError(f"unknown built-in space {name!r}")


# --------------------------------------------------------------------------
# Canonical forms and enumeration

def canonical_code(rows: Sequence[int], n: int, backend: kernels.Kernels | None = None) -> bytes:
    """Homeomorphism invariant: minimal row-major preorder matrix over all relabellings.

    The first byte is the point count so codes order by size first.
    """
    value, _ = (backend or kernels.ACTIVE).canonical(rows, n)
    return bytes([n]) + value.to_bytes((n * n + 7) // 8, "big")


def decode_code(code: bytes) -> tuple[int, ...]:
    """Preorder rows of the canonical labelling encoded by ``code``."""
    n = code[0]
    value = int.from_bytes(code[1:], "big")
    rows = []
    for a in range(n):
        row = 0
        for b in range(n):
            if (value >> (n * n - 1 - (a * n + b))) & 1:
                row |= 1 << b
        rows.append(row)
    return tuple(rows)


def space_from_code(code: bytes) -> FiniteSpace:
    return from_preorder(decode_code(code))


def _closed_sets(k: int, rel: Sequence[int]) -> list[int]:
    """Subsets ``S`` of ``range(k)`` with ``rel[x] ⊆ S`` for every ``x`` in ``S``."""
    return [s for s in range(1 << k) if all(rel[x] & ~s == 0 for x in bits(s))]


def extend_preorder(up: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Every preorder on ``k + 1`` points restricting to ``up`` on the first ``k``.

    ``up[i]`` is the mask of points above ``i``.  The new point ``k`` gets an
    up-closed set ``U`` of old points above it and a down-closed set ``D``
    below it; transitivity forces ``U ⊆ up[d]`` for every ``d`` in ``D``.
    """
    k = len(up)
    down = [sum(1 << j for j in range(k) if (up[j] >> i) & 1) for i in range(k)]
    up_sets = _closed_sets(k, up)
    for d_set in _closed_sets(k, down):
        bound = (1 << k) - 1
        for d in bits(d_set):
            bound &= up[d]
        for u_set in up_sets:
            if u_set & ~bound:
                continue
            rows = [up[i] | ((1 << k) if (d_set >> i) & 1 else 0) for i in range(k)]
            # points above k inherit everything above U
            rows.append((1 << k) | u_set)
            yield tuple(rows)


def labeled_preorders(n: int) -> Iterator[tuple[int, ...]]:
    level = [()]
    for _ in range(n):
        level = [r for base in level for r in extend_preorder(base)]
    yield from level


def canonical_codes(n: int, backend: kernels.Kernels | None = None) -> list[bytes]:
    """Sorted canonical codes of all topologies on ``n`` points up to homeomorphism."""
    reps: list[tuple[int, ...]] = [()]
    codes: list[bytes] = [bytes([0])]
    for k in range(1, n + 1):
        found = set()
        for base in reps:
            for rows in extend_preorder(base):
                found.add(canonical_code(rows, k, backend))
        codes = sorted(found)
        reps = [decode_code(c) for c in codes]
    return codes


def enumerate_spaces(n: int, up_to_homeomorphism: bool = False, *, cap: int = DEFAULT_CAP,
                     backend: kernels.Kernels | None = None) -> Iterator[FiniteSpace]:
    """Every topology on points ``1..n``; one canonical representative per
    homeomorphism class (ascending code) when ``up_to_homeomorphism``."""
    check_cap(n, cap)
    if up_to_homeomorphism:
        for code in canonical_codes(n, backend):
            yield space_from_code(code)
    else:
        for rows in labeled_preorders(n):
            yield from_preorder(rows)
