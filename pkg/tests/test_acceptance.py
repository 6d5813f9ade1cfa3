"""Exit criteria for the build; each test prints PASS/FAIL in the terminal summary.

Run alone with ``pytest tests/test_acceptance.py``.
"""
import json
import random
import time
from contextlib import contextmanager
from itertools import product

import pytest

from topomodels import principles, semantics, topology
from topomodels.cli import main
from topomodels.formula import parse
from topomodels.search import find_separating_model, survey

from conftest import random_space
import oracles

ev = semantics.eval


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.3f}s, budget {seconds}s"


def cli_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def canonical_spaces(max_points=4):
    return [s for n in range(1, max_points + 1) for s in topology.enumerate_spaces(n, True)]


def all_valuations(space, names):
    for values in product(space.opens, repeat=len(names)):
        yield dict(zip(names, values))


@pytest.mark.criterion(1, "Sierpinski: LEM weak-refuted at P={1}, WLEM validated")
def test_sierpinski_facts(capsys):
    with within(0.1):
        code, data = cli_json(capsys, "check", "sierpinski", "LEM", "WLEM")
    lem, wlem = data["results"]
    assert lem == {"id": "LEM", "kind": "weak", "witness": {"p": [1]}, "truth_set": [1]}
    assert wlem == {"id": "WLEM", "kind": "validates"}
    assert code == 1


@pytest.mark.criterion(2, "T2 weak-refutes WLEM at P={1}: ~P={2}, ~~P={1}, union {1,2}")
def test_t2_countermodel():
    with within(0.1):
        t2 = topology.from_subbase([[1], [2]], [1, 2, 3])
        report = semantics.counterexample_kind(t2, principles.lookup("WLEM"))
        w = report.witness
        values = [ev(t2, w, f) for f in ("~p", "~~p", "~p | ~~p")]
    assert report.kind == semantics.WEAK
    assert w.to_json() == {"p": [1]}
    assert [t2.labels(x) for x in values] == [[2], [1], [1, 2]]
    assert t2.labels(report.truth_set) == [1, 2]


@pytest.mark.criterion(3, "DGP separation spaces S and T: verdicts and every displayed set")
def test_dgp_separation_spaces():
    with within(0.1):
        s = topology.from_subbase([[1], [1, 2], [3], [3, 4]], [1, 2, 3, 4])
        t = topology.from_subbase([[1], [1, 2], [1, 3], [1, 2, 3, 4]], [1, 2, 3, 4])
        s_dgp = semantics.valid_schema(s, principles.lookup("DGP"))
        s_lem = semantics.counterexample_kind(s, principles.lookup("LEM"))
        s_sets = [ev(s, s_lem.witness, f) for f in ("p", "~p", "p | ~p")]
        t_wlem = semantics.valid_schema(t, principles.lookup("WLEM"))
        t_dgp = semantics.counterexample_kind(t, principles.lookup("DGP"))
        t_sets = [ev(t, t_dgp.witness, f) for f in ("p", "q", "p -> q", "q -> p",
                                                      "(p -> q) | (q -> p)")]
    assert s_dgp and s_lem.kind == semantics.WEAK
    assert [s.labels(x) for x in s_sets] == [[1], [3, 4], [1, 3, 4]]
    assert t_wlem and t_dgp.kind == semantics.WEAK
    assert [t.labels(x) for x in t_sets] == [[1, 2], [1, 3], [1, 3], [1, 2], [1, 2, 3]]


@pytest.mark.criterion(4, "verify-classes --max 4: 46 spaces, zero violations, < 60 s")
def test_equivalence_classes(capsys):
    with within(60):
        code, data = cli_json(capsys, "verify-classes", "--max", "4", "--jobs", "1")
    assert data["spaces_checked"] == 1 + 3 + 9 + 33
    assert data["violations"] == []
    assert code == 0


@pytest.mark.criterion(5, "survey --max 4: LEM => DGP => WLEM strict, WLEM/DGP gap first at n=4")
def test_hierarchy_strictness():
    with within(120):
        result = survey(4)
        below = find_separating_model({"WLEM"}, {"DGP"}, 3)
    assert result.separations[("LEM", "DGP")] is None
    assert result.separations[("DGP", "WLEM")] is None
    assert result.separations[("DGP", "LEM")].space.n == 2
    assert result.separations[("WLEM", "DGP")].space.n == 4
    assert not below.found and below.stats["spaces_examined"] == 1 + 3 + 9


@pytest.mark.criterion(6, "soundness suite forced in all 46 spaces under all valuations")
def test_soundness_suite():
    theorems = [
        "P -> P", "P -> ~~P", "~~~P <-> ~P", "~(P & ~P)",
        "~P & ~Q -> ~(P | Q)", "~(P | Q) -> ~P & ~Q", "~P | ~Q -> ~(P & Q)",
        "P & (Q | R) -> (P & Q) | (P & R)", "(P & Q) | (P & R) -> P & (Q | R)",
        "P | (Q & R) -> (P | Q) & (P | R)", "(P | Q) & (P | R) -> P | (Q & R)",
        "(P & Q -> R) <-> (P -> (Q -> R))",
    ]
    failures = []
    with within(30):
        spaces = canonical_spaces()
        for text in theorems:
            f = parse(text)
            names = [a for a in "PQR" if a in text]
            for space in spaces:
                for val in all_valuations(space, names):
                    if not semantics.forces(space, val, f):
                        failures.append((text, space.opens, val))
    assert len(spaces) == 46
    assert failures == []


@pytest.mark.criterion(7, "Heyting residuation on 10,000 random triples, <= 6 points, < 10 s")
def test_residuation():
    rng = random.Random(20261016)
    failures = 0
    with within(10):
        for _ in range(10_000):
            space = random_space(rng, 6)
            u, v, w = (rng.choice(space.opens) for _ in range(3))
            lhs = (u & v) & ~w == 0
            rhs = u & ~space.heyting_imp(v, w) == 0
            failures += lhs != rhs
    assert failures == 0


@pytest.mark.criterion(8, "no strong counterexample to LEM or WLEM in any of the 46 spaces")
def test_no_strong_counterexample():
    failures = []
    spaces = canonical_spaces()
    for space in spaces:
        for val in all_valuations(space, ["P"]):
            for text in ("~(P | ~P)", "~(~P | ~~P)"):
                if ev(space, val, text) != 0:
                    failures.append((space.opens, val, text))
    assert len(spaces) == 46
    assert failures == []


@pytest.mark.criterion(9, "enumeration counts 1,4,29,355 labelled and 1,3,9,33 up to homeomorphism")
def test_enumeration_counts():
    with within(60):
        labeled = [sum(1 for _ in topology.enumerate_spaces(n)) for n in range(1, 5)]
        classes = [sum(1 for _ in topology.enumerate_spaces(n, True)) for n in range(1, 5)]
        brute = [oracles.all_topologies(range(1, n + 1)) for n in range(1, 5)]
        brute_classes = [len(oracles.homeomorphism_classes(range(1, n + 1), b))
                         for n, b in zip(range(1, 5), brute)]
    assert labeled == [1, 4, 29, 355] == [len(b) for b in brute]
    assert classes == [1, 3, 9, 33] == brute_classes


def _reference_verdicts(subbase):
    """Independent re-computation with the reference program's conventions:
    whole space = union of the subbase, base = pairwise intersections,
    opens = union closure of the base."""
    subbase = [frozenset(s) for s in subbase]
    whole = frozenset().union(*subbase)
    top = {a & b for a in subbase for b in subbase}
    while True:
        grown = {a | b for a in top for b in top}
        if len(grown) == len(top):
            break
        top = grown

    def interior(a):
        return frozenset().union(*[u for u in top if u <= a])

    def neg(a):
        return interior(whole - a)

    def imp(a, b):
        return interior((whole - a) | b)

    return {
        "LEM": all(u | neg(u) == whole for u in top),
        "DGP": all(imp(u, v) | imp(v, u) == whole for u in top for v in top),
        "WLEM": all(neg(u) | neg(neg(u)) == whole for u in top),
    }


@pytest.mark.criterion(10, "check verdicts match the reference program on spaces S and T")
@pytest.mark.parametrize("name, subbase, expected", [
    ("S", [[1], [1, 2], [3], [3, 4]], {"LEM": False, "DGP": True, "WLEM": True}),
    ("T", [[1, 2], [1, 3], [1, 2, 3, 4]], {"LEM": False, "DGP": False, "WLEM": True}),
])
def test_reference_parity(capsys, name, subbase, expected):
    assert _reference_verdicts(subbase) == expected
    _, data = cli_json(capsys, "check", json.dumps(subbase), "LEM", "DGP", "WLEM")
    verdicts = {r["id"]: r["kind"] == semantics.VALIDATES for r in data["results"]}
    assert verdicts == expected
