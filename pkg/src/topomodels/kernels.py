"""Hot loops behind schema checking and canonicalization.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
pure-Python twin ``_pykernels`` is loaded.  Set ``TOPOMODELS_PURE=1`` to force
the fallback.  :data:`BACKEND` names the active implementation.
"""
from __future__ import annotations

import os
from array import array
from functools import lru_cache
from itertools import permutations

from . import _pykernels
from .formula import And, Atom, Bottom, Formula, Imp, Or

OP_VAR, OP_BOT, OP_AND, OP_OR, OP_IMP = range(5)

_native = None
if os.environ.get("TOPOMODELS_PURE") != "1":
    try:
        from . import _ckernels as _native
    except ImportError:
        _native = None

BACKEND = "cython" if _native is not None else "python"


def compile_formula(f: Formula, variables) -> tuple[int, ...]:
    """Flatten ``f`` into postfix ``(opcode, arg)`` pairs.

    ``variables`` fixes the register index of each atom name.
    """
    index = {name: i for i, name in enumerate(variables)}
    out: list[int] = []

    def walk(g):
        if isinstance(g, Atom):
            try:
                out.extend((OP_VAR, index[g.name]))
            except KeyError:
                raise KeyError(f"atom {g.name!r} has no assigned value") from None
        elif isinstance(g, Bottom):
            out.extend((OP_BOT, 0))
        else:
            walk(g.left)
            walk(g.right)
            op = OP_AND if isinstance(g, And) else OP_OR if isinstance(g, Or) else OP_IMP
            out.extend((op, 0))

    walk(f)
    return tuple(out)


@lru_cache(maxsize=None)
def permutation_table(n: int) -> tuple[int, ...]:
    """All permutations of ``range(n)`` in lexicographic order, flattened."""
    return tuple(x for p in permutations(range(n)) for x in p)


class Kernels:
    """One backend bound to a uniform call interface."""

    def __init__(self, module, name):
        self.module = module
        self.name = name
        self._wrap = (lambda xs: array("q", xs)) if module is not _pykernels else tuple

    def eval_program(self, prog, regs, interior, full):
        w = self._wrap
        return self.module.eval_program(w(prog), w(regs), w(interior), full)

    def scan_schema(self, prog, opens, interior, full, arity, mode):
        w = self._wrap
        return self.module.scan_schema(w(prog), w(opens), w(interior), full, arity, mode)

    def canonical(self, rows, n):
        w = self._wrap
        return self.module.canonical(w(rows), n, _perm_array(self, n))


@lru_cache(maxsize=None)
def _perm_table_q(n):
    return array("q", permutation_table(n))


def _perm_array(k: Kernels, n):
    return _perm_table_q(n) if k.module is not _pykernels else permutation_table(n)


PURE = Kernels(_pykernels, "python")
NATIVE = Kernels(_native, "cython") if _native is not None else None
ACTIVE = NATIVE or PURE


def available() -> list[Kernels]:
    return [k for k in (PURE, NATIVE) if k is not None]
