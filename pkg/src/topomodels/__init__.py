"""Finite topological models for intuitionistic propositional logic."""
from .formula import And, Atom, Bottom, Imp, Or, ParseError, atoms, parse, render, substitute
from .kernels import BACKEND
from .principles import Principle, catalog, equivalence_classes, instantiate, lookup
from .semantics import Valuation, counterexample_kind, entails, forces, valid_schema
from .topology import FiniteSpace, enumerate_spaces, from_opens, from_subbase

__version__ = "0.1.0"
