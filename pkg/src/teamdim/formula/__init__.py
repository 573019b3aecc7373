"""Syntax for quantified propositional logic with team atoms."""
from .nodes import (
    NE,
    And,
    Anon,
    Atom,
    Bot,
    Dep,
    EMight,
    Exc,
    Exists,
    Forall,
    Formula,
    GOr,
    Inc,
    Indep,
    Lit,
    Might,
    NonConst,
    Or,
    PrimInc,
    RelExc,
    RelInc,
    SMight,
    Top,
    all_vars,
    atoms,
    conj,
    disj,
    eq,
    free_vars,
    iff,
    is_pl,
    negate,
    neq,
    substitute,
    tuple_eq,
    tuple_neq,
)
from .parser import parse
from .profile import FragmentProfile, fragment_profile
from .render import render

__all__ = [
    "NE", "And", "Anon", "Atom", "Bot", "Dep", "EMight", "Exc", "Exists",
    "Forall", "Formula", "GOr", "Inc", "Indep", "Lit", "Might", "NonConst",
    "Or", "PrimInc", "RelExc", "RelInc", "SMight", "Top", "all_vars", "atoms",
    "conj", "disj", "eq", "free_vars", "iff", "is_pl", "negate", "neq",
    "substitute", "tuple_eq", "tuple_neq", "parse", "render",
    "FragmentProfile", "fragment_profile",
]
