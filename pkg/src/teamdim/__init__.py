"""Propositional team semantics and the dimension of set families."""
from .dimension import DimensionReport, compute_dimension
from .errors import CapExceeded, FreshVariableClash, ParseError, PreconditionError, TeamDimError
from .formula import Formula, fragment_profile, free_vars, parse, render
from .semantics import Scope, Team, equivalent, satisfies, team_property
from .setfam import BaseSet, SetFamily, parse_family

__version__ = "0.1.0"

__all__ = [
    "BaseSet", "SetFamily", "parse_family", "DimensionReport", "compute_dimension",
    "Formula", "parse", "render", "free_vars", "fragment_profile",
    "Scope", "Team", "satisfies", "team_property", "equivalent",
    "TeamDimError", "CapExceeded", "PreconditionError", "ParseError", "FreshVariableClash",
]
