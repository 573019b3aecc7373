"""Verification harness reproducing dimension values, bounds and gaps."""
from .checks import (
    aritydim_check,
    atom_dimension,
    closure_probe,
    dual_dimension_suite,
    extended_atom_dimension,
    extended_exclusion_dimension,
    gap_parameters,
    inexpressibility_gap,
    kripke_bound_check,
    negated_tuple_inclusion,
)
from .records import AtomSpec, VerificationRecord
from .registry import REGISTRY, SUITES, claims, run_suite

__all__ = [
    "AtomSpec", "VerificationRecord", "REGISTRY", "SUITES", "claims", "run_suite",
    "atom_dimension", "dual_dimension_suite", "extended_atom_dimension",
    "extended_exclusion_dimension", "negated_tuple_inclusion", "kripke_bound_check",
    "aritydim_check", "inexpressibility_gap", "gap_parameters", "closure_probe",
]
