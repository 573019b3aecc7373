import json

import pytest

from teamdim.errors import PreconditionError
from teamdim.formula import parse
from teamdim.harness import (
    AtomSpec,
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
    run_suite,
)
from teamdim.harness import checks
from teamdim.harness.cli import main


def test_atom_spec_builds_distinct_variables():
    spec = AtomSpec("incl", 2)
    assert str(spec.formula()) == "incl(p1 p2, q1 q2)"
    assert len(set(spec.variables())) == 4
    assert AtomSpec("indep", 1, 1).closed_form() == 5
    with pytest.raises(PreconditionError):
        AtomSpec("indep", 1)
    with pytest.raises(PreconditionError):
        AtomSpec("nope", 1)


@pytest.mark.parametrize(
    "spec,value",
    [(AtomSpec("dep", 1), 4), (AtomSpec("excl", 1), 2), (AtomSpec("anon", 1), 4), (AtomSpec("indep", 1, 1), 5)],
)
def test_atom_dimension_examples(spec, value):
    rec = atom_dimension(spec)
    assert rec.passed and rec.computed == value


def test_atom_dimension_ignores_unused_variables():
    assert atom_dimension(AtomSpec("dep", 1), extra=("r", "s")).computed == 4


def test_flat_formula_has_dimension_one():
    assert checks.dim(parse("p /\\ q")) == 1


def _by_claim(recs):
    return {(r.claim, r.params["formula"]): r for r in recs}


def test_dual_suite_values():
    two = _by_claim(dual_dimension_suite(2))
    assert two["nonconst_dual", "nonconst(p1 p2)"].computed == 7
    assert two["quasi_upward_upper", "nonconst(p1 p2)"].computed == 2
    one = _by_claim(dual_dimension_suite(1))
    assert one["nonconst_dual", "nonconst(p1)"].computed == 2
    assert one["pincl_dual", "pincl(1, p1)"].computed == 2
    assert one["nonconst_ne_dual", "nonconst(p1) /\\ NE"].computed == 1
    for recs in (one, two):
        assert all(r.passed is not False for r in recs.values())


def test_might_is_reported_not_asserted():
    recs = [r for r in dual_dimension_suite(2) if r.claim == "might_dual"]
    assert recs and all(r.passed is None for r in recs)
    binom, printed = checks.might_readings(2)
    assert binom == 7 and printed == 2


def test_extended_dependence():
    rec = extended_atom_dimension(parse("dep((p /\\ ~p); q)"))
    assert rec.params["A"] == [[1]] and rec.params["m"] == 1 and rec.computed == 2
    assert extended_atom_dimension(parse("dep(p; (q \\/ ~q))")).computed == 1
    assert extended_atom_dimension(parse("dep(p; q)")).computed == 4


def test_extended_exclusion():
    rec = extended_exclusion_dimension(parse("excl(p, (q /\\ ~q))"))
    # the pair (0, 1) cannot be realised: q /\ ~q is never true
    assert rec.params["B"] == [[(1, 0)]]
    assert rec.passed
    assert extended_exclusion_dimension(parse("excl(p, q)")).computed == 2


@pytest.mark.parametrize("k,value", [(1, 2), (2, 4)])
def test_negated_tuple_inclusion(k, value):
    rec = negated_tuple_inclusion(k)
    assert rec.passed and rec.computed == value


def test_kripke_examples():
    d = parse("dep(p; q)")
    rec = kripke_bound_check(d, d, "and")
    assert (rec.computed, rec.closed_form) == (4, 16)
    assert kripke_bound_check(d, None, "exists", "q").passed
    with pytest.raises(PreconditionError):
        kripke_bound_check(d, None, "and")


def test_aritydim_examples():
    rec = aritydim_check(parse("dep(p; q) /\\ dep(r; s)"))
    assert (rec.computed, rec.closed_form) == (16, 16)
    assert aritydim_check(parse("p /\\ q")).closed_form == 1
    assert aritydim_check(parse("anon(p; q) \\/ anon(p; q)")).closed_form == 16
    with pytest.raises(PreconditionError):
        aritydim_check(parse("dep(p; q) /\\ incl(p, q)"))
    with pytest.raises(PreconditionError):
        aritydim_check(parse("indep(; p; q)"))


def test_gap_examples():
    rec = inexpressibility_gap("opti_ii", "dep", 0, 1, 1)
    assert (rec.computed, rec.closed_form) == (2, 4) and rec.passed
    assert "witness D = 4" in rec.note
    rec = inexpressibility_gap("opti_inc_exc_i", "incl", 1, 1, 3, brute=False)
    assert (rec.computed, rec.closed_form) == (8, 12) and rec.passed
    rec = inexpressibility_gap("collapse_ii", "incl", 2, 1, 3, brute=False)
    assert (rec.computed, rec.closed_form) == (8, 12) and rec.passed


@pytest.mark.parametrize(
    "args",
    [("opti_ii", "dep", 0, 1, 2), ("collapse_ii", "incl", 1, 1, 1), ("opti_inc_exc_ii", "excl", 1, 1, 1),
     ("opti_ii", "incl", 0, 1, 1)],
)
def test_gap_hypotheses_are_enforced(args):
    with pytest.raises(PreconditionError):
        inexpressibility_gap(*args)


def test_gap_parameters_stay_inside_the_hypotheses():
    for thm in checks.GAP_THEOREMS:
        for kind in checks.GAP_KINDS[thm]:
            ps = list(gap_parameters(thm, kind, 10 ** 4))
            assert ps
            for k, n, m in ps:
                checks._check_hypotheses(thm, kind, k, n, m)
                assert checks.gap_values(thm, kind, k, n, m)[0] <= 10 ** 4


def test_closure_probe_examples():
    assert closure_probe("PL_exc", parse("excl(p, q)")).passed
    assert closure_probe("PL_inc", parse("incl(p, q)")).passed
    assert not checks.exc_probe_holds(parse("dep(; p)"))
    assert not checks.inc_probe_holds(parse("pincl(1, p)"))
    with pytest.raises(PreconditionError):
        closure_probe("PL_exc", parse("dep(; p)"))


def test_record_json():
    rec = atom_dimension(AtomSpec("dep", 1))
    blob = json.loads(rec.dumps())
    assert blob["pass"] is True and blob["computed"] == 4 and blob["relation"] == "="
    assert rec.line().startswith("PASS")


def test_randomised_suites_are_deterministic():
    a = run_suite("probes", seed=7, samples=25)
    b = run_suite("probes", seed=7, samples=25, jobs=2)
    assert [r.to_json()["computed"] for _, rs in a for r in rs] == [r.to_json()["computed"] for _, rs in b for r in rs]
    assert all(r.passed for _, rs in a for r in rs)


def test_cli_commands(capsys):
    assert main(["dim", "--family", "base={a,b,c,d}; {{c},{a,c},{c,d},{a,b,c}}"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == 2
    assert main(["eval", "--team", "scope=[p1,q]; {11,00}", "--formula", "dep(p1;q)"]) == 0
    assert json.loads(capsys.readouterr().out) == {"satisfied": True}
    assert main(["property", "--formula", "dep(p;q)", "--scope", "p,q"]) == 0
    assert len(json.loads(capsys.readouterr().out)["members"]) == 9
    assert main(["equiv", "dep(p;q)", "A z.((z = q) \\/ excl(p z, p q))"]) == 0
    assert json.loads(capsys.readouterr().out)["equivalent"]
    assert main(["reduce", "--rule", "reduce_dep", "--formula", "dep(p1 p2; q)", "--repeat"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3 and json.loads(lines[0])["rule"] == "reduce_dep"


def test_cli_exit_codes(capsys):
    assert main(["equiv", "dep(p;q)", "A z.((z = q) vv excl(p z, p q))"]) == 1
    assert main(["eval", "--team", "scope=[p]; {1}", "--formula", "dep(p; r)"]) == 2
    assert main(["verify", "--suite", "probes", "--samples", "20"]) == 0
    out = capsys.readouterr().out
    assert "PASS locality" in out
