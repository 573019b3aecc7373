import json

import pytest
import hypothesis.strategies as st
from hypothesis import given

import oracles
from oracles import families
from teamdim.errors import ParseError, PreconditionError
from teamdim.setfam import (
    BaseSet,
    SetFamily,
    closure_profile,
    convex_shadow,
    critical_sets,
    extremal_sets,
    family_from_json,
    interval,
    parse_family,
)

D_LIT = "base={a,b,c,d}; {{c},{a,c},{c,d},{a,b,c}}"
A_FIG = "base={a,b,c}; {{},{a},{b},{c},{a,b},{b,c}}"
B_FIG = "base={a,b,c,d}; {{},{c},{a,b},{a,b,c},{a,b,c,d}}"
C_FIG = "base={a,b,c,d}; {{},{a,b},{b,c},{a,b,c},{a,b,d},{b,c,d},{a,b,c,d}}"


def sets(F, *names):
    return F.with_members(F.base.parse_set(list(s)) for s in names)


@pytest.fixture
def D():
    return parse_family(D_LIT)


class TestParsing:
    def test_literal_roundtrip(self, D):
        assert parse_family(D.to_literal()) == D
        assert D.to_literal() == "base={a,b,c,d}; {{c},{a,c},{c,d},{a,b,c}}"

    def test_json_form(self, D):
        obj = {"base": 4, "members": [[2], [0, 2], [2, 3], [0, 1, 2]]}
        assert family_from_json(obj) == D
        assert parse_family(json.dumps(obj)) == D
        assert D.to_json() == obj

    def test_whitespace_and_empty_set(self):
        F = parse_family("  base = { a , b } ;{ {} , { a } , ∅ }")
        assert F.members == (0, 1)

    def test_numeric_base(self):
        F = parse_family("base=3; {{0,2}}")
        assert F.members == (5,)

    @pytest.mark.parametrize(
        "bad",
        ["base={a}; {{b}}", "base={a,b}; {{a}", "{{a}}", "base={a}; {{a}} x"],
    )
    def test_errors(self, bad):
        with pytest.raises(ParseError):
            parse_family(bad)

    def test_labels_validated(self):
        with pytest.raises(PreconditionError):
            BaseSet(2, ("a", "a"))
        with pytest.raises(PreconditionError):
            BaseSet(0)


def test_canonical_order():
    F = SetFamily.of(3, [7, 0, 4, 1, 3, 1])
    assert F.members == (0, 1, 4, 3, 7)


class TestInterval:
    def test_chain(self):
        assert interval(0, 1, 2).members == (0, 1)

    def test_identity(self):
        assert interval(1, 1, 2).members == (1,)

    def test_not_below(self):
        assert interval(1, 0, 2).members == ()

    @given(families(max_base=4))
    def test_matches_definition(self, nf):
        n, F = nf
        A, B = min(F), max(F)
        assert set(interval(A, B, n).members) == oracles.between(A, B)


class TestShadow:
    def test_example_values(self, D):
        abc = D.base.parse_set("abc")
        ac = D.base.parse_set("ac")
        c = D.base.parse_set("c")
        assert convex_shadow(D, abc) == sets(D, "ac", "abc")
        assert convex_shadow(D, ac) == sets(D, "c", "ac")
        assert convex_shadow(D, c, dual=True) == sets(D, "c", "ac", "cd")

    def test_outside_member(self, D):
        with pytest.raises(PreconditionError):
            convex_shadow(D, 0)

    @given(families(), st.booleans())
    def test_against_oracle(self, nf, dual):
        n, F = nf
        fam = SetFamily.of(n, F)
        for A in F:
            sh = set(convex_shadow(fam, A, dual).members)
            assert sh == oracles.shadow(F, A, n, dual)
            assert A in sh
            if dual:
                assert all(not A & ~B for B in sh)
            else:
                assert all(not B & ~A for B in sh)


class TestExtremal:
    def test_max_of_fig_a(self):
        F = parse_family(A_FIG)
        assert extremal_sets(F, "max") == sets(F, "ab", "bc")

    def test_min_q(self):
        F = parse_family("base={a,b,c}; {{},{a},{a,b},{a,c},{a,b,c}}")
        assert extremal_sets(F, "min_q") == F.with_members([0, 1])

    def test_singleton(self):
        F = SetFamily.of(1, [1])
        assert extremal_sets(F, "max").members == (1,)

    def test_preconditions(self, D):
        with pytest.raises(PreconditionError):
            extremal_sets(D, "max_q")
        with pytest.raises(PreconditionError):
            extremal_sets(D, "min_q")
        with pytest.raises(PreconditionError):
            extremal_sets(SetFamily.of(2, []), "max")

    @given(families())
    def test_against_oracle(self, nf):
        n, F = nf
        fam = SetFamily.of(n, F)
        assert set(extremal_sets(fam, "max").members) == oracles.maximal(F)
        assert set(extremal_sets(fam, "min").members) == oracles.minimal(F)


class TestCritical:
    def test_example(self, D):
        assert critical_sets(D) == sets(D, "ac", "cd", "abc")

    def test_downward_closed_gives_max(self):
        F = parse_family(A_FIG)
        assert critical_sets(F) == extremal_sets(F, "max")

    def test_single_member(self):
        assert critical_sets(SetFamily.of(2, [1])).members == (1,)

    @given(families())
    def test_against_oracle(self, nf):
        n, F = nf
        fam = SetFamily.of(n, F)
        assert set(critical_sets(fam).members) == oracles.crit(F, n)
        assert set(critical_sets(fam, dual=True).members) == oracles.crit(F, n, dual=True)

    @given(families())
    def test_extremal_sets_are_critical(self, nf):
        n, F = nf
        fam = SetFamily.of(n, F)
        assert extremal_sets(fam, "max").issubfamily(critical_sets(fam))
        assert extremal_sets(fam, "min").issubfamily(critical_sets(fam, dual=True))

    @given(families())
    def test_convex_and_quasi(self, nf):
        n, F = nf
        fam = SetFamily.of(n, F)
        prof = closure_profile(fam)
        if prof.convex:
            assert critical_sets(fam) == extremal_sets(fam, "max")
            assert critical_sets(fam, dual=True) == extremal_sets(fam, "min")
        if prof.quasi_downward:
            assert critical_sets(fam) == extremal_sets(fam, "max_q")
        if prof.quasi_upward:
            assert critical_sets(fam, dual=True) == extremal_sets(fam, "min_q")


class TestClosureProfile:
    def test_fig_b_union_closed(self):
        assert closure_profile(parse_family(B_FIG)).union_closed

    def test_fig_c_quasi_upward(self):
        prof = closure_profile(parse_family(C_FIG))
        assert prof.quasi_upward and not prof.upward_closed

    def test_power_set(self):
        prof = closure_profile(SetFamily.power_set(3))
        assert prof.downward_closed and prof.upward_closed and prof.convex
        assert prof.union_closed and prof.intersection_closed
        assert not prof.quasi_downward and not prof.quasi_upward
        assert prof.flat_compatible

    def test_union_closure_needs_empty_set(self):
        # {{a}} is closed under nonempty unions but the empty subfamily is not covered
        prof = closure_profile(SetFamily.of(2, [1]))
        assert not prof.union_closed
        assert closure_profile(SetFamily.of(2, [0, 1])).union_closed

    @given(families(min_size=0))
    def test_against_oracle(self, nf):
        n, F = nf
        prof = closure_profile(SetFamily.of(n, F))
        full = (1 << n) - 1
        dc, uc = oracles.is_down(F, n), oracles.is_up(F, n)
        assert prof.downward_closed == dc
        assert prof.upward_closed == uc
        assert prof.convex == oracles.is_convex(F, n)
        assert prof.union_closed == oracles.is_union_closed(F)
        assert prof.intersection_closed == oracles.is_inter_closed(F, n)
        assert prof.has_empty_set == (0 in F)
        assert prof.has_base_set == (full in F)
        assert prof.weak_quasi_downward == oracles.weak_quasi_down(F, n)
        assert prof.weak_quasi_upward == oracles.weak_quasi_up(F, n)
        assert prof.quasi_downward == (oracles.weak_quasi_down(F, n) and not dc)
        assert prof.quasi_upward == (oracles.weak_quasi_up(F, n) and not uc)
        assert prof.flat_compatible == (dc and prof.union_closed and 0 in F)

    @given(families(min_size=0))
    def test_closure_equivalences(self, nf):
        n, F = nf
        prof = closure_profile(SetFamily.of(n, F))
        assert prof.downward_closed == (prof.convex and prof.has_empty_set)
        assert prof.upward_closed == (prof.convex and prof.has_base_set)
        assert not (prof.quasi_downward and prof.downward_closed)
