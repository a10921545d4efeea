"""Parsing, serialisation and transition-closure queries."""

import pytest
from hypothesis import given, strategies as st

from bisimgames.lts import (Lts, LtsError, ParseError, make_lts, parse_aut,
                            validate, write_aut)


def idx(lts, *names):
    out = tuple(lts.state_index(n) for n in names)
    return out if len(out) > 1 else out[0]


class TestParse:
    def test_minimal_document(self):
        lts = parse_aut('des (0,2,3)\n(0,"a",1)\n(0,"a",2)')
        assert lts.n_states == 3
        assert len(lts.transitions) == 2
        assert lts.tau is None
        assert lts.initial == 0
        assert lts.names == ("s0", "s1", "s2")

    def test_unquoted_labels_and_whitespace(self):
        lts = parse_aut("des (0, 1, 2)\n( 0 , a , 1 )")
        assert (0, "a", 1) in lts.transitions

    def test_tau_mapping_default_spellings(self):
        lts = parse_aut('des (0,1,2)\n(0,"tau",1)')
        assert lts.tau == "tau"
        alt = parse_aut('des (0,1,2)\n(0,"i",1)')
        assert alt.tau == "tau"
        assert (0, "tau", 1) in alt.transitions

    def test_tau_custom_spelling(self):
        lts = parse_aut('des (0,1,2)\n(0,"silent",1)', tau_names=("silent",))
        assert lts.tau == "silent"

    def test_name_sidecar(self, choice_lts):
        assert choice_lts.names[:3] == ("x0", "x1", "x2")
        assert choice_lts.state_index("y0") == 5

    def test_comments_ignored(self):
        lts = parse_aut("# a comment\ndes (0,0,1)\n# trailing comment")
        assert lts.n_states == 1

    def test_duplicate_transitions_deduplicated(self, caplog):
        with caplog.at_level("WARNING"):
            lts = parse_aut('des (0,2,2)\n(0,"a",1)\n(0,"a",1)')
        assert len(lts.transitions) == 1
        assert any("duplicate" in r.message for r in caplog.records)

    @pytest.mark.parametrize("text,fragment", [
        ("des (0,1)", "malformed header"),
        ('des (5,0,3)', "initial state 5"),
        ('des (0,0,0)', "state count"),
        ('des (0,2,2)\n(0,"a",1)', "transition count mismatch"),
        ('des (0,1,2)\n(0,"a",1)\n(0,"b",1)', "transition count mismatch"),
        ('des (0,1,2)\n(0,"a",5)', "state index 5"),
        ('des (0,1,2)\n(0,"a,1)', "unterminated quoted label"),
        ('des (0,1,2)\n(0,a b,1)', "must be alphanumeric"),
        ('(0,"a",1)', "malformed header"),
        ("", "missing"),
        ("des (0,1,2)\n#name 9 foo\n(0,a,1)", "#name index 9"),
        ("des (0,1,2)\n#name 0 s1\n(0,a,1)", "duplicate display name"),
    ])
    def test_errors_report_line(self, text, fragment):
        with pytest.raises(ParseError) as e:
            parse_aut(text)
        assert fragment in str(e.value)
        assert "line" in str(e.value)

    def test_error_line_number_points_at_offender(self):
        with pytest.raises(ParseError) as e:
            parse_aut('des (0,2,3)\n(0,"a",1)\n(0,"a",7)')
        assert e.value.line == 3


class TestWrite:
    def test_roundtrip_choice(self, choice_lts):
        assert parse_aut(write_aut(choice_lts)) == choice_lts

    def test_roundtrip_silent_preserves_tau(self, silent_lts):
        again = parse_aut(write_aut(silent_lts))
        assert again == silent_lts
        assert again.tau == "tau"

    def test_degenerate_single_state(self):
        lts = make_lts([], n_states=1)
        assert write_aut(lts) == "des (0,0,1)\n"

    def test_nonalnum_labels_quoted(self):
        lts = make_lts([(0, "a.b", 0)])
        assert '"a.b"' in write_aut(lts)
        assert parse_aut(write_aut(lts)) == lts


class TestQueries:
    def test_successors_choice(self, choice_lts):
        x0, x1, x2 = idx(choice_lts, "x0", "x1", "x2")
        assert choice_lts.successors(x0, "a") == {x1, x2}
        # no outgoing c-transition from x1: the vacuous challenge
        assert choice_lts.successors(x1, "c") == frozenset()

    def test_successors_unknown_state_or_label(self, choice_lts):
        with pytest.raises(LtsError):
            choice_lts.successors(99, "a")
        with pytest.raises(LtsError):
            choice_lts.successors(0, "zzz")

    def test_tau_reach_silent(self, silent_lts):
        x0, x2, y0 = idx(silent_lts, "x0", "x2", "y0")
        assert silent_lts.tau_reach(x0) == {x0, x2}
        assert silent_lts.tau_reach(y0) == {y0}

    def test_tau_reach_cycle(self, tau_cycle_lts):
        assert tau_cycle_lts.tau_reach(0) == {0, 1}
        assert tau_cycle_lts.tau_reach(1) == {0, 1}

    def test_tau_reach_without_tau(self, choice_lts):
        assert choice_lts.tau_reach(0) == {0}

    def test_optional_step(self, silent_lts):
        x0, x1, x2, y0 = idx(silent_lts, "x0", "x1", "x2", "y0")
        assert silent_lts.optional_step(y0, "tau") == {y0}
        assert silent_lts.optional_step(x0, "a") == {x1}
        assert silent_lts.optional_step(x0, "tau") == {x0, x2}

    def test_branching_answers_silent(self, silent_lts):
        x0, x2, x3, y0 = idx(silent_lts, "x0", "x2", "x3", "y0")
        assert silent_lts.branching_answers(y0, "tau") == {(y0, y0)}
        assert silent_lts.branching_answers(x0, "b") == {(x2, x3)}

    def test_validate_reports(self, choice_lts, silent_lts):
        rep = validate(choice_lts)
        assert rep["states"] == 9 and rep["labels"] == ("a", "b", "c")
        assert rep["tau_used"] is False and rep["finite"] is True
        rep2 = validate(silent_lts)
        assert rep2["states"] == 7 and rep2["tau_used"] is True
        assert rep2["labels"] == ("a", "b", "tau")
        single = validate(make_lts([], n_states=1))
        assert single["states"] == 1 and single["tau_used"] is False


class TestConstruction:
    def test_rejects_dangling_transition(self):
        with pytest.raises(LtsError):
            Lts(names=("s0",), labels=("a",), transitions=frozenset([(0, "a", 3)]))

    def test_rejects_unknown_label(self):
        with pytest.raises(LtsError):
            Lts(names=("s0",), labels=("a",), transitions=frozenset([(0, "b", 0)]))

    def test_rejects_duplicate_names(self):
        with pytest.raises(LtsError):
            Lts(names=("s0", "s0"), labels=(), transitions=frozenset())

    def test_rejects_tau_outside_alphabet(self):
        with pytest.raises(LtsError):
            Lts(names=("s0",), labels=("a",), transitions=frozenset(), tau="t")


@st.composite
def small_lts(draw, max_states=5, with_tau=False):
    n = draw(st.integers(1, max_states))
    pool = ["a", "b"] + (["tau"] if with_tau else [])
    triples = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.sampled_from(pool), st.integers(0, n - 1)),
        max_size=2 * n))
    tau_used = any(lab == "tau" for _, lab, _ in triples)
    return make_lts(triples, n_states=n, tau="tau" if tau_used else None)


class TestProperties:
    @given(small_lts(with_tau=True))
    def test_tau_reach_reflexive_and_idempotent(self, lts):
        for x in range(lts.n_states):
            reach = lts.tau_reach(x)
            assert x in reach
            for y in reach:
                assert lts.tau_reach(y) <= reach

    @given(small_lts(with_tau=True))
    def test_optional_step_contains_successors(self, lts):
        for x in range(lts.n_states):
            for lab in lts.labels:
                opt = lts.optional_step(x, lab)
                succ = lts.successors(x, lab)
                assert succ <= opt
                if lab != lts.tau:
                    assert succ == opt

    @given(small_lts(with_tau=True))
    def test_tau_answers_never_empty(self, lts):
        if lts.tau is None:
            return
        for y in range(lts.n_states):
            assert (y, y) in lts.branching_answers(y, lts.tau)

    @given(small_lts(with_tau=True))
    def test_aut_roundtrip(self, lts):
        assert parse_aut(write_aut(lts)) == lts
