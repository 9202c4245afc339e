import io
import json
from fractions import Fraction
from pathlib import Path

import pytest

from generators import random_additive_state, random_multiplicative_state
from wcifano import reduction
from wcifano.enumerate import filtered_corpus
from wcifano.reduction import (AdditiveState, HypothesisError, MultiplicativeState,
                               ReductionInvariantError, check_alla1, check_allbut1, check_case3,
                               classify_conic_case, frac_str, lemma_at2, lemma_at_gap,
                               lemma_power_gap, parse_rational, reduce_additive,
                               reduce_multiplicative)

GOLDEN = Path(__file__).parent / "golden"


def golden(name):
    return [json.loads(line) for line in (GOLDEN / name).read_text().splitlines()]


def records(trace):
    buf = io.StringIO()
    trace.write_jsonl(buf)
    return [json.loads(line) for line in buf.getvalue().splitlines()]


@pytest.mark.parametrize("name, w, d", [
    ("additive_1123_6.jsonl", (1, 1, 2, 3), (6,)),
    ("additive_122_4.jsonl", (1, 2, 2), (4,)),
    ("additive_drop_pair.jsonl", (1, 1, 1, 1, 3, 4), (4, 5)),
    ("additive_both.jsonl", (1, 1, 1, 1, 2, 3), (3, 4)),
])
def test_additive_goldens(name, w, d):
    assert records(reduce_additive(AdditiveState(w, d))) == golden(name)


@pytest.mark.parametrize("name, w, d", [
    ("multiplicative_s_up.jsonl", (1, 1, 1, 2, 3, 3), (9, 18)),
    ("multiplicative_drop_pair.jsonl", (1, 1, 1, 1, 4, 4, 4), (6, 32)),
])
def test_multiplicative_goldens(name, w, d):
    assert records(reduce_multiplicative(MultiplicativeState(w, d))) == golden(name)


def test_jsonl_is_sorted_and_stable():
    tr = reduce_additive(AdditiveState((1, 1, 2, 3), (6,)))
    buf = io.StringIO()
    tr.write_jsonl(buf)
    for line in buf.getvalue().splitlines():
        keys = list(json.loads(line))
        assert keys == sorted(keys)
    assert tr.to_dict()["schema"] == 1
    assert tr.final == AdditiveState((1, 1, 1, 4), (6,))
    assert len(tr.states()) == 2


def test_random_additive_steps(rng):
    for _ in range(300):
        st = random_additive_state(rng)
        tr = reduce_additive(st)
        assert len(tr.steps) <= st.N + st.k
        assert tr.terminal.verdict
        for before, step in zip(tr.states(), tr.steps):
            after = step.state
            step.state.validate()
            assert after.s > before.s or after.N < before.N
            assert sum(after.weights) - sum(after.degrees) == sum(before.weights) - sum(before.degrees)
            for m in range(1, 8):
                assert after.f(m) <= before.f(m)
        assert tr.final.s in (tr.final.N, tr.final.N + 1)


def test_random_multiplicative_steps(rng):
    for _ in range(300):
        st = random_multiplicative_state(rng)
        tr = reduce_multiplicative(st)
        assert len(tr.steps) <= st.N + st.k
        assert tr.terminal.verdict
        l = tr.terminal.detail["l"]
        for before, step in zip(tr.states(), tr.steps):
            step.state.validate()
            assert step.amount > 1
            assert step.state.f(l) <= before.f(l)
        assert tr.terminal.case in ("case-1", "case-2", "case-3")


@pytest.mark.parametrize("w, d, hyp", [
    ((1, 1, 2), (), "additive/shape"),
    ((1, 2, 3), (1,), "additive/d>=2"),
    ((2, 2, 3), (5,), "additive/s>=1"),
    ((1, 1, 3), (3,), "additive/d>a"),
    ((1, 1, 2, 3), (9,), "additive/sum"),
    ((1, 2), (3, 4, 5), "additive/k<=N+1"),
])
def test_additive_hypotheses(w, d, hyp):
    with pytest.raises(HypothesisError) as err:
        reduce_additive(AdditiveState(w, d))
    assert err.value.hypothesis == hyp


@pytest.mark.parametrize("w, d, hyp", [
    ((1, 1, 1, 2), (3, 4), "multiplicative/N-k>=2"),
    ((1, 1, 1, 1, 2), (4,), "multiplicative/aN>=3"),
    ((1, 1, 1, 1, 3), (7,), "multiplicative/divisibility"),
    ((1, 1, 1, 1, 3), (3,), "multiplicative/dk>=2aN"),
    ((1, 1, 1, 1, 2, 3), (2, 12), "multiplicative/d>a"),
    ((1, 1, 3, 1, 1, 3), (9,), "multiplicative/order"),
])
def test_multiplicative_hypotheses(w, d, hyp):
    with pytest.raises(HypothesisError) as err:
        reduce_multiplicative(MultiplicativeState(w, d))
    assert err.value.hypothesis == hyp


def test_multiplicative_k1_start_is_terminal():
    tr = reduce_multiplicative(MultiplicativeState((1, 1, 1, 2, 3), (6,)))
    assert tr.steps == () and tr.terminal.case == "case-3" and tr.terminal.verdict


def test_additive_terminal_start():
    tr = reduce_additive(AdditiveState((1, 1, 1, 1, 1), (3,)))
    assert tr.steps == () and tr.terminal.case == "s=N+1"


def test_invariant_break_is_not_repaired(monkeypatch):
    def broken(st):
        a = list(st.weights)
        a[st.s] = 0
        return reduction.ReductionStep("s-up", 1, AdditiveState(a, st.degrees))
    monkeypatch.setattr(reduction, "_additive_step", broken)
    with pytest.raises(ReductionInvariantError):
        reduce_additive(AdditiveState((1, 1, 2, 3), (6,)))


def test_check_allbut1():
    assert check_allbut1(MultiplicativeState((1, 1, 1, 1, 6, 3), (9, 18)))
    with pytest.raises(HypothesisError) as err:
        check_allbut1(MultiplicativeState((1, 1, 1, 2), (3, 4)))
    assert err.value.hypothesis == "allbut1/N-k>=2"
    with pytest.raises(HypothesisError) as err:
        check_allbut1(MultiplicativeState((1, 1, 2, 2, 2, 3), (7, 9)))
    assert err.value.hypothesis == "allbut1/nonunit-count"


def test_check_case3():
    assert check_case3(MultiplicativeState((1, 1, 1, 2, 3), (6,)))
    assert check_case3(MultiplicativeState((1, 1, 1, 1, Fraction(8, 3), 4), (32,)), 2)
    with pytest.raises(HypothesisError) as err:
        check_case3(MultiplicativeState((1, 1, 1, 2, 3), (6, 12)))
    assert err.value.hypothesis == "case3/k=1"


def test_check_alla1():
    assert check_alla1(8, 1, (3,))
    assert check_alla1(26, 2, (2, 3))
    with pytest.raises(HypothesisError) as err:
        check_alla1(8, 2, (2, 2))
    assert err.value.hypothesis == "alla1/not-quadrics"
    with pytest.raises(HypothesisError) as err:
        check_alla1(4, 1, (5,))
    assert err.value.hypothesis == "alla1/fano"
    with pytest.raises(HypothesisError) as err:
        check_alla1(3, 2, (2, 3))
    assert err.value.hypothesis == "alla1/N-k>=2"


def test_classify_conic_case():
    assert classify_conic_case(2, 1, (1, 1, 1), (2,)) == "conic"
    assert classify_conic_case(2, 1, (1, 1, 2), (3,)) == "excluded"
    assert classify_conic_case(5, 1, (1,) * 6, (2,)) == "not-applicable"
    with pytest.raises(HypothesisError):
        classify_conic_case(2, 1, (1, 1), (2,))


def test_lemma_examples():
    assert lemma_at_gap(3, 2, 1, 1, 2) is True
    assert lemma_at_gap(5, 5, 5, Fraction(3, 2), Fraction(7, 3)) is True
    assert lemma_at_gap(4, 3, 1, 2, 2) is True
    assert lemma_at2(2, 3, Fraction(3, 2))
    assert lemma_at2(1, 1, 1)
    assert lemma_power_gap(2) == 3
    assert lemma_power_gap(3) == 29
    assert lemma_power_gap(Fraction(5, 2)).a > 0


@pytest.mark.parametrize("call", [
    lambda: lemma_at_gap(1, 2, 1, 1, 2),
    lambda: lemma_at_gap(2, 1, 0, 1, 2),
    lambda: lemma_at_gap(2, 1, 1, 3, 2),
    lambda: lemma_at_gap(2, 1, 1, Fraction(1, 2), 2),
    lambda: lemma_at2(2, 1, 1),
    lambda: lemma_at2(2, 3, 3),
    lambda: lemma_power_gap(1),
])
def test_lemma_domains(call):
    with pytest.raises(ValueError):
        call()


def test_rational_helpers():
    assert parse_rational(" 7/3 ") == Fraction(7, 3)
    assert frac_str(Fraction(6, 3)) == "2" and frac_str(Fraction(1, 3)) == "1/3"
    with pytest.raises(ValueError):
        parse_rational("x")
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_corpus_states_have_increasing_f():
    corpus, _ = filtered_corpus(range(1, 7), 20, 40)
    used = 0
    for sv in corpus:
        st = AdditiveState(sv.cand.weights, sv.cand.degrees)
        try:
            st.validate()
        except HypothesisError:
            continue
        used += 1
        tr = reduce_additive(st)
        assert tr.terminal.verdict
        # -f(m) = c_m, so increasing f is a decreasing chain
        assert all(st.f(m) < st.f(m + 1) for m in range(1, 12))
    assert used > 0


def test_lemma_at_gap_fails_below_one():
    tenth = Fraction(1, 10)
    assert lemma_at_gap(tenth, tenth, tenth, 2, 5) is False
    assert lemma_at_gap(1, 1, 1, 2, 5) is True
