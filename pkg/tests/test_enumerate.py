import pytest

from wcifano.core import WciCandidate, is_l_fano
from wcifano.enumerate import (SearchCaps, default_m_max, enumerate_candidates, filtered_corpus,
                               run_search, verify_log2, verify_log3, verify_monotonic)


def pairs(result):
    return [(sv.cand.weights, sv.cand.degrees) for sv in result.survivors]


def test_conic_is_the_only_curve():
    assert pairs(run_search(SearchCaps(1, 20, 40), 1)) == [((1, 1, 1), (2,))]


def test_n7_l3_is_the_quadric():
    res = run_search(SearchCaps(7, 20, 40), 3)
    assert pairs(res) == [((1,) * 9, (2,))]
    assert res.survivors[0].to_record() == {"schema": 1, "n": 7, "k": 1, "weights": [1] * 9,
                                            "degrees": [2], "chern": [7, 5, 1], "l": 3}


def test_no_surfaces_at_l2():
    assert run_search(SearchCaps(2, 20, 40), 2).survivors == []


def test_survivors_are_sorted_and_valid():
    res = run_search(SearchCaps(5, 20, 40), 1, check=True)
    keys = [sv.sort_key() for sv in res.survivors]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert res.scanned >= len(res.survivors) > 0


def test_verify_log3_small_caps():
    rep = verify_log3([7], 12, 24)
    assert rep.verdict == "confirmed-within-caps"
    assert [r["l"] for r in rep.runs] == [2, 3]
    assert {(sv.cand.weights, sv.cand.degrees, sv.l) for sv in rep.survivors} == {
        ((1,) * 9, (2,), 2), ((1,) * 10, (2, 2), 2), ((1,) * 9, (2,), 3)}


def test_empty_window_runs_nothing():
    rep = verify_log3([2], 20, 40)
    assert rep.runs == [] and rep.candidates_scanned == 0
    assert rep.verdict == "confirmed-within-caps"


def test_verify_log2_small():
    rep = verify_log2([1, 2, 3, 4], 20, 40)
    assert rep.survivors == [] and rep.verdict == "confirmed-within-caps"
    assert [r["l"] for r in rep.runs] == [2, 2, 3, 3]
    assert rep.to_dict()["survivor_count"] == 0


def test_verify_monotonic_examples():
    corpus, _ = filtered_corpus([1, 2, 3], 20, 40)
    rep = verify_monotonic(corpus, 13)
    assert rep.violations == [] and rep.candidates_scanned == 15
    assert rep.dims == [1, 2, 3]


def test_verify_monotonic_rejects_outside_corpus():
    with pytest.raises(ValueError):
        verify_monotonic([WciCandidate.of((1, 1, 1, 1, 5), (3, 3, 3))], 5)


def test_default_m_max():
    assert default_m_max([1]) == 10
    assert default_m_max(range(1, 10)) == 10
    assert default_m_max([200]) == 7 + 3


def test_parallel_matches_serial():
    caps = SearchCaps(6, 20, 40)
    a = run_search(caps, 1, jobs=1)
    b = run_search(caps, 1, jobs=2)
    assert [sv.to_record() for sv in a.survivors] == [sv.to_record() for sv in b.survivors]
    assert a.scanned == b.scanned


def test_top_mode_agrees_on_corpus():
    corpus, _ = filtered_corpus(range(1, 7), 20, 40)
    for sv in corpus:
        for l in range(1, 8):
            assert is_l_fano(sv.cand, l, "top") == is_l_fano(sv.cand, l, "full")


def test_enumerate_sink_order():
    seen = []
    count = enumerate_candidates(SearchCaps(3, 20, 40), 1, seen.append)
    assert count == len(seen) == 9
    assert seen == sorted(seen, key=lambda sv: sv.sort_key())


def test_search_caps_validation():
    with pytest.raises(ValueError):
        SearchCaps(0, 20, 40)
    with pytest.raises(ValueError):
        SearchCaps(3, 0, 40)
    with pytest.raises(ValueError):
        SearchCaps(3, 20, 40, max_codim=0)
    with pytest.warns(UserWarning, match="empty"):
        SearchCaps(3, 2, 3)
    with pytest.warns(UserWarning, match="never survive"):
        assert SearchCaps(3, 20, 30).weight_bound == 15
    assert SearchCaps(3, 20, 40, max_codim=9).codim_bound == 3
    with pytest.raises(ValueError):
        run_search(SearchCaps(3, 20, 40), 0)
