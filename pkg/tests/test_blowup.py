from fractions import Fraction

import pytest

from wcifano.blowup import (PairingResult, blowup_chern_pairings, blowup_table, blowup_top_chern,
                            chern_character, closed_form_pairings, closed_form_top, degree,
                            graded_piece)


def test_n4_table():
    rows, top = blowup_table(4)
    assert [(r.ch_dot_X, r.ch_dot_Y) for r in rows] == [
        (2, 3), (0, Fraction(5, 2)), (Fraction(1, 3), Fraction(1, 2))]
    assert top == 0


@pytest.mark.parametrize("n", range(2, 21))
def test_expansion_matches_closed_form(n):
    rows, top = blowup_table(n)
    for r in rows:
        assert (r.ch_dot_X, r.ch_dot_Y) == closed_form_pairings(n, r.k)
        if r.k % 2 == 0:
            assert r.ch_dot_X == 0
    assert top == closed_form_top(n)
    if n % 2 == 0:
        assert top == 0


def test_rank_and_first_chern_class():
    ch = chern_character(3)
    # rank n + 1 for the tangent sheaf of a threefold blown up at a point
    assert graded_piece(ch, 0) == {(0, 0): 3}
    # c_1 = (n + 1) H - (n - 1) E
    assert graded_piece(ch, 1) == {(1, 0): 4, (0, 1): -2}


def test_degree_conventions():
    assert degree({(3, 0): Fraction(1)}, 3) == 1
    assert degree({(0, 3): Fraction(1)}, 3) == 1
    assert degree({(0, 4): Fraction(1)}, 4) == -1
    with pytest.raises(ValueError):
        degree({(1, 0): Fraction(1)}, 3)


def test_denominator_guard():
    with pytest.raises(ValueError):
        PairingResult(5, 2, Fraction(1, 3), Fraction(0))
    assert PairingResult(5, 3, Fraction(1, 3), Fraction(0)).to_dict()["ch_dot_X"] == "1/3"


@pytest.mark.parametrize("n, k", [(1, 1), (4, 0), (4, 4)])
def test_domain(n, k):
    with pytest.raises(ValueError):
        blowup_chern_pairings(n, k)


def test_top_domain():
    with pytest.raises(ValueError):
        blowup_top_chern(1)
