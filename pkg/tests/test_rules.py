import random

import pytest

from conftest import make_position, random_nonterminal
from tablut.board import Coord, Player, Transform, apply_transform, initial_position, parse_tbn
from tablut.enumeration import naive_legal_moves
from tablut.rules import (
    DRAW,
    KING_CAPTURED,
    ONGOING,
    WHITE_ESCAPED,
    GameOver,
    IllegalMove,
    Move,
    Reason,
    Result,
    apply_move,
    captures_of,
    legal_moves,
    outcome,
)


def mv(text):
    return Move.parse(text)


def cells(*names):
    return frozenset(Coord.parse(n) for n in names)


def test_move_text():
    assert str(mv("e8-e3")) == "e8-e3"
    with pytest.raises(IllegalMove, match="null move"):
        mv("e5-e5")
    with pytest.raises(IllegalMove):
        mv("a1-b2")
    with pytest.raises(IllegalMove):
        mv("e8e3")


def test_king_boxed_in_at_start():
    moves = legal_moves(initial_position())
    assert all(m.start != Coord.parse("e5") for m in moves)
    assert moves == sorted(moves)
    assert moves == naive_legal_moves(initial_position())


def test_lone_king_moves_match_naive_scanner():
    p = make_position(king="c3")
    moves = legal_moves(p)
    assert moves == naive_legal_moves(p)
    assert len(moves) == 16
    assert mv("c3-c1") in moves and mv("c3-a3") in moves


def test_black_soldier_in_own_camp():
    p = make_position(black=["d9"], king="b7", side="b")
    moves = legal_moves(p)
    assert moves == naive_legal_moves(p)
    assert mv("d9-e9") in moves and mv("d9-f9") in moves
    # leaves the camp along the rank; stops before the bottom camp on the file
    assert mv("d9-i9") in moves and mv("d9-d2") in moves and mv("d9-d1") not in moves


def test_outsider_cannot_enter_camp_or_castle():
    p = make_position(white=["c2"], king="g7")
    moves = legal_moves(p)
    assert mv("c2-d2") in moves and mv("c2-e2") not in moves
    q = make_position(white=["e3"], black=["a9"], king="g7")
    assert mv("e3-e4") in legal_moves(q) and mv("e3-e5") not in legal_moves(q)
    # the king may not return to, or cross, the castle
    k = make_position(black=["a9"], king="e4")
    assert mv("e4-e5") not in legal_moves(k) and mv("e4-e6") not in legal_moves(k)


def test_legal_moves_on_terminal_position():
    with pytest.raises(GameOver):
        legal_moves(make_position(king="b1"))


def test_simple_custodian_capture():
    p = make_position(white=["c3", "h3"], black=["d3", "h9"], king="b7")
    assert captures_of(p, mv("h3-e3")) == cells("d3")


def test_illegal_move_rejected():
    p = make_position(white=["c3"], black=["d3"], king="b7")
    with pytest.raises(IllegalMove):
        apply_move(p, mv("c3-e3"))
    with pytest.raises(IllegalMove):
        captures_of(p, mv("d3-d4"))


# --- scripted scenarios ------------------------------------------------------


def test_king_captured_on_castle():
    p = parse_tbn("9/9/9/4B4/3BK4/4B4/9/5B3/9 b")
    r = apply_move(p, mv("f2-f5"))
    assert r.captured == cells("e5")
    assert r.outcome == KING_CAPTURED
    assert r.next.board.king == 0


def test_king_on_castle_needs_all_four():
    p = parse_tbn("9/9/9/9/3BK4/4B4/9/5B3/9 b")  # e6 missing
    assert apply_move(p, mv("f2-f5")).outcome == ONGOING


def test_king_next_to_castle_three_plus_castle():
    p = parse_tbn("9/9/9/9/9/3BKB3/B8/9/9 b")
    r = apply_move(p, mv("a3-e3"))
    assert r.captured == cells("e4")
    assert r.outcome == KING_CAPTURED


def test_king_next_to_castle_not_taken_by_pair():
    p = make_position(black=["a3", "e6", "a9"], king="e4", side="b")
    # e3 and e5-side: castle alone is not enough, nor is a pair with the castle empty
    assert apply_move(p, mv("a3-e3")).outcome == ONGOING
    q = make_position(black=["d4", "h4"], king="e4", side="b")
    assert apply_move(q, mv("h4-f4")).outcome == ONGOING


def test_king_captured_against_camp():
    p = parse_tbn("9/9/3B5/9/9/9/9/3K5/9 b")
    r = apply_move(p, mv("d7-d3"))
    assert r.captured == cells("d2")
    assert r.outcome == KING_CAPTURED


def test_king_captured_by_pair():
    p = make_position(black=["b4", "g4"], king="c4", side="b")
    r = apply_move(p, mv("g4-d4"))
    assert r.captured == cells("c4")
    assert r.outcome.result is Result.BLACK_WIN


def test_soldier_captured_against_castle():
    p = parse_tbn("9/7B1/1K7/9/9/4B4/W8/9/9 w")
    r = apply_move(p, mv("a3-e3"))
    assert r.captured == cells("e4")
    assert r.outcome == ONGOING


def test_soldier_captured_against_camp():
    p = parse_tbn("9/3W3B1/1K7/9/2B6/9/9/9/9 w")
    assert apply_move(p, mv("d8-d5")).captured == cells("c5")


def test_soldier_inside_camp_is_immune():
    p = parse_tbn("9/7B1/1K7/9/9/9/6W2/4B4/9 w")
    r = apply_move(p, mv("g3-e3"))
    assert r.captured == frozenset()
    assert r.next.board.black & (1 << Coord.parse("e2").index)


def test_moving_into_custody_is_safe():
    p = parse_tbn("9/7B1/1K1W5/9/9/9/2B1B4/9/9 w")
    r = apply_move(p, mv("d7-d3"))
    assert r.captured == frozenset()
    assert r.next.board.white & (1 << Coord.parse("d3").index)
    # nor does black capture it by just moving elsewhere
    r2 = apply_move(r.next, mv("h8-h7"))
    assert r2.captured == frozenset()


def test_king_can_capture():
    p = make_position(black=["d6", "h9"], white=["c6"], king="g6")
    assert captures_of(p, mv("g6-e6")) == cells("d6")


def test_triple_capture():
    p = make_position(
        black=["c4", "e4", "d5", "h8"], white=["b4", "f4", "d6", "d2"], king="g7"
    )
    r = apply_move(p, mv("d2-d4"))
    assert r.captured == cells("c4", "e4", "d5")
    assert r.outcome == ONGOING


def test_repetition_draw_by_shuttle():
    p = parse_tbn("9/9/2W3B2/9/4K4/9/9/9/9 w")
    seq = ["c7-c8", "g7-g8", "c8-c7"]
    for text in seq:
        r = apply_move(p, mv(text))
        assert r.outcome == ONGOING
        assert len(r.next.seen) == len(p.seen) + 1
        p = r.next
    r = apply_move(p, mv("g8-g7"))
    assert r.outcome == DRAW
    assert outcome(r.next) == DRAW
    assert len(r.next.seen) == len(p.seen)


def test_win_by_immobility():
    p = parse_tbn("9/9/6K2/9/9/9/1W7/9/WBW6 w")
    r = apply_move(p, mv("b3-b2"))
    assert r.captured == frozenset()
    assert r.outcome.result is Result.WHITE_WIN
    assert r.outcome.reason is Reason.OPPONENT_IMMOBILE
    assert outcome(r.next) == r.outcome


def test_black_wins_when_white_immobile():
    # king beside the castle, shielded on e3 by its own boxed-in soldier
    p = make_position(black=["d4", "d3", "f3", "f8"], white=["e3"], king="e4", side="b")
    r = apply_move(p, mv("f8-f4"))
    assert r.captured == frozenset()
    assert r.outcome.result is Result.BLACK_WIN
    assert r.outcome.reason is Reason.OPPONENT_IMMOBILE


def test_escape_wins():
    p = make_position(king="c3", black=["h8"])
    r = apply_move(p, mv("c3-c1"))
    assert r.outcome == WHITE_ESCAPED
    assert str(r.outcome) == "white wins: escape"
    assert outcome(make_position(king="b1", black=["h8"])) == WHITE_ESCAPED


def test_capturing_last_black_wins():
    p = make_position(white=["c3", "h3"], black=["d3"], king="b7")
    r = apply_move(p, mv("h3-e3"))
    assert r.captured == cells("d3")
    assert r.outcome.result is Result.WHITE_WIN
    assert r.outcome.reason is Reason.OPPONENT_ELIMINATED


def test_outcome_examples():
    assert outcome(initial_position()) == ONGOING
    assert outcome(make_position(king="g7", side="b")).result is Result.WHITE_WIN


def test_determinism_and_equivariance():
    rng = random.Random(11)
    for _ in range(200):
        p = random_nonterminal(rng)
        moves = legal_moves(p)
        assert moves == legal_moves(p)
        assert moves == naive_legal_moves(p)
        for t in Transform:
            q = apply_transform(p, t)
            assert legal_moves(q) == sorted(Move(t(m.start), t(m.end)) for m in moves)
        for m in moves[:10]:
            got = captures_of(p, m)
            for t in Transform:
                q = apply_transform(p, t)
                assert captures_of(q, Move(t(m.start), t(m.end))) == {t(c) for c in got}


def test_piece_conservation():
    rng = random.Random(5)
    for _ in range(200):
        p = random_nonterminal(rng)
        m = rng.choice(legal_moves(p))
        r = apply_move(p, m)
        before = len(p.board.pieces())
        after = len(r.next.board.pieces())
        assert after == before - len(r.captured)
        assert len(r.captured) <= 3
        mover = p.to_move
        own = lambda b: (b.black if mover is Player.BLACK else b.white | b.king).bit_count()
        assert own(r.next.board) == own(p.board)
