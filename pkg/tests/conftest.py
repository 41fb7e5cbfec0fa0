import random

import pytest

from tablut.board import (
    CASTLE,
    CELL_CLASS,
    NUM_CELLS,
    Board,
    CellClass,
    Coord,
    Piece,
    Player,
    Position,
)

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def make_position(black=(), white=(), king=None, side="w") -> Position:
    placement = {Coord.parse(c): Piece.BLACK_SOLDIER for c in black}
    placement.update({Coord.parse(c): Piece.WHITE_SOLDIER for c in white})
    if king:
        placement[Coord.parse(king)] = Piece.KING
    return Position(Board.from_pieces(placement), Player(side))


def random_board(rng: random.Random, king_cells=None) -> Board:
    """A board satisfying the placement invariants (not necessarily reachable)."""
    cells = [i for i in range(NUM_CELLS) if i != CASTLE]
    king = 0
    if king_cells is None or rng.random() < 0.9:
        pool = king_cells or range(NUM_CELLS)
        k = rng.choice(list(pool))
        king = 1 << k
        cells = [i for i in cells if i != k]
    rng.shuffle(cells)
    nb = rng.randint(0, 16)
    nw = rng.randint(0, 8)
    black = sum(1 << i for i in cells[:nb])
    white = sum(1 << i for i in cells[nb : nb + nw])
    return Board(black, white, king)


def random_nonterminal(rng: random.Random) -> Position:
    """Random board with the king on a castle or plain cell and both sides able to move."""
    from tablut.rules import outcome

    king_cells = [i for i, k in enumerate(CELL_CLASS) if k in (CellClass.CASTLE, CellClass.PLAIN)]
    while True:
        board = random_board(rng, king_cells)
        p = Position(board, rng.choice(list(Player)))
        if board.king and board.black and not outcome(p).terminal:
            return p


@pytest.fixture
def rng():
    return random.Random(20240517)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
