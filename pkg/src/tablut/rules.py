"""Move generation, capture resolution and endgame detection."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .board import (
    CAMP_MASK,
    CAMP_OF,
    CASTLE,
    CITADEL_MASK,
    COORDS,
    ESCAPE_MASK,
    SIZE,
    Board,
    Coord,
    Player,
    Position,
    iter_bits,
)

# N, S, E, W as (dfile, drank)
DIRECTIONS = ((0, 1), (0, -1), (1, 0), (-1, 0))
OPPOSITE_DIR = (1, 0, 3, 2)


def _neighbor_table() -> tuple[tuple[int, ...], ...]:
    table = []
    for c in COORDS:
        row = []
        for df, dr in DIRECTIONS:
            f, r = c.file + df, c.rank + dr
            row.append(f * SIZE + r if 0 <= f < SIZE and 0 <= r < SIZE else -1)
        table.append(tuple(row))
    return tuple(table)


NEIGHBORS = _neighbor_table()
RAYS: tuple[tuple[tuple[int, ...], ...], ...] = tuple(
    tuple(
        tuple(
            (c.file + k * df) * SIZE + c.rank + k * dr
            for k in range(1, SIZE)
            if 0 <= c.file + k * df < SIZE and 0 <= c.rank + k * dr < SIZE
        )
        for df, dr in DIRECTIONS
    )
    for c in COORDS
)
CASTLE_NEIGHBORS = frozenset(n for n in NEIGHBORS[CASTLE] if n >= 0)

# No castle neighbor touches a camp, so the castle-side and camp-side king
# rules never apply to the same cell.
assert not any(
    n >= 0 and CAMP_MASK >> n & 1 for c in CASTLE_NEIGHBORS for n in NEIGHBORS[c]
)


class GameOver(Exception):
    """Raised when asking for moves in a terminal position."""


class IllegalMove(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Move:
    start: Coord
    end: Coord

    def __post_init__(self) -> None:
        if self.start == self.end:
            raise IllegalMove("null move")
        if self.start.file != self.end.file and self.start.rank != self.end.rank:
            raise IllegalMove(f"{self} is not along a file or rank")

    @staticmethod
    def parse(text: str) -> "Move":
        try:
            a, b = text.split("-")
            start, end = Coord.parse(a), Coord.parse(b)
        except ValueError:
            raise IllegalMove(f"bad move text {text!r}") from None
        return Move(start, end)

    def __str__(self) -> str:
        return f"{self.start}-{self.end}"


class Result(enum.Enum):
    ONGOING = "ongoing"
    WHITE_WIN = "white wins"
    BLACK_WIN = "black wins"
    DRAW = "draw"


class Reason(enum.Enum):
    ESCAPE = "escape"
    KING_CAPTURED = "king captured"
    OPPONENT_IMMOBILE = "opponent immobile"
    OPPONENT_ELIMINATED = "opponent eliminated"
    REPETITION = "repetition"


@dataclass(frozen=True)
class Outcome:
    result: Result
    reason: Reason | None = None

    @property
    def terminal(self) -> bool:
        return self.result is not Result.ONGOING

    def __str__(self) -> str:
        if self.reason is None:
            return self.result.value
        return f"{self.result.value}: {self.reason.value}"


ONGOING = Outcome(Result.ONGOING)
WHITE_ESCAPED = Outcome(Result.WHITE_WIN, Reason.ESCAPE)
KING_CAPTURED = Outcome(Result.BLACK_WIN, Reason.KING_CAPTURED)
DRAW = Outcome(Result.DRAW, Reason.REPETITION)


def _immobile_win(winner: Player) -> Outcome:
    return Outcome(
        Result.WHITE_WIN if winner is Player.WHITE else Result.BLACK_WIN,
        Reason.OPPONENT_IMMOBILE,
    )


@dataclass(frozen=True)
class MoveResult:
    next: Position
    captured: frozenset[Coord]
    outcome: Outcome


# --- movement ----------------------------------------------------------------


def _movers(board: Board, player: Player) -> int:
    return board.black if player is Player.BLACK else board.white | board.king


def _destinations(occupied: int, s: int):
    # Citadel cells block unless they belong to the camp the piece stands in;
    # the castle is never enterable.
    blocked = occupied | (CITADEL_MASK & ~CAMP_OF[s])
    for ray in RAYS[s]:
        for d in ray:
            if blocked >> d & 1:
                break
            yield d


def move_pairs(board: Board, player: Player) -> list[tuple[int, int]]:
    """Legal (from, to) index pairs for ``player``, sorted by (from, to)."""
    occupied = board.black | board.white | board.king
    out = []
    for s in iter_bits(_movers(board, player)):
        out.extend((s, d) for d in sorted(_destinations(occupied, s)))
    return out


def has_move(board: Board, player: Player) -> bool:
    occupied = board.black | board.white | board.king
    for s in iter_bits(_movers(board, player)):
        for _ in _destinations(occupied, s):
            return True
    return False


def _path_clear(board: Board, s: int, d: int) -> bool:
    return d in _destinations(board.occupied, s)


# --- captures ----------------------------------------------------------------


def king_is_surrounded(black: int, king: int, hammer: int | None = None) -> bool:
    """Whether a king on cell ``king`` is surrounded by the black mask.

    ``hammer`` restricts the two-sided rule to the axis through that cell, as
    for an active capture; ``None`` checks every axis.
    """
    if king == CASTLE:
        return all(black >> n & 1 for n in NEIGHBORS[king])
    if king in CASTLE_NEIGHBORS:
        return all(black >> n & 1 for n in NEIGHBORS[king] if n != CASTLE)
    hostile = black | CAMP_MASK
    for d in range(4):
        a = NEIGHBORS[king][d]
        b = NEIGHBORS[king][OPPOSITE_DIR[d]]
        if a < 0 or b < 0:
            continue
        if hammer is not None and hammer != a:
            continue
        if hostile >> a & 1 and hostile >> b & 1:
            return True
    return False


def capture_mask(board: Board, player: Player, dest: int) -> int:
    """Opposing pieces captured by ``player``'s piece having just arrived on ``dest``.

    ``board`` already shows the moved piece on ``dest``.
    """
    if player is Player.WHITE:
        victims = board.black
        anvils = board.white | board.king | CITADEL_MASK
    else:
        victims = board.white
        anvils = board.black | CITADEL_MASK
    captured = 0
    for d in range(4):
        n = NEIGHBORS[dest][d]
        if n < 0:
            continue
        if victims >> n & 1:
            if CAMP_MASK >> n & 1:
                continue
            o = NEIGHBORS[n][d]
            if o >= 0 and anvils >> o & 1:
                captured |= 1 << n
        elif player is Player.BLACK and board.king >> n & 1:
            if king_is_surrounded(board.black, n, hammer=dest):
                captured |= 1 << n
    return captured


# --- applying moves ----------------------------------------------------------


def _displace(board: Board, player: Player, s: int, d: int) -> Board:
    move = (1 << s) | (1 << d)
    if player is Player.BLACK:
        return Board(board.black ^ move, board.white, board.king)
    if board.king >> s & 1:
        return Board(board.black, board.white, board.king ^ move)
    return Board(board.black, board.white ^ move, board.king)


def apply_pair(p: Position, s: int, d: int) -> tuple[Position, int, Outcome]:
    """Apply a move known to be legal; returns (next, captured mask, outcome)."""
    mover = p.to_move
    board = _displace(p.board, mover, s, d)
    captured = capture_mask(board, mover, d)
    if captured:
        board = Board(board.black & ~captured, board.white & ~captured, board.king & ~captured)
    side = mover.opponent
    key = (board.black, board.white, board.king, side)
    repeated = key in p.seen
    nxt = Position(board, side, p.seen | {key}, repeated)

    if mover is Player.WHITE and board.king & ESCAPE_MASK:
        return nxt, captured, WHITE_ESCAPED
    if p.board.king and not board.king:
        return nxt, captured, KING_CAPTURED
    if repeated:
        return nxt, captured, DRAW
    if side is Player.BLACK and not board.black:
        return nxt, captured, Outcome(Result.WHITE_WIN, Reason.OPPONENT_ELIMINATED)
    if not has_move(board, side):
        return nxt, captured, _immobile_win(mover)
    return nxt, captured, ONGOING


def outcome(p: Position) -> Outcome:
    """Terminal classification of ``p`` as it stands."""
    board = p.board
    if board.king & ESCAPE_MASK:
        return WHITE_ESCAPED
    if not board.king:
        return KING_CAPTURED
    if p.repeated:
        return DRAW
    if p.to_move is Player.BLACK and not board.black:
        return Outcome(Result.WHITE_WIN, Reason.OPPONENT_ELIMINATED)
    if not has_move(board, p.to_move):
        return _immobile_win(p.to_move.opponent)
    return ONGOING


def legal_moves(p: Position) -> list[Move]:
    if outcome(p).terminal:
        raise GameOver("game over")
    return [Move(COORDS[s], COORDS[d]) for s, d in move_pairs(p.board, p.to_move)]


def is_legal(p: Position, m: Move) -> bool:
    s, d = m.start.index, m.end.index
    return bool(_movers(p.board, p.to_move) >> s & 1) and _path_clear(p.board, s, d)


def _check(p: Position, m: Move) -> None:
    if outcome(p).terminal:
        raise GameOver("game over")
    if not is_legal(p, m):
        raise IllegalMove(f"illegal move {m}")


def captures_of(p: Position, m: Move) -> frozenset[Coord]:
    _check(p, m)
    s, d = m.start.index, m.end.index
    board = _displace(p.board, p.to_move, s, d)
    return frozenset(COORDS[i] for i in iter_bits(capture_mask(board, p.to_move, d)))


def apply_move(p: Position, m: Move) -> MoveResult:
    _check(p, m)
    nxt, captured, out = apply_pair(p, m.start.index, m.end.index)
    return MoveResult(nxt, frozenset(COORDS[i] for i in iter_bits(captured)), out)

