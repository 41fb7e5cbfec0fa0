"""Tablut board geometry, positions, TBN notation and the square symmetry group.

Cells are indexed ``file * 9 + rank`` so that integer order coincides with
the ``(file, rank)`` order of :class:`Coord`. A board is three disjoint
81-bit masks (black soldiers, white soldiers, king).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

SIZE = 9
NUM_CELLS = SIZE * SIZE
FILES = "abcdefghi"

MAX_BLACK = 16
MAX_WHITE = 8


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True, order=True)
class Coord:
    file: int
    rank: int

    def __post_init__(self) -> None:
        if not (0 <= self.file < SIZE and 0 <= self.rank < SIZE):
            raise ValueError(f"coordinate out of range: ({self.file}, {self.rank})")

    @property
    def index(self) -> int:
        return self.file * SIZE + self.rank

    @staticmethod
    def from_index(index: int) -> "Coord":
        return COORDS[index]

    @staticmethod
    def parse(text: str) -> "Coord":
        """Parse algebraic text such as ``"e5"``."""
        if len(text) != 2 or text[0] not in FILES or text[1] not in "123456789":
            raise ValueError(f"bad coordinate {text!r}")
        return COORDS[FILES.index(text[0]) * SIZE + int(text[1]) - 1]

    def __str__(self) -> str:
        return f"{FILES[self.file]}{self.rank + 1}"


COORDS: tuple[Coord, ...] = tuple(Coord(i // SIZE, i % SIZE) for i in range(NUM_CELLS))


def _idx(text: str) -> int:
    return Coord.parse(text).index


class CellClass(enum.Enum):
    CASTLE = "castle"
    CAMP = "camp"
    ESCAPE = "escape"
    CORNER = "corner"
    PLAIN = "plain"


CASTLE = _idx("e5")
CAMPS: tuple[frozenset[int], ...] = tuple(
    frozenset(_idx(c) for c in group)
    for group in (
        ("d1", "e1", "f1", "e2"),
        ("d9", "e9", "f9", "e8"),
        ("a4", "a5", "a6", "b5"),
        ("i4", "i5", "i6", "h5"),
    )
)
CORNERS = frozenset(_idx(c) for c in ("a1", "i1", "a9", "i9"))


def _build_classes() -> tuple[CellClass, ...]:
    camp_cells = frozenset().union(*CAMPS)
    out = []
    for i, c in enumerate(COORDS):
        if i == CASTLE:
            out.append(CellClass.CASTLE)
        elif i in camp_cells:
            out.append(CellClass.CAMP)
        elif i in CORNERS:
            out.append(CellClass.CORNER)
        elif c.file in (0, SIZE - 1) or c.rank in (0, SIZE - 1):
            out.append(CellClass.ESCAPE)
        else:
            out.append(CellClass.PLAIN)
    return tuple(out)


CELL_CLASS = _build_classes()


def classify(c: Coord) -> CellClass:
    return CELL_CLASS[c.index]


def cells_of(cls: CellClass) -> list[Coord]:
    return [COORDS[i] for i, k in enumerate(CELL_CLASS) if k is cls]


def _mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


CASTLE_MASK = 1 << CASTLE
CAMP_MASK = _mask(i for i, k in enumerate(CELL_CLASS) if k is CellClass.CAMP)
CITADEL_MASK = CAMP_MASK | CASTLE_MASK
ESCAPE_MASK = _mask(i for i, k in enumerate(CELL_CLASS) if k is CellClass.ESCAPE)
CORNER_MASK = _mask(CORNERS)
# Mask of the camp a cell belongs to (0 outside camps).
CAMP_OF: tuple[int, ...] = tuple(
    next((_mask(g) for g in CAMPS if i in g), 0) for i in range(NUM_CELLS)
)


class Piece(enum.Enum):
    BLACK_SOLDIER = "B"
    WHITE_SOLDIER = "W"
    KING = "K"

    @property
    def owner(self) -> "Player":
        return Player.BLACK if self is Piece.BLACK_SOLDIER else Player.WHITE


class Player(enum.Enum):
    WHITE = "w"
    BLACK = "b"

    @property
    def opponent(self) -> "Player":
        return Player.BLACK if self is Player.WHITE else Player.WHITE


@dataclass(frozen=True)
class Board:
    """Piece placement as three disjoint bit masks; ``king`` is 0 when absent."""

    black: int = 0
    white: int = 0
    king: int = 0

    @property
    def occupied(self) -> int:
        return self.black | self.white | self.king

    @property
    def king_cell(self) -> Coord | None:
        return COORDS[self.king.bit_length() - 1] if self.king else None

    def piece_at(self, c: Coord) -> Piece | None:
        bit = 1 << c.index
        if self.black & bit:
            return Piece.BLACK_SOLDIER
        if self.white & bit:
            return Piece.WHITE_SOLDIER
        if self.king & bit:
            return Piece.KING
        return None

    def pieces(self) -> dict[Coord, Piece]:
        out = {}
        for mask, piece in (
            (self.black, Piece.BLACK_SOLDIER),
            (self.white, Piece.WHITE_SOLDIER),
            (self.king, Piece.KING),
        ):
            for i in iter_bits(mask):
                out[COORDS[i]] = piece
        return out

    @classmethod
    def from_pieces(cls, placement: dict[Coord, Piece]) -> "Board":
        masks = {p: 0 for p in Piece}
        for c, p in placement.items():
            masks[p] |= 1 << c.index
        return cls(masks[Piece.BLACK_SOLDIER], masks[Piece.WHITE_SOLDIER], masks[Piece.KING])

    def violations(self) -> list[str]:
        """Board invariant violations, empty when the board is valid."""
        problems = []
        if self.black & self.white or self.black & self.king or self.white & self.king:
            problems.append("overlapping pieces")
        if popcount(self.king) > 1:
            problems.append("more than one king")
        if (self.black | self.white) & CASTLE_MASK:
            problems.append("soldier on castle")
        if popcount(self.black) > MAX_BLACK:
            problems.append("too many black soldiers")
        if popcount(self.white) > MAX_WHITE:
            problems.append("too many white soldiers")
        if self.occupied >> NUM_CELLS:
            problems.append("cell index out of range")
        return problems


StateKey = tuple[int, int, int, Player]


@dataclass(frozen=True)
class Position:
    """Game state: placement, side to move, and every state key seen so far.

    ``repeated`` records that the last applied move recreated a key that was
    already in ``seen`` (the game is then drawn).
    """

    board: Board
    to_move: Player
    seen: frozenset = field(default=frozenset())
    repeated: bool = False

    def __post_init__(self) -> None:
        if not self.seen:
            object.__setattr__(self, "seen", frozenset((self.key,)))

    @property
    def key(self) -> StateKey:
        b = self.board
        return (b.black, b.white, b.king, self.to_move)

    def fresh(self) -> "Position":
        """The same state with its history reset to just itself."""
        return Position(self.board, self.to_move)


def initial_position() -> Position:
    black = CAMP_MASK
    white = _mask(_idx(c) for c in ("e3", "e4", "e6", "e7", "c5", "d5", "f5", "g5"))
    return Position(Board(black, white, CASTLE_MASK), Player.WHITE)


# --- TBN ---------------------------------------------------------------------


class TBNError(ValueError):
    """Malformed or invalid TBN text."""


class TBNSyntaxError(TBNError):
    pass


class TwoKingsError(TBNError):
    pass


class SoldierOnCastleError(TBNError):
    pass


class PieceCountError(TBNError):
    pass


_SYMBOL = {Piece.BLACK_SOLDIER: "B", Piece.WHITE_SOLDIER: "W", Piece.KING: "K"}


def format_board(board: Board) -> str:
    rows = []
    for rank in range(SIZE - 1, -1, -1):
        row, run = [], 0
        for f in range(SIZE):
            bit = 1 << (f * SIZE + rank)
            if board.black & bit:
                sym = "B"
            elif board.white & bit:
                sym = "W"
            elif board.king & bit:
                sym = "K"
            else:
                run += 1
                continue
            if run:
                row.append(str(run))
                run = 0
            row.append(sym)
        if run:
            row.append(str(run))
        rows.append("".join(row))
    return "/".join(rows)


def format_tbn(p: Position) -> str:
    return f"{format_board(p.board)} {p.to_move.value}"


def parse_tbn(text: str) -> Position:
    """Parse TBN text into a position with a fresh repetition history."""
    parts = text.strip().split(" ")
    if len(parts) != 2:
        raise TBNSyntaxError(f"expected '<board> <side>', got {text!r}")
    placement, side = parts
    if side not in ("w", "b"):
        raise TBNSyntaxError(f"bad side to move {side!r}")
    ranks = placement.split("/")
    if len(ranks) != SIZE:
        raise TBNSyntaxError(f"expected 9 ranks, got {len(ranks)} in {placement!r}")
    black = white = king = 0
    kings = 0
    for row_no, row in enumerate(ranks):
        rank = SIZE - 1 - row_no
        f = 0
        prev_digit = False
        for ch in row:
            if ch in "123456789":
                if prev_digit:
                    raise TBNSyntaxError(f"non-maximal empty run in rank field {row!r}")
                f += int(ch)
                prev_digit = True
                continue
            prev_digit = False
            if ch not in "BWK":
                raise TBNSyntaxError(f"bad symbol {ch!r} in rank field {row!r}")
            if f >= SIZE:
                raise TBNSyntaxError(f"rank field {row!r} too long")
            bit = 1 << (f * SIZE + rank)
            if ch == "B":
                black |= bit
            elif ch == "W":
                white |= bit
            else:
                king |= bit
                kings += 1
            f += 1
        if f != SIZE:
            raise TBNSyntaxError(f"rank field {row!r} covers {f} cells, expected 9")
    if kings > 1:
        raise TwoKingsError(f"two kings in {placement!r}")
    if (black | white) & CASTLE_MASK:
        raise SoldierOnCastleError(f"soldier on castle e5 in {placement!r}")
    if popcount(black) > MAX_BLACK:
        raise PieceCountError(f"{popcount(black)} black soldiers exceed {MAX_BLACK}")
    if popcount(white) > MAX_WHITE:
        raise PieceCountError(f"{popcount(white)} white soldiers exceed {MAX_WHITE}")
    return Position(Board(black, white, king), Player(side))


# --- symmetries --------------------------------------------------------------


class Transform(enum.Enum):
    IDENTITY = "id"
    ROT90 = "r90"
    ROT180 = "r180"
    ROT270 = "r270"
    MIRROR_FILES = "mf"
    MIRROR_RANKS = "mr"
    DIAGONAL = "d"
    ANTIDIAGONAL = "ad"

    def __call__(self, c: Coord) -> Coord:
        return COORDS[PERMUTATION[self][c.index]]

    def compose(self, first: "Transform") -> "Transform":
        """The transform ``self ∘ first`` (apply ``first``, then ``self``)."""
        return _COMPOSE[(self, first)]

    @property
    def inverse(self) -> "Transform":
        return next(t for t in Transform if t.compose(self) is Transform.IDENTITY)


_M = SIZE - 1
_COORD_MAP = {
    Transform.IDENTITY: lambda f, r: (f, r),
    Transform.ROT90: lambda f, r: (r, _M - f),
    Transform.ROT180: lambda f, r: (_M - f, _M - r),
    Transform.ROT270: lambda f, r: (_M - r, f),
    Transform.MIRROR_FILES: lambda f, r: (_M - f, r),
    Transform.MIRROR_RANKS: lambda f, r: (f, _M - r),
    Transform.DIAGONAL: lambda f, r: (r, f),
    Transform.ANTIDIAGONAL: lambda f, r: (_M - r, _M - f),
}
PERMUTATION: dict[Transform, tuple[int, ...]] = {
    t: tuple(fr[0] * SIZE + fr[1] for fr in (fn(c.file, c.rank) for c in COORDS))
    for t, fn in _COORD_MAP.items()
}
_BY_PERM = {perm: t for t, perm in PERMUTATION.items()}
_COMPOSE = {
    (u, t): _BY_PERM[tuple(PERMUTATION[u][PERMUTATION[t][i]] for i in range(NUM_CELLS))]
    for u in Transform
    for t in Transform
}


def transform_mask(mask: int, t: Transform) -> int:
    if t is Transform.IDENTITY:
        return mask
    perm = PERMUTATION[t]
    out = 0
    for i in iter_bits(mask):
        out |= 1 << perm[i]
    return out


def transform_board(board: Board, t: Transform) -> Board:
    return Board(
        transform_mask(board.black, t),
        transform_mask(board.white, t),
        transform_mask(board.king, t),
    )


def apply_transform(p: Position, t: Transform) -> Position:
    """Map placement and history cell-wise; the side to move is unchanged."""
    seen = frozenset(
        (transform_mask(b, t), transform_mask(w, t), transform_mask(k, t), side)
        for b, w, k, side in p.seen
    )
    return Position(transform_board(p.board, t), p.to_move, seen, p.repeated)
