"""Tablut rules engine and exact state-space bounds."""
from .board import (
    Board,
    CellClass,
    Coord,
    Piece,
    Player,
    Position,
    TBNError,
    Transform,
    apply_transform,
    classify,
    format_tbn,
    initial_position,
    parse_tbn,
)
from .counting import BoundsReport, bounds_report, multinomial, ub_naive, ub_term
from .enumeration import (
    canonicalize,
    derive_geometry,
    enumerate_placements,
    perft,
    random_playout,
    reachable_count,
)
from .rules import (
    GameOver,
    IllegalMove,
    Move,
    MoveResult,
    Outcome,
    apply_move,
    captures_of,
    legal_moves,
    outcome,
)

__version__ = "0.1.0"
