"""Brute-force oracles and engine checks.

Nothing here reuses the closed-form counting code: placements are counted by
walking every assignment, geometric constants are read off the cell classes
and the king-capture predicate, and :func:`naive_legal_moves` re-derives
movement legality from coordinates alone.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .board import (
    COORDS,
    SIZE,
    CellClass,
    Coord,
    Player,
    Position,
    Transform,
    apply_transform,
    classify,
    format_tbn,
    iter_bits,
    parse_tbn,
)
from .rules import (
    NEIGHBORS,
    OPPOSITE_DIR,
    Move,
    Outcome,
    apply_pair,
    has_move,
    king_is_surrounded,
    move_pairs,
    outcome,
)

MAX_REGION = 14
MAX_PERFT_DEPTH = 6


class RegionTooLarge(ValueError):
    pass


class DepthTooLarge(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """Reachability search stopped early; carries the partial state."""

    def __init__(self, depth: int, frontier_size: int, counted: int):
        super().__init__(
            f"state budget exceeded at depth {depth} (frontier {frontier_size})"
        )
        self.depth = depth
        self.frontier_size = frontier_size
        self.counted = counted


class InvariantViolation(AssertionError):
    pass


# --- placements --------------------------------------------------------------


def enumerate_placements(region, b: int, w: int) -> int:
    """Count assignments of ``b`` black and ``w`` white markers by walking them."""
    cells = list(region)
    if len(cells) > MAX_REGION:
        raise RegionTooLarge(f"region of {len(cells)} cells exceeds cap {MAX_REGION}")
    if b < 0 or w < 0 or b + w > len(cells):
        return 0
    count = 0
    for blacks in combinations(cells, b):
        rest = [c for c in cells if c not in blacks]
        for _ in combinations(rest, w):
            count += 1
    return count


# --- geometry ----------------------------------------------------------------


@dataclass(frozen=True)
class GeometryReport:
    king_cells_total: int
    king_cells_non_castle: int
    castle_adjacent_cells: int
    camp_adjacent_king_cells: int
    camp_capture_configs: int
    ordinary_capture_cells: int
    ordinary_capture_configs: int
    escape_cells: int


def _neighbors(c: Coord) -> list[Coord]:
    out = []
    for df, dr in ((0, 1), (0, -1), (1, 0), (-1, 0)):
        f, r = c.file + df, c.rank + dr
        if 0 <= f < SIZE and 0 <= r < SIZE:
            out.append(Coord(f, r))
    return out


def derive_geometry() -> GeometryReport:
    """Count the king's cells and capture configurations by enumeration."""
    terminal_classes = {CellClass.CAMP, CellClass.ESCAPE, CellClass.CORNER}
    king_cells = [c for c in COORDS if classify(c) not in terminal_classes]
    non_castle = [c for c in king_cells if classify(c) is not CellClass.CASTLE]
    by_castle = [
        c for c in non_castle if any(classify(n) is CellClass.CASTLE for n in _neighbors(c))
    ]
    by_camp = [
        c
        for c in non_castle
        if c not in by_castle and any(classify(n) is CellClass.CAMP for n in _neighbors(c))
    ]
    ordinary = [c for c in non_castle if c not in by_castle and c not in by_camp]

    camp_configs = 0
    for k in by_camp:
        for d, n in enumerate(NEIGHBORS[k.index]):
            if n < 0 or classify(COORDS[n]) is not CellClass.CAMP:
                continue
            anvil_side = NEIGHBORS[k.index][OPPOSITE_DIR[d]]
            if anvil_side >= 0 and king_is_surrounded(1 << anvil_side, k.index):
                camp_configs += 1

    pair_configs = 0
    for k in ordinary:
        for d in (0, 2):  # one per axis
            a = NEIGHBORS[k.index][d]
            b = NEIGHBORS[k.index][OPPOSITE_DIR[d]]
            if a < 0 or b < 0:
                continue
            pair = (1 << a) | (1 << b)
            minimal = not king_is_surrounded(1 << a, k.index) and not king_is_surrounded(
                1 << b, k.index
            )
            if minimal and king_is_surrounded(pair, k.index):
                pair_configs += 1

    return GeometryReport(
        king_cells_total=len(king_cells),
        king_cells_non_castle=len(non_castle),
        castle_adjacent_cells=len(by_castle),
        camp_adjacent_king_cells=len(by_camp),
        camp_capture_configs=camp_configs,
        ordinary_capture_cells=len(ordinary),
        ordinary_capture_configs=pair_configs,
        escape_cells=sum(classify(c) is CellClass.ESCAPE for c in COORDS),
    )


# Values the geometry must reproduce.
EXPECTED_GEOMETRY = GeometryReport(45, 44, 4, 12, 20, 28, 56, 16)


# --- naive move generator ----------------------------------------------------


def _camp_groups() -> dict[Coord, frozenset[Coord]]:
    """Connected components of camp cells, keyed by member."""
    camps = {c for c in COORDS if classify(c) is CellClass.CAMP}
    groups: dict[Coord, frozenset[Coord]] = {}
    for c in camps:
        if c in groups:
            continue
        todo, comp = [c], set()
        while todo:
            x = todo.pop()
            if x in comp:
                continue
            comp.add(x)
            todo.extend(n for n in _neighbors(x) if n in camps)
        for x in comp:
            groups[x] = frozenset(comp)
    return groups


_CAMP_GROUP = _camp_groups()


_CLASS_AT = {c: classify(c) for c in COORDS}
_LINES = {
    a: [b for b in COORDS if b != a and (b.file == a.file or b.rank == a.rank)] for a in COORDS
}


def naive_legal_moves(p: Position) -> list[Move]:
    """Legal moves by testing every same-line (from, to) pair of cells directly."""
    pieces = p.board.pieces()
    out = []
    for a in sorted(c for c, piece in pieces.items() if piece.owner is p.to_move):
        home = _CAMP_GROUP.get(a, frozenset())
        for b in _LINES[a]:
            df = (b.file > a.file) - (b.file < a.file)
            dr = (b.rank > a.rank) - (b.rank < a.rank)
            f, r = a.file, a.rank
            while True:
                f, r = f + df, r + dr
                cell = COORDS[f * SIZE + r]
                cls = _CLASS_AT[cell]
                if cell in pieces or cls is CellClass.CASTLE:
                    break
                if cls is CellClass.CAMP and cell not in home:
                    break
                if cell == b:
                    out.append(Move(a, b))
                    break
    return out


# --- perft -------------------------------------------------------------------


def _perft(p: Position, depth: int) -> int:
    pairs = move_pairs(p.board, p.to_move)
    if depth == 1:
        return len(pairs)
    total = 0
    for s, d in pairs:
        nxt, _, out = apply_pair(p, s, d)
        if not out.terminal:
            total += _perft(nxt, depth - 1)
    return total


def _perft_root(args: tuple[Position, int, int, int]) -> int:
    p, s, d, depth = args
    nxt, _, out = apply_pair(p, s, d)
    if depth == 1:
        return 1
    return 0 if out.terminal else _perft(nxt, depth - 1)


def perft(p: Position, depth: int, workers: int = 1) -> int:
    """Count move sequences of exactly ``depth`` plies.

    A game-ending move is a leaf: it counts when it is the last ply and
    contributes nothing deeper.
    """
    if depth > MAX_PERFT_DEPTH:
        raise DepthTooLarge(f"perft depth {depth} exceeds cap {MAX_PERFT_DEPTH}")
    if depth == 0:
        return 1
    if outcome(p).terminal:
        return 0
    if workers <= 1:
        return _perft(p, depth)
    jobs = [(p, s, d, depth) for s, d in move_pairs(p.board, p.to_move)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_perft_root, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def divide(p: Position, depth: int) -> dict[Move, int]:
    """Per-root-move perft counts (``depth`` >= 1)."""
    out = {}
    for s, d in move_pairs(p.board, p.to_move):
        out[Move(COORDS[s], COORDS[d])] = _perft_root((p, s, d, depth))
    return out


def naive_perft(p: Position, depth: int) -> int:
    """Perft driven by :func:`naive_legal_moves`."""
    if depth == 0:
        return 1
    if outcome(p).terminal:
        return 0
    moves = naive_legal_moves(p)
    if depth == 1:
        return len(moves)
    total = 0
    for m in moves:
        nxt, _, out = apply_pair(p, m.start.index, m.end.index)
        if not out.terminal:
            total += naive_perft(nxt, depth - 1)
    return total


# --- symmetry ----------------------------------------------------------------


def canonicalize(p: Position) -> Position:
    """The TBN-smallest of the eight symmetric variants, with fresh history."""
    return parse_tbn(min(format_tbn(apply_transform(p.fresh(), t)) for t in Transform))


def orbit(p: Position) -> set[str]:
    return {format_tbn(apply_transform(p.fresh(), t)) for t in Transform}


# --- invariants --------------------------------------------------------------


def reachability_violations(p: Position) -> list[str]:
    """Properties every non-terminal reachable state must have."""
    board = p.board
    problems = []
    if any(classify(COORDS[i]) is CellClass.CASTLE for i in iter_bits(board.black | board.white)):
        problems.append("soldier on castle")
    if not board.king:
        problems.append("king missing")
    elif classify(board.king_cell) not in (CellClass.CASTLE, CellClass.PLAIN):
        problems.append(f"king on {classify(board.king_cell).value} cell {board.king_cell}")
    if not board.black:
        problems.append("no black soldier")
    return problems


def terminal_conditions(p: Position) -> list[str]:
    """Which of the four endgame conditions hold in ``p``, checked independently."""
    board = p.board
    held = []
    if board.king and classify(board.king_cell) is CellClass.ESCAPE:
        held.append("escape")
    if not board.king:
        held.append("king captured")
    if p.repeated:
        held.append("repetition")
    if board.king and not has_move(board, p.to_move):
        held.append("no moves")
    return held


# --- reachability ------------------------------------------------------------


def reachable_count(
    p: Position, depth: int, canonical: bool = False, max_states: int = 2_000_000
) -> int:
    """Distinct states (placement plus side) at exactly ``depth`` plies from ``p``.

    Game-ending moves are leaves, as in :func:`perft`. With ``canonical`` the
    states are counted up to board symmetry.
    """

    def key(q: Position):
        return format_tbn(canonicalize(q)) if canonical else q.key

    level = {key(p): (p, outcome(p))}
    for ply in range(depth):
        nxt_level: dict = {}
        for q, out in level.values():
            if out.terminal:
                continue
            problems = reachability_violations(q)
            if problems:
                raise InvariantViolation(f"{format_tbn(q)}: {', '.join(problems)}")
            for s, d in move_pairs(q.board, q.to_move):
                child, _, child_out = apply_pair(q, s, d)
                k = key(child)
                prev = nxt_level.get(k)
                # keep a non-terminal representative when histories disagree
                if prev is None or (prev[1].terminal and not child_out.terminal):
                    nxt_level[k] = (child, child_out)
            if len(nxt_level) > max_states:
                raise BudgetExceeded(ply + 1, len(nxt_level), len(nxt_level))
        if ply + 1 < depth:
            level = {k: v for k, v in nxt_level.items() if not v[1].terminal}
        else:
            level = nxt_level
    return len(level)


# --- playouts ----------------------------------------------------------------


@dataclass
class Playout:
    positions: list[Position]
    moves: list[Move] = field(default_factory=list)
    captures: list[frozenset[Coord]] = field(default_factory=list)
    outcome: Outcome | None = None

    @property
    def plies(self) -> int:
        return len(self.moves)

    @property
    def final(self) -> Position:
        return self.positions[-1]


def random_playout(p: Position, seed: int, max_plies: int = 500) -> Playout:
    """Uniformly random legal moves until the game ends or ``max_plies`` is hit."""
    rng = random.Random(seed)
    trace = Playout([p])
    out = outcome(p)
    while not out.terminal and trace.plies < max_plies:
        s, d = rng.choice(move_pairs(p.board, p.to_move))
        p, captured, out = apply_pair(p, s, d)
        trace.positions.append(p)
        trace.moves.append(Move(COORDS[s], COORDS[d]))
        trace.captures.append(frozenset(COORDS[i] for i in iter_bits(captured)))
    trace.outcome = out
    return trace


def random_midgame_positions(count: int, seed: int, max_plies: int = 60) -> list[Position]:
    """Non-terminal positions sampled from seeded random games from the start."""
    from .board import initial_position

    rng = random.Random(seed)
    out: list[Position] = []
    while len(out) < count:
        trace = random_playout(initial_position(), rng.randrange(2**32), rng.randrange(max_plies))
        nonterminal = [q for q in trace.positions if not outcome(q).terminal]
        out.append(nonterminal[-1])
    return out
