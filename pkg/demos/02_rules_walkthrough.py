"""
Playing with the rules engine
=============================

Positions are written in TBN: nine rank fields from rank 9 down to rank 1,
``B``/``W``/``K`` for pieces, digits for runs of empty cells, then the side to
move.
"""

from tablut import apply_move, format_tbn, initial_position, legal_moves, parse_tbn
from tablut.rules import Move

start = initial_position()
print(format_tbn(start))
moves = legal_moves(start)
print(len(moves), "legal first moves, e.g.", ", ".join(map(str, moves[:6])))

###############################################################################
# A king on the castle falls only when all four sides are black.

p = parse_tbn("9/9/9/4B4/3BK4/4B4/9/5B3/9 b")
result = apply_move(p, Move.parse("f2-f5"))
print(result.outcome, sorted(map(str, result.captured)))

###############################################################################
# Next to a camp, one black soldier on the far side is enough.

p = parse_tbn("9/9/3B5/9/9/9/9/3K5/9 b")
print(apply_move(p, Move.parse("d7-d3")).outcome)

###############################################################################
# Moving between two enemies is safe: capture is active only.

p = parse_tbn("9/7B1/1K1W5/9/9/9/2B1B4/9/9 w")
print(apply_move(p, Move.parse("d7-d3")).captured)

###############################################################################
# Shuttling the same two pieces back and forth repeats a state: draw.

p = parse_tbn("9/9/2W3B2/9/4K4/9/9/9/9 w")
for text in ("c7-c8", "g7-g8", "c8-c7", "g8-g7"):
    r = apply_move(p, Move.parse(text))
    p = r.next
print(r.outcome)
