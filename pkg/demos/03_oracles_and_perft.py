"""
Oracles: geometry, placements and perft
=======================================

The constants the bounds rely on are recomputed from the cell classes and the
capture predicate, the multinomial is checked against explicit enumeration,
and the bitboard move generator is checked against a per-cell scanner.
"""

import time

from tablut import derive_geometry, initial_position, multinomial, perft
from tablut.board import COORDS
from tablut.enumeration import divide, enumerate_placements, naive_perft, reachable_count

print(derive_geometry())

###############################################################################
# Placements of 3 black and 4 white markers on 12 cells.

print(enumerate_placements(COORDS[:12], 3, 4), multinomial(12, [3, 4, 5]))

###############################################################################
# Perft counts from the opening. A game-ending move is a leaf: it counts at
# the last ply but is never expanded.

p = initial_position()
for depth in range(1, 4):
    t = time.perf_counter()
    n = perft(p, depth)
    rate = n / (time.perf_counter() - t)
    print(f"depth {depth}: {n:>8}  ({rate:,.0f} nodes/s)  naive: {naive_perft(p, depth) if depth < 3 else '-'}")

###############################################################################
# Divide at depth 2, and distinct states versus move sequences.

top = sorted(divide(p, 2).items(), key=lambda kv: -kv[1])[:5]
print([(str(m), n) for m, n in top])
for d in (1, 2):
    print(d, perft(p, d), reachable_count(p, d), reachable_count(p, d, canonical=True))
