"""
Symmetry and random playouts
============================

The board has the eight symmetries of the square. Canonical forms pick the
TBN-smallest member of an orbit. Seeded random playouts drive the invariant
checks.
"""

from collections import Counter

from tablut import canonicalize, format_tbn, initial_position, random_playout
from tablut.board import Transform, apply_transform
from tablut.enumeration import orbit, reachability_violations

trace = random_playout(initial_position(), seed=1, max_plies=30)
p = trace.final
print(format_tbn(p))
for t in Transform:
    print(f"{t.name:<13}", format_tbn(apply_transform(p, t)))
print("orbit size:", len(orbit(p)))
print("canonical :", format_tbn(canonicalize(p)))

###############################################################################
# A thousand games, tallied by result, with every intermediate state audited.

results = Counter()
lengths = []
for seed in range(1000):
    game = random_playout(initial_position(), seed, 500)
    assert not any(reachability_violations(q) for q in game.positions[:-1])
    results[str(game.outcome)] += 1
    lengths.append(game.plies)
print(results)
print("mean length:", sum(lengths) / len(lengths))
