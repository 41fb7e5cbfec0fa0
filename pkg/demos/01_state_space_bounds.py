"""
Upper bounds on the Tablut state space
======================================

Every bound is an exact integer. We print each one next to the value
published in the literature, then show where the largest contributions come
from.
"""

from tablut.counting import ENDGAME_TERMS, bounds_report, camp_split_sum, display

report = bounds_report()

for entry in report:
    flag = "" if entry.matches_published else "   <-- differs"
    print(f"{entry.name:<18} {entry.display:>8}  (published {entry.published}){flag}")

###############################################################################
# The aggregates are exact sums, not rounded ones.

assert report.identities_hold()
print("\nno_end_refined =", report.exact("no_end_refined"))
print("end            =", report.exact("end"))
print("total          =", report.exact("total"))

###############################################################################
# Share of each endgame scenario in the endgame bound.

end = report.exact("end")
for name in ENDGAME_TERMS:
    print(f"{name:<8} {100 * report.exact(name) / end:6.2f} %")

###############################################################################
# The king-captured-between-two-soldiers term sums over up to 14 free black
# soldiers. The published figure for that term is matched if the sum runs one
# step further, to 15.

for top in (14, 15):
    print(f"pair-capture term, b <= {top}: {display(56 * camp_split_sum(61, 0, top))}")
