"""Exact upper bounds on the number of Tablut states.

Every quantity is a Python ``int``; floating point only appears when a value
is rendered for display.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from functools import lru_cache
from math import factorial

from .board import MAX_BLACK, MAX_WHITE, NUM_CELLS, CellClass, cells_of


@lru_cache(maxsize=None)
def _fact(n: int) -> int:
    return factorial(n)


def multinomial(n: int, parts) -> int:
    """``n! / prod(k! for k in parts)``; the parts must sum to ``n``."""
    parts = tuple(parts)
    if any(k < 0 for k in parts) or n < 0:
        raise ValueError(f"negative argument in multinomial({n}, {parts})")
    if sum(parts) != n:
        raise ValueError(f"parts {parts} do not sum to {n}")
    out = _fact(n)
    for k in parts:
        out //= _fact(k)
    return out


N_CAMP = len(cells_of(CellClass.CAMP))
N_CASTLE = len(cells_of(CellClass.CASTLE))
N_ESCAPE = len(cells_of(CellClass.ESCAPE))
N_CORNER = len(cells_of(CellClass.CORNER))
N_PLAIN = len(cells_of(CellClass.PLAIN))
# Non-castle cells a non-terminal king may stand on.
N_KING_CELLS = N_PLAIN

# Cells outside camps and castle: the only ones white soldiers can use.
FREE = NUM_CELLS - N_CAMP - N_CASTLE
REGION_KING_IN_CASTLE = FREE  # 64
REGION_KING_OUTSIDE = FREE - 1  # 63, the king takes one free cell
REGION_ESCAPED = FREE - 2  # 62, king on the escape plus its forced-empty neighbour
REGION_CASTLE_CAPTURE = FREE - 4  # 60, four capturers around the castle
REGION_NEXT_TO_CASTLE = FREE - 1 - 3  # 60, king plus three capturers
REGION_CAMP_CAPTURE = FREE - 1 - 1  # 62, king plus one capturer
REGION_PAIR_CAPTURE = FREE - 1 - 2  # 61, king plus two capturers

assert (N_CASTLE, N_CAMP, N_ESCAPE, N_CORNER, N_PLAIN) == (1, 16, 16, 4, 44)
assert FREE == 64


def ub_naive() -> int:
    """Each cell counted by how many contents it admits, ignoring piece totals."""
    edge = N_ESCAPE + N_CORNER
    return 2**N_CASTLE * 2**N_CAMP * 3**edge * 4**N_PLAIN


def _plain_sum(region: int, b_lo: int, b_hi: int) -> int:
    return sum(
        multinomial(region, (b, w, region - b - w))
        for b in range(b_lo, b_hi + 1)
        for w in range(MAX_WHITE + 1)
    )


def camp_split_sum(region: int, b_lo: int, b_hi: int) -> int:
    """Sum over black count b, white count w and blacks-in-camps c.

    Blacks inside camps are placed over the camp cells, everything else over
    ``region`` non-camp cells.
    """
    total = 0
    for b in range(b_lo, b_hi + 1):
        for w in range(MAX_WHITE + 1):
            for c in range(0, min(b, N_CAMP) + 1):
                rest = region - (b - c) - w
                if rest < 0:
                    continue
                total += multinomial(N_CAMP, (c, N_CAMP - c)) * multinomial(
                    region, (b - c, w, rest)
                )
    return total


def _no_end_v1() -> int:
    whole = NUM_CELLS - N_CASTLE
    return _plain_sum(whole, 1, MAX_BLACK) + N_KING_CELLS * _plain_sum(whole - 1, 1, MAX_BLACK)


def _alpha() -> int:
    return sum(
        multinomial(REGION_KING_IN_CASTLE, (w, REGION_KING_IN_CASTLE - w))
        + N_KING_CELLS * multinomial(REGION_KING_OUTSIDE, (w, REGION_KING_OUTSIDE - w))
        for w in range(MAX_WHITE + 1)
    )


_TERMS = {
    "no_end_v1": _no_end_v1,
    "no_end_castle": lambda: camp_split_sum(REGION_KING_IN_CASTLE, 1, MAX_BLACK),
    "no_end_no_castle": lambda: N_KING_CELLS
    * camp_split_sum(REGION_KING_OUTSIDE, 1, MAX_BLACK),
    "alpha": _alpha,
    "beta": lambda: N_ESCAPE * camp_split_sum(REGION_ESCAPED, 1, MAX_BLACK),
    "gamma": lambda: camp_split_sum(REGION_CASTLE_CAPTURE, 0, MAX_BLACK - 4),
    "delta": lambda: 4 * camp_split_sum(REGION_NEXT_TO_CASTLE, 0, MAX_BLACK - 3),
    "epsilon": lambda: 20 * camp_split_sum(REGION_CAMP_CAPTURE, 0, MAX_BLACK - 1),
    "zeta": lambda: 56 * camp_split_sum(REGION_PAIR_CAPTURE, 0, MAX_BLACK - 2),
}
TERM_NAMES = tuple(_TERMS)


@lru_cache(maxsize=None)
def ub_term(name: str) -> int:
    try:
        return _TERMS[name]()
    except KeyError:
        raise KeyError(f"unknown bound term {name!r}") from None


# --- report ------------------------------------------------------------------


def display(value: int, digits: int = 2) -> str:
    """Scientific notation rounded half-even to ``digits`` significant digits."""
    text = format(Decimal(value), f".{digits - 1}e")
    mantissa, exp = text.split("e")
    return f"{mantissa}e{int(exp)}"


def round_sig(value: int, digits: int) -> tuple[int, int]:
    """(mantissa digits as an int, exponent) after half-even rounding."""
    d = Decimal(value)
    exp = d.adjusted() - digits + 1
    q = d.scaleb(-exp).quantize(Decimal(1), rounding=ROUND_HALF_EVEN)
    if q >= 10**digits:
        q, exp = q / 10, exp + 1
    return int(q), exp


def matches_printed(value: int, printed: str) -> bool:
    """Whether ``value`` rounds to a printed ``"6.1e27"``-style number.

    The comparison uses as many significant digits as the printed value has.
    """
    mantissa, exp = printed.split("e")
    digits = len(mantissa.replace(".", ""))
    target = (int(mantissa.replace(".", "")), int(exp) - digits + 1)
    return round_sig(value, digits) == target


@dataclass(frozen=True)
class BoundEntry:
    name: str
    description: str
    exact: int
    published: str

    @property
    def display(self) -> str:
        return display(self.exact)

    @property
    def matches_published(self) -> bool:
        return matches_printed(self.exact, self.published)


# name -> (description, published value)
PUBLISHED = {
    "naive": ("per-cell product", "1e41"),
    "no_end_v1": ("non-terminal, plain multinomials", "6.1e27"),
    "no_end_castle": ("non-terminal, king in castle", "3e25"),
    "no_end_no_castle": ("non-terminal, king outside castle", "9.2e26"),
    "no_end_refined": ("non-terminal, camp-aware", "9.5e26"),
    "alpha": ("all black soldiers captured", "2.0e11"),
    "beta": ("king escaped", "2.3e26"),
    "gamma": ("king captured in castle", "2.8e22"),
    "delta": ("king captured next to castle", "5.1e23"),
    "epsilon": ("king captured against a camp", "8.0e25"),
    "zeta": ("king captured between two soldiers", "1.6e26"),
    "end": ("all endgame states", "4.6e26"),
    "total": ("all states", "1.4e27"),
}
ENDGAME_TERMS = ("alpha", "beta", "gamma", "delta", "epsilon", "zeta")


@dataclass(frozen=True)
class BoundsReport:
    entries: dict[str, BoundEntry]

    def __getitem__(self, name: str) -> BoundEntry:
        return self.entries[name]

    def __iter__(self):
        return iter(self.entries.values())

    def exact(self, name: str) -> int:
        return self.entries[name].exact

    def identities_hold(self) -> bool:
        e = self.exact
        return (
            e("end") == sum(e(t) for t in ENDGAME_TERMS)
            and e("total") == e("no_end_refined") + e("end")
            and e("no_end_refined") == e("no_end_castle") + e("no_end_no_castle")
        )


def bounds_report() -> BoundsReport:
    values = {"naive": ub_naive()}
    values.update((t, ub_term(t)) for t in TERM_NAMES)
    values["no_end_refined"] = values["no_end_castle"] + values["no_end_no_castle"]
    values["end"] = sum(values[t] for t in ENDGAME_TERMS)
    values["total"] = values["no_end_refined"] + values["end"]
    return BoundsReport(
        {
            name: BoundEntry(name, desc, values[name], printed)
            for name, (desc, printed) in PUBLISHED.items()
        }
    )
