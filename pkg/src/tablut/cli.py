"""Command-line entry point: ``python -m tablut <command>``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from .board import COORDS, TBNError, format_tbn, initial_position, parse_tbn
from .counting import bounds_report, multinomial
from .enumeration import (
    EXPECTED_GEOMETRY,
    MAX_PERFT_DEPTH,
    MAX_REGION,
    derive_geometry,
    enumerate_placements,
    naive_perft,
    perft,
    random_playout,
)
from .rules import GameOver, IllegalMove, Move, apply_move, legal_moves

# Literature values for other games, shown for context only.
REFERENCE_TABLE = (
    ("Tablut", "1.4e27", "no"),
    ("Nine Men's Morris", "3e11", "strong"),
    ("English Draughts", "5e20", "weak"),
    ("International Draughts", "1e30", "no"),
    ("Othello", "1e28", "no"),
    ("Chess", "1e43, 1e50", "no"),
    ("Go", "2e170", "no"),
)

CSV_FIELDS = ("term", "description", "exact", "display", "published", "matches")


class CommandError(Exception):
    pass


def _bounds_rows():
    return [
        {
            "term": e.name,
            "description": e.description,
            "exact": str(e.exact),
            "display": e.display,
            "published": e.published,
            "matches": e.matches_published,
        }
        for e in bounds_report()
    ]


def render_bounds(fmt: str) -> str:
    rows = _bounds_rows()
    if fmt == "json":
        return json.dumps({r["term"]: r for r in rows}, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    lines = [f"{'term':<18}{'display':>9}{'published':>11}  match  exact"]
    for r in rows:
        mark = "yes" if r["matches"] else "NO"
        lines.append(
            f"{r['term']:<18}{r['display']:>9}{r['published']:>11}  {mark:<5}  {r['exact']}"
        )
    lines.append("")
    lines.append("Reference upper bounds from the literature (not computed here):")
    for game, ub, solved in REFERENCE_TABLE:
        lines.append(f"  {game:<24}{ub:>12}   solved: {solved}")
    return "\n".join(lines)


def _position(text: str):
    try:
        return parse_tbn(text)
    except TBNError as exc:
        raise CommandError(f"bad position: {exc}") from None


def cmd_bounds(args) -> int:
    print(render_bounds(args.format))
    return 0


def cmd_legal(args) -> int:
    p = _position(args.tbn)
    try:
        moves = legal_moves(p)
    except GameOver:
        raise CommandError("game over") from None
    for m in moves:
        print(m)
    return 0


def cmd_apply(args) -> int:
    p = _position(args.tbn)
    try:
        result = apply_move(p, Move.parse(args.move))
    except IllegalMove as exc:
        raise CommandError(str(exc)) from None
    except GameOver:
        raise CommandError("game over") from None
    print(format_tbn(result.next))
    print("captures: " + ",".join(str(c) for c in sorted(result.captured)))
    print(f"outcome: {result.outcome}")
    return 0


def cmd_playout(args) -> int:
    p = _position(args.tbn)
    trace = random_playout(p, args.seed, args.max_plies)
    print(f"plies: {trace.plies}")
    print(f"captures: {sum(len(c) for c in trace.captures)}")
    print(f"moves: {' '.join(str(m) for m in trace.moves)}")
    print(f"final: {format_tbn(trace.final)}")
    print(f"outcome: {trace.outcome}")
    return 0


def verify_geometry() -> bool:
    got = derive_geometry()
    ok = True
    for name, want in vars(EXPECTED_GEOMETRY).items():
        have = getattr(got, name)
        status = "PASS" if have == want else "FAIL"
        ok &= have == want
        print(f"{name:<28}{have:>6}{want:>6}  {status}")
    return ok


def verify_placements(max_region: int) -> bool:
    if max_region > MAX_REGION:
        raise CommandError(f"--max-region {max_region} exceeds cap {MAX_REGION}")
    ok = True
    for n in range(max_region + 1):
        region = COORDS[:n]
        checked = bad = 0
        for b in range(n + 1):
            for w in range(n - b + 1):
                checked += 1
                if enumerate_placements(region, b, w) != multinomial(n, (b, w, n - b - w)):
                    bad += 1
        ok &= bad == 0
        print(f"n={n:<3}cases={checked:<5}{'PASS' if bad == 0 else f'FAIL ({bad})'}")
    return ok


def verify_perft(depth: int, workers: int) -> bool:
    if depth > MAX_PERFT_DEPTH:
        raise CommandError(f"--depth {depth} exceeds cap {MAX_PERFT_DEPTH}")
    p = initial_position()
    ok = True
    for d in range(1, depth + 1):
        start = time.perf_counter()
        count = perft(p, d, workers=workers)
        elapsed = time.perf_counter() - start
        naive = naive_perft(p, d)
        rate = count / elapsed if elapsed > 0 else float("inf")
        status = "PASS" if naive == count else "FAIL"
        ok &= naive == count
        print(f"depth {d}: {count} (naive {naive}) {rate:,.0f} nodes/s  {status}")
    return ok


def cmd_verify(args) -> int:
    if args.what == "geometry":
        ok = verify_geometry()
    elif args.what == "placements":
        ok = verify_placements(args.max_region)
    else:
        ok = verify_perft(args.depth, args.workers)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tablut", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="exact state-space upper bounds")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("legal", help="list legal moves of a TBN position")
    p.add_argument("tbn")
    p.set_defaults(func=cmd_legal)

    p = sub.add_parser("apply", help="apply a move such as e8-e3")
    p.add_argument("tbn")
    p.add_argument("move")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("playout", help="seeded random game from a position")
    p.add_argument("tbn")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-plies", type=int, default=500)
    p.set_defaults(func=cmd_playout)

    p = sub.add_parser("verify", help="oracle checks")
    p.add_argument("what", choices=("geometry", "placements", "perft"))
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--max-region", type=int, default=12)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
