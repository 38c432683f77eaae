"""Command-line front end.

Subcommands: winner, power, classes, sweep, render.  All rational inputs
are parsed exactly; decimals with more than six fractional digits are
rejected to keep denominators sane.  Every subcommand is deterministic
given its configuration, and failures exit nonzero with a
machine-readable category on stderr.

Environment overrides (flags win over the environment):
  SCOREPOWER_CACHE_DIR, SCOREPOWER_THREADS, SCOREPOWER_GRID_DENOMINATOR,
  SCOREPOWER_PRECISION, SCOREPOWER_FORMAT
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import cache as sweep_cache
from .equivalence import (
    WeightGrid,
    attach_minimal_references,
    class_count_sweep,
    enumerate_classes,
)
from .errors import ParseError, ScorepowerError
from .gridsweep import sweep
from .model import (
    PowerVector,
    ScoringCommittee,
    ScoringVector,
    alternative_name,
    format_decimal,
    parse_profile,
    parse_rational,
    parse_weights,
)
from .power import pbi
from .render import render_series
from .scoring import score_totals

MAX_S_DECIMALS = 6
DEFAULT_S_GRID = [Fraction(k, 20) for k in range(21)]


def _env(name: str, default):
    return os.environ.get(f"SCOREPOWER_{name}", default)


def _parse_s(text: str) -> Fraction:
    s = parse_rational(text, max_decimals=MAX_S_DECIMALS)
    if not 0 <= s <= 1:
        raise ParseError(f"scoring parameter {text!r} must lie in [0, 1]")
    return s


def _parse_s_list(text: str) -> list[Fraction]:
    return [_parse_s(part) for part in text.split(",")]


def _scoring_vector(args) -> ScoringVector:
    if getattr(args, "scores", None):
        return ScoringVector(tuple(parse_rational(p) for p in args.scores.split(",")))
    return ScoringVector.one_s_zero(_parse_s(args.s))


def _frac(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_winner(args) -> int:
    scoring = _scoring_vector(args)
    weights = parse_weights(args.weights)
    committee = ScoringCommittee(weights, scoring)
    profile = parse_profile(args.profile, committee.n, committee.m)
    totals = score_totals(committee, profile)
    win = totals.winner()
    names = [alternative_name(a) for a in range(committee.m)]
    payload = {
        "totals": {name: _frac(t) for name, t in zip(names, totals.totals)},
        "winner": names[win],
        "winner_index": win,
    }
    lines = [f"{name}: {t}" for name, t in zip(names, totals.totals)]
    lines.append(f"winner: {names[win]}")
    _emit(args, payload, "\n".join(lines))
    return 0


def _power_report(power: PowerVector, precision: int) -> tuple[dict, str]:
    payload = {
        "denominator": power.denominator,
        "players": [
            {
                "player": i + 1,
                "swings": power.swing_counts[i],
                "value": _frac(power.values[i]),
                "decimal": power.decimals(precision)[i],
            }
            for i in range(power.n)
        ],
    }
    lines = [f"denominator: {power.denominator}"]
    for entry in payload["players"]:
        lines.append(
            f"player {entry['player']}: swings={entry['swings']} "
            f"value={entry['value']} ({entry['decimal']})"
        )
    return payload, "\n".join(lines)


def cmd_power(args) -> int:
    committee = ScoringCommittee(parse_weights(args.weights), _scoring_vector(args))
    payload, text = _power_report(pbi(committee), args.precision)
    _emit(args, payload, text)
    return 0


def cmd_classes(args) -> int:
    s = _parse_s(args.s)
    grid = WeightGrid(args.grid_denominator)
    class_set = enumerate_classes(s, grid)
    attach_minimal_references(class_set, max_sum=args.max_ref_sum)
    rows = []
    for idx, cls in enumerate(class_set.classes):
        ref = cls.minimal_reference
        committee = ScoringCommittee(
            tuple(Fraction(v) for v in (ref if ref else cls.representative)),
            ScoringVector.one_s_zero(s),
        )
        power = pbi(committee)
        rows.append(
            {
                "class": idx,
                "reference": ",".join(map(str, ref)) if ref else "",
                "representative": ",".join(_frac(f) for f in cls.representative),
                "members": cls.grid_count,
                "pbi": ";".join(_frac(v) for v in power.values),
                "pbi_decimal": ";".join(power.decimals(args.precision)),
            }
        )
    if args.format == "json":
        print(json.dumps({"s": _frac(s), "classes": rows}, indent=2))
    else:
        fields = ["class", "reference", "representative", "members", "pbi", "pbi_decimal"]
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
        print(out.getvalue(), end="")
    return 0


def cmd_sweep(args) -> int:
    s_values = _parse_s_list(args.s) if args.s else DEFAULT_S_GRID
    grid = WeightGrid(args.grid_denominator)
    counts = class_count_sweep(s_values, grid)
    if args.format == "json":
        print(json.dumps([{"s": _frac(s), "count": c} for s, c in counts], indent=2))
    else:
        print("s,count")
        for s, count in counts:
            print(f"{_frac(s)},{count}")
    return 0


def cmd_render(args) -> int:
    s_values = _parse_s_list(args.s) if args.s else DEFAULT_S_GRID
    cache_dir = Path(args.cache_dir)

    def sweep_for(s: Fraction):
        result = sweep_cache.cache_get(cache_dir, s, args.grid_denominator)
        if result is None:
            result = sweep(s, args.grid_denominator, workers=args.threads)
            sweep_cache.cache_put(cache_dir, result)
        return result

    radius = args.enlarge_thin_classes if args.enlarge_thin_classes is not None else 0
    paths = render_series(
        s_values,
        args.grid_denominator,
        args.size,
        args.out,
        enlarge_radius=radius,
        sweep_for=sweep_for,
    )
    for path in paths:
        print(path)
    return 0


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # accepted both before and after the subcommand
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument(
        "--format",
        choices=["json", "csv", "text"],
        default=d(_env("FORMAT", "text")),
        help="output format (default: text; csv where tabular)",
    )
    parser.add_argument(
        "--precision",
        type=int,
        default=d(int(_env("PRECISION", 4))),
        help="decimal places for power values (default 4)",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=d(int(_env("THREADS", os.cpu_count() or 1))),
        help="worker processes for sweeps; 1 gives the serial debug path",
    )
    parser.add_argument(
        "--cache-dir",
        default=d(str(_env("CACHE_DIR", sweep_cache.default_cache_dir()))),
        help="directory for cached sweep results",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scorepower",
        description="Voting power and equivalence structure of weighted scoring committees",
    )
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, help):
        sp = sub.add_parser(name, help=help)
        _add_common(sp, suppress=True)
        return sp

    p = add_parser("winner", help="totals and winner for one profile")
    p.add_argument("--weights", required=True, help='e.g. "5,4,3,1"')
    p.add_argument("--s", help='scoring parameter for (1, s, 0), e.g. "1/2"')
    p.add_argument("--scores", help='full scoring vector, e.g. "2,1,0"')
    p.add_argument("--profile", required=True, help='e.g. "B>C>A;A>C>B;A>B>C;B>C>A"')
    p.set_defaults(func=cmd_winner)

    p = add_parser("power", help="Penrose-Banzhaf power of every player")
    p.add_argument("--weights", required=True)
    p.add_argument("--s", help="scoring parameter")
    p.add_argument("--scores", help="full scoring vector")
    p.set_defaults(func=cmd_power)

    p = add_parser("classes", help="equivalence classes of weight triples")
    p.add_argument("--s", required=True)
    p.add_argument("--grid-denominator", type=int, default=int(_env("GRID_DENOMINATOR", 2520)))
    p.add_argument("--max-ref-sum", type=int, default=50)
    p.set_defaults(func=cmd_classes)

    p = add_parser("sweep", help="class counts over a list of s values")
    p.add_argument("--s", help="comma-separated s values (default: 0,1/20,...,1)")
    p.add_argument("--grid-denominator", type=int, default=int(_env("GRID_DENOMINATOR", 2520)))
    p.set_defaults(func=cmd_sweep)

    p = add_parser("render", help="render simplex power maps as PNG")
    p.add_argument("--s", help="comma-separated s values (default: 0,1/20,...,1)")
    p.add_argument("--grid-denominator", type=int, default=int(_env("GRID_DENOMINATOR", 2520)))
    p.add_argument("--size", type=int, default=900, help="image width in pixels")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument(
        "--enlarge-thin-classes",
        type=int,
        nargs="?",
        const=2,
        default=None,
        help="dilate point/line classes by this pixel radius (default 2 when set)",
    )
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("winner", "power") and not (args.s or args.scores):
        parser.error("one of --s or --scores is required")
    try:
        return args.func(args)
    except ScorepowerError as exc:
        print(f"error:{exc.category}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error:io: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
