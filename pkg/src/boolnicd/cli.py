"""Command-line interface: evaluate, enumerate, verify and sweep.

Exit codes: 0 success, 1 a verification report failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

from .boolfn import BooleanFunction, make_dictator, make_majority
from .erasure import PHI_CAP, phi_json, phi_poly
from .exactnum import format_rational, parse_rational
from .families import (
    GROUPS,
    enumerate_monotone,
    enumerate_unate_unbiased,
    enumerate_unbiased_ltfs,
    gopi_g,
    ltf_to_function,
)
from .spectral import stab_json, stab_poly
from .theorems.drivers import CLAIMS, DEFAULT_SEED, default_q_grid, sweep_csv, verify_gap_formula, verify_theorem

STAB_CAP = 20
GAP_RANGE = (3, 11)
CLASSES = ("unbiased-ltf", "monotone", "unate-unbiased")


class UsageError(Exception):
    """Bad flag value; ``flag`` names the offending option."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(self.prog, message)


# ---------------------------------------------------------------------------
# Flag parsing


def parse_function(spec: str, n: int | None) -> BooleanFunction:
    """hex table | maj | dict:i | gopi | weights:w1,..,wn[:theta]."""
    try:
        return _parse_function(spec, n)
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError("--function", f"{spec}: {exc}") from None


def _parse_function(spec: str, n: int | None) -> BooleanFunction:
    spec = spec.strip()
    low = spec.lower()
    if low == "maj":
        if n is None:
            raise UsageError("--n", "required with --function maj")
        return make_majority(n)
    if low == "gopi":
        if n is None:
            raise UsageError("--n", "required with --function gopi")
        return gopi_g(n)
    if low.startswith("dict:"):
        if n is None:
            raise UsageError("--n", "required with --function dict:i")
        try:
            i = int(spec[5:])
        except ValueError:
            raise UsageError("--function", f"bad dictator index in {spec!r}") from None
        return make_dictator(n, i)
    if low.startswith("weights:"):
        parts = spec[8:].split(":")
        if len(parts) > 2:
            raise UsageError("--function", f"expected weights:w1,..,wn[:theta], got {spec!r}")
        try:
            w = [int(v) for v in parts[0].split(",")]
            theta = int(parts[1]) if len(parts) == 2 else 0
        except ValueError:
            raise UsageError("--function", f"non-integer weight in {spec!r}") from None
        if n is not None and n != len(w):
            raise UsageError("--n", f"arity mismatch: --n {n} but {len(w)} weights")
        return ltf_to_function(w, threshold=theta)
    if n is None:
        raise UsageError("--n", "required with a hex table")
    text = low[2:] if low.startswith("0x") else low
    if not text or any(c not in "0123456789abcdef" for c in text):
        raise UsageError("--function", f"unknown function spec {spec!r}")
    return BooleanFunction.from_hex(n, text)


def parse_n_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError("--n-list", f"expected comma-separated integers, got {text!r}") from None


def parse_grid(text: str) -> list[Fraction]:
    """Comma-separated rationals, or a count N meaning k/(N+1), k = 1..N."""
    try:
        if "," not in text and "/" not in text:
            count = int(text)
            if count < 1:
                raise ValueError
            return default_q_grid(count)
        return [parse_rational(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError("--grid", f"expected rationals a/b,... or a point count, got {text!r}") from None


def _rational_flag(flag: str, text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise UsageError(flag, str(exc)) from None


def _check_range(flag: str, x: Fraction, lo, hi, open_: bool = False) -> None:
    inside = lo < x < hi if open_ else lo <= x <= hi
    if not inside:
        brackets = "()" if open_ else "[]"
        raise UsageError(flag, f"{x} outside {brackets[0]}{lo}, {hi}{brackets[1]}")


def _check_n(n: int | None, lo: int, hi: int, odd: bool = False) -> int:
    if n is None:
        raise UsageError("--n", "required")
    if not lo <= n <= hi or (odd and n % 2 == 0):
        kind = "odd " if odd else ""
        raise UsageError("--n", f"needs {kind}{lo} <= n <= {hi}, got {n}")
    return n


# ---------------------------------------------------------------------------
# Output


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _rows_csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands


def _poly_output(args, f: BooleanFunction, kind: str) -> str:
    if kind == "stab":
        _check_n(f.n, 0, STAB_CAP)
        variable, poly = "rho", stab_poly(f)
        obj = stab_json(f)
    else:
        _check_n(f.n, 0, PHI_CAP)
        variable, poly = "p", phi_poly(f)
        obj = phi_json(f)
    if args.at is not None:
        at = _rational_flag("--at", args.at)
        if kind == "stab":
            _check_range("--at", at, -1, 1)
        else:
            _check_range("--at", at, 0, 1)
        value = poly(at)
        obj = {"n": f.n, "table_hex": f.to_hex(), "variable": variable,
               "at": format_rational(at), "value": format_rational(value)}
        if args.poly:
            obj["coeffs"] = [format_rational(poly.coeff(k)) for k in range(f.n + 1)]
        if args.format == "csv":
            return _rows_csv(["n", "table_hex", variable, "value"],
                             [[f.n, f.to_hex(), format_rational(at), format_rational(value)]])
        return _dump_json(obj)
    if args.format == "csv":
        return _rows_csv(["k", "coeff"], [[k, c] for k, c in enumerate(obj["coeffs"])])
    return _dump_json(obj)


def cmd_stab(args) -> int:
    f = parse_function(args.function, args.n)
    _emit(_poly_output(args, f, "stab"), args.out)
    return 0


def cmd_phi(args) -> int:
    f = parse_function(args.function, args.n)
    _emit(_poly_output(args, f, "phi"), args.out)
    return 0


def cmd_gap(args) -> int:
    n = _check_n(args.n, *GAP_RANGE, odd=True)
    if args.at is None:
        raise UsageError("--at", "required")
    q = _rational_flag("--at", args.at)
    _check_range("--at", q, 0, 1, open_=True)
    report = verify_gap_formula(n, q)
    extra = report.extra
    row = {
        "n": n,
        "q": format_rational(q),
        "phi_gap": format_rational(extra["phi_gap"]),
        "stab_gap": format_rational(extra["stab_gap"]),
        "rhs": format_rational(extra["rhs"]),
        "equal": report.passed,
    }
    if args.format == "csv":
        _emit(_rows_csv(list(row), [[str(v).lower() if isinstance(v, bool) else v for v in row.values()]]), args.out)
    else:
        _emit(_dump_json(row), args.out)
    return 0 if report.passed else 1


def cmd_enumerate(args) -> int:
    n = args.n
    cls = args.cls
    if cls == "unbiased-ltf":
        if n not in (3, 5):
            raise UsageError("--n", f"unbiased-ltf catalog needs n in {{3, 5}}, got {n}")
        cat = enumerate_unbiased_ltfs(n, args.group or "flips")
    elif cls == "monotone":
        _check_n(n, 0, 5)
        cat = enumerate_monotone(n, args.group or "none")
    else:
        _check_n(n, 1, 5, odd=True)
        cat = enumerate_unate_unbiased(n, args.group or "flips")
    if args.format == "csv":
        rows = []
        for e in cat:
            w = "" if e.weights is None else ",".join(str(v) for v in e.weights.weights)
            t = "" if e.weights is None else str(e.weights.threshold)
            rows.append([n, e.function.to_hex(), e.orbit_size, w, t])
        _emit(_rows_csv(["n", "table_hex", "orbit_size", "weights", "threshold"], rows), args.out)
    else:
        _emit(cat.to_jsonl(), args.out)
    return 0


def cmd_verify(args) -> int:
    if args.claim not in CLAIMS + ("all",):
        raise UsageError("--claim", f"unknown claim {args.claim!r}; choose from {', '.join(CLAIMS)}, all")
    n_list = parse_n_list(args.n_list) if args.n_list else None
    q_list = parse_grid(args.grid) if args.grid else None
    if q_list is not None:
        for q in q_list:
            _check_range("--grid", q, 0, 1, open_=True)
    if n_list is not None and args.claim == "thm4":
        for n in n_list:
            _check_n(n, *GAP_RANGE, odd=True)
    seed = DEFAULT_SEED if args.seed is None else args.seed
    reports = verify_theorem(args.claim, n_list, q_list, seed=seed, jobs=args.jobs)
    if args.format == "csv":
        cols = ["claim", "n", "param", "lhs", "rhs", "pass", "notes"]
        rows = [[r.to_json()[c] for c in cols] for r in reports]
        text = _rows_csv(cols, [["" if v is None else str(v).lower() if isinstance(v, bool) else v for v in row]
                                for row in rows])
    else:
        text = _dump_json([r.to_json() for r in reports])
    _emit(text, args.out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_sweep(args) -> int:
    n_list = parse_n_list(args.n_list) if args.n_list else [3, 5, 7, 9, 11]
    for n in n_list:
        _check_n(n, *GAP_RANGE, odd=True)
    qs = parse_grid(args.grid) if args.grid else default_q_grid()
    for q in qs:
        _check_range("--grid", q, 0, 1)
    if args.format == "json":
        raise UsageError("--format", "sweep emits csv only")
    _emit(sweep_csv(n_list, qs), args.out)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, help="arity")
    common.add_argument("--function", default="maj",
                        help="hex table | maj | dict:i | gopi | weights:w1,..,wn[:theta]")
    common.add_argument("--at", help="evaluation point as num/den")
    common.add_argument("--poly", action="store_true", help="include coefficients with --at")
    common.add_argument("--out", help="write to this path instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--seed", type=int, help=f"PRNG seed (default {DEFAULT_SEED})")

    parser = _Parser(prog="boolnicd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    sub.add_parser("stab", parents=[common], help="noise stability polynomial in rho")
    sub.add_parser("phi", parents=[common], help="erasure functional polynomial in p")
    sub.add_parser("gap", parents=[common], help="g_n versus Maj_n gaps at q")
    e = sub.add_parser("enumerate", parents=[common], help="function catalogs")
    e.add_argument("--class", dest="cls", choices=CLASSES, default="unbiased-ltf")
    e.add_argument("--group", choices=GROUPS)
    v = sub.add_parser("verify", parents=[common], help="machine-check a claim")
    v.add_argument("--claim", default="all")
    v.add_argument("--n-list")
    v.add_argument("--grid", help="q values a/b,... or a point count")
    s = sub.add_parser("sweep", parents=[common], help="CSV of gap values over (n, q)")
    s.add_argument("--n-list")
    s.add_argument("--grid", help="q values a/b,... or a point count")
    return parser


COMMANDS = {
    "stab": cmd_stab,
    "phi": cmd_phi,
    "gap": cmd_gap,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.format is None:
            args.format = "csv" if args.command == "sweep" else "json"
        if args.jobs < 1:
            raise UsageError("--jobs", f"needs a positive worker count, got {args.jobs}")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # caps and preconditions enforced inside the library
        print(f"error: {str(exc).splitlines()[0]}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
