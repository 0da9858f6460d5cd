"""Command-line front end.

Exit codes:
    0  certified (certify), all rows pass (sweep), success (generate, render)
    1  not certified by the first-measurement criterion / some sweep row fails
    2  usage, parse or parameter error, including sweep limit refusals
    3  input set is not pairwise orthogonal
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations_with_replacement
from math import comb

from productlocc.construct import (
    UnsupportedRenderingError,
    build_family,
    construction_count,
    count_formula,
    expected_count,
    render_grid,
)
from productlocc.core import (
    FormatError,
    OrthogonalityError,
    ParameterError,
    format_state_set,
    read_state_set,
    write_state_set,
)
from productlocc.report import JSON_BEGIN, JSON_END, build_report, format_report

EXIT_OK = 0
EXIT_NOT_CERTIFIED = 1
EXIT_INPUT = 2
EXIT_NONORTHOGONAL = 3

FAMILIES = ("bipartite", "tripartite", "even", "odd")
DEFAULT_MAX_CELLS = 10_000_000


class UsageError(Exception):
    pass


def _family_and_dims(args):
    family = args.family or args.family_pos
    dims = args.dims or args.dims_pos
    if family is None:
        raise UsageError("a family is required")
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if not dims:
        raise UsageError("dimensions are required")
    return family, tuple(dims)


def _load(args):
    if getattr(args, "input", None):
        if args.family_pos or args.family:
            raise UsageError("give either --in or a family, not both")
        return read_state_set(args.input)
    return build_family(*_family_and_dims(args))


def _emit(text, path):
    sys.stdout.write(text)
    if path:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_generate(args) -> int:
    family, dims = _family_and_dims(args)
    state_set = build_family(family, dims)
    if args.out:
        write_state_set(state_set, args.out)
    else:
        sys.stdout.write(format_state_set(state_set))
    exp = expected_count(family, dims)
    note = "" if exp == len(state_set) else "  (construction differs from formula)"
    print(f"{len(state_set)} states; formula {count_formula(family)} = {exp}{note}", file=sys.stderr)
    return EXIT_OK


def cmd_certify(args) -> int:
    state_set = _load(args)
    report, verdict = build_report(state_set, tol=args.tol, audit=args.audit)
    _emit(format_report(report), args.report)
    if any(p.witness_problems for p in report.parties):
        raise AssertionError("extracted witness failed validation")
    return EXIT_OK if verdict.certified else EXIT_NOT_CERTIFIED


def cmd_render(args) -> int:
    sys.stdout.write(render_grid(_load(args)))
    return EXIT_OK


def sweep_shapes(family: str, lo: int, hi: int, parties: int | None = None, equal: bool = False):
    """Non-decreasing dimension tuples in [lo, hi], ordered lexicographically."""
    fixed = {"bipartite": 2, "tripartite": 3}
    if family in fixed:
        if parties not in (None, fixed[family]):
            raise UsageError(f"{family} sweeps use exactly {fixed[family]} parties")
        parties = fixed[family]
    elif parties is None:
        parties = 4 if family == "even" else 5
    if family == "even" and (parties % 2 or parties < 4):
        raise UsageError("even sweeps need an even party count >= 4")
    if family == "odd" and (parties % 2 == 0 or parties < 3):
        raise UsageError("odd sweeps need an odd party count >= 3")
    if lo > hi:
        raise UsageError("--lo must not exceed --hi")
    if equal:
        return [(d,) * parties for d in range(lo, hi + 1)]
    return list(combinations_with_replacement(range(lo, hi + 1), parties))


def sweep_cost(family: str, shapes) -> int:
    """Total constraint-matrix entries: sum over shapes and parties of 2*pairs*d^2."""
    total = 0
    for dims in shapes:
        pairs = comb(construction_count(family, dims), 2)
        total += sum(2 * pairs * d * d for d in dims)
    return total


def _sweep_row(task):
    family, dims, tol = task
    report, verdict = build_report(build_family(family, dims), tol=tol)
    return {
        "shape": list(dims),
        "count": report.state_count,
        "formula": report.expected_count,
        "count_matches_formula": report.count_matches,
        "upb_lower_bound": report.upb_bound,
        "count_equals_upb": report.state_count == report.upb_bound,
        "verdict": report.overall,
        "solution_dims": [p.solution_dim for p in report.parties],
        "float_oracle_agrees": all(p.oracle_agrees for p in report.parties),
        "pass": verdict.certified and bool(report.count_matches) and all(p.oracle_agrees for p in report.parties),
    }


def cmd_sweep(args) -> int:
    family = args.family or args.family_pos
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}")
    shapes = sweep_shapes(family, args.lo, args.hi, args.parties, args.equal)
    cost = sweep_cost(family, shapes)
    if cost > args.max_cells:
        raise UsageError(
            f"sweep needs {cost} constraint cells, above the limit --max-cells={args.max_cells}"
        )
    tasks = [(family, dims, args.tol) for dims in shapes]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_sweep_row, tasks))
    else:
        rows = [_sweep_row(t) for t in tasks]

    header = "shape\tcount\tformula\tcount=formula\tupb\tcount=upb\tverdict\tsolution_dims\toracle\tpass"
    lines = [f"# sweep {family} lo={args.lo} hi={args.hi}", header]
    for r in rows:
        lines.append(
            "\t".join(
                [
                    " ".join(map(str, r["shape"])),
                    str(r["count"]),
                    str(r["formula"]),
                    str(r["count_matches_formula"]).lower(),
                    str(r["upb_lower_bound"]),
                    str(r["count_equals_upb"]).lower(),
                    r["verdict"],
                    ",".join(map(str, r["solution_dims"])),
                    "ok" if r["float_oracle_agrees"] else "MISMATCH",
                    "PASS" if r["pass"] else "FAIL",
                ]
            )
        )
    n_pass = sum(r["pass"] for r in rows)
    all_pass = n_pass == len(rows)
    lines.append(f"summary: {'ALL PASS' if all_pass else 'FAIL'} ({n_pass}/{len(rows)} shapes)")
    payload = {"family": family, "lo": args.lo, "hi": args.hi, "rows": rows, "all_pass": all_pass}
    text = "\n".join(lines) + "\n" + JSON_BEGIN + "\n" + json.dumps(payload, indent=2) + "\n" + JSON_END + "\n"
    _emit(text, args.report)
    return EXIT_OK if all_pass else EXIT_NOT_CERTIFIED


def _add_target(p, with_input=True):
    p.add_argument("family_pos", nargs="?", metavar="FAMILY", help="bipartite | tripartite | even | odd")
    p.add_argument("dims_pos", nargs="*", type=int, metavar="DIM")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--dims", nargs="+", type=int)
    if with_input:
        p.add_argument("--in", dest="input", metavar="PATH", help="state-set file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="productlocc",
        description="Generate and certify locally indistinguishable orthogonal product-state sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated state set")
    _add_target(p, with_input=False)
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("certify", help="certify a generated or file-based set")
    _add_target(p)
    p.add_argument("--report", metavar="PATH", help="also write the report here")
    p.add_argument("--tol", type=float, default=1e-8, help="float rank oracle tolerance")
    p.add_argument("--audit", action="store_true", help="exact leading-minor PSD audit of witnesses")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("render", help="ASCII tile grids for 2- and 3-party sets")
    _add_target(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("sweep", help="certify every shape in a dimension range")
    p.add_argument("family_pos", nargs="?", metavar="FAMILY")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--lo", type=int, default=4)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--parties", type=int, help="party count for even/odd sweeps")
    p.add_argument("--equal", action="store_true", help="only equal-dimension shapes")
    p.add_argument("--report", metavar="PATH")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", 1.0) <= 0:
        parser.error("--tol must be positive")
    try:
        return args.func(args)
    except OrthogonalityError as exc:
        print(f"error: input set is not orthogonal: {exc}", file=sys.stderr)
        return EXIT_NONORTHOGONAL
    except (UsageError, ParameterError, FormatError, UnsupportedRenderingError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
