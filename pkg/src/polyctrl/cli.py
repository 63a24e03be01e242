"""Command-line interface.

Machine-readable JSON goes to stdout, diagnostics to stderr.  Exit codes:
analyze maps its verdict to 0 (controllable), 1 (uncontrollable), or
2 (indeterminate); every command uses 3 for I/O problems, 4 for expression
or JSON parse errors, 5 for schema or parameter violations, and 6 for bad
command lines.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from typing import List, Optional, Sequence

from ._version import ARTIFACT_VERSION
from .decide import Status, cross_check_state_space, decide
from .experiments import (
    CompleteIntersectionConfig,
    SampleConfig,
    append_csv,
    complete_intersection_experiment,
    run_experiment,
)
from .groebner import Ideal, buchberger, ideal_dimension
from .matrix import PolyMatrix, minors
from .orders import grevlex_order, lex_order
from .parser import ParseError, parse_polynomial
from .patching import PatchProblem, Window, evidence_report
from .poly import Ring

EXIT_IO = 3
EXIT_PARSE = 4
EXIT_SCHEMA = 5
EXIT_USAGE = 6


class _SchemaError(ValueError):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _require(mapping, key, kind, where):
    if not isinstance(mapping, dict) or key not in mapping:
        raise _SchemaError(f"{where}: missing field {key!r}")
    value = mapping[key]
    if kind is not None and not isinstance(value, kind):
        raise _SchemaError(f"{where}: field {key!r} has the wrong type")
    return value


def _ring_from_json(obj, where="ring") -> Ring:
    vars_ = _require(obj, "vars", list, where)
    if not all(isinstance(v, str) for v in vars_):
        raise _SchemaError(f"{where}: vars must be strings")
    laurent = obj.get("laurent", False)
    if not isinstance(laurent, bool):
        raise _SchemaError(f"{where}: laurent must be a boolean")
    return Ring(tuple(vars_), laurent=laurent)


def _matrix_from_json(obj, where="matrix") -> PolyMatrix:
    ring = _ring_from_json(_require(obj, "ring", dict, where))
    rows = _require(obj, "rows", list, where)
    if not rows or not all(isinstance(r, list) and r for r in rows):
        raise _SchemaError(f"{where}: rows must be a nonempty list of nonempty lists")
    entries = []
    for row in rows:
        parsed = []
        for src in row:
            if not isinstance(src, str):
                raise _SchemaError(f"{where}: entries must be polynomial strings")
            parsed.append(parse_polynomial(src, ring))
        entries.append(parsed)
    return PolyMatrix(ring, entries)


def _ideal_from_json(obj, where="ideal"):
    if "ring" in obj:
        ring = _ring_from_json(obj["ring"], where)
    else:
        ring = _ring_from_json(obj, where)
    gens_src = _require(obj, "gens", list, where)
    gens = []
    for src in gens_src:
        if not isinstance(src, str):
            raise _SchemaError(f"{where}: gens must be polynomial strings")
        gens.append(parse_polynomial(src, ring))
    return Ideal(ring, gens), ring


def _rational(value, where) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise _SchemaError(f"{where}: rationals must be integers or 'p/q' strings")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise _SchemaError(f"{where}: bad rational {value!r}")
    raise _SchemaError(f"{where}: bad rational {value!r}")


def _rational_matrix(text: str, where) -> List[List[Fraction]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _SchemaError(f"{where}: invalid JSON ({exc})")
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise _SchemaError(f"{where}: expected a list of rows")
    return [[_rational(v, where) for v in row] for row in data]


def _cell_key(key: str, ndim: int, where) -> tuple:
    try:
        cell = tuple(int(part) for part in key.split(","))
    except ValueError:
        raise _SchemaError(f"{where}: bad cell key {key!r}")
    if len(cell) != ndim:
        raise _SchemaError(f"{where}: cell key {key!r} has wrong dimension")
    return cell


def _region_from_json(obj, ndim: int, k: int, where):
    cells_src = _require(obj, "cells", list, where)
    cells = []
    for c in cells_src:
        if not isinstance(c, list) or len(c) != ndim:
            raise _SchemaError(f"{where}: cells must be coordinate lists of length {ndim}")
        cells.append(tuple(int(x) for x in c))
    values_src = obj.get("values", {})
    values = {}
    for key, vec in values_src.items():
        cell = _cell_key(key, ndim, where)
        if not isinstance(vec, list) or len(vec) != k:
            raise _SchemaError(f"{where}: value at {key!r} must list {k} components")
        values[cell] = tuple(_rational(v, where) for v in vec)
    return tuple(cells), values


def _patch_problems_from_json(obj, where="patch file"):
    matrix = _matrix_from_json(_require(obj, "system", dict, where), f"{where}.system")
    problems = []
    for idx, p in enumerate(_require(obj, "problems", list, where)):
        pw = f"{where}.problems[{idx}]"
        window = Window(tuple(int(e) for e in _require(p, "window", list, pw)))
        r1, t1 = _region_from_json(_require(p, "region1", dict, pw), window.ndim, matrix.cols, pw)
        r2, t2 = _region_from_json(_require(p, "region2", dict, pw), window.ndim, matrix.cols, pw)
        problems.append(
            PatchProblem(
                system=matrix,
                window=window,
                region1=r1,
                traj1=t1,
                region2=r2,
                traj2=t2,
                dilation_radius=int(p.get("dilation_radius", 1)),
            )
        )
    return matrix, problems


def _emit(payload: dict) -> None:
    print(json.dumps(payload))


def _codim_json(codim):
    if codim is None:
        return None
    return "inf" if codim == math.inf else int(codim)


# ---- subcommands ----

def _cmd_analyze(args) -> int:
    matrix = _matrix_from_json(_load_json(args.matrix))
    start = time.monotonic()
    verdict = decide(matrix)
    wall_ms = int((time.monotonic() - start) * 1000)
    payload = verdict.to_json_dict()
    payload["minor_count"] = len(verdict.minor_ideal.minors) if verdict.minor_ideal else None
    payload["groebner_size"] = len(verdict.groebner) if verdict.groebner else None
    payload["wall_ms"] = wall_ms
    _emit(payload)
    print(
        f"{verdict.status.value}: reason={verdict.reason} "
        f"codim={payload['codim']} minors={payload['minor_count']} "
        f"basis={payload['groebner_size']} ({wall_ms} ms)",
        file=sys.stderr,
    )
    return {
        Status.CONTROLLABLE: 0,
        Status.UNCONTROLLABLE: 1,
        Status.INDETERMINATE: 2,
    }[verdict.status]


def _order_for(ring: Ring, name: str):
    if name == "grevlex":
        return grevlex_order(ring)
    if name == "lex":
        return lex_order(ring)
    raise _SchemaError(f"unknown order {name!r}")


def _cmd_gb(args) -> int:
    ideal, ring = _ideal_from_json(_load_json(args.ideal))
    basis = buchberger(ideal, _order_for(ring, args.order))
    _emit({"order": args.order, "size": len(basis), "basis": [str(g) for g in basis]})
    return 0


def _cmd_dim(args) -> int:
    ideal, ring = _ideal_from_json(_load_json(args.ideal))
    result = ideal_dimension(buchberger(ideal, _order_for(ring, args.order)))
    witness = (
        list(result.witness_independent_set)
        if result.witness_independent_set is not None
        else None
    )
    _emit({"dim": result.dim, "codim": _codim_json(result.codim), "witness": witness})
    return 0


def _cmd_minors(args) -> int:
    matrix = _matrix_from_json(_load_json(args.matrix))
    result = minors(matrix, args.size)
    _emit(
        {
            "size": result.size,
            "count": len(result.minors),
            "minors": [str(m) for m in result.minors],
        }
    )
    return 0


def _cmd_experiment(args) -> int:
    cfg = SampleConfig(
        l=args.l,
        k=args.k,
        n=args.n,
        d=args.d,
        coeff_bound=args.coeff_bound,
        density=Fraction(args.density),
        trials=args.trials,
        seed=args.seed,
    )
    record = run_experiment(cfg)
    if args.out:
        append_csv(args.out, record)
    _emit(record.to_json_dict())
    print(
        f"controllable {record.counts['controllable']}/{cfg.trials}, "
        f"uncontrollable {record.counts['uncontrollable']}, "
        f"indeterminate {record.counts['indeterminate']} "
        f"({record.wall_time_ms} ms)",
        file=sys.stderr,
    )
    return 0


def _cmd_ci_experiment(args) -> int:
    cfg = CompleteIntersectionConfig(
        m=args.m,
        n=args.n,
        d=args.d,
        coeff_bound=args.coeff_bound,
        density=Fraction(args.density),
        trials=args.trials,
        seed=args.seed,
    )
    record = complete_intersection_experiment(cfg)
    if args.out:
        append_csv(args.out, record)
    _emit(record.to_json_dict())
    print(
        f"codim == m in {record.codim_eq_m}/{cfg.trials} trials "
        f"({record.wall_time_ms} ms)",
        file=sys.stderr,
    )
    return 0


def _cmd_patch(args) -> int:
    matrix, problems = _patch_problems_from_json(_load_json(args.problem))
    report = evidence_report(matrix, problems)
    _emit(report.to_json_dict())
    print(report.to_text(), file=sys.stderr)
    return 0


def _cmd_oracle(args) -> int:
    state = _rational_matrix(args.X, "--X")
    inputs = _rational_matrix(args.U, "--U") if args.U else []
    result = cross_check_state_space(state, inputs)
    _emit(
        {
            "agree": result.agree,
            "controllable": result.kalman_controllable,
            "status": result.verdict.status.value,
            "codim": _codim_json(result.verdict.codim),
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="polyctrl",
        description="Exact controllability analysis of polynomial presentation matrices.",
    )
    parser.add_argument("--version", action="version", version=f"polyctrl {ARTIFACT_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decide controllability of a matrix file")
    p.add_argument("matrix", help="matrix JSON file")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("gb", help="reduced Groebner basis of an ideal file")
    p.add_argument("ideal", help="ideal JSON file")
    p.add_argument("--order", default="grevlex", choices=("grevlex", "lex"))
    p.set_defaults(func=_cmd_gb)

    p = sub.add_parser("dim", help="dimension/codimension of an ideal file")
    p.add_argument("ideal", help="ideal JSON file")
    p.add_argument("--order", default="grevlex", choices=("grevlex", "lex"))
    p.set_defaults(func=_cmd_dim)

    p = sub.add_parser("minors", help="all r x r minors of a matrix file")
    p.add_argument("matrix", help="matrix JSON file")
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=_cmd_minors)

    p = sub.add_parser("experiment", help="controllability sampling experiment")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--coeff-bound", type=int, default=9)
    p.add_argument("--density", default="1")
    p.add_argument("--out", help="CSV file to append the record to")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("ci-experiment", help="complete-intersection sampling experiment")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--coeff-bound", type=int, default=9)
    p.add_argument("--density", default="1")
    p.add_argument("--out", help="CSV file to append the record to")
    p.set_defaults(func=_cmd_ci_experiment)

    p = sub.add_parser("patch", help="patching evidence report for a problem file")
    p.add_argument("problem", help="patch problem JSON file")
    p.set_defaults(func=_cmd_patch)

    p = sub.add_parser("oracle", help="state-space cross-check (matrix pair as JSON)")
    p.add_argument("--X", required=True, help="square state matrix, JSON rows")
    p.add_argument("--U", default="", help="input matrix, JSON rows (optional)")
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ParseError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, KeyError, TypeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
