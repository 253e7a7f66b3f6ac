"""Command-line front end.

Exit codes: 0 ok or trivial class, 1 invalid ring, 2 unreadable input or bad
shape, 3 negative mathematical verdict, 4 request beyond a size limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .fusion import (
    BoundsError,
    InvalidRingError,
    RingFormatError,
    enumerate_fusion_rings,
    find_identity,
    parse_ring_dict,
    rank2_ring,
    ring_from_dict,
    ring_to_dict,
    validate_fusion_ring,
)
from .hochschild import (
    NONTRIVIAL,
    TRIVIAL,
    classify_rank2,
    classify_rank2_evaluated,
    cohomology_dim,
    is_coboundary,
)
from .obstruction import first_obstruction
from .pentagon import DimensionError, ExactMatrix, GroupTable, check_pentagon, group_unitary, ne_case_solvable

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_NEGATIVE = 3
EXIT_BOUNDS = 4

CLI_MAX_RANK = 3
MAX_RANK2_RANGE = 16


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_json(path: str | None):
    if not path:
        raise CliError(EXIT_PARSE, "--input is required")
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE, f"malformed JSON in {path}: {exc}") from None


def _load_ring(path: str | None):
    data = _read_json(path)
    try:
        return ring_from_dict(data)
    except RingFormatError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    except InvalidRingError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from None


def _check_rank(ring) -> None:
    if ring.rank > CLI_MAX_RANK:
        raise CliError(EXIT_BOUNDS, f"rank {ring.rank} exceeds the supported maximum {CLI_MAX_RANK}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(rows: list[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(row[k]) for k in columns})
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    return v


# -- commands ------------------------------------------------------------------


def cmd_validate(args) -> tuple[int, str]:
    data = _read_json(args.input)
    try:
        names, table, identity = parse_ring_dict(data)
        report = validate_fusion_ring(table, identity)
    except RingFormatError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    out = {"names": list(names), **report.to_dict()}
    return (EXIT_OK if report.ok else EXIT_INVALID), _dump(out)


def _obstruction_report(ring, verify: bool, jobs: int) -> dict:
    ob = first_obstruction(ring, verify_oracle=verify, jobs=jobs)
    trivial, witness = is_coboundary(ob.cochain)
    report = ob.to_dict()
    if verify:
        report["oracle_mismatches"] = [",".join(ring.names[i] for i in entry) for entry in ob.mismatches]
    report["verdict"] = TRIVIAL if trivial else NONTRIVIAL
    report["witness"] = witness.to_dict() if witness is not None else None
    return report


def cmd_obstruction(args) -> tuple[int, str]:
    ring = _load_ring(args.input)
    _check_rank(ring)
    report = _obstruction_report(ring, args.verify_oracle, args.jobs)
    code = EXIT_OK if report["verdict"] == TRIVIAL else EXIT_NEGATIVE
    return code, _dump(report)


RANK2_COLUMNS = ("m", "n", "alpha_x", "alpha_e", "congruence_verdict", "generic_solver_verdict", "agree",
                 "evaluated_verdict")


def _rank2_row(mn: tuple[int, int]) -> dict:
    m, n = mn
    ring = rank2_ring(m, n)
    ob = first_obstruction(ring)
    value = ob.value(1, 1, 1, 1)
    trivial, _ = is_coboundary(ob.cochain)
    solver = TRIVIAL if trivial else NONTRIVIAL
    congruence = classify_rank2(m, n)
    return {
        "m": m,
        "n": n,
        "alpha_x": (value >> 1) & 1,
        "alpha_e": value & 1,
        "congruence_verdict": congruence,
        "generic_solver_verdict": solver,
        "agree": congruence == solver,
        "evaluated_verdict": classify_rank2_evaluated(m, n),
    }


def _pool_map(fn, items: list, jobs: int) -> list:
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def cmd_classify_rank2(args) -> tuple[int, str]:
    if not (0 <= args.m_max <= MAX_RANK2_RANGE and 0 <= args.n_max <= MAX_RANK2_RANGE):
        raise CliError(EXIT_BOUNDS, f"m and n ranges must lie in 0..{MAX_RANK2_RANGE}")
    cells = [(m, n) for m in range(args.m_max + 1) for n in range(args.n_max + 1)]
    rows = _pool_map(_rank2_row, cells, args.jobs)
    if args.format == "json":
        return EXIT_OK, _dump(rows)
    return EXIT_OK, _csv(rows, RANK2_COLUMNS)


ENUM_COLUMNS = ("index", "ring", "valid", "identity", "alpha_zero", "verdict", "oracle_checked", "oracle_agree")


def _enum_row(item) -> dict:
    index, ring, verify = item
    ob = first_obstruction(ring, verify_oracle=verify)
    trivial, _ = is_coboundary(ob.cochain)
    ident = find_identity(ring)
    return {
        "index": index,
        "ring": ring_to_dict(ring),
        "valid": ring.validate().ok,
        "identity": None if ident is None else ring.names[ident],
        "alpha_zero": ob.cochain.is_zero(),
        "verdict": TRIVIAL if trivial else NONTRIVIAL,
        "oracle_checked": verify,
        "oracle_agree": (not ob.mismatches) if verify else None,
    }


def cmd_enumerate(args) -> tuple[int, str]:
    if args.rank is None or args.max_entry is None:
        raise CliError(EXIT_PARSE, "--rank and --max-entry are required")
    if args.rank > CLI_MAX_RANK:
        raise CliError(EXIT_BOUNDS, f"rank {args.rank} exceeds the supported maximum {CLI_MAX_RANK}")
    rings = list(enumerate_fusion_rings(args.rank, args.max_entry, args.identity))
    rows = _pool_map(_enum_row, [(i, r, args.verify_oracle) for i, r in enumerate(rings)], args.jobs)
    if args.format == "csv":
        flat = [dict(r, ring=json.dumps(r["ring"], separators=(",", ":"))) for r in rows]
        return EXIT_OK, _csv(flat, ENUM_COLUMNS)
    return EXIT_OK, "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in rows)


def cmd_hochschild(args) -> tuple[int, str]:
    ring = _load_ring(args.input)
    _check_rank(ring)
    dim = cohomology_dim(ring, args.degree)
    ob = first_obstruction(ring, jobs=args.jobs)
    trivial, witness = is_coboundary(ob.cochain)
    report = {
        "ring": ring_to_dict(ring),
        "degree": args.degree,
        "dim": dim,
        "alpha_trivial": trivial,
        "witness": witness.to_dict() if witness is not None else None,
    }
    return EXIT_OK, _dump(report)


def cmd_pentagon(args) -> tuple[int, str]:
    if args.ne_case is not None:
        if args.ne_case < 1:
            raise CliError(EXIT_PARSE, "--ne-case needs n >= 1")
        ok = ne_case_solvable(args.ne_case)
        report = {"ne_case": args.ne_case, "solvable": ok}
        return (EXIT_OK if ok else EXIT_NEGATIVE), _dump(report)
    data = _read_json(args.input)
    try:
        if isinstance(data, dict):
            group = GroupTable.from_json(data)
            phi = group_unitary(group)
            source = "group"
        else:
            phi = ExactMatrix.from_json(data)
            source = "matrix"
        holds = check_pentagon(phi)
    except (DimensionError, ValueError, TypeError) as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    report = {"source": source, "dimension": phi.dim, "pentagon_holds": holds}
    return (EXIT_OK if holds else EXIT_NEGATIVE), _dump(report)


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON file ('-' for stdin)")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--verify-oracle", action="store_true",
                        help="recompute every cocycle entry by brute force")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")

    parser = argparse.ArgumentParser(prog="fusionobs", description="Obstruction computations for fusion rings.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check the fusion ring axioms")
    sub.add_parser("obstruction", parents=[common], help="first obstruction cocycle and its class")
    p = sub.add_parser("classify-rank2", parents=[common], help="table over the rings x*x = m x + n e")
    p.add_argument("--m-max", type=int, default=6)
    p.add_argument("--n-max", type=int, default=6)
    p = sub.add_parser("enumerate", parents=[common], help="enumerate small rings and classify them")
    p.add_argument("--rank", type=int)
    p.add_argument("--max-entry", type=int)
    p.add_argument("--identity", action="store_true", help="only rings whose element 0 is the identity")
    p = sub.add_parser("hochschild", parents=[common], help="cohomology dimension and triviality of alpha")
    p.add_argument("--degree", type=int, default=4)
    p = sub.add_parser("pentagon", parents=[common], help="pentagon equation for a matrix or group")
    p.add_argument("--ne-case", type=int, default=None, metavar="N")
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "obstruction": cmd_obstruction,
    "classify-rank2": cmd_classify_rank2,
    "enumerate": cmd_enumerate,
    "hochschild": cmd_hochschild,
    "pentagon": cmd_pentagon,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    if args.format is None:
        args.format = "csv" if args.command == "classify-rank2" else "json"
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        code, text = COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
