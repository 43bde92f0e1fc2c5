"""Command-line front end.

    ncyorders verify p2-sextic --n N | --all
    ncyorders verify quadric | hirzebruch2
    ncyorders verify file PATH
    ncyorders snf MATRIXFILE
    ncyorders h1 SCENARIOFILE

Global flags: --json, --list-cap K, --quiet.  Exit codes: 0 when every check
passes, 1 when a mathematical check fails, 2 for input or usage errors.

The --json report has the fields ``scenario``, ``status``, ``checks`` (list of
``{name, status, detail}``), ``sections``, ``assumptions`` (``{tag,
statement}``) and ``errors`` (``{module, error, message}``), emitted with
sorted keys so that re-serializing a parsed report reproduces it byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import exactla as la
from .action import ActionError, CyclicAction
from .cohomology import CocycleQuotient
from .lattice import LatticeError
from .orders import Report
from .scenarios import DEFAULT_LIST_CAP, SEXTIC_N_RANGE, ParseError, ScenarioError, SchemaError, builtin, \
    load_scenario, run_scenario

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def run_builtin(name: str, n: Optional[int] = None, list_cap: int = DEFAULT_LIST_CAP) -> tuple[Report, int]:
    report = run_scenario(builtin(name, n), list_cap)
    return report, EXIT_OK if report.passed else EXIT_FAIL


def run_file(path, list_cap: int = DEFAULT_LIST_CAP) -> tuple[Report, int]:
    report = run_scenario(load_scenario(path), list_cap)
    return report, EXIT_OK if report.passed else EXIT_FAIL


def _sweep_one(args: tuple[int, int]) -> Report:
    n, cap = args
    return run_builtin("p2-sextic", n, cap)[0]


def sweep_p2(list_cap: int = DEFAULT_LIST_CAP, workers: Optional[int] = None) -> list[Report]:
    """All n in 3..18, in parallel; results are returned in order of n."""
    jobs = [(n, list_cap) for n in SEXTIC_N_RANGE]
    if workers == 1:
        return [_sweep_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_one, jobs))


def read_matrix(path) -> list[list[int]]:
    """A JSON list of rows, or whitespace-separated integers one row per line."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        try:
            data = [[int(x) for x in line.split()] for line in text.splitlines() if line.strip()]
        except ValueError as exc:
            raise ParseError(f"{path}: not a JSON matrix or whitespace integer table ({exc})") from None
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise SchemaError("matrix", "expected a nonempty list of rows")
    width = len(data[0])
    rows = []
    for i, r in enumerate(data):
        if len(r) != width:
            raise SchemaError(f"matrix[{i}]", f"expected {width} entries")
        try:
            rows.append([_as_int(x) for x in r])
        except (TypeError, ValueError):
            raise SchemaError(f"matrix[{i}]", "entries must be integers") from None
    return rows


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise TypeError(x)
    return int(x)


# ---------------------------------------------------------------------------


def _emit(out, payload, as_json: bool, text: str, quiet: bool):
    if as_json:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif not quiet:
        out.write(text + "\n")


def _report_summary(r: Report) -> str:
    return f"{r.scenario}: {r.status}"


def _cmd_verify(args, out) -> int:
    if args.target == "file":
        if not args.path:
            raise UsageError("verify file needs a PATH")
        reports = [run_file(args.path, args.list_cap)[0]]
    elif args.target == "p2-sextic":
        if args.all:
            reports = sweep_p2(args.list_cap, args.workers)
        else:
            reports = [run_builtin("p2-sextic", 3 if args.n is None else args.n, args.list_cap)[0]]
    else:
        if args.n is not None or args.all:
            raise UsageError(f"--n/--all only apply to p2-sextic, not {args.target}")
        reports = [run_builtin(args.target, None, args.list_cap)[0]]

    if args.json:
        payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
        out.write(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n")
    elif args.quiet:
        out.write("\n".join(_report_summary(r) for r in reports) + "\n")
    else:
        out.write("\n\n".join(r.render_text() for r in reports) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_snf(args, out) -> int:
    M = read_matrix(args.matrix)
    res = la.smith_normal_form(M)
    payload = {"U": res.U, "D": res.D, "V": res.V, "diagonal": res.diagonal,
               "invariant_factors": res.invariant_factors}
    text = "\n".join([
        f"diagonal: {res.diagonal}",
        f"invariant factors: {res.invariant_factors}",
        "U = " + json.dumps(res.U),
        "V = " + json.dumps(res.V),
    ])
    _emit(out, payload, args.json, text if not args.quiet else f"{res.diagonal}", False)
    return EXIT_OK


def _cmd_h1(args, out) -> int:
    sc = load_scenario(args.scenario)
    a = CyclicAction(sc.sublattice, sc.involution, sc.order)
    q = CocycleQuotient(a)
    g = q.group
    fmt = sc.sublattice.format
    payload = {"scenario": sc.name, "group": g.describe(), **g.to_json(),
               "generator_labels": [fmt(v) for v in g.generators]}
    if sc.reference_generators:
        payload["reference_generators_cover"] = q.generates(sc.reference_generators)
    lines = [f"H^1 = {g.describe()}"] + [f"  generator: {fmt(v)}" for v in g.generators]
    if "reference_generators_cover" in payload:
        lines.append(f"  reference generators cover every class: {payload['reference_generators_cover']}")
    _emit(out, payload, args.json, "\n".join(lines) if not args.quiet else g.describe(), False)
    return EXIT_OK if payload.get("reference_generators_cover", True) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--list-cap", type=int, default=argparse.SUPPRESS,
                        help=f"max materialized orders (default {DEFAULT_LIST_CAP})")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="one summary line")

    p = argparse.ArgumentParser(prog="ncyorders", parents=[common],
                                description="Lattice certificates for numerically Calabi-Yau orders.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run the verification pipeline")
    v.add_argument("target", choices=["p2-sextic", "quadric", "hirzebruch2", "file"])
    v.add_argument("path", nargs="?", help="scenario file for 'verify file'")
    v.add_argument("--n", type=int, help="Picard rank for p2-sextic (3..18)")
    v.add_argument("--all", action="store_true", help="sweep p2-sextic over n = 3..18")
    v.add_argument("--workers", type=int, default=None, help="processes for --all")

    s = sub.add_parser("snf", parents=[common], help="Smith normal form of an integer matrix")
    s.add_argument("matrix")
    h = sub.add_parser("h1", parents=[common], help="H^1 of the action in a scenario file")
    h.add_argument("scenario")
    return p


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    args.json = getattr(args, "json", False)
    args.quiet = getattr(args, "quiet", False)
    args.list_cap = getattr(args, "list_cap", DEFAULT_LIST_CAP)
    if args.list_cap < 0:
        err.write("error: --list-cap must be non-negative\n")
        return EXIT_USAGE
    handlers = {"verify": _cmd_verify, "snf": _cmd_snf, "h1": _cmd_h1}
    try:
        return handlers[args.command](args, out)
    except (UsageError, ScenarioError, LatticeError) as exc:
        err.write(f"error [{getattr(exc, 'module', 'cli')}] {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except ActionError as exc:
        err.write(f"error [{exc.module}] {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL



def main_entry() -> None:
    sys.exit(main())
