# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# Command-line entry point: build, verify, prob, curves, sweep.
#
# Exit codes: 0 success, 1 usage / I/O / validation, 2 verification failure, 3 budget exceeded.

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from removal_bounds import config
from removal_bounds.errors import (
    BudgetExceededError,
    GraphFormatError,
    NumericalIdentityError,
    RemovalBoundsError,
    VerificationError,
)
from removal_bounds.graphgen.export import GRAPH_FORMATS, export_graph, export_report, read_graph
from removal_bounds.graphgen.report import ConstructionKind, VerifyLevel
from removal_bounds.graphgen.tripartite import count_triangles, triples_match, verify_edge_disjoint
from removal_bounds.pipeline.settings import PipelineConfig
from removal_bounds.pipeline.sweep import run_pipeline, sweep
from removal_bounds.probability.curves import (
    C_NEW,
    C_OLD,
    Curve,
    asymptotic_rates,
    curve_value,
    eta_to_delta,
    optimize_D,
    optimized_curve,
)
from removal_bounds.probability.estimates import box_sum_probability, mc_ball_closure, mc_sphere_closure
from removal_bounds.probability.quadrature import exact_sphere_closure, lemma_chain
from removal_bounds.utils.log_base import set_log_color_level
from removal_bounds.utils.serialization import calculate_file_hash, canonical_bytes, fraction_str, verify_file_hash

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_BUDGET = 3

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    try:
        return [int(float(part)) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_value(text: str) -> int:
    # accepts 1e6 style input
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value != int(value):
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(value)


def build_parser() -> CliParser:
    common = CliParser(add_help=False)
    common.add_argument("--seed", type=_int_value, default=0, help="Root seed (default 0)")
    common.add_argument("--threads", type=_int_value, default=None, help="Worker processes (default RB_THREADS)")
    common.add_argument("--out", type=Path, default=None, help="Output path (default stdout)")
    common.add_argument("--format", choices=["json", "csv", "edgelist"], default=None, help="Output format")
    common.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=None,
                        help="Logging level (default RB_LOG_LEVEL)")
    common.add_argument("--budget-pairs", type=_int_value, default=None, help="Pair scan budget")
    common.add_argument("--budget-points", type=_int_value, default=None, help="Lattice enumeration budget")

    parser = CliParser(prog="removal-bounds",
                       description="Construct and verify graphs where every edge lies in exactly one triangle.")
    commands = parser.add_subparsers(dest="command", parser_class=CliParser)
    commands.required = True

    build = commands.add_parser("build", parents=[common], help="Run a construction and write graph + report")
    build.add_argument("kind", choices=[kind.value for kind in ConstructionKind])
    build.add_argument("--dim", type=_int_value, default=None)
    build.add_argument("--n", type=_int_value, default=None)
    build.add_argument("--m", type=_int_value, default=None)
    build.add_argument("--shift-trials", type=_int_value, default=None)
    build.add_argument("--samples", type=_int_value, default=None, help="Monte-Carlo samples for the shift target")
    build.add_argument("--verify", choices=[level.value for level in VerifyLevel], default=VerifyLevel.FULL.value)
    build.set_defaults(handler=cmd_build, command_parser=build)

    verify = commands.add_parser("verify", parents=[common], help="Re-verify an exported graph file")
    verify.add_argument("path", type=Path)
    verify.add_argument("--verify", choices=[VerifyLevel.FULL.value, VerifyLevel.SAMPLED.value],
                        default=VerifyLevel.FULL.value)
    verify.add_argument("--digest", default=None,
                        help="Expected sha256:<hex> of the file, as recorded in the build report")
    verify.set_defaults(handler=cmd_verify, command_parser=verify)

    prob = commands.add_parser("prob", parents=[common], help="Closure probabilities")
    mode = prob.add_mutually_exclusive_group(required=True)
    mode.add_argument("--ball", action="store_true", help="Monte-Carlo P(x + y in B)")
    mode.add_argument("--sphere", action="store_true", help="Monte-Carlo P(<u, v> <= -1/2)")
    mode.add_argument("--exact", action="store_true", help="Quadrature P(<u, v> <= -1/2)")
    mode.add_argument("--box", action="store_true", help="Exact per-coordinate box probability")
    mode.add_argument("--chain", action="store_true", help="Every link of the lower-bound chain")
    prob.add_argument("--dim", type=_int_value, default=None)
    prob.add_argument("--dims", type=_int_list, default=None, help="Comma-separated dimensions")
    prob.add_argument("--m", type=_int_value, default=None, help="Half-width m for --box")
    prob.add_argument("--samples", type=_int_value, default=None)
    prob.set_defaults(handler=cmd_prob, command_parser=prob)

    curves = commands.add_parser("curves", parents=[common], help="Theory curves, D optimization, eta -> delta")
    curves.add_argument("--n", type=_int_value, default=None)
    curves.add_argument("--per-d", action="store_true", help="Emit every curve value for D = 1 .. D_max")
    curves.add_argument("--epsilon", type=_float_list, default=None, help="Comma-separated epsilons")
    curves.set_defaults(handler=cmd_curves, command_parser=curves)

    sweep_parser = commands.add_parser("sweep", parents=[common], help="Run a grid of constructions")
    sweep_parser.add_argument("--kind", choices=[kind.value for kind in ConstructionKind], required=True)
    sweep_parser.add_argument("--dims", type=_int_list, default=None)
    sweep_parser.add_argument("--ms", type=_int_list, default=None)
    sweep_parser.add_argument("--ns", type=_int_list, default=None)
    sweep_parser.add_argument("--shift-trials", type=_int_value, default=None)
    sweep_parser.add_argument("--verify", choices=[level.value for level in VerifyLevel],
                              default=VerifyLevel.FULL.value)
    sweep_parser.set_defaults(handler=cmd_sweep, command_parser=sweep_parser)
    return parser


def _emit(data, out: Optional[Path]) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if out is None:
        sys.stdout.buffer.write(data)
        if not data.endswith(b"\n"):
            sys.stdout.buffer.write(b"\n")
        sys.stdout.flush()
        return
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_bytes(data)
    except OSError as e:
        raise OSError(f"cannot write {out}: {e.strerror or e}") from e


def _csv_text(rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: "" if row.get(key) is None else row.get(key) for key in columns})
    return buffer.getvalue()


def _table(rows: List[Dict[str, Any]], columns: Sequence[str], args) -> None:
    if args.format == "json":
        _emit(canonical_bytes({"rows": rows}), args.out)
    else:
        _emit(_csv_text(rows, columns), args.out)


def _budgets(args) -> Dict[str, int]:
    budgets = {}
    if args.budget_pairs is not None:
        budgets["pair_budget"] = args.budget_pairs
    if args.budget_points is not None:
        budgets["enumeration_budget"] = args.budget_points
    return budgets


def _usage(parser: CliParser, message: str) -> int:
    parser.print_usage(sys.stderr)
    sys.stderr.write(f"{parser.prog}: error: {message}\n")
    return EXIT_USAGE


def cmd_build(args, parser: CliParser) -> int:
    kind = ConstructionKind(args.kind)
    fmt = args.format or "edgelist"
    if fmt not in GRAPH_FORMATS:
        return _usage(parser, f"build writes graphs as one of {', '.join(GRAPH_FORMATS)}")

    fields: Dict[str, Any] = {"kind": kind, "seed": args.seed, "verify_level": VerifyLevel(args.verify)}
    if kind == ConstructionKind.BOX:
        if args.dim is None or args.m is None:
            return _usage(parser, "build box needs --dim and --m")
        if args.m % 2:
            return _usage(parser, f"--m must be even, got {args.m}")
        fields.update(D=args.dim, M=args.m)
    elif kind == ConstructionKind.BALL:
        if args.dim is None or args.n is None:
            return _usage(parser, "build ball needs --dim and --n")
        fields.update(D=args.dim, n=args.n)
    else:
        if args.n is None:
            return _usage(parser, "build abstract needs --n")
        fields.update(n=args.n)
    if args.shift_trials is not None:
        fields["shift_trials"] = args.shift_trials
    if args.samples is not None:
        fields["target_samples"] = args.samples
    if args.threads is not None:
        fields["threads"] = args.threads
    fields.update(_budgets(args))

    result = run_pipeline(PipelineConfig(**fields))
    report = result.report
    if args.out is not None:
        digest = export_graph(result.graph, result.triples, args.out, format=fmt)
        report = report.with_digest(digest)
        export_report(report, args.out.with_name(args.out.name + ".report.json"))
    _emit(canonical_bytes(report), None)
    return EXIT_OK


def cmd_verify(args, parser: CliParser) -> int:
    if args.digest is not None and not verify_file_hash(args.path, args.digest):
        raise VerificationError(f"{args.path}: digest {calculate_file_hash(args.path)} differs from {args.digest}")
    graph, system = read_graph(args.path)
    sample = config.SAMPLED_EDGES if args.verify == VerifyLevel.SAMPLED.value else None
    result = verify_edge_disjoint(graph, sample=sample, seed=args.seed)
    if result is not True:
        raise VerificationError(f"{args.path}: {result.detail}", witness=result)
    if not triples_match(graph, system):
        raise VerificationError(f"{args.path}: triangles of the graph differ from the listed triples")
    triangles, _ = count_triangles(graph)
    summary = {"path": str(args.path), "digest": calculate_file_hash(args.path), "edges": graph.edge_count,
               "triangles": triangles, "triples": len(system), "verified": True, "verify_level": args.verify}
    _emit(canonical_bytes(summary), args.out)
    return EXIT_OK


PROB_COLUMNS = ["quantity", "D", "m", "value", "exact", "stderr", "samples", "method", "error_bound", "discarded"]
CHAIN_COLUMNS = ["D", "sphere_closure", "lower_integral", "final_bound", "normalized_closure", "pdf_dominates",
                 "closure_above_integral", "integral_above_final", "printed_middle_holds", "ball_closure",
                 "ball_stderr", "ball_above_sphere"]


def cmd_prob(args, parser: CliParser) -> int:
    threads = args.threads or config.THREADS
    if args.box:
        if args.m is None:
            return _usage(parser, "prob --box needs --m")
        value = box_sum_probability(args.m)
        rows = [{"quantity": "box", "m": args.m, "value": float(value), "exact": fraction_str(value),
                 "method": "exact"}]
        _table(rows, PROB_COLUMNS, args)
        return EXIT_OK

    dims = args.dims or ([args.dim] if args.dim is not None else None)
    if not dims:
        return _usage(parser, "prob needs --dim or --dims")

    if args.chain:
        rows = [lemma_chain(D, samples=args.samples, seed=args.seed, threads=threads).model_dump() for D in dims]
        _table(rows, CHAIN_COLUMNS, args)
        return EXIT_OK

    rows = []
    for D in dims:
        if args.ball:
            quantity, estimate = "ball", mc_ball_closure(D, args.samples, args.seed, threads)
        elif args.sphere:
            quantity, estimate = "sphere", mc_sphere_closure(D, args.samples, args.seed, threads)
        else:
            quantity, estimate = "sphere-exact", exact_sphere_closure(D)
        row = estimate.model_dump(mode="json")
        row.update(quantity=quantity, D=D)
        rows.append(row)
    _table(rows, PROB_COLUMNS, args)
    return EXIT_OK


OPTIMUM_COLUMNS = ["curve", "n", "D_best", "value", "D_star", "D_max", "asymptotic_rate"]
PER_D_COLUMNS = ["D", "n", "behrend", "green", "new"]
DELTA_COLUMNS = ["curve", "epsilon", "delta_bound", "constant"]


def cmd_curves(args, parser: CliParser) -> int:
    if args.epsilon:
        constants = {Curve.NEW: C_NEW, Curve.GREEN: C_OLD}
        rows = [{"curve": curve.value, "epsilon": epsilon,
                 "delta_bound": eta_to_delta(optimized_curve(curve), epsilon),
                 "constant": constants.get(curve)}
                for curve in Curve for epsilon in args.epsilon]
        _table(rows, DELTA_COLUMNS, args)
        return EXIT_OK

    if args.n is None:
        return _usage(parser, "curves needs --n or --epsilon")
    if args.per_d:
        limit = optimize_D(args.n, Curve.NEW).D_max
        rows = [{"D": D, "n": args.n, **{curve.value: curve_value(curve, D, args.n) for curve in Curve}}
                for D in range(1, limit + 1)]
        _table(rows, PER_D_COLUMNS, args)
        return EXIT_OK

    rates = asymptotic_rates(args.n)
    rate_of = {Curve.BEHREND: rates.three_ap, Curve.GREEN: rates.corners_box, Curve.NEW: rates.corners_ball}
    rows = []
    for curve in Curve:
        best = optimize_D(args.n, curve)
        rows.append({"curve": curve.value, "n": args.n, "D_best": best.D_best, "value": best.value,
                     "D_star": best.D_star, "D_max": best.D_max, "asymptotic_rate": rate_of[curve]})
    _table(rows, OPTIMUM_COLUMNS, args)
    return EXIT_OK


def cmd_sweep(args, parser: CliParser) -> int:
    kind = ConstructionKind(args.kind)
    sizes = args.ms if kind == ConstructionKind.BOX else args.ns
    if not sizes:
        return _usage(parser, "sweep --kind box needs --ms" if kind == ConstructionKind.BOX
                      else f"sweep --kind {kind.value} needs --ns")
    dims = args.dims or []
    if kind != ConstructionKind.ABSTRACT and not dims:
        return _usage(parser, "sweep needs --dims")

    overrides = _budgets(args)
    if args.shift_trials is not None:
        overrides["shift_trials"] = args.shift_trials
    table = sweep(kind, dims, sizes, seed=args.seed, verify_level=VerifyLevel(args.verify),
                  threads=args.threads or config.THREADS, **overrides)
    _emit(table.to_json() if args.format == "json" else table.to_csv(), args.out)
    return EXIT_OK


def _report_witness(error: VerificationError) -> None:
    payload: Dict[str, Any] = {"error": str(error)}
    if error.witness is not None:
        payload["witness"] = error.witness.model_dump(mode="json")
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        set_log_color_level(args.log_level or config.LOG_LEVEL)
        config.validate_config()
        return args.handler(args, args.command_parser)
    except VerificationError as e:
        logging.error(f"Verification failed: {e}")
        _report_witness(e)
        return EXIT_VERIFICATION
    except NumericalIdentityError as e:
        logging.error(f"Numerical identity violated: {e}")
        return EXIT_VERIFICATION
    except BudgetExceededError as e:
        logging.error(f"Budget exceeded: {e}")
        return EXIT_BUDGET
    except (GraphFormatError, ValidationError, ValueError, OSError, RemovalBoundsError) as e:
        logging.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    except Exception as e:
        logging.error(f"Unexpected error: {e}", exc_info=True)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
