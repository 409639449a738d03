"""Command-line surface.

Subcommands: ``gen``, ``bounds``, ``cha``, ``solve``, ``emit-model``,
``verify``, ``report``, ``worstcase``.  Exit codes: 0 ok, 1 usage,
2 I/O or malformed file, 3 infeasible/validation failure, 4 search limit
reached.  ``BPPS_WORKERS`` sets the worker count for batch generation.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import exact, gen, milp
from .bounds import bounds_report, zeta_lp_dag, zeta_lp_ddag, zeta_lp_n
from .cha import BPP_EXACT, BPP_MODES, cha, k_upper
from .core import (
    BppsError,
    InfeasibleSolutionError,
    Instance,
    InvalidInstanceError,
    Solution,
    TrivialInstanceError,
    check_feasible,
    solution_cost,
)
from .bpp import NodeLimitExceeded
from .bounds import format_decimal, format_fraction
from .files import (
    FileFormatError,
    read_instance,
    read_solution,
    write_instance,
    write_solution,
)
from .milp import LpFormatError, SolutionImportError
from .report import REPORT_COLUMNS, collect_report, feature_report, render_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_INFEASIBLE = 3
EXIT_LIMIT = 4

_VARIANT_FLAGS = {
    "n": milp.VARIANT_N,
    "dag": milp.VARIANT_DAG,
    "ddag": milp.VARIANT_DDAG,
    "star": milp.VARIANT_STAR,
}


class UsageError(BppsError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: A003 - argparse API
        raise UsageError(message)


def _rational(value: Fraction | int) -> str:
    return f"{format_fraction(value)} ({format_decimal(value)})"


def _print_bins(sol: Solution) -> None:
    print("bins:")
    for b, items in enumerate(sol.bins, start=1):
        print(f"  {b}: " + " ".join(str(i) for i in sorted(items)))


def _load_instance(path: str) -> Instance:
    return read_instance(path)


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.benchmark:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        configs = list(gen.benchmark_configs(args.base_seed))
        workers = int(os.environ.get("BPPS_WORKERS", "1"))
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                names = list(
                    pool.map(_write_benchmark_instance, configs, [out_dir] * len(configs))
                )
        else:
            names = [_write_benchmark_instance(cfg, out_dir) for cfg in configs]
        print(f"wrote {len(names)} instances to {out_dir}")
        return EXIT_OK
    try:
        cfg = gen.GeneratorConfig(
            n=args.n,
            m=args.m,
            d=args.d,
            cost_mode=gen.COST_WITH if args.cost_mode == "costs" else gen.COST_WITHOUT,
            item_size=args.item_size,
            setup_size=args.setup_size,
            seed=args.seed,
            free_form=args.free_form,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    outcome = gen.generate_verbose(cfg)
    name = gen.instance_name(cfg)
    text_comments = _gen_comments(cfg, outcome)
    if args.out:
        write_instance(outcome.instance, args.out, text_comments)
        print(f"wrote {name} to {args.out}")
    else:
        from .files import render_instance

        sys.stdout.write(render_instance(outcome.instance, text_comments))
    return EXIT_OK


def _gen_comments(cfg: gen.GeneratorConfig, outcome: gen.GenOutcome) -> list[str]:
    return [
        gen.instance_name(cfg),
        f"seed={cfg.seed} class-redraws={outcome.class_redraws}"
        f" trivial-redraws={outcome.trivial_redraws}",
    ]


def _write_benchmark_instance(cfg: gen.GeneratorConfig, out_dir: Path) -> str:
    outcome = gen.generate_verbose(cfg)
    name = gen.instance_name(cfg)
    write_instance(outcome.instance, out_dir / f"{name}.txt", _gen_comments(cfg, outcome))
    return name


def _cmd_bounds(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    report = bounds_report(inst)
    print("gamma = " + " ".join(str(g) for g in report.gamma))
    print(f"k_lower = {report.k_lower}")
    print(f"zeta_n = {_rational(report.zeta_n)}")
    print(f"zeta_dag = {_rational(report.zeta_dag)}")
    print(f"zeta_ddag = {_rational(report.zeta_ddag)}")
    return EXIT_OK


def _cmd_cha(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    solution, trace = cha(
        inst, args.bpp_mode, override_validation=args.allow_trivial
    )
    kbar = k_upper(inst, args.bpp_mode)
    print(f"termination = {trace.termination}")
    print("beta = " + " ".join(str(b) for b in trace.beta))
    singles = " ".join(str(c) for c in sorted(trace.single_bin_classes)) or "-"
    print(f"single_bin_classes = {singles}")
    print(f"delta = {trace.delta if trace.delta is not None else '-'}")
    print(f"merge_class = {trace.merge_class if trace.merge_class is not None else '-'}")
    print(f"psi_bar = {trace.psi_bar}")
    print(f"k_upper = {kbar}")
    doubled = 2 * zeta_lp_dag(inst)
    relation = ">" if doubled > trace.psi_bar else "<="
    note = "" if args.bpp_mode == BPP_EXACT else " (informational in heuristic mode)"
    print(
        f"guarantee: 2 * zeta_dag = {format_fraction(doubled)} "
        f"{relation} psi_bar = {trace.psi_bar}{note}"
    )
    _print_bins(solution)
    if args.out:
        write_solution(Path(args.instance).stem, solution, args.out)
        print(f"wrote solution to {args.out}")
    return EXIT_OK


def _cmd_solve(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    method = args.method
    if method == "auto":
        method = "brute" if inst.n <= exact.BRUTE_FORCE_MAX_ITEMS else "bnb"
    if method == "brute":
        result = exact.brute_force(inst, override_validation=args.allow_trivial)
    else:
        result = exact.branch_and_bound(
            inst,
            node_limit=args.node_limit,
            time_limit=args.time_limit,
            override_validation=args.allow_trivial,
        )
    print(f"status = {result.status}")
    print(f"psi = {result.psi}")
    print(f"lower_bound = {result.lower_bound}")
    print(f"nodes = {result.nodes}")
    _print_bins(result.solution)
    if args.out:
        write_solution(Path(args.instance).stem, result.solution, args.out)
        print(f"wrote solution to {args.out}")
    if result.status == exact.STATUS_LIMIT:
        print("search limit reached; value is an upper bound", file=sys.stderr)
        return EXIT_LIMIT
    return EXIT_OK


def _cmd_emit_model(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    model = milp.build_model(
        inst,
        _VARIANT_FLAGS[args.variant],
        exact_bin_bound=args.exact_kbar,
        override_validation=args.allow_trivial,
    )
    milp.emit_lp_file(model, args.out)
    print(
        f"wrote variant {model.variant} (k={model.k}, "
        f"{model.variable_count} variables, {model.constraint_count} constraints) "
        f"to {args.out}"
    )
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    name, solution = read_solution(args.solution)
    report = check_feasible(inst, solution)
    if not report.ok:
        for violation in report.violations:
            print(f"violation: {violation}")
        print(f"{name}: infeasible ({len(report.violations)} violations)", file=sys.stderr)
        return EXIT_INFEASIBLE
    cost = solution_cost(inst, solution)
    features = feature_report(inst, solution)
    print(f"{name}: feasible")
    print(f"psi = {cost.total} (bins {cost.bin_cost_total} + setups {cost.setup_cost_total})")
    print(f"bins = {features.bins_used}")
    print(f"items_per_bin = {_rational(features.items_per_bin)}")
    print(f"classes_per_bin = {_rational(features.classes_per_bin)}")
    print(f"fill_percent = {_rational(features.fill_percent)}")
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    rows = collect_report(args.dir)
    text = render_csv(rows, REPORT_COLUMNS)
    if args.out:
        Path(args.out).write_text(text, encoding="ascii")
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


_WORSTCASE_COLUMNS = (
    "family",
    "n",
    "theta",
    "r",
    "f1",
    "psi",
    "zeta_n",
    "zeta_dag",
    "zeta_ddag",
    "ratio_n",
    "ratio_dag",
    "ratio_ddag",
)


def _worstcase_rows(args: argparse.Namespace) -> list[dict[str, str]]:
    lo, hi = args.sweep
    rows = []
    for value in range(lo, hi + 1):
        if args.family == gen.FAMILY_PROP2:
            inst = gen.worst_case(gen.FAMILY_PROP2, n=value, r=args.r, f1=args.f1)
            n, theta = value, ""
        else:
            inst = gen.worst_case(
                gen.FAMILY_PROP5, n=args.n, theta=value, r=args.r, f1=args.f1
            )
            n, theta = args.n, value
        psi = n * (args.r + args.f1)
        zn = zeta_lp_n(inst)
        zdag = zeta_lp_dag(inst)
        zddag = zeta_lp_ddag(inst)
        rows.append(
            {
                "family": args.family,
                "n": str(n),
                "theta": str(theta),
                "r": str(args.r),
                "f1": str(args.f1),
                "psi": str(psi),
                "zeta_n": format_fraction(zn),
                "zeta_dag": format_fraction(zdag),
                "zeta_ddag": format_fraction(zddag),
                "ratio_n": format_fraction(zn / psi),
                "ratio_dag": format_fraction(zdag / psi),
                "ratio_ddag": format_fraction(zddag / psi),
            }
        )
    return rows


def _cmd_worstcase(args: argparse.Namespace) -> int:
    rows = _worstcase_rows(args)
    text = render_csv(rows, _WORSTCASE_COLUMNS)
    if args.out:
        Path(args.out).write_text(text, encoding="ascii")
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _range_pair(text: str) -> tuple[int, int]:
    try:
        lo_text, hi_text = text.split(":", 1)
        lo, hi = int(lo_text), int(hi_text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected LO:HI") from exc
    if lo > hi:
        raise argparse.ArgumentTypeError("expected LO <= HI")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bpps", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument("--benchmark", action="store_true", help="emit the full 480-instance grid")
    p.add_argument("--out-dir", default="instances", help="directory for --benchmark")
    p.add_argument("--base-seed", type=int, default=0)
    p.add_argument("--n", type=int, default=25)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--d", type=int, default=200)
    p.add_argument("--cost-mode", choices=("costs", "nocosts"), default="costs")
    p.add_argument("--item-size", choices=("small", "large"), default="small")
    p.add_argument("--setup-size", choices=("small", "large"), default="small")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--free-form", action="store_true", help="allow off-grid n/m/d")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bounds", help="print closed-form bounds")
    p.add_argument("--instance", required=True)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("cha", help="run the constructive heuristic")
    p.add_argument("--instance", required=True)
    p.add_argument("--bpp-mode", choices=BPP_MODES, default=BPP_EXACT)
    p.add_argument("--allow-trivial", action="store_true")
    p.add_argument("--out", help="write the solution file here")
    p.set_defaults(func=_cmd_cha)

    p = sub.add_parser("solve", help="solve exactly")
    p.add_argument("--instance", required=True)
    p.add_argument("--method", choices=("auto", "brute", "bnb"), default="auto")
    p.add_argument("--node-limit", type=int, default=exact.DEFAULT_NODE_LIMIT)
    p.add_argument("--time-limit", type=float, default=exact.DEFAULT_TIME_LIMIT)
    p.add_argument("--allow-trivial", action="store_true")
    p.add_argument("--out", help="write the solution file here")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("emit-model", help="write an LP-format model file")
    p.add_argument("--instance", required=True)
    p.add_argument("--variant", choices=tuple(_VARIANT_FLAGS), required=True)
    p.add_argument("--out", required=True)
    p.add_argument(
        "--exact-kbar",
        action="store_true",
        help="size the star variant with exact per-class packing",
    )
    p.add_argument("--allow-trivial", action="store_true")
    p.set_defaults(func=_cmd_emit_model)

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--solution", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("report", help="aggregate a directory into CSV")
    p.add_argument("--dir", required=True)
    p.add_argument("--out", help="CSV file (default: stdout)")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("worstcase", help="emit an adversarial family sweep as CSV")
    p.add_argument("--family", choices=gen.WORST_CASE_FAMILIES, required=True)
    p.add_argument(
        "--sweep",
        type=_range_pair,
        required=True,
        help="LO:HI for n (prop2) or theta (prop5)",
    )
    p.add_argument("--n", type=int, default=10, help="item count for prop5")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--f1", type=int, default=0)
    p.add_argument("--out", help="CSV file (default: stdout)")
    p.set_defaults(func=_cmd_worstcase)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def main(argv: list[str] | None = None) -> int:
    try:
        return run(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileFormatError, LpFormatError, OSError) as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (
        InvalidInstanceError,
        InfeasibleSolutionError,
        SolutionImportError,
        TrivialInstanceError,
    ) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except NodeLimitExceeded as exc:
        print(f"limit reached: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
