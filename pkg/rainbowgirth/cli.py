import json
import sys
from argparse import ArgumentParser, RawTextHelpFormatter
from fractions import Fraction

import pandas as pd
from loguru import logger

from .bounds import bs_bound, calibrate_A, nonstarex_bound
from .container import read_colored_graph, write_colored_graph
from .errors import InfeasibleHypothesisError, ParameterError, TrialBudgetExhausted
from .exact import girth, rainbow_girth_exact
from .experiments import ExperimentConfig, ExperimentRow, event_frequency_report, run_sweep, sweep_frame
from .finder import RainbowFinder
from .generators import CENSUS_KEYS, gen_random_family, gen_star_cycle, gen_tight_example
from .hypergraph import read_tgraph, write_tgraph
from .lower_bound import LBParams, build_lb_instance, instance_from_tgraph, min_rainbow_family_size
from .modes import *


def _common_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument(
        "--format", type=str, choices=["json", "csv", "text"], default="json",
        help="Output format on stdout. Default: json"
    )
    common.add_argument(
        "--seed", type=int, default=0,
        help="Master seed. Default: 0"
    )
    common.add_argument(
        "--config", type=str,
        help="JSON file whose keys become defaults for this subcommand; explicit flags win."
    )
    common.add_argument(
        "--log-level", type=str, default="INFO",
        help="Log level of the stderr sink. Default: INFO"
    )
    return common


def _add_finder_args(parser):
    parser.add_argument("input", type=str, help="Colored graph in the text or JSON format.")
    parser.add_argument("--alpha", type=Fraction, help="Fraction of classes with a 2-matching (or non-star classes for nonstar).")
    parser.add_argument("--beta", type=Fraction, help="Fraction of classes with a 2-star.")
    parser.add_argument("--trials", type=int, default=DEFAULT_MAX_TRIALS, help=f"Sampling trials. Default: {DEFAULT_MAX_TRIALS}")
    parser.add_argument("--chooser", type=str, choices=all_choosers, default=DEFAULT_CHOOSER, help="Edge chooser.")
    parser.add_argument("--trial-log", dest="trial_log", type=str, help="Also write the trial log as CSV to this path.")


def get_parser():
    """Return the parser and its subcommand parsers by name."""
    common = _common_parser()
    parser = ArgumentParser(formatter_class=RawTextHelpFormatter, prog="rainbowgirth-cli")
    subparsers = parser.add_subparsers(dest="command", required=True)

    gen = subparsers.add_parser("gen", parents=[common], help="Generate a colored graph.")
    gen.add_argument("--kind", type=str, choices=["star-cycle", "tight", "random"], required=True)
    gen.add_argument("--n", type=int, required=True, help="Vertex count.")
    gen.add_argument("--r", type=int, default=2, help="Star size for star-cycle. Default: 2")
    gen.add_argument("--alpha", type=Fraction, help="alpha for the tight example.")
    gen.add_argument("--beta", type=Fraction, help="beta for the tight example.")
    for kind in CENSUS_KEYS:
        gen.add_argument(f"--{kind}", type=int, default=0, help=f"Number of {kind} classes for random.")
    gen.add_argument("--output", type=str, help="Write the graph here (plus a .params.json sidecar) instead of stdout.")

    girth_parser = subparsers.add_parser("girth", parents=[common], help="Girth of the underlying graph.")
    girth_parser.add_argument("input", type=str)

    rainbow = subparsers.add_parser("rainbow-girth", parents=[common], help="Exact rainbow girth.")
    rainbow.add_argument("input", type=str)
    rainbow.add_argument("--cutoff", type=int, help="Largest cycle length examined. Default: n")

    find = subparsers.add_parser("find", parents=[common], help="Find a short rainbow cycle.")
    _add_finder_args(find)
    find.add_argument("--mode", type=str, choices=all_modes, default=mainstronger)
    find.add_argument("--c", type=float, help="Exponent c for nonstarex.")
    find.add_argument("--L", type=float, help="Constant L for nonstarex.")
    find.add_argument("--allow-small-L", dest="allow_small_L", action="store_true", help="Run nonstarex with L < L0.")

    repair = subparsers.add_parser("repair", parents=[common], help="Triangle-repair finder (nonstar mode).")
    _add_finder_args(repair)

    bound = subparsers.add_parser("bound", parents=[common], help="Evaluate girth bounds.")
    bound.add_argument("--n", type=float, help="Vertex count.")
    bound.add_argument("--k", type=float, help="Excess; evaluates bs_bound(n, k).")
    bound.add_argument("--c", type=float, help="Exponent; with --L evaluates the nonstarex bound.")
    bound.add_argument("--L", type=float)
    bound.add_argument("--calibrate", type=int, metavar="N_MAX", help="Calibrate A up to N_MAX.")

    lb_build = subparsers.add_parser("lb-build", parents=[common], help="Build a lower-bound instance.")
    lb_build.add_argument("--n", type=int, required=True)
    lb_build.add_argument("--t", type=int, required=True, help="Uniformity of the random hypergraph.")
    lb_build.add_argument("--k", type=int, default=2)
    lb_build.add_argument("--L", type=float, default=1.0)
    lb_build.add_argument("--c", type=float, default=0.01)
    lb_build.add_argument("--delta", type=float, default=1.0)
    lb_build.add_argument("--ell-max", dest="ell_max", type=int)
    lb_build.add_argument("--search-cap", dest="search_cap", type=int, help="Also measure the smallest rainbow family member up to this size.")
    lb_build.add_argument("--output", type=str, help="Write the final t-graph G here.")

    lb_verify = subparsers.add_parser("lb-verify", parents=[common], help="Check a t-graph for short rainbow copies.")
    lb_verify.add_argument("input", type=str, help="t-graph in the 'n t' format.")
    lb_verify.add_argument("--k", type=int, default=2)
    lb_verify.add_argument("--search-cap", dest="search_cap", type=int, default=8)

    sweep = subparsers.add_parser("sweep", parents=[common], help="Parameter sweep across the threshold.")
    sweep.add_argument("--mode", type=str, choices=[mainstronger, nonstarex], default=mainstronger)
    sweep.add_argument("--n", dest="n_values", type=int, nargs="+", default=[256])
    sweep.add_argument("--grid", type=str, nargs="+", default=["1,0"], help="Points 'alpha,beta' (or 'c,L').")
    sweep.add_argument("--instance", type=str, choices=[instance_random, instance_tight], default=instance_random)
    sweep.add_argument("--trials", type=int, default=100)
    sweep.add_argument("--chooser", type=str, choices=all_choosers, default=DEFAULT_CHOOSER)
    sweep.add_argument("--fallback-t", dest="fallback_t", type=str, default=str(DEFAULT_FALLBACK_T))
    sweep.add_argument("--workers", type=int, default=1)
    sweep.add_argument("--csv", dest="csv_path", type=str)
    sweep.add_argument("--json", dest="json_path", type=str)

    events = subparsers.add_parser("lb-events", parents=[common], help="Event frequencies of the construction.")
    events.add_argument("--grid", type=str, nargs="+", help="Cells 'n,t,L'.")
    events.add_argument("--seeds", type=int, default=50)
    events.add_argument("--k", type=int, default=2)
    events.add_argument("--c", type=float, default=0.01)
    events.add_argument("--ell-max", dest="ell_max", type=int)
    events.add_argument("--csv", dest="csv_path", type=str)
    return parser, subparsers.choices


def parse_args(argv=None):
    parser, commands = get_parser()
    args = parser.parse_args(argv)
    if args.config:
        with open(args.config) as f:
            defaults = json.load(f)
        if "master_seed" in defaults:
            defaults["seed"] = defaults.pop("master_seed")
        commands[args.command].set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def _grid_point(point):
    if isinstance(point, str):
        return [x.strip() for x in point.split(",")]
    return [str(x) for x in point]


def _emit(payload, fmt, frame=None):
    if fmt == "csv":
        df = frame if frame is not None else pd.json_normalize(payload)
        sys.stdout.write(df.to_csv(index=False))
    elif fmt == "text":
        for key, value in payload.items():
            print(f"{key}: {value}")
    else:
        print(json.dumps(payload, indent=2))


def _trial_frame(trials):
    return pd.DataFrame([trial.to_dict() for trial in trials])


def cmd_gen(args):
    match args.kind:
        case "star-cycle":
            graph = gen_star_cycle(args.n, args.r)
            params = {"kind": args.kind, "n": args.n, "r": args.r}
        case "tight":
            if args.alpha is None or args.beta is None:
                raise ParameterError("The tight example needs --alpha and --beta.")
            graph = gen_tight_example(args.alpha, args.beta, args.n)
            params = {"kind": args.kind, "n": args.n, "alpha": str(args.alpha), "beta": str(args.beta)}
        case _:
            counts = {kind: getattr(args, kind) for kind in CENSUS_KEYS}
            graph = gen_random_family(args.n, counts, args.seed)
            params = {"kind": args.kind, "n": args.n, "counts": counts, "seed": args.seed}
    logger.info(f"Generated {graph!r}.")
    fmt = "json" if args.format == "json" else "text"
    if args.output:
        write_colored_graph(graph, args.output, fmt)
        with open(f"{args.output}.params.json", "w") as f:
            json.dump(params, f, indent=2)
    elif fmt == "json":
        print(graph.to_json(indent=2))
    else:
        sys.stdout.write(graph.to_text())


def cmd_girth(args):
    graph = read_colored_graph(args.input)
    value = girth(graph.n, graph.edges())
    _emit({"n": graph.n, "edges": graph.num_edges, "girth": None if value == float("inf") else int(value)}, args.format)


def cmd_rainbow_girth(args):
    graph = read_colored_graph(args.input)
    result = rainbow_girth_exact(graph, args.cutoff)
    payload = result.to_dict()
    if args.format == "csv":
        payload = {"status": result.status, "length": result.length, "cutoff": result.cutoff}
    _emit(payload, args.format)


def _run_finder(args, mode, **params):
    graph = read_colored_graph(args.input)
    finder = RainbowFinder(max_trials=args.trials, seed=args.seed, chooser=args.chooser)
    result = finder.find(graph, mode=mode, **params)
    if args.trial_log:
        _trial_frame(result.trials).to_csv(args.trial_log, index=False)
    _emit(result.to_dict(), args.format, frame=_trial_frame(result.trials) if args.format == "csv" else None)


def cmd_find(args):
    _run_finder(
        args, args.mode, alpha=args.alpha, beta=args.beta, c=args.c, L=args.L,
        allow_small_L=args.allow_small_L,
    )


def cmd_repair(args):
    _run_finder(args, nonstar, alpha=args.alpha)


def cmd_bound(args):
    payload = {}
    if args.n is not None and args.k is not None:
        payload["bs_bound"] = bs_bound(args.n, args.k)
    if args.n is not None and args.c is not None and args.L is not None:
        payload["nonstarex_bound"] = nonstarex_bound(int(args.n), args.c, args.L)
    if args.calibrate is not None:
        A = calibrate_A(args.calibrate)
        payload.update({"A": A, "L0": max(100 * A, 10**3)})
    if not payload:
        raise ParameterError("Give --n with --k, --n with --c and --L, or --calibrate.")
    _emit(payload, args.format)


def cmd_lb_build(args):
    params = LBParams(
        n=args.n, uniformity_t=args.t, k=args.k, L=args.L, delta_exp=args.delta,
        c=args.c, seed=args.seed, ell_max=args.ell_max,
    )
    instance = build_lb_instance(params)
    if args.search_cap is not None:
        instance.min_rainbow_size = min_rainbow_family_size(instance, search_cap=args.search_cap)
    if args.output:
        write_tgraph(args.n, instance.G, args.output)
    _emit(instance.summary(), args.format)


def cmd_lb_verify(args):
    n, tgraph = read_tgraph(args.input)
    instance = instance_from_tgraph(n, tgraph, args.k)
    instance.min_rainbow_size = min_rainbow_family_size(instance, search_cap=args.search_cap)
    payload = {
        "n": n, "t": tgraph.k, "k": args.k, "classes": len(instance.classes), "H": len(instance.H),
        "search_cap": args.search_cap, "min_rainbow_size": instance.min_rainbow_size,
    }
    _emit(payload, args.format)


def cmd_sweep(args):
    config = ExperimentConfig(
        mode=args.mode, n_values=list(args.n_values), grid=[_grid_point(point) for point in args.grid],
        instance=args.instance, trials=args.trials, master_seed=args.seed, chooser=args.chooser,
        fallback_t=args.fallback_t, workers=args.workers, csv_path=args.csv_path, json_path=args.json_path,
    )
    report = run_sweep(config)
    frame = sweep_frame([ExperimentRow.from_dict(row) for row in report["rows"]]) if args.format == "csv" else None
    _emit(report, args.format, frame=frame)


def cmd_lb_events(args):
    if not args.grid:
        raise ParameterError("lb-events needs --grid (or a grid in --config).")
    grid = []
    for point in args.grid:
        n, t, L = _grid_point(point)
        grid.append((int(n), int(t), float(L)))
    df = event_frequency_report(
        grid, args.seeds, master_seed=args.seed, k=args.k, c=args.c,
        ell_max=args.ell_max, csv_path=args.csv_path,
    )
    _emit({"cells": df.to_dict(orient="records")}, args.format, frame=df)


COMMAND_FUNC_MAP = {
    "gen": cmd_gen,
    "girth": cmd_girth,
    "rainbow-girth": cmd_rainbow_girth,
    "find": cmd_find,
    "repair": cmd_repair,
    "bound": cmd_bound,
    "lb-build": cmd_lb_build,
    "lb-verify": cmd_lb_verify,
    "sweep": cmd_sweep,
    "lb-events": cmd_lb_events,
}


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Cannot read --config: {e}")
        return 1
    except SystemExit as e:
        # argparse exits with 2 on bad flags; 2 is reserved for infeasible inputs
        return 0 if e.code in (0, None) else 1
    logger.remove()
    logger.add(sys.stderr, level=args.log_level.upper())
    try:
        COMMAND_FUNC_MAP[args.command](args)
    except (InfeasibleHypothesisError, TrialBudgetExhausted) as e:
        logger.error(str(e))
        payload = {"error": type(e).__name__, "message": str(e)}
        if isinstance(e, InfeasibleHypothesisError):
            payload.update(e.to_dict())
        print(json.dumps(payload, indent=2))
        return 2
    except (ParameterError, OSError) as e:
        logger.error(str(e))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
