"""Command line front end: simulate, theory, advise, figure."""

import argparse
import json
import os
import sys

from . import theory
from .errors import ConfigError, DegenerateTrialsExceeded, HybridMimoError
from .figures import DEFAULT_TRIALS, figure_scenarios, reproduce_figure, write_figure_outputs
from .runner import run_scenario, scenario_from_json, write_csv

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DEGENERATE = 3


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hybridmimo",
        description="Quantized hybrid precoding simulator and closed-form analyzer",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a scenario config and write CSV")
    sim.add_argument("--config", required=True, help="path to a scenario JSON file")
    sim.add_argument("--out", required=True, help="output CSV path")
    sim.add_argument("--trials", type=int, help="override the configured trial count")
    sim.add_argument("--seed", type=int, help="override the configured master seed")
    sim.add_argument("--workers", type=int, default=1, help="parallel worker processes")

    theo = sub.add_parser("theory", help="evaluate one closed-form operation")
    theo.add_argument(
        "--json",
        required=True,
        help='inline JSON like {"op": "asymptotic_rate", ...} or a path to a JSON file',
    )

    adv = sub.add_parser("advise", help="structure crossover and amplifier-gain report")
    adv.add_argument("--m", type=int, required=True)
    adv.add_argument("--k", type=int, required=True)
    adv.add_argument("--p-db", type=float, required=True)
    adv.add_argument("--b1", required=True, help='bits per phase shifter or "ideal"')
    adv.add_argument("--b2", type=int, required=True)

    fig = sub.add_parser("figure", help="run a reproduction preset")
    fig.add_argument("--name", required=True, help="fig2 .. fig8")
    fig.add_argument("--out", required=True, help="output directory")
    fig.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    fig.add_argument("--seed", type=int, default=0)
    fig.add_argument("--workers", type=int, default=1)
    return parser


def _print_report(report, stream):
    for key, value in report.items():
        if isinstance(value, float):
            print(f"{key} {value:.9g}", file=stream)
        else:
            print(f"{key} {value}", file=stream)


def _cmd_simulate(args, stream):
    sc = scenario_from_json(args.config)
    if args.trials is not None:
        sc = type(sc)(**{**sc.__dict__, "trials": args.trials})
    if args.seed is not None:
        sc = type(sc)(**{**sc.__dict__, "master_seed": args.seed})
    rows = run_scenario(sc, workers=max(1, args.workers))
    write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}", file=stream)


def _cmd_theory(args, stream):
    text = args.json
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid theory JSON: {exc}") from exc
    if not isinstance(obj, dict) or "op" not in obj:
        raise ConfigError('theory JSON must be an object with an "op" key')
    op = obj.pop("op")
    _print_report(theory.evaluate(op, obj), stream)


def _cmd_advise(args, stream):
    b1 = None if args.b1 == "ideal" else int(args.b1)
    p = 10.0 ** (args.p_db / 10.0)
    report = theory.evaluate(
        "crossover", {"p": p, "m": args.m, "k": args.k, "b1": b1, "b2": args.b2}
    )
    eta = theory.amplifier_gain_threshold(p, args.m, args.k, b1, args.b2)
    report["eta"] = eta
    _print_report(report, stream)


def _cmd_figure(args, stream):
    figure_scenarios(args.name)  # validate the name before running anything
    rows = reproduce_figure(args.name, args.trials, args.seed, max(1, args.workers))
    written = write_figure_outputs(args.name, rows, args.out)
    for path in written:
        print(f"wrote {path}", file=stream)


def main(argv=None, stream=None):
    stream = stream or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "simulate": _cmd_simulate,
        "theory": _cmd_theory,
        "advise": _cmd_advise,
        "figure": _cmd_figure,
    }
    try:
        handlers[args.command](args, stream)
    except DegenerateTrialsExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ConfigError, HybridMimoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
