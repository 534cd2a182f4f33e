"""Command line front end.

Subcommands cover the full pipeline: ``gen`` writes instance files,
``solve`` runs a delegation method, ``eval`` scores a given delegation,
``export-milp`` emits the integer program, ``feasdel`` checks fractional
weight targets, and ``experiment`` runs a config-driven sweep to CSV.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .flows import fractional_delegation
from .generators import gen_ba, gen_gnm, gen_ws
from .harness import METHODS, ExperimentConfig, delegation_measures, run_experiment_to_csv
from .milp import build_milp, export_lp
from .model import (
    delegation_from_json,
    delegation_to_json,
    instance_from_json,
    instance_to_json,
)
from .probability import delegation_score
from .reduction import ReductionParams, build_reduction, random_cover
from .strategies import StrategyParams
from .harness import _solve as _run_method


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: str | None, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _cmd_gen(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    if args.model == "gnm":
        net = gen_gnm(args.n, args.m, rng)
    elif args.model == "ba":
        net = gen_ba(args.n, args.ba_attach, rng)
    elif args.model == "ws":
        net = gen_ws(args.n, args.ws_k, args.ws_p, rng)
    else:
        sets = random_cover(args.elements, args.sets, rng, args.density)
        params = ReductionParams(args.elements, sets, Fraction(args.beta))
        net = build_reduction(params)
    _write(args.out, instance_to_json(net))
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    net = instance_from_json(_read(args.instance))
    params = StrategyParams(epsilon=args.epsilon, alpha=args.alpha)
    rng = np.random.default_rng(args.seed)
    d = _run_method(args.method, net, params, rng, args.guard)
    payload = delegation_to_json(d)
    if args.out:
        _write(args.out, payload)
        print(delegation_score(net, d))
    else:
        _write(None, payload)
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    net = instance_from_json(_read(args.instance))
    d = delegation_from_json(_read(args.delegation))
    score = delegation_score(net, d)
    nb, dist, acc = delegation_measures(net, d)
    doc = {"score": score, "nb_gurus": nb, "avg_distance": dist, "avg_accuracy": acc}
    print(json.dumps(doc))
    return 0


def _cmd_export_milp(args: argparse.Namespace) -> int:
    net = instance_from_json(_read(args.instance))
    _write(args.out, export_lp(build_milp(net)).encode("utf-8"))
    return 0


def _cmd_feasdel(args: argparse.Namespace) -> int:
    net = instance_from_json(_read(args.instance))
    doc = json.loads(_read(args.weights))
    weights = doc["weights"] if isinstance(doc, dict) else doc
    result = fractional_delegation(net, weights)
    out = {"feasible": result.feasible}
    if result.feasible:
        out["transfers"] = [[i, j, f] for i, j, f in result.transfers]
    print(json.dumps(out))
    return 0 if result.feasible else 1


def _cmd_experiment(args: argparse.Namespace) -> int:
    config = ExperimentConfig.from_json(_read(args.config))
    records = run_experiment_to_csv(config, args.out)
    print(f"wrote {len(records)} rows to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liqdem", description="delegation optimization toolkit"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random instance")
    gen.add_argument("--model", choices=("gnm", "ba", "ws", "reduction"), required=True)
    gen.add_argument("--n", type=int, default=21, help="voter count")
    gen.add_argument("--m", type=int, default=42, help="edge count (gnm)")
    gen.add_argument("--ba-attach", type=int, default=2, help="edges per new node (ba)")
    gen.add_argument("--ws-k", type=int, default=2, help="ring degree (ws)")
    gen.add_argument("--ws-p", type=float, default=0.1, help="shortcut probability (ws)")
    gen.add_argument("--elements", type=int, default=3, help="universe size (reduction)")
    gen.add_argument("--sets", type=int, default=3, help="family size (reduction)")
    gen.add_argument("--beta", default="1/4", help="margin parameter (reduction)")
    gen.add_argument("--density", type=float, default=0.4, help="set density (reduction)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None, help="output file (default stdout)")
    gen.set_defaults(func=_cmd_gen)

    solve = sub.add_parser("solve", help="run a delegation method on an instance")
    solve.add_argument("instance")
    solve.add_argument("--method", choices=METHODS, default="ls_gr")
    solve.add_argument("--epsilon", type=float, default=0.05)
    solve.add_argument("--alpha", type=float, default=0.0)
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--guard", type=int, default=10_000_000)
    solve.add_argument("--out", default=None, help="write delegation JSON here and print the score")
    solve.set_defaults(func=_cmd_solve)

    ev = sub.add_parser("eval", help="score a delegation against an instance")
    ev.add_argument("instance")
    ev.add_argument("delegation")
    ev.set_defaults(func=_cmd_eval)

    milp = sub.add_parser("export-milp", help="write the integer program in LP format")
    milp.add_argument("instance")
    milp.add_argument("--out", default=None)
    milp.set_defaults(func=_cmd_export_milp)

    feas = sub.add_parser("feasdel", help="check a fractional weight target")
    feas.add_argument("instance")
    feas.add_argument("--weights", required=True, help="JSON file with target weights")
    feas.set_defaults(func=_cmd_feasdel)

    exp = sub.add_parser("experiment", help="run an experiment config to CSV")
    exp.add_argument("--config", required=True)
    exp.add_argument("--out", required=True)
    exp.set_defaults(func=_cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"liqdem: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
