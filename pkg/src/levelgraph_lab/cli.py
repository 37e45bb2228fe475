"""Command line interface: ``levelgraph-lab <command> [graph.json ...]``."""

from __future__ import annotations

import argparse
import random
import sys

from .corpus import DEFAULT_MUS, CorpusSpec, enumerate_genus0_graphs
from .graph import GraphStructureError, load_graph
from .suite import COMMANDS, FAN_LEMMAS, FAN_METHODS, IDEAL_SCHEMES, enumerate_lines, format_report, run_suite

DEFAULT_SEED = 0


def _parse_mu(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"orders must be comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for --sample (default %(default)s)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes; output order is unaffected")
    common.add_argument("--output", choices=("json", "table"), default="json")

    parser = argparse.ArgumentParser(prog="levelgraph-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=f"run {name} on graphs or a corpus")
        p.add_argument("graphs", nargs="*", help="graph JSON files ('-' for stdin); default: enumerated corpus")
        p.add_argument(
            "--mu",
            type=_parse_mu,
            action="append",
            help="corpus orders, e.g. --mu=-1,-1,0,0 (repeatable; default: built-in set)",
        )
        p.add_argument("--max-edges", type=int, default=None)
        p.add_argument("--sample", type=int, default=None, help="run on a seeded random sample of the corpus")
        if name == "ideal":
            p.add_argument("--scheme", choices=IDEAL_SCHEMES, default="j")
        if name == "fan":
            p.add_argument("--method", choices=FAN_METHODS, default="newton")
        if name == "fan-check":
            p.add_argument("--lemma", choices=FAN_LEMMAS, default="equality")

    p = sub.add_parser("enumerate", parents=[common], help="print the genus-0 corpus for one order vector")
    p.add_argument("--n", type=int, default=None, help="number of legs (checked against --mu)")
    p.add_argument("--mu", type=_parse_mu, required=True)
    p.add_argument("--max-edges", type=int, default=None)
    return parser


def _load_inputs(args) -> list:
    if args.graphs:
        out = []
        for path in args.graphs:
            out.append(load_graph(sys.stdin if path == "-" else path))
        return out
    corpus = []
    for mu in args.mu or DEFAULT_MUS:
        corpus.extend(enumerate_genus0_graphs(CorpusSpec(mu, args.max_edges)))
    if args.sample is not None and args.sample < len(corpus):
        keep = sorted(random.Random(args.seed).sample(range(len(corpus)), args.sample))
        corpus = [corpus[k] for k in keep]
    return corpus


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "enumerate":
            if args.n is not None and args.n != len(args.mu):
                raise ValueError(f"--n {args.n} does not match {len(args.mu)} orders in --mu")
            text = enumerate_lines(CorpusSpec(args.mu, args.max_edges))
            sys.stdout.write(text)
            return 0
        graphs = _load_inputs(args)
    except (GraphStructureError, ValueError, OSError) as exc:
        print(f"levelgraph-lab: error: {exc}", file=sys.stderr)
        return 2
    options = {}
    for key in ("scheme", "method", "lemma"):
        if hasattr(args, key):
            options[key] = getattr(args, key)
    report = run_suite(args.command, graphs, jobs=args.jobs, **options)
    sys.stdout.write(format_report(report, args.output))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
