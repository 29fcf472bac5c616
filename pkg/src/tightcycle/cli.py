"""Command-line entry point: ``tightcycle <subcommand> ...``.

Exit codes: 0 success (``detect``: no tight cycle), 1 ``detect`` found a
witness, 2 ``detect`` aborted on its state budget, 64 usage error, 65 domain
error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from pathlib import Path

from . import __version__
from .constructions import PipelineParams, certify, cone_lift, construct_r_uniform
from .core import HypergraphError, parse, serialize
from .detector import BudgetExhausted, DetectOptions, find_tight_cycle, partite_find
from .extremal import DEFAULT_CANDIDATE_CAP, compare_constructions, exact_extremal, rows_to_csv
from .girth import GirthGenConfig, GirthInfeasible, RemovalStrategy, generate_high_girth, shortest_cycle_length
from .packing import PackingError, coverage_stats, pack, serialize_family

EX_USAGE, EX_DATAERR, EX_IOERR = 64, 65, 74
DEFAULT_SEED = 0xC0FFEE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    if text == "random":
        return secrets.randbits(64)
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _say(args, text: str) -> None:
    if not args.quiet:
        print(text)


def _girth_cfg(args) -> GirthGenConfig:
    return GirthGenConfig(
        density_exponent_c=args.c,
        initial_edge_probability_scale=args.scale,
        removal_strategy=RemovalStrategy(args.strategy),
        max_retries=args.retries,
    )


def cmd_girth(args) -> int:
    G = generate_high_girth(args.n, args.k, _girth_cfg(args), seed=args.seed)
    _emit(args, serialize(G.to_hypergraph(), [f"bipartite {G.n_left} {G.n_right}", f"seed {args.seed}"]))
    _say(args, f"seed {args.seed}\nedges {len(G)}\ngirth {shortest_cycle_length(G)}")
    return 0


def cmd_pack(args) -> int:
    G = generate_high_girth(args.n, args.k, _girth_cfg(args), seed=args.seed)
    fam = pack(G, args.t, args.k, seed=args.seed)
    _emit(args, serialize_family(fam))
    st = coverage_stats(fam)
    _say(args, f"seed {args.seed}\nt {fam.t}\ntemplate_edges {len(G)}\nedge_sum {st.edge_sum}\n"
               f"coverage_ratio {st.coverage_ratio:.6f}\npredicted_missing_fraction "
               f"{st.predicted_missing_fraction:.6f}")
    return 0


def cmd_construct(args) -> int:
    params = PipelineParams(n=args.n, alpha=args.alpha, k_override=args.k, seed=args.seed,
                            girth_cfg=_girth_cfg(args), r=args.r)
    H, report = construct_r_uniform(params)
    report = certify(H, report, max_states=args.verify_states)
    _emit(args, serialize(H, [f"construct r={args.r} n={args.n} k={report.k} seed={args.seed}"]))
    if args.report:
        Path(args.report).write_text(report.to_text(machine=True), encoding="utf-8")
    if not args.quiet:
        sys.stdout.write(report.to_text(machine=args.format == "machine"))
    return 0


def cmd_lift(args) -> int:
    H = parse(_read(args.input))
    L = cone_lift(H, args.m)
    _emit(args, serialize(L))
    _say(args, f"r {L.r}\nvertices {L.n_vertices}\nedges {len(L)}")
    return 0


def cmd_detect(args) -> int:
    H = parse(_read(args.input))
    opt = DetectOptions(min_length=args.min, max_length=args.max, state_budget=args.budget,
                        parallel_roots=args.threads is not None and args.threads > 1,
                        workers=args.threads)
    try:
        if args.fast:
            w = partite_find(H, opt)
        else:
            w = find_tight_cycle(H, opt)
    except BudgetExhausted as exc:
        _say(args, f"aborted: {exc}")
        return 2
    if w is None:
        _say(args, "free")
        return 0
    _say(args, w.format())
    return 1


def cmd_extremal(args) -> int:
    res = exact_extremal(args.r, args.n, budget=args.budget, cap=args.cap, cache=args.cache)
    if args.out:
        Path(args.out).write_text(serialize(res.witness), encoding="utf-8")
    if args.format == "machine":
        _say(args, f"format=1\nr={res.r}\nn={res.n}\nvalue={res.value}\nexhaustive={int(res.exhaustive)}")
    else:
        _say(args, f"value {res.value}\nexhaustive {'yes' if res.exhaustive else 'no'}")
    return 0


def cmd_bench(args) -> int:
    rows = compare_constructions(args.r, args.n, args.seeds, max_states=args.verify_states, k=args.k)
    _emit(args, rows_to_csv(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tightcycle", description="Construct and certify tight-cycle-free hypergraphs.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED,
                        help="64-bit seed, decimal or 0x-hex, or 'random' (default 0xC0FFEE)")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=["text", "machine"], default="text")
    common.add_argument("--quiet", action="store_true", help="suppress the summary on stdout")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes for the detector (timing only, never results)")
    girth_opts = argparse.ArgumentParser(add_help=False)
    girth_opts.add_argument("--c", type=float, default=None, help="density exponent constant")
    girth_opts.add_argument("--scale", type=float, default=1.0, help="edge probability scale")
    girth_opts.add_argument("--strategy", default=RemovalStrategy.DELETE.value,
                            choices=[s.value for s in RemovalStrategy])
    girth_opts.add_argument("--retries", type=int, default=20)

    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("girth", parents=[common, girth_opts], help="random bipartite graph of girth > 2k")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_girth)

    s = sub.add_parser("pack", parents=[common, girth_opts], help="edge-disjoint family of template copies")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--t", type=int, default=None, help="number of copies (default n // k)")
    s.set_defaults(func=cmd_pack)

    s = sub.add_parser("construct", parents=[common, girth_opts], help="full r-uniform construction")
    s.add_argument("--r", type=int, default=3)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--alpha", type=float, default=0.3)
    s.add_argument("--k", type=int, default=None, help="override the derived k")
    s.add_argument("--report", help="write the machine-readable report here")
    s.add_argument("--verify-states", type=int, default=10**7)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("lift", parents=[common], help="cone lift to uniformity r+1")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--m", type=int, default=None, help="apex class size (default: vertex count)")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("detect", parents=[common], help="search for a tight cycle")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--min", type=int, default=None)
    s.add_argument("--max", type=int, default=None)
    s.add_argument("--budget", type=int, default=None, help="state budget; exit 2 when hit")
    s.add_argument("--fast", action="store_true", help="partite fast path (needs a partition)")
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser("extremal", parents=[common], help="exact f_r(n) by branch and bound")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--cap", type=int, default=DEFAULT_CANDIDATE_CAP)
    s.add_argument("--cache", default=None, help="results cache file")
    s.set_defaults(func=cmd_extremal)

    s = sub.add_parser("bench", parents=[common], help="CSV comparison of constructions")
    s.add_argument("--r", type=int, default=3)
    s.add_argument("--n", type=int, nargs="+", required=True, help="vertex budgets")
    s.add_argument("--seeds", type=_seed, nargs="+", default=[DEFAULT_SEED])
    s.add_argument("--k", type=int, default=None, help="override the derived k")
    s.add_argument("--verify-states", type=int, default=10**6)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"tightcycle: {exc}", file=sys.stderr)
        return EX_IOERR
    except (HypergraphError, PackingError, GirthInfeasible, ValueError) as exc:
        print(f"tightcycle: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
