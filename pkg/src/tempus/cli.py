"""Command-line front end: ``tempus <command> ...``.

Exit status is 0 on success, 1 for bad input or usage, 2 when a route count
or search budget limit stops a temporal computation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from pathlib import Path

from .analytics import ClassifierConfig, Flow, classify_flows, compare_ranks, sweep_report
from .community import detect_communities, detect_temporal_communities
from .io import GeneratorConfig, format_number, generate_synthetic, load_graph, save_graph
from .journeys import RouteLimitExceeded
from .static import REPORT_ROWS, snapshot_report, static_betweenness
from .temporal import DEFAULT_ROUTE_CEILING, DEFAULT_SEARCH_BUDGET, foremost_betweenness
from .tvg import GraphError, Lifetime, footprint, restrict_window, snapshot

PROG = "tempus"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 is reserved for computation limits
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _limit(text: str) -> int | None:
    # 0 switches the limit off
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("limit must be >= 0")
    return value or None


def parse_window(text: str | None, lifetime: Lifetime) -> Lifetime:
    """``x:y``, ``x:`` or ``:y``; a missing side takes the lifetime bound."""
    if not text:
        return lifetime
    start, sep, end = text.partition(":")
    if not sep:
        raise GraphError(f"window {text!r} is not of the form x:y")
    try:
        lo = int(start) if start.strip() else lifetime.start
        hi = int(end) if end.strip() else lifetime.end
    except ValueError:
        raise GraphError(f"window {text!r} is not of the form x:y") from None
    if lo > hi:
        raise GraphError(f"window {text!r} starts after it ends")
    return Lifetime(lo, hi)


# -- output -----------------------------------------------------------------

def _cell(x):
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    return format_number(x)


def render(columns: list[str], rows: list[list], fmt: str) -> str:
    """CSV or JSON text of a table; both carry the same 12-digit numbers."""
    if fmt == "json":
        records = []
        for row in rows:
            rec = {}
            for c, x in zip(columns, row):
                v = _cell(x)
                rec[c] = float(v) if isinstance(v, str) and not isinstance(x, str) else v
            records.append(rec)
        return json.dumps(records, indent=2) + "\n"
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(columns)
    for row in rows:
        out.writerow(["" if x is None else _cell(x) for x in row])
    return buf.getvalue()


def _emit(args, columns, rows) -> None:
    text = render(columns, rows, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands ----------------------------------------------------------------

def _window_text(w: Lifetime) -> str:
    return f"{w.start}:{w.end}"


def _load(args):
    lifetime = None
    if args.lifetime:
        if args.lifetime.count(":") != 1 or not all(x.strip() for x in args.lifetime.split(":")):
            raise GraphError(f"lifetime {args.lifetime!r} is not of the form x:y")
        lifetime = parse_window(args.lifetime, Lifetime(0, 0))
    g = load_graph(args.nodes, args.edges, lifetime)
    window = parse_window(args.window, g.lifetime)
    return g, window


def _temporal_options(args) -> dict:
    return {"route_ceiling": args.route_ceiling, "search_budget": args.search_budget,
            "workers": args.threads}


def cmd_stats(args) -> None:
    g, window = _load(args)
    wg = restrict_window(g, window)
    years = list(range(window.start, window.end + 1))
    reports = [snapshot_report(footprint(snapshot(wg, t)), seed=args.seed, label=str(t)) for t in years]
    rows = [[title] + [getattr(r, name) for r in reports] for name, title in REPORT_ROWS]
    _emit(args, ["metric"] + [str(t) for t in years], rows)


def cmd_static_bc(args) -> None:
    g, window = _load(args)
    fp = footprint(restrict_window(g, window))
    scores = static_betweenness(fp, args.adjusted, window)
    ranks = scores.ranks()
    rows = [[v, scores[v], ranks[v]] for v in sorted(ranks, key=ranks.get)]
    _emit(args, ["node", "score", "rank"], rows)


def cmd_temporal_bc(args) -> None:
    g, window = _load(args)
    res = foremost_betweenness(g, window, args.adjusted, **_temporal_options(args))
    ranks = res.scores.ranks()
    rows = [[v, res.scores[v], res.raw[v], ranks[v]] for v in sorted(ranks, key=ranks.get)]
    _emit(args, ["node", "score", "raw", "rank"], rows)


def _sweep(args):
    g, window = _load(args)
    wg = restrict_window(g, window)
    cfg = ClassifierConfig(args.top, args.low)
    return sweep_report(wg, cfg=cfg, adjusted=args.adjusted, **_temporal_options(args)), cfg


def _figures(args, report, cfg) -> None:
    if not args.figures:
        return
    from .plotting import rank_scatter, rank_trajectories

    out = Path(args.figures)
    rank_trajectories(report, out / "rank_trajectories.png")
    for w in report.windows:
        rank_scatter(report.comparisons[w], out / f"ranks_{w.start}-{w.end}.png", cfg.top, cfg.low)


def cmd_sweep(args) -> None:
    report, cfg = _sweep(args)
    rows = []
    for w in report.windows:
        for r in report.comparisons[w].rows:
            rows.append([_window_text(w), r.node, r.temporal_rank, r.static_rank, r.temporal_score, r.static_score])
    _emit(args, ["window", "node", "temporal_rank", "static_rank", "temporal_score", "static_score"], rows)
    _figures(args, report, cfg)


def cmd_classify(args) -> None:
    report, cfg = _sweep(args)
    rows = []
    for w in report.windows:
        for c in report.classifications[w]:
            if args.invisible_only and c.label not in (Flow.INVISIBLE_RAPID, Flow.INVISIBLE_BROOK):
                continue
            rows.append([_window_text(w), c.node, c.label.value, c.temporal_rank, c.static_rank])
    _emit(args, ["window", "node", "label", "temporal_rank", "static_rank"], rows)
    _figures(args, report, cfg)


def cmd_compare(args) -> None:
    g, window = _load(args)
    rc = compare_ranks(g, window, adjusted=args.adjusted, **_temporal_options(args))
    cfg = ClassifierConfig(args.top, args.low)
    rows = [[c.node, c.label.value, c.temporal_rank, c.static_rank, r.temporal_score, r.static_score]
            for c, r in zip(classify_flows(rc, cfg), rc.rows)]
    _emit(args, ["node", "label", "temporal_rank", "static_rank", "temporal_score", "static_score"], rows)


def cmd_communities(args) -> None:
    g, window = _load(args)
    wg = restrict_window(g, window)
    if args.focus:
        part = detect_temporal_communities(wg, args.focus)
        kind = f"temporal:{args.focus}"
    else:
        part = detect_communities(footprint(wg), seed=args.seed)
        kind = "static"
    rows = [[kind, v, c, part.modularity] for v, c in sorted(part.membership.items(), key=lambda x: (x[1], x[0]))]
    _emit(args, ["partition", "node", "community", "modularity"], rows)


def cmd_generate(args) -> None:
    cfg = GeneratorConfig(hub_bias=args.hub_bias, peer_share=args.peer_share, seed=args.seed)
    g = generate_synthetic(cfg)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_graph(g, out / "nodes.csv", out / "edges.csv")
    print(f"wrote {len(g.nodes)} nodes and {len(g.edges)} edges to {out}", file=sys.stderr)


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Temporal and static betweenness of growing networks.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    graph = _Parser(add_help=False)
    graph.add_argument("--edges", required=True, help="edge CSV with header src,dst,birth")
    graph.add_argument("--nodes", help="node CSV with header id,type,birth")
    graph.add_argument("--lifetime", help="override the lifetime, x:y")
    graph.add_argument("--window", help="analysis window x:y (defaults to the lifetime)")
    graph.add_argument("--format", choices=("csv", "json"), default="csv")
    graph.add_argument("--out", help="write the table here instead of stdout")
    graph.add_argument("--seed", type=int, default=0, help="community detection seed")

    scaling = _Parser(add_help=False)
    group = scaling.add_mutually_exclusive_group()
    group.add_argument("--adjusted", dest="adjusted", action="store_true", default=True,
                       help="scale scores by component share (default)")
    group.add_argument("--raw", dest="adjusted", action="store_false", help="unscaled scores")

    temporal = _Parser(add_help=False)
    temporal.add_argument("--threads", type=_positive, default=None,
                          help="worker processes (default: $TEMPUS_THREADS or 1)")
    temporal.add_argument("--route-ceiling", type=_limit, default=DEFAULT_ROUTE_CEILING,
                          help="max foremost routes per pair, 0 for none")
    temporal.add_argument("--search-budget", type=_limit, default=DEFAULT_SEARCH_BUDGET,
                          help="max route prefixes explored per source, 0 for none")

    thresholds = _Parser(add_help=False)
    thresholds.add_argument("--top", type=_positive, default=20, help="rank at or above which a node is a rapid")
    thresholds.add_argument("--low", type=_positive, default=100, help="rank at or below which a node is a brook")

    figures = _Parser(add_help=False)
    figures.add_argument("--figures", metavar="DIR", help="also write PNG rank plots here")

    p = sub.add_parser("stats", parents=[graph], help="yearly snapshot statistics")
    p.set_defaults(func=cmd_stats)
    p = sub.add_parser("static-bc", parents=[graph, scaling], help="static betweenness")
    p.set_defaults(func=cmd_static_bc)
    p = sub.add_parser("temporal-bc", parents=[graph, scaling, temporal], help="foremost increasing betweenness")
    p.set_defaults(func=cmd_temporal_bc)
    p = sub.add_parser("compare", parents=[graph, scaling, temporal, thresholds],
                       help="temporal and static ranks of one window")
    p.set_defaults(func=cmd_compare)
    p = sub.add_parser("sweep", parents=[graph, scaling, temporal, thresholds, figures],
                       help="rank comparison over every birth-date window")
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("classify", parents=[graph, scaling, temporal, thresholds, figures],
                       help="rapid/brook labels over every birth-date window")
    p.add_argument("--invisible-only", action="store_true", help="only invisible rapids and brooks")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("communities", parents=[graph], help="static or focus-centred temporal communities")
    p.add_argument("--focus", help="node whose foremost journeys define a temporal partition")
    p.set_defaults(func=cmd_communities)

    p = sub.add_parser("generate", help="write a synthetic knowledge network")
    p.add_argument("--out-dir", required=True, help="directory for nodes.csv and edges.csv")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hub-bias", type=float, default=GeneratorConfig.hub_bias)
    p.add_argument("--peer-share", type=float, default=GeneratorConfig.peer_share)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            args.func(args)
            code = 0
        except RouteLimitExceeded as exc:
            print(f"{PROG}: limit: {exc}", file=sys.stderr)
            code = 2
        except (GraphError, ValueError, OSError) as exc:
            print(f"{PROG}: error: {exc}", file=sys.stderr)
            code = 1
    for w in caught:
        print(f"{PROG}: warning: {w.message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
