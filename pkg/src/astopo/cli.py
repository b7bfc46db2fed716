"""Command-line entry point: ``astopo generate | analyze | compare``.

Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 I/O error.
Every successful run writes a JSON manifest next to its outputs recording
the resolved configuration and the argument vector needed to replay it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import platform
import sys
import time
from dataclasses import fields
from pathlib import Path

from . import __version__
from .generators import GrowthConfig, generate_ba, grow_ig
from .ingest import (
    EdgeListParseError,
    ReportSchemaError,
    atomic_write_files,
    read_edge_list,
    read_metrics_report,
    render_metrics_report,
    write_edge_list,
)
from .metrics import (
    DEFAULT_BIN_WIDTH,
    SummaryStats,
    default_r_grid,
    degree_distribution,
    node_node_link_distribution,
    rank_nodes,
    rich_club_curve,
    summarize,
)

log = logging.getLogger("astopo")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3

RNG_DESCRIPTION = "MT19937 (Python random.Random), all draws from Random.random()"

STAT_FIELDS = [f.name for f in fields(SummaryStats)]


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_rgrid(text: str | None, n: int) -> list[float]:
    """``log:<count>`` (log-spaced from 1/N to 1) or ``list:<r1,r2,...>``."""
    if text is None:
        return default_r_grid(n)
    kind, _, arg = text.partition(":")
    try:
        if kind == "log":
            return default_r_grid(n, int(arg))
        if kind == "list":
            values = [float(x) for x in arg.split(",") if x.strip()]
            if not values or not all(0.0 < r <= 1.0 for r in values):
                raise ValueError
            return values
    except ValueError:
        pass
    raise UsageError(f"bad --rgrid {text!r}; expected log:<count> or list:<r1,r2,...> with r in (0, 1]")


def _manifest(command: str, argv: list[str], config: dict, inputs, outputs, started: float) -> str:
    doc = {
        "command": command,
        "argv": ["astopo", *argv],
        "cwd": os.getcwd(),
        "config": config,
        "inputs": [str(p) for p in inputs],
        "outputs": [str(p) for p in outputs],
        "tool_version": __version__,
        "python": platform.python_version(),
        "rng": RNG_DESCRIPTION,
        "duration_s": round(time.perf_counter() - started, 6),
    }
    return json.dumps(doc, indent=2) + "\n"


def manifest_path(output: Path) -> Path:
    return output.with_name(output.name + ".manifest.json")


def cmd_generate(args, argv: list[str]) -> int:
    started = time.perf_counter()
    try:
        overrides = dict(target_nodes=args.nodes, ba_m=args.m, ig_p_single_host=args.ig_p_single, rng_seed=args.seed)
        if args.config:
            cfg = GrowthConfig.from_file(args.config, **overrides)
        else:
            cfg = GrowthConfig(**{k: v for k, v in overrides.items() if v is not None})
        if args.model == "ba":
            g = generate_ba(cfg)
            extra = {}
        else:
            g, diag = grow_ig(cfg)
            extra = {"saturation_events": diag.saturation_events, "steps": diag.steps}
    except (ValueError, OSError) as e:
        raise UsageError(str(e)) from e
    out = Path(args.out)
    config = {"model": args.model, **cfg.to_dict(), **extra}
    atomic_write_files({
        out: write_edge_list(g),
        manifest_path(out): _manifest("generate", argv, config, [], [out], started),
    })
    log.info("wrote %s (N=%d, L=%d)", out, g.node_count, g.link_count)
    return EXIT_OK


def _summary_table(stats: SummaryStats) -> str:
    return "\n".join(f"{name:<24}{getattr(stats, name)}" for name in STAT_FIELDS)


def cmd_analyze(args, argv: list[str]) -> int:
    started = time.perf_counter()
    if not 0.0 < args.bin_width <= 1.0 or abs(round(1 / args.bin_width) * args.bin_width - 1) > 1e-9:
        raise UsageError(f"--bin-width must divide 1 into a whole number of bins, got {args.bin_width}")
    try:
        g, _, diag = read_edge_list(args.input, strict=not args.lenient)
    except FileNotFoundError as e:
        raise InputError(f"cannot read {args.input}: {e.strerror}") from e
    except (EdgeListParseError, UnicodeDecodeError) as e:
        raise InputError(str(e)) from e
    grid = parse_rgrid(args.rgrid, g.node_count)
    try:
        ranked = rank_nodes(g)
        stats = summarize(g, ranked)
        matrix = node_node_link_distribution(g, ranked, args.bin_width)
    except ValueError as e:
        raise InputError(f"{args.input}: {e}") from e
    curve = rich_club_curve(g, ranked, grid)
    dd = degree_distribution(g)
    out = Path(args.out)
    files = render_metrics_report(stats, dd, curve, matrix, args.format, out)
    config = {
        "format": args.format,
        "rgrid": args.rgrid or "log:50",
        "bin_width": args.bin_width,
        "lenient": args.lenient,
        "parse": vars(diag),
    }
    files[out / "manifest.json"] = _manifest("analyze", argv, config, [args.input], list(files), started)
    atomic_write_files(files)
    print(_summary_table(stats))
    return EXIT_OK


def _report_name(path: Path) -> str:
    return path.parent.name if path.stem == "report" and path.parent.name else path.stem


def compare_reports(paths: list[Path]) -> tuple[list[str], list[list]]:
    """Rows of the comparison table: one per summary field, values then |diff| from the first report."""
    if len(paths) < 2:
        raise UsageError("compare needs at least two reports")
    docs = []
    for p in paths:
        try:
            docs.append(read_metrics_report(p))
        except FileNotFoundError as e:
            raise InputError(f"cannot read {p}: {e.strerror}") from e
        except (json.JSONDecodeError, ReportSchemaError) as e:
            raise InputError(f"{p}: {e}") from e
    versions = {d["schema_version"] for d in docs}
    if len(versions) != 1:
        raise InputError(f"schema_version mismatch across reports: {sorted(versions)}")
    names = [_report_name(p) for p in paths]
    header = ["field", *names, *(f"|{n} - {names[0]}|" for n in names[1:])]
    rows = []
    for name in STAT_FIELDS:
        try:
            vals = [d["stats"][name] for d in docs]
        except KeyError as e:
            raise InputError(f"report missing stats field {e}") from e
        diffs = [float(f"{abs(v - vals[0]):.9g}") for v in vals[1:]]
        rows.append([name, *vals, *diffs])
    return header, rows


def cmd_compare(args, argv: list[str]) -> int:
    started = time.perf_counter()
    paths = [Path(p) for p in args.reports]
    header, rows = compare_reports(paths)
    widths = [max(len(str(r[c])) for r in [header, *rows]) for c in range(len(header))]
    for r in [header, *rows]:
        print("  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip())
    if args.out:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out = Path(args.out)
        atomic_write_files({
            out: buf.getvalue(),
            manifest_path(out): _manifest("compare", argv, {}, paths, [out], started),
        })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="astopo", description="Generate and analyse power-law AS-level topologies.")
    parser.add_argument("--version", action="version", version=f"astopo {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="grow a BA or IG topology and write its edge list")
    gen.add_argument("model", choices=["ba", "ig"])
    gen.add_argument("--nodes", type=int, help="target node count (default 11122)")
    gen.add_argument("--m", type=int, help="links per new node, BA only (default 3)")
    gen.add_argument("--ig-p-single", type=float, help="probability of the one-host IG step (default 0.4)")
    gen.add_argument("--seed", type=int, help="RNG seed (default 0)")
    gen.add_argument("--config", help="key=value file; flags override its entries")
    gen.add_argument("--out", required=True, help="edge-list output path")
    gen.set_defaults(func=cmd_generate)

    ana = sub.add_parser("analyze", help="compute the metric suite of an edge list")
    ana.add_argument("input")
    ana.add_argument("--out", required=True, help="output directory")
    ana.add_argument("--format", choices=["csv", "json"], default="json")
    ana.add_argument("--rgrid", help="log:<count> or list:<r1,r2,...> (default log:50)")
    ana.add_argument("--bin-width", type=float, default=DEFAULT_BIN_WIDTH)
    ana.add_argument("--lenient", action="store_true", help="count malformed lines instead of failing")
    ana.set_defaults(func=cmd_analyze)

    cmp_ = sub.add_parser("compare", help="tabulate summary stats of two or more JSON reports")
    cmp_.add_argument("reports", nargs="+")
    cmp_.add_argument("--out", help="CSV output path")
    cmp_.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args, argv)
    except UsageError as e:
        print(f"astopo: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as e:
        print(f"astopo: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"astopo: I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
