"""Edge-list parsing and serialisation of graphs and metric reports.

Edge-list format: UTF-8 text, one link per line as two whitespace-separated
labels. Lines whose first non-blank character is '#' and blank lines are
skipped; tokens past the second are ignored (some AS datasets append a
relationship column).
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

from .graph import Graph
from .metrics import DegreeDistribution, LinkBinMatrix, RichClubCurve, SummaryStats

SCHEMA_VERSION = 1

CSV_FILES = {
    "summary": "summary.csv",
    "degree_distribution": "degree_distribution.csv",
    "rich_club": "rich_club.csv",
    "link_bins": "link_bins.csv",
}
JSON_FILE = "report.json"


class EdgeListParseError(ValueError):
    def __init__(self, message: str, lineno: int | None = None, source: str | None = None):
        self.lineno = lineno
        self.source = source
        where = ""
        if source is not None:
            where = f"{source}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)


class ReportSchemaError(ValueError):
    pass


@dataclass
class LabelMap:
    """Bijection between external labels and dense node ids (first-seen order)."""

    labels: list[str] = field(default_factory=list)
    ids: dict[str, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.labels)

    def id_for(self, label: str) -> int:
        i = self.ids.get(label)
        if i is None:
            i = len(self.labels)
            self.ids[label] = i
            self.labels.append(label)
        return i

    def label(self, i: int) -> str:
        return self.labels[i]


@dataclass
class ParseDiagnostics:
    lines: int = 0
    edges: int = 0
    duplicates: int = 0
    self_loops: int = 0
    skipped: int = 0  # comments and blank lines
    errors: int = 0  # malformed lines tolerated in non-strict mode

    def balanced(self) -> bool:
        return self.lines == self.edges + self.duplicates + self.self_loops + self.skipped + self.errors


def parse_edge_list(
    lines: Iterable[str] | str, *, strict: bool = True, source: str | None = None
) -> tuple[Graph, LabelMap, ParseDiagnostics]:
    """Parse an edge list into a graph with dense ids.

    Duplicate links (in either orientation) and self-loops are dropped and
    counted. A self-loop does not by itself introduce a node. With
    ``strict=False`` malformed lines are counted instead of raising.

    Raises
    ------
    EdgeListParseError
        A line holds fewer than two tokens (strict mode), or no link survives.
    """
    if isinstance(lines, str):
        lines = io.StringIO(lines)
    g = Graph()
    labels = LabelMap()
    diag = ParseDiagnostics()
    for lineno, raw in enumerate(lines, 1):
        diag.lines += 1
        text = raw.strip()
        if not text or text.startswith("#"):
            diag.skipped += 1
            continue
        tokens = text.split()
        if len(tokens) < 2:
            if strict:
                raise EdgeListParseError(f"expected two labels, got {text!r}", lineno, source)
            diag.errors += 1
            continue
        a, b = tokens[0], tokens[1]
        if a == b:
            diag.self_loops += 1
            continue
        i, j = labels.id_for(a), labels.id_for(b)
        while g.node_count < len(labels):
            g.add_node()
        if g.add_edge(i, j):
            diag.edges += 1
        else:
            diag.duplicates += 1
    if g.link_count == 0:
        raise EdgeListParseError("no usable links in input", None, source)
    return g, labels, diag


def read_edge_list(path: str | Path, *, strict: bool = True) -> tuple[Graph, LabelMap, ParseDiagnostics]:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, strict=strict, source=str(path))


def _label_key(label):
    if isinstance(label, int):
        return (0, label, "")
    if label.isdigit():
        return (0, int(label), label)
    return (1, 0, label)


def write_edge_list(g: Graph, label_map: LabelMap | None = None, stream: TextIO | None = None) -> str:
    """Canonical edge list: each line ``small big``, lines in sorted order.

    Labels that are decimal integers compare numerically, others as strings
    after all numeric ones. Returns the text; also writes it to ``stream``
    when given.
    """
    if label_map is None:
        pairs = list(g.edges())
    else:
        pairs = []
        for i, j in g.edges():
            a, b = label_map.label(i), label_map.label(j)
            if _label_key(b) < _label_key(a):
                a, b = b, a
            pairs.append((a, b))
    pairs.sort(key=lambda e: (_label_key(e[0]), _label_key(e[1])))
    text = "".join(f"{a} {b}\n" for a, b in pairs)
    if stream is not None:
        stream.write(text)
    return text


def _fmt(x):
    """Round floats to 9 significant digits; ints and strings pass through."""
    if isinstance(x, (int, str)):
        return x
    return float(f"{x:.9g}")


def _stats_dict(stats: SummaryStats) -> dict:
    return {k: _fmt(v) for k, v in asdict(stats).items()}


def report_document(
    stats: SummaryStats, dd: DegreeDistribution, curve: RichClubCurve, matrix: LinkBinMatrix
) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "stats": _stats_dict(stats),
        "degree_distribution": [{"k": k, "p_k": _fmt(p)} for k, p in dd.entries.items()],
        "rich_club_curve": [
            {"r": _fmt(s.r), "phi": _fmt(s.phi), "club_size": s.club_size, "club_links": s.club_links}
            for s in curve
        ],
        "link_bin_matrix": {
            "bin_width": _fmt(matrix.bin_width),
            "bins": matrix.bins,
            "cells": [
                {"bin_i": i, "bin_j": j, "fraction": _fmt(f)} for (i, j), f in matrix.cells.items()
            ],
        },
    }


def _csv_text(header: list[str], rows: Iterable[Iterable]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def atomic_write_files(contents: dict[Path, str]) -> list[Path]:
    """Write every file or none: stage each to a temp file, then rename all."""
    staged: list[tuple[str, Path]] = []
    path = None
    try:
        for path, text in contents.items():
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
            staged.append((tmp, path))
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except OSError as e:
        for tmp, _ in staged:
            try:
                os.unlink(tmp)
            except OSError:
                pass
        raise OSError(e.errno, f"cannot write {path}: {e.strerror}") from e
    for tmp, path in staged:
        os.replace(tmp, path)
    return [p for _, p in staged]


def atomic_write_text(path: str | Path, text: str) -> Path:
    return atomic_write_files({Path(path): text})[0]


def render_metrics_report(
    stats: SummaryStats,
    dd: DegreeDistribution,
    curve: RichClubCurve,
    matrix: LinkBinMatrix,
    fmt: str,
    out_dir: str | Path,
) -> dict[Path, str]:
    """Map each report file path to its text, without touching the disk."""
    out = Path(out_dir)
    if fmt == "json":
        doc = report_document(stats, dd, curve, matrix)
        return {out / JSON_FILE: json.dumps(doc, indent=2) + "\n"}
    if fmt != "csv":
        raise ValueError(f"unknown report format {fmt!r} (expected csv or json)")
    return {
        out / CSV_FILES["summary"]: _csv_text(["field", "value"], asdict(stats).items()),
        out / CSV_FILES["degree_distribution"]: _csv_text(["k", "p_k"], dd.entries.items()),
        out / CSV_FILES["rich_club"]: _csv_text(["r", "phi"], ((s.r, s.phi) for s in curve)),
        out / CSV_FILES["link_bins"]: _csv_text(
            ["bin_i", "bin_j", "fraction"], ((i, j, f) for (i, j), f in matrix.cells.items())
        ),
    }


def write_metrics_report(
    stats: SummaryStats,
    dd: DegreeDistribution,
    curve: RichClubCurve,
    matrix: LinkBinMatrix,
    fmt: str,
    out_dir: str | Path,
) -> list[Path]:
    """Write the report as CSV files (one per metric) or a single JSON document.

    CSV layouts::

        summary.csv              field,value
        degree_distribution.csv  k,p_k
        rich_club.csv            r,phi
        link_bins.csv            bin_i,bin_j,fraction   (full upper triangle)

    JSON: one ``report.json`` with keys ``schema_version``, ``stats``,
    ``degree_distribution``, ``rich_club_curve`` and ``link_bin_matrix``.
    Floats are rounded to 9 significant digits.
    """
    return atomic_write_files(render_metrics_report(stats, dd, curve, matrix, fmt, out_dir))


def read_metrics_report(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "schema_version" not in doc or "stats" not in doc:
        raise ReportSchemaError(f"{path}: not a metrics report (missing schema_version/stats)")
    return doc
