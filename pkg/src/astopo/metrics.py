"""Degree distribution, node rank, rich-club connectivity and node-node link distribution.

Conventions shared by every rank-based metric:

* Nodes are ranked by decreasing degree; equal degrees are ordered by
  ascending node id. The normalised rank of the node at 0-based position
  ``p`` is ``(p + 1) / N``.
* The "top r" club is the first ``floor(r * N)`` ranked nodes. Clubs with
  fewer than two members have connectivity 0.
* Rank bins of width ``w`` (``1/w`` bins) put position ``p`` in bin
  ``floor(p * bins / N)``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph

DEFAULT_BIN_WIDTH = 0.05
DEFAULT_GRID_POINTS = 50

# absorbs float error in r * N (e.g. 0.29 * 100 == 28.999999999999996)
_RANK_EPS = 1e-9


class EmptyGraphError(ValueError):
    pass


@dataclass(frozen=True)
class RankedNodes:
    order: tuple[int, ...]
    degrees: tuple[int, ...]  # degree of order[p], non-increasing
    position: tuple[int, ...]  # inverse permutation of order

    @property
    def n(self) -> int:
        return len(self.order)

    def normalized_rank(self, p: int) -> float:
        return (p + 1) / len(self.order)

    def club_size(self, r: float) -> int:
        return club_size(r, len(self.order))


@dataclass
class DegreeDistribution:
    node_count: int
    counts: dict[int, int]

    @property
    def entries(self) -> dict[int, float]:
        return {k: c / self.node_count for k, c in sorted(self.counts.items())}

    def p(self, k: int) -> float:
        return self.counts.get(k, 0) / self.node_count

    def mean_degree(self) -> float:
        return sum(k * c for k, c in self.counts.items()) / self.node_count


@dataclass(frozen=True)
class RichClubSample:
    r: float
    phi: float
    club_size: int
    club_links: int


@dataclass
class RichClubCurve:
    samples: list[RichClubSample] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)


@dataclass
class LinkBinMatrix:
    bin_width: float
    bins: int
    link_count: int
    counts: dict[tuple[int, int], int]  # upper triangle, bin_i <= bin_j

    def fraction(self, i: int, j: int) -> float:
        if i > j:
            i, j = j, i
        return self.counts.get((i, j), 0) / self.link_count

    @property
    def cells(self) -> dict[tuple[int, int], float]:
        """Every upper-triangular cell, zeros included, as a fraction of all links."""
        return {
            (i, j): self.counts.get((i, j), 0) / self.link_count
            for i in range(self.bins)
            for j in range(i, self.bins)
        }


@dataclass
class SummaryStats:
    n: int
    l: int
    k_average: float
    k_max: int
    phi_1pct: float
    link_share_top5: float
    link_share_within_top5: float
    p1: float
    p2: float
    p3: float


def club_size(r: float, n: int) -> int:
    """Number of nodes whose normalised rank is at most ``r``."""
    if not 0.0 < r <= 1.0:
        raise ValueError(f"normalised rank must lie in (0, 1], got {r}")
    return min(n, math.floor(r * n + _RANK_EPS))


def rank_nodes(g: Graph) -> RankedNodes:
    n = g.node_count
    if n == 0:
        raise EmptyGraphError("cannot rank the nodes of an empty graph")
    degs = g.degrees()
    order = sorted(range(n), key=lambda i: (-degs[i], i))
    position = [0] * n
    for p, i in enumerate(order):
        position[i] = p
    return RankedNodes(tuple(order), tuple(degs[i] for i in order), tuple(position))


def degree_distribution(g: Graph) -> DegreeDistribution:
    if g.node_count == 0:
        raise EmptyGraphError("degree distribution of an empty graph is undefined")
    return DegreeDistribution(g.node_count, dict(Counter(g.degrees())))


def _phi(links: int, size: int) -> float:
    if size < 2:
        return 0.0
    return links / (size * (size - 1) / 2)


def rich_club_connectivity(g: Graph, ranked: RankedNodes, r: float) -> float:
    """Link density among the top-``r`` ranked nodes.

    Ratio of links inside the club to the ``n(n-1)/2`` a complete club would
    have. Zero for clubs of fewer than two nodes.
    """
    c = club_size(r, ranked.n)
    pos = ranked.position
    links = 0
    for p in range(c):
        u = ranked.order[p]
        links += sum(1 for v in g._adj[u] if pos[v] < p)
    return _phi(links, c)


def _inner_link_prefix(g: Graph, ranked: RankedNodes) -> list[int]:
    # prefix[c] = number of links among the first c ranked nodes
    pos = ranked.position
    prefix = [0] * (ranked.n + 1)
    for p, u in enumerate(ranked.order):
        prefix[p + 1] = prefix[p] + sum(1 for v in g._adj[u] if pos[v] < p)
    return prefix


def default_r_grid(n: int, points: int = DEFAULT_GRID_POINTS) -> list[float]:
    """``points`` log-spaced normalised ranks from ``1/n`` to 1."""
    if n < 1:
        raise EmptyGraphError("rank grid needs at least one node")
    if points < 1:
        raise ValueError("grid needs at least one point")
    if points == 1:
        return [1.0]
    grid = np.geomspace(1.0 / n, 1.0, points).tolist()
    grid[-1] = 1.0
    return grid


def rich_club_curve(g: Graph, ranked: RankedNodes, r_values: list[float] | None = None) -> RichClubCurve:
    """Rich-club connectivity at each requested rank, in input order.

    One O(L) pass builds the link count of every top-c club, after which each
    sample is a lookup.
    """
    if r_values is None:
        r_values = default_r_grid(ranked.n)
    if len(r_values) == 0:
        raise ValueError("r_values must be non-empty")
    sizes = [club_size(r, ranked.n) for r in r_values]
    prefix = _inner_link_prefix(g, ranked)
    return RichClubCurve(
        [RichClubSample(r, _phi(prefix[c], c), c, prefix[c]) for r, c in zip(r_values, sizes)]
    )


def _bin_count(bin_width: float) -> int:
    if not 0.0 < bin_width <= 1.0:
        raise ValueError(f"bin width must lie in (0, 1], got {bin_width}")
    bins = round(1.0 / bin_width)
    if abs(bins * bin_width - 1.0) > 1e-9:
        raise ValueError(f"1 / bin_width must be an integer, got 1/{bin_width} = {1.0 / bin_width}")
    return bins


def rank_bin(p: int, n: int, bins: int) -> int:
    return min(p * bins // n, bins - 1)


def node_node_link_distribution(g: Graph, ranked: RankedNodes, bin_width: float = DEFAULT_BIN_WIDTH) -> LinkBinMatrix:
    """Share of links joining each pair of rank bins (upper triangle)."""
    bins = _bin_count(bin_width)
    if g.link_count == 0:
        raise EmptyGraphError("link distribution of a graph without links is undefined")
    n = ranked.n
    bin_of = [rank_bin(p, n, bins) for p in ranked.position]
    counts: Counter = Counter()
    for u, v in g.edges():
        a, b = bin_of[u], bin_of[v]
        counts[(a, b) if a <= b else (b, a)] += 1
    return LinkBinMatrix(bin_width, bins, g.link_count, dict(counts))


def link_share_with_top(g: Graph, ranked: RankedNodes, r: float) -> float:
    """Fraction of links with at least one endpoint in the top-``r`` club."""
    c = club_size(r, ranked.n)
    if g.link_count == 0:
        raise EmptyGraphError("link share of a graph without links is undefined")
    pos = ranked.position
    hits = sum(1 for u, v in g.edges() if pos[u] < c or pos[v] < c)
    return hits / g.link_count


def link_share_within_top(g: Graph, ranked: RankedNodes, r: float) -> float:
    """Fraction of links with both endpoints in the top-``r`` club."""
    c = club_size(r, ranked.n)
    if g.link_count == 0:
        raise EmptyGraphError("link share of a graph without links is undefined")
    return _inner_link_prefix(g, ranked)[c] / g.link_count


def summarize(g: Graph, ranked: RankedNodes | None = None) -> SummaryStats:
    """Table-style summary: size, degree moments, rich-club figures at 1% and 5%."""
    if g.node_count < 2 or g.link_count < 1:
        raise EmptyGraphError(f"summary needs N >= 2 and L >= 1, got N={g.node_count}, L={g.link_count}")
    if ranked is None:
        ranked = rank_nodes(g)
    dd = degree_distribution(g)
    return SummaryStats(
        n=g.node_count,
        l=g.link_count,
        k_average=2 * g.link_count / g.node_count,
        k_max=ranked.degrees[0],
        phi_1pct=rich_club_connectivity(g, ranked, 0.01),
        link_share_top5=link_share_with_top(g, ranked, 0.05),
        link_share_within_top5=link_share_within_top(g, ranked, 0.05),
        p1=dd.p(1),
        p2=dd.p(2),
        p3=dd.p(3),
    )


def power_law_slope(dd: DegreeDistribution, min_support: int = 5) -> float:
    """Least-squares slope of log P(k) against log k.

    Uses only degrees k >= 1 held by at least ``min_support`` nodes. A quick
    diagnostic, not a maximum-likelihood exponent fit.
    """
    ks = sorted(k for k, c in dd.counts.items() if k > 0 and c >= min_support)
    if len(ks) < 2:
        raise ValueError("need at least two supported degrees to fit a slope")
    x = np.log10(ks)
    y = np.log10([dd.counts[k] / dd.node_count for k in ks])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
