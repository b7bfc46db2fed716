"""Barabási-Albert and Interactive Growth topology generators.

Both processes pick attachment targets with linear preference: an existing
node ``i`` is chosen with probability ``k_i / sum_j k_j``. Multi-target draws
are sequential without replacement, renormalising over the nodes still
eligible after each draw.

Randomness comes from :class:`random.Random` (Mersenne Twister MT19937)
seeded with the integer ``rng_seed``. Every draw is derived from
``Random.random()`` (53-bit doubles), whose output sequence CPython keeps
stable across versions, so a seed fully determines the generated edge set.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from collections import Counter
from dataclasses import asdict, dataclass, field, fields
from itertools import accumulate
from pathlib import Path
from typing import Collection

from .graph import Graph, complete_graph

IG_SEED_SIZE = 4

# Rejection attempts per draw before falling back to an exact scan.
_MAX_REJECTIONS = 64


class InfeasibleSampleError(ValueError):
    """Fewer eligible (non-excluded, degree >= 1) nodes than requested."""

    def __init__(self, requested: int, available: int):
        self.requested = requested
        self.available = available
        super().__init__(
            f"requested {requested} preferential draws but only {available} eligible "
            f"node(s) exist (short by {requested - available})"
        )


@dataclass
class GrowthConfig:
    target_nodes: int = 11122
    ba_m: int = 3
    ig_p_single_host: float = 0.4
    rng_seed: int = 0

    # accepted spellings in key=value config files
    _ALIASES = {"nodes": "target_nodes", "m": "ba_m", "ig_p_single": "ig_p_single_host", "seed": "rng_seed"}

    def __post_init__(self):
        if self.ba_m < 1:
            raise ValueError(f"ba_m must be >= 1, got {self.ba_m}")
        if not 0.0 <= self.ig_p_single_host <= 1.0:
            raise ValueError(f"ig_p_single_host must lie in [0, 1], got {self.ig_p_single_host}")
        if self.target_nodes < 0:
            raise ValueError(f"target_nodes must be non-negative, got {self.target_nodes}")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError(f"rng_seed must be a 64-bit unsigned integer, got {self.rng_seed}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_text(cls, text: str, **overrides) -> "GrowthConfig":
        """Build a config from ``key=value`` lines ('#' comments allowed).

        Keyword ``overrides`` that are not None win over file values.
        """
        types = {f.name: f.type for f in fields(cls)}
        casts = {"target_nodes": int, "ba_m": int, "ig_p_single_host": float, "rng_seed": int}
        values: dict = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line {lineno}: expected key=value, got {raw!r}")
            key, _, val = (s.strip() for s in line.partition("="))
            key = key.replace("-", "_")
            key = cls._ALIASES.get(key, key)
            if key not in types:
                raise ValueError(f"config line {lineno}: unknown key {key!r}")
            try:
                values[key] = casts[key](val)
            except ValueError:
                raise ValueError(f"config line {lineno}: bad value {val!r} for {key}") from None
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @classmethod
    def from_file(cls, path: str | Path, **overrides) -> "GrowthConfig":
        return cls.from_text(Path(path).read_text(encoding="utf-8"), **overrides)


@dataclass
class GrowthDiagnostics:
    steps: int = 0
    single_host_steps: int = 0
    two_host_steps: int = 0
    # peer links skipped because no eligible peer existed
    saturation_events: int = 0
    # degree of each new node right after its insertion step
    new_node_degrees: Counter = field(default_factory=Counter)


def preferential_sample(g: Graph, count: int, excluded: Collection[int], rng: random.Random) -> list[int]:
    """Draw ``count`` distinct nodes of ``g`` with probability proportional to degree.

    Draws are sequential without replacement; after each draw the chosen node
    joins the excluded set and the remaining weights are renormalised. Nodes
    of degree 0 carry no weight and are never returned.

    Raises
    ------
    InfeasibleSampleError
        If fewer than ``count`` non-excluded nodes have degree >= 1.
    """
    degs = g.degrees()
    pool = [i for i, k in enumerate(degs) if k > 0 and i not in excluded]
    if len(pool) < count:
        raise InfeasibleSampleError(count, len(pool))
    chosen: list[int] = []
    for _ in range(count):
        cum = list(accumulate(degs[i] for i in pool))
        idx = bisect_right(cum, rng.random() * cum[-1])
        # guards the u*total == total rounding edge
        idx = min(idx, len(pool) - 1)
        chosen.append(pool.pop(idx))
    return chosen


class PreferenceSampler:
    """Incremental linear-preference sampler over a growing graph.

    Keeps one entry per link endpoint, so a uniform pick from that list
    selects node ``i`` with probability ``k_i / sum_j k_j``. Excluded nodes
    are handled by rejection; when rejections pile up (heavily excluded
    weight) the draw falls back to :func:`preferential_sample`, which has the
    same conditional distribution.
    """

    def __init__(self, g: Graph):
        self.graph = g
        self._stubs: list[int] = []
        for i, j in g.edges():
            self._stubs.append(i)
            self._stubs.append(j)

    def add_link(self, i: int, j: int) -> bool:
        if self.graph.add_edge(i, j):
            self._stubs.append(i)
            self._stubs.append(j)
            return True
        return False

    def sample(self, count: int, excluded: Collection[int], rng: random.Random) -> list[int]:
        stubs = self._stubs
        n = len(stubs)
        chosen: list[int] = []
        for _ in range(count):
            for _ in range(_MAX_REJECTIONS):
                node = stubs[int(rng.random() * n)]
                if node not in excluded and node not in chosen:
                    chosen.append(node)
                    break
            else:
                rest = count - len(chosen)
                chosen.extend(preferential_sample(self.graph, rest, _Union(excluded, chosen), rng))
                break
        return chosen


class _Union:
    """Membership view over several containers without copying them."""

    def __init__(self, *parts: Collection[int]):
        self.parts = parts

    def __contains__(self, x) -> bool:
        return any(x in p for p in self.parts)


def generate_ba(cfg: GrowthConfig) -> Graph:
    """Grow a Barabási-Albert graph.

    Starts from the complete graph on ``m + 1`` nodes; every later node links
    to ``m`` distinct existing nodes picked by linear preference. The result
    has ``m(m+1)/2 + m(N - m - 1)`` links and minimum degree ``m``.
    """
    m, n = cfg.ba_m, cfg.target_nodes
    if n < m + 1:
        raise ValueError(f"BA growth needs target_nodes >= m + 1 = {m + 1}, got {n}")
    rng = random.Random(cfg.rng_seed)
    g = complete_graph(m + 1)
    sampler = PreferenceSampler(g)
    empty: frozenset[int] = frozenset()
    for _ in range(m + 1, n):
        targets = sampler.sample(m, empty, rng)
        v = g.add_node()
        for t in targets:
            sampler.add_link(v, t)
    return g


def grow_ig(cfg: GrowthConfig) -> tuple[Graph, GrowthDiagnostics]:
    """Grow an Interactive Growth graph and report what happened along the way.

    Each step adds one node ``v``. With probability ``ig_p_single_host`` it
    attaches to one host that then links to two peers; otherwise it attaches
    to two hosts, one of which (picked uniformly) links to one peer. Hosts and
    peers are drawn by linear preference from the degrees at the start of the
    step. A peer is never the host itself or one of its current neighbours;
    when no such node exists the peer link is skipped and counted as a
    saturation event.
    """
    n = cfg.target_nodes
    if n < IG_SEED_SIZE:
        raise ValueError(f"IG growth needs target_nodes >= {IG_SEED_SIZE}, got {n}")
    rng = random.Random(cfg.rng_seed)
    g = complete_graph(IG_SEED_SIZE)
    adj = g._adj
    sampler = PreferenceSampler(g)
    diag = GrowthDiagnostics()
    empty: frozenset[int] = frozenset()

    def pick_peers(host: int, want: int) -> list[int]:
        peers: list[int] = []
        blocked = _Union((host,), adj[host], peers)
        for _ in range(want):
            try:
                peers.extend(sampler.sample(1, blocked, rng))
            except InfeasibleSampleError:
                diag.saturation_events += 1
        return peers

    for _ in range(IG_SEED_SIZE, n):
        if rng.random() < cfg.ig_p_single_host:
            hosts = sampler.sample(1, empty, rng)
            linking_host = hosts[0]
            peers = pick_peers(linking_host, 2)
            diag.single_host_steps += 1
        else:
            hosts = sampler.sample(2, empty, rng)
            linking_host = hosts[0] if rng.random() < 0.5 else hosts[1]
            peers = pick_peers(linking_host, 1)
            diag.two_host_steps += 1
        v = g.add_node()
        for h in hosts:
            sampler.add_link(v, h)
        for p in peers:
            sampler.add_link(linking_host, p)
        diag.new_node_degrees[len(adj[v])] += 1
        diag.steps += 1
    return g, diag


def generate_ig(cfg: GrowthConfig) -> Graph:
    """Grow an Interactive Growth graph; see :func:`grow_ig`."""
    return grow_ig(cfg)[0]
