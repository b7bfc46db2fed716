import random

import pytest
from hypothesis import given, settings, strategies as st

from astopo.generators import GrowthConfig, generate_ba
from astopo.graph import Graph, complete_graph
from astopo.metrics import (
    EmptyGraphError,
    club_size,
    default_r_grid,
    degree_distribution,
    link_share_with_top,
    link_share_within_top,
    node_node_link_distribution,
    power_law_slope,
    rank_nodes,
    rich_club_connectivity,
    rich_club_curve,
    summarize,
)

from oracles import brute_link_bins, brute_link_shares, brute_phi, random_graph


def from_edges(n, edges):
    g = Graph(n)
    for i, j in edges:
        g.add_edge(i, j)
    return g


def star(leaves):
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


CYCLE = from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
CYCLE_SPLIT = from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)])


@st.composite
def graphs(draw, max_n=30):
    return random_graph(random.Random(draw(st.integers(0, 2**32))), max_n)


# ---- ranking ----


def test_rank_star_hub_first():
    assert rank_nodes(star(5)).order[0] == 0


def test_rank_ties_by_id():
    assert rank_nodes(CYCLE).order == (0, 1, 2, 3)


def test_rank_mixed_degrees():
    # degrees (3, 1, 2, 2)
    g = from_edges(4, [(0, 1), (0, 2), (0, 3), (2, 3)])
    assert g.degrees() == [3, 1, 2, 2]
    ranked = rank_nodes(g)
    assert ranked.order == (0, 2, 3, 1)
    assert ranked.normalized_rank(0) == 0.25 and ranked.normalized_rank(3) == 1.0


def test_rank_empty():
    with pytest.raises(EmptyGraphError):
        rank_nodes(Graph(0))


@given(graphs(), st.randoms(use_true_random=False))
def test_rank_invariant_under_relabeling(g, rnd):
    perm = list(range(g.node_count))
    rnd.shuffle(perm)
    h = from_edges(g.node_count, [(perm[i], perm[j]) for i, j in g.edges()])
    a, b = rank_nodes(g), rank_nodes(h)
    assert a.degrees == b.degrees
    assert sorted(a.order) == list(range(g.node_count))
    assert all(x >= y for x, y in zip(a.degrees, a.degrees[1:]))


# ---- degree distribution ----


def test_degree_distribution_triangle():
    assert degree_distribution(complete_graph(3)).entries == {2: 1.0}


def test_degree_distribution_star():
    assert degree_distribution(star(5)).entries == {1: 5 / 6, 5: 1 / 6}


def test_degree_distribution_ba_has_no_low_degrees():
    dd = degree_distribution(generate_ba(GrowthConfig(target_nodes=300, rng_seed=3)))
    assert dd.p(1) == 0 and dd.p(2) == 0


def test_degree_distribution_empty():
    with pytest.raises(EmptyGraphError):
        degree_distribution(Graph(0))


@given(graphs())
def test_degree_distribution_moments(g):
    dd = degree_distribution(g)
    assert sum(dd.entries.values()) == pytest.approx(1.0, abs=1e-9)
    assert all(0 < p <= 1 for p in dd.entries.values())
    assert dd.mean_degree() == pytest.approx(2 * g.link_count / g.node_count, abs=1e-9)


# ---- rich-club connectivity ----


def test_phi_complete_graph():
    g = complete_graph(10)
    assert rich_club_connectivity(g, rank_nodes(g), 1.0) == 1.0


def test_phi_cycle_tie_break():
    assert rich_club_connectivity(CYCLE, rank_nodes(CYCLE), 0.5) == 1.0
    assert rich_club_connectivity(CYCLE_SPLIT, rank_nodes(CYCLE_SPLIT), 0.5) == 0.0


@pytest.mark.parametrize("r", [0.0, -0.1, 1.01])
def test_phi_rejects_bad_rank(r):
    with pytest.raises(ValueError):
        rich_club_connectivity(CYCLE, rank_nodes(CYCLE), r)


def test_club_size_absorbs_float_error():
    assert 0.29 * 100 < 29
    assert club_size(0.29, 100) == 29
    assert club_size(0.01, 11122) == 111
    assert club_size(1.0, 7) == 7


@given(graphs())
def test_phi_whole_graph(g):
    n, l = g.node_count, g.link_count
    assert rich_club_connectivity(g, rank_nodes(g), 1.0) == pytest.approx(2 * l / (n * (n - 1)), abs=1e-12)


@given(graphs(), st.lists(st.floats(0.001, 1.0), min_size=1, max_size=8))
def test_phi_matches_oracle(g, rs):
    ranked = rank_nodes(g)
    curve = rich_club_curve(g, ranked, rs)
    for r, sample in zip(rs, curve):
        phi, c, links = brute_phi(g, r)
        assert (sample.club_size, sample.club_links) == (c, links)
        assert sample.phi == pytest.approx(phi, abs=1e-12)
        assert rich_club_connectivity(g, ranked, r) == pytest.approx(phi, abs=1e-12)


def test_curve_on_complete_graph():
    g = complete_graph(10)
    curve = rich_club_curve(g, rank_nodes(g), [0.2, 0.5, 1.0])
    assert [s.phi for s in curve] == [1.0, 1.0, 1.0]


def test_default_grid():
    grid = default_r_grid(11122)
    assert len(grid) == 50
    assert grid[0] == pytest.approx(1 / 11122) and grid[-1] == 1.0
    assert all(a < b for a, b in zip(grid, grid[1:]))


def test_curve_preserves_input_order():
    g = star(9)
    rs = [1.0, 0.1, 0.5]
    assert [s.r for s in rich_club_curve(g, rank_nodes(g), rs)] == rs


def test_curve_rejects_empty_grid():
    with pytest.raises(ValueError):
        rich_club_curve(CYCLE, rank_nodes(CYCLE), [])


# ---- node-node link distribution ----


def test_link_bins_all_in_top_bin():
    # 40 nodes -> two per 5% bin; the only link joins the two top-ranked nodes
    g = from_edges(40, [(0, 1)])
    m = node_node_link_distribution(g, rank_nodes(g), 0.05)
    assert m.bins == 20
    assert m.fraction(0, 0) == 1.0
    assert sum(v for k, v in m.cells.items() if k != (0, 0)) == 0


def test_link_bins_one_node_per_bin():
    g = from_edges(20, [(0, 1)])
    m = node_node_link_distribution(g, rank_nodes(g), 0.05)
    assert m.fraction(0, 1) == 1.0


def test_link_bins_star():
    g = star(20)
    m = node_node_link_distribution(g, rank_nodes(g), 0.05)
    assert sum(m.fraction(0, j) for j in range(20)) == pytest.approx(1.0)


def test_link_bins_errors():
    with pytest.raises(EmptyGraphError):
        node_node_link_distribution(Graph(3), rank_nodes(Graph(3)))
    with pytest.raises(ValueError, match="integer"):
        node_node_link_distribution(CYCLE, rank_nodes(CYCLE), 0.3)
    with pytest.raises(ValueError):
        node_node_link_distribution(CYCLE, rank_nodes(CYCLE), 0.0)


@given(graphs(), st.sampled_from([0.05, 0.1, 0.25, 0.5, 1.0]))
def test_link_bins_match_oracle(g, w):
    m = node_node_link_distribution(g, rank_nodes(g), w)
    expected = brute_link_bins(g, w)
    assert m.cells.keys() == expected.keys()
    for cell, frac in expected.items():
        assert m.cells[cell] == pytest.approx(frac, abs=1e-12)
    assert sum(m.cells.values()) == pytest.approx(1.0, abs=1e-9)


@given(st.integers(1, 3), st.floats(0.05, 0.5), st.integers(0, 2**32), st.integers(1, 20))
def test_link_share_consistent_with_bins(k, p, seed, top_bins):
    # N a multiple of 20 puts every 5% bin edge on a whole node
    rng = random.Random(seed)
    n = 20 * k
    g = from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p] + [(0, 1)])
    ranked = rank_nodes(g)
    m = node_node_link_distribution(g, ranked, 0.05)
    r = top_bins / 20
    from_cells = sum(f for (i, _), f in m.cells.items() if i < top_bins)
    assert link_share_with_top(g, ranked, r) == pytest.approx(from_cells, abs=1e-12)


# ---- link shares ----


def test_link_share_star():
    g = star(9)
    ranked = rank_nodes(g)
    assert link_share_with_top(g, ranked, 0.1) == 1.0
    assert link_share_with_top(g, ranked, 1.0) == 1.0


def test_link_share_requires_links():
    g = Graph(4)
    with pytest.raises(EmptyGraphError):
        link_share_with_top(g, rank_nodes(g), 0.5)


@given(graphs(), st.floats(0.01, 1.0))
def test_link_shares_match_oracle(g, r):
    ranked = rank_nodes(g)
    touching, inside = brute_link_shares(g, r)
    a, b = link_share_with_top(g, ranked, r), link_share_within_top(g, ranked, r)
    assert a == pytest.approx(touching, abs=1e-12)
    assert b == pytest.approx(inside, abs=1e-12)
    assert b <= a


# ---- summary ----


def test_summary_k4():
    s = summarize(complete_graph(4))
    assert (s.n, s.l, s.k_average, s.k_max) == (4, 6, 3.0, 3)
    assert s.phi_1pct == 0.0
    assert s.p3 == 1.0 and s.p1 == s.p2 == 0.0


def test_summary_degenerate():
    with pytest.raises(EmptyGraphError):
        summarize(Graph(1))
    with pytest.raises(EmptyGraphError):
        summarize(Graph(5))


@settings(max_examples=50)
@given(graphs())
def test_summary_invariants(g):
    s = summarize(g)
    assert s.k_average == pytest.approx(2 * s.l / s.n, abs=1e-9)
    assert 0 <= s.link_share_within_top5 <= s.link_share_top5 <= 1


# ---- slope diagnostic ----


def test_power_law_slope_exact():
    from astopo.metrics import DegreeDistribution

    # counts proportional to k^-2 on k = 1, 2, 4, 8
    dd = DegreeDistribution(1000, {1: 640, 2: 160, 4: 40, 8: 10, 16: 2})
    assert power_law_slope(dd) == pytest.approx(-2.0)


def test_power_law_slope_needs_support():
    from astopo.metrics import DegreeDistribution

    with pytest.raises(ValueError):
        power_law_slope(DegreeDistribution(10, {3: 10}))
