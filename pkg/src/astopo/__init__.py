"""Power-law AS-level topology generators and rich-club metrics."""

__version__ = "0.1.0"

from .generators import GrowthConfig, generate_ba, generate_ig, grow_ig, preferential_sample
from .graph import Graph, new_graph
from .metrics import (
    degree_distribution,
    link_share_with_top,
    link_share_within_top,
    node_node_link_distribution,
    rank_nodes,
    rich_club_connectivity,
    rich_club_curve,
    summarize,
)
from .ingest import parse_edge_list, write_edge_list, write_metrics_report

__all__ = [
    "Graph",
    "GrowthConfig",
    "degree_distribution",
    "generate_ba",
    "generate_ig",
    "grow_ig",
    "link_share_with_top",
    "link_share_within_top",
    "new_graph",
    "node_node_link_distribution",
    "parse_edge_list",
    "preferential_sample",
    "rank_nodes",
    "rich_club_connectivity",
    "rich_club_curve",
    "summarize",
    "write_edge_list",
    "write_metrics_report",
]
