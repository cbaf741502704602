"""Anytime heuristic search: best-first and linear-space algorithm families,
bundled benchmark domains, independent oracles, and a CSV benchmark CLI."""

from .bestfirst import (
    BoundPair,
    FoundAt,
    Incumbent,
    IncumbentTrace,
    SearchLimits,
    SearchResult,
    SearchStats,
    Status,
    anytime_wastar,
    ara_star,
    astar,
    enhanced_astar,
    error_bound,
    weighted_astar,
)
from .core import (
    INF,
    Cost,
    NodeRecord,
    NodeStatus,
    OpenList,
    SearchSpace,
    StateId,
    Weight,
    open_push,
    priority_key,
    reopen,
)
from .rbfs import anytime_rbfs_weighted, anytime_wrbfs, rbfs_weighted, wrbfs

__version__ = "0.1.0"

__all__ = [
    "INF",
    "Cost",
    "StateId",
    "Weight",
    "SearchSpace",
    "NodeRecord",
    "NodeStatus",
    "OpenList",
    "priority_key",
    "open_push",
    "reopen",
    "Status",
    "SearchLimits",
    "SearchStats",
    "SearchResult",
    "BoundPair",
    "Incumbent",
    "IncumbentTrace",
    "FoundAt",
    "error_bound",
    "astar",
    "weighted_astar",
    "enhanced_astar",
    "anytime_wastar",
    "ara_star",
    "rbfs_weighted",
    "wrbfs",
    "anytime_wrbfs",
    "anytime_rbfs_weighted",
    "__version__",
]
