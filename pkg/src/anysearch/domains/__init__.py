"""Bundled search domains: explicit digraphs, sliding tiles, sequence alignment."""

from __future__ import annotations


class ParseError(ValueError):
    """Malformed instance text; the message names the offending line."""


class ValidationError(ValueError):
    """Well-formed input that violates a domain invariant."""


from .graphs import ExplicitGraph, gen_graph, load_graph  # noqa: E402
from .msa import (  # noqa: E402
    PAM250_SCHEME,
    MsaProblem,
    ScoringScheme,
    alignment_cost,
    gen_sequences,
    load_fasta,
    load_scheme,
    msa_successors,
    pairwise_heuristic,
)
from .tiles import (  # noqa: E402
    TilePuzzle,
    gen_tiles,
    is_solvable,
    load_tiles,
    manhattan_h,
    tile_successors,
)

__all__ = [
    "ParseError",
    "ValidationError",
    "ExplicitGraph",
    "load_graph",
    "gen_graph",
    "TilePuzzle",
    "load_tiles",
    "gen_tiles",
    "is_solvable",
    "manhattan_h",
    "tile_successors",
    "ScoringScheme",
    "PAM250_SCHEME",
    "MsaProblem",
    "msa_successors",
    "pairwise_heuristic",
    "alignment_cost",
    "load_fasta",
    "load_scheme",
    "gen_sequences",
]
