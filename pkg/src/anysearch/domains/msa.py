"""Multiple sequence alignment as shortest path in an n-dimensional lattice.

A lattice state is one index per sequence; a move advances any nonempty
subset of unfinished sequences by one residue, inserting gaps for the
rest.  Move costs follow the pairwise sum-of-pairs convention: a
substitution cost when both sequences of a pair advance, the gap cost
when exactly one does, and 0 when neither does (gap-gap columns are
free; terminal gaps cost the same as internal ones).

Residue costs come from a similarity matrix converted to non-negative
distances by the max-score linear transform ``cost = max_score - score``.
The bundled default uses the classic PAM-250 log-odds similarities with
the customary linear gap cost of 8.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..core import SearchSpace, StateId
from . import ParseError, ValidationError

AMINO_ACIDS = "ARNDCQEGHILKMFPSTWYV"

# Dayhoff PAM-250 log-odds similarities, rows and columns in AMINO_ACIDS order.
_PAM250_ROWS = """
 2 -2  0  0 -2  0  0  1 -1 -1 -2 -1 -1 -3  1  1  1 -6 -3  0
-2  6  0 -1 -4  1 -1 -3  2 -2 -3  3  0 -4  0  0 -1  2 -4 -2
 0  0  2  2 -4  1  1  0  2 -2 -3  1 -2 -3  0  1  0 -4 -2 -2
 0 -1  2  4 -5  2  3  1  1 -2 -4  0 -3 -6 -1  0  0 -7 -4 -2
-2 -4 -4 -5 12 -5 -5 -3 -3 -2 -6 -5 -5 -4 -3  0 -2 -8  0 -2
 0  1  1  2 -5  4  2 -1  3 -2 -2  1 -1 -5  0 -1 -1 -5 -4 -2
 0 -1  1  3 -5  2  4  0  1 -2 -3  0 -2 -5 -1  0  0 -7 -4 -2
 1 -3  0  1 -3 -1  0  5 -2 -3 -4 -2 -3 -5  0  1  0 -7 -5 -1
-1  2  2  1 -3  3  1 -2  6 -2 -2  0 -2 -2  0 -1 -1 -3  0 -2
-1 -2 -2 -2 -2 -2 -2 -3 -2  5  2 -2  2  1 -2 -1  0 -5 -1  4
-2 -3 -3 -4 -6 -2 -3 -4 -2  2  6 -3  4  2 -3 -3 -2 -2 -1  2
-1  3  1  0 -5  1  0 -2  0 -2 -3  5  0 -5 -1  0  0 -3 -4 -2
-1  0 -2 -3 -5 -1 -2 -3 -2  2  4  0  6  0 -2 -2 -1 -4 -2  2
-3 -4 -3 -6 -4 -5 -5 -5 -2  1  2 -5  0  9 -5 -3 -3  0  7 -1
 1  0  0 -1 -3  0 -1  0  0 -2 -3 -1 -2 -5  6  1  0 -6 -5 -1
 1  0  1  0  0 -1  0  1 -1 -1 -3  0 -2 -3  1  2  1 -2 -3 -1
 1 -1  0  0 -2 -1  0  0 -1  0 -2  0 -1 -3  0  1  3 -5 -3  0
-6  2 -4 -7 -8 -5 -7 -7 -3 -5 -2 -3 -4  0 -6 -2 -5 17  0 -6
-3 -4 -2 -4  0 -4 -4 -5  0 -1 -1 -4 -2  7 -5 -3 -3  0 10 -4
 0 -2 -2 -2 -2 -2 -2 -1 -2  4  2 -2  2 -1 -1 -1  0 -6 -4  4
"""

MsaState = tuple[int, ...]


@dataclass
class ScoringScheme:
    """Symmetric non-negative residue substitution costs plus a linear gap cost."""

    alphabet: str
    gap_cost: int
    costs: tuple[tuple[int, ...], ...]
    max_score: int | None = None
    _index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        n = len(self.alphabet)
        if len(set(self.alphabet)) != n:
            raise ValidationError("alphabet has repeated symbols")
        if self.gap_cost < 0:
            raise ValidationError("gap cost must be non-negative")
        if len(self.costs) != n or any(len(row) != n for row in self.costs):
            raise ValidationError("cost matrix must be square over the alphabet")
        for i in range(n):
            for j in range(n):
                if self.costs[i][j] < 0:
                    raise ValidationError(
                        f"cost of ({self.alphabet[i]}, {self.alphabet[j]}) is negative"
                    )
                if self.costs[i][j] != self.costs[j][i]:
                    raise ValidationError("cost matrix must be symmetric")
        self._index = {ch: i for i, ch in enumerate(self.alphabet)}

    @classmethod
    def from_similarity(
        cls,
        alphabet: str,
        similarity: list[list[int]],
        gap_cost: int,
        max_score: int | None = None,
    ) -> "ScoringScheme":
        """Convert similarity scores into distances via cost = max_score - score."""
        if max_score is None:
            max_score = max(max(row) for row in similarity)
        costs = tuple(tuple(max_score - s for s in row) for row in similarity)
        return cls(alphabet, gap_cost, costs, max_score)

    def encode(self, residue: str) -> int:
        try:
            return self._index[residue]
        except KeyError:
            raise ValidationError(f"unknown residue {residue!r}") from None

    def cost(self, a: str, b: str) -> int:
        return self.costs[self.encode(a)][self.encode(b)]


def _parse_pam250() -> list[list[int]]:
    rows = [[int(tok) for tok in line.split()] for line in _PAM250_ROWS.strip().splitlines()]
    return rows


PAM250_SCHEME = ScoringScheme.from_similarity(AMINO_ACIDS, _parse_pam250(), gap_cost=8)


def load_scheme(text: str) -> ScoringScheme:
    """Parse a scheme file.

    Layout: ``alphabet <symbols>``, ``gap_cost <int>``, ``transform
    max_score <int>``, a ``similarity`` marker, then one similarity row
    per alphabet symbol.  ``#`` lines are comments.
    """
    lines = [
        (i, line.strip())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    fields: dict[str, str] = {}
    rows: list[list[int]] = []
    in_matrix = False
    matrix_start = None
    for lineno, line in lines:
        if in_matrix:
            try:
                rows.append([int(tok) for tok in line.split()])
            except ValueError:
                raise ParseError(f"line {lineno}: similarity rows must be integers") from None
            continue
        if line == "similarity":
            in_matrix = True
            matrix_start = lineno
            continue
        key, _, value = line.partition(" ")
        if not value:
            raise ParseError(f"line {lineno}: expected 'key value'")
        fields[key] = value.strip()
    for required in ("alphabet", "gap_cost", "transform"):
        if required not in fields:
            raise ParseError(f"line 1: missing '{required}' declaration")
    if matrix_start is None:
        raise ParseError("line 1: missing 'similarity' section")
    alphabet = fields["alphabet"]
    try:
        gap_cost = int(fields["gap_cost"])
    except ValueError:
        raise ParseError("gap_cost must be an integer") from None
    transform = fields["transform"].split()
    if len(transform) != 2 or transform[0] != "max_score":
        raise ParseError("transform must read 'max_score <int>'")
    max_score = int(transform[1])
    if len(rows) != len(alphabet):
        raise ParseError(
            f"line {matrix_start}: expected {len(alphabet)} similarity rows, got {len(rows)}"
        )
    return ScoringScheme.from_similarity(alphabet, rows, gap_cost, max_score)


def format_scheme(scheme: ScoringScheme) -> str:
    if scheme.max_score is None:
        raise ValueError("only similarity-derived schemes can be serialized")
    lines = [
        "# pairwise residue scoring scheme; cost = max_score - similarity",
        f"alphabet {scheme.alphabet}",
        f"gap_cost {scheme.gap_cost}",
        f"transform max_score {scheme.max_score}",
        "similarity",
    ]
    for row in scheme.costs:
        lines.append(" ".join(str(scheme.max_score - c) for c in row))
    return "\n".join(lines) + "\n"


def load_fasta(text: str) -> list[tuple[str, str]]:
    """Parse FASTA into (name, residues) pairs, validating the alphabet."""
    entries: list[tuple[str, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(";"):
            continue
        if line.startswith(">"):
            name = line[1:].strip() or f"seq{len(entries) + 1}"
            entries.append((name, []))
            continue
        if not entries:
            raise ParseError(f"line {lineno}: sequence data before any '>' header")
        for ch in line:
            if ch not in AMINO_ACIDS:
                raise ParseError(f"line {lineno}: invalid residue {ch!r}")
        entries[-1][1].append(line)
    if not entries:
        raise ParseError("line 1: no sequences found")
    return [(name, "".join(parts)) for name, parts in entries]


def format_fasta(entries: list[tuple[str, str]]) -> str:
    lines = []
    for name, seq in entries:
        lines.append(f">{name}")
        lines.append(seq)
    return "\n".join(lines) + "\n"


def gen_sequences(
    count: int, length_min: int, length_max: int, seed: int = 0
) -> list[tuple[str, str]]:
    """Deterministic random residue sequences."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        length = rng.randint(length_min, length_max)
        seq = "".join(rng.choice(AMINO_ACIDS) for _ in range(length))
        out.append((f"rand{i + 1}", seq))
    return out


def msa_successors(
    state: MsaState, sequences: list[str], scheme: ScoringScheme
) -> list[tuple[MsaState, int]]:
    """One successor per nonempty subset of unfinished sequences.

    Subsets are enumerated in ascending bitmask order so the successor
    list is deterministic.
    """
    n = len(sequences)
    codes = [
        scheme.encode(sequences[i][state[i]]) if state[i] < len(sequences[i]) else None
        for i in range(n)
    ]
    costs = scheme.costs
    gap = scheme.gap_cost
    out = []
    for mask in range(1, 1 << n):
        advance = [(mask >> i) & 1 for i in range(n)]
        if any(advance[i] and codes[i] is None for i in range(n)):
            continue
        move_cost = 0
        for i in range(n):
            for j in range(i + 1, n):
                if advance[i] and advance[j]:
                    move_cost += costs[codes[i]][codes[j]]
                elif advance[i] or advance[j]:
                    move_cost += gap
        nxt = tuple(state[i] + advance[i] for i in range(n))
        out.append((nxt, move_cost))
    return out


def _suffix_table(a: str, b: str, scheme: ScoringScheme) -> list[list[int]]:
    """Exact optimal alignment cost of every pair of suffixes, by backward DP."""
    m, n = len(a), len(b)
    ca = [scheme.encode(ch) for ch in a]
    cb = [scheme.encode(ch) for ch in b]
    costs = scheme.costs
    gap = scheme.gap_cost
    table = [[0] * (n + 1) for _ in range(m + 1)]
    for y in range(n - 1, -1, -1):
        table[m][y] = table[m][y + 1] + gap
    for x in range(m - 1, -1, -1):
        row = table[x]
        below = table[x + 1]
        row[n] = below[n] + gap
        arow = costs[ca[x]]
        for y in range(n - 1, -1, -1):
            best = below[y + 1] + arow[cb[y]]
            alt = below[y] + gap
            if alt < best:
                best = alt
            alt = row[y + 1] + gap
            if alt < best:
                best = alt
            row[y] = best
    return table


def build_suffix_tables(
    sequences: list[str], scheme: ScoringScheme
) -> dict[tuple[int, int], list[list[int]]]:
    tables = {}
    for i in range(len(sequences)):
        for j in range(i + 1, len(sequences)):
            tables[(i, j)] = _suffix_table(sequences[i], sequences[j], scheme)
    return tables


def pairwise_heuristic(
    state: MsaState, tables: dict[tuple[int, int], list[list[int]]]
) -> int:
    """Sum of exact pairwise suffix alignment costs; admissible for sum-of-pairs."""
    total = 0
    for (i, j), table in tables.items():
        total += table[state[i]][state[j]]
    return total


class MsaProblem(SearchSpace):
    """Alignment lattice for 2 or more sequences under one scoring scheme."""

    def __init__(self, sequences: list[str], scheme: ScoringScheme | None = None) -> None:
        if len(sequences) < 2:
            raise ValidationError("alignment needs at least two sequences")
        self.scheme = scheme if scheme is not None else PAM250_SCHEME
        self.sequences = [seq for seq in sequences]
        for seq in self.sequences:
            for ch in seq:
                self.scheme.encode(ch)
        self._goal = tuple(len(seq) for seq in self.sequences)
        self._tables = build_suffix_tables(self.sequences, self.scheme)

    def start(self) -> StateId:
        return (0,) * len(self.sequences)

    def is_goal(self, state: StateId) -> bool:
        return state == self._goal

    def successors(self, state: StateId) -> list[tuple[StateId, int]]:
        return msa_successors(state, self.sequences, self.scheme)

    def heuristic(self, state: StateId) -> int:
        return pairwise_heuristic(state, self._tables)


def alignment_from_path(path: list[MsaState], sequences: list[str]) -> list[tuple[str | None, ...]]:
    """Reconstruct alignment columns (residue or None per sequence) from a lattice path."""
    columns = []
    for prev, nxt in zip(path, path[1:]):
        column = tuple(
            sequences[i][prev[i]] if nxt[i] > prev[i] else None
            for i in range(len(sequences))
        )
        columns.append(column)
    return columns


def alignment_cost(columns: list[tuple[str | None, ...]], scheme: ScoringScheme) -> int:
    """Sum-of-pairs cost of explicit alignment columns; gap-gap pairs are free."""
    total = 0
    for column in columns:
        n = len(column)
        for i in range(n):
            for j in range(i + 1, n):
                a, b = column[i], column[j]
                if a is not None and b is not None:
                    total += scheme.cost(a, b)
                elif a is not None or b is not None:
                    total += scheme.gap_cost
    return total
