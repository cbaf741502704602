"""Benchmark command line.

Subcommands:

* ``run``      one algorithm on one instance, streaming a trace CSV;
* ``profile``  aggregate solution-quality profiles over many runs;
* ``gen``      deterministic instance generation from a seed;
* ``lint``     validate trace CSVs against the bound invariants.

Exit codes: 0 converged, 2 interrupted, 3 no solution, 4 usage or parse
error.  Trace CSVs are byte-identical across reruns of the same
configuration when the clock column is disabled (``--clock none``).
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .bestfirst import (
    BoundPair,
    Incumbent,
    SearchLimits,
    SearchResult,
    SearchStats,
    Status,
    anytime_wastar,
    ara_star,
    astar,
    enhanced_astar,
    weighted_astar,
)
from .core import INF, Cost, Weight
from .domains import (
    ParseError,
    ValidationError,
    gen_graph,
    gen_sequences,
    gen_tiles,
    load_fasta,
    load_graph,
    load_scheme,
    load_tiles,
    MsaProblem,
    PAM250_SCHEME,
)
from .domains.graphs import format_graph
from .domains.msa import format_fasta
from .domains.tiles import format_tiles
from .oracle import NoSolutionError, OracleLimitError, exact_alignment, uniform_cost
from .rbfs import anytime_rbfs_weighted, anytime_wrbfs, rbfs_weighted, wrbfs

EXIT_CONVERGED = 0
EXIT_INTERRUPTED = 2
EXIT_NO_SOLUTION = 3
EXIT_USAGE = 4

TRACE_SCHEMA = "anysearch-trace v1"
PROFILE_SCHEMA = "anysearch-profile v1"
COLUMNS = (
    "wall_time_s",
    "expansions",
    "stored",
    "incumbent_cost",
    "lower_bound",
    "upper_bound",
    "bound_difference",
    "approx_ratio",
    "quality",
)

ALGORITHMS = (
    "astar",
    "wastar",
    "awastar",
    "ea_star",
    "ara_star",
    "rbfs",
    "wrbfs",
    "anytime_wrbfs",
    "anytime_rbfs_weighted",
)
ANYTIME = {"awastar", "ara_star", "anytime_wrbfs", "anytime_rbfs_weighted"}
RBFS_FAMILY = {"rbfs", "wrbfs", "anytime_wrbfs", "anytime_rbfs_weighted"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    algorithm: str
    weight: Weight
    weight_step: Fraction | None
    domain: str
    instance: str
    scheme: str | None
    fstar: str | None
    limits: SearchLimits
    seed: int
    out: str | None
    clock: str

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {self.algorithm!r}")
        if self.domain not in ("tiles", "msa", "graph"):
            raise UsageError(f"unknown domain {self.domain!r}")
        if self.weight_step is not None and self.algorithm != "ara_star":
            raise UsageError("--weight-step applies to ara_star only")
        if self.weight_step is not None and self.weight_step <= 0:
            raise UsageError("--weight-step must be positive")
        if self.domain == "msa" and self.algorithm in RBFS_FAMILY:
            raise UsageError("the linear-space searches are not run on msa instances")


def _load_space(domain: str, instance: str, scheme_path: str | None):
    text = Path(instance).read_text()
    if domain == "tiles":
        return load_tiles(text)
    if domain == "graph":
        return load_graph(text)
    scheme = PAM250_SCHEME if scheme_path is None else load_scheme(Path(scheme_path).read_text())
    sequences = [seq for _, seq in load_fasta(text)]
    return MsaProblem(sequences, scheme)


def _oracle_cost(domain: str, space) -> int:
    if domain == "msa":
        return exact_alignment(space.sequences, space.scheme).optimal_cost
    return uniform_cost(space).optimal_cost


def _resolve_fstar(config: RunConfig, space) -> int | None:
    if config.fstar is None:
        return None
    if config.fstar == "oracle":
        return _oracle_cost(config.domain, space)
    table = {}
    for raw in Path(config.fstar).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, _, value = line.rpartition(" ")
        table[name.strip()] = int(value)
    if config.instance not in table:
        print(f"warning: no f* entry for {config.instance}", file=sys.stderr)
        return None
    return table[config.instance]


def _fmt_cost(value: Cost) -> str:
    return "inf" if value == INF else str(value)


class TraceWriter:
    """Accumulates one CSV row per sink emission plus a summary line."""

    def __init__(self, config: RunConfig, fstar: int | None) -> None:
        self._config = config
        self._fstar = fstar
        self._t0 = time.perf_counter()
        self.rows: list[dict[str, str]] = []

    def _quality(self, incumbent_cost: Cost) -> str:
        if self._fstar is None or incumbent_cost == INF or self._fstar <= 0:
            return ""
        q = 1 - Fraction(int(incumbent_cost) - self._fstar, self._fstar)
        return f"{float(q):.6f}"

    def sink(self, incumbent: Incumbent | None, bounds: BoundPair, stats: SearchStats) -> None:
        wall = "" if self._config.clock == "none" else f"{time.perf_counter() - self._t0:.6f}"
        cost: Cost = incumbent.cost if incumbent is not None else INF
        row = {
            "wall_time_s": wall,
            "expansions": str(stats.expansions),
            "stored": str(stats.stored),
            "incumbent_cost": "" if cost == INF else str(cost),
            "lower_bound": _fmt_cost(bounds.lower),
            "upper_bound": _fmt_cost(bounds.upper),
            "bound_difference": _fmt_cost(bounds.difference),
            "approx_ratio": "" if bounds.reported_ratio is None else str(bounds.reported_ratio),
            "quality": self._quality(cost),
        }
        if self.rows:
            last = self.rows[-1]
            if all(row[c] == last[c] for c in COLUMNS if c != "wall_time_s"):
                return
        self.rows.append(row)

    def render(self, result: SearchResult) -> str:
        config = self._config
        lines = [f"# {TRACE_SCHEMA}"]
        lines.append(
            "# config"
            f" algorithm={config.algorithm}"
            f" weight={config.weight}"
            + (f" weight_step={config.weight_step}" if config.weight_step else "")
            + f" domain={config.domain}"
            f" instance={config.instance}"
            f" seed={config.seed}"
            f" clock={config.clock}"
        )
        lines.append(",".join(COLUMNS))
        for row in self.rows:
            lines.append(",".join(row[col] for col in COLUMNS))
        lines.append("# " + self.summary(result))
        return "\n".join(lines) + "\n"

    def summary(self, result: SearchResult) -> str:
        stats = result.stats
        wall = (
            "0.000000"
            if self._config.clock == "none"
            else f"{time.perf_counter() - self._t0:.6f}"
        )
        cost = result.incumbent.cost if result.incumbent is not None else ""
        return (
            f"summary status={result.status.value} cost={cost}"
            f" expansions={stats.expansions} distinct={stats.distinct_expanded}"
            f" reexpansions={stats.reexpansions} stored={stats.stored}"
            f" generated={stats.generated} recursive_calls={stats.recursive_calls}"
            f" wall_time_s={wall}"
        )


def _dispatch(config: RunConfig, space, sink) -> SearchResult:
    limits = config.limits
    w = config.weight
    if config.algorithm == "astar":
        return astar(space, limits)
    if config.algorithm == "wastar":
        return weighted_astar(space, w, limits)
    if config.algorithm == "awastar":
        return anytime_wastar(space, w, limits, sink)
    if config.algorithm == "ea_star":
        first = weighted_astar(space, w, limits)
        if first.incumbent is None:
            return first
        return enhanced_astar(space, first.incumbent.cost + 1, limits)
    if config.algorithm == "ara_star":
        step = config.weight_step if config.weight_step is not None else Fraction(1, 10)
        return ara_star(space, w, step, limits, sink)
    if config.algorithm == "rbfs":
        return rbfs_weighted(space, w, limits)
    if config.algorithm == "wrbfs":
        return wrbfs(space, w, limits)
    if config.algorithm == "anytime_wrbfs":
        return anytime_wrbfs(space, w, limits, sink)
    return anytime_rbfs_weighted(space, w, limits, sink)


def execute(config: RunConfig) -> tuple[SearchResult, TraceWriter]:
    """Run one configured search, collecting trace rows as it goes."""
    config.validate()
    space = _load_space(config.domain, config.instance, config.scheme)
    fstar = _resolve_fstar(config, space)
    writer = TraceWriter(config, fstar)
    sink = writer.sink if config.algorithm in ANYTIME else None
    result = _dispatch(config, space, sink)
    if config.algorithm not in ANYTIME:
        writer.sink(result.incumbent, result.bounds, result.stats)
    return result, writer


def run_config(config: RunConfig) -> tuple[SearchResult, str]:
    """Execute one configured search and render its trace CSV text."""
    result, writer = execute(config)
    return result, writer.render(result)


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    try:
        weight = Weight.parse(args.weight)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad --weight: {exc}") from None
    step = None
    if args.weight_step is not None:
        try:
            step = Fraction(args.weight_step)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --weight-step: {exc}") from None
    limits = SearchLimits(
        max_expansions=args.max_expansions,
        max_stored=args.max_stored,
        max_wall_time=args.max_seconds,
    )
    return RunConfig(
        algorithm=args.algorithm,
        weight=weight,
        weight_step=step,
        domain=args.domain,
        instance=args.instance,
        scheme=args.scheme,
        fstar=args.fstar,
        limits=limits,
        seed=args.seed,
        out=args.out,
        clock=args.clock,
    )


def cmd_run(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    result, text = run_config(config)
    if config.out:
        Path(config.out).write_text(text)
        summary = text.rstrip("\n").rsplit("\n", 1)[-1].removeprefix("# ")
        print(summary)
    else:
        sys.stdout.write(text)
    if result.status is Status.CONVERGED:
        return EXIT_CONVERGED
    if result.status is Status.INTERRUPTED:
        return EXIT_INTERRUPTED
    return EXIT_NO_SOLUTION


def cmd_gen(args: argparse.Namespace) -> int:
    if args.domain == "tiles":
        puzzle = gen_tiles(args.width, args.walk, args.seed)
        text = format_tiles(
            puzzle, comment=f"tiles width={args.width} walk={args.walk} seed={args.seed}"
        )
    elif args.domain == "graph":
        graph = gen_graph(args.vertices, args.edges, args.cost_min, args.cost_max, args.seed)
        text = format_graph(
            graph,
            comment=(
                f"graph vertices={args.vertices} edges={args.edges}"
                f" cost={args.cost_min}..{args.cost_max} seed={args.seed}"
            ),
        )
    else:
        entries = gen_sequences(args.sequences, args.length_min, args.length_max, args.seed)
        text = format_fasta(entries)
    if args.out:
        Path(args.out).write_text(text)
        print(args.out)
    else:
        sys.stdout.write(text)
    return 0


def _staircase(rows: list[dict[str, str]]) -> list[tuple[int, float]]:
    """(expansions, quality) points for emissions that carry a quality."""
    points = []
    for row in rows:
        if row["quality"]:
            points.append((int(row["expansions"]), float(row["quality"])))
    return points


def cmd_profile(args: argparse.Namespace) -> int:
    instances = args.instance
    combos: list[tuple[str, str]] = []
    for algorithm in args.algorithm:
        for weight in args.weight:
            combos.append((algorithm, weight))
    traces: dict[tuple[str, str], list[list[dict[str, str]]]] = {c: [] for c in combos}
    summaries: dict[tuple[str, str], list[SearchStats]] = {c: [] for c in combos}
    max_expansions = 1
    for instance in instances:
        for algorithm, weight in combos:
            run_args = argparse.Namespace(
                algorithm=algorithm,
                weight=weight,
                weight_step=args.weight_step if algorithm == "ara_star" else None,
                domain=args.domain,
                instance=instance,
                scheme=args.scheme,
                fstar=args.fstar,
                max_expansions=args.max_expansions,
                max_stored=args.max_stored,
                max_seconds=args.max_seconds,
                seed=args.seed,
                out=None,
                clock="none",
            )
            config = _config_from_args(run_args)
            if config.fstar is None:
                print(f"warning: missing f* for {instance}", file=sys.stderr)
            result, writer = execute(config)
            traces[(algorithm, weight)].append(writer.rows)
            summaries[(algorithm, weight)].append(result.stats)
            max_expansions = max(max_expansions, result.stats.expansions)

    buckets = [1]
    while buckets[-1] < max_expansions:
        buckets.append(buckets[-1] * 2)

    lines = [f"# {PROFILE_SCHEMA}"]
    lines.append(
        f"# config domain={args.domain} instances={len(instances)} axis=expansions"
    )
    header = ["expansions"] + [f"{a}@{w}" for a, w in combos]
    lines.append(",".join(header))
    for bucket in buckets:
        cells = [str(bucket)]
        for combo in combos:
            values = []
            for rows in traces[combo]:
                stair = _staircase(rows)
                best = 0.0
                for expansions, quality in stair:
                    if expansions <= bucket and quality > best:
                        best = quality
                values.append(best)
            if values:
                cells.append(f"{sum(values) / len(values):.6f}")
            else:
                cells.append("")
        lines.append(",".join(cells))
    for algorithm, weight in combos:
        stats_list = summaries[(algorithm, weight)]
        mean_stored = sum(s.stored for s in stats_list) / len(stats_list)
        mean_exp = sum(s.expansions for s in stats_list) / len(stats_list)
        lines.append(
            f"# convergence algorithm={algorithm} weight={weight}"
            f" mean_stored={mean_stored:.2f} mean_expansions={mean_exp:.2f}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(args.out)
    else:
        sys.stdout.write(text)
    return 0


def lint_trace(text: str) -> list[str]:
    """Check one trace CSV against the bound invariants; return violations."""
    problems: list[str] = []
    algorithm = None
    weight = None
    header_seen = False
    prev_lower: Cost | None = None
    prev_upper: Cost | None = None

    def parse_cost(cell: str) -> Cost:
        return INF if cell == "inf" else int(cell)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# config"):
                for token in line[len("# config"):].split():
                    key, _, value = token.partition("=")
                    if key == "algorithm":
                        algorithm = value
                    elif key == "weight":
                        weight = Weight.parse(value)
            continue
        if not header_seen:
            if line != ",".join(COLUMNS):
                problems.append(f"line {lineno}: unexpected header {line!r}")
                return problems
            header_seen = True
            continue
        cells = dict(zip(COLUMNS, line.split(",")))
        try:
            lower = parse_cost(cells["lower_bound"])
            upper = parse_cost(cells["upper_bound"])
            expansions = int(cells["expansions"])
        except (KeyError, ValueError):
            problems.append(f"line {lineno}: malformed row")
            continue
        if lower > upper:
            problems.append(f"line {lineno}: lower bound {lower} exceeds upper {upper}")
        if prev_lower is not None and lower < prev_lower:
            problems.append(f"line {lineno}: lower bound decreased {prev_lower} -> {lower}")
        if prev_upper is not None and upper > prev_upper:
            problems.append(f"line {lineno}: upper bound increased {prev_upper} -> {upper}")
        prev_lower, prev_upper = lower, upper
        if (
            algorithm == "awastar"
            and weight is not None
            and not weight.is_unit()
            and cells["incumbent_cost"]
            and expansions >= 1
            and cells["approx_ratio"]
        ):
            ratio = Fraction(cells["approx_ratio"])
            if ratio >= weight.as_fraction():
                problems.append(
                    f"line {lineno}: ratio {ratio} not strictly below weight {weight}"
                )
    if not header_seen:
        problems.append("line 1: no header row found")
    return problems


def cmd_lint(args: argparse.Namespace) -> int:
    bad = 0
    for path in args.traces:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            print(f"{path}: unreadable: {exc}", file=sys.stderr)
            return EXIT_USAGE
        problems = lint_trace(text)
        for problem in problems:
            print(f"{path}: {problem}")
        bad += bool(problems)
    if bad:
        print(f"lint: {bad} file(s) with violations")
        return 1
    print(f"lint: {len(args.traces)} file(s) clean")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="anysearch")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--weight", default="1", help="heuristic weight P/Q (default 1)")
        p.add_argument("--weight-step", dest="weight_step", default=None)
        p.add_argument("--domain", required=True, choices=("tiles", "msa", "graph"))
        p.add_argument("--scheme", default=None, help="msa scoring scheme file")
        p.add_argument("--fstar", default=None, help="'oracle' or a lookup file")
        p.add_argument("--max-expansions", dest="max_expansions", type=int, default=None)
        p.add_argument("--max-stored", dest="max_stored", type=int, default=None)
        p.add_argument("--max-seconds", dest="max_seconds", type=float, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--clock", choices=("wall", "none"), default="wall")

    run_p = sub.add_parser("run", help="run one algorithm on one instance")
    run_p.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    run_p.add_argument("--instance", required=True)
    add_common(run_p)

    profile_p = sub.add_parser("profile", help="aggregate quality profiles")
    profile_p.add_argument("--algorithm", action="append", required=True, choices=ALGORITHMS)
    profile_p.add_argument("--instance", action="append", required=True)
    profile_p.add_argument("--weight", action="append", default=None)
    profile_p.add_argument("--weight-step", dest="weight_step", default=None)
    profile_p.add_argument("--domain", required=True, choices=("tiles", "msa", "graph"))
    profile_p.add_argument("--scheme", default=None)
    profile_p.add_argument("--fstar", default=None)
    profile_p.add_argument("--max-expansions", dest="max_expansions", type=int, default=None)
    profile_p.add_argument("--max-stored", dest="max_stored", type=int, default=None)
    profile_p.add_argument("--max-seconds", dest="max_seconds", type=float, default=None)
    profile_p.add_argument("--seed", type=int, default=0)
    profile_p.add_argument("--out", default=None)

    gen_p = sub.add_parser("gen", help="generate an instance deterministically")
    gen_p.add_argument("--domain", required=True, choices=("tiles", "msa", "graph"))
    gen_p.add_argument("--seed", type=int, default=0)
    gen_p.add_argument("--out", default=None)
    gen_p.add_argument("--width", type=int, default=3)
    gen_p.add_argument("--walk", type=int, default=30)
    gen_p.add_argument("--vertices", type=int, default=20)
    gen_p.add_argument("--edges", type=int, default=60)
    gen_p.add_argument("--cost-min", dest="cost_min", type=int, default=1)
    gen_p.add_argument("--cost-max", dest="cost_max", type=int, default=9)
    gen_p.add_argument("--sequences", type=int, default=3)
    gen_p.add_argument("--length-min", dest="length_min", type=int, default=8)
    gen_p.add_argument("--length-max", dest="length_max", type=int, default=12)

    lint_p = sub.add_parser("lint", help="validate trace CSV invariants")
    lint_p.add_argument("traces", nargs="+")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        if args.command == "run":
            return cmd_run(args)
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "profile":
            if args.weight is None:
                args.weight = ["1"]
            return cmd_profile(args)
        return cmd_lint(args)
    except (UsageError, ParseError, ValidationError, OracleLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoSolutionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
