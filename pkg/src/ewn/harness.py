"""Self-play match harness and the evaluation-latency benchmark.

Matches are reproducible from (config, seed): every game draws its dice
from a SplitMix64 stream seeded with seed xor game index, so any single
game can be replayed in isolation. Red always moves first; the two
configured agents swap colors every game, which cancels the first-move
advantage across a match. Games may be distributed over worker processes;
per-game results are deterministic and the reduction is a commutative sum,
so the report does not depend on scheduling.

Under total-time limits each move gets the budget

    remaining_time / max(15 - steps_taken, 3)

where steps_taken counts the moves that side has already played, and the
search deepens iteratively until the budget expires.
"""

from __future__ import annotations

import math
import multiprocessing
import time
from dataclasses import dataclass, field

import numpy as np

from .board import Color, initial_board
from .evaluate import EvaluatorKind
from .rng import SplitMix64, game_seed
from .search import MAX_DEPTH, Engine, _Context, _root_scan, time_budget
from .tables import NUM_BUCKETS, Tables

PLACEMENTS = ("standard", "random-symmetric")


@dataclass(frozen=True)
class AgentSpec:
    """One player: evaluator kind plus a depth or a total-time clock."""

    kind: EvaluatorKind = EvaluatorKind.ZWEISTEIN
    depth: int | None = 1
    total_time: float | None = None  # seconds per game

    def __post_init__(self):
        if (self.depth is None) == (self.total_time is None):
            raise ValueError("agent needs exactly one of depth/total_time")
        if self.depth is not None and not 1 <= self.depth <= MAX_DEPTH:
            raise ValueError(f"depth must be 1..{MAX_DEPTH}")
        if self.total_time is not None and self.total_time <= 0:
            raise ValueError("total_time must be positive")

    def describe(self) -> str:
        limit = f"depth={self.depth}" if self.depth is not None else f"time={self.total_time}s"
        return f"{self.kind.value}/{limit}"


@dataclass(frozen=True)
class MatchConfig:
    games: int
    red: AgentSpec = AgentSpec()
    blue: AgentSpec = AgentSpec()
    seed: int = 0
    placement: str = "standard"
    prune: bool = True
    record_budgets: bool = False

    def __post_init__(self):
        if self.games < 1:
            raise ValueError("games must be >= 1")
        if self.placement not in PLACEMENTS:
            raise ValueError(f"placement must be one of {PLACEMENTS}")


@dataclass
class GameResult:
    index: int
    winner_agent: int  # 0 = the agent configured as red, 1 = the other
    winner_color: Color
    plies: int
    move_seconds: float
    # (side, steps_taken, remaining_before, budget, elapsed) per timed move
    budgets: list[tuple[int, int, float, float, float]] = field(default_factory=list)


@dataclass
class MatchReport:
    games: int
    wins_red: int  # agent configured as red in game 0
    wins_blue: int
    win_rate_red: float
    ci95: tuple[float, float]
    mean_plies: float
    mean_move_seconds: float
    seed: int
    placement: str
    red_spec: str
    blue_spec: str
    results: list[GameResult] = field(default_factory=list)

    def format_text(self) -> str:
        lines = [
            f"games          {self.games}",
            f"red agent      {self.red_spec}",
            f"blue agent     {self.blue_spec}",
            f"wins red       {self.wins_red}",
            f"wins blue      {self.wins_blue}",
            f"win rate red   {self.win_rate_red:.6f}",
            f"ci95           [{self.ci95[0]:.6f}, {self.ci95[1]:.6f}]",
            f"mean plies     {self.mean_plies:.4f}",
            f"seed           {self.seed}",
            f"placement      {self.placement}",
        ]
        return "\n".join(lines)

    def format_kv(self) -> str:
        items = [
            ("games", self.games),
            ("red", self.red_spec),
            ("blue", self.blue_spec),
            ("wins_red", self.wins_red),
            ("wins_blue", self.wins_blue),
            ("win_rate_red", f"{self.win_rate_red:.6f}"),
            ("ci95_low", f"{self.ci95[0]:.6f}"),
            ("ci95_high", f"{self.ci95[1]:.6f}"),
            ("mean_plies", f"{self.mean_plies:.4f}"),
            ("seed", self.seed),
            ("placement", self.placement),
        ]
        return "\n".join(f"{k}={v}" for k, v in items)


def wilson_ci95(wins: int, games: int) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if games == 0:
        return (0.0, 1.0)
    z = 1.959963984540054
    p = wins / games
    denom = 1 + z * z / games
    center = (p + z * z / (2 * games)) / denom
    half = z * math.sqrt(p * (1 - p) / games + z * z / (4 * games * games)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


def play_game(config: MatchConfig, game_index: int, tables: Tables) -> GameResult:
    """Play one complete game of a match, reproducible from the config."""
    rng = SplitMix64(game_seed(config.seed, game_index))
    if config.placement == "random-symmetric":
        order = list(range(1, 7))
        rng.shuffle(order)
        state = initial_board(order)
    else:
        state = initial_board()

    # agent 0 is the configured red agent; colors swap every game
    agent_of_side = (0, 1) if game_index % 2 == 0 else (1, 0)
    specs = (config.red, config.blue)

    engine = Engine(state)
    contexts = [
        _Context(engine, specs[agent_of_side[side]].kind, tables) for side in (0, 1)
    ]
    clocks = [
        specs[agent_of_side[side]].total_time or 0.0 for side in (0, 1)
    ]
    steps = [0, 0]
    budgets: list[tuple[int, int, float, float, float]] = []
    plies = 0
    move_seconds = 0.0
    side = 0  # red moves first
    while True:
        dice = rng.dice()
        spec = specs[agent_of_side[side]]
        ctx = contexts[side]
        started = time.perf_counter()
        if spec.depth is not None:
            found = _root_scan(ctx, side, dice, spec.depth, config.prune)
            elapsed = time.perf_counter() - started
        else:
            remaining = clocks[side]
            budget = time_budget(remaining, steps[side]) if remaining > 0 else 0.0
            deadline_at = started + budget
            found = _root_scan(ctx, side, dice, 1, config.prune)
            depth = 2
            while depth <= MAX_DEPTH and time.perf_counter() < deadline_at:
                attempt = _root_scan(ctx, side, dice, depth, config.prune, deadline_at)
                if attempt is None:
                    break
                found = attempt
                depth += 1
            elapsed = time.perf_counter() - started
            clocks[side] -= elapsed
            if config.record_budgets:
                budgets.append((side, steps[side], remaining, budget, elapsed))
        move_seconds += elapsed
        move, _value = found
        src = move.from_sq[0] * 5 + move.from_sq[1]
        dst = move.to_sq[0] * 5 + move.to_sq[1]
        assert engine.pos[side * 6 + move.label - 1] == src
        undo = engine.make(side, move.label, dst)
        steps[side] += 1
        plies += 1
        if undo[4]:
            winner_color = Color.RED if side == 0 else Color.BLUE
            return GameResult(
                index=game_index,
                winner_agent=agent_of_side[side],
                winner_color=winner_color,
                plies=plies,
                move_seconds=move_seconds,
                budgets=budgets,
            )
        side = 1 - side


_WORKER_ARGS: tuple[MatchConfig, Tables] | None = None


def _play_chunk(indices: list[int]) -> list[GameResult]:
    config, tables = _WORKER_ARGS
    return [play_game(config, g, tables) for g in indices]


def run_match(config: MatchConfig, tables: Tables, workers: int = 1) -> MatchReport:
    """Play config.games complete games and aggregate a report."""
    indices = list(range(config.games))
    if workers <= 1 or config.games < 4:
        results = [play_game(config, g, tables) for g in indices]
    else:
        global _WORKER_ARGS
        _WORKER_ARGS = (config, tables)
        chunks = [indices[i::workers] for i in range(workers)]
        try:
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(workers) as pool:
                parts = pool.map(_play_chunk, chunks)
        finally:
            _WORKER_ARGS = None
        results = [r for part in parts for r in part]
        results.sort(key=lambda r: r.index)

    wins_red = sum(1 for r in results if r.winner_agent == 0)
    wins_blue = config.games - wins_red
    assert wins_red + wins_blue == config.games  # no draws exist
    rate = wins_red / config.games
    return MatchReport(
        games=config.games,
        wins_red=wins_red,
        wins_blue=wins_blue,
        win_rate_red=rate,
        ci95=wilson_ci95(wins_red, config.games),
        mean_plies=sum(r.plies for r in results) / config.games,
        mean_move_seconds=(
            sum(r.move_seconds for r in results)
            / max(1, sum(r.plies for r in results))
        ),
        seed=config.seed,
        placement=config.placement,
        red_spec=config.red.describe(),
        blue_spec=config.blue.describe(),
        results=results,
    )


@dataclass
class BenchReport:
    calls: int
    seconds: float
    ns_per_call: float
    checksum: float

    def format_text(self) -> str:
        return "\n".join(
            [
                f"calls       {self.calls}",
                f"total       {self.seconds:.3f} s",
                f"per call    {self.ns_per_call:.2f} ns",
                f"checksum    {self.checksum:.17g}",
            ]
        )


def bench_eval(
    calls: int, tables: Tables, cycle: int = 1 << 16, seed: int = 0x5EED
) -> BenchReport:
    """Time `calls` win-rate evaluations over a pregenerated index cycle.

    Evaluations run in vectorized batches; every call performs its two row
    lookups and the 19-term dot product. Results fold into a checksum that
    is printed with the report, so the work cannot be elided.
    """
    if calls <= 0:
        raise ValueError("calls must be positive")
    cycle = min(cycle, calls)
    rng = SplitMix64(seed)
    ours = np.array([1 + rng.randrange(15624) for _ in range(cycle)], dtype=np.int64)
    theirs = np.array([1 + rng.randrange(15624) for _ in range(cycle)], dtype=np.int64)
    cdf_head = np.ascontiguousarray(tables.cdf[:, : NUM_BUCKETS - 1])
    pdf_tail = np.ascontiguousarray(tables.pdf[:, 1:])

    reps, leftover = divmod(calls, cycle)
    checksum = 0.0
    started = time.perf_counter()
    for _ in range(reps):
        values = np.einsum("ij,ij->i", cdf_head[ours], pdf_tail[theirs])
        checksum += float(values.sum())
    if leftover:
        values = np.einsum(
            "ij,ij->i", cdf_head[ours[:leftover]], pdf_tail[theirs[:leftover]]
        )
        checksum += float(values.sum())
    seconds = time.perf_counter() - started
    return BenchReport(
        calls=calls,
        seconds=seconds,
        ns_per_call=seconds / calls * 1e9,
        checksum=checksum,
    )
