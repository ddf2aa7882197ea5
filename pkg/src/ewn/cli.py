"""Command-line entry point.

Subcommands: build (write the table file), eval (score a position),
best-move (search one move), selfplay (seeded matches), bench (lookup
latency), verify (oracle cross-checks), play (interactive text game).

Board text is 5 rows top to bottom separated by '/', 5 tokens per row,
tokens '.' or R1..R6 / B1..B6. Moves print and parse as
"label to_row to_col". Deterministic report output goes to stdout; timing
diagnostics go to stderr so reruns with the same seed are byte-identical.
"""

from __future__ import annotations

import argparse
import sys
import time

from .board import (
    Color,
    apply_move,
    initial_board,
    legal_moves,
    parse_board,
    render_grid,
    status,
)
from .evaluate import EvaluatorKind, evaluate_board
from .harness import AgentSpec, MatchConfig, bench_eval, run_match
from .rng import SplitMix64
from .search import SearchLimits, best_move
from .tables import Tables, build_tables, load_tables, save_tables


def _tables_from(args) -> Tables:
    if getattr(args, "tables", None):
        return load_tables(args.tables)
    return build_tables()


def _color(text: str) -> Color:
    return Color.RED if text.upper() == "R" else Color.BLUE


def _agent(kind: str, depth: int | None, seconds: float | None) -> AgentSpec:
    if depth is not None and seconds is not None:
        raise ValueError("give either a depth or a total time, not both")
    if depth is None and seconds is None:
        depth = 1
    return AgentSpec(
        kind=EvaluatorKind(kind),
        depth=depth,
        total_time=seconds,
    )


def _cmd_build(args) -> int:
    started = time.perf_counter()
    tables = build_tables()
    built = time.perf_counter() - started
    save_tables(args.out, tables)
    reloaded = load_tables(args.out)
    ok = (
        reloaded.pdf.tobytes() == tables.pdf.tobytes()
        and reloaded.cdf.tobytes() == tables.cdf.tobytes()
    )
    print(f"built 15625x20 pdf+cdf in {built:.3f} s -> {args.out}")
    print(f"roundtrip {'ok' if ok else 'FAILED'}")
    return 0 if ok else 1


def _cmd_eval(args) -> int:
    tables = _tables_from(args)
    state = parse_board(args.board)
    score = evaluate_board(state, _color(args.just_moved), EvaluatorKind(args.evaluator), tables)
    print(f"{score:.6f}")
    return 0


def _cmd_best_move(args) -> int:
    tables = _tables_from(args)
    state = parse_board(args.board)
    if args.depth is not None:
        limits = SearchLimits(depth=args.depth)
    else:
        limits = SearchLimits(deadline=args.time_ms / 1000.0)
    result = best_move(
        state, _color(args.mover), args.dice, limits, EvaluatorKind(args.evaluator), tables
    )
    move = result.best
    print(f"{move.label} {move.to_sq[0]} {move.to_sq[1]}")
    print(
        f"value={result.value:.6f} depth={result.reached_depth} nodes={result.nodes}",
        file=sys.stderr,
    )
    return 0


def _cmd_selfplay(args) -> int:
    tables = _tables_from(args)
    config = MatchConfig(
        games=args.games,
        red=_agent(args.red, args.red_depth, args.red_time),
        blue=_agent(args.blue, args.blue_depth, args.blue_time),
        seed=args.seed,
        placement=args.placement,
        prune=not args.no_prune,
    )
    started = time.perf_counter()
    report = run_match(config, tables, workers=args.workers)
    wall = time.perf_counter() - started
    print(report.format_kv() if args.kv else report.format_text())
    print(
        f"wall={wall:.2f}s mean_move={report.mean_move_seconds * 1e3:.3f}ms",
        file=sys.stderr,
    )
    return 0


def _cmd_bench(args) -> int:
    tables = _tables_from(args)
    report = bench_eval(args.calls, tables, cycle=args.cycle, seed=args.seed)
    print(report.format_text())
    return 0


def _cmd_verify(args) -> int:
    from .verify import run_verification

    tables = _tables_from(args)
    checks = run_verification(tables, pairs=args.pairs, indices=args.indices, seed=args.seed)
    failed = 0
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failed += 0 if ok else 1
    return 0 if failed == 0 else 1


def _prompt_move(state, mover, dice):
    moves = legal_moves(state, mover, dice)
    labels = sorted({m.label for m in moves})
    while True:
        try:
            raw = input(f"{mover.name} dice={dice} movable={labels} move (label row col): ")
        except EOFError:
            return None
        parts = raw.split()
        if len(parts) == 3:
            try:
                label, row, col = (int(p) for p in parts)
            except ValueError:
                print("enter three integers: label to_row to_col")
                continue
            chosen = [m for m in moves if m.label == label and m.to_sq == (row, col)]
            if chosen:
                return chosen[0]
        print(f"illegal move; legal: {[(m.label, *m.to_sq) for m in moves]}")


def _cmd_play(args) -> int:
    tables = _tables_from(args)
    rng = SplitMix64(args.seed)
    state = initial_board()
    human = _color(args.human)
    kind = EvaluatorKind(args.evaluator)
    mover = Color.RED
    while True:
        winner = status(state)
        if winner is not None:
            print(render_grid(state))
            print(f"{winner.name} wins")
            return 0
        dice = rng.dice()
        print(render_grid(state))
        if mover is human:
            move = _prompt_move(state, mover, dice)
            if move is None:
                print("bye")
                return 1
        else:
            result = best_move(
                state, mover, dice, SearchLimits(depth=args.depth), kind, tables
            )
            move = result.best
            print(f"{mover.name} dice={dice} plays {move.label} {move.to_sq[0]} {move.to_sq[1]}")
        state = apply_move(state, mover, move)
        mover = mover.other
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ewn", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build tables and write the ZWST file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("eval", help="evaluate a position")
    p.add_argument("--board", required=True)
    p.add_argument("--just-moved", required=True, choices=["R", "B"])
    p.add_argument("--evaluator", default="zweistein", choices=["zweistein", "schwarz"])
    p.add_argument("--tables")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("best-move", help="search the best move for a dice roll")
    p.add_argument("--board", required=True)
    p.add_argument("--mover", required=True, choices=["R", "B"])
    p.add_argument("--dice", required=True, type=int, choices=range(1, 7))
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--depth", type=int)
    group.add_argument("--time-ms", type=float)
    p.add_argument("--evaluator", default="zweistein", choices=["zweistein", "schwarz"])
    p.add_argument("--tables")
    p.set_defaults(func=_cmd_best_move)

    p = sub.add_parser("selfplay", help="run a seeded self-play match")
    p.add_argument("--games", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--red", default="zweistein", choices=["zweistein", "schwarz"])
    p.add_argument("--blue", default="zweistein", choices=["zweistein", "schwarz"])
    p.add_argument("--red-depth", type=int)
    p.add_argument("--blue-depth", type=int)
    p.add_argument("--red-time", type=float, help="total seconds per game")
    p.add_argument("--blue-time", type=float)
    p.add_argument("--placement", default="standard", choices=["standard", "random-symmetric"])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--kv", action="store_true", help="key=value output")
    p.add_argument("--tables")
    p.set_defaults(func=_cmd_selfplay)

    p = sub.add_parser("bench", help="evaluation latency benchmark")
    p.add_argument("--calls", type=int, default=100_000_000)
    p.add_argument("--cycle", type=int, default=1 << 16)
    p.add_argument("--seed", type=int, default=0x5EED)
    p.add_argument("--tables")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("verify", help="run the oracle cross-check suite")
    p.add_argument("--pairs", type=int, default=1_000_000)
    p.add_argument("--indices", type=int, default=100)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--tables")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("play", help="interactive text-mode game")
    p.add_argument("--human", required=True, choices=["R", "B"])
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--evaluator", default="zweistein", choices=["zweistein", "schwarz"])
    p.add_argument("--tables")
    p.set_defaults(func=_cmd_play)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())
