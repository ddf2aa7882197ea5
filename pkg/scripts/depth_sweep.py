#!/usr/bin/env python3
"""Win rate of a deeper zweistein agent against a depth-1 baseline.

Replays the depth-scaling experiment: the table evaluator has a capture
blind spot at depth 1 that tree search compensates for, so the win rate
should climb with depth and stay above 50%.
"""

import argparse
import time

from ewn.evaluate import EvaluatorKind
from ewn.harness import AgentSpec, MatchConfig, run_match
from ewn.tables import build_tables


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--games", type=int, default=5000, help="games per depth")
    parser.add_argument("--max-depth", type=int, default=4)
    parser.add_argument("--seed", type=int, default=2023)
    parser.add_argument("--workers", type=int, default=2)
    args = parser.parse_args()

    tables = build_tables()
    print(f"{'depth':>5} {'win rate':>9} {'95% CI':>20} {'ms/move':>8}")
    for depth in range(1, args.max_depth + 1):
        config = MatchConfig(
            games=args.games,
            red=AgentSpec(kind=EvaluatorKind.ZWEISTEIN, depth=depth),
            blue=AgentSpec(kind=EvaluatorKind.ZWEISTEIN, depth=1),
            seed=args.seed + depth,
        )
        started = time.perf_counter()
        report = run_match(config, tables, workers=args.workers)
        wall = time.perf_counter() - started
        lo, hi = report.ci95
        print(
            f"{depth:>5} {report.win_rate_red:>9.4f} "
            f"[{lo:.4f}, {hi:.4f}]{'':>4} {report.mean_move_seconds * 1e3:>8.3f}"
            f"   ({wall:.1f} s)"
        )


if __name__ == "__main__":
    main()
