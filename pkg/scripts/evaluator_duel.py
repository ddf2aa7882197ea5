#!/usr/bin/env python3
"""Zweistein (win rate of the race) against Schwarz (expectation gap).

The two evaluators read the same distance tables but rank positions
differently: schwarz underestimates guaranteed wins and overestimates
loose material leads. This match measures what those misrankings cost
at equal search depth.
"""

import argparse

from ewn.evaluate import EvaluatorKind
from ewn.harness import AgentSpec, MatchConfig, run_match
from ewn.tables import build_tables


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--games", type=int, default=10000)
    parser.add_argument("--depth", type=int, default=2)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--workers", type=int, default=2)
    args = parser.parse_args()

    tables = build_tables()
    config = MatchConfig(
        games=args.games,
        red=AgentSpec(kind=EvaluatorKind.ZWEISTEIN, depth=args.depth),
        blue=AgentSpec(kind=EvaluatorKind.SCHWARZ, depth=args.depth),
        seed=args.seed,
    )
    report = run_match(config, tables, workers=args.workers)
    print(report.format_text())


if __name__ == "__main__":
    main()
