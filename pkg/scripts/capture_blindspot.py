#!/usr/bin/env python3
"""Static value vs depth-1 value vs exact win rate on constructed boards.

Two families of positions:
  * capture-free races, where the table value tracks the exact win rate;
  * capture-decisive traps, where the static value is badly overconfident
    and a single ply of search recovers most of the error.
"""

from ewn.board import BoardState, Color, format_board
from ewn.evaluate import EvaluatorKind, evaluate_board
from ewn.oracle import ExactSolver
from ewn.search import search_value
from ewn.tables import build_tables

RACES = [
    ({1: (4, 0)}, {1: (0, 4)}),
    ({1: (4, 1)}, {1: (0, 3)}),
    ({1: (4, 2)}, {1: (0, 4)}),
    ({1: (4, 0)}, {1: (0, 2)}),
]

TRAPS = [
    ({2: (3, 3), 5: (0, 0)}, {1: (4, 4)}),
    ({1: (3, 3), 6: (0, 0)}, {1: (4, 4), 6: (0, 4)}),
    ({3: (3, 3), 4: (0, 0)}, {2: (4, 4), 5: (1, 4)}),
    ({2: (3, 3), 6: (0, 1)}, {3: (4, 4), 4: (0, 3)}),
]


def main() -> None:
    tables = build_tables()
    solver = ExactSolver()
    for title, cases in (("capture-free races", RACES), ("capture traps", TRAPS)):
        print(f"\n== {title} (red just moved, blue to move) ==")
        print(f"{'static':>8} {'depth-1':>8} {'exact':>8}   board")
        for red, blue in cases:
            state = BoardState.from_placements(red, blue)
            static = evaluate_board(state, Color.RED, EvaluatorKind.ZWEISTEIN, tables)
            depth1 = search_value(state, Color.RED, 1, EvaluatorKind.ZWEISTEIN, tables)
            exact = solver.win_prob_for(state, Color.BLUE, Color.RED)
            print(f"{static:>8.4f} {depth1:>8.4f} {exact:>8.4f}   {format_board(state)}")


if __name__ == "__main__":
    main()
