"""EinStein Würfelt Nicht: rules, distance-table evaluation, search, harness."""

from .board import (
    BoardState,
    Color,
    Move,
    apply_move,
    format_board,
    initial_board,
    legal_moves,
    movable_labels,
    parse_board,
    status,
)
from .distance import collapse, decode, distance_to_goal, encode, TABLE_SIZE
from .evaluate import (
    EvaluatorKind,
    evaluate_board,
    schwarz_eval,
    zweistein_batch,
    zweistein_eval,
)
from .harness import (
    AgentSpec,
    BenchReport,
    MatchConfig,
    MatchReport,
    bench_eval,
    play_game,
    run_match,
)
from .oracle import ExactSolver, simple_pdf_reference, win_prob_double_sum
from .search import SearchLimits, SearchResult, best_move, search_value, time_budget
from .tables import (
    NUM_BUCKETS,
    TableFileError,
    Tables,
    build_tables,
    cdf_from_pdf,
    expected_dtc,
    load_tables,
    right_shift,
    save_tables,
)

__all__ = [
    "AgentSpec",
    "BenchReport",
    "BoardState",
    "Color",
    "EvaluatorKind",
    "ExactSolver",
    "MatchConfig",
    "MatchReport",
    "Move",
    "NUM_BUCKETS",
    "SearchLimits",
    "SearchResult",
    "TABLE_SIZE",
    "TableFileError",
    "Tables",
    "apply_move",
    "bench_eval",
    "best_move",
    "build_tables",
    "cdf_from_pdf",
    "collapse",
    "decode",
    "distance_to_goal",
    "encode",
    "evaluate_board",
    "expected_dtc",
    "format_board",
    "initial_board",
    "legal_moves",
    "load_tables",
    "movable_labels",
    "parse_board",
    "play_game",
    "right_shift",
    "run_match",
    "save_tables",
    "schwarz_eval",
    "search_value",
    "simple_pdf_reference",
    "status",
    "time_budget",
    "win_prob_double_sum",
    "zweistein_batch",
    "zweistein_eval",
]
