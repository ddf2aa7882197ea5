"""Position evaluation from the precomputed DTC tables.

Both evaluators score a position from the perspective of the side that just
moved, with the opponent to move next. The zweistein score is the win
probability of the capture-free race: P(our DTC < their DTC), an equal DTC
counting as a loss because the opponent moves first. The schwarz score is
the older expectation gap E[their DTC] - E[our DTC], unbounded and not a
probability.

Zweistein uses the cdf/pdf split of

    P(X < Y) = sum over i in 1..19 of P(X <= i-1) * P(Y = i)

so one evaluation is a 19-term dot product between a cdf row of ours and a
pdf row of theirs.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .board import BoardState, Color, status
from .distance import DistanceArray, collapse, encode
from .tables import NUM_BUCKETS, Tables

# Terminal-equivalent schwarz score: live expectations lie in [1, 19], so
# their difference never leaves (-18, 18) and 19 strictly dominates.
SCHWARZ_WIN = 19.0


class EvaluatorKind(Enum):
    ZWEISTEIN = "zweistein"
    SCHWARZ = "schwarz"

    @property
    def win_value(self) -> float:
        return 1.0 if self is EvaluatorKind.ZWEISTEIN else SCHWARZ_WIN

    @property
    def loss_value(self) -> float:
        return 0.0 if self is EvaluatorKind.ZWEISTEIN else -SCHWARZ_WIN

    def flip(self, value: float) -> float:
        """Same score seen from the other side's perspective."""
        if self is EvaluatorKind.ZWEISTEIN:
            return 1.0 - value
        return -value


def _check_sides(ours: DistanceArray, theirs: DistanceArray) -> bool:
    """True when both sides are alive; handles the defensive degenerate cases."""
    ours_alive = any(d is not None for d in ours)
    theirs_alive = any(d is not None for d in theirs)
    if not ours_alive and not theirs_alive:
        raise ValueError("both sides captured")
    return ours_alive and theirs_alive


def zweistein_eval(ours: DistanceArray, theirs: DistanceArray, tables: Tables) -> float:
    """P(our DTC < their DTC) for the side that just moved."""
    if not _check_sides(ours, theirs):
        return 0.0 if not any(d is not None for d in ours) else 1.0
    co = tables.cdf_rows[encode(ours)]
    pt = tables.pdf_rows[encode(theirs)]
    total = 0.0
    for i in range(1, NUM_BUCKETS):
        total += co[i - 1] * pt[i]
    # the dot product can round one ulp past 1.0; the score is a probability
    return total if total <= 1.0 else 1.0


def schwarz_eval(ours: DistanceArray, theirs: DistanceArray, tables: Tables) -> float:
    """E[their DTC] - E[our DTC]; positive favors the side that just moved."""
    if not _check_sides(ours, theirs):
        return -SCHWARZ_WIN if not any(d is not None for d in ours) else SCHWARZ_WIN
    return tables.expected[encode(theirs)] - tables.expected[encode(ours)]


def evaluate_board(
    state: BoardState, just_moved: Color, kind: EvaluatorKind, tables: Tables
) -> float:
    """Collapse both sides and score for the side that just moved."""
    if status(state) is not None:
        raise ValueError("evaluate called on terminal state")
    ours = collapse(state, just_moved)
    theirs = collapse(state, just_moved.other)
    if kind is EvaluatorKind.ZWEISTEIN:
        return zweistein_eval(ours, theirs, tables)
    return schwarz_eval(ours, theirs, tables)


def zweistein_batch(
    ours_idx: np.ndarray, theirs_idx: np.ndarray, tables: Tables
) -> np.ndarray:
    """Vectorized zweistein over arrays of non-sentinel table indices."""
    a = tables.cdf[ours_idx, : NUM_BUCKETS - 1]
    b = tables.pdf[theirs_idx, 1:]
    return np.minimum(np.einsum("ij,ij->i", a, b), 1.0)
