"""Ground-truth references: exact win rates and an independent pdf recursion.

The exact solver expands the full game tree (dice averaged, best reply
maximized) with memoization on position plus side to move. There is no
depth cut; tractability comes from a piece-count guard, so it is meant for
the small constructed positions used in verification. It deliberately
carries its own compact move generator rather than reusing the board
module, so the two rules implementations cross-check each other.

simple_pdf_reference recomputes DTC distributions by plain recursion on raw
distance arrays with no index encoding and no cdf machinery, as an
independent check of the table builder. It applies the same ascending-label
tie-break on equal expectations, otherwise the two implementations would
legitimately disagree wherever distinct distributions share a mean.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .board import BoardState, Color
from .distance import DistanceArray
from .rng import SplitMix64
from .tables import NUM_BUCKETS, Tables

_RED_DIRS = ((1, 0), (0, 1), (1, 1))
_BLUE_DIRS = ((-1, 0), (0, -1), (-1, -1))


def _movable(alive_labels: tuple[int, ...], dice: int) -> tuple[int, ...]:
    if dice in alive_labels:
        return (dice,)
    lower = max((lab for lab in alive_labels if lab < dice), default=0)
    higher = min((lab for lab in alive_labels if lab > dice), default=0)
    if lower and higher:
        return (lower, higher)
    return (lower,) if lower else (higher,)


_WIN = ("win",)


class ExactSolver:
    """Exact win probabilities for small positions of the full game."""

    def __init__(self, max_pieces: int = 6):
        self.max_pieces = max_pieces
        self._memo: dict[tuple, float] = {}
        # (key, dice) -> _WIN or the optimal child key, for policy rollouts
        self.policy: dict[tuple, tuple] = {}

    def win_prob(self, state: BoardState, to_move: Color) -> float:
        """P(to_move wins) under optimal play by both sides."""
        pieces = sum(sq is not None for sq in state.red + state.blue)
        if pieces > self.max_pieces:
            raise ValueError(
                f"position too large for exact solve ({pieces} pieces > {self.max_pieces})"
            )
        key = (state.red, state.blue, 0 if to_move is Color.RED else 1)
        return self._solve(key)

    def win_prob_for(self, state: BoardState, to_move: Color, color: Color) -> float:
        """P(color wins); complement of the mover's value when colors differ."""
        value = self.win_prob(state, to_move)
        return value if color is to_move else 1.0 - value

    def _solve(self, key: tuple) -> float:
        red, blue, mover = key
        if (4, 4) in red or not any(sq is not None for sq in blue):
            return 1.0 if mover == 0 else 0.0
        if (0, 0) in blue or not any(sq is not None for sq in red):
            return 1.0 if mover == 1 else 0.0
        cached = self._memo.get(key)
        if cached is not None:
            return cached

        own, opp = (red, blue) if mover == 0 else (blue, red)
        dirs = _RED_DIRS if mover == 0 else _BLUE_DIRS
        goal = (4, 4) if mover == 0 else (0, 0)
        alive = tuple(lab for lab in range(1, 7) if own[lab - 1] is not None)

        total = 0.0
        for dice in range(1, 7):
            best = -1.0
            best_entry = _WIN
            for label in _movable(alive, dice):
                r, c = own[label - 1]
                for dr, dc in dirs:
                    dst = (r + dr, c + dc)
                    if not (0 <= dst[0] < 5 and 0 <= dst[1] < 5):
                        continue
                    new_own = list(own)
                    new_opp = list(opp)
                    for i in range(6):
                        if new_own[i] == dst:
                            new_own[i] = None
                        if new_opp[i] == dst:
                            new_opp[i] = None
                    new_own[label - 1] = dst
                    if dst == goal or not any(sq is not None for sq in new_opp):
                        value = 1.0
                        entry = _WIN
                    else:
                        child = (
                            (tuple(new_own), tuple(new_opp), 1)
                            if mover == 0
                            else (tuple(new_opp), tuple(new_own), 0)
                        )
                        value = 1.0 - self._solve(child)
                        entry = child
                    if value > best:
                        best = value
                        best_entry = entry
            total += best
            self.policy[(key, dice)] = best_entry
        result = total / 6.0
        self._memo[key] = result
        return result

    def rollout_win_prob(
        self, state: BoardState, to_move: Color, rollouts: int, seed: int
    ) -> float:
        """Monte Carlo estimate following the solver's own optimal policy."""
        self.win_prob(state, to_move)  # populate the policy
        start = (state.red, state.blue, 0 if to_move is Color.RED else 1)
        target = 0 if to_move is Color.RED else 1
        rng = SplitMix64(seed)
        wins = 0
        for _ in range(rollouts):
            key = start
            while True:
                entry = self.policy[(key, rng.dice())]
                if entry is _WIN:
                    if key[2] == target:
                        wins += 1
                    break
                key = entry
        return wins / rollouts


def simple_pdf_reference(arr: DistanceArray) -> tuple[float, ...]:
    """DTC distribution of one distance array by direct recursion."""
    if len(arr) != 6:
        raise ValueError(f"distance array must have 6 entries, got {len(arr)}")
    for d in arr:
        if d is not None and not 0 <= d <= 4:
            raise ValueError(f"entry out of range: {d!r}")
    return _reference(tuple(arr))


@lru_cache(maxsize=None)
def _reference(arr: tuple) -> tuple[float, ...]:
    if any(d == 0 for d in arr if d is not None):
        return (1.0,) + (0.0,) * (NUM_BUCKETS - 1)
    alive = tuple(lab for lab in range(1, 7) if arr[lab - 1] is not None)
    acc = [0.0] * NUM_BUCKETS
    for dice in range(1, 7):
        best_pdf = None
        best_exp = 0.0
        for label in _movable(alive, dice):
            child = list(arr)
            child[label - 1] -= 1
            child_pdf = _reference(tuple(child))
            child_exp = 0.0
            for i, p in enumerate(child_pdf):
                child_exp += i * p
            if best_pdf is None or child_exp < best_exp:
                best_pdf = child_pdf
                best_exp = child_exp
        for i in range(NUM_BUCKETS):
            acc[i] += best_pdf[i]
    if acc[NUM_BUCKETS - 1] != 0.0:
        raise AssertionError("mass overflow beyond DTC 19")
    return (0.0,) + tuple(a / 6.0 for a in acc[: NUM_BUCKETS - 1])


def win_prob_double_sum(
    ours_pdf: tuple[float, ...], theirs_pdf: tuple[float, ...]
) -> float:
    """P(X < Y) as the explicit double sum over both pdfs, no cdf involved."""
    total = 0.0
    for i in range(1, NUM_BUCKETS):
        inner = 0.0
        for j in range(i):
            inner += ours_pdf[j]
        total += inner * theirs_pdf[i]
    return total


def double_sum_batch(
    ours_idx: np.ndarray, theirs_idx: np.ndarray, tables: Tables
) -> np.ndarray:
    """Vectorized double sum for bulk consistency checks against Algorithm-1."""
    # pairs[j, i] = 1 exactly when j < i
    pairs = np.triu(np.ones((NUM_BUCKETS, NUM_BUCKETS)), k=1)
    out = np.empty(len(ours_idx))
    chunk = 1 << 16
    for start in range(0, len(ours_idx), chunk):
        sl = slice(start, start + chunk)
        po = tables.pdf[ours_idx[sl]]
        pt = tables.pdf[theirs_idx[sl]]
        out[sl] = np.einsum("mj,ji,mi->m", po, pairs, pt)
    return out
