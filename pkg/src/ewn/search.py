"""Expectimax search over the full game with dice chance nodes.

Depth counts player decisions: one searched move costs one ply, the dice
average between moves is free. Values are always from the perspective of
the side that just moved, matching the evaluators, so a node flips its
children's scores instead of re-collapsing the board.

The search runs on a small mutable engine with make/unmake and incremental
table indices; the public functions accept the immutable BoardState and
convert at the boundary. Dice outcomes that unlock the same label set are
grouped and weighted, which is exact and saves repeated subtrees.

Optional pruning ("star1") exploits the hard value bounds at chance nodes:
a partially summed chance node whose optimistic completion cannot reach
alpha (or pessimistic completion cannot stay below beta) stops early. With
exact bounds this never changes the root move or value, a property the test
suite checks against the plain search.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .board import BOARD_SIZE, BoardState, Color, Move, status
from .distance import POW5
from .evaluate import EvaluatorKind
from .tables import Tables

MAX_DEPTH = 32

_RED_GOAL = 24
_BLUE_GOAL = 0
_GOAL = (_RED_GOAL, _BLUE_GOAL)

_DIST = (
    tuple(max(4 - sq // 5, 4 - sq % 5) for sq in range(25)),
    tuple(max(sq // 5, sq % 5) for sq in range(25)),
)


def _neighbor_table(side: int) -> tuple[tuple[int, ...], ...]:
    dirs = ((1, 0), (0, 1), (1, 1)) if side == 0 else ((-1, 0), (0, -1), (-1, -1))
    out = []
    for sq in range(25):
        r, c = divmod(sq, BOARD_SIZE)
        dests = []
        for dr, dc in dirs:
            nr, nc = r + dr, c + dc
            if 0 <= nr < BOARD_SIZE and 0 <= nc < BOARD_SIZE:
                dests.append(nr * BOARD_SIZE + nc)
        out.append(tuple(dests))
    return tuple(out)


_NEIGH = (_neighbor_table(0), _neighbor_table(1))


def _movable_from_mask(mask: int, dice: int) -> tuple[int, ...]:
    if mask >> (dice - 1) & 1:
        return (dice,)
    lower = next((l for l in range(dice - 1, 0, -1) if mask >> (l - 1) & 1), 0)
    higher = next((l for l in range(dice + 1, 7) if mask >> (l - 1) & 1), 0)
    if lower and higher:
        return (lower, higher)
    return (lower,) if lower else (higher,)


def _dice_groups(mask: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Dice outcomes grouped by the label set they unlock, with counts."""
    counts: dict[tuple[int, ...], int] = {}
    order = []
    for dice in range(1, 7):
        labs = _movable_from_mask(mask, dice)
        if labs not in counts:
            counts[labs] = 0
            order.append(labs)
        counts[labs] += 1
    return tuple((labs, counts[labs]) for labs in order)


_MOVABLE = tuple(
    None if m == 0 else tuple(_movable_from_mask(m, d) for d in range(1, 7))
    for m in range(64)
)
_GROUPS = tuple(None if m == 0 else _dice_groups(m) for m in range(64))


@dataclass(frozen=True)
class SearchLimits:
    """Either a fixed decision depth or a wall-clock budget for this move."""

    depth: int | None = None
    deadline: float | None = None  # seconds

    def __post_init__(self):
        if (self.depth is None) == (self.deadline is None):
            raise ValueError("exactly one of depth/deadline must be set")
        if self.depth is not None and not 1 <= self.depth <= MAX_DEPTH:
            raise ValueError(f"depth must be 1..{MAX_DEPTH}")
        if self.deadline is not None and self.deadline < 0:
            raise ValueError("deadline must be >= 0")


@dataclass
class SearchResult:
    best: Move
    value: float
    reached_depth: int
    nodes: int


class Engine:
    """Mutable board for search: occupancy grid, piece squares, alive masks,
    and incrementally maintained distance-array indices per side."""

    __slots__ = ("cells", "pos", "alive", "index", "nodes")

    def __init__(self, state: BoardState):
        self.cells = [0] * 25
        self.pos = [-1] * 12
        self.alive = [0, 0]
        self.index = [0, 0]
        self.nodes = 0
        for side, placement in enumerate((state.red, state.blue)):
            for lab, sq in enumerate(placement, start=1):
                if sq is None:
                    continue
                flat = sq[0] * BOARD_SIZE + sq[1]
                self.cells[flat] = lab if side == 0 else -lab
                self.pos[side * 6 + lab - 1] = flat
                self.alive[side] |= 1 << (lab - 1)
                self.index[side] += _DIST[side][flat] * POW5[lab - 1]

    def to_state(self) -> BoardState:
        def unpack(side: int):
            return tuple(
                None if self.pos[side * 6 + i] < 0 else divmod(self.pos[side * 6 + i], 5)
                for i in range(6)
            )

        return BoardState(red=unpack(0), blue=unpack(1))

    def make(self, side: int, label: int, dst: int):
        """Move a piece; returns an undo record whose last field flags a win."""
        pos = self.pos
        cells = self.cells
        pi = side * 6 + label - 1
        src = pos[pi]
        captured = cells[dst]
        cells[src] = 0
        pos[pi] = dst
        self.index[side] += (_DIST[side][dst] - _DIST[side][src]) * POW5[label - 1]
        if captured:
            cside = 0 if captured > 0 else 1
            clab = captured if captured > 0 else -captured
            pos[cside * 6 + clab - 1] = -1
            self.alive[cside] &= ~(1 << (clab - 1))
            self.index[cside] -= _DIST[cside][dst] * POW5[clab - 1]
        cells[dst] = label if side == 0 else -label
        win = dst == _GOAL[side] or self.alive[1 - side] == 0
        return (pi, src, dst, captured, win)

    def unmake(self, undo) -> None:
        pi, src, dst, captured, _ = undo
        side = 0 if pi < 6 else 1
        label = pi - side * 6 + 1
        self.pos[pi] = src
        self.cells[src] = label if side == 0 else -label
        self.index[side] += (_DIST[side][src] - _DIST[side][dst]) * POW5[label - 1]
        if captured:
            cside = 0 if captured > 0 else 1
            clab = captured if captured > 0 else -captured
            self.pos[cside * 6 + clab - 1] = dst
            self.alive[cside] |= 1 << (clab - 1)
            self.index[cside] += _DIST[cside][dst] * POW5[clab - 1]
        self.cells[dst] = captured


class _Context:
    """Per-search bundle: tables, evaluator traits, leaf cache, node count."""

    __slots__ = (
        "engine", "kind", "pdf_rows", "cdf_rows", "expected",
        "flip_const", "lo", "hi", "schwarz", "cache",
    )

    def __init__(self, engine: Engine, kind: EvaluatorKind, tables: Tables):
        self.engine = engine
        self.kind = kind
        self.pdf_rows = tables.pdf_rows
        self.cdf_rows = tables.cdf_rows
        self.expected = tables.expected
        self.lo = kind.loss_value
        self.hi = kind.win_value
        # both flips are "constant minus value": 1-v and -v
        self.flip_const = self.lo + self.hi
        self.schwarz = kind is EvaluatorKind.SCHWARZ
        self.cache: dict[int, float] = {}

    def leaf(self, just_moved: int) -> float:
        eng = self.engine
        ours = eng.index[just_moved]
        theirs = eng.index[1 - just_moved]
        if self.schwarz:
            return self.expected[theirs] - self.expected[ours]
        key = ours * 15625 + theirs
        cached = self.cache.get(key)
        if cached is not None:
            return cached
        co = self.cdf_rows[ours]
        pt = self.pdf_rows[theirs]
        value = (
            co[0] * pt[1] + co[1] * pt[2] + co[2] * pt[3] + co[3] * pt[4]
            + co[4] * pt[5] + co[5] * pt[6] + co[6] * pt[7] + co[7] * pt[8]
            + co[8] * pt[9] + co[9] * pt[10] + co[10] * pt[11] + co[11] * pt[12]
            + co[12] * pt[13] + co[13] * pt[14] + co[14] * pt[15]
            + co[15] * pt[16] + co[16] * pt[17] + co[17] * pt[18]
            + co[18] * pt[19]
        )
        if value > 1.0:  # keep leaves inside the win-probability bounds
            value = 1.0
        self.cache[key] = value
        return value


def _chance(ctx: _Context, just_moved: int, depth: int) -> float:
    """Average over the opponent's dice of their best reply; plain version."""
    eng = ctx.engine
    mover = 1 - just_moved
    pos = eng.pos
    neigh = _NEIGH[mover]
    base = mover * 6 - 1
    flip_const = ctx.flip_const
    total = 0.0
    for labels, count in _GROUPS[eng.alive[mover]]:
        best = ctx.lo
        for label in labels:
            src = pos[base + label]
            for dst in neigh[src]:
                undo = eng.make(mover, label, dst)
                eng.nodes += 1
                if undo[4]:
                    value = ctx.hi
                elif depth == 1:
                    value = ctx.leaf(mover)
                else:
                    value = _chance(ctx, mover, depth - 1)
                eng.unmake(undo)
                if value > best:
                    best = value
        total += count * (flip_const - best)
    return total / 6.0


def _chance_star(ctx: _Context, just_moved: int, depth: int, alpha: float, beta: float) -> float:
    """Star1-pruned chance node; exact inside (alpha, beta), a sound bound outside."""
    eng = ctx.engine
    mover = 1 - just_moved
    pos = eng.pos
    neigh = _NEIGH[mover]
    base = mover * 6 - 1
    flip_const = ctx.flip_const
    lo, hi = ctx.lo, ctx.hi
    summed = 0.0
    remaining = 6.0
    for labels, count in _GROUPS[eng.alive[mover]]:
        optimistic = (summed + remaining * hi) / 6.0
        if optimistic <= alpha:
            return optimistic
        pessimistic = (summed + remaining * lo) / 6.0
        if pessimistic >= beta:
            return pessimistic
        weight = float(count)
        rest = remaining - weight
        # window on this group's contribution t = flip(best): the total can
        # only land in (alpha, beta) if t lies in (t_floor, t_ceil)
        t_floor = (6.0 * alpha - summed - rest * hi) / weight
        t_ceil = (6.0 * beta - summed - rest * lo) / weight
        # flip is decreasing, so the child (opponent-perspective) window swaps
        child_alpha = flip_const - t_ceil
        child_beta = flip_const - t_floor
        if child_alpha < lo:
            child_alpha = lo
        if child_beta > hi:
            child_beta = hi
        best = lo
        a = child_alpha
        cut = False
        for label in labels:
            src = pos[base + label]
            for dst in neigh[src]:
                undo = eng.make(mover, label, dst)
                eng.nodes += 1
                if undo[4]:
                    value = hi
                elif depth == 1:
                    value = ctx.leaf(mover)
                else:
                    value = _chance_star(ctx, mover, depth - 1, a, child_beta)
                eng.unmake(undo)
                if value > best:
                    best = value
                    if best >= child_beta:
                        cut = True
                        break
                    if best > a:
                        a = best
            if cut:
                break
        summed += weight * (flip_const - best)
        remaining = rest
    return summed / 6.0


def _move_value(ctx: _Context, mover: int, depth: int, undo, alpha: float, prune: bool) -> float:
    """Value of an already-made move from the mover's perspective."""
    if undo[4]:
        return ctx.hi
    if depth == 1:
        return ctx.leaf(mover)
    if prune:
        return _chance_star(ctx, mover, depth - 1, alpha, ctx.hi)
    return _chance(ctx, mover, depth - 1)


def _root_scan(
    ctx: _Context, mover: int, dice: int, depth: int, prune: bool,
    deadline_at: float | None = None,
) -> tuple[Move, float] | None:
    """Argmax over legal root moves; None when the deadline expires mid-scan."""
    eng = ctx.engine
    neigh = _NEIGH[mover]
    best_value = ctx.lo - 1.0
    best_move: Move | None = None
    for label in _MOVABLE[eng.alive[mover]][dice - 1]:
        src = eng.pos[mover * 6 + label - 1]
        for dst in neigh[src]:
            if (
                deadline_at is not None
                and best_move is not None
                and time.perf_counter() >= deadline_at
            ):
                return None
            undo = eng.make(mover, label, dst)
            eng.nodes += 1
            alpha = best_value if best_value > ctx.lo else ctx.lo
            value = _move_value(ctx, mover, depth, undo, alpha, prune)
            eng.unmake(undo)
            if value > best_value:
                best_value = value
                best_move = Move(label, divmod(src, 5), divmod(dst, 5))
    assert best_move is not None
    return best_move, best_value


def search_value(
    state: BoardState,
    just_moved: Color,
    depth: int,
    kind: EvaluatorKind,
    tables: Tables,
    prune: bool = False,
) -> float:
    """Expectimax value for the side that just moved.

    Terminal states score win/loss regardless of depth; depth 0 falls back
    to the static evaluator; otherwise the opponent's dice are averaged over
    their best replies.
    """
    winner = status(state)
    if winner is not None:
        return kind.win_value if winner is just_moved else kind.loss_value
    ctx = _Context(Engine(state), kind, tables)
    jm = 0 if just_moved is Color.RED else 1
    if depth <= 0:
        return ctx.leaf(jm)
    if prune:
        return _chance_star(ctx, jm, depth, ctx.lo, ctx.hi)
    return _chance(ctx, jm, depth)


def best_move(
    state: BoardState,
    mover: Color,
    dice: int,
    limits: SearchLimits,
    kind: EvaluatorKind,
    tables: Tables,
    prune: bool = False,
) -> SearchResult:
    """Best move for the rolled dice under a depth or time limit.

    Time mode deepens iteratively from depth 1 and keeps the deepest fully
    completed iteration; depth 1 always completes, so a legal move is always
    returned. Ties go to the first move in generation order.
    """
    if status(state) is not None:
        raise ValueError("game over")
    if not 1 <= dice <= 6:
        raise ValueError(f"dice must be 1..6, got {dice}")
    ctx = _Context(Engine(state), kind, tables)
    side = 0 if mover is Color.RED else 1

    if limits.depth is not None:
        found = _root_scan(ctx, side, dice, limits.depth, prune)
        assert found is not None
        move, value = found
        return SearchResult(move, value, limits.depth, ctx.engine.nodes)

    deadline_at = time.perf_counter() + limits.deadline
    found = _root_scan(ctx, side, dice, 1, prune)  # depth 1 ignores the clock
    assert found is not None
    move, value = found
    reached = 1
    for depth in range(2, MAX_DEPTH + 1):
        if time.perf_counter() >= deadline_at:
            break
        attempt = _root_scan(ctx, side, dice, depth, prune, deadline_at)
        if attempt is None:
            break
        move, value = attempt
        reached = depth
    return SearchResult(move, value, reached, ctx.engine.nodes)


def time_budget(remaining: float, steps_taken: int) -> float:
    """Per-move budget: remaining time over max(15 - steps taken, 3)."""
    if remaining <= 0:
        raise ValueError("remaining time must be positive")
    if steps_taken < 0:
        raise ValueError("steps_taken must be >= 0")
    return remaining / max(15 - steps_taken, 3)
