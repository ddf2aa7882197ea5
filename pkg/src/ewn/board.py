"""Rules engine for EinStein Würfelt Nicht.

The board is 5x5 with coordinates (row, col) counted from the top-left
corner. Red starts in the top-left area and races to (4, 4); blue starts in
the bottom-right area and races to (0, 0). Red moves one step down, right,
or diagonally down-right; blue one step up, left, or diagonally up-left.
Landing on any piece captures it, friendly fire included. When the rolled
label is off the board, the nearest surviving lower and higher labels may
move instead. A side wins by reaching its goal corner or by capturing every
opposing piece; draws are impossible.

``BoardState`` is an immutable value and every operation here is a pure
function, so states can be freely shared across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

BOARD_SIZE = 5
LABELS = (1, 2, 3, 4, 5, 6)

Square = tuple[int, int]

# Start squares in label order 1..6; blue mirrors red through the center.
RED_START: tuple[Square, ...] = ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0))
BLUE_START: tuple[Square, ...] = tuple((4 - r, 4 - c) for r, c in RED_START)


class Color(Enum):
    RED = "R"
    BLUE = "B"

    @property
    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    @property
    def goal(self) -> Square:
        return (4, 4) if self is Color.RED else (0, 0)

    @property
    def directions(self) -> tuple[Square, Square, Square]:
        """Step offsets in canonical order: row-step, col-step, diagonal."""
        if self is Color.RED:
            return ((1, 0), (0, 1), (1, 1))
        return ((-1, 0), (0, -1), (-1, -1))


def on_board(sq: Square) -> bool:
    return 0 <= sq[0] < BOARD_SIZE and 0 <= sq[1] < BOARD_SIZE


@dataclass(frozen=True)
class Move:
    label: int
    from_sq: Square
    to_sq: Square


@dataclass(frozen=True)
class BoardState:
    """Placement of both sides: per label 1..6 either a square or None (captured)."""

    red: tuple[Square | None, ...]
    blue: tuple[Square | None, ...]

    def __post_init__(self) -> None:
        for name, side in (("red", self.red), ("blue", self.blue)):
            if len(side) != 6:
                raise ValueError(f"{name} placement must have 6 entries, got {len(side)}")
            for label, sq in enumerate(side, start=1):
                if sq is not None and not on_board(sq):
                    raise ValueError(f"{name} piece {label} off board at {sq}")
        seen: dict[Square, str] = {}
        for color, side in ((Color.RED, self.red), (Color.BLUE, self.blue)):
            for label, sq in enumerate(side, start=1):
                if sq is None:
                    continue
                if sq in seen:
                    raise ValueError(f"square {sq} occupied by both {seen[sq]} and {color.value}{label}")
                seen[sq] = f"{color.value}{label}"

    @classmethod
    def from_placements(
        cls,
        red: Mapping[int, Square],
        blue: Mapping[int, Square],
    ) -> "BoardState":
        """Build a state from label -> square mappings; missing labels are captured."""
        return cls(
            red=tuple(red.get(lab) for lab in LABELS),
            blue=tuple(blue.get(lab) for lab in LABELS),
        )

    def pieces(self, color: Color) -> tuple[Square | None, ...]:
        return self.red if color is Color.RED else self.blue

    def alive_labels(self, color: Color) -> tuple[int, ...]:
        side = self.pieces(color)
        return tuple(lab for lab in LABELS if side[lab - 1] is not None)

    def piece_at(self, sq: Square) -> tuple[Color, int] | None:
        for color in (Color.RED, Color.BLUE):
            side = self.pieces(color)
            for label in LABELS:
                if side[label - 1] == sq:
                    return (color, label)
        return None


def initial_board(labels: Iterable[int] | None = None) -> BoardState:
    """The standard symmetric opening position.

    ``labels`` optionally permutes which label sits on which start square;
    the same permutation is mirrored onto both sides so the start stays
    symmetric. Defaults to 1..6 in order.
    """
    order = tuple(labels) if labels is not None else LABELS
    if sorted(order) != list(LABELS):
        raise ValueError(f"labels must be a permutation of 1..6, got {order!r}")
    red: dict[int, Square] = {}
    blue: dict[int, Square] = {}
    for i, lab in enumerate(order):
        red[lab] = RED_START[i]
        blue[lab] = BLUE_START[i]
    return BoardState.from_placements(red, blue)


def status(state: BoardState) -> Color | None:
    """The winning color, or None while the game is ongoing."""
    if (4, 4) in state.red or not any(sq is not None for sq in state.blue):
        return Color.RED
    if (0, 0) in state.blue or not any(sq is not None for sq in state.red):
        return Color.BLUE
    return None


def movable_labels(alive: Iterable[int], dice: int) -> frozenset[int]:
    """Labels allowed to move for a dice roll.

    An exact match moves itself; otherwise the nearest surviving label below
    and the nearest above the roll are both allowed.
    """
    if not 1 <= dice <= 6:
        raise ValueError(f"dice must be 1..6, got {dice}")
    alive_set = frozenset(alive)
    if not alive_set:
        raise ValueError("no pieces alive")
    if dice in alive_set:
        return frozenset((dice,))
    out = set()
    lower = max((lab for lab in alive_set if lab < dice), default=None)
    higher = min((lab for lab in alive_set if lab > dice), default=None)
    if lower is not None:
        out.add(lower)
    if higher is not None:
        out.add(higher)
    return frozenset(out)


def legal_moves(state: BoardState, mover: Color, dice: int) -> list[Move]:
    """All legal moves, ordered by label then row-step, col-step, diagonal."""
    if status(state) is not None:
        raise ValueError("game over")
    side = state.pieces(mover)
    labels = movable_labels(state.alive_labels(mover), dice)
    moves: list[Move] = []
    for label in sorted(labels):
        src = side[label - 1]
        assert src is not None
        for dr, dc in mover.directions:
            dst = (src[0] + dr, src[1] + dc)
            if on_board(dst):
                moves.append(Move(label, src, dst))
    return moves


def apply_move(state: BoardState, mover: Color, move: Move) -> BoardState:
    """Apply a move; any piece on the destination square is captured."""
    side = state.pieces(mover)
    src = side[move.label - 1]
    if src is None or src != move.from_sq:
        raise ValueError(
            f"illegal move: {mover.value}{move.label} is not at {move.from_sq}"
        )
    if not on_board(move.to_sq):
        raise ValueError(f"illegal move: destination {move.to_sq} off board")
    delta = (move.to_sq[0] - src[0], move.to_sq[1] - src[1])
    if delta not in mover.directions:
        raise ValueError(
            f"illegal move: {move.from_sq}->{move.to_sq} is not a {mover.value} step"
        )

    def relocate(side_sqs: tuple[Square | None, ...], own: bool) -> tuple[Square | None, ...]:
        out = list(side_sqs)
        for i, sq in enumerate(out):
            if sq == move.to_sq:
                out[i] = None  # captured, regardless of color
        if own:
            out[move.label - 1] = move.to_sq
        return tuple(out)

    if mover is Color.RED:
        return BoardState(red=relocate(state.red, True), blue=relocate(state.blue, False))
    return BoardState(red=relocate(state.red, False), blue=relocate(state.blue, True))


def parse_board(text: str) -> BoardState:
    """Parse board notation: 5 rows split by '/', 5 tokens per row.

    Tokens are '.' (empty), 'R1'..'R6', or 'B1'..'B6'.
    """
    rows = text.split("/")
    if len(rows) != 5:
        raise ValueError(f"expected 5 rows separated by '/', got {len(rows)}")
    red: dict[int, Square] = {}
    blue: dict[int, Square] = {}
    for r, row in enumerate(rows):
        tokens = row.split()
        if len(tokens) != 5:
            raise ValueError(f"row {r}: expected 5 tokens, got {len(tokens)}")
        for c, tok in enumerate(tokens):
            if tok == ".":
                continue
            if len(tok) == 2 and tok[0] in "RB" and tok[1].isdigit():
                label = int(tok[1])
                if not 1 <= label <= 6:
                    raise ValueError(f"row {r}, col {c}: label out of range in {tok!r}")
                side = red if tok[0] == "R" else blue
                if label in side:
                    raise ValueError(f"duplicate piece {tok}")
                side[label] = (r, c)
            else:
                raise ValueError(f"row {r}, col {c}: bad token {tok!r}")
    return BoardState.from_placements(red, blue)


def format_board(state: BoardState) -> str:
    """Canonical text form; inverse of parse_board."""
    grid = [["." for _ in range(5)] for _ in range(5)]
    for color in (Color.RED, Color.BLUE):
        side = state.pieces(color)
        for label in LABELS:
            sq = side[label - 1]
            if sq is not None:
                grid[sq[0]][sq[1]] = f"{color.value}{label}"
    return " / ".join(" ".join(row) for row in grid)


def render_grid(state: BoardState) -> str:
    """Multi-line board picture for interactive play."""
    lines = ["    0  1  2  3  4"]
    for r in range(5):
        cells = []
        for c in range(5):
            piece = state.piece_at((r, c))
            cells.append(f"{piece[0].value}{piece[1]}" if piece else " .")
        lines.append(f" {r}  " + " ".join(cells))
    return "\n".join(lines)
