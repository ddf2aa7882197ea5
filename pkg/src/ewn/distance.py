"""Distance model: collapse boards into per-label goal distances.

Under shortest-path movement every move lowers a piece's Chebyshev distance
to its goal corner by exactly one, so two boards whose like-labeled pieces
sit at equal distances behave identically. Each side therefore collapses to
a 6-entry distance array, and with distances 0..4 plus "captured" there are
only 5**6 = 15625 distinct arrays per side, indexable by a base-5 code.

A distance array entry is None (captured) or an int 0..4. Entry 0 means the
piece stands on its goal corner: the position is terminal and the array is
deliberately not encodable, which is what lets "captured" reuse digit 0
without collisions.
"""

from __future__ import annotations

from .board import BoardState, Color, Square

TABLE_SIZE = 5 ** 6  # 15625 distance arrays per side
POW5 = (1, 5, 25, 125, 625, 3125)

DistanceArray = tuple  # 6 entries, each None (captured) or int 0..4


def distance_to_goal(color: Color, square: Square) -> int:
    """Chebyshev distance from a square to the color's goal corner."""
    r, c = square
    if not (0 <= r < 5 and 0 <= c < 5):
        raise ValueError(f"square {square} off board")
    if color is Color.RED:
        return max(4 - r, 4 - c)
    return max(r, c)


def collapse(state: BoardState, color: Color) -> DistanceArray:
    """Distance array of one side; captured pieces map to None."""
    side = state.pieces(color)
    return tuple(
        None if sq is None else distance_to_goal(color, sq) for sq in side
    )


def encode(arr: DistanceArray) -> int:
    """Base-5 index of a distance array, captured entries as digit 0.

    Arrays containing a distance-0 entry are terminal and refused, which
    keeps the encoding collision-free.
    """
    if len(arr) != 6:
        raise ValueError(f"distance array must have 6 entries, got {len(arr)}")
    index = 0
    for label, d in enumerate(arr, start=1):
        if d is None:
            continue
        if d == 0:
            raise ValueError("terminal array not encodable (piece on goal corner)")
        if not 1 <= d <= 4:
            raise ValueError(f"entry for label {label} out of range: {d!r}")
        index += d * POW5[label - 1]
    return index


def decode(index: int) -> DistanceArray:
    """Inverse of encode over the valid domain; digit 0 decodes to captured."""
    if not 0 <= index < TABLE_SIZE:
        raise ValueError(f"index must be 0..{TABLE_SIZE - 1}, got {index}")
    out = []
    for label in range(6):
        d = (index // POW5[label]) % 5
        out.append(d if d else None)
    return tuple(out)
