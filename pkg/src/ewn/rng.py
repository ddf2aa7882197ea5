"""Seedable 64-bit generator for dice and placement shuffles.

SplitMix64 (Steele, Lea, Flood 2014): a single 64-bit counter advanced by
the golden-gamma constant, output scrambled by two xor-multiply rounds. It
is tiny, portable, and stateable from any 64-bit seed, which keeps every
game of a match independently reproducible from (match seed, game index).
"""

from __future__ import annotations

_MASK = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4B9F9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def dice(self) -> int:
        # modulo bias over 2**64 is ~3e-19, irrelevant for game dice
        return self.next_u64() % 6 + 1

    def randrange(self, n: int) -> int:
        return self.next_u64() % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]


def game_seed(match_seed: int, game_index: int) -> int:
    """Per-game stream seed: match seed xor game index."""
    return (match_seed ^ game_index) & _MASK
