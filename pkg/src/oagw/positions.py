"""Positions of the two block constructions.

Both groups are finitely supported direct sums indexed by a linearly
ordered set of positions.  The left part (``G2``) is a reverse-omega
chain of (circle, square) pairs; pair ``m`` sits further left for larger
``m`` and the pair at ``m = 0`` is the rightmost one.  The right part
(``G1``) is an omega chain of blocks; block ``b`` consists of squares
``s[0], s[1], ...`` followed by a single terminal circle.

Positions further left are more significant for the lexicographic
order.  ``sort_key`` realises the total order: every G2 position
precedes every G1 position, G2 pairs descend with ``m``, and inside a
G1 block every square precedes the block circle.
"""

from __future__ import annotations

from dataclasses import dataclass

G2 = "G2"
G1 = "G1"
CIRCLE = "c"
SQUARE = "s"


@dataclass(frozen=True)
class Position:
    area: str  # G2 | G1
    index: int  # pair m for G2, block b for G1
    shape: str  # CIRCLE | SQUARE
    slot: int = 0  # square number inside a G1 block; 0 elsewhere

    def __post_init__(self) -> None:
        if self.area not in (G2, G1):
            raise ValueError(f"bad area {self.area!r}")
        if self.shape not in (CIRCLE, SQUARE):
            raise ValueError(f"bad shape {self.shape!r}")
        if self.index < 0:
            raise ValueError("negative block index")
        if self.slot < 0:
            raise ValueError("negative square slot")
        if self.slot and not (self.area == G1 and self.shape == SQUARE):
            raise ValueError("only G1 squares carry a slot")
        if self.area == G2:
            key = (0, -self.index, 0 if self.shape == CIRCLE else 1, 0)
        elif self.shape == SQUARE:
            key = (1, self.index, 0, self.slot)
        else:
            key = (1, self.index, 1, 0)
        object.__setattr__(self, "_key", key)

    def sort_key(self) -> tuple:
        return self._key  # type: ignore[attr-defined]

    @property
    def is_circle(self) -> bool:
        return self.shape == CIRCLE

    @property
    def is_square(self) -> bool:
        return self.shape == SQUARE

    def successor(self) -> "Position":
        """The position immediately to the right."""
        if self.area == G2:
            if self.shape == CIRCLE:
                return g2_square(self.index)
            if self.index == 0:
                return g1_square(0, 0)
            return g2_circle(self.index - 1)
        if self.shape == SQUARE:
            return g1_square(self.index, self.slot + 1)
        return g1_square(self.index + 1, 0)

    def next_circle(self) -> "Position":
        """The first circle position strictly to the right."""
        if self.area == G2:
            if self.shape == CIRCLE:
                if self.index == 0:
                    return g1_circle(0)
                return g2_circle(self.index - 1)
            # square of pair m: next circle is pair m-1's, or G1 block 0's
            if self.index == 0:
                return g1_circle(0)
            return g2_circle(self.index - 1)
        if self.shape == SQUARE:
            return g1_circle(self.index)
        return g1_circle(self.index + 1)

    def __str__(self) -> str:
        if self.area == G2:
            return f"G2[{self.index}].{self.shape}"
        if self.shape == SQUARE:
            return f"G1[{self.index}].s[{self.slot}]"
        return f"G1[{self.index}].c"


def g2_circle(m: int) -> Position:
    return Position(G2, m, CIRCLE)


def g2_square(m: int) -> Position:
    return Position(G2, m, SQUARE)


def g1_square(b: int, p: int) -> Position:
    return Position(G1, b, SQUARE, p)


def g1_circle(b: int) -> Position:
    return Position(G1, b, CIRCLE)


def pos_lt(a: Position, b: Position) -> bool:
    return a.sort_key() < b.sort_key()


#: The one circle position that the left-shift embedding forces to zero.
CRITICAL_CIRCLE = g2_circle(0)
