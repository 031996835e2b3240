"""Pixel-space primitives.

All emitted geometry is quantized to 1/256 px. Dyadic coordinates make
edge arithmetic exact in float64, so tangency between adjacent marks is
bit-exact and the non-overlap guarantee can be checked with strict
comparisons instead of epsilons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SUBPIXEL = 256  # geometry grid: 1/256 px


def snap_down(v: float) -> float:
    """Largest 1/256-px multiple <= v. Used for sizes so grids never overflow."""
    return math.floor(v * SUBPIXEL) / SUBPIXEL


def snap_nearest(v: float) -> float:
    """Nearest 1/256-px multiple. Used for free positions."""
    return round(v * SUBPIXEL) / SUBPIXEL


@dataclass(frozen=True)
class Rect:
    """Axis-aligned pixel rectangle, y-down."""

    x: float
    y: float
    w: float
    h: float

    @property
    def x1(self) -> float:
        return self.x + self.w

    @property
    def y1(self) -> float:
        return self.y + self.h

    @property
    def cx(self) -> float:
        return self.x + self.w / 2

    @property
    def cy(self) -> float:
        return self.y + self.h / 2

    def contains(self, other: "Rect", slack: float = 0.0) -> bool:
        return (
            other.x >= self.x - slack
            and other.y >= self.y - slack
            and other.x1 <= self.x1 + slack
            and other.y1 <= self.y1 + slack
        )

    def intersects_closed(self, other: "Rect") -> bool:
        """True when the closed rectangles share at least a boundary point."""
        return (
            self.x <= other.x1
            and other.x <= self.x1
            and self.y <= other.y1
            and other.y <= self.y1
        )

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y, "w": self.w, "h": self.h}
