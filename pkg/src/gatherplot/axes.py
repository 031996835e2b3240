"""Bracket-style interval ticks for segmented axes.

A gathered axis maps pixel ranges, not points, to data values; brackets
externalize that by spanning each segment with two arms pointing at the plot.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .gather import GatherTransform

ARM_LENGTH = 6  # px, arms pointing toward the plot
INSET = 2       # px trimmed from each segment end so neighbors never touch


class Axis(str, Enum):
    X = "x"
    Y = "y"


@dataclass(frozen=True)
class BracketTick:
    axis: Axis
    pixel_interval: tuple[float, float]
    label: str
    arm_length: float = ARM_LENGTH
    inset: float = INSET

    def to_json(self) -> dict:
        return {
            "axis": self.axis.value,
            "lo": self.pixel_interval[0],
            "hi": self.pixel_interval[1],
            "label": self.label,
            "arm_length": self.arm_length,
            "inset": self.inset,
        }


def bracket_ticks(
    transform: GatherTransform, axis: Axis, offset: float = 0.0
) -> list[BracketTick]:
    """One bracket per segment, spanning [lo + inset, hi - inset).

    Segments too narrow for the inset collapse to a single arm pair at the
    midpoint. `offset` shifts axis-local intervals into plot coordinates.
    """
    ticks = []
    for seg in transform.segments:
        lo = seg.lo + offset + INSET
        hi = seg.hi + offset - INSET
        if hi < lo:
            mid = (seg.lo + seg.hi) / 2 + offset
            lo = hi = mid
        ticks.append(BracketTick(axis=axis, pixel_interval=(lo, hi), label=seg.value_key))
    return ticks
