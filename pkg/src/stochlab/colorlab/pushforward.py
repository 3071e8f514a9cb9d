"""Local recoloring map that removes the fourth color from the 4-color measure.

Each letter 4 is replaced by the smallest color in {1,2,3} different from
both of its original neighbors (which are never 4, since equal neighbors
are forbidden).  The map needs both neighbors, so a length-n output window
is read off the interior of a length-(n+2) source window.
"""

from __future__ import annotations

from fractions import Fraction

from .measure import CylinderMeasure, recursion_measure
from .words import is_proper


def eliminate_fours_letter(left: int, mid: int, right: int) -> int:
    """Image of one interior letter given its original neighbors."""
    if mid != 4:
        return mid
    for c in (1, 2, 3):
        if c != left and c != right:
            return c
    raise AssertionError("unreachable: two neighbors cannot cover {1,2,3}")


class EliminateFoursMeasure:
    """Window distributions of the recolored process, as an exact measure."""

    q = 3

    def __init__(self, source: CylinderMeasure | None = None):
        self.source = source if source is not None else recursion_measure(4)
        if self.source.q != 4:
            raise ValueError("the elimination map acts on a 4-color measure")
        self._windows: dict[int, tuple[dict, int]] = {}

    def scaled_window(self, n: int) -> tuple[dict[tuple[int, ...], int], int]:
        got = self._windows.get(n)
        if got is not None:
            return got
        src, denom = self.source.scaled_window(n + 2)
        out: dict[tuple[int, ...], int] = {}
        for word, num in src.items():
            image = tuple(
                eliminate_fours_letter(word[i - 1], word[i], word[i + 1])
                for i in range(1, n + 1)
            )
            out[image] = out.get(image, 0) + num
        self._windows[n] = (out, denom)
        return out, denom

    def window(self, n: int) -> dict[tuple[int, ...], Fraction]:
        scaled, denom = self.scaled_window(n)
        return {w: Fraction(v, denom) for w, v in scaled.items()}

    def prob(self, letters) -> Fraction:
        letters = tuple(letters)
        if not is_proper(letters):
            return Fraction(0)
        return self.window(len(letters)).get(letters, Fraction(0))


def eliminate_fours_pushforward(n: int, source: CylinderMeasure | None = None):
    """Exact distribution of a length-n window of the recolored process."""
    if n < 0:
        raise ValueError("window length must be nonnegative")
    return EliminateFoursMeasure(source).window(n)
