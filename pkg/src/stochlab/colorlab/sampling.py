"""Exact sequential sampling from a cylinder measure.

Each letter is drawn from the conditional law given the sampled prefix.
The conditional weights are exact rationals put over a common denominator
and compared against a uniform random integer, so the sampled law is the
cylinder law exactly (no float thresholds).  Deterministic per seed.
"""

from __future__ import annotations

import random
from math import lcm


def sample_windows(measure, n: int, count: int, seed: int) -> list[tuple[int, ...]]:
    """Draw ``count`` independent length-n words; deterministic given seed."""
    if n < 0:
        raise ValueError("window length must be nonnegative")
    if count < 0:
        raise ValueError("count must be nonnegative")
    rng = random.Random(seed)
    thresholds: dict[tuple[int, ...], tuple[list[int], int]] = {}

    def weights_for(prefix):
        got = thresholds.get(prefix)
        if got is None:
            probs = [measure.prob(prefix + (a,)) for a in range(1, measure.q + 1)]
            denom = 1
            for p in probs:
                denom = lcm(denom, p.denominator)
            ws = [int(p * denom) for p in probs]
            got = thresholds[prefix] = (ws, sum(ws))
        return got

    out = []
    for _ in range(count):
        word: tuple[int, ...] = ()
        for _ in range(n):
            ws, total = weights_for(word)
            r = rng.randrange(total)
            a = 0
            while r >= ws[a]:
                r -= ws[a]
                a += 1
            word = word + (a + 1,)
        out.append(word)
    return out


def sample_window(measure, n: int, seed: int) -> tuple[int, ...]:
    """Draw one length-n word from the measure's window law."""
    return sample_windows(measure, n, 1, seed)[0]
