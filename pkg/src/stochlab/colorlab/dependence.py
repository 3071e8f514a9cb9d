"""Exhaustive finite-window independence checks for exact window measures.

A measure here is anything with a color count ``q`` and a
``scaled_window(n)`` method returning integer numerators over a common
denominator for every proper word of length ``n``.  Distances are over
window positions; a pair of position sets is tested by comparing the
joint marginal against the product of the two marginals for every color
assignment, as exact integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class DependenceWitness:
    """A factorization failure: positions are 1-based within the window."""

    window: int
    set_a: tuple[int, ...]
    set_b: tuple[int, ...]
    assignment: tuple[tuple[int, int], ...]  # (position, color) pairs
    joint: Fraction
    product: Fraction


@dataclass(frozen=True)
class DependenceReport:
    k: int
    nmax: int
    holds: bool
    witness: DependenceWitness | None
    pairs_checked: int

    def to_dict(self) -> dict:
        out = {"k": self.k, "nmax": self.nmax, "holds": self.holds,
               "pairsChecked": self.pairs_checked}
        if self.witness is not None:
            w = self.witness
            out["witness"] = {
                "window": w.window,
                "A": list(w.set_a),
                "B": list(w.set_b),
                "assignment": {str(p): c for p, c in w.assignment},
                "joint": str(w.joint),
                "product": str(w.product),
            }
        return out


def marginal_tables(scaled: dict[tuple[int, ...], int], n: int, q: int):
    """Integer marginal numerators for every subset of window positions.

    ``tables[mask]`` maps color assignments of the positions in ``mask``
    (ascending position order) to numerators; zero entries are omitted.
    Built by summing out one position at a time from the full window.
    """
    full = (1 << n) - 1
    tables: dict[int, dict[tuple[int, ...], int]] = {full: scaled}
    for mask in sorted(range(full), key=lambda m: -bin(m).count("1")):
        missing = (~mask) & full
        j_bit = missing & -missing
        parent = mask | j_bit
        # index of the summed-out position within the parent's sorted positions
        idx = bin(parent & (j_bit - 1)).count("1")
        shrunk: dict[tuple[int, ...], int] = {}
        for key, val in tables[parent].items():
            sub = key[:idx] + key[idx + 1 :]
            shrunk[sub] = shrunk.get(sub, 0) + val
        tables[mask] = shrunk
    return tables


def _too_close(mask_a: int, mask_b: int, k: int) -> bool:
    spread = mask_a
    for d in range(1, k + 1):
        spread |= mask_a << d | mask_a >> d
    return bool(spread & mask_b)


def check_k_dependence(measure, k: int, nmax: int) -> DependenceReport:
    """Exact k-dependence check over all windows of length <= nmax.

    For every pair of nonempty position sets A, B with every cross
    distance strictly greater than k, verifies that the joint law of the
    colors on A u B factorizes over A and B, for every color assignment.
    Returns the first violation found (windows ascending, then position
    sets, then assignments in lexicographic order).

    Cost: the pair enumeration alone is ~3^nmax and each pair checks
    q^(|A| + |B|) assignments, so nmax bounds the blow-up; nmax = 8 at
    q = 4 is a few seconds.  A report with holds=True certifies only the
    windows up to nmax; it is evidence, not a proof, for larger separations.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if nmax < k + 2:
        raise ValueError(f"nmax must be at least k+2={k + 2} to contain a testable pair")
    q = measure.q
    pairs_checked = 0
    for n in range(2, nmax + 1):
        scaled, denom = measure.scaled_window(n)
        tables = marginal_tables(scaled, n, q)
        positions = {m: [i for i in range(n) if m >> i & 1] for m in range(1, 1 << n)}
        for mask_a in range(1, 1 << n):
            comp = ((1 << n) - 1) & ~mask_a
            mask_b = comp
            while mask_b:
                # dedupe unordered pairs: A holds the smallest position
                if (mask_b & -mask_b) > (mask_a & -mask_a) and not _too_close(mask_a, mask_b, k):
                    pairs_checked += 1
                    witness = _check_pair(
                        tables, denom, n, q,
                        positions[mask_a], positions[mask_b],
                        mask_a, mask_b,
                    )
                    if witness is not None:
                        return DependenceReport(k, nmax, False, witness, pairs_checked)
                mask_b = (mask_b - 1) & comp
    return DependenceReport(k, nmax, True, None, pairs_checked)


def _check_pair(tables, denom, n, q, pos_a, pos_b, mask_a, mask_b):
    mask_u = mask_a | mask_b
    pos_u = sorted(pos_a + pos_b)
    in_a = [i for i, p in enumerate(pos_u) if p in set(pos_a)]
    in_b = [i for i, p in enumerate(pos_u) if p in set(pos_b)]
    t_u, t_a, t_b = tables[mask_u], tables[mask_a], tables[mask_b]
    for key in itertools.product(range(1, q + 1), repeat=len(pos_u)):
        joint = t_u.get(key, 0)
        prod = t_a.get(tuple(key[i] for i in in_a), 0) * t_b.get(tuple(key[i] for i in in_b), 0)
        if joint * denom != prod:
            return DependenceWitness(
                window=n,
                set_a=tuple(p + 1 for p in pos_a),
                set_b=tuple(p + 1 for p in pos_b),
                assignment=tuple((p + 1, c) for p, c in zip(pos_u, key)),
                joint=Fraction(joint, denom),
                product=Fraction(prod, denom * denom),
            )
    return None
