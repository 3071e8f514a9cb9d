"""Exact cylinder probabilities of the stationary proper q-colorings.

Two constructions of the same family of measures:

* ``recursion``: the deletion recursion.  A proper word's probability is a
  per-length normalizing constant times the sum of the probabilities of
  its one-letter deletions; improper words get 0 and the empty word gets 1.
  The normalizer is solved from the total-mass-one condition at each
  length, never assumed, and cross-checked against the conjectured closed
  form ``1/(n(q-2)+2)``.

* ``formula``: for ``q = 4`` only, the explicit sign-matrix formula: a
  signed sum over dispersed Dyck words of run-flip descent probabilities.

Everything in this module is exact rational arithmetic; floats never
appear.  Memo tables are plain dicts: reads and same-key inserts are
atomic under the GIL and every key maps to a unique value, so concurrent
use from threads is safe and agrees with sequential evaluation.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .descent import descent_set_probability
from .words import (
    SignMatrix,
    boundary_sign_product,
    dispersed_dyck_words,
    flip_runs,
    is_proper,
)

ZERO = Fraction(0)
ONE = Fraction(1)

# range over which the conjectured closed-form normalizer must agree with
# the mass-one computation (a mismatch aborts the run)
NORMALIZER_CHECK_Q = range(2, 7)
NORMALIZER_CHECK_N = 10


class NormalizerMismatchError(RuntimeError):
    """The mass-computed normalizer disagrees with the closed form."""


def canonical_form(letters) -> tuple[int, ...]:
    """Relabel colors by order of first appearance (1, 2, ...)."""
    relabel: dict[int, int] = {}
    out = []
    for a in letters:
        if a not in relabel:
            relabel[a] = len(relabel) + 1
        out.append(relabel[a])
    return tuple(out)


def _orbit_size(letters, q: int) -> int:
    """Number of distinct recolorings of a word under color permutations."""
    d = len(set(letters))
    size = 1
    for i in range(d):
        size *= q - i
    return size


def proper_words(q: int, n: int):
    """Yield every proper word of length n over {1..q}, lexicographically."""
    if n == 0:
        yield ()
        return
    word = [0] * n

    def grow(i: int):
        for a in range(1, q + 1):
            if i > 0 and word[i - 1] == a:
                continue
            word[i] = a
            if i + 1 == n:
                yield tuple(word)
            else:
                yield from grow(i + 1)

    yield from grow(0)


def _canonical_proper_words(q: int, n: int):
    """Yield (word, orbit size) over canonical representatives of the
    color-permutation orbits of proper words of length n."""
    if n == 0:
        yield (), 1
        return
    word = [0] * n

    def grow(i: int, used: int):
        top = min(used + 1, q)
        for a in range(1, top + 1):
            if i > 0 and word[i - 1] == a:
                continue
            word[i] = a
            u = max(used, a)
            if i + 1 == n:
                yield tuple(word), _orbit_size(word, q)
            else:
                yield from grow(i + 1, u)

    yield from grow(0, 0)


class CylinderMeasure:
    """Memoized exact map from color words to cylinder probabilities.

    ``source`` selects the construction ('recursion' for any q >= 2,
    'formula' for q = 4).  The memo is keyed by the word itself; passing
    ``canonicalize=True`` keys it by the color-canonicalized word instead,
    a pure optimization justified by the color-permutation symmetry of the
    recursion that must not change any value (tested).  The formula source
    always memoizes raw words.
    """

    def __init__(self, q: int, source: str = "recursion", canonicalize: bool = False):
        if q < 2:
            raise ValueError(f"need at least 2 colors, got q={q}")
        if source not in ("recursion", "formula"):
            raise ValueError(f"unknown source {source!r}")
        if source == "formula":
            if q != 4:
                raise ValueError("the explicit formula is only defined for q=4")
            if canonicalize:
                raise ValueError("the formula source does not support canonicalized memoization")
        self.q = q
        self.source = source
        self.canonicalize = canonicalize
        self.table: dict[tuple[int, ...], Fraction] = {(): ONE}
        self._normalizers: dict[int, Fraction] = {}

    def prob(self, letters) -> Fraction:
        """Exact probability of observing ``letters`` in a window.

        Improper words have probability 0 under either construction (the
        raw formula is only asserted on proper words; as a measure value
        the improper mass is zero).
        """
        letters = tuple(letters)
        for a in letters:
            if not 1 <= a <= self.q:
                raise ValueError(f"letter {a} outside 1..{self.q}")
        if not is_proper(letters):
            return ZERO
        if self.source == "formula":
            value = self.table.get(letters)
            if value is None:
                value = formula_cylinder_probability(letters)
                self.table[letters] = value
            return value
        return self._recursion_prob(letters)

    def _recursion_prob(self, letters: tuple[int, ...]) -> Fraction:
        if self.canonicalize:
            letters = canonical_form(letters)
        value = self.table.get(letters)
        if value is not None:
            return value
        n = len(letters)
        total = ZERO
        for i in range(n):
            sub = letters[:i] + letters[i + 1 :]
            if is_proper(sub):
                total += self._recursion_prob(sub)
        value = self.normalizer(n) * total
        self.table[letters] = value
        return value

    def normalizer(self, n: int) -> Fraction:
        """The length-n constant, solved from total mass one at length n.

        The sum of probabilities over all words of length n (only proper
        words contribute) must be 1; the constant is the reciprocal of the
        deletion sums aggregated over color-permutation orbits.  For
        q in 2..6 and n <= 10 the result is checked against the closed
        form 1/(n(q-2)+2) and a mismatch raises NormalizerMismatchError.
        """
        if self.source == "formula":
            raise ValueError("normalizers belong to the recursion construction")
        if n < 1:
            raise ValueError("normalizers are defined for lengths >= 1")
        got = self._normalizers.get(n)
        if got is not None:
            return got
        total = ZERO
        for word, orbit in _canonical_proper_words(self.q, n):
            deletion_sum = ZERO
            for i in range(n):
                sub = word[:i] + word[i + 1 :]
                if is_proper(sub):
                    deletion_sum += self._recursion_prob(canonical_form(sub))
            total += orbit * deletion_sum
        if total == 0:
            raise NormalizerMismatchError(
                f"mass condition degenerate at q={self.q}, n={n}: empty deletion sum"
            )
        value = 1 / total
        if self.q in NORMALIZER_CHECK_Q and n <= NORMALIZER_CHECK_N:
            expected = Fraction(1, n * (self.q - 2) + 2)
            if value != expected:
                raise NormalizerMismatchError(
                    f"normalizer mismatch at q={self.q}, n={n}: "
                    f"mass-one gives {value}, closed form gives {expected}"
                )
        self._normalizers[n] = value
        return value

    def window(self, n: int) -> dict[tuple[int, ...], Fraction]:
        """Probabilities of every proper word of length n (improper omitted)."""
        return {w: self.prob(w) for w in proper_words(self.q, n)}

    def scaled_window(self, n: int) -> tuple[dict[tuple[int, ...], int], int]:
        """Window probabilities as integer numerators over one denominator."""
        win = self.window(n)
        denom = 1
        for p in win.values():
            denom = lcm(denom, p.denominator)
        return {w: int(p * denom) for w, p in win.items()}, denom


def formula_cylinder_probability(letters) -> Fraction:
    """Evaluate the explicit q=4 formula on a proper word.

    The word is encoded as a sign matrix; with m runs in the top row, the
    value is 2^-m times the signed sum, over dispersed Dyck words aligned
    with the run boundaries, of the boundary sign product times the
    descent-set probability of the run-flipped top row.  Improper input is
    rejected: the formula is asserted for proper colorings only.
    """
    letters = tuple(letters)
    for a in letters:
        if not 1 <= a <= 4:
            raise ValueError(f"letter {a} outside 1..4")
    if not is_proper(letters):
        raise ValueError(f"improper word {letters}: the formula requires a proper coloring")
    if not letters:
        return ONE
    sm = SignMatrix.from_letters(letters)
    runs = 1 + sum(1 for a, b in zip(sm.top, sm.top[1:]) if a != b)
    total = ZERO
    for w in dispersed_dyck_words(runs - 1):
        sign = -1 if w.open_count % 2 else 1
        coeff = sign * boundary_sign_product(w, sm.top, sm.bottom)
        total += coeff * descent_set_probability(flip_runs(sm.top, w))
    return total / 2**runs


_RECURSION_MEASURES: dict[int, CylinderMeasure] = {}


def recursion_measure(q: int) -> CylinderMeasure:
    """Shared per-q recursion measure (memo persists across calls)."""
    m = _RECURSION_MEASURES.get(q)
    if m is None:
        m = _RECURSION_MEASURES[q] = CylinderMeasure(q, "recursion")
    return m


def recursion_cylinder_probability(q: int, letters) -> Fraction:
    """Deletion-recursion probability of a word over {1..q}."""
    return recursion_measure(q).prob(letters)


def marginalize(measure: CylinderMeasure, pattern) -> Fraction:
    """Probability of a window pattern with wildcards (None) summed out.

    The literal definition: the sum of ``measure.prob`` over every way of
    filling the wildcard positions with colors.
    """
    pattern = tuple(pattern)
    holes = [i for i, a in enumerate(pattern) if a is None]
    filled = list(pattern)
    total = ZERO

    def fill(h: int):
        nonlocal total
        if h == len(holes):
            total += measure.prob(tuple(filled))
            return
        i = holes[h]
        for a in range(1, measure.q + 1):
            # skip completions that are already improper at this hole
            if i > 0 and filled[i - 1] == a:
                continue
            if i + 1 < len(filled) and filled[i + 1] == a:
                continue
            filled[i] = a
            fill(h + 1)
        filled[i] = None

    fill(0)
    return total
