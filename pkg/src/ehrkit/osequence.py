"""Macaulay expansions and sequence predicates for h-vectors and delta-vectors.

All functions accept any finite sequence of integers (or an
:class:`HSequence`). Predicates whose hypotheses need a nonzero last entry
work on the sequence with trailing zeros removed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence, Union

from .errors import CriterionInapplicable, InvalidInput


@dataclass(frozen=True)
class HSequence:
    entries: tuple[int, ...]

    def __post_init__(self):
        if not self.entries:
            raise InvalidInput("sequence must be nonempty")
        entries = tuple(int(x) for x in self.entries)
        if any(x < 0 for x in entries):
            raise InvalidInput("sequence entries must be nonnegative")
        object.__setattr__(self, "entries", entries)

    @property
    def degree(self) -> int | None:
        """Index of the last nonzero entry (None for an all-zero sequence)."""
        for i in range(len(self.entries) - 1, -1, -1):
            if self.entries[i]:
                return i
        return None

    def truncated(self) -> tuple[int, ...]:
        s = self.degree
        return self.entries[: s + 1] if s is not None else ()

    @classmethod
    def parse(cls, text: str) -> "HSequence":
        try:
            return cls(tuple(int(x) for x in text.split(",") if x.strip()))
        except ValueError as exc:
            raise InvalidInput(f"cannot parse sequence {text!r}: {exc}") from None


Seq = Union[HSequence, Sequence[int]]


def _entries(h: Seq) -> tuple[int, ...]:
    return h.entries if isinstance(h, HSequence) else tuple(h)


def truncate(h: Seq) -> tuple[int, ...]:
    e = list(_entries(h))
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


@dataclass(frozen=True)
class BinomialExpansion:
    """``h = sum(comb(n, k) for n, k in terms)``, k descending."""

    terms: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        return sum(comb(n, k) for n, k in self.terms)


def _largest_top(h: int, i: int) -> int:
    """max{n : C(n, i) <= h}, for h >= 1."""
    lo, hi = i, i + 1
    while comb(hi, i) <= h:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if comb(mid, i) <= h:
            lo = mid
        else:
            hi = mid
    return lo


def binomial_expansion(h: int, i: int) -> BinomialExpansion:
    """The i-binomial (Macaulay) expansion of h, by the greedy algorithm."""
    if h <= 0 or i <= 0:
        raise InvalidInput(f"binomial expansion needs h >= 1 and i >= 1, got h={h}, i={i}")
    terms = []
    while h > 0:
        n = _largest_top(h, i)
        terms.append((n, i))
        h -= comb(n, i)
        i -= 1
    return BinomialExpansion(tuple(terms))


def macaulay_power(h: int, i: int) -> int:
    """``h^<i>``: each binomial C(n, k) of the expansion becomes C(n+1, k+1)."""
    if i <= 0:
        raise InvalidInput("i must be positive")
    if h < 0:
        raise InvalidInput("h must be nonnegative")
    if h == 0:
        return 0
    return sum(comb(n + 1, k + 1) for n, k in binomial_expansion(h, i).terms)


def is_O_sequence(h: Seq) -> bool:
    e = _entries(h)
    if not e or e[0] != 1 or any(x < 0 for x in e):
        return False
    return all(e[n + 1] <= macaulay_power(e[n], n) for n in range(1, len(e) - 1))


def first_differences(h: Seq) -> tuple[int, ...]:
    e = _entries(h)
    return (e[0],) + tuple(b - a for a, b in zip(e, e[1:])) if e else ()


def is_differentiable_O_sequence(h: Seq) -> bool:
    diffs = first_differences(h)
    if any(x < 0 for x in diffs):
        return False
    return is_O_sequence(h) and is_O_sequence(diffs)


def macaulay_bound_holds(h: Seq) -> bool:
    """``h_i <= C(h_1 + i - 1, i)`` for every i >= 1."""
    e = _entries(h)
    if len(e) < 2:
        return True
    h1 = e[1]
    return all(e[i] <= comb(h1 + i - 1, i) for i in range(1, len(e)))


def is_unimodal(h: Seq) -> bool:
    e = _entries(h)
    falling = False
    for a, b in zip(e, e[1:]):
        if b < a:
            falling = True
        elif b > a and falling:
            return False
    return True


def is_palindromic(h: Seq) -> bool:
    e = _entries(h)
    return e == e[::-1]


def is_gorenstein_sequence_h1le3(h: Seq) -> bool:
    """Gorenstein-sequence test, valid only when ``h_1 <= 3``: symmetry plus
    the first differences up to the middle forming an O-sequence."""
    e = truncate(h)
    if not e:
        raise CriterionInapplicable("the all-zero sequence has no last nonzero entry")
    if len(e) > 1 and e[1] > 3:
        raise CriterionInapplicable(f"criterion requires h_1 <= 3, got h_1 = {e[1]}")
    if not is_palindromic(e):
        return False
    t = (len(e) - 1) // 2
    diffs = first_differences(e[: t + 1])
    return all(x >= 0 for x in diffs) and is_O_sequence(diffs)


def level_inequalities(h: Seq) -> list[tuple[int, int]]:
    """Pairs (i, j) with i + j <= s where ``h_i > h_j * h_{i+j}``."""
    e = truncate(h)
    s = len(e) - 1
    return [
        (i, j)
        for i in range(s + 1)
        for j in range(s + 1 - i)
        if e[i] > e[j] * e[i + j]
    ]


def partial_sum_inequalities(h: Seq) -> list[tuple[int, int]]:
    """Pairs (m, n), m >= 0, n >= 1, m + n < s, where
    ``h_1 + ... + h_n > h_{m+1} + ... + h_{m+n}``."""
    e = truncate(h)
    s = len(e) - 1
    out = []
    for n in range(1, s):
        head = sum(e[1 : n + 1])
        for m in range(0, s - n):
            if head > sum(e[m + 1 : m + n + 1]):
                out.append((m, n))
    return sorted(out)
