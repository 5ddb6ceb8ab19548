"""Exact tabulation of admissible orderings of 2k symbols.

Two families are counted.  For the strong order, an ordering of
x_1..x_k, y_1..y_k (written in increasing size, y = ball, x = cross) is
admissible when for every truncation level j <= k the subword on
x_1..x_j, y_1..y_j is a ballot word: reading left to right, y's never
trail x's.  Labels within a level can be forgotten, so levels are
tabulated as 2k-long 0/1 ballot words with big-integer multiplicities;
level k is spawned from level k-1 by inserting one 1 (y_k) and then one
0 (x_k) in every position that keeps the ballot property, accumulating
multiplicities per insertion event.

For the weak order the admissibility conditions are
  (1) every x_j lies to the right of its y_j, and
  (2) for i < j, if x_i precedes x_j then y_i precedes y_j,
which do not permit lumping, so whole labeled orderings are enumerated.

``brute_Q`` re-derives the level proportions by filtering all (2k)!
orderings directly from the defining conditions, independently of the
incremental construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb, factorial
from typing import Iterator, NamedTuple

from .errors import BadK

__all__ = [
    "BallotLevel",
    "WeakOrderingLevel",
    "LevelStats",
    "ballot_levels",
    "weak_ordering_levels",
    "strong_ballot_table",
    "weak_ordering_table",
    "brute_Q",
    "catalan",
    "is_ballot_word",
    "STRONG_KMAX",
    "WEAK_KMAX",
    "BRUTE_KMAX",
]

STRONG_KMAX = 14
WEAK_KMAX = 7
BRUTE_KMAX = 4


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def is_ballot_word(word: str) -> bool:
    """True when every prefix has at least as many 1s as 0s and the
    totals are equal."""
    height = 0
    for ch in word:
        height += 1 if ch == "1" else -1
        if height < 0:
            return False
    return height == 0


class LevelStats(NamedTuple):
    """One table row: level k, exact count, exact proportion of all
    (2k)! orderings, and the k-th root of the proportion."""

    k: int
    count: int
    proportion: Fraction
    root: float


@dataclass(frozen=True)
class BallotLevel:
    """Level k of the strong-order tabulation: multiplicity of every
    2k-long ballot word (keys are '0'/'1' strings)."""

    k: int
    table: dict[str, int]

    def total(self) -> int:
        return sum(self.table.values())


def _int_ballot_levels(k_max: int) -> Iterator[dict[int, int]]:
    # Words are packed MSB-first into machine ints; level 1 is {10: 1}.
    table = {0b10: 1}
    yield table
    for k in range(2, k_max + 1):
        parent_len = 2 * (k - 1)
        child: dict[int, int] = {}
        for word, mult in table.items():
            # Heights after each prefix, and for every insertion slot of
            # the new 1 the last slot where the height hit zero: a 0 may
            # then be inserted anywhere strictly after that slot.
            last_zero = [0] * (parent_len + 1)
            height = 0
            zero_at = 0
            for s in range(1, parent_len + 1):
                height += 1 if (word >> (parent_len - s)) & 1 else -1
                if height == 0:
                    zero_at = s
                last_zero[s] = zero_at
            for p1 in range(parent_len + 1):
                shift = parent_len - p1
                high = word >> shift
                low = word - (high << shift)
                with_one = (((high << 1) | 1) << shift) | low
                for p2 in range(last_zero[p1] + 1, parent_len + 2):
                    shift2 = parent_len + 1 - p2
                    high2 = with_one >> shift2
                    low2 = with_one - (high2 << shift2)
                    grown = (high2 << (shift2 + 1)) | low2
                    if grown in child:
                        child[grown] += mult
                    else:
                        child[grown] = mult
        table = child
        yield table


def _word_str(word: int, length: int) -> str:
    return format(word, f"0{length}b")


def ballot_levels(k_max: int) -> Iterator[BallotLevel]:
    """Yield BallotLevel objects for k = 1..k_max."""
    if not 1 <= k_max <= STRONG_KMAX:
        raise BadK(f"k_max={k_max} must satisfy 1 <= k_max <= {STRONG_KMAX}")
    for k, table in enumerate(_int_ballot_levels(k_max), start=1):
        yield BallotLevel(k, {_word_str(w, 2 * k): m for w, m in table.items()})


def strong_ballot_table(k_max: int) -> list[LevelStats]:
    """Counts N_k of admissible orderings for the strong order, with
    exact proportions Q_k = N_k / (2k)! and their k-th roots."""
    if not 1 <= k_max <= STRONG_KMAX:
        raise BadK(f"k_max={k_max} must satisfy 1 <= k_max <= {STRONG_KMAX}")
    rows = []
    for k, table in enumerate(_int_ballot_levels(k_max), start=1):
        count = sum(table.values())
        q = Fraction(count, factorial(2 * k))
        rows.append(LevelStats(k, count, q, float(q) ** (1.0 / k)))
    return rows


# ---------------------------------------------------------------------------
# Weak order: labeled orderings.
#
# Canonical serialized form of an ordering: the tuple of signed integers
# with +j for x_j and -j for y_j in sequence order.  Internally each
# ordering is packed into one int, 5 bits per symbol (x_j -> 2j,
# y_j -> 2j+1, most significant symbol first), which keeps level sets of
# a million words compact.

_SYM_BITS = 5
_SYM_MASK = (1 << _SYM_BITS) - 1


def _encode(word: tuple[int, ...]) -> int:
    packed = 0
    for s in word:
        code = 2 * s if s > 0 else -2 * s + 1
        packed = (packed << _SYM_BITS) | code
    return packed


def _decode(packed: int, k: int) -> tuple[int, ...]:
    out = []
    for t in range(2 * k):
        code = (packed >> (_SYM_BITS * (2 * k - 1 - t))) & _SYM_MASK
        out.append(code // 2 if code % 2 == 0 else -(code // 2))
    return tuple(out)


@dataclass(frozen=True)
class WeakOrderingLevel:
    """Level k of the weak-order tabulation: the set of admissible
    labeled orderings, stored packed."""

    k: int
    packed: frozenset[int]

    def __len__(self) -> int:
        return len(self.packed)

    def words(self) -> Iterator[tuple[int, ...]]:
        """Orderings in canonical signed-integer form (+j = x_j, -j = y_j)."""
        for value in self.packed:
            yield _decode(value, self.k)

    def __contains__(self, word: tuple[int, ...]) -> bool:
        return _encode(word) in self.packed


def _packed_weak_levels(k_max: int) -> Iterator[set[int]]:
    level = {_encode((-1, 1))}
    yield level
    for k in range(2, k_max + 1):
        parent_len = 2 * (k - 1)
        x_code, y_code = 2 * k, 2 * k + 1
        child: set[int] = set()
        add = child.add
        for packed in level:
            syms = [
                (packed >> (_SYM_BITS * (parent_len - 1 - t))) & _SYM_MASK
                for t in range(parent_len)
            ]
            y_position = [0] * k
            for t, code in enumerate(syms):
                if code % 2:
                    y_position[code // 2 - 1] = t
            # For x_k in slot p, y_k may occupy slots after every y_i whose
            # x_i lies strictly left of p (condition (2)), and at or before
            # p itself (condition (1)).
            barrier = -1
            for p in range(parent_len + 1):
                for q in range(barrier + 1, p + 1):
                    grown = syms[:q] + [y_code] + syms[q:p] + [x_code] + syms[p:]
                    value = 0
                    for code in grown:
                        value = (value << _SYM_BITS) | code
                    add(value)
                if p < parent_len and syms[p] % 2 == 0:
                    partner = y_position[syms[p] // 2 - 1]
                    if partner > barrier:
                        barrier = partner
        level = child
        yield level


def weak_ordering_levels(k_max: int) -> Iterator[WeakOrderingLevel]:
    if not 1 <= k_max <= WEAK_KMAX:
        raise BadK(f"k_max={k_max} must satisfy 1 <= k_max <= {WEAK_KMAX}")
    for k, level in enumerate(_packed_weak_levels(k_max), start=1):
        yield WeakOrderingLevel(k, frozenset(level))


def weak_ordering_table(k_max: int) -> list[LevelStats]:
    """Counts of admissible labeled orderings for the weak order, with
    exact proportions and k-th roots."""
    if not 1 <= k_max <= WEAK_KMAX:
        raise BadK(f"k_max={k_max} must satisfy 1 <= k_max <= {WEAK_KMAX}")
    rows = []
    for k, level in enumerate(_packed_weak_levels(k_max), start=1):
        count = len(level)
        q = Fraction(count, factorial(2 * k))
        rows.append(LevelStats(k, count, q, float(q) ** (1.0 / k)))
    return rows


# ---------------------------------------------------------------------------
# Independent oracle.


def _strong_admissible(word: tuple[int, ...], k: int) -> bool:
    # Every truncation to labels <= j must be a ballot word (y's lead).
    for j in range(1, k + 1):
        height = 0
        for s in word:
            if abs(s) <= j:
                height += 1 if s < 0 else -1
                if height < 0:
                    return False
    return True


def _weak_admissible(word: tuple[int, ...], k: int) -> bool:
    position = {s: t for t, s in enumerate(word)}
    for j in range(1, k + 1):
        if position[j] < position[-j]:
            return False
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            if position[i] < position[j] and not position[-i] < position[-j]:
                return False
    return True


def brute_Q(k: int, kind: str) -> Fraction:
    """Proportion of all (2k)! orderings that are admissible, checked
    symbol by symbol from the defining conditions.  Guarded to k <= 4."""
    if not 1 <= k <= BRUTE_KMAX:
        raise BadK(f"k={k} must satisfy 1 <= k <= {BRUTE_KMAX}")
    if kind not in ("strong", "weak"):
        raise ValueError(f"unknown kind {kind!r}")
    symbols = [j for j in range(1, k + 1)] + [-j for j in range(1, k + 1)]
    check = _strong_admissible if kind == "strong" else _weak_admissible
    hits = sum(1 for word in permutations(symbols) if check(word, k))
    return Fraction(hits, factorial(2 * k))
