"""Posets on [n], linear-extension counting, and exact comparable-pair
counts for both Bruhat orders.

The poset induced by a permutation sigma puts i below j exactly when
(i, j) is a non-inversion of sigma; its linear extensions are in
bijection with the permutations weakly below sigma, which turns the
exact weak-order pair count into a sum of linear-extension counts.

Counting helpers use exact integer and rational arithmetic throughout;
floats appear only in presentation-layer conversions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

import numpy as np

from .errors import MethodMismatch, TooLarge
from .perm import Permutation, non_inversions

__all__ = [
    "Poset",
    "induced_poset",
    "count_linear_extensions",
    "linext_lower_bound",
    "count_pairs_exact",
    "weak_product_bound",
    "harmonic",
    "LINEXT_MAX_N",
    "BRUTE_STRONG_MAX_N",
    "BRUTE_WEAK_MAX_N",
    "LINEXT_SUM_MAX_N",
]

LINEXT_MAX_N = 20
BRUTE_STRONG_MAX_N = 8
BRUTE_WEAK_MAX_N = 7
LINEXT_SUM_MAX_N = 10


@dataclass(frozen=True)
class Poset:
    """Strict partial order on [n], stored as predecessor sets:
    ``below[i - 1]`` is B_i = {j : j < i in the order}.

    Construction validates irreflexivity and transitivity; it never
    repairs the input.
    """

    n: int
    below: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if len(self.below) != self.n:
            raise ValueError("need one predecessor set per element")
        for i in range(1, self.n + 1):
            b = self.below[i - 1]
            if i in b:
                raise ValueError(f"poset not irreflexive at {i}")
            if any(not 1 <= j <= self.n for j in b):
                raise ValueError(f"predecessor out of range below {i}")
            for j in b:
                if not self.below[j - 1] <= b:
                    raise ValueError(f"poset not transitive at {j} < {i}")

    def ideal_size(self, i: int) -> int:
        """d(i) = size of the order ideal at i, |{j : j <= i}|."""
        return len(self.below[i - 1]) + 1

    def less(self, j: int, i: int) -> bool:
        return j in self.below[i - 1]


def induced_poset(sigma: Permutation) -> Poset:
    """The two-dimensional poset of sigma: i < j iff (i, j) is a
    non-inversion.  The relation is an intersection of two linear
    orders, hence transitive by construction."""
    slices = non_inversions(sigma).slices
    return Poset(sigma.n, slices)


def _predecessor_masks(p: Poset) -> list[int]:
    masks = []
    for i in range(1, p.n + 1):
        m = 0
        for j in p.below[i - 1]:
            m |= 1 << (j - 1)
        masks.append(m)
    return masks


def _count_linext_masks(pred: list[int]) -> int:
    # Paths from the empty ideal to the full one in the lattice of order
    # ideals; an element may join an ideal once all its predecessors are in.
    n = len(pred)
    current = {0: 1}
    for _ in range(n):
        grown: dict[int, int] = {}
        get = grown.get
        for ideal, ways in current.items():
            for j in range(n):
                bit = 1 << j
                if not ideal & bit and pred[j] & ~ideal == 0:
                    bigger = ideal | bit
                    grown[bigger] = get(bigger, 0) + ways
        current = grown
    return current[(1 << n) - 1]


def count_linear_extensions(p: Poset) -> int:
    """Exact number of linear extensions, by dynamic programming over
    order ideals.  Guarded to n <= 20."""
    if p.n > LINEXT_MAX_N:
        raise TooLarge(f"linear-extension guard: n={p.n} exceeds {LINEXT_MAX_N}")
    return _count_linext_masks(_predecessor_masks(p))


def linext_lower_bound(p: Poset) -> Fraction:
    """The bound e(P) >= n! / prod of ideal sizes d(i), as an exact
    rational.  Attained exactly when every element has at most one upper
    cover (rooted-forest order with maximal roots)."""
    denom = 1
    for i in range(1, p.n + 1):
        denom *= p.ideal_size(i)
    return Fraction(factorial(p.n), denom)


def harmonic(i: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, i + 1)), Fraction(0))


def weak_product_bound(n: int) -> Fraction:
    """prod_{i<=n} H(i)/i, an exact lower bound on the probability that
    a uniform pair is weak-order comparable.  The scaled form
    (n!)^2 * bound is recovered with ``float(Fraction(factorial(n)**2) * bound)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = Fraction(1)
    for i in range(1, n + 1):
        out *= harmonic(i) / i
    return out


# ---------------------------------------------------------------------------
# Exact pair counting.


def _all_perm_rows(n: int) -> np.ndarray:
    return np.array(list(permutations(range(1, n + 1))), dtype=np.int8)


def _count_strong_pairs(n: int) -> int:
    # Dominance criterion in bulk: stack every permutation's prefix-count
    # table, then stream sigma and count elementwise-dominating rows.
    rows = _all_perm_rows(n)
    thresholds = np.arange(1, n + 1, dtype=np.int8)
    tables = np.cumsum(
        rows[:, :, None] <= thresholds[None, None, :], axis=1, dtype=np.int8
    ).reshape(len(rows), n * n)
    total = 0
    for s in range(len(tables)):
        total += int(np.count_nonzero((tables >= tables[s]).all(axis=1)))
    return total


def _count_weak_pairs_brute(n: int) -> int:
    masks = np.fromiter(
        (non_inversions(Permutation(w)).mask for w in permutations(range(1, n + 1))),
        dtype=np.uint32,
        count=factorial(n),
    )
    total = 0
    for s in range(len(masks)):
        total += int(np.count_nonzero(masks[s] & ~masks == 0))
    return total


def _count_weak_pairs_linext(n: int) -> int:
    # sum over sigma of e(P(sigma)); works on raw predecessor masks to keep
    # the inner loop tight.
    total = 0
    rng = range(n)
    full = (1 << n) - 1
    pos = [0] * n
    for sigma in permutations(rng):
        for t, v in enumerate(sigma):
            pos[v] = t
        pred = [0] * n
        for j in rng:
            pj = pos[j]
            m = 0
            for i in range(j):
                if pos[i] < pj:
                    m |= 1 << i
            pred[j] = m
        current = {0: 1}
        for _ in rng:
            grown: dict[int, int] = {}
            get = grown.get
            for ideal, ways in current.items():
                for j in rng:
                    bit = 1 << j
                    if not ideal & bit and pred[j] & ~ideal == 0:
                        bigger = ideal | bit
                        grown[bigger] = get(bigger, 0) + ways
            current = grown
        total += current[full]
    return total


def count_pairs_exact(n: int, order: str, method: str | None = None) -> int:
    """Number of ordered pairs (pi, sigma) in S_n x S_n with pi below
    sigma, i.e. (n!)^2 times the comparability probability.

    ``method`` is ``brute`` (double loop over pairs) or, for the weak
    order only, ``linext_sum`` (sum of linear-extension counts of the
    induced posets).  Defaults: brute for strong, linext_sum for weak.
    """
    if order not in ("strong", "weak"):
        raise ValueError(f"unknown order {order!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if method is None:
        method = "brute" if order == "strong" else "linext_sum"
    if method not in ("brute", "linext_sum"):
        raise ValueError(f"unknown method {method!r}")
    if method == "linext_sum":
        if order == "strong":
            raise MethodMismatch("linext_sum applies to the weak order only")
        if n > LINEXT_SUM_MAX_N:
            raise TooLarge(
                f"linext_sum guard: n={n} exceeds {LINEXT_SUM_MAX_N}"
            )
        return _count_weak_pairs_linext(n)
    if order == "strong":
        if n > BRUTE_STRONG_MAX_N:
            raise TooLarge(
                f"brute strong-count guard: n={n} exceeds {BRUTE_STRONG_MAX_N}"
            )
        return _count_strong_pairs(n)
    if n > BRUTE_WEAK_MAX_N:
        raise TooLarge(f"brute weak-count guard: n={n} exceeds {BRUTE_WEAK_MAX_N}")
    return _count_weak_pairs_brute(n)
