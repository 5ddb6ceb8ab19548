"""Comparability predicates for the strong and weak Bruhat orders.

Strong order: pi <= sigma iff sigma can be walked down to pi by
repeatedly swapping an inverted pair of values (a *reduction*).  Three
interchangeable deciders are provided: the dominance (prefix-count)
criterion, the tableau criterion of sorted prefixes, and a
breadth-first chain search used as an independent oracle on small n.

Weak order: pi is below sigma iff the chain uses only swaps of adjacent
inverted entries (*simple reductions*); equivalently, iff the
non-inversion set of pi contains that of sigma.

The module also implements two events on pairs of permutations used by
the counting machinery: the four-corner ballot event (a necessary
condition for strong comparability on even n) and the top-rows event
restricted to the k highest values.
"""

from __future__ import annotations

from bisect import insort
from collections import deque
from typing import Iterator

from .errors import BadK, LengthMismatch, OddN, TooLarge
from .perm import Permutation, inverse, non_inversions

__all__ = [
    "STRONG_METHODS",
    "WEAK_METHODS",
    "strong_leq",
    "strong_leq_oracle",
    "weak_leq",
    "weak_leq_oracle",
    "compare",
    "corner_event",
    "top_rows_event",
    "reductions",
    "simple_reductions",
    "ORACLE_MAX_N",
]

STRONG_METHODS = ("tableau", "dominance", "chain_oracle")
WEAK_METHODS = ("inversion_set", "chain_oracle")

# The chain oracles materialize reachability sets inside S_n, so n! states.
ORACLE_MAX_N = 7


def _check_lengths(pi: Permutation, sigma: Permutation) -> int:
    if pi.n != sigma.n:
        raise LengthMismatch(f"lengths differ: {pi.n} vs {sigma.n}")
    return pi.n


def _dominance(pw: tuple[int, ...], sw: tuple[int, ...]) -> bool:
    # pi <= sigma iff #{t <= i : pi(t) <= j} >= #{t <= i : sigma(t) <= j}
    # for all i, j.  Rows are checked incrementally; d[j] tracks the
    # count difference and only decremented entries can go negative.
    n = len(pw)
    d = [0] * (n + 1)
    for i in range(n):
        vp, vs = pw[i], sw[i]
        if vp < vs:
            for j in range(vp, vs):
                d[j] += 1
        elif vp > vs:
            for j in range(vs, vp):
                d[j] -= 1
                if d[j] < 0:
                    return False
    return True


def _tableau(pw: tuple[int, ...], sw: tuple[int, ...]) -> bool:
    # Sorted prefixes of pi must be elementwise <= those of sigma.
    n = len(pw)
    ps: list[int] = []
    ss: list[int] = []
    for i in range(n - 1):
        insort(ps, pw[i])
        insort(ss, sw[i])
        for a, b in zip(ps, ss):
            if a > b:
                return False
    return True


def strong_leq(pi: Permutation, sigma: Permutation, method: str = "dominance") -> bool:
    """Decide pi <= sigma in the strong Bruhat order.

    ``method`` is one of ``dominance`` (default), ``tableau`` or
    ``chain_oracle``; all agree on every input.
    """
    _check_lengths(pi, sigma)
    if method == "dominance":
        return _dominance(pi.word, sigma.word)
    if method == "tableau":
        return _tableau(pi.word, sigma.word)
    if method == "chain_oracle":
        return strong_leq_oracle(pi, sigma)
    raise ValueError(f"unknown strong-order method {method!r}")


def reductions(p: Permutation) -> Iterator[tuple[int, int, Permutation]]:
    """Yield (i, j, q) for every reduction of p: positions i < j with
    p(i) > p(j), and q the permutation with those entries swapped."""
    w = p.word
    n = len(w)
    for i in range(n - 1):
        for j in range(i + 1, n):
            if w[i] > w[j]:
                child = list(w)
                child[i], child[j] = child[j], child[i]
                yield i + 1, j + 1, Permutation(tuple(child))


def simple_reductions(p: Permutation) -> Iterator[tuple[int, Permutation]]:
    """Yield (i, q) for every simple reduction: adjacent positions
    i, i+1 with p(i) > p(i+1) swapped."""
    w = p.word
    for i in range(len(w) - 1):
        if w[i] > w[i + 1]:
            child = list(w)
            child[i], child[i + 1] = child[i + 1], child[i]
            yield i + 1, Permutation(tuple(child))


def _chain_search(pi: Permutation, sigma: Permutation, simple: bool) -> bool:
    n = _check_lengths(pi, sigma)
    if n > ORACLE_MAX_N:
        raise TooLarge(f"chain oracle guard: n={n} exceeds {ORACLE_MAX_N}")
    target = pi.word
    start = sigma.word
    if target == start:
        return True
    # Reductions strictly decrease the inversion count, so states at or
    # below the target's count (other than the target itself) are dead ends.
    def inv(w: tuple[int, ...]) -> int:
        return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])

    floor = inv(target)
    seen = {start}
    queue = deque([sigma])
    while queue:
        current = queue.popleft()
        if inv(current.word) <= floor:
            continue
        steps = (
            (q for _, q in simple_reductions(current))
            if simple
            else (q for _, _, q in reductions(current))
        )
        for child in steps:
            if child.word == target:
                return True
            if child.word not in seen:
                seen.add(child.word)
                queue.append(child)
    return False


def strong_leq_oracle(pi: Permutation, sigma: Permutation) -> bool:
    """Reachability oracle: breadth-first search over reduction chains
    starting from sigma.  Guarded to n <= 7."""
    return _chain_search(pi, sigma, simple=False)


def weak_leq(pi: Permutation, sigma: Permutation) -> bool:
    """Decide pi below sigma in the weak order: E(pi) contains E(sigma)."""
    _check_lengths(pi, sigma)
    mp = non_inversions(pi).mask
    ms = non_inversions(sigma).mask
    return ms & ~mp == 0


def weak_leq_oracle(pi: Permutation, sigma: Permutation) -> bool:
    """Reachability oracle over simple-reduction chains.  Guarded to n <= 7."""
    return _chain_search(pi, sigma, simple=True)


def compare(pi: Permutation, sigma: Permutation, order: str, method: str | None = None) -> bool:
    """Uniform entry point used by the CLI: dispatch on order and method."""
    if order == "strong":
        return strong_leq(pi, sigma, method or "dominance")
    if order == "weak":
        if method in (None, "inversion_set"):
            return weak_leq(pi, sigma)
        if method == "chain_oracle":
            return weak_leq_oracle(pi, sigma)
        raise ValueError(f"unknown weak-order method {method!r}")
    raise ValueError(f"unknown order {order!r}")


def corner_event(pi: Permutation, sigma: Permutation) -> bool:
    """The four-corner ballot event on the superimposed permutation
    matrices (crosses at (i, pi(i)), balls at (i, sigma(i)), n even).

    Reading the southwest quarter row by row from the bottom (and the
    northeast from the top), crosses must never trail balls; reading the
    northwest quarter column by column from the left (and the southeast
    from the right), balls must never trail crosses.  All 2n cumulative
    conditions must hold.  Contains every pair with pi <= sigma.
    """
    n = _check_lengths(pi, sigma)
    if n % 2:
        raise OddN(f"corner event needs even n, got {n}")
    h = n // 2
    pw, sw = pi.word, sigma.word

    # Southwest: rows 1..r within columns 1..h, bottom-up.
    cp = cs = 0
    for r in range(1, h + 1):
        for i in range(h):
            cp += pw[i] == r
            cs += sw[i] == r
        if cp < cs:
            return False
    # Northeast: rows n..n-r+1 within columns h+1..n, top-down.
    cp = cs = 0
    for r in range(1, h + 1):
        row = n - r + 1
        for i in range(h, n):
            cp += pw[i] == row
            cs += sw[i] == row
        if cp < cs:
            return False
    # Northwest: columns 1..c within rows h+1..n, left-to-right; balls lead.
    cp = cs = 0
    for c in range(h):
        cp += pw[c] > h
        cs += sw[c] > h
        if cs < cp:
            return False
    # Southeast: columns n..n-c+1 within rows 1..h, right-to-left; balls lead.
    cp = cs = 0
    for c in range(n - 1, h - 1, -1):
        cp += pw[c] <= h
        cs += sw[c] <= h
        if cs < cp:
            return False
    return True


def top_rows_event(pi: Permutation, sigma: Permutation, k: int) -> bool:
    """Every northeast submatrix spanning at most the k top rows has at
    least as many crosses as balls.

    With l_i(w) = w^{-1}(i), the condition reads: for every j <= k and
    every column threshold m, at least as many of l_n(pi), ...,
    l_{n-j+1}(pi) are >= m as the corresponding values for sigma.
    """
    n = _check_lengths(pi, sigma)
    if not 1 <= k <= n:
        raise BadK(f"k={k} must satisfy 1 <= k <= n={n}")
    lp = inverse(pi).word
    ls = inverse(sigma).word
    for j in range(1, k + 1):
        prows = [lp[n - t] for t in range(1, j + 1)]
        srows = [ls[n - t] for t in range(1, j + 1)]
        for m in range(1, n + 1):
            if sum(v >= m for v in prows) < sum(v >= m for v in srows):
                return False
    return True
