"""Permutations in one-line notation, their inversion structure, and a
deterministic random number stream.

Conventions used everywhere in this package:

- A permutation of [n] = {1, ..., n} is stored as the tuple
  (w(1), ..., w(n)) of 1-indexed values; ``w.word[i - 1]`` is w(i).
- The set of non-inversions of w is
  E(w) = {(i, j) : i < j and w^{-1}(i) < w^{-1}(j)},
  and E_i(w) = {j < i : (j, i) in E(w)} is its slice at i.
- Randomness comes from a pinned counter-mode generator (SplitMix64
  output function over a derived 64-bit substream base), so every draw
  is a pure function of (seed, stream_index, draw counter).  Streams
  with distinct stream_index values are independent for all practical
  purposes and safe to hand to concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BadK, NotAPermutation

__all__ = [
    "Permutation",
    "NonInversionSet",
    "RngStream",
    "make_perm",
    "identity",
    "reversal",
    "inverse",
    "inversion_count",
    "non_inversions",
    "noninversion_mask",
    "pair_bit",
    "rank_reverse",
    "delete_top_k",
    "random_perm",
    "perm_from_string",
    "perm_to_string",
    "mix64",
    "stream_base",
    "GOLDEN",
    "MASK64",
]


@dataclass(frozen=True)
class Permutation:
    """A permutation of [n] in one-line notation (1-indexed values)."""

    word: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.word)
        if n == 0:
            raise NotAPermutation("empty word: permutations need n >= 1")
        seen = 0
        for v in self.word:
            if not isinstance(v, int) or not 1 <= v <= n:
                raise NotAPermutation(f"value {v!r} outside 1..{n}")
            bit = 1 << v
            if seen & bit:
                raise NotAPermutation(f"duplicate value {v}")
            seen |= bit

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        """Value at 1-indexed position i."""
        return self.word[i - 1]

    def __str__(self) -> str:
        return perm_to_string(self)


def make_perm(values: Iterable[int]) -> Permutation:
    """Validate ``values`` as one-line notation and build a Permutation."""
    return Permutation(tuple(values))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def reversal(n: int) -> Permutation:
    """The order-reversing permutation n, n-1, ..., 1."""
    return Permutation(tuple(range(n, 0, -1)))


def perm_from_string(text: str) -> Permutation:
    """Parse the serialized form, comma-separated 1-indexed values."""
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise NotAPermutation(f"cannot parse permutation from {text!r}") from exc
    return Permutation(values)


def perm_to_string(p: Permutation) -> str:
    return ",".join(str(v) for v in p.word)


def inverse(p: Permutation) -> Permutation:
    """The inverse permutation q with q(p(i)) = i."""
    inv = [0] * p.n
    for i, v in enumerate(p.word):
        inv[v - 1] = i + 1
    return Permutation(tuple(inv))


def inversion_count(p: Permutation) -> int:
    """Number of pairs i < j with p(i) > p(j)."""
    w = p.word
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def pair_bit(i: int, j: int) -> int:
    """Bit index for the value pair (i, j), i < j, in a non-inversion mask.

    Pairs are numbered (1,2), (1,3), (2,3), (1,4), ... so the index
    depends only on the pair, not on n.
    """
    return (j - 1) * (j - 2) // 2 + (i - 1)


def noninversion_mask(word: Sequence[int]) -> int:
    """Bitmask over value pairs (i, j), i < j, with bit set iff the pair
    is a non-inversion (i appears before j)."""
    n = len(word)
    pos = [0] * (n + 1)
    for t, v in enumerate(word):
        pos[v] = t
    mask = 0
    base = 0
    for j in range(2, n + 1):
        pj = pos[j]
        for i in range(1, j):
            if pos[i] < pj:
                mask |= 1 << (base + i - 1)
        base += j - 1
    return mask


@dataclass(frozen=True)
class NonInversionSet:
    """The set E(w) of non-inverted value pairs of a permutation.

    ``pairs`` holds every (i, j) with i < j and w^{-1}(i) < w^{-1}(j);
    ``slices[i - 1]`` is E_i(w) = {j < i : (j, i) in pairs}; ``mask`` is
    the packed form produced by :func:`noninversion_mask`.
    """

    n: int
    pairs: frozenset[tuple[int, int]]
    slices: tuple[frozenset[int], ...]
    mask: int

    def slice_size(self, i: int) -> int:
        return len(self.slices[i - 1])


def non_inversions(p: Permutation) -> NonInversionSet:
    """Compute E(p) with its per-element slices."""
    n = p.n
    pos = [0] * (n + 1)
    for t, v in enumerate(p.word):
        pos[v] = t
    pairs = []
    slices = []
    for i in range(1, n + 1):
        below = frozenset(j for j in range(1, i) if pos[j] < pos[i])
        slices.append(below)
        pairs.extend((j, i) for j in below)
    return NonInversionSet(
        n=n,
        pairs=frozenset(pairs),
        slices=tuple(slices),
        mask=noninversion_mask(p.word),
    )


def rank_reverse(p: Permutation) -> Permutation:
    """Replace every value v by n + 1 - v."""
    n = p.n
    return Permutation(tuple(n + 1 - v for v in p.word))


def delete_top_k(p: Permutation, k: int) -> Permutation:
    """Remove the k largest values, keeping the relative order of the rest.

    The result is a permutation of [n - k].
    """
    if not 0 <= k < p.n:
        raise BadK(f"k={k} must satisfy 0 <= k < n={p.n}")
    cutoff = p.n - k
    return Permutation(tuple(v for v in p.word if v <= cutoff))


# ---------------------------------------------------------------------------
# Deterministic randomness.
#
# The generator is pinned here and nowhere else: draw m of stream
# (seed, s) is  mix64(base + m * GOLDEN)  with  base =
# mix64(mix64(seed) + (s + 1) * GOLDEN), where mix64 is the SplitMix64
# finalizer.  Counter mode makes the sequence random-accessible, which
# the Monte Carlo engine exploits to vectorize draws; RngStream below is
# the sequential scalar view of the same sequence.

GOLDEN = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1


def mix64(z: int) -> int:
    """SplitMix64 finalizer on 64-bit words."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_base(seed: int, stream_index: int) -> int:
    """Base offset of substream ``stream_index`` of ``seed``."""
    return mix64((mix64(seed) + GOLDEN * (stream_index + 1)) & MASK64)


@dataclass
class RngStream:
    """Sequential view of one substream of the pinned generator.

    Identical (seed, stream_index) always replays the identical
    sequence.  A stream is single-owner: share work across threads by
    giving each worker its own stream_index, never the same object.
    """

    seed: int
    stream_index: int = 0
    counter: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        self._base = stream_base(self.seed, self.stream_index)

    def next_uint64(self) -> int:
        self.counter += 1
        return mix64((self._base + GOLDEN * self.counter) & MASK64)

    def randbelow(self, k: int) -> int:
        """Uniform integer in [0, k).  Uses the low-bias modulo reduction;
        for k up to a few thousand the bias is below 2**-50."""
        if k <= 0:
            raise ValueError("k must be positive")
        return self.next_uint64() % k


def random_perm(n: int, rng: RngStream) -> Permutation:
    """Uniform random permutation of [n] by the Fisher-Yates shuffle.

    Consumes exactly n - 1 draws from ``rng``.
    """
    if n < 1:
        raise NotAPermutation("n must be >= 1")
    word = list(range(1, n + 1))
    for i in range(n - 1, 0, -1):
        j = rng.randbelow(i + 1)
        word[i], word[j] = word[j], word[i]
    return Permutation(tuple(word))
