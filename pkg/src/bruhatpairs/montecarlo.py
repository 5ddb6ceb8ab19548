"""Seeded, worker-partitioned Monte Carlo estimation of comparability
probabilities.

Trial semantics (the reproducibility contract): trial t of T total is
assigned to worker t mod W.  Worker w owns the random substream
(seed, stream_index=w) and consumes it sequentially, two Fisher-Yates
shuffles (2(n-1) draws) per trial: first the pi permutation, then
sigma.  The estimate is therefore a pure function of
(n, relation, trials, seed, workers), independent of scheduling.

The engine evaluates each worker's trials in vectorized chunks; because
the pinned generator is counter-mode, a chunk of draws is computed in
closed form and reproduces exactly what the scalar
:class:`~bruhatpairs.perm.RngStream` would emit (``stream_pairs`` below
is that scalar reference, used by the tests to pin the equivalence).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import log, sqrt
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import OddN
from .perm import GOLDEN, MASK64, Permutation, RngStream, random_perm, stream_base

__all__ = [
    "McEstimate",
    "ScalingRow",
    "RELATIONS",
    "DEFAULT_SEED",
    "mc_estimate",
    "scaling_table",
    "stream_pairs",
]

RELATIONS = ("strong", "weak", "corner_event")
DEFAULT_SEED = 123456789


@dataclass(frozen=True)
class McEstimate:
    """Result of one Monte Carlo run."""

    n: int
    relation: str
    trials: int
    successes: int
    seed: int
    workers: int

    @property
    def p_hat(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        p = self.p_hat
        return sqrt(p * (1.0 - p) / self.trials)


class ScalingRow(NamedTuple):
    """One row of a scaling report: the estimate plus derived columns.
    ``ln_ratio`` is ln(p_hat)/ln(n); ``step_ratio`` is p_hat divided by
    the previous row's p_hat when the previous n is exactly n - 1.
    Underivable values are None."""

    n: int
    estimate: McEstimate
    ln_ratio: float | None
    step_ratio: float | None


def stream_pairs(n: int, seed: int, worker: int) -> Iterator[tuple[Permutation, Permutation]]:
    """Scalar reference for the per-worker trial stream: yields the
    (pi, sigma) pairs worker ``worker`` tests, in trial order."""
    rng = RngStream(seed, worker)
    while True:
        pi = random_perm(n, rng)
        sigma = random_perm(n, rng)
        yield pi, sigma


# ---------------------------------------------------------------------------
# Vectorized engine.


def _raw_block(base: int, start: int, count: int) -> np.ndarray:
    """Draws ``start .. start+count-1`` (1-based counter) of a substream."""
    idx = np.arange(start, start + count, dtype=np.uint64)
    z = (np.uint64(base) + np.uint64(GOLDEN) * idx) & np.uint64(MASK64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def _pair_batch(base: int, first_trial: int, count: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Fisher-Yates in bulk: permutation pairs for ``count`` consecutive
    trials of one worker, starting at worker-local trial ``first_trial``."""
    dtype = np.int8 if n <= 127 else np.int16
    per_trial = 2 * (n - 1)
    if per_trial == 0:
        ones = np.ones((count, 1), dtype=dtype)
        return ones, ones.copy()
    raw = _raw_block(base, first_trial * per_trial + 1, count * per_trial)
    raw = raw.reshape(count, 2, n - 1)
    moduli = np.arange(n, 1, -1, dtype=np.uint64)
    draws = (raw % moduli[None, None, :]).astype(np.int64)
    perms = np.empty((count, 2, n), dtype=dtype)
    perms[:, :, :] = np.arange(1, n + 1, dtype=dtype)
    rows = np.arange(count)
    for which in range(2):
        arr = perms[:, which, :]
        for step, i in enumerate(range(n - 1, 0, -1)):
            j = draws[:, which, step]
            held = arr[rows, i].copy()
            arr[rows, i] = arr[rows, j]
            arr[rows, j] = held
    return perms[:, 0, :], perms[:, 1, :]


def _strong_hits(pi: np.ndarray, sigma: np.ndarray) -> int:
    n = pi.shape[1]
    dtype = np.int8 if n <= 127 else np.int16
    thresholds = np.arange(1, n + 1, dtype=pi.dtype)
    tp = np.cumsum(pi[:, :, None] <= thresholds[None, None, :], axis=1, dtype=dtype)
    ts = np.cumsum(sigma[:, :, None] <= thresholds[None, None, :], axis=1, dtype=dtype)
    return int(np.count_nonzero((tp >= ts).all(axis=(1, 2))))


def _weak_hits(pi: np.ndarray, sigma: np.ndarray) -> int:
    count, n = pi.shape
    rows = np.arange(count)[:, None]
    order = np.arange(n, dtype=pi.dtype)
    pos_p = np.empty_like(pi)
    pos_s = np.empty_like(sigma)
    pos_p[rows, pi - 1] = order
    pos_s[rows, sigma - 1] = order
    ok = np.ones(count, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            # a non-inversion of sigma must be a non-inversion of pi
            ok &= ~((pos_s[:, i] < pos_s[:, j]) & (pos_p[:, i] >= pos_p[:, j]))
    return int(np.count_nonzero(ok))


def _corner_hits(pi: np.ndarray, sigma: np.ndarray) -> int:
    count, n = pi.shape
    h = n // 2
    r = np.arange(1, h + 1, dtype=pi.dtype)
    ok = np.ones(count, dtype=bool)
    # Southwest rows bottom-up: crosses lead.
    cp = (pi[:, :h, None] <= r[None, None, :]).sum(axis=1)
    cs = (sigma[:, :h, None] <= r[None, None, :]).sum(axis=1)
    ok &= (cp >= cs).all(axis=1)
    # Northeast rows top-down.
    top = np.int32(n) - r.astype(np.int32) + 1
    cp = (pi[:, h:, None].astype(np.int32) >= top[None, None, :]).sum(axis=1)
    cs = (sigma[:, h:, None].astype(np.int32) >= top[None, None, :]).sum(axis=1)
    ok &= (cp >= cs).all(axis=1)
    # Northwest columns left-to-right: balls lead.
    cp = np.cumsum(pi[:, :h] > h, axis=1)
    cs = np.cumsum(sigma[:, :h] > h, axis=1)
    ok &= (cs >= cp).all(axis=1)
    # Southeast columns right-to-left (0-based columns n-1 down to h).
    cp = np.cumsum(pi[:, : h - 1 : -1] <= h, axis=1)
    cs = np.cumsum(sigma[:, : h - 1 : -1] <= h, axis=1)
    ok &= (cs >= cp).all(axis=1)
    return int(np.count_nonzero(ok))


_HITS = {"strong": _strong_hits, "weak": _weak_hits, "corner_event": _corner_hits}


def _worker_successes(n: int, relation: str, seed: int, worker: int, trials: int) -> int:
    if trials <= 0:
        return 0
    if n == 1:
        return trials  # S_1 is a single point; both orders are reflexive
    base = stream_base(seed, worker)
    hits = _HITS[relation]
    chunk = max(1024, min(400_000, (1 << 25) // (n * n)))
    done = 0
    successes = 0
    while done < trials:
        batch = min(chunk, trials - done)
        pi, sigma = _pair_batch(base, done, batch, n)
        successes += hits(pi, sigma)
        done += batch
    return successes


def mc_estimate(
    n: int,
    relation: str,
    trials: int,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> McEstimate:
    """Estimate the probability that a uniform pair satisfies
    ``relation`` from ``trials`` independent pairs.

    Deterministic for fixed (n, relation, trials, seed, workers); the
    success count is not promised to be invariant across different
    worker counts, since workers own disjoint substreams.
    """
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if relation == "corner_event" and n % 2:
        raise OddN(f"corner_event needs even n, got {n}")
    shares = [len(range(w, trials, workers)) for w in range(workers)]
    if workers == 1:
        successes = _worker_successes(n, relation, seed, 0, trials)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                lambda w: _worker_successes(n, relation, seed, w, shares[w]),
                range(workers),
            )
            successes = sum(parts)
    return McEstimate(n, relation, trials, successes, seed, workers)


def scaling_table(
    ns: Sequence[int],
    relation: str,
    trials: int,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> list[ScalingRow]:
    """One estimate per n, with the log-exponent column ln(p_hat)/ln(n)
    and the ratio to the previous row when the ns are consecutive."""
    ns = list(ns)
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("ns must be strictly increasing")
    rows: list[ScalingRow] = []
    previous: McEstimate | None = None
    for n in ns:
        est = mc_estimate(n, relation, trials, seed, workers)
        ln_ratio = None
        if n > 1 and est.successes > 0:
            ln_ratio = log(est.p_hat) / log(n)
        step_ratio = None
        if previous is not None and previous.n == n - 1 and previous.successes > 0:
            step_ratio = est.p_hat / previous.p_hat
        rows.append(ScalingRow(n, est, ln_ratio, step_ratio))
        previous = est
    return rows
