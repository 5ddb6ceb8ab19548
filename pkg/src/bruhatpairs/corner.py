"""Closed-form probability of the four-corner ballot event.

For even n, split each permutation matrix into four n/2 x n/2 corners
and let M_1 (M_2) be the number of rows supporting the southwest corner
of the cross (ball) matrix.  Each M_i is hypergeometric, and the
probability that a uniform pair lies in the corner event while
(M_1, M_2) = (m_1, m_2) has the closed form

    [ (m1 - m2 + 1) (n/2 + 1) / ((n/2 - m2 + 1) (m1 + 1)) ]^4
        * C(n/2, m1)^2 C(n/2, m2)^2 / C(n, n/2)^2

for m1 >= m2, and 0 otherwise.  Summing over m1 >= m2 gives the exact
event probability, which decays like 1/n^2 and upper-bounds the strong
comparability probability.

A caution on the denominator: an alternate rendering of the same term
replaces (n/2 - m2 + 1) with (n/2 - m1 + 1).  That variant is wrong —
at n = 2, m1 = 1, m2 = 0 it evaluates to 4, which cannot be a
probability, while the form used here matches exhaustive enumeration of
all pairs (see ``alt_denominator``, kept only to document the rejected
form).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import BadM, OddN, TooLarge

__all__ = [
    "CornerCounts",
    "hypergeom_pmf",
    "dagger_term",
    "corner_event_prob",
    "CORNER_PROB_MAX_N",
]

CORNER_PROB_MAX_N = 200


def _check_even(n: int) -> int:
    if n < 2 or n % 2:
        raise OddN(f"need positive even n, got {n}")
    return n // 2


@dataclass(frozen=True)
class CornerCounts:
    """Supporting-row counts (m1 for crosses, m2 for balls) of the
    southwest corner, for matrices of even size n."""

    n: int
    m1: int
    m2: int

    def __post_init__(self) -> None:
        h = _check_even(self.n)
        for m in (self.m1, self.m2):
            if not 0 <= m <= h:
                raise BadM(f"m={m} must lie in 0..{h}")

    @property
    def m3(self) -> int:
        return self.n // 2 - self.m1

    @property
    def m4(self) -> int:
        return self.n // 2 - self.m2


def hypergeom_pmf(n: int, m: int) -> Fraction:
    """P(M_i = m) = C(n/2, m)^2 / C(n, n/2): the law of the overlap of a
    uniform n/2-subset of [n] with the first half."""
    h = _check_even(n)
    if not 0 <= m <= h:
        raise BadM(f"m={m} must lie in 0..{h}")
    return Fraction(comb(h, m) ** 2, comb(n, h))


def dagger_term(c: CornerCounts, alt_denominator: bool = False) -> Fraction:
    """Exact probability of the corner event restricted to
    (M_1, M_2) = (m1, m2); zero when m1 < m2.

    ``alt_denominator`` switches to the rejected variant with
    (n/2 - m1 + 1) in the denominator; it exceeds 1 already at
    (n=2, m1=1, m2=0) and fails the exhaustive cross-check, so it exists
    purely to document the discrepancy between the two renderings.
    """
    if c.m1 < c.m2:
        return Fraction(0)
    h = c.n // 2
    low = c.m3 + 1 if alt_denominator else c.m4 + 1
    factor = Fraction((c.m1 - c.m2 + 1) * (h + 1), low * (c.m1 + 1))
    return (
        factor**4
        * Fraction(comb(h, c.m1) ** 2 * comb(h, c.m2) ** 2, comb(c.n, h) ** 2)
    )


def corner_event_prob(n: int) -> Fraction:
    """Exact probability that a uniform pair satisfies all four corner
    ballot conditions: the sum of ``dagger_term`` over m1 >= m2."""
    h = _check_even(n)
    if n > CORNER_PROB_MAX_N:
        raise TooLarge(
            f"corner probability guard: n={n} exceeds {CORNER_PROB_MAX_N}"
        )
    total = Fraction(0)
    for m1 in range(h + 1):
        for m2 in range(m1 + 1):
            total += dagger_term(CornerCounts(n, m1, m2))
    return total
