"""Farey sequences, mediants, and the deviation statistics whose growth
rates restate the Riemann hypothesis."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class FareyStats:
    n: int
    m_n: int          # sequence length, 0/1 counted as the first entry
    sum_abs_d: float  # sum |a_k - k/m_n|
    sum_sq_d: float   # sum (a_k - k/m_n)^2


def farey(n: int) -> list[Fraction]:
    """F_n in increasing order, 0/1 through 1/1, by the next-term
    recurrence (each entry is the mediant of its neighbours)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    seq = [Fraction(0, 1), Fraction(1, n)]
    a, b, c, d = 0, 1, 1, n
    while (c, d) != (1, 1):
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        seq.append(Fraction(c, d))
    return seq


def mediant(x: Fraction, y: Fraction) -> Fraction:
    return Fraction(x.numerator + y.numerator, x.denominator + y.denominator)


def rh_stats(n: int) -> FareyStats:
    """Deviations d_k = a_k - k/m_n of F_n from the uniform ladder,
    indexed from a_1 = 0/1; sums computed in exact arithmetic."""
    seq = farey(n)
    m = len(seq)
    s_abs = Fraction(0)
    s_sq = Fraction(0)
    for k, a in enumerate(seq, start=1):
        d = a - Fraction(k, m)
        s_abs += abs(d)
        s_sq += d * d
    return FareyStats(n, m, float(s_abs), float(s_sq))
