"""Farey sequences and the deviation statistics."""
from fractions import Fraction

import pytest

import oracles
from zetascape import farey, mediant, rh_stats


class TestFarey:
    def test_f5_matches_display(self):
        want = [Fraction(a, b) for a, b in
                [(0, 1), (1, 5), (1, 4), (1, 3), (2, 5), (1, 2),
                 (3, 5), (2, 3), (3, 4), (4, 5), (1, 1)]]
        assert farey(5) == want

    def test_f1(self):
        assert farey(1) == [Fraction(0, 1), Fraction(1, 1)]

    def test_f8_length(self):
        assert len(farey(8)) == 23
        assert len(farey(8)) == oracles.totient_sum_length(8)

    @pytest.mark.parametrize("n", [2, 3, 7, 12, 25, 50])
    def test_matches_brute_enumeration(self, n):
        assert farey(n) == oracles.farey_brute(n)

    @pytest.mark.parametrize("n", range(2, 51))
    def test_mediant_property(self, n):
        seq = farey(n)
        for left, mid, right in zip(seq, seq[1:], seq[2:]):
            assert mid == mediant(left, right)

    def test_strictly_increasing_and_reduced(self):
        seq = farey(30)
        for a, b in zip(seq, seq[1:]):
            assert a < b
        for f in seq:
            from math import gcd
            assert gcd(f.numerator, f.denominator) == 1
            assert 0 <= f <= 1

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            farey(0)


class TestRhStats:
    def test_n1_from_direct_enumeration(self):
        st = rh_stats(1)
        assert st.m_n == 2
        # d_1 = 0 - 1/2, d_2 = 1 - 1
        assert st.sum_abs_d == 0.5
        assert st.sum_sq_d == 0.25

    def test_n2_direct(self):
        # F_2 = 0/1, 1/2, 1/1; m = 3
        # d = (0-1/3, 1/2-2/3, 1-1) = (-1/3, -1/6, 0)
        st = rh_stats(2)
        assert abs(st.sum_abs_d - 0.5) < 1e-15
        assert abs(st.sum_sq_d - (1 / 9 + 1 / 36)) < 1e-15

    def test_length_identity(self):
        for n in (3, 10, 20):
            assert rh_stats(n).m_n == oracles.totient_sum_length(n)

    def test_growth_trend(self):
        # sum|d| grows subquadratically: fitted slope of log-sum vs log-n
        # stays below 1.0 over the desk range
        import math
        ns = list(range(10, 201, 10))
        xs = [math.log(n) for n in ns]
        ys = [math.log(rh_stats(n).sum_abs_d) for n in ns]
        n = len(ns)
        sx, sy = sum(xs), sum(ys)
        sxx = sum(x * x for x in xs)
        sxy = sum(x * y for x, y in zip(xs, ys))
        slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
        assert slope < 1.0
