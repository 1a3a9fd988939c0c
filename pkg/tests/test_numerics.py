"""Kernel tests: log pmf accuracy and the exact tail oracle."""

import math
import random
from fractions import Fraction

import pytest

from certiprob.numerics import (
    TailConventionWarning,
    binom_tail_exact,
    binom_tail_fraction,
    log_binom_pmf,
)

from _oracles import log_pmf_reference, tail_fraction_oracle


class TestLogBinomPmf:
    def test_single_toss_identity(self):
        assert log_binom_pmf(1, 1, 0.5) == pytest.approx(math.log(0.5), rel=1e-15)

    def test_hand_countable(self):
        # 4 tosses, 2 heads: 6 of 16 outcomes
        assert log_binom_pmf(4, 2, 0.5) == pytest.approx(math.log(6 / 16), rel=1e-15)

    def test_large_case_against_exact_log(self):
        got = log_binom_pmf(9000, 3091, Fraction(1, 3))
        ref = float(log_pmf_reference(9000, 3091, Fraction(1, 3)))
        assert abs((got - ref) / ref) < 1e-12

    def test_relative_error_budget_on_grid(self):
        rng = random.Random(20240229)
        for _ in range(40):
            n = rng.randint(1, 2000)
            k = rng.randint(0, n)
            p = Fraction(rng.randint(1, 999), 1000)
            ref = log_pmf_reference(n, k, p)
            if ref == 0:
                continue
            got = log_binom_pmf(n, k, float(p))
            assert abs((got - float(ref)) / float(ref)) < 1e-13

    @pytest.mark.parametrize("n,p", [(1, 0.37), (9, 0.2), (137, 0.61)])
    def test_pmf_sums_to_one(self, n, p):
        total = math.fsum(math.exp(log_binom_pmf(n, k, p)) for k in range(n + 1))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_pmf_sums_to_one_medium_n(self):
        n = 2000
        p = 0.37
        total = math.fsum(math.exp(log_binom_pmf(n, k, p)) for k in range(n + 1))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_pmf_sums_to_one_large_n(self):
        # n at the top of the supported range; a small p concentrates all
        # but < 1e-17 of the mass below k ~ 115 (9 sigma), so the windowed
        # sum must still hit 1 within 1e-12
        n = 10**4
        p = Fraction(1, 200)
        total = math.fsum(math.exp(log_binom_pmf(n, k, p)) for k in range(116))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_result_never_positive(self):
        rng = random.Random(5)
        for _ in range(50):
            n = rng.randint(1, 50)
            k = rng.randint(0, n)
            assert log_binom_pmf(n, k, rng.uniform(1e-6, 1 - 1e-6)) <= 0.0

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            log_binom_pmf(10, 11, 0.5)
        with pytest.raises(ValueError):
            log_binom_pmf(10, -1, 0.5)
        with pytest.raises(ValueError):
            log_binom_pmf(10, 5, 0.0)
        with pytest.raises(ValueError):
            log_binom_pmf(10, 5, 1.0)
        with pytest.raises(ValueError):
            log_binom_pmf(0, 0, 0.5)


class TestBinomTailExact:
    def test_flagship_five_places(self):
        value = binom_tail_exact(9000, 3090, Fraction(1, 3))
        assert round(value, 5) == 0.02170

    def test_tail_at_n_is_zero(self):
        assert binom_tail_exact(25, 25, 0.3) == 0.0

    def test_hand_rational_value(self):
        # sum of C(10,k)/1024 over k=5..10 = 638/1024 = 319/512
        assert binom_tail_exact(10, 4, 0.5) == pytest.approx(319 / 512, rel=1e-14)
        assert tail_fraction_oracle(10, 4, Fraction(1, 2)) == Fraction(319, 512)

    def test_out_of_range_conventions(self):
        with pytest.warns(TailConventionWarning):
            assert binom_tail_exact(5, 6, 0.5) == 0.0
        assert binom_tail_exact(5, -1, 0.5) == 1.0

    def test_agrees_with_exact_rational(self):
        rng = random.Random(99)
        for _ in range(40):
            n = rng.randint(1, 200)
            l = rng.randint(0, n)
            p = Fraction(rng.randint(1, 99), 100)
            exact = tail_fraction_oracle(n, l, p)
            got = binom_tail_exact(n, l, float(p))
            if exact == 0:
                assert got == 0.0
            else:
                assert abs(got - float(exact)) <= 1e-12 * float(exact)

    def test_monotone_in_l_and_p(self):
        rng = random.Random(123)
        for _ in range(20):
            n = rng.randint(2, 150)
            p = rng.uniform(0.05, 0.95)
            tails = [binom_tail_exact(n, l, p) for l in range(0, n + 1)]
            assert all(a >= b for a, b in zip(tails, tails[1:]))
            l = rng.randint(0, n - 1)
            lo, hi = sorted((rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)))
            assert binom_tail_exact(n, l, lo) <= binom_tail_exact(n, l, hi) + 1e-15


class TestBinomTailFraction:
    def test_matches_independent_oracle(self):
        rng = random.Random(7)
        for _ in range(25):
            n = rng.randint(1, 120)
            l = rng.randint(-1, n + 0)
            p = Fraction(rng.randint(1, 9), 10)
            assert binom_tail_fraction(n, l, p) == tail_fraction_oracle(n, l, p)
