import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binperiod.nulldist import (
    Q_VALIDITY_CAP,
    critical_value,
    p_value,
    sample_limit_statistic,
    tail,
    tail_approx,
)
from binperiod.spectral import GStatistic


def tail_fraction(q: int, x: Fraction) -> Fraction:
    """Exact rational evaluation of the alternating tail sum."""
    total = Fraction(0)
    for j in range(1, q + 1):
        base = 1 - j * x
        if base <= 0:
            continue
        total += (-1) ** (j + 1) * math.comb(q, j) * base ** (q - 1)
    return min(Fraction(1), max(Fraction(0), total))


def test_two_term_hand_value():
    # q=2, x=0.75: 2*(0.25) - 0
    assert tail(2, 0.75) == pytest.approx(0.5, abs=1e-14)


def test_tail_is_zero_at_and_above_one():
    for q in (1, 2, 7, 29):
        assert tail(q, 1.0) == 0.0
        assert tail(q, 1.5) == 0.0


def test_tail_is_one_on_lower_support():
    # exact thanks to the support shortcut at x <= 1/q
    for q in range(2, 31):
        assert tail(q, 1.0 / q) == 1.0
        assert tail(q, 0.9 / q) == 1.0
    assert tail(1, 0.999) == 1.0


def test_tail_monotone_grid():
    # Just above the support edge the true tail sits at 1 - O(eps) while the
    # alternating sum cancels heavily; tolerate that plateau noise (it grows
    # with q) but nothing in the statistically relevant region.
    xs = np.linspace(0.0, 1.0, 101)
    for q in range(1, 101):
        slack = 5e-12 if q <= 50 else 5e-8
        values = [tail(q, x) for x in xs]
        assert all(a >= b - slack for a, b in zip(values, values[1:]))
        assert values[0] == 1.0
        assert values[-1] == 0.0


@given(
    q=st.integers(1, 50),
    num=st.integers(1, 63),
)
@settings(max_examples=200)
def test_tail_matches_rational_oracle(q, num):
    # x = num/64 is exactly representable, so the two routes see the same x.
    # q <= 50 is the exact-binomial path; the log-domain path is looser and
    # covered separately below.
    x = Fraction(num, 64)
    assert tail(q, float(x)) == pytest.approx(float(tail_fraction(q, x)), abs=5e-13)


def test_log_domain_matches_rational_oracle():
    # q > 50 switches to log-domain binomials.
    for q in (51, 64, 100):
        for num in (1, 3, 7, 13, 25, 40, 63):
            x = Fraction(num, 64)
            assert tail(q, float(x)) == pytest.approx(
                float(tail_fraction(q, x)), abs=1e-11
            )


def test_tail_above_validity_cap_falls_back():
    q = Q_VALIDITY_CAP + 10
    with pytest.warns(UserWarning, match="falling back"):
        value = tail(q, 0.05)
    assert value == tail_approx(q, 0.05)


def test_invalid_q():
    with pytest.raises(ValueError, match="invalid q"):
        tail(0, 0.5)
    with pytest.raises(ValueError, match="invalid q"):
        critical_value(0, 0.05)


def test_reference_tail_value():
    # frozen from the exact rational oracle
    assert tail(29, 0.2033) == pytest.approx(0.0497805976, abs=1e-9)


def test_critical_value_reference_q29():
    crit = critical_value(29, 0.05)
    assert crit.approx == pytest.approx(0.2033, abs=5e-4)
    assert crit.exact == pytest.approx(0.2031740774, abs=1e-8)
    assert crit.exact < crit.approx


def test_critical_value_q2_closed_form():
    # On [1/2, 1] the tail is 2(1-x), so the median point is 0.75 for both.
    crit = critical_value(2, 0.5)
    assert crit.exact == pytest.approx(0.75, abs=1e-9)
    assert crit.approx == pytest.approx(0.75, abs=1e-12)


def test_critical_value_q1_degenerate():
    crit = critical_value(1, 0.05)
    assert crit.exact == 1.0
    assert crit.approx == 1.0


def test_critical_value_round_trip():
    for q in (2, 3, 5, 14, 29, 60, 100):
        for alpha in (0.01, 0.05, 0.1, 0.5):
            crit = critical_value(q, alpha)
            assert tail(q, crit.exact) == pytest.approx(alpha, abs=1e-9)


def test_approx_critical_value_is_conservative():
    # The dropped alternating terms are a positive correction at small alpha;
    # q=2 is an exact-equality case, so allow the bisection resolution.
    for q in range(2, 61):
        for alpha in (0.01, 0.05, 0.1):
            crit = critical_value(q, alpha)
            assert crit.approx >= crit.exact - 2e-10


def test_invalid_level():
    for alpha in (0.0, 1.0, -0.2, 1.7):
        with pytest.raises(ValueError, match="invalid level"):
            critical_value(5, alpha)


def test_p_value_degenerate_is_one():
    stat = GStatistic(value=0.0, argmax_j=1, degenerate=True)
    assert p_value(29, stat) == 1.0
    assert p_value(29, stat, "approx") == 1.0


def test_p_value_conventions():
    stat = GStatistic(value=0.2033, argmax_j=3, degenerate=False)
    assert p_value(29, stat, "exact") == pytest.approx(0.0497805976, abs=1e-9)
    assert p_value(29, stat, "approx") == pytest.approx(0.05, abs=2e-4)
    with pytest.raises(ValueError, match="convention"):
        p_value(29, stat, "bayes")


def test_p_value_flood_statistics():
    # Reported p-values 0.4900 and 0.4062 follow the one-term convention;
    # the small residual covers rounding of the published statistics.
    assert p_value(29, 0.1356, "approx") == pytest.approx(0.4902428, abs=1e-6)
    assert abs(p_value(29, 0.1356, "approx") - 0.4900) < 25e-4
    assert p_value(29, 0.1414, "approx") == pytest.approx(0.4060156, abs=1e-6)
    assert abs(p_value(29, 0.1414, "approx") - 0.4062) < 25e-4
    # exact-tail counterparts, frozen from the rational oracle
    assert p_value(29, 0.1356, "exact") == pytest.approx(0.4341151, abs=1e-6)
    assert p_value(29, 0.1414, "exact") == pytest.approx(0.3698711, abs=1e-6)


def test_sampler_is_deterministic_and_chunk_independent():
    w = np.ones(11)
    a = sample_limit_statistic(11, w, 5, seed=7)
    b = sample_limit_statistic(11, w, 5, seed=7, chunk=2)
    c = sample_limit_statistic(11, w, 5, seed=7, chunk=3)
    assert np.array_equal(a, b)
    assert np.array_equal(a, c)
    single = sample_limit_statistic(11, w, 1, seed=7)
    assert single[0] == a[0]


def test_sampler_validates_weights():
    with pytest.raises(ValueError, match="invalid weight"):
        sample_limit_statistic(5, [1.0, 1.0, 0.0, 1.0, 1.0], 3)
    with pytest.raises(ValueError, match="weights"):
        sample_limit_statistic(5, [1.0, 1.0], 3)
    with pytest.raises(ValueError, match="q would be 0"):
        sample_limit_statistic(2, [1.0, 1.0], 3)
    with pytest.raises(ValueError, match="count"):
        sample_limit_statistic(5, np.ones(5), 0)


def test_sampler_matches_tail_for_equal_weights():
    # With unit weights the draws follow the closed-form null law exactly.
    d, q, count = 11, 5, 20000
    draws = sample_limit_statistic(d, np.ones(d), count, seed=3)
    for x in (0.3, 0.45, 0.6):
        expected = tail(q, x)
        se = math.sqrt(expected * (1.0 - expected) / count)
        assert abs(float(np.mean(draws >= x)) - expected) <= 4.0 * se
