import cmath

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from binperiod.spectral import (
    fisher_g,
    fisher_g_batch,
    in_set_A,
    num_frequencies,
    periodogram,
)


def brute_force_periodogram(x):
    """Independent O(d^2) evaluation of the defining sum via cmath."""
    x = list(map(float, x))
    d = len(x)
    out = []
    for j in range(1, (d - 1) // 2 + 1):
        total = 0j
        for ell in range(1, d + 1):
            total += x[ell - 1] * cmath.exp(-1j * 2.0 * cmath.pi * ell * j / d)
        out.append(abs(total) ** 2 / d)
    return np.array(out)


def test_q_counts():
    assert num_frequencies(3) == 1
    assert num_frequencies(4) == 1
    assert num_frequencies(5) == 2
    assert num_frequencies(60) == 29


def test_rejects_too_short_vectors():
    with pytest.raises(ValueError, match="q would be 0"):
        periodogram([1.0, 2.0])


def test_single_spike_d4():
    pgram = periodogram([1.0, 0.0, 0.0, 0.0])
    assert pgram.q == 1
    assert pgram.values[0] == pytest.approx(0.25, rel=1e-12)


def test_cancelling_spikes_d4():
    pgram = periodogram([1.0, 0.0, 1.0, 0.0])
    assert pgram.values[0] == pytest.approx(0.0, abs=1e-15)


def test_constant_vector_vanishes():
    for d in (3, 4, 7, 12):
        values = periodogram(np.full(d, 3.7)).values
        assert np.all(values <= 1e-12)


def test_matches_brute_force_oracle():
    rng = np.random.default_rng(7)
    for d in range(3, 65):
        for _ in range(3):
            x = rng.normal(size=d)
            fast = periodogram(x).values
            slow = brute_force_periodogram(x)
            assert np.allclose(fast, slow, rtol=1e-10, atol=1e-12)


def test_in_set_A_examples():
    assert in_set_A(np.full(9, 0.4))
    # even d: constant plus alternating sign component
    d = 10
    signs = np.where(np.arange(1, d + 1) % 2 == 0, 1.0, -1.0)
    assert in_set_A(1.3 + 0.4 * signs)
    assert not in_set_A([1.0, 0.0, 0.0, 0.0])


def test_alternating_not_degenerate_for_odd_d():
    # For odd d the alternating pattern is off the Fourier grid.
    d = 9
    signs = np.where(np.arange(1, d + 1) % 2 == 0, 1.0, -1.0)
    assert not in_set_A(0.5 + 0.25 * signs)


def test_statistic_single_spike_d5():
    # Both ordinates equal 1/5; tie resolves to the smallest j.
    stat = fisher_g([1.0, 0.0, 0.0, 0.0, 0.0])
    assert stat.value == pytest.approx(0.5, rel=1e-12)
    assert stat.argmax_j == 1
    assert not stat.degenerate


def test_statistic_degenerate_on_constant():
    stat = fisher_g(np.full(8, 0.25))
    assert stat.degenerate
    assert stat.value == 0.0
    assert stat.argmax_j == 1


def test_statistic_bounds_random():
    rng = np.random.default_rng(11)
    for d in (3, 6, 15, 31, 60):
        q = num_frequencies(d)
        values, argmax, degenerate = fisher_g_batch(rng.normal(size=(50, d)))
        assert not degenerate.any()
        assert np.all(values >= 1.0 / q - 1e-12)
        assert np.all(values <= 1.0 + 1e-12)
        assert np.all((argmax >= 1) & (argmax <= q))


def test_degenerate_flag_matches_set_membership():
    rng = np.random.default_rng(13)
    for d in (4, 5, 12):
        candidates = [
            np.full(d, 0.3),
            rng.normal(size=d),
            2.0 + 0.1 * np.where(np.arange(1, d + 1) % 2 == 0, 1.0, -1.0),
        ]
        for x in candidates:
            assert in_set_A(x) == fisher_g(x).degenerate


def _spectral_atol(*ordinate_sets):
    # Shift residue scales with spectral mass; floor the scale at 1.
    return 1e-10 * max(1.0, *(float(v.sum()) for v in ordinate_sets))


vector_st = st.integers(3, 16).flatmap(
    lambda d: st.lists(
        st.floats(-10, 10, allow_nan=False, allow_infinity=False),
        min_size=d,
        max_size=d,
    )
)


@given(x=vector_st, c=st.floats(-100, 100, allow_nan=False, allow_infinity=False))
@settings(max_examples=200)
def test_shift_invariance(x, c):
    x = np.array(x)
    base = periodogram(x).values
    shifted = periodogram(x + c).values
    atol = _spectral_atol(base, shifted)
    assert np.all(np.abs(base - shifted) <= atol)


@given(x=vector_st, c=st.floats(0.01, 100.0, allow_nan=False))
@settings(max_examples=200)
def test_scale_invariance(x, c):
    x = np.array(x)
    assume(periodogram(x).values.sum() > 1e-6 * max(1.0, float(x @ x)))
    assert abs(fisher_g(c * x).value - fisher_g(x).value) <= 1e-12


@given(
    x=vector_st,
    a=st.floats(-5, 5, allow_nan=False),
    b=st.floats(-5, 5, allow_nan=False),
    c=st.floats(0.01, 100.0, allow_nan=False),
)
@settings(max_examples=200)
def test_affine_recentering_invariance(x, a, b, c):
    # Recentring by any member of A and rescaling never moves the statistic.
    x = np.array(x)
    d = x.size
    assume(periodogram(x).values.sum() > 1e-6 * max(1.0, float(x @ x)))
    signs = np.where(np.arange(1, d + 1) % 2 == 0, 1.0, -1.0)
    e = a + (b * signs if d % 2 == 0 else 0.0)
    before = fisher_g(x)
    after = fisher_g(c * (x - e))
    assert after.degenerate == before.degenerate
    assert abs(after.value - before.value) <= 1e-9
