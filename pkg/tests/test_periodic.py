"""Tests for the circle geometry of best positions, attractors and thresholds."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopso.vqe.optim import (
    attractor_linear,
    attractor_periodic,
    circular_distance,
    threshold_amplitude,
    threshold_amplitude_linear,
    wrap_best,
)

TWO_PI = 2 * np.pi
N_CASES = 10_000

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
angle = st.floats(min_value=0.0, max_value=TWO_PI, exclude_max=True)


##############################################################################
# wrap_best


@pytest.mark.parametrize(
    ("x", "r", "expected"),
    [(7.0, 0.0, 7.0 - TWO_PI), (1.0, 0.0, 1.0), (-0.5, 0.2, -0.5 + TWO_PI)],
)
def test_wrap_best_examples(x, r, expected):
    assert wrap_best(x, r) == pytest.approx(expected, abs=1e-12)


@given(x=finite, r=angle)
def test_wrap_best_lands_in_window(x, r):
    y = float(wrap_best(x, r))
    assert r <= y < r + TWO_PI
    assert circular_distance(x, y) < 1e-9


def test_wrap_best_never_returns_upper_edge():
    r = 0.3
    x = np.nextafter(r, -np.inf)  # just below the window
    assert wrap_best(x, r) < r + TWO_PI


def test_wrap_best_vectorized(rng):
    x = rng.uniform(-50, 50, size=(N_CASES,))
    r = rng.uniform(0, TWO_PI)
    y = wrap_best(x, r)
    assert y.shape == x.shape
    assert np.all((y >= r) & (y < r + TWO_PI))


##############################################################################
# Attractor


def test_attractor_examples():
    assert attractor_periodic(1.0, 1.0, 1.0, 1.0, 0.0) == 1.0
    assert attractor_periodic(1.0, 2.0, 1.0, 1.0, 0.0) == 1.5
    assert attractor_periodic(0.1, 6.2, 1.0, 1.0, 0.0) == pytest.approx(
        ((0.1 + 6.2) / 2 + np.pi) % TWO_PI, abs=1e-12
    )
    assert attractor_periodic(0.1, 6.2, 1.0, 1.0, 0.0) == pytest.approx(0.00841, abs=1e-5)


def test_attractor_far_case_matches_closed_form(rng):
    # for equal weights the far case is the mean shifted by 2pi / (c1 + c2)
    r = rng.uniform(0, TWO_PI, N_CASES)
    p = r + rng.uniform(0, TWO_PI, N_CASES)
    g = r + rng.uniform(0, TWO_PI, N_CASES)
    far = np.abs(p - g) > np.pi
    c = 1.0
    closed = np.mod((p + g) / 2 + TWO_PI / (2 * c) - r, TWO_PI) + r
    out = attractor_periodic(p, g, c, c, r)
    np.testing.assert_allclose(out[far], closed[far], atol=1e-12)


def test_attractor_tie_is_near_case():
    assert attractor_periodic(0.5, 0.5 + np.pi, 1.0, 1.0, 0.0) == pytest.approx(
        0.5 + np.pi / 2
    )


def test_attractor_wrap_equivariance(rng):
    r = rng.uniform(0, TWO_PI, N_CASES)
    p = r + rng.uniform(0, TWO_PI, N_CASES)
    g = r + rng.uniform(0, TWO_PI, N_CASES)
    c1, c2 = rng.uniform(0.1, 3, (2, N_CASES))
    k = rng.integers(-3, 4, N_CASES)

    base = attractor_periodic(p, g, c1, c2, r)
    shifted = wrap_best(attractor_periodic(p + TWO_PI * k, g, c1, c2, r), r)
    assert np.max(circular_distance(base, shifted)) < 1e-9


def test_attractor_minor_arc_property(rng):
    r = rng.uniform(0, TWO_PI, N_CASES)
    p = r + rng.uniform(0, TWO_PI, N_CASES)
    g = r + rng.uniform(0, TWO_PI, N_CASES)
    c1, c2 = rng.uniform(0.1, 3, (2, N_CASES))

    a = attractor_periodic(p, g, c1, c2, r)
    span = circular_distance(p, g)
    assert np.all(circular_distance(a, p) <= span + 1e-9)
    assert np.all(circular_distance(a, g) <= span + 1e-9)
    assert np.all((a >= r) & (a < r + TWO_PI))


def test_attractor_linear():
    assert attractor_linear(0.0, 3.0, 1.0, 2.0) == 2.0
    np.testing.assert_array_equal(
        attractor_linear(np.array([0.0, 6.0]), np.array([2.0, 0.0]), 1.0, 1.0),
        [1.0, 3.0],
    )


##############################################################################
# Threshold amplitude


def test_threshold_examples():
    assert threshold_amplitude(0.4, 0.4, 2.05) == 0.0
    assert threshold_amplitude(0.0, np.pi / 2, 2.05) == pytest.approx(
        np.pi / 4 * 2.05, abs=1e-12
    )
    assert threshold_amplitude(0.1, 6.2, 2.05) == pytest.approx(
        (TWO_PI - 6.1) / 2 * 2.05, abs=1e-12
    )


def test_threshold_symmetry_periodicity_and_range(rng):
    p, g = rng.uniform(-20, 20, (2, N_CASES))
    m = rng.uniform(0.1, 4, N_CASES)
    j, k = rng.integers(-5, 6, (2, N_CASES))

    th = threshold_amplitude(p, g, m)
    np.testing.assert_allclose(threshold_amplitude(g, p, m), th, atol=1e-12)
    np.testing.assert_allclose(
        threshold_amplitude(p + TWO_PI * j, g + TWO_PI * k, m), th, atol=1e-9
    )
    assert np.all((th >= 0) & (th <= np.pi * m / 2 + 1e-12))


def test_threshold_linear_ignores_periodicity():
    assert threshold_amplitude_linear(0.1, 6.2, 2.0) == pytest.approx(6.1)
    assert threshold_amplitude(0.1, 6.2, 2.0) == pytest.approx(TWO_PI - 6.1)
