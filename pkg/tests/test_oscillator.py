"""Tests for the damped oscillator motion and phase reconstruction."""

import numpy as np
import pytest

from hopso.vqe.optim import (
    advance_time,
    init_amplitude_phase,
    oscillator_position,
    oscillator_velocity,
)


class FixedUniform:
    """Stand-in generator whose ``uniform`` returns ``low + u (high - low)``."""

    def __init__(self, u):
        self.u = u

    def uniform(self, low=0.0, high=1.0, size=None):
        return low + self.u * (high - low)


def test_position_examples():
    assert oscillator_position(1.0, 0.0, 1.0, 0.0, 0.0, 0.0) == 1.0
    assert oscillator_position(1.0, 0.1, 1.0, 0.0, np.pi, 0.0) == pytest.approx(
        -np.exp(-0.1 * np.pi), abs=1e-12
    )
    assert oscillator_position(2.0, 0.0, 1.0, np.pi / 2, 0.0, 3.0) == pytest.approx(3.0)


def test_position_is_elementwise():
    out = oscillator_position(
        np.array([1.0, 2.0]), 0.0, 1.0, np.array([0.0, np.pi]), 0.0, np.array([0.0, 1.0])
    )
    np.testing.assert_allclose(out, [1.0, -1.0])


def test_velocity_is_derivative_of_position(rng):
    amp, lam, omega, theta, a = 1.3, 0.2, 1.0, 0.7, 0.4
    h = 1e-6
    for t in rng.uniform(0, 10, 20):
        numeric = (
            oscillator_position(amp, lam, omega, theta, t + h, a)
            - oscillator_position(amp, lam, omega, theta, t - h, a)
        ) / (2 * h)
        analytic = oscillator_velocity(amp, lam, omega, theta, t)
        assert analytic == pytest.approx(numeric, abs=1e-7)


##############################################################################
# Clock


def test_advance_time_with_fixed_draw():
    assert advance_time(1.0, 2 * np.pi, FixedUniform(0.5)) == pytest.approx(1.0 + np.pi)
    assert advance_time(0.0, 3.0, FixedUniform(0.0)) == 0.0


def test_advance_time_distribution(rng):
    t_ul = 2 * np.pi
    steps = np.array([advance_time(0.0, t_ul, rng) for _ in range(100_000)])
    assert np.all((steps >= 0) & (steps < t_ul))
    # mean of U[0, t_ul) is t_ul / 2 with standard error t_ul / sqrt(12 n)
    assert abs(steps.mean() - t_ul / 2) < 4 * t_ul / np.sqrt(12 * 100_000)


def test_advance_time_per_dimension(rng):
    t = np.array([0.0, 1.0, 2.0])
    out = advance_time(t, 2 * np.pi, rng)
    assert out.shape == (3,)
    steps = out - t
    assert np.all((steps >= 0) & (steps < 2 * np.pi))
    assert len(np.unique(steps)) == 3
    np.testing.assert_array_equal(t, [0.0, 1.0, 2.0])


##############################################################################
# Amplitude and phase


def test_init_examples():
    out = init_amplitude_phase(0.0, 1.0, 0.0, 0.0, 1.0)
    assert out.amplitude == 1.0
    assert out.phase == pytest.approx(1.5 * np.pi)
    assert out.valid

    at_rest = init_amplitude_phase(2.0, 0.0, 1.0, 0.0, 1.0)
    assert at_rest.amplitude == 1.0
    assert at_rest.phase == 0.0


def test_init_at_attractor_at_rest_is_dead():
    out = init_amplitude_phase(0.0, 0.0, 0.0, 0.1, 1.0)
    assert not out.valid
    assert np.isnan(out.phase)


def test_reconstruction_reproduces_state(rng):
    n = 10_000
    x0 = rng.uniform(-10, 10, n)
    v0 = rng.uniform(-5, 5, n)
    a = rng.uniform(-10, 10, n)
    lam = 0.05
    omega = 1.0

    out = init_amplitude_phase(x0, v0, a, lam, omega)
    # a moving particle always has |x0 - a| <= A0
    assert out.valid.all()
    assert np.all((out.phase >= 0) & (out.phase < 2 * np.pi))

    x = oscillator_position(out.amplitude, lam, omega, out.phase, 0.0, a)
    v = oscillator_velocity(out.amplitude, lam, omega, out.phase, 0.0)
    np.testing.assert_allclose(x, x0, atol=1e-9)
    np.testing.assert_allclose(v, v0, atol=1e-6)


def test_reconstruction_marks_only_resting_coordinates_dead():
    x0 = np.array([1.0, 1.0, 1.0])
    v0 = np.array([0.5, 0.0, -2.0])
    out = init_amplitude_phase(x0, v0, np.ones(3), 0.1, 1.0)
    np.testing.assert_array_equal(out.valid, [True, False, True])
    np.testing.assert_array_equal(out.amplitude, [0.5, 0.0, 2.0])
    assert np.isnan(out.phase[1])


def test_reconstruction_of_negative_sine_branch():
    # v0 + lam dx < 0 keeps the arccos branch in [0, pi]
    out = init_amplitude_phase(0.5, -1.0, 0.0, 0.0, 1.0)
    assert 0 <= out.phase <= np.pi
    assert oscillator_velocity(out.amplitude, 0.0, 1.0, out.phase, 0.0) == pytest.approx(-1.0)
