"""Tests for the constriction PSO baseline."""

import numpy as np
import pytest

from hopso.vqe import ConfigurationError
from hopso.vqe.optim import PsoConfig, pso_run


def sphere(x):
    return float(np.sum((x - 1.0) ** 2))


def test_config_defaults():
    config = PsoConfig()
    assert (config.c1, config.c2, config.chi) == (2.05, 2.05, 0.729)
    assert config.budget == 5000


def test_config_validation():
    with pytest.raises(ConfigurationError, match="chi must be > 0"):
        PsoConfig(chi=0.0)
    with pytest.raises(ConfigurationError, match="max_evals"):
        PsoConfig(max_evals=0)


def test_sphere_converges():
    res = pso_run(sphere, 2, PsoConfig(num_particles=10, max_iters=500), rng=0)
    assert res.best_value < 1e-6
    np.testing.assert_allclose(res.best_position, [1.0, 1.0], atol=1e-3)


def test_trace_and_budget():
    calls = []

    def cost(x):
        calls.append(x.copy())
        return sphere(x)

    config = PsoConfig(num_particles=7, max_iters=30)
    res = pso_run(cost, 3, config, rng=1)
    assert res.evaluations_used == len(calls) == 7 * 30
    assert res.iterations == 29
    assert np.all(np.diff(res.trace) <= 0)
    assert res.best_value == min(sphere(x) for x in calls)
    # initial positions are drawn from [0, 2pi)
    init = np.array(calls[:7])
    assert np.all((init >= 0) & (init < 2 * np.pi))


def test_partial_last_iteration():
    res = pso_run(sphere, 2, PsoConfig(num_particles=10, max_evals=34), rng=2)
    assert res.evaluations_used == 34
    assert res.iterations == 3


def test_constant_cost_gives_flat_trace():
    res = pso_run(lambda x: -1.5, 2, PsoConfig(max_iters=20), rng=3)
    np.testing.assert_array_equal(res.trace, np.full(20, -1.5))
    assert res.dead_count == 0
    assert not res.all_dead


def test_deterministic_for_equal_seeds():
    config = PsoConfig(num_particles=5, max_iters=40)
    a = pso_run(sphere, 3, config, rng=8)
    b = pso_run(sphere, 3, config, rng=8)
    np.testing.assert_array_equal(a.trace, b.trace)
    assert not np.array_equal(a.trace, pso_run(sphere, 3, config, rng=9).trace)


@pytest.mark.slow
def test_sphere_converges_full():
    config = PsoConfig(num_particles=10, max_iters=500)
    hits = sum(pso_run(sphere, 2, config, rng=s).best_value < 1e-6 for s in range(100))
    assert hits >= 95
