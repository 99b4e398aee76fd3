"""Constriction-factor particle swarm optimization."""

from __future__ import annotations

__all__ = ("PsoConfig", "pso_run")

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from hopso.vqe._defaults import PSO_DEFAULTS, TWO_PI
from hopso.vqe._errors import ConfigurationError
from hopso.vqe._utils.arg_decorators import with_seed_sequence
from hopso.vqe.optim._base import (
    BestTracker,
    RunResult,
    guarded_batch,
    resolve_budget,
    split_seed,
)

if TYPE_CHECKING:
    from hopso.vqe.optim._base import Objective

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PsoConfig:
    """Hyperparameters of `pso_run`.

    Parameters
    ----------
    num_particles, max_iters : int
        Swarm size and iterations after the initial evaluation.
    c1, c2 : float
        Cognitive and social acceleration coefficients.
    chi : float
        Constriction factor.
    seed : int or None
        Seed used when `pso_run` is not given an ``rng``.
    max_evals : int or None
        Evaluation budget; ``num_particles * max_iters`` when `None`.
    """

    num_particles: int = PSO_DEFAULTS["num_particles"]
    max_iters: int = PSO_DEFAULTS["max_iters"]
    c1: float = PSO_DEFAULTS["c1"]
    c2: float = PSO_DEFAULTS["c2"]
    chi: float = PSO_DEFAULTS["chi"]
    seed: int | None = None
    max_evals: int | None = None

    def __post_init__(self) -> None:
        problems = []
        if self.num_particles < 1:
            problems.append(f"num_particles must be >= 1, got {self.num_particles}")
        if self.max_iters < 0:
            problems.append(f"max_iters must be >= 0, got {self.max_iters}")
        for name in ("c1", "c2", "chi"):
            if not getattr(self, name) > 0:
                problems.append(f"{name} must be > 0, got {getattr(self, name)}")
        if self.max_evals is not None and self.max_evals < 1:
            problems.append(f"max_evals must be >= 1, got {self.max_evals}")
        if problems:
            msg = "; ".join(problems)
            raise ConfigurationError(msg)

    @property
    def budget(self) -> int:
        """Evaluation budget of one run."""
        if self.max_evals is not None:
            return self.max_evals
        return self.num_particles * self.max_iters


@with_seed_sequence
def pso_run(
    cost: Objective,
    d: int,
    config: PsoConfig,
    rng: np.random.SeedSequence | np.random.Generator | int | None = None,
) -> RunResult:
    """Minimize ``cost`` with global-best constriction PSO.

    ``v <- chi (v + c1 u1 (p - x) + c2 u2 (g - x))`` and ``x <- x + v``, with
    fresh ``u1, u2 ~ U[0, 1]^d`` per particle and step. Positions start in
    ``[0, 2pi)^d`` and are unbounded afterwards. The global best is updated
    once per iteration, after every particle has been evaluated.

    Parameters
    ----------
    cost : Objective
        Function to minimize.
    d : int
        Number of parameters.
    config : PsoConfig
        Hyperparameters.
    rng : SeedSequence, Generator, int or None, optional
        Randomness; child ``i + 1`` of the sequence drives particle ``i``.

    Returns
    -------
    RunResult
    """
    if d < 1:
        msg = f"d must be >= 1, got {d}"
        raise ConfigurationError(msg)
    n = config.num_particles
    budget = resolve_budget(config.budget, cost, n)

    # child 0 is reserved for swarm-level draws, matching hopso_run
    _, *particle_seeds = split_seed(rng, n + 1)
    rngs = [np.random.default_rng(s) for s in particle_seeds]
    x = np.array([g.uniform(0.0, TWO_PI, size=d) for g in rngs])
    v = np.array([g.uniform(-1.0, 1.0, size=d) for g in rngs])

    tracker = BestTracker()
    values = guarded_batch(cost, x)
    if values is None:
        return RunResult(np.inf, np.full(d, np.nan), np.array([np.inf]), 0)
    evals = n
    pbest, pbest_val = x.copy(), values.copy()
    tracker.update(pbest, pbest_val)
    tracker.record()

    for it in range(config.max_iters):
        k = min(n, budget - evals)
        if k <= 0:
            break

        g = tracker.position
        for i in range(k):
            u1 = rngs[i].uniform(size=d)
            u2 = rngs[i].uniform(size=d)
            v[i] = config.chi * (
                v[i]
                + config.c1 * u1 * (pbest[i] - x[i])
                + config.c2 * u2 * (g - x[i])
            )
            x[i] = x[i] + v[i]

        values = guarded_batch(cost, x[:k])
        if values is None:
            break
        evals += k

        better = values < pbest_val[:k]
        pbest[:k][better] = x[:k][better]
        pbest_val[:k][better] = values[better]
        if tracker.update(pbest, pbest_val):
            logger.debug("iteration %d: global best %.10g", it + 1, tracker.value)
        tracker.record()

    return RunResult(
        best_value=tracker.value,
        best_position=tracker.position,
        trace=np.asarray(tracker.trace),
        evaluations_used=evals,
    )
