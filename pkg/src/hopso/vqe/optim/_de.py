"""Differential evolution baseline on top of :func:`scipy.optimize.differential_evolution`."""

from __future__ import annotations

__all__ = ("DeConfig", "de_run")

import inspect
import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.optimize import differential_evolution

from hopso.vqe._defaults import DE_DEFAULTS, TWO_PI
from hopso.vqe._errors import BudgetExhaustedError, ConfigurationError
from hopso.vqe._utils.arg_decorators import with_seed_sequence
from hopso.vqe.optim._base import BestTracker, RunResult, evaluate_batch, resolve_budget

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from hopso.vqe.optim._base import Objective

logger = logging.getLogger(__name__)

# scipy renamed ``seed`` to ``rng``
_RNG_KEYWORD = (
    "rng" if "rng" in inspect.signature(differential_evolution).parameters else "seed"
)

# scipy rejects an initial population with fewer members
_MIN_POPSIZE = 5


@dataclass(frozen=True)
class DeConfig:
    """Hyperparameters of `de_run`.

    Parameters
    ----------
    popsize : int
        Number of population members (not a multiplier of ``d``).
    max_iters : int
        Generations after the initial population.
    mutation : (float, float)
        Dithering range of the differential weight, redrawn every generation.
    recombination : float
        Crossover probability.
    seed : int or None
        Seed used when `de_run` is not given an ``rng``.
    max_evals : int or None
        Evaluation budget; ``popsize * (max_iters + 1)`` when `None`.
    """

    popsize: int = DE_DEFAULTS["popsize"]
    max_iters: int = DE_DEFAULTS["max_iters"]
    mutation: tuple[float, float] = DE_DEFAULTS["mutation"]
    recombination: float = DE_DEFAULTS["recombination"]
    seed: int | None = None
    max_evals: int | None = None

    def __post_init__(self) -> None:
        problems = []
        if self.popsize < _MIN_POPSIZE:
            problems.append(f"popsize must be >= {_MIN_POPSIZE}, got {self.popsize}")
        if self.max_iters < 0:
            problems.append(f"max_iters must be >= 0, got {self.max_iters}")
        lo, hi = self.mutation
        if not 0 <= lo <= hi < 2:  # noqa: PLR2004
            problems.append(f"mutation must satisfy 0 <= min <= max < 2, got {self.mutation}")
        if not 0 <= self.recombination <= 1:
            problems.append(f"recombination must be in [0, 1], got {self.recombination}")
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
        return self.popsize * (self.max_iters + 1)


class _GenerationTracker:
    """Vectorized objective for scipy that records the best of every generation.

    Every call evaluates one generation. Once the budget is spent the call
    evaluates what it still may, records it, and raises
    `BudgetExhaustedError` to unwind the solver.
    """

    def __init__(self, cost: Objective, budget: int) -> None:
        self.cost = cost
        self.budget = budget
        self.evals = 0
        self.best = BestTracker()

    def __call__(self, xs: NDArray[np.float64]) -> NDArray[np.float64]:
        trials = np.atleast_2d(xs.T)  # scipy passes (d, S)
        k = min(len(trials), self.budget - self.evals)
        values = evaluate_batch(self.cost, trials[:k])
        self.evals += k
        self.best.update(trials[:k], values)
        self.best.record()
        if k < len(trials) or self.evals >= self.budget:
            raise BudgetExhaustedError
        return values


@with_seed_sequence
def de_run(
    cost: Objective,
    d: int,
    config: DeConfig,
    rng: np.random.SeedSequence | np.random.Generator | int | None = None,
) -> RunResult:
    """Minimize ``cost`` with best/1/bin differential evolution.

    Trial vectors of a generation are evaluated together and replace their
    parents only after the whole generation (deferred updating). The search
    box is ``[0, 2pi]^d``; no local polishing follows. scipy resamples a trial
    coordinate that leaves the box uniformly inside it rather than clipping.

    Parameters
    ----------
    cost : Objective
        Function to minimize.
    d : int
        Number of parameters.
    config : DeConfig
        Hyperparameters.
    rng : SeedSequence, Generator, int or None, optional
        Randomness for the initial population and the solver.

    Returns
    -------
    RunResult
    """
    if d < 1:
        msg = f"d must be >= 1, got {d}"
        raise ConfigurationError(msg)
    budget = resolve_budget(config.budget, cost, config.popsize)
    generator = np.random.default_rng(rng)
    init = generator.uniform(0.0, TWO_PI, size=(config.popsize, d))

    tracker = _GenerationTracker(cost, budget)
    kwargs: dict[str, Any] = {_RNG_KEYWORD: generator}
    try:
        differential_evolution(
            tracker,
            bounds=[(0.0, TWO_PI)] * d,
            strategy="best1bin",
            maxiter=config.max_iters,
            popsize=config.popsize,
            mutation=config.mutation,
            recombination=config.recombination,
            init=init,
            tol=0.0,
            atol=0.0,
            polish=False,
            updating="deferred",
            vectorized=True,
            **kwargs,
        )
    except BudgetExhaustedError:
        logger.debug("stopped after %d evaluations", tracker.evals)

    best = tracker.best
    if best.position is None:
        return RunResult(np.inf, np.full(d, np.nan), np.array([np.inf]), 0)
    return RunResult(
        best_value=best.value,
        best_position=best.position,
        trace=np.asarray(best.trace),
        evaluations_used=tracker.evals,
    )
