"""Shared pieces of the derivative-free optimizers."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Protocol, runtime_checkable

import numpy as np

from hopso.vqe._errors import BudgetExhaustedError, ConfigurationError

if TYPE_CHECKING:
    from numpy.typing import NDArray

logger = logging.getLogger(__name__)


@runtime_checkable
class Objective(Protocol):
    """A cost function over real vectors."""

    def __call__(self, x: NDArray[np.float64], /) -> float:
        ...


@runtime_checkable
class BatchObjective(Objective, Protocol):
    """A cost function that also evaluates a ``(k, d)`` batch in one call."""

    def batch(self, xs: NDArray[np.float64], /) -> NDArray[np.float64]:
        ...


@dataclass(frozen=True)
class RunResult:
    """Outcome of one optimizer run.

    Parameters
    ----------
    best_value : float
        Lowest cost seen.
    best_position : ndarray
        Where it was seen (window-wrapped for periodic HOPSO).
    trace : ndarray
        Global-best value after initialization and after every iteration;
        non-increasing.
    evaluations_used : int
        Number of cost calls.
    dead_count : int
        Particles removed by the phase-domain check (HOPSO only).
    all_dead : bool
        The run stopped early because every particle died.
    """

    best_value: float
    best_position: NDArray[np.float64]
    trace: NDArray[np.float64]
    evaluations_used: int
    dead_count: int = 0
    all_dead: bool = False

    @property
    def iterations(self) -> int:
        """Completed iterations after initialization."""
        return len(self.trace) - 1


@dataclass
class BestTracker:
    """Running minimum over evaluated points, with a per-iteration trace."""

    value: float = np.inf
    position: NDArray[np.float64] | None = None
    trace: list[float] = field(default_factory=list)

    def update(self, xs: NDArray[np.float64], values: NDArray[np.float64]) -> bool:
        """Fold a batch in; return whether the best improved."""
        if not values.size:
            return False
        i = int(np.argmin(values))
        if values[i] < self.value:
            self.value = float(values[i])
            self.position = np.array(xs[i], dtype=float)
            return True
        return False

    def record(self) -> None:
        """Append the current best to the trace."""
        self.trace.append(self.value)


def evaluate_batch(cost: Objective, xs: NDArray[np.float64]) -> NDArray[np.float64]:
    """Evaluate each row of ``xs``.

    A cost with a ``batch`` method receives the whole array, which lets it
    schedule the evaluations itself; anything else is called row by row.
    """
    if isinstance(cost, BatchObjective):
        return np.asarray(cost.batch(xs), dtype=float).reshape(len(xs))
    return np.array([float(cost(x)) for x in xs], dtype=float)


def resolve_budget(requested: int, cost: Any, population: int) -> int:
    """Evaluation budget of a run: the optimizer's, capped by the cost's own.

    Raises
    ------
    ConfigurationError
        If the budget cannot cover one evaluation of the initial population.
    """
    remaining = getattr(cost, "remaining", None)
    budget = requested if remaining is None else min(requested, int(remaining))
    if budget < population:
        msg = f"budget of {budget} evaluations is smaller than the population {population}"
        raise ConfigurationError(msg)
    return budget


def split_seed(ss: np.random.SeedSequence, n: int) -> list[np.random.SeedSequence]:
    """Derive ``n`` independent child sequences.

    Child ``i`` has spawn key ``(*ss.spawn_key, i)``, so the split depends only
    on ``ss``'s entropy and key and not on any earlier ``spawn`` calls.
    """
    return [
        np.random.SeedSequence(ss.entropy, spawn_key=(*ss.spawn_key, i))
        for i in range(n)
    ]


def guarded_batch(cost: Objective, xs: NDArray[np.float64]) -> NDArray[np.float64] | None:
    """`evaluate_batch`, returning `None` if the cost reports an exhausted budget."""
    try:
        return evaluate_batch(cost, xs)
    except BudgetExhaustedError:
        logger.info("cost budget exhausted, stopping")
        return None
