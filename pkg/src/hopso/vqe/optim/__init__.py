"""Derivative-free optimizers: HOPSO and the PSO / DE baselines."""

from __future__ import annotations

from types import MappingProxyType
from typing import TYPE_CHECKING

from hopso.vqe.optim._base import BatchObjective, Objective, RunResult, evaluate_batch
from hopso.vqe.optim._de import DeConfig, de_run
from hopso.vqe.optim._hopso import HopsoConfig, Particle, SwarmState, hopso_run
from hopso.vqe.optim._oscillator import (
    advance_time,
    init_amplitude_phase,
    oscillator_position,
    oscillator_velocity,
)
from hopso.vqe.optim._periodic import (
    attractor_linear,
    attractor_periodic,
    circular_distance,
    threshold_amplitude,
    threshold_amplitude_linear,
    wrap_best,
)
from hopso.vqe.optim._pso import PsoConfig, pso_run

if TYPE_CHECKING:
    from collections.abc import Callable

    import numpy as np

__all__ = (
    # Optimizers
    "hopso_run",
    "pso_run",
    "de_run",
    "minimize",
    "OPTIMIZERS",
    # Configuration
    "HopsoConfig",
    "PsoConfig",
    "DeConfig",
    # State and results
    "Particle",
    "SwarmState",
    "RunResult",
    "Objective",
    "BatchObjective",
    "evaluate_batch",
    # Dynamics
    "oscillator_position",
    "oscillator_velocity",
    "advance_time",
    "init_amplitude_phase",
    # Geometry
    "wrap_best",
    "circular_distance",
    "attractor_periodic",
    "attractor_linear",
    "threshold_amplitude",
    "threshold_amplitude_linear",
)


#: Optimizer name -> (config class, run function).
OPTIMIZERS: MappingProxyType[str, tuple[type, Callable[..., RunResult]]] = (
    MappingProxyType(
        {
            "hopso": (HopsoConfig, hopso_run),
            "pso": (PsoConfig, pso_run),
            "de": (DeConfig, de_run),
        }
    )
)


def minimize(
    cost: Objective,
    d: int,
    config: HopsoConfig | PsoConfig | DeConfig,
    rng: np.random.SeedSequence | np.random.Generator | int | None = None,
) -> RunResult:
    """Run the optimizer matching the type of ``config``.

    Examples
    --------
    >>> import numpy as np
    >>> res = minimize(lambda x: float(np.sum((x - 1) ** 2)), 2,
    ...                PsoConfig(max_iters=50), rng=0)
    >>> res.evaluations_used
    500
    """
    for config_type, run in OPTIMIZERS.values():
        if isinstance(config, config_type):
            return run(cost, d, config, rng=rng)
    msg = f"no optimizer accepts a {type(config).__name__}"
    raise TypeError(msg)
