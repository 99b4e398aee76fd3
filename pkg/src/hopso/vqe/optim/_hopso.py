"""Harmonic-oscillator particle swarm optimization on a periodic domain."""

from __future__ import annotations

__all__ = ("HopsoConfig", "Particle", "SwarmState", "hopso_run")

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from hopso.vqe._defaults import HOPSO_DEFAULTS, TWO_PI
from hopso.vqe._errors import ConfigurationError
from hopso.vqe._utils.arg_decorators import with_seed_sequence
from hopso.vqe.optim._base import (
    BestTracker,
    RunResult,
    guarded_batch,
    resolve_budget,
    split_seed,
)
from hopso.vqe.optim._oscillator import (
    advance_time,
    init_amplitude_phase,
    oscillator_position,
    oscillator_velocity,
)
from hopso.vqe.optim._periodic import (
    attractor_linear,
    attractor_periodic,
    threshold_amplitude,
    threshold_amplitude_linear,
    wrap_best,
)

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from hopso.vqe.optim._base import Objective

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HopsoConfig:
    """Hyperparameters of `hopso_run`.

    Parameters
    ----------
    num_particles : int
        Swarm size.
    max_iters : int
        Iterations after the initial evaluation.
    lam : float
        Damping rate of the oscillation envelope.
    c1, c2 : float
        Weights of the personal and global best in the attractor.
    m : float
        Multiplier of the threshold amplitude.
    t_ul : float
        Upper bound of the per-iteration clock increment.
    omega : float
        Angular frequency.
    periodic : bool
        Treat every coordinate as an angle: wrap best positions into the run's
        window and use the minor-arc attractor and threshold.
    seed : int or None
        Seed used when `hopso_run` is not given an ``rng``.
    max_evals : int or None
        Evaluation budget; ``num_particles * max_iters`` when `None`.
    """

    num_particles: int = HOPSO_DEFAULTS["num_particles"]
    max_iters: int = HOPSO_DEFAULTS["max_iters"]
    lam: float = HOPSO_DEFAULTS["lam"]
    c1: float = HOPSO_DEFAULTS["c1"]
    c2: float = HOPSO_DEFAULTS["c2"]
    m: float = HOPSO_DEFAULTS["m"]
    t_ul: float = HOPSO_DEFAULTS["t_ul"]
    omega: float = HOPSO_DEFAULTS["omega"]
    periodic: bool = HOPSO_DEFAULTS["periodic"]
    seed: int | None = None
    max_evals: int | None = None

    def __post_init__(self) -> None:
        problems = []
        if self.num_particles < 1:
            problems.append(f"num_particles must be >= 1, got {self.num_particles}")
        if self.max_iters < 0:
            problems.append(f"max_iters must be >= 0, got {self.max_iters}")
        if not self.lam >= 0:
            problems.append(f"lambda must be >= 0, got {self.lam}")
        for name in ("c1", "c2", "m", "t_ul", "omega"):
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


@dataclass
class Particle:
    """State of one oscillating particle.

    ``amplitude``, ``phase`` and ``attractor`` describe the current
    oscillation, anchored at ``t = 0``. Every dimension is an independent
    spring with its own clock ``t``. ``threshold`` is the amplitude floor from
    the distance between the particle's best and the global best.
    """

    position: NDArray[np.float64]
    velocity: NDArray[np.float64]
    best_position: NDArray[np.float64]
    best_value: float
    rng: np.random.Generator = field(repr=False)
    attractor: NDArray[np.float64] = field(default_factory=lambda: np.zeros(0))
    amplitude: NDArray[np.float64] = field(default_factory=lambda: np.zeros(0))
    phase: NDArray[np.float64] = field(default_factory=lambda: np.zeros(0))
    threshold: NDArray[np.float64] = field(default_factory=lambda: np.zeros(0))
    t: NDArray[np.float64] = field(default_factory=lambda: np.zeros(0))
    dead: bool = False


@dataclass
class SwarmState:
    """Particles plus the shared global best and window reference ``r``."""

    particles: list[Particle]
    best_position: NDArray[np.float64]
    best_value: float
    r: float
    eval_count: int = 0

    @property
    def live(self) -> list[Particle]:
        """Particles still taking part, in index order."""
        return [p for p in self.particles if not p.dead]

    @property
    def dead_count(self) -> int:
        return sum(p.dead for p in self.particles)


##############################################################################
# Particle dynamics


def _reanchor(p: Particle, swarm: SwarmState, config: HopsoConfig) -> None:
    """Restart ``p``'s oscillation about a fresh attractor at its current state.

    The phase comes from the recalculated amplitude, so it follows the
    particle's actual position and direction of motion. Only the stored
    amplitude is raised to the threshold where it falls short.
    """
    if config.periodic:
        a = attractor_periodic(
            p.best_position, swarm.best_position, config.c1, config.c2, swarm.r
        )
        floor = threshold_amplitude(p.best_position, swarm.best_position, config.m)
        # oscillate about the image of the attractor nearest the particle
        a = a + TWO_PI * np.round((p.position - a) / TWO_PI)
    else:
        a = attractor_linear(p.best_position, swarm.best_position, config.c1, config.c2)
        floor = threshold_amplitude_linear(
            p.best_position, swarm.best_position, config.m
        )

    out = init_amplitude_phase(p.position, p.velocity, a, config.lam, config.omega)
    p.attractor = np.atleast_1d(a)
    p.threshold = np.atleast_1d(floor)
    p.amplitude = np.maximum(out.amplitude, p.threshold)
    p.phase = out.phase
    p.t = np.zeros_like(p.attractor)
    if not np.all(out.valid):
        p.dead = True
        logger.debug("particle died: phase outside the arccos domain")


def _step(p: Particle, config: HopsoConfig) -> None:
    """Advance ``p``'s clocks and move it along its oscillation."""
    p.t = advance_time(p.t, config.t_ul, p.rng)
    decayed = p.amplitude * np.exp(-config.lam * p.t)
    # the floored envelope replaces A0 exp(-lam t); it stops decaying at the floor
    envelope = np.maximum(decayed, p.threshold)
    rate = np.where(decayed > p.threshold, config.lam, 0.0)
    p.position = oscillator_position(
        envelope, 0.0, config.omega, p.phase, p.t, p.attractor
    )
    p.velocity = oscillator_velocity(
        envelope, 0.0, config.omega, p.phase, p.t
    ) - rate * (p.position - p.attractor)


def _new_best(x: NDArray[np.float64], config: HopsoConfig, r: float) -> NDArray[np.float64]:
    return np.array(wrap_best(x, r) if config.periodic else x, dtype=float, ndmin=1)


##############################################################################


@with_seed_sequence
def hopso_run(
    cost: Objective,
    d: int,
    config: HopsoConfig,
    rng: np.random.SeedSequence | np.random.Generator | int | None = None,
) -> RunResult:
    """Minimize ``cost`` over ``d`` angles with harmonic-oscillator PSO.

    Each particle coordinate follows a damped oscillation about an attractor
    between its personal best and the global best, sampled at its own random
    clock. The oscillation amplitude never drops below a threshold
    proportional to the distance between those two bests. When a particle
    improves its personal best it restarts its oscillation from its current
    position and velocity. When the global best changes (checked once per
    iteration, after all particles moved) every live particle restarts with
    its clocks reset to zero. A restart whose phase cannot be reconstructed
    kills the particle.

    With ``config.periodic`` a reference ``r ~ U[0, 2pi)`` is drawn once per
    run and all best positions are kept in ``[r, r + 2pi)``; particle
    positions themselves are never wrapped.

    Parameters
    ----------
    cost : Objective
        Function to minimize. A `BudgetExhaustedError` it raises ends the run.
    d : int
        Number of parameters.
    config : HopsoConfig
        Hyperparameters.
    rng : SeedSequence, Generator, int or None, optional
        Randomness. Child 0 of the sequence drives the swarm (the window
        reference), child ``i + 1`` drives particle ``i``.

    Returns
    -------
    RunResult

    Raises
    ------
    ConfigurationError
        If ``d < 1`` or the budget cannot cover the initial evaluation.
    """
    if d < 1:
        msg = f"d must be >= 1, got {d}"
        raise ConfigurationError(msg)
    n = config.num_particles
    budget = resolve_budget(config.budget, cost, n)

    swarm_seed, *particle_seeds = split_seed(rng, n + 1)
    r = float(np.random.default_rng(swarm_seed).uniform(0.0, TWO_PI))
    rngs = [np.random.default_rng(s) for s in particle_seeds]
    x0 = np.array([g.uniform(0.0, TWO_PI, size=d) for g in rngs])
    v0 = np.array([g.uniform(-1.0, 1.0, size=d) for g in rngs])

    tracker = BestTracker()
    values = guarded_batch(cost, x0)
    if values is None:
        return RunResult(np.inf, np.full(d, np.nan), np.array([np.inf]), 0)

    particles = [
        Particle(x0[i], v0[i], _new_best(x0[i], config, r), float(values[i]), rngs[i])
        for i in range(n)
    ]
    tracker.update(np.array([p.best_position for p in particles]), values)
    tracker.record()
    swarm = SwarmState(particles, tracker.position, tracker.value, r, eval_count=n)
    for p in particles:
        _reanchor(p, swarm, config)

    for it in range(config.max_iters):
        live = swarm.live
        k = min(len(live), budget - swarm.eval_count)
        if not live or k <= 0:
            break

        movers = live[:k]
        for p in movers:
            _step(p, config)
        values = guarded_batch(cost, np.array([p.position for p in movers]))
        if values is None:
            break
        swarm.eval_count += k

        for p, f in zip(movers, values, strict=True):
            if f < p.best_value:
                p.best_value = float(f)
                p.best_position = _new_best(p.position, config, r)
                _reanchor(p, swarm, config)

        if tracker.update(
            np.array([p.best_position for p in movers]),
            np.array([p.best_value for p in movers]),
        ):
            swarm.best_value, swarm.best_position = tracker.value, tracker.position
            logger.debug("iteration %d: global best %.10g", it + 1, swarm.best_value)
            for p in swarm.live:
                _reanchor(p, swarm, config)
        tracker.record()

    all_dead = not swarm.live
    if all_dead:
        logger.warning(
            "all %d particles died after %d evaluations", n, swarm.eval_count
        )

    return RunResult(
        best_value=swarm.best_value,
        best_position=swarm.best_position,
        trace=np.asarray(tracker.trace),
        evaluations_used=swarm.eval_count,
        dead_count=swarm.dead_count,
        all_dead=all_dead,
    )
