"""VQE cost functions and seeded multi-run experiments."""

from __future__ import annotations

__all__ = (
    "CostSpec",
    "EnergyCost",
    "make_cost",
    "ExperimentConfig",
    "RunRecord",
    "Summary",
    "ExperimentResult",
    "summarize",
    "run_experiment",
    "random_energy_baseline",
)

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import TYPE_CHECKING, Any, NamedTuple

import numpy as np
from scipy.stats import iqr

from hopso.vqe._ansatz import AnsatzSpec, prepare_state
from hopso.vqe._defaults import CHEMICAL_ACCURACY, MAX_DENSE_QUBITS, TWO_PI
from hopso.vqe._errors import BudgetExhaustedError, ConfigurationError, DimensionError
from hopso.vqe._hamiltonians import PauliSum, ground_state_energy
from hopso.vqe._simcore import expectation_sum, sampled_expectation
from hopso.vqe.optim import DeConfig, HopsoConfig, PsoConfig, minimize
from hopso.vqe.optim._base import split_seed

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Sequence

    from numpy.typing import ArrayLike, NDArray

logger = logging.getLogger(__name__)

OptimizerConfig = HopsoConfig | PsoConfig | DeConfig


@dataclass(frozen=True)
class CostSpec:
    """What a VQE cost function evaluates.

    Parameters
    ----------
    hamiltonian : PauliSum
        Target operator.
    ansatz : AnsatzSpec
        Trial circuit; must act on ``hamiltonian.n_qubits`` qubits.
    eval_budget : int
        Maximum number of counted evaluations.
    shots : int or None, optional
        Measurements per Pauli term, or `None` for exact energies.
    """

    hamiltonian: PauliSum
    ansatz: AnsatzSpec
    eval_budget: int
    shots: int | None = None

    def __post_init__(self) -> None:
        if self.ansatz.n_qubits != self.hamiltonian.n_qubits:
            msg = (
                f"ansatz acts on {self.ansatz.n_qubits} qubits, "
                f"Hamiltonian on {self.hamiltonian.n_qubits}"
            )
            raise DimensionError(msg)
        if self.eval_budget < 1:
            msg = f"eval_budget must be >= 1, got {self.eval_budget}"
            raise ConfigurationError(msg)
        if self.shots is not None and self.shots < 1:
            msg = f"shots must be >= 1 or None, got {self.shots}"
            raise ConfigurationError(msg)

    @property
    def num_parameters(self) -> int:
        return self.ansatz.num_parameters


def _energy(
    spec: CostSpec,
    noise: tuple[Any, tuple[int, ...]],
    params: NDArray[np.float64],
    index: int,
) -> float:
    """Energy of evaluation number ``index``; a pure function of its arguments."""
    state = prepare_state(spec.ansatz, params)
    if spec.shots is None:
        return expectation_sum(state, spec.hamiltonian)
    entropy, spawn_key = noise
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy, spawn_key=(*spawn_key, index))
    )
    return sampled_expectation(state, spec.hamiltonian, spec.shots, rng)


class EnergyCost:
    """Counted VQE cost function, ``params -> <psi(params)|H|psi(params)>``.

    In shots mode the noise of evaluation ``i`` is drawn from a stream derived
    from ``(noise_seed, i)`` alone, so batches may be evaluated in any order
    or in other processes without changing any value.

    Parameters
    ----------
    spec : CostSpec
        Hamiltonian, ansatz, noise model and budget.
    noise_seed : int, SeedSequence or None, optional
        Root of the per-evaluation noise streams.
    map_func : callable, optional
        Map-like callable used by `batch`, e.g. ``ProcessPoolExecutor.map``.
        Defaults to the builtin `map`.
    """

    def __init__(
        self,
        spec: CostSpec,
        noise_seed: int | np.random.SeedSequence | None = None,
        map_func: Callable[..., Iterable[float]] | None = None,
    ) -> None:
        self.spec = spec
        ss = (
            noise_seed
            if isinstance(noise_seed, np.random.SeedSequence)
            else np.random.SeedSequence(noise_seed)
        )
        self._noise = (ss.entropy, tuple(ss.spawn_key))
        self.map_func = map if map_func is None else map_func
        self.n_evals = 0

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(n_params={self.spec.num_parameters}, "
            f"shots={self.spec.shots}, n_evals={self.n_evals}, "
            f"eval_budget={self.spec.eval_budget})"
        )

    @property
    def remaining(self) -> int:
        """Evaluations left in the budget."""
        return self.spec.eval_budget - self.n_evals

    def _reserve(self, k: int) -> int:
        if k > self.remaining:
            msg = (
                f"{k} evaluations requested with {self.remaining} of "
                f"{self.spec.eval_budget} left"
            )
            raise BudgetExhaustedError(msg)
        start = self.n_evals
        self.n_evals += k
        return start

    def __call__(self, params: ArrayLike) -> float:
        """Evaluate one parameter vector.

        Raises
        ------
        BudgetExhaustedError
            If the budget is already spent.
        DimensionError
            If ``params`` has the wrong length.
        """
        x = np.asarray(params, dtype=float)
        if x.size != self.spec.num_parameters:
            msg = f"expected {self.spec.num_parameters} parameters, got {x.size}"
            raise DimensionError(msg)
        index = self._reserve(1)
        return _energy(self.spec, self._noise, x, index)

    def batch(self, xs: ArrayLike) -> NDArray[np.float64]:
        """Evaluate the rows of ``xs`` through ``map_func``.

        The whole batch is refused if it does not fit in the remaining budget.
        """
        rows = np.atleast_2d(np.asarray(xs, dtype=float))
        if rows.shape[1] != self.spec.num_parameters:
            msg = f"expected {self.spec.num_parameters} parameters, got {rows.shape[1]}"
            raise DimensionError(msg)
        start = self._reserve(len(rows))
        func = partial(_energy, self.spec, self._noise)
        values = self.map_func(func, list(rows), range(start, start + len(rows)))
        return np.fromiter(values, dtype=float, count=len(rows))

    def exact_energy(self, params: ArrayLike) -> float:
        """Noiseless energy at ``params``; not counted against the budget."""
        return expectation_sum(
            prepare_state(self.spec.ansatz, params), self.spec.hamiltonian
        )


def make_cost(
    spec: CostSpec,
    noise_seed: int | np.random.SeedSequence | None = None,
    map_func: Callable[..., Iterable[float]] | None = None,
) -> EnergyCost:
    """Bind ``spec`` into a counted cost function.

    Examples
    --------
    >>> from hopso.vqe._hamiltonians import h2_hamiltonian
    >>> cost = make_cost(CostSpec(h2_hamiltonian(), AnsatzSpec.h2(), eval_budget=2))
    >>> round(cost(np.zeros(32)), 5), cost.remaining
    (-0.1751, 1)
    """
    return EnergyCost(spec, noise_seed=noise_seed, map_func=map_func)


##############################################################################
# Experiments


@dataclass(frozen=True)
class ExperimentConfig:
    """A batch of independent, seeded optimizer runs on one cost.

    Run ``i`` is seeded with ``base_seed + i``; that seed is split into an
    optimizer stream and a shot-noise stream.

    Parameters
    ----------
    cost : CostSpec
        What every run minimizes.
    optimizer : HopsoConfig, PsoConfig or DeConfig
        Optimizer and its settings.
    runs : int
        Number of runs, at least 1.
    base_seed : int
        Seed of run 0.
    parallel : int
        Maximum concurrent runs; 0 uses every available core.
    chemical_accuracy : float
        Tolerance of the chemical-accuracy fraction in the summary.
    """

    cost: CostSpec
    optimizer: OptimizerConfig
    runs: int = 1
    base_seed: int = 0
    parallel: int = 1
    chemical_accuracy: float = CHEMICAL_ACCURACY

    def __post_init__(self) -> None:
        if self.runs < 1:
            msg = f"runs must be >= 1, got {self.runs}"
            raise ConfigurationError(msg)
        if self.parallel < 0:
            msg = f"parallel must be >= 0, got {self.parallel}"
            raise ConfigurationError(msg)
        if not self.chemical_accuracy > 0:
            msg = f"chemical_accuracy must be > 0, got {self.chemical_accuracy}"
            raise ConfigurationError(msg)

    @property
    def workers(self) -> int:
        """Number of processes used for the runs."""
        width = self.parallel or os.cpu_count() or 1
        return max(1, min(width, self.runs))


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one seeded run.

    ``min_energy`` is the optimizer's global-best value, a measured energy in
    shots mode. ``exact_energy`` re-evaluates the returned parameters without
    noise.
    """

    run: int
    seed: int
    min_energy: float
    exact_energy: float
    evaluations: int
    dead_particles: int
    all_dead: bool
    wall_time: float
    best_params: tuple[float, ...] = field(repr=False)
    trace: tuple[float, ...] = field(repr=False)

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["best_params"] = list(self.best_params)
        out["trace"] = list(self.trace)
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunRecord:
        kwargs = {k: data[k] for k in cls.__dataclass_fields__}
        kwargs["best_params"] = tuple(map(float, kwargs["best_params"]))
        kwargs["trace"] = tuple(map(float, kwargs["trace"]))
        return cls(**kwargs)


@dataclass(frozen=True)
class Summary:
    """Statistics over the runs of one experiment.

    The ``*_fraction`` fields are `None` when the ground energy is unknown.
    """

    runs: int
    median: float
    iqr: float
    chemical_accuracy_fraction: float | None
    exact_median: float
    exact_iqr: float
    exact_chemical_accuracy_fraction: float | None
    ground_energy: float | None
    chemical_accuracy: float

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Summary:
        return cls(**{k: data[k] for k in cls.__dataclass_fields__})


class ExperimentResult(NamedTuple):
    """Records in run order plus their summary."""

    records: list[RunRecord]
    summary: Summary


def _within(
    values: NDArray[np.float64], ground_energy: float | None, tol: float
) -> float | None:
    if ground_energy is None:
        return None
    return float(np.mean(np.abs(values - ground_energy) <= tol))


def summarize(
    records: Sequence[RunRecord],
    ground_energy: float | None,
    chemical_accuracy: float = CHEMICAL_ACCURACY,
) -> Summary:
    """Median, interquartile range and chemical-accuracy fraction of the runs.

    Both the measured minima and their exact re-evaluations are summarized.

    Raises
    ------
    ValueError
        If ``records`` is empty.
    """
    if not records:
        msg = "cannot summarize zero runs"
        raise ValueError(msg)
    minima = np.array([r.min_energy for r in records])
    exact = np.array([r.exact_energy for r in records])
    return Summary(
        runs=len(records),
        median=float(np.median(minima)),
        iqr=float(iqr(minima)),
        chemical_accuracy_fraction=_within(minima, ground_energy, chemical_accuracy),
        exact_median=float(np.median(exact)),
        exact_iqr=float(iqr(exact)),
        exact_chemical_accuracy_fraction=_within(
            exact, ground_energy, chemical_accuracy
        ),
        ground_energy=ground_energy,
        chemical_accuracy=chemical_accuracy,
    )


def _run_one(config: ExperimentConfig, index: int) -> RunRecord:
    seed = config.base_seed + index
    optimizer_seed, noise_seed = split_seed(np.random.SeedSequence(seed), 2)
    cost = make_cost(config.cost, noise_seed=noise_seed)

    logger.info("run %d (seed %d) started", index, seed)
    start = time.perf_counter()
    result = minimize(
        cost, config.cost.num_parameters, config.optimizer, rng=optimizer_seed
    )
    wall_time = time.perf_counter() - start

    finite = bool(np.all(np.isfinite(result.best_position)))
    exact = cost.exact_energy(result.best_position) if finite else float("nan")
    logger.info(
        "run %d finished: best %.9f (exact %.9f) after %d evaluations",
        index,
        result.best_value,
        exact,
        result.evaluations_used,
    )
    return RunRecord(
        run=index,
        seed=seed,
        min_energy=float(result.best_value),
        exact_energy=float(exact),
        evaluations=result.evaluations_used,
        dead_particles=result.dead_count,
        all_dead=result.all_dead,
        wall_time=wall_time,
        best_params=tuple(map(float, result.best_position)),
        trace=tuple(map(float, result.trace)),
    )


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Execute every run of ``config`` and summarize them.

    Runs are independent and are spread over ``config.workers`` processes;
    records always come back in run order. The ground energy is computed by
    dense diagonalization when the register is small enough, else the
    chemical-accuracy fractions are `None`.
    """
    h = config.cost.hamiltonian
    ground = ground_state_energy(h) if h.n_qubits <= MAX_DENSE_QUBITS else None

    run = partial(_run_one, config)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(run, range(config.runs)))
    else:
        records = [run(i) for i in range(config.runs)]

    return ExperimentResult(records, summarize(records, ground, config.chemical_accuracy))


def random_energy_baseline(spec: CostSpec, n: int, seed: int | None = None) -> float:
    """Mean exact energy of ``n`` parameter vectors drawn from ``U[0, 2pi)``."""
    rng = np.random.default_rng(seed)
    cost = EnergyCost(spec)
    params = rng.uniform(0.0, TWO_PI, size=(n, spec.num_parameters))
    return float(np.mean([cost.exact_energy(p) for p in params]))
