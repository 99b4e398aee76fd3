"""Harmonic-oscillator particle swarm optimization for variational quantum eigensolvers."""

from hopso.vqe import optim
from hopso.vqe._ansatz import AnsatzSpec, num_parameters, prepare_state
from hopso.vqe._config import list_presets, load_experiment, parse_config
from hopso.vqe._defaults import CHEMICAL_ACCURACY, DE_DEFAULTS, HOPSO_DEFAULTS, PSO_DEFAULTS
from hopso.vqe._errors import (
    BudgetExhaustedError,
    ConfigurationError,
    DimensionError,
    HamiltonianParseError,
    HopsoVQEError,
    InvalidGateError,
    MatrixTooLargeError,
    NumericalError,
    ResultsFileError,
)
from hopso.vqe._hamiltonians import (
    PauliString,
    PauliSum,
    dense_matrix,
    ground_state_energy,
    h2_hamiltonian,
    lih_fragment,
    load_pauli_sum,
    parse_pauli_sum,
)
from hopso.vqe._io import read_results, summary_table, trace_table, write_results
from hopso.vqe._simcore import (
    GateKind,
    GateOp,
    Statevector,
    apply_gate,
    expectation_pauli,
    expectation_sum,
    expectation_terms,
    run_circuit,
    sampled_expectation,
    shot_noise_variance,
)
from hopso.vqe._vqe import (
    CostSpec,
    EnergyCost,
    ExperimentConfig,
    ExperimentResult,
    RunRecord,
    Summary,
    make_cost,
    random_energy_baseline,
    run_experiment,
    summarize,
)

__all__ = (
    # Subpackages
    "optim",
    # Constants
    "CHEMICAL_ACCURACY",
    "HOPSO_DEFAULTS",
    "PSO_DEFAULTS",
    "DE_DEFAULTS",
    # Simulator
    "Statevector",
    "GateKind",
    "GateOp",
    "apply_gate",
    "run_circuit",
    "expectation_pauli",
    "expectation_terms",
    "expectation_sum",
    "sampled_expectation",
    "shot_noise_variance",
    # Hamiltonians
    "PauliString",
    "PauliSum",
    "parse_pauli_sum",
    "load_pauli_sum",
    "h2_hamiltonian",
    "lih_fragment",
    "dense_matrix",
    "ground_state_energy",
    # Ansatz
    "AnsatzSpec",
    "num_parameters",
    "prepare_state",
    # VQE
    "CostSpec",
    "EnergyCost",
    "make_cost",
    "ExperimentConfig",
    "ExperimentResult",
    "RunRecord",
    "Summary",
    "summarize",
    "run_experiment",
    "random_energy_baseline",
    # Configuration and I/O
    "parse_config",
    "load_experiment",
    "list_presets",
    "write_results",
    "read_results",
    "trace_table",
    "summary_table",
    # Errors
    "HopsoVQEError",
    "InvalidGateError",
    "DimensionError",
    "HamiltonianParseError",
    "MatrixTooLargeError",
    "NumericalError",
    "ConfigurationError",
    "BudgetExhaustedError",
    "ResultsFileError",
)
