"""Statevector simulation and Pauli-sum expectation values."""

from __future__ import annotations

__all__ = (
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
)

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from hopso.vqe._errors import (
    ConfigurationError,
    DimensionError,
    InvalidGateError,
    NumericalError,
)
from hopso.vqe._hamiltonians import PauliString, PauliSum

if TYPE_CHECKING:
    from collections.abc import Iterable

    from numpy.typing import NDArray

_IMAG_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Statevector:
    """Amplitudes of an ``n_qubits`` register.

    Qubit 0 is the least-significant bit of the amplitude index.

    Parameters
    ----------
    n_qubits : int
        Register size, at least 1.
    amplitudes : array-like of complex
        Vector of length ``2**n_qubits``.

    Examples
    --------
    >>> Statevector.zero(2).probabilities()
    array([1., 0., 0., 0.])
    """

    n_qubits: int
    amplitudes: NDArray[np.complex128]

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            msg = f"n_qubits must be >= 1, got {self.n_qubits}"
            raise DimensionError(msg)
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.n_qubits,):
            msg = (
                f"expected {1 << self.n_qubits} amplitudes for {self.n_qubits} "
                f"qubits, got shape {amps.shape}"
            )
            raise DimensionError(msg)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def zero(cls, n_qubits: int) -> Statevector:
        """The computational basis state ``|0...0>``."""
        amps = np.zeros(1 << n_qubits, dtype=complex)
        amps[0] = 1
        return cls(n_qubits, amps)

    def norm(self) -> float:
        """L2 norm of the amplitudes."""
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> NDArray[np.float64]:
        """Computational-basis probabilities."""
        return np.abs(self.amplitudes) ** 2


class GateKind(str, enum.Enum):
    """Supported gates."""

    RY = "RY"
    RZ = "RZ"
    CNOT = "CNOT"


@dataclass(frozen=True)
class GateOp:
    """A single gate application.

    Parameters
    ----------
    kind : GateKind or str
        ``"RY"``, ``"RZ"`` or ``"CNOT"``.
    target : int
        Target qubit.
    control : int or None, optional
        Control qubit, CNOT only.
    angle : float, optional
        Rotation angle in radians, RY/RZ only.
    """

    kind: GateKind
    target: int
    control: int | None = None
    angle: float = 0.0

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "kind", GateKind(self.kind))
        except ValueError:
            msg = f"unknown gate kind {self.kind!r}"
            raise InvalidGateError(msg) from None

        if self.kind is GateKind.CNOT:
            if self.control is None:
                msg = "CNOT requires a control qubit"
                raise InvalidGateError(msg)
            if self.control == self.target:
                msg = f"CNOT control and target are both qubit {self.target}"
                raise InvalidGateError(msg)
        elif self.control is not None:
            msg = f"{self.kind.value} takes no control qubit"
            raise InvalidGateError(msg)

    @property
    def qubits(self) -> tuple[int, ...]:
        """Qubits touched by the gate."""
        if self.control is None:
            return (self.target,)
        return (self.control, self.target)


def _rotation_matrix(gate: GateOp) -> NDArray[np.complex128]:
    half = 0.5 * gate.angle
    if gate.kind is GateKind.RY:
        c, s = np.cos(half), np.sin(half)
        return np.array([[c, -s], [s, c]], dtype=complex)
    return np.array([[np.exp(-1j * half), 0], [0, np.exp(1j * half)]], dtype=complex)


def apply_gate(state: Statevector, gate: GateOp) -> Statevector:
    """Apply ``gate`` to ``state``, returning a new `Statevector`.

    Raises
    ------
    InvalidGateError
        If a gate index is outside the register.

    Examples
    --------
    >>> import numpy as np
    >>> out = apply_gate(Statevector.zero(1), GateOp("RY", 0, angle=np.pi))
    >>> np.round(out.amplitudes.real, 12) + 0.0
    array([0., 1.])
    """
    n = state.n_qubits
    if any(q < 0 or q >= n for q in gate.qubits):
        msg = f"gate {gate} addresses a qubit outside a {n}-qubit register"
        raise InvalidGateError(msg)

    amps = state.amplitudes
    t = gate.target
    if gate.kind is GateKind.CNOT:
        idx = np.arange(amps.size)
        # indices with control set and target clear; swap with target set
        lo = idx[((idx >> gate.control) & 1 == 1) & ((idx >> t) & 1 == 0)]
        hi = lo | (1 << t)
        out = amps.copy()
        out[lo], out[hi] = amps[hi], amps[lo]
    else:
        view = amps.reshape(1 << (n - 1 - t), 2, 1 << t)
        out = np.einsum("ab,ibj->iaj", _rotation_matrix(gate), view).reshape(-1)

    return Statevector(n, out)


def run_circuit(gates: Iterable[GateOp], n_qubits: int) -> Statevector:
    """Apply ``gates`` in order, starting from ``|0...0>``."""
    state = Statevector.zero(n_qubits)
    for gate in gates:
        state = apply_gate(state, gate)
    return state


##############################################################################
# Expectation values


def _check_width(state: Statevector, n_qubits: int) -> None:
    if n_qubits != state.n_qubits:
        msg = f"operator acts on {n_qubits} qubits, state has {state.n_qubits}"
        raise DimensionError(msg)


def expectation_pauli(state: Statevector, pauli: PauliString | str) -> float:
    """Exact ``<psi|P|psi>`` for a single Pauli string.

    Computed by applying ``P`` to a copy of the amplitudes; the dense matrix
    is never built.

    Raises
    ------
    DimensionError
        If the label length differs from the register size.

    Examples
    --------
    >>> expectation_pauli(Statevector.zero(1), "Z")
    1.0
    """
    pauli = pauli if isinstance(pauli, PauliString) else PauliString(pauli)
    return float(expectation_terms(state, PauliSum(pauli.n_qubits, ((1.0, pauli),)))[0])


def expectation_terms(state: Statevector, h: PauliSum) -> NDArray[np.float64]:
    """Exact expectation of every term of ``h`` (coefficients not applied).

    Raises
    ------
    DimensionError
        If ``h`` and ``state`` disagree in qubit count.
    NumericalError
        If an expectation acquires an imaginary part above round-off.
    """
    _check_width(state, h.n_qubits)
    if not len(h):
        return np.zeros(0)

    psi = state.amplitudes
    # (P psi)[j ^ x] = phase(j) psi[j]
    flips, phases = h.action_tables
    values = np.sum(np.conj(psi[flips]) * phases * psi[None, :], axis=1)

    if np.max(np.abs(values.imag)) > _IMAG_TOL:
        msg = "Pauli expectation has a non-negligible imaginary part"
        raise NumericalError(msg)
    return np.clip(values.real, -1.0, 1.0)


def expectation_sum(state: Statevector, h: PauliSum) -> float:
    """Exact (infinite-shot) energy ``sum_k c_k <psi|P_k|psi>``.

    Examples
    --------
    >>> h = PauliSum.from_terms([(1.0, "ZI"), (2.0, "IZ")])
    >>> expectation_sum(Statevector.zero(2), h)
    3.0
    """
    coeffs = h.term_arrays[0]
    return float(coeffs @ expectation_terms(state, h)) if coeffs.size else 0.0


def sampled_expectation(
    state: Statevector, h: PauliSum, shots: int, rng: np.random.Generator
) -> float:
    """Shot-noise estimate of the energy.

    Every non-identity term is estimated independently from its own binomial
    draw of ``shots`` outcomes, ``k ~ Binomial(shots, (1 + e_k) / 2)`` giving
    ``2 k / shots - 1``. Identity terms contribute their coefficient exactly.
    Terms are not grouped into commuting sets, so this models the
    independent-term estimator only.

    Parameters
    ----------
    state : Statevector
        Trial state.
    h : PauliSum
        Hamiltonian.
    shots : int
        Measurements per term, at least 1.
    rng : `numpy.random.Generator`
        Source of the binomial draws.

    Raises
    ------
    ConfigurationError
        If ``shots < 1``.
    """
    if shots < 1:
        msg = f"shots must be >= 1, got {shots}"
        raise ConfigurationError(msg)

    coeffs, xs, zs, _ = h.term_arrays
    exact = expectation_terms(state, h)
    identity = (xs == 0) & (zs == 0)

    estimates = np.ones_like(exact)
    p_plus = np.clip((1.0 + exact[~identity]) / 2.0, 0.0, 1.0)
    estimates[~identity] = 2.0 * rng.binomial(shots, p_plus) / shots - 1.0
    return float(coeffs @ estimates) if coeffs.size else 0.0


def shot_noise_variance(state: Statevector, h: PauliSum, shots: int) -> float:
    """Analytic variance of `sampled_expectation`, ``sum_k c_k^2 (1 - e_k^2) / shots``."""
    coeffs, xs, zs, _ = h.term_arrays
    exact = expectation_terms(state, h)
    sampled = (xs != 0) | (zs != 0)
    return float(np.sum(coeffs[sampled] ** 2 * (1.0 - exact[sampled] ** 2)) / shots)

