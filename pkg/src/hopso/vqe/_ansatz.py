"""Hardware-efficient RY/RZ ansatz with linear CNOT entanglement."""

from __future__ import annotations

__all__ = ("AnsatzSpec", "num_parameters", "prepare_state")

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from hopso.vqe._errors import DimensionError
from hopso.vqe._simcore import GateKind, GateOp, Statevector, run_circuit

if TYPE_CHECKING:
    from numpy.typing import ArrayLike


@dataclass(frozen=True)
class AnsatzSpec:
    """Layout of a hardware-efficient circuit.

    The circuit is ``reps`` blocks of [rotation layer; CNOT chain] followed by
    one final rotation layer. A rotation layer applies RY then RZ to every
    qubit; the chain is CNOT(i -> i+1) for ``i = 0 .. n-2``.

    Parameters bind layer-major, qubit-minor, RY before RZ: the angles of
    qubit ``q`` in layer ``l`` are ``params[2 * (l * n + q)]`` (RY) and
    ``params[2 * (l * n + q) + 1]`` (RZ).

    Parameters
    ----------
    n_qubits : int
        Register size.
    reps : int
        Number of entangling blocks.
    """

    n_qubits: int
    reps: int

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            msg = f"n_qubits must be >= 1, got {self.n_qubits}"
            raise DimensionError(msg)
        if self.reps < 0:
            msg = f"reps must be >= 0, got {self.reps}"
            raise ValueError(msg)

    @classmethod
    def h2(cls) -> AnsatzSpec:
        """The 4-qubit, 3-rep circuit (32 parameters)."""
        return cls(n_qubits=4, reps=3)

    @classmethod
    def lih(cls) -> AnsatzSpec:
        """The 8-qubit, 4-rep circuit (80 parameters)."""
        return cls(n_qubits=8, reps=4)

    @property
    def num_parameters(self) -> int:
        """``(reps + 1) * 2 * n_qubits``."""
        return (self.reps + 1) * 2 * self.n_qubits

    def gates(self, params: ArrayLike) -> list[GateOp]:
        """Bind ``params`` and return the gate sequence.

        Raises
        ------
        DimensionError
            If ``len(params) != num_parameters``.
        """
        theta = np.asarray(params, dtype=float).reshape(-1)
        if theta.size != self.num_parameters:
            msg = f"expected {self.num_parameters} parameters, got {theta.size}"
            raise DimensionError(msg)

        n = self.n_qubits
        angles = theta.reshape(self.reps + 1, n, 2)
        out: list[GateOp] = []
        for layer in range(self.reps + 1):
            for q in range(n):
                out.append(GateOp(GateKind.RY, q, angle=float(angles[layer, q, 0])))
                out.append(GateOp(GateKind.RZ, q, angle=float(angles[layer, q, 1])))
            if layer < self.reps:
                out.extend(GateOp(GateKind.CNOT, q + 1, control=q) for q in range(n - 1))
        return out


def num_parameters(spec: AnsatzSpec) -> int:
    """Number of free angles of ``spec``.

    Examples
    --------
    >>> num_parameters(AnsatzSpec(n_qubits=4, reps=3))
    32
    >>> num_parameters(AnsatzSpec(n_qubits=8, reps=4))
    80
    """
    return spec.num_parameters


def prepare_state(spec: AnsatzSpec, params: ArrayLike) -> Statevector:
    """Run the bound circuit on ``|0...0>``.

    Raises
    ------
    DimensionError
        If ``len(params) != num_parameters(spec)``.
    """
    return run_circuit(spec.gates(params), spec.n_qubits)
