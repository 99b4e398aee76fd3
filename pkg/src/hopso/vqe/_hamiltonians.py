"""Pauli-sum Hamiltonians: data model, text format and exact diagonalization.

Qubit convention: the character at position ``i`` of a Pauli label acts on
qubit ``i``, and qubit 0 is the least-significant bit of a statevector index.

The text format is one term per line, ``<coefficient> <label>``, with ``#``
starting a comment. Blank lines are ignored, LF and CRLF are both accepted and
the unicode minus sign is read as an ASCII ``-``.
"""

from __future__ import annotations

__all__ = (
    "PauliString",
    "PauliSum",
    "parse_pauli_sum",
    "load_pauli_sum",
    "h2_hamiltonian",
    "lih_fragment",
    "dense_matrix",
    "ground_state_energy",
)

import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np
import scipy.linalg

from hopso.vqe._defaults import MAX_DENSE_QUBITS
from hopso.vqe._errors import (
    DimensionError,
    HamiltonianParseError,
    MatrixTooLargeError,
    NumericalError,
)

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator
    from os import PathLike

    from numpy.typing import NDArray

PAULI_CHARS = frozenset("IXYZ")
_UNICODE_MINUS = "\u2212"
_I_POWERS = np.array([1, 1j, -1, -1j])


def parity_signs(indices: NDArray[np.int64], mask: int) -> NDArray[np.float64]:
    """Return ``(-1) ** popcount(indices & mask)`` elementwise."""
    masked = indices & mask
    sign = np.ones(indices.shape, dtype=float)
    bit = 0
    while mask >> bit:
        if (mask >> bit) & 1:
            sign *= 1 - 2 * ((masked >> bit) & 1)
        bit += 1
    return sign


##############################################################################


@dataclass(frozen=True)
class PauliString:
    """A tensor product of single-qubit Pauli operators.

    Parameters
    ----------
    label : str
        String over ``{I, X, Y, Z}``; character ``i`` acts on qubit ``i``.

    Examples
    --------
    >>> PauliString("XIZ").n_qubits
    3
    >>> PauliString("XIZ").x_mask, PauliString("XIZ").z_mask
    (1, 4)
    """

    label: str

    def __post_init__(self) -> None:
        if not self.label:
            msg = "a Pauli label must be non-empty"
            raise ValueError(msg)
        if bad := set(self.label) - PAULI_CHARS:
            msg = f"invalid Pauli characters {sorted(bad)} in {self.label!r}"
            raise ValueError(msg)

    def __str__(self) -> str:
        return self.label

    @property
    def n_qubits(self) -> int:
        """Number of qubits the string acts on."""
        return len(self.label)

    @cached_property
    def x_mask(self) -> int:
        """Bit mask of the qubits whose basis value is flipped (X or Y)."""
        return sum(1 << i for i, c in enumerate(self.label) if c in "XY")

    @cached_property
    def z_mask(self) -> int:
        """Bit mask of the qubits contributing a sign (Z or Y)."""
        return sum(1 << i for i, c in enumerate(self.label) if c in "ZY")

    @cached_property
    def y_count(self) -> int:
        """Number of Y factors."""
        return self.label.count("Y")

    @property
    def is_identity(self) -> bool:
        """Whether every factor is the identity."""
        return not (self.x_mask or self.z_mask)


@dataclass(frozen=True)
class PauliSum:
    """A real-weighted sum of Pauli strings.

    Parameters
    ----------
    n_qubits : int
        Register size shared by all terms.
    terms : tuple[tuple[float, PauliString], ...]
        ``(coefficient, pauli)`` pairs in input order. Labels given as plain
        strings are converted to `PauliString`.

    Examples
    --------
    >>> h = PauliSum.from_terms([(1.0, "ZI"), (2.0, "IZ")])
    >>> h.n_qubits, len(h)
    (2, 2)
    """

    n_qubits: int
    terms: tuple[tuple[float, PauliString], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            msg = f"n_qubits must be >= 1, got {self.n_qubits}"
            raise DimensionError(msg)

        terms = []
        for coeff, pauli in self.terms:
            ps = pauli if isinstance(pauli, PauliString) else PauliString(pauli)
            if ps.n_qubits != self.n_qubits:
                msg = (
                    f"label {ps.label!r} has length {ps.n_qubits}, "
                    f"expected {self.n_qubits}"
                )
                raise DimensionError(msg)
            if not math.isfinite(coeff):
                msg = f"coefficient of {ps.label!r} is not finite"
                raise ValueError(msg)
            terms.append((float(coeff), ps))
        object.__setattr__(self, "terms", tuple(terms))

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[float, str | PauliString]]) -> PauliSum:
        """Build a sum, inferring ``n_qubits`` from the first label."""
        terms = tuple(terms)
        if not terms:
            msg = "cannot infer the qubit count of an empty term list"
            raise DimensionError(msg)
        return cls(n_qubits=len(str(terms[0][1])), terms=terms)  # type: ignore[arg-type]

    @classmethod
    def identity(cls, n_qubits: int, coeff: float = 1.0) -> PauliSum:
        """Return ``coeff * I^n``."""
        return cls(n_qubits, ((coeff, PauliString("I" * n_qubits)),))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[float, PauliString]]:
        return iter(self.terms)

    def __add__(self, other: Any) -> PauliSum:
        if not isinstance(other, PauliSum):
            return NotImplemented
        if other.n_qubits != self.n_qubits:
            msg = f"cannot add {other.n_qubits}-qubit sum to {self.n_qubits}-qubit sum"
            raise DimensionError(msg)
        return PauliSum(self.n_qubits, self.terms + other.terms)

    def __mul__(self, scale: Any) -> PauliSum:
        if not isinstance(scale, int | float | np.floating | np.integer):
            return NotImplemented
        return PauliSum(self.n_qubits, tuple((scale * c, p) for c, p in self.terms))

    __rmul__ = __mul__

    def coefficient(self, label: str) -> float:
        """Total coefficient of ``label`` (0 if absent)."""
        return sum((c for c, p in self.terms if p.label == label), 0.0)

    def normalized(self) -> PauliSum:
        """Merge duplicate labels, keeping the order of first occurrence."""
        merged: dict[str, float] = {}
        for c, p in self.terms:
            merged[p.label] = merged.get(p.label, 0.0) + c
        return PauliSum(self.n_qubits, tuple((c, PauliString(k)) for k, c in merged.items()))

    def to_text(self) -> str:
        """Serialize in the Hamiltonian text format.

        Coefficients are written with `repr`, so `parse_pauli_sum` recovers
        them exactly.
        """
        return "".join(f"{c!r} {p.label}\n" for c, p in self.terms)

    @cached_property
    def term_arrays(
        self,
    ) -> tuple[NDArray[np.float64], NDArray[np.int64], NDArray[np.int64], NDArray[np.int64]]:
        """Coefficients, X masks, Z masks and Y counts as arrays."""
        coeffs = np.array([c for c, _ in self.terms], dtype=float)
        xs = np.array([p.x_mask for _, p in self.terms], dtype=np.int64)
        zs = np.array([p.z_mask for _, p in self.terms], dtype=np.int64)
        ys = np.array([p.y_count for _, p in self.terms], dtype=np.int64)
        return coeffs, xs, zs, ys

    @cached_property
    def action_tables(self) -> tuple[NDArray[np.int64], NDArray[np.complex128]]:
        """Per-term flip indices and phases of the operator action.

        Row ``k`` encodes ``P_k|j> = phases[k, j] |flips[k, j]>``, with
        ``phases = i^y (-1)^popcount(j & z)`` and ``flips = j ^ x``.
        """
        _, xs, zs, ys = self.term_arrays
        idx = np.arange(1 << self.n_qubits, dtype=np.int64)
        flips = idx[None, :] ^ xs[:, None]
        signs = np.array([parity_signs(idx, int(z)) for z in zs]).reshape(len(self), -1)
        phases = _I_POWERS[ys % 4][:, None] * signs
        return flips, phases


##############################################################################
# Text format


def parse_pauli_sum(text: str) -> PauliSum:
    """Parse a Hamiltonian from its text form.

    Parameters
    ----------
    text : str
        One ``<coefficient> <label>`` term per line. A label printed with
        single spaces between its characters is joined back together.

    Returns
    -------
    PauliSum
        Terms in input order; the qubit count comes from the first label.

    Raises
    ------
    HamiltonianParseError
        On a non-numeric coefficient, an invalid character, a label whose
        length differs from the first one, or an input without terms.

    Examples
    --------
    >>> h = parse_pauli_sum("1.0 Z")
    >>> h.n_qubits, h.terms[0][0]
    (1, 1.0)
    """
    terms: list[tuple[float, PauliString]] = []
    n_qubits: int | None = None

    for lineno, raw in enumerate(text.lstrip("\ufeff").splitlines(), start=1):
        line = raw.split("#", 1)[0].replace(_UNICODE_MINUS, "-").strip()
        if not line:
            continue

        coeff_str, *label_parts = line.split()
        if not label_parts:
            msg = f"expected '<coefficient> <label>', got {line!r}"
            raise HamiltonianParseError(msg, lineno)

        try:
            coeff = float(coeff_str)
        except ValueError:
            msg = f"non-numeric coefficient {coeff_str!r}"
            raise HamiltonianParseError(msg, lineno) from None
        if not math.isfinite(coeff):
            msg = f"coefficient {coeff_str!r} is not finite"
            raise HamiltonianParseError(msg, lineno)

        label = "".join(label_parts)
        if bad := set(label) - PAULI_CHARS:
            msg = f"invalid Pauli characters {sorted(bad)} in {label!r}"
            raise HamiltonianParseError(msg, lineno)
        if n_qubits is None:
            n_qubits = len(label)
        elif len(label) != n_qubits:
            msg = f"label {label!r} has length {len(label)}, expected {n_qubits}"
            raise HamiltonianParseError(msg, lineno)

        terms.append((coeff, PauliString(label)))

    if n_qubits is None:
        msg = "no Hamiltonian terms found"
        raise HamiltonianParseError(msg)

    return PauliSum(n_qubits, tuple(terms))


def load_pauli_sum(path: str | PathLike[str]) -> PauliSum:
    """Read and parse a Hamiltonian file (UTF-8)."""
    return parse_pauli_sum(Path(path).read_text(encoding="utf-8"))


##############################################################################
# Built-in operators

_H2_TERMS: tuple[tuple[float, str], ...] = (
    (-0.80718, "IIII"),
    (0.17374, "ZIII"),
    (-0.23047, "ZZII"),
    (0.17374, "IIZI"),
    (-0.23047, "IZZZ"),
    (0.12149, "IZII"),
    (0.16940, "IZZI"),
    (-0.04509, "ZXXI"),
    (0.04509, "XIXZ"),
    (0.04509, "XIXI"),
    (-0.04509, "XZXZ"),
    (0.16658, "ZZZZ"),
    (0.16658, "ZZZI"),
    (0.12149, "IZIZ"),
)

_LIH_FRAGMENT_TERMS: tuple[tuple[float, str], ...] = (
    (-4.98851, "IIIIIIIZ"),
    (-0.11677, "IIIIIZII"),
    (1.00871, "ZZIIZZZZ"),
    (0.08981, "ZZIIZZII"),
    (-0.00761, "IIIIIIYY"),
    (0.00022, "ZZIIZXZX"),
    (-0.00761, "IIIIIIXX"),
)


def h2_hamiltonian() -> PauliSum:
    """The 4-qubit H2 Hamiltonian (14 terms, Hartree).

    Examples
    --------
    >>> h = h2_hamiltonian()
    >>> len(h), h.coefficient("IIII"), h.coefficient("ZZZZ")
    (14, -0.80718, 0.16658)
    """
    return PauliSum(4, _H2_TERMS)  # type: ignore[arg-type]


def lih_fragment() -> PauliSum:
    """The seven largest-weight terms of the tapered 8-qubit LiH Hamiltonian.

    This is not the full operator (which has over 200 terms) and has a
    different ground energy; it exists for format and Y-handling checks.
    """
    return PauliSum(8, _LIH_FRAGMENT_TERMS)  # type: ignore[arg-type]


##############################################################################
# Exact diagonalization


def _check_dense_size(h: PauliSum) -> None:
    if h.n_qubits > MAX_DENSE_QUBITS:
        msg = (
            f"dense matrices are limited to {MAX_DENSE_QUBITS} qubits, "
            f"got {h.n_qubits}"
        )
        raise MatrixTooLargeError(msg)


def dense_matrix(h: PauliSum) -> NDArray[np.complex128] | NDArray[np.float64]:
    """Build the ``2**n x 2**n`` matrix of a Pauli sum.

    The matrix is real when every term has an even number of Y factors and
    complex otherwise.

    Raises
    ------
    MatrixTooLargeError
        If ``h.n_qubits`` exceeds the dense-matrix guard.

    Examples
    --------
    >>> dense_matrix(PauliSum.from_terms([(1.0, "Z")]))
    array([[ 1.,  0.],
           [ 0., -1.]])
    """
    _check_dense_size(h)
    dim = 1 << h.n_qubits
    idx = np.arange(dim, dtype=np.int64)
    out = np.zeros((dim, dim), dtype=complex)

    coeffs, _, _, ys = h.term_arrays
    if len(h):
        flips, phases = h.action_tables
        for c, flip, phase in zip(coeffs, flips, phases, strict=True):
            out[flip, idx] += c * phase

    if not np.any(ys % 2):
        return np.ascontiguousarray(out.real)
    return out


def ground_state_energy(h: PauliSum) -> float:
    """Smallest eigenvalue of the Hamiltonian, by dense diagonalization.

    Raises
    ------
    MatrixTooLargeError
        If ``h.n_qubits`` exceeds the dense-matrix guard.
    NumericalError
        If the symmetric eigensolver does not converge.

    Examples
    --------
    >>> ground_state_energy(PauliSum.from_terms([(1.0, "Z")]))
    -1.0
    """
    matrix = dense_matrix(h)
    try:
        eigvals = scipy.linalg.eigh(matrix, eigvals_only=True, subset_by_index=[0, 0])
    except np.linalg.LinAlgError as exc:
        msg = f"eigensolver did not converge: {exc}"
        raise NumericalError(msg) from exc
    return float(eigvals[0])
