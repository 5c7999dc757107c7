"""Pauli-string Hamiltonians, expectation values, and the diagonalization oracle.

A Hamiltonian is stored as an ordered list of (label, coefficient) pairs,
H = sum_i c_i P_i, with real coefficients and labels over {I, X, Y, Z}.

Qubit ordering is little-endian throughout the toolkit: qubit 0 is the
RIGHTMOST character of a label and the least-significant bit of a
statevector index.  A label "ZX" therefore means Z on qubit 1 and X on
qubit 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

PAULI_CHARS = "IXYZ"

_PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

MAX_DENSE_QUBITS = 12


class HamiltonianError(ValueError):
    """Raised for malformed Hamiltonian input or capacity violations."""


def _check_label(label: str, num_qubits: int) -> None:
    if len(label) != num_qubits:
        raise HamiltonianError(
            f"term {label!r}: label length {len(label)} != num_qubits {num_qubits}"
        )
    for ch in label:
        if ch not in PAULI_CHARS:
            raise HamiltonianError(f"term {label!r}: invalid Pauli character {ch!r}")


@dataclass(frozen=True)
class PauliHamiltonian:
    """Real-weighted Pauli-string Hamiltonian on ``num_qubits`` qubits.

    Terms are deduplicated and kept in canonical lexicographic label order.
    """

    num_qubits: int
    terms: tuple  # of (label: str, coeff: float)
    molecule: str = ""
    distance_angstrom: float | None = None

    @staticmethod
    def from_terms(num_qubits, terms, molecule="", distance_angstrom=None):
        seen = {}
        for label, coeff in terms:
            label = str(label)
            _check_label(label, num_qubits)
            if isinstance(coeff, complex):
                raise HamiltonianError(f"term {label!r}: complex coefficient {coeff!r}")
            coeff = float(coeff)
            if not math.isfinite(coeff):
                raise HamiltonianError(f"term {label!r}: non-finite coefficient {coeff!r}")
            if label in seen:
                raise HamiltonianError(f"duplicate term {label!r}")
            seen[label] = coeff
        ordered = tuple(sorted(seen.items()))
        return PauliHamiltonian(num_qubits, ordered, molecule, distance_angstrom)

    @property
    def labels(self):
        return [label for label, _ in self.terms]

    @property
    def coefficients(self):
        return np.array([coeff for _, coeff in self.terms], dtype=float)

    def coefficient(self, label: str) -> float:
        for lab, coeff in self.terms:
            if lab == label:
                return coeff
        return 0.0

    @property
    def identity_label(self) -> str:
        return "I" * self.num_qubits

    def to_json(self) -> str:
        return json.dumps(
            {
                "num_qubits": self.num_qubits,
                "terms": [[label, coeff] for label, coeff in self.terms],
                "metadata": {
                    "molecule": self.molecule,
                    "distance_angstrom": self.distance_angstrom,
                },
            },
            indent=1,
        )


def parse_hamiltonian(file_content: str) -> PauliHamiltonian:
    """Parse the JSON Hamiltonian file format into a PauliHamiltonian.

    Format: {"num_qubits": int, "terms": [[label, coeff], ...],
             "metadata": {"molecule": str, "distance_angstrom": float|null}}
    """
    try:
        obj = json.loads(file_content)
    except json.JSONDecodeError as exc:
        raise HamiltonianError(f"malformed Hamiltonian JSON: {exc}") from exc
    if not isinstance(obj, dict) or "num_qubits" not in obj or "terms" not in obj:
        raise HamiltonianError("Hamiltonian JSON must contain num_qubits and terms")
    num_qubits = int(obj["num_qubits"])
    if num_qubits < 1:
        raise HamiltonianError(f"num_qubits must be >= 1, got {num_qubits}")
    meta = obj.get("metadata", {}) or {}
    dist = meta.get("distance_angstrom")
    return PauliHamiltonian.from_terms(
        num_qubits,
        obj["terms"],
        molecule=str(meta.get("molecule", "")),
        distance_angstrom=None if dist is None else float(dist),
    )


def load_hamiltonian(path) -> PauliHamiltonian:
    with open(path, encoding="utf-8") as fh:
        return parse_hamiltonian(fh.read())


def pauli_string_matrix(label: str) -> np.ndarray:
    """Dense matrix of one Pauli string under little-endian qubit order.

    Leftmost label character is the highest qubit, so the Kronecker product
    runs left to right.
    """
    mat = np.array([[1.0 + 0j]])
    for ch in label:
        mat = np.kron(mat, _PAULI_MATRICES[ch])
    return mat


def to_dense_matrix(h: PauliHamiltonian) -> np.ndarray:
    """Dense 2^n x 2^n matrix of the Hamiltonian. Oracle-grade, O(4^n)."""
    if h.num_qubits > MAX_DENSE_QUBITS:
        raise HamiltonianError(
            f"dense matrix for {h.num_qubits} qubits exceeds the "
            f"{MAX_DENSE_QUBITS}-qubit capacity guard"
        )
    dim = 2**h.num_qubits
    mat = np.zeros((dim, dim), dtype=complex)
    for label, coeff in h.terms:
        mat += coeff * pauli_string_matrix(label)
    return mat


def exact_ground_energy(h: PauliHamiltonian) -> float:
    """Minimal eigenvalue of the dense Hamiltonian (direct diagonalization)."""
    return float(np.linalg.eigvalsh(to_dense_matrix(h))[0])


def apply_pauli_string(state: np.ndarray, label: str) -> np.ndarray:
    """Apply a Pauli string to a statevector without building the dense matrix."""
    n = len(label)
    if state.shape[0] != 2**n:
        raise HamiltonianError(
            f"state dimension {state.shape[0]} does not match label {label!r}"
        )
    out = state.astype(complex, copy=True)
    for qubit, ch in enumerate(reversed(label)):
        if ch == "I":
            continue
        shaped = out.reshape(2 ** (n - 1 - qubit), 2, 2**qubit)
        if ch == "X":
            shaped = shaped[:, ::-1, :]
        elif ch == "Y":
            shaped = shaped[:, ::-1, :] * np.array([-1j, 1j]).reshape(1, 2, 1)
        else:  # Z
            shaped = shaped * np.array([1.0, -1.0]).reshape(1, 2, 1)
        out = np.ascontiguousarray(shaped).reshape(-1)
    return out


def expectation_from_state(state: np.ndarray, label: str) -> float:
    """<psi|P|psi> for a normalized state and Pauli string P; always real."""
    if set(label) <= {"I"}:
        return 1.0
    return float(np.real(np.vdot(state, apply_pauli_string(state, label))))


@dataclass(frozen=True)
class TermSchema:
    """Fixed NN-input layout: ordered non-identity labels of a system family."""

    labels: tuple

    def __post_init__(self):
        for label in self.labels:
            if set(label) <= {"I"}:
                raise HamiltonianError("identity label is excluded from term schemas")
        if len(set(self.labels)) != len(self.labels):
            raise HamiltonianError("schema labels must be unique")

    def __len__(self):
        return len(self.labels)

    @staticmethod
    def from_hamiltonian(h: PauliHamiltonian) -> "TermSchema":
        return TermSchema(tuple(lab for lab in h.labels if lab != h.identity_label))


def coefficient_vector(h: PauliHamiltonian, schema: TermSchema) -> np.ndarray:
    """Project a Hamiltonian onto a schema's label order (identity excluded)."""
    lookup = dict(h.terms)
    lookup.pop(h.identity_label, None)
    uncovered = set(lookup) - set(schema.labels)
    if uncovered:
        raise HamiltonianError(
            f"Hamiltonian terms {sorted(uncovered)} are not covered by the schema"
        )
    return np.array([lookup.get(label, 0.0) for label in schema.labels], dtype=float)
