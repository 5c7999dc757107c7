"""Reference-state depolarization estimation and correction.

A global depolarizing channel scales every traceless expectation value by
the same factor p.  Stripping all rotation gates from an ansatz leaves a
Clifford circuit whose noiseless Z...Z expectation is exactly +1 or -1, so
the measured value divided by that sign estimates p directly.  Dividing the
remaining Pauli expectations by p inverts the channel.
"""

from dataclasses import dataclass

import numpy as np

from .ansatz import AnsatzCircuit, reference_clifford
from .pauli import PauliHamiltonian
from .sim import DeviceConfig, measure_expectations, run_circuit


class MitigationError(ValueError):
    """Invalid depolarization estimate."""


@dataclass(frozen=True)
class DepolarizationEstimate:
    p: float
    ideal_sign: int
    skip: bool


def _all_z_hamiltonian(num_qubits: int) -> PauliHamiltonian:
    return PauliHamiltonian.from_terms(num_qubits, [("Z" * num_qubits, 1.0)])


def estimate_depolarization(ansatz: AnsatzCircuit, device: DeviceConfig,
                            zero_params: bool = False) -> DepolarizationEstimate:
    """Estimate the depolarization factor from a rotation-stripped reference.

    With `zero_params` the rotations are kept but driven at angle zero
    instead of removed; for the bundled ansatze both variants prepare the
    same state (scaled rotations at zero are the identity).
    """
    if zero_params:
        ref = ansatz
        params = np.zeros(ansatz.param_count)
    else:
        ref = reference_clifford(ansatz)
        params = np.zeros(0)
    observable = _all_z_hamiltonian(ref.num_qubits)

    ideal_state = run_circuit(ref, params)
    ideal = measure_expectations(ideal_state, observable, DeviceConfig.exact())[0]
    sign = 1 if ideal >= 0.0 else -1

    # offset noise only touches rotation slots, so it cannot shift the
    # reference state; depolarization and shot noise still apply
    noisy_state = run_circuit(ref, params, device.noise)
    measured = measure_expectations(noisy_state, observable, device)[0]
    p = float(measured) / sign
    return DepolarizationEstimate(p=p, ideal_sign=sign, skip=p >= 1.0)


def mitigate(expectations: np.ndarray, h: PauliHamiltonian,
             est: DepolarizationEstimate) -> np.ndarray:
    """Divide non-identity expectations by p, clamped to [-1, 1].

    Skipped estimates (p >= 1, shot-noise dominance) leave the input
    unchanged; the identity expectation is never rescaled.
    """
    expectations = np.asarray(expectations, dtype=float)
    if est.skip:
        return expectations.copy()
    if est.p <= 0.0:
        raise MitigationError(f"depolarization estimate p={est.p} is not positive")
    out = expectations.copy()
    for i, (label, _) in enumerate(h.terms):
        if label != h.identity_label:
            out[i] = min(1.0, max(-1.0, out[i] / est.p))
    return out
