"""Statevector simulation of the ansatz circuits.

Noise model: a fixed rotation offset per ansatz parameter (coherent
over/under-rotation) plus an optional global depolarizing factor that
scales every traceless expectation value by (1 - lambda).

The rotation offset is added to the logical parameter BEFORE the gate's
scale factor: resolved angle = (params[slot] + eps[slot]) * scale.

Shot sampling draws each Pauli term independently from `shots` +/-1
outcomes; the RNG is numpy's PCG64 seeded from DeviceConfig.rng_seed, so
traces are bit-reproducible across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .pauli import PauliHamiltonian, expectation_from_state

#: Gate kinds with no angle.
FIXED_GATES = ("X", "H", "S", "SDG")
#: Parameterized rotation kinds.
ROTATION_GATES = ("RY", "RZ")

_SQ2 = 1.0 / math.sqrt(2.0)
_FIXED_MATRICES = {
    "X": (0j, 1 + 0j, 1 + 0j, 0j),
    "H": (_SQ2 + 0j, _SQ2 + 0j, _SQ2 + 0j, -_SQ2 + 0j),
    "S": (1 + 0j, 0j, 0j, 1j),
    "SDG": (1 + 0j, 0j, 0j, -1j),
}


class SimulationError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    """One circuit element.

    For rotations either `param_slot` (index into the angle vector) or
    `angle` (fixed constant, radians) is set.  `param_scale` is a fixed
    scale factor (1, 1/2 or 1/4) applied after the noise offset.
    """

    kind: str
    target: int
    control: int | None = None
    param_slot: int | None = None
    param_scale: float = 1.0
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in FIXED_GATES + ROTATION_GATES + ("CX",):
            raise SimulationError(f"unknown gate kind {self.kind!r}")
        if self.kind == "CX" and (self.control is None or self.control == self.target):
            raise SimulationError("CX requires a control distinct from the target")
        if self.param_scale not in (1.0, 0.5, 0.25):
            raise SimulationError(f"unsupported param_scale {self.param_scale}")

    @property
    def is_parameterized(self) -> bool:
        return self.kind in ROTATION_GATES and self.param_slot is not None


@dataclass(frozen=True)
class NoiseModel:
    """Fixed rotation offsets (radians, one per parameter) + global depolarization."""

    rotation_offsets: tuple = ()
    depolarizing_lambda: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.depolarizing_lambda <= 1.0:
            raise SimulationError("depolarizing_lambda must lie in [0, 1]")

    @staticmethod
    def none(param_count: int = 0) -> "NoiseModel":
        return NoiseModel(rotation_offsets=(0.0,) * param_count)

    def offsets_array(self, param_count: int) -> np.ndarray:
        if len(self.rotation_offsets) == 0:
            return np.zeros(param_count)
        if len(self.rotation_offsets) != param_count:
            raise SimulationError(
                f"noise model has {len(self.rotation_offsets)} offsets, "
                f"circuit has {param_count} parameters"
            )
        return np.asarray(self.rotation_offsets, dtype=float)


#: sentinel for exact (infinite-shot) expectation values
EXACT = None


@dataclass(frozen=True)
class DeviceConfig:
    """Simulated device: noise model, shot count (EXACT for no sampling), seed."""

    noise: NoiseModel = field(default_factory=NoiseModel)
    shots: int | None = 10_000
    rng_seed: int = 0

    @staticmethod
    def exact(noise: NoiseModel | None = None, rng_seed: int = 0) -> "DeviceConfig":
        return DeviceConfig(noise=noise or NoiseModel(), shots=EXACT, rng_seed=rng_seed)

    def rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.rng_seed))


def zero_state(num_qubits: int) -> np.ndarray:
    state = np.zeros(2**num_qubits, dtype=complex)
    state[0] = 1.0
    return state


def _rotation_matrix(kind: str, angle: float):
    half = 0.5 * angle
    if kind == "RY":
        c, s = math.cos(half), math.sin(half)
        return (c + 0j, -s + 0j, s + 0j, c + 0j)
    # RZ = diag(e^{-i a/2}, e^{i a/2})
    return (complex(math.cos(half), -math.sin(half)), 0j, 0j,
            complex(math.cos(half), math.sin(half)))


def apply_gate(state: np.ndarray, gate: Gate, resolved_angle: float = 0.0) -> np.ndarray:
    """Apply one gate, returning a new statevector.

    `resolved_angle` is the final rotation angle (offset and scale already
    folded in); it is ignored for fixed gates.
    """
    n_qubits = int(round(math.log2(state.shape[0])))
    if gate.target >= n_qubits or (gate.control is not None and gate.control >= n_qubits):
        raise SimulationError(f"gate {gate} out of range for {n_qubits} qubits")
    out = state.astype(complex, copy=True)
    if gate.kind == "CX":
        kernels.apply_cx(out, gate.control, gate.target)
    else:
        if gate.kind in FIXED_GATES:
            u00, u01, u10, u11 = _FIXED_MATRICES[gate.kind]
        else:
            u00, u01, u10, u11 = _rotation_matrix(gate.kind, resolved_angle)
        kernels.apply_1q(out, gate.target, u00, u01, u10, u11)
    return out


def resolve_angle(gate: Gate, params: np.ndarray, offsets: np.ndarray) -> float:
    if gate.param_slot is not None:
        return (params[gate.param_slot] + offsets[gate.param_slot]) * gate.param_scale
    if gate.angle is not None:
        return gate.angle * gate.param_scale
    return 0.0


def run_circuit(gates, params, noise: NoiseModel | None = None,
                num_qubits: int | None = None, param_count: int | None = None) -> np.ndarray:
    """Run a gate list from |0...0>, applying offset noise to every slot.

    Accepts either a plain gate sequence (with explicit num_qubits) or an
    AnsatzCircuit-like object exposing .gates/.num_qubits/.param_count.
    """
    if hasattr(gates, "gates"):
        circuit = gates
        gate_list = circuit.gates
        num_qubits = circuit.num_qubits
        param_count = circuit.param_count
    else:
        gate_list = list(gates)
        if num_qubits is None:
            raise SimulationError("num_qubits required for a bare gate list")
        if param_count is None:
            param_count = 1 + max(
                (g.param_slot for g in gate_list if g.param_slot is not None), default=-1
            )
    params = np.asarray(params, dtype=float)
    if params.shape != (param_count,):
        raise SimulationError(
            f"expected {param_count} parameters, got shape {params.shape}"
        )
    offsets = (noise or NoiseModel()).offsets_array(param_count)
    state = zero_state(num_qubits)
    for gate in gate_list:
        state = apply_gate(state, gate, resolve_angle(gate, params, offsets))
    return state


def measure_expectations(state: np.ndarray, h: PauliHamiltonian,
                         device: DeviceConfig) -> np.ndarray:
    """Per-term expectation values in h's term order.

    EXACT mode returns (1 - lambda) * <P> for non-identity P and exactly 1
    for the identity.  Shot mode estimates each non-identity term from
    `shots` independent +/-1 draws around the depolarized exact value.
    """
    lam = device.noise.depolarizing_lambda
    exact = np.empty(len(h.terms))
    identity = h.identity_label
    for i, (label, _) in enumerate(h.terms):
        if label == identity:
            exact[i] = 1.0
        else:
            exact[i] = (1.0 - lam) * expectation_from_state(state, label)
    if device.shots is EXACT:
        return exact
    rng = device.rng()
    out = np.empty_like(exact)
    for i, (label, _) in enumerate(h.terms):
        if label == identity:
            out[i] = 1.0
        else:
            p_up = 0.5 * (1.0 + np.clip(exact[i], -1.0, 1.0))
            ups = rng.binomial(device.shots, p_up)
            out[i] = 2.0 * ups / device.shots - 1.0
    return out


def energy(expectations: np.ndarray, h: PauliHamiltonian) -> float:
    """Weighted sum of per-term expectations; identity contributes its coeff."""
    expectations = np.asarray(expectations, dtype=float)
    if expectations.shape != (len(h.terms),):
        raise SimulationError(
            f"expected {len(h.terms)} expectations, got shape {expectations.shape}"
        )
    return float(np.dot(h.coefficients, expectations))
