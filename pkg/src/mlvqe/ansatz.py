"""The four fixed ansatz circuits, transcribed gate-for-gate.

System ids
----------
H2_1Q    hardware-efficient single qubit: RY(t0), RZ(t1)           (2 params)
H2_2Q    manually reduced UCC: RY(t) + X + CX                      (1 param)
H3_3Q    two-layer hardware-efficient ansatz on 3 qubits           (18 params)
HEHP_4Q  manually simplified UCCSD on 4 qubits, RY scales 1/2, 1/4 (3 params)

The 3-qubit builder takes a layer count (default 2, the published depth);
the parameter count is 6 * (layers + 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sim import Gate, NoiseModel, run_circuit

SYSTEM_IDS = ("H2_1Q", "H2_2Q", "H3_3Q", "HEHP_4Q")


@dataclass(frozen=True)
class AnsatzCircuit:
    system_id: str
    gates: tuple
    param_count: int
    num_qubits: int

    def dump(self) -> str:
        """One gate per line: `GATE target [control N] [slot K x SCALE]`."""
        lines = []
        for g in self.gates:
            parts = [g.kind, str(g.target)]
            if g.control is not None:
                parts += ["control", str(g.control)]
            if g.param_slot is not None:
                parts += ["slot", str(g.param_slot), "x", f"{g.param_scale:g}"]
            elif g.angle is not None:
                parts += ["angle", f"{g.angle:g}"]
            lines.append(" ".join(parts))
        return "\n".join(lines)


def _h2_1q() -> AnsatzCircuit:
    gates = (
        Gate("RY", target=0, param_slot=0),
        Gate("RZ", target=0, param_slot=1),
    )
    return AnsatzCircuit("H2_1Q", gates, param_count=2, num_qubits=1)


def _h2_2q() -> AnsatzCircuit:
    gates = (
        Gate("RY", target=0, param_slot=0),
        Gate("X", target=1),
        Gate("CX", target=1, control=0),
    )
    return AnsatzCircuit("H2_2Q", gates, param_count=1, num_qubits=2)


def _h3_3q(layers: int = 2) -> AnsatzCircuit:
    if layers < 1:
        raise ValueError("layer count must be >= 1")
    gates = [Gate("X", target=1)]
    slot = 0

    def rotation_block(s):
        block = [Gate("RY", target=q, param_slot=s + q) for q in range(3)]
        block += [Gate("RZ", target=q, param_slot=s + 3 + q) for q in range(3)]
        return block, s + 6

    block, slot = rotation_block(slot)
    gates += block
    for _ in range(layers):
        gates += [Gate("CX", target=2, control=1), Gate("CX", target=1, control=0)]
        block, slot = rotation_block(slot)
        gates += block
    return AnsatzCircuit("H3_3Q", tuple(gates), param_count=slot, num_qubits=3)


def _hehp_4q() -> AnsatzCircuit:
    gates = (
        Gate("X", target=0),
        Gate("RY", target=1, param_slot=0, param_scale=0.5),
        Gate("X", target=2),
        Gate("X", target=3),
        Gate("H", target=0),
        Gate("CX", target=2, control=1),
        Gate("H", target=3),
        Gate("SDG", target=1),
        Gate("SDG", target=2),
        Gate("CX", target=1, control=0),
        Gate("CX", target=2, control=3),
        Gate("SDG", target=0),
        Gate("S", target=1),
        Gate("S", target=2),
        Gate("SDG", target=3),
        Gate("RY", target=0, param_slot=2, param_scale=0.25),
        Gate("RY", target=1, param_slot=2, param_scale=0.25),
        Gate("RY", target=2, param_slot=1, param_scale=0.25),
        Gate("RY", target=3, param_slot=1, param_scale=0.25),
        Gate("CX", target=1, control=0),
        Gate("CX", target=2, control=3),
        Gate("H", target=0),
        Gate("H", target=3),
    )
    return AnsatzCircuit("HEHP_4Q", gates, param_count=3, num_qubits=4)


def build(system_id: str, layers: int = 2) -> AnsatzCircuit:
    """Construct one of the four fixed circuits by system id."""
    if system_id == "H2_1Q":
        return _h2_1q()
    if system_id == "H2_2Q":
        return _h2_2q()
    if system_id == "H3_3Q":
        return _h3_3q(layers)
    if system_id == "HEHP_4Q":
        return _hehp_4q()
    raise ValueError(f"unknown system id {system_id!r}")


def doubles_state_check(t2: float) -> np.ndarray:
    """State of the 4-qubit circuit with singles off and doubles angle t2.

    Expected: cos(t2)|0101> + sin(t2)|1010>, up to global phase.  Slot 0
    (the half-angle RY feeding the Clifford block) is the doubles rotation:
    it advances the |0101>/|1010> mixing angle by a quarter of the slot
    value, so the slot carries 4*t2.  Slots 1 and 2 are the merged singles.
    """
    circuit = build("HEHP_4Q")
    return run_circuit(circuit, np.array([4.0 * t2, 0.0, 0.0]), NoiseModel.none(3))


def reference_clifford(a: AnsatzCircuit) -> AnsatzCircuit:
    """Strip every rotation gate, leaving the Clifford reference circuit."""
    gates = tuple(g for g in a.gates if g.kind not in ("RY", "RZ"))
    return AnsatzCircuit(a.system_id + "_REF", gates, param_count=0,
                         num_qubits=a.num_qubits)
