"""Acceptance checks for the generated coefficient files.

Each test prints one PASS/FAIL line.  The checks exercise the generator
output through the consumer toolkit: binding-well shape of the H2 sweep,
schema sharing, agreement of the two-qubit one-parameter ansatz minimum
with diagonalization, and the HeH+ Hartree-Fock reference state.
"""

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from mlvqe import ansatz, sim
from mlvqe.pauli import TermSchema, exact_ground_energy, load_hamiltonian

from hamgen.generate import MoleculeSpec, generate


def report(name: str, ok: bool, detail: str = "") -> None:
    print(f"{'PASS' if ok else 'FAIL'} {name} {detail}".rstrip())
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="module")
def h2_sweep(tmp_path_factory):
    outdir = tmp_path_factory.mktemp("h2_1q")
    spec = MoleculeSpec("H2_1Q", tuple(np.linspace(0.4, 2.4, 21)))
    rep = generate(spec, outdir)
    assert not rep["failures"]
    return [load_hamiltonian(outdir / name) for name in rep["files"]]


def test_h2_sweep_single_minimum(h2_sweep):
    energies = [exact_ground_energy(h) for h in h2_sweep]
    drops = np.diff(energies) < 0
    # monotone decrease into the well, then monotone increase out of it
    switches = int(np.sum(np.abs(np.diff(drops.astype(int)))))
    ok = switches == 1 and drops[0] and not drops[-1]
    report("secondary: H2 sweep forms a single binding well", ok,
           f"sign changes={switches}")


def test_h2_sweep_shares_one_schema(h2_sweep):
    schemas = {TermSchema.from_hamiltonian(h).labels for h in h2_sweep}
    report("secondary: H2 sweep files share one term schema",
           len(schemas) == 1, f"distinct schemas={len(schemas)}")


def test_h2_2q_ansatz_minimum_matches_diagonalization(tmp_path):
    rep = generate(MoleculeSpec("H2_2Q", (0.735,)), tmp_path)
    h = load_hamiltonian(tmp_path / rep["files"][0])
    circuit = ansatz.build("H2_2Q")
    device = sim.DeviceConfig.exact()

    def energy_at(theta: float) -> float:
        state = sim.run_circuit(circuit, np.array([theta]))
        return sim.energy(sim.measure_expectations(state, h, device), h)

    thetas = np.linspace(-np.pi, np.pi, 721, endpoint=False)
    coarse = min(thetas, key=energy_at)
    best = minimize_scalar(energy_at, bracket=(coarse - 0.02, coarse + 0.02))
    gap = abs(best.fun - exact_ground_energy(h))
    report("secondary: 2-qubit ansatz minimum matches diagonalization",
           gap < 1e-6, f"|gap|={gap:.2e} Ha")


def test_hehp_zero_parameters_prepare_hf_state(tmp_path):
    rep = generate(MoleculeSpec("HEHP_4Q", (1.0,)), tmp_path)
    h = load_hamiltonian(tmp_path / rep["files"][0])
    circuit = ansatz.build("HEHP_4Q")
    state = sim.run_circuit(circuit, np.zeros(circuit.param_count))
    target = np.zeros(16, dtype=complex)
    target[0b0101] = 1.0
    overlap = abs(np.vdot(target, state))
    e_zero = sim.energy(
        sim.measure_expectations(state, h, sim.DeviceConfig.exact()), h
    )
    e_exact = exact_ground_energy(h)
    ok = overlap > 1.0 - 1e-10 and e_zero > e_exact
    report("secondary: HeH+ zero parameters prepare |0101> above ground", ok,
           f"overlap={overlap:.12f}, E_zero={e_zero:.6f}, E_exact={e_exact:.6f}")
