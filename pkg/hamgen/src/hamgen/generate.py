"""Molecule-to-coefficient-file pipelines for the four benchmark systems.

system ids and mappings:
  H2_1Q    H2, Jordan-Wigner then full Z2 tapering (4 -> 1 qubit)
  H2_2Q    H2, parity mapping with two-qubit Z2 reduction (4 -> 2 qubits)
  H3_3Q    linear H3 (equal spacing), Jordan-Wigner then tapering (6 -> 3)
  HEHP_4Q  HeH+ (charge +1), Jordan-Wigner, no tapering (4 qubits)

The tapering sector is the one containing the Hartree-Fock determinant and
is recorded in each file's metadata.  Every sweep shares one term schema:
the label support is the union over all requested distances.
"""

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .integrals import ANGSTROM_TO_BOHR, ao_integrals
from .mapping import (
    MappingError,
    find_z_symmetries,
    parity_permutation,
    pauli_decompose,
    second_quantized_matrix,
    spin_orbital_integrals,
    taper_z_sector,
)
from .scf import SCFError, hartree_fock

SUPPORT_THRESHOLD = 1e-10

SYSTEMS = ("H2_1Q", "H2_2Q", "H3_3Q", "HEHP_4Q")

_MOLECULES = {
    "H2_1Q": "H2",
    "H2_2Q": "H2",
    "H3_3Q": "H3_linear",
    "HEHP_4Q": "HeH+",
}


@dataclass
class MoleculeSpec:
    """One generation request: a system id and its geometry sweep."""

    system: str
    distances: tuple  # Angstrom
    basis: str = "STO-3G"

    def __post_init__(self):
        if self.system not in SYSTEMS:
            raise ValueError(f"unknown system {self.system!r}")
        self.distances = tuple(float(d) for d in self.distances)
        if not self.distances or any(d <= 0 for d in self.distances):
            raise ValueError("distances must be positive and non-empty")

    @property
    def molecule(self) -> str:
        return _MOLECULES[self.system]


def _geometry(system: str, d_angstrom: float):
    d = d_angstrom * ANGSTROM_TO_BOHR
    if system in ("H2_1Q", "H2_2Q"):
        return ["H", "H"], [(0, 0, 0), (0, 0, d)], 1, 1
    if system == "H3_3Q":
        return ["H", "H", "H"], [(0, 0, 0), (0, 0, d), (0, 0, 2 * d)], 2, 1
    return ["He", "H"], [(0, 0, 0), (0, 0, d)], 1, 1


def _hf_bits(n_orb: int, n_alpha: int, n_beta: int) -> int:
    """Blocked-ordering occupation bits of the Hartree-Fock determinant."""
    bits = 0
    for p in range(n_alpha):
        bits |= 1 << p
    for p in range(n_beta):
        bits |= 1 << (n_orb + p)
    return bits


@dataclass
class SystemResult:
    """Reduced Hamiltonian terms plus mapping provenance for one distance."""

    coeffs: dict
    num_qubits: int
    scf_energy: float
    e_nn: float
    sector: list = field(default_factory=list)
    symmetry_supports: list = field(default_factory=list)
    hf_reduced_state: str = ""
    qubit_order: list = field(default_factory=list)


def build_system(system: str, d_angstrom: float) -> SystemResult:
    """Full pipeline for one (system, distance): integrals to reduced terms."""
    elements, centers, n_alpha, n_beta = _geometry(system, d_angstrom)
    s, hcore, eri, e_nn = ao_integrals(elements, centers)
    e_scf, c_a, c_b = hartree_fock(s, hcore, eri, n_alpha, n_beta, e_nn)
    h_so, eri_so = spin_orbital_integrals(hcore, eri, c_a, c_b)
    n_so = h_so.shape[0]
    h_full = second_quantized_matrix(h_so, eri_so, constant=e_nn)
    hf = _hf_bits(c_a.shape[0], n_alpha, n_beta)

    if system == "HEHP_4Q":
        coeffs = pauli_decompose(h_full, n_so)
        return SystemResult(coeffs, n_so, e_scf, e_nn,
                            hf_reduced_state=format(hf, f"0{n_so}b"),
                            qubit_order=list(range(n_so)))

    if system == "H2_2Q":
        w = parity_permutation(n_so)
        h_parity = w @ h_full @ w.T
        hf_parity = int(np.argmax(w[:, hf]))
        supports = [np.eye(n_so, dtype=int)[1], np.eye(n_so, dtype=int)[3]]
        # reversed free-qubit order puts the reference state at |10>
        reduced, sector, free = taper_z_sector(
            h_parity, n_so, supports, hf_parity, new_qubit_order=[2, 0]
        )
        order = [2, 0]
    else:
        full_coeffs = pauli_decompose(h_full, n_so, threshold=SUPPORT_THRESHOLD)
        supports = find_z_symmetries(list(full_coeffs), n_so)
        hf_parity = hf
        reduced, sector, free = taper_z_sector(h_full, n_so, supports, hf)
        order = None

    m = int(round(np.log2(reduced.shape[0])))
    coeffs = pauli_decompose(reduced, m)
    if order is None:
        order = list(free)
    hf_reduced = sum(
        ((hf_parity >> q) & 1) << k for k, q in enumerate(order)
    )
    return SystemResult(
        coeffs, m, e_scf, e_nn,
        sector=list(sector),
        symmetry_supports=["".join(str(int(b)) for b in sup[::-1])
                           for sup in supports],
        hf_reduced_state=format(hf_reduced, f"0{m}b"),
        qubit_order=order,
    )


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _file_payload(spec: MoleculeSpec, d: float, result: SystemResult,
                  labels) -> str:
    terms = [[label, result.coeffs.get(label, 0.0)] for label in labels]
    payload = {
        "num_qubits": result.num_qubits,
        "terms": terms,
        "metadata": {
            "molecule": spec.molecule,
            "distance_angstrom": d,
            "system": spec.system,
            "basis": spec.basis,
            "scf_energy_ha": result.scf_energy,
            "nuclear_repulsion_ha": result.e_nn,
            "taper_sector": result.sector,
            "taper_symmetries": result.symmetry_supports,
            "reduced_qubit_order": result.qubit_order,
            "hf_reduced_state": result.hf_reduced_state,
        },
    }
    return json.dumps(payload, indent=1) + "\n"


def generate(spec: MoleculeSpec, outdir) -> dict:
    """Emit one coefficient file per distance; failures do not stop the sweep.

    Returns a report dict: written file names, per-distance failures, and
    the shared label schema.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    results, failures = {}, []
    for d in spec.distances:
        try:
            results[d] = build_system(spec.system, d)
        except (SCFError, MappingError) as exc:
            failures.append({"distance_angstrom": d, "error": str(exc)})
    report = {"system": spec.system, "files": [], "failures": failures,
              "labels": []}
    if results:
        first = next(iter(results.values()))
        if any(r.num_qubits != first.num_qubits for r in results.values()):
            raise MappingError("qubit count varies along the sweep")
        if any(r.sector != first.sector or
               r.symmetry_supports != first.symmetry_supports
               for r in results.values()):
            raise MappingError("tapering sector varies along the sweep")
        identity = "I" * first.num_qubits
        support = {identity}
        for r in results.values():
            support.update(
                lab for lab, c in r.coeffs.items()
                if abs(c) > SUPPORT_THRESHOLD
            )
        labels = sorted(support)
        report["labels"] = labels
        for d, r in sorted(results.items()):
            name = f"{spec.system}_d{d:.4f}.json"
            _atomic_write(outdir / name, _file_payload(spec, d, r, labels))
            report["files"].append(name)
    _atomic_write(outdir / f"{spec.system}_report.json",
                  json.dumps(report, indent=1) + "\n")
    return report
