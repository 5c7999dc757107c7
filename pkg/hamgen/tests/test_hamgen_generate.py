"""Generator and validator tests on small sweeps."""

import json

import numpy as np
import pytest

import importlib

from hamgen.generate import MoleculeSpec, build_system, generate

# the package re-exports a function named `generate`, so fetch the module
gen = importlib.import_module("hamgen.generate")
from hamgen.mapping import terms_to_matrix
from hamgen.scf import SCFError
from hamgen.validate import validate_directory


EXPECTED_QUBITS = {"H2_1Q": 1, "H2_2Q": 2, "H3_3Q": 3, "HEHP_4Q": 4}


def test_qubit_counts_per_system():
    for system, n in EXPECTED_QUBITS.items():
        result = build_system(system, 0.9)
        assert result.num_qubits == n
        assert "I" * n in result.coeffs


def test_reduced_hf_state_energy_equals_scf():
    # tapering must keep the Hartree-Fock determinant in the sector
    for system in ("H2_1Q", "H2_2Q", "H3_3Q", "HEHP_4Q"):
        r = build_system(system, 1.1)
        m = terms_to_matrix(r.coeffs, r.num_qubits)
        hf = int(r.hf_reduced_state, 2)
        assert m[hf, hf].real == pytest.approx(r.scf_energy, abs=1e-9)


def test_tapered_ground_matches_full_space_sector():
    # the 1-qubit H2 file must reproduce the full 4-qubit ground energy
    r1 = build_system("H2_1Q", 0.735)
    r2 = build_system("H2_2Q", 0.735)
    e1 = np.linalg.eigvalsh(terms_to_matrix(r1.coeffs, 1))[0]
    e2 = np.linalg.eigvalsh(terms_to_matrix(r2.coeffs, 2))[0]
    assert e1 == pytest.approx(e2, abs=1e-10)


def test_generate_writes_parseable_files(tmp_path):
    spec = MoleculeSpec("H2_1Q", (0.5, 0.9, 1.3))
    report = generate(spec, tmp_path)
    assert len(report["files"]) == 3 and not report["failures"]
    for name in report["files"]:
        obj = json.loads((tmp_path / name).read_text())
        assert obj["num_qubits"] == 1
        assert [lab for lab, _ in obj["terms"]] == report["labels"]
        assert obj["metadata"]["system"] == "H2_1Q"
        assert obj["metadata"]["taper_sector"]
    assert (tmp_path / "H2_1Q_report.json").exists()


def test_generate_failure_report_keeps_other_distances(tmp_path, monkeypatch):
    real = gen.hartree_fock
    calls = []

    def flaky(*args, **kw):
        calls.append(None)
        if len(calls) == 2:  # second distance in the sweep
            raise SCFError("forced failure")
        return real(*args, **kw)

    monkeypatch.setattr(gen, "hartree_fock", flaky)
    report = generate(MoleculeSpec("H2_1Q", (0.5, 0.9, 1.3)), tmp_path)
    assert len(report["files"]) == 2
    assert len(report["failures"]) == 1
    assert report["failures"][0]["distance_angstrom"] == 0.9


def test_molecule_spec_validation():
    with pytest.raises(ValueError):
        MoleculeSpec("H4_5Q", (1.0,))
    with pytest.raises(ValueError):
        MoleculeSpec("H2_1Q", ())
    with pytest.raises(ValueError):
        MoleculeSpec("H2_1Q", (-0.5,))


def test_validate_directory_ok_and_corrupt(tmp_path):
    generate(MoleculeSpec("H2_1Q", (0.7, 1.1)), tmp_path)
    report = validate_directory(tmp_path)
    assert report["ok"]
    assert len(report["files"]) == 2
    assert report["schemas"]["H2_1Q"]

    (tmp_path / "broken.json").write_text("{not json")
    report = validate_directory(tmp_path)
    assert not report["ok"]
    assert any(e["file"] == "broken.json" for e in report["errors"])


def test_cli_generate_and_validate(tmp_path, capsys):
    from hamgen.cli import main

    out = tmp_path / "files"
    rc = main(["generate", "--system", "H2_2Q",
               "--distances", "0.7", "1.4", "--outdir", str(out)])
    assert rc == 0
    assert main(["validate", str(out)]) == 0
