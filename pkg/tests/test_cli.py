"""Tests for the command-line interface: determinism and output shape."""

import json

import pytest

from mlvqe.cli import main
from mlvqe.synth import hamiltonian


def read_all(directory):
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir())}


def test_gen_data_counts_and_determinism(tmp_path, capsys):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    args = ["gen-data", "--train-points", "1", "--seed", "16"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert read_all(out1) == read_all(out2)
    manifest = json.loads((out1 / "manifest.json").read_text())
    assert manifest["samples"] == 11  # cutoff 10 plus the converged point


def test_gen_data_augmented_counts(tmp_path):
    out = tmp_path / "aug"
    assert main(["gen-data", "--train-points", "1", "--augment",
                 "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["samples"] == 11 * 5  # signed grid on 2 params adds 4 copies


def test_train_writes_checkpoint_and_history(tmp_path):
    out = tmp_path / "train"
    assert main(["train", "--train-points", "1", "--epochs", "5",
                 "--out", str(out)]) == 0
    assert (out / "model.json").exists()
    history = (out / "loss_history.csv").read_text().splitlines()
    assert history[0] == "epoch,train_mse,test_mse"
    assert len(history) == 6
    metrics = json.loads((out / "metrics.json").read_text())
    assert metrics["train_samples"] + metrics["test_samples"] == 11


def test_train_require_mse_fails_loudly(tmp_path):
    out = tmp_path / "train"
    rc = main(["train", "--train-points", "1", "--epochs", "1", "--require-mse",
               "--out", str(out)])
    assert rc == 1


def test_sweep_outputs_exact_column(tmp_path):
    out = tmp_path / "sweep"
    assert main(["sweep", "--train-points", "1", "--epochs", "5",
                 "--test-points", "3", "--out", str(out)]) == 0
    lines = (out / "sweep.csv").read_text().splitlines()
    assert len(lines) == 4
    from mlvqe.pauli import exact_ground_energy

    for line in lines[1:]:
        d, _, e_exact, _, _ = line.split(",")
        assert float(e_exact) == exact_ground_energy(hamiltonian(float(d)))


def test_sweep_determinism(tmp_path):
    args = ["sweep", "--train-points", "1", "--epochs", "5",
            "--test-points", "3", "--seed", "4"]
    out1, out2 = tmp_path / "s1", tmp_path / "s2"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert read_all(out1) == read_all(out2)


def test_compare_emits_both_trajectories(tmp_path):
    out = tmp_path / "cmp"
    assert main(["compare", "--train-points", "1", "--epochs", "5",
                 "--budget", "20", "--out", str(out)]) == 0
    lines = (out / "compare.csv").read_text().splitlines()
    assert lines[0] == "iteration,nn_energy_ha,baseline_energy_ha,exact_energy_ha"
    assert len(lines) >= 7


def test_diag_matches_oracle(tmp_path, capsys):
    h = hamiltonian(0.9)
    path = tmp_path / "h.json"
    path.write_text(h.to_json())
    assert main(["diag", str(path)]) == 0
    printed = float(capsys.readouterr().out.strip())
    from mlvqe.pauli import exact_ground_energy

    assert printed == exact_ground_energy(h)


def test_mitigate_check_exact_round_trip(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    assert main(["mitigate-check", "--system", "H2_1Q",
                 "--depolarizing-lambda", "0.05", "--shots", "exact",
                 "--out", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert report["p"] == pytest.approx(0.95, abs=1e-12)
    assert report["max_abs_residual"] < 1e-12


def test_mitigate_check_requires_hamiltonian_for_big_systems(tmp_path, capsys):
    assert main(["mitigate-check", "--system", "H3_3Q"]) == 1


def test_shots_flag_validation():
    with pytest.raises(SystemExit):
        main(["sweep", "--shots", "-5", "--out", "/tmp/x"])


def test_lr_schedule_flag(tmp_path):
    out = tmp_path / "sched"
    assert main(["train", "--train-points", "1",
                 "--lr-schedule", "3e-3:3,1e-3:2", "--out", str(out)]) == 0
    history = (out / "loss_history.csv").read_text().splitlines()
    assert len(history) == 6  # header plus one row per epoch across phases
    with pytest.raises(SystemExit):
        main(["train", "--train-points", "1",
              "--lr-schedule", "bogus", "--out", str(out)])
