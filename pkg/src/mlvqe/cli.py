"""Command-line entry points for the experiment pipelines.

Every command is deterministic for fixed seeds: outputs carry no
timestamps and floats are serialized via repr, so reruns are
byte-identical.  Subcommands: gen-data, train, sweep, compare,
noisy-devices, diag, mitigate-check.
"""

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import ansatz, synth
from .dataset import save as save_dataset, split
from .experiments import (
    CHEMICAL_ACCURACY,
    DEFAULT_NOISE_RANGE,
    ExperimentSpec,
    build_synthetic_dataset,
    compare_experiment,
    noisy_devices_experiment,
    sweep_experiment,
    train_experiment,
)
from .mitigation import estimate_depolarization, mitigate
from .mlp import load_model, save_model
from .pauli import exact_ground_energy, load_hamiltonian
from .sim import EXACT, DeviceConfig, NoiseModel, measure_expectations, run_circuit


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: Path, header, rows) -> None:
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _parse_shots(text: str):
    if text.lower() == "exact":
        return EXACT
    shots = int(text)
    if shots <= 0:
        raise argparse.ArgumentTypeError("shots must be positive or 'exact'")
    return shots


def _parse_schedule(text) -> tuple:
    """Parse 'lr:epochs,lr:epochs,...' into ((lr, epochs), ...)."""
    if not text:
        return ()
    phases = []
    for part in text.split(","):
        lr_text, _, epochs_text = part.partition(":")
        try:
            phases.append((float(lr_text), int(epochs_text)))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(
                f"bad schedule phase {part!r}; expected lr:epochs") from exc
    return tuple(phases)


def _spec_from_args(args) -> ExperimentSpec:
    magnitudes = ()
    if getattr(args, "augment", False):
        magnitudes = (args.noise_range,)
    return ExperimentSpec(
        train_points=args.train_points,
        test_points=getattr(args, "test_points", 51),
        cutoff=args.cutoff,
        epochs=args.epochs,
        batch_size=args.batch_size,
        learning_rate=args.learning_rate,
        seed=args.seed,
        shots=args.shots,
        iterations=getattr(args, "iterations", 5),
        offset_magnitudes=magnitudes,
        devices=getattr(args, "devices", 30),
        noise_range=getattr(args, "noise_range", DEFAULT_NOISE_RANGE),
        fold_traces=getattr(args, "fold_traces", False),
        lr_schedule=getattr(args, "lr_schedule", ()),
    )


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--system", default="H2_1Q", choices=["H2_1Q"],
                   help="ansatz/Hamiltonian family for pipeline commands")
    p.add_argument("--seed", type=int, default=16)
    p.add_argument("--shots", type=_parse_shots, default="exact",
                   help="shot count, or 'exact' for infinite-shot expectations")
    p.add_argument("--train-points", type=int, default=5)
    p.add_argument("--cutoff", type=int, default=10)
    p.add_argument("--epochs", type=int, default=1000)
    p.add_argument("--batch-size", type=int, default=8)
    p.add_argument("--learning-rate", type=float, default=3e-3)
    p.add_argument("--augment", action="store_true",
                   help="add the signed offset-grid augmentation at --noise-range")
    p.add_argument("--fold-traces", action="store_true",
                   help="fold each harvested sample to the fundamental domain")
    p.add_argument("--lr-schedule", type=_parse_schedule, default=(),
                   metavar="LR:EPOCHS,...",
                   help="multi-phase training schedule; overrides "
                        "--learning-rate/--epochs when given")
    p.add_argument("--noise-range", type=float, default=DEFAULT_NOISE_RANGE)
    p.add_argument("--out", type=Path, required=True, help="output directory")


def _load_or_train(args):
    spec = _spec_from_args(args)
    if getattr(args, "model", None):
        return load_model(args.model), spec
    model, _, _, _ = train_experiment(spec)
    return model, spec


def cmd_gen_data(args) -> int:
    spec = _spec_from_args(args)
    ds = build_synthetic_dataset(spec)
    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    save_dataset(ds, out / "dataset.jsonl")
    manifest = {
        "system": spec.system_id,
        "train_points": spec.train_points,
        "cutoff": spec.cutoff,
        "offset_magnitudes": list(spec.offset_magnitudes),
        "samples": len(ds),
        "input_dim": ds.input_dim,
        "target_dim": ds.target_dim,
        "seed": spec.seed,
        "trace_seed_base": spec.trace_seed_base,
    }
    _write_json(out / "manifest.json", manifest)
    print(f"wrote {len(ds)} samples to {out / 'dataset.jsonl'}")
    return 0


def cmd_train(args) -> int:
    spec = _spec_from_args(args)
    model, history, train_ds, test_ds = train_experiment(spec)
    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    save_model(model, out / "model.json")
    _write_csv(out / "loss_history.csv",
               ["epoch", "train_mse", "test_mse"],
               [(i, tr, te) for i, (tr, te) in
                enumerate(zip(history.train_mse, history.test_mse))])
    metrics = {
        "train_mse": history.final_train_mse,
        "test_mse": history.final_test_mse,
        "train_samples": len(train_ds),
        "test_samples": len(test_ds),
    }
    _write_json(out / "metrics.json", metrics)
    print(f"train MSE {history.final_train_mse:.3e}  test MSE {history.final_test_mse:.3e}")
    if args.require_mse and not (
        history.final_train_mse < args.train_mse_target
        and history.final_test_mse < args.test_mse_target
    ):
        print("MSE targets unmet", file=sys.stderr)
        return 1
    return 0


def cmd_sweep(args) -> int:
    model, spec = _load_or_train(args)
    rows = sweep_experiment(model, spec)
    out_rows = [
        (d, ep, ee, err, int(err <= CHEMICAL_ACCURACY))
        for d, ep, ee, err in rows
    ]
    _write_csv(args.out / "sweep.csv",
               ["distance", "predicted_energy_ha", "exact_energy_ha",
                "abs_error_ha", "within_chemical_accuracy"],
               out_rows)
    mean_err = float(np.mean([r[3] for r in rows]))
    _write_json(args.out / "sweep_summary.json", {
        "mean_abs_error_ha": mean_err,
        "max_abs_error_ha": float(np.max([r[3] for r in rows])),
        "chemical_accuracy_ha": CHEMICAL_ACCURACY,
        "points_within": sum(1 for r in rows if r[3] <= CHEMICAL_ACCURACY),
        "test_points": len(rows),
    })
    print(f"mean abs error {mean_err:.3e} Ha over {len(rows)} points")
    if not math.isfinite(mean_err):
        return 1
    return 0


def cmd_compare(args) -> int:
    model, spec = _load_or_train(args)
    nn, baseline = compare_experiment(model, spec, args.distance,
                                      baseline_budget=args.budget)
    h = synth.hamiltonian(args.distance)
    exact = exact_ground_energy(h)
    n = max(len(nn), len(baseline))
    rows = []
    for i in range(n):
        rows.append((
            i,
            nn[i] if i < len(nn) else "",
            baseline[i] if i < len(baseline) else "",
            exact,
        ))
    _write_csv(args.out / "compare.csv",
               ["iteration", "nn_energy_ha", "baseline_energy_ha", "exact_energy_ha"],
               rows)
    print(f"NN best {min(nn):.6f} Ha, baseline best {min(baseline):.6f} Ha, "
          f"exact {exact:.6f} Ha")
    return 0


def cmd_noisy_devices(args) -> int:
    model, spec = _load_or_train(args)
    rows = noisy_devices_experiment(model, spec, args.distance)
    out_rows = [
        (i, eps[0], eps[1], e_best, e_opt, gap, int(gap <= args.gap_tolerance))
        for i, eps, e_best, e_opt, gap in rows
    ]
    _write_csv(args.out / "noisy_devices.csv",
               ["device", "epsilon_0_rad", "epsilon_1_rad", "best_energy_ha",
                "device_optimum_ha", "gap_ha", "within_tolerance"],
               out_rows)
    hits = sum(r[6] for r in out_rows)
    _write_json(args.out / "noisy_devices_summary.json", {
        "devices": len(rows),
        "within_tolerance": hits,
        "gap_tolerance_ha": args.gap_tolerance,
        "noise_range_rad": spec.noise_range,
    })
    print(f"{hits}/{len(rows)} devices within {args.gap_tolerance} Ha of optimum")
    return 0


def cmd_diag(args) -> int:
    h = load_hamiltonian(args.hamiltonian)
    e = exact_ground_energy(h)
    print(repr(e))
    if args.out is not None:
        _write_json(args.out, {"file": str(args.hamiltonian),
                               "exact_ground_energy_ha": e})
    return 0


def cmd_mitigate_check(args) -> int:
    circuit = ansatz.build(args.system)
    if args.hamiltonian is not None:
        h = load_hamiltonian(args.hamiltonian)
        if h.num_qubits != circuit.num_qubits:
            print(f"Hamiltonian has {h.num_qubits} qubits, "
                  f"circuit {circuit.num_qubits}", file=sys.stderr)
            return 1
    elif args.system == "H2_1Q":
        h = synth.hamiltonian(args.distance)
    else:
        print("--hamiltonian is required for systems beyond H2_1Q", file=sys.stderr)
        return 1
    noise = NoiseModel(depolarizing_lambda=args.depolarizing_lambda)
    device = DeviceConfig(noise=noise, shots=args.shots, rng_seed=args.seed)
    est = estimate_depolarization(circuit, device)

    rng = np.random.Generator(np.random.PCG64(args.seed))
    angles = rng.uniform(-np.pi, np.pi, size=circuit.param_count)
    state = run_circuit(circuit, angles, noise)
    measured = measure_expectations(state, h, device)
    mitigated = mitigate(measured, h, est)
    clean = measure_expectations(run_circuit(circuit, angles), h, DeviceConfig.exact())

    report = {
        "p": est.p,
        "ideal_sign": est.ideal_sign,
        "skip": est.skip,
        "depolarizing_lambda": args.depolarizing_lambda,
        "shots": "exact" if args.shots is EXACT else args.shots,
        "terms": [
            {"label": label, "measured": float(m), "mitigated": float(g),
             "noiseless": float(c)}
            for (label, _), m, g, c in zip(h.terms, measured, mitigated, clean)
        ],
        "max_abs_residual": float(np.max(np.abs(mitigated - clean))),
    }
    print(f"p = {est.p!r} (skip={est.skip}); "
          f"max |mitigated - noiseless| = {report['max_abs_residual']:.3e}")
    if args.out is not None:
        _write_json(args.out, report)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlvqe",
        description="Machine-learned VQE optimizer experiments on a statevector simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-data", help="harvest optimizer traces into a training dataset")
    _add_common(p)
    p.set_defaults(func=cmd_gen_data)

    p = sub.add_parser("train", help="train the angle-update network")
    _add_common(p)
    p.add_argument("--require-mse", action="store_true",
                   help="exit nonzero unless the MSE targets are met")
    p.add_argument("--train-mse-target", type=float, default=1e-4)
    p.add_argument("--test-mse-target", type=float, default=1e-3)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("sweep", help="predictor-loop energies across the test curve")
    _add_common(p)
    p.add_argument("--model", type=Path, default=None,
                   help="model checkpoint; trains from scratch when omitted")
    p.add_argument("--test-points", type=int, default=51)
    p.add_argument("--iterations", type=int, default=5)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="NN optimizer vs simplex baseline from one start")
    _add_common(p)
    p.add_argument("--model", type=Path, default=None)
    p.add_argument("--distance", type=float, default=1.5)
    p.add_argument("--iterations", type=int, default=5)
    p.add_argument("--budget", type=int, default=40,
                   help="baseline evaluation budget for the comparison window")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("noisy-devices",
                       help="predictor performance across random offset devices")
    _add_common(p)
    p.add_argument("--model", type=Path, default=None)
    p.add_argument("--distance", type=float, default=1.5)
    p.add_argument("--iterations", type=int, default=5)
    p.add_argument("--devices", type=int, default=30)
    p.add_argument("--gap-tolerance", type=float, default=1e-2)
    p.set_defaults(func=cmd_noisy_devices)

    p = sub.add_parser("diag", help="exact ground energy of a Hamiltonian file")
    p.add_argument("hamiltonian", type=Path)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser("mitigate-check",
                       help="depolarization estimate and mitigation residual report")
    p.add_argument("--system", default="H2_1Q",
                   choices=["H2_1Q", "H2_2Q", "H3_3Q", "HEHP_4Q"])
    p.add_argument("--distance", type=float, default=1.5)
    p.add_argument("--hamiltonian", type=Path, default=None,
                   help="coefficient file; defaults to the synthetic family for H2_1Q")
    p.add_argument("--depolarizing-lambda", type=float, default=0.04)
    p.add_argument("--shots", type=_parse_shots, default="exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_mitigate_check)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
