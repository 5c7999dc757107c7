"""Acceptance suite: one test per top-level correctness criterion.

Every test prints a single PASS/FAIL line with the measured quantity and
its tolerance, then asserts.  Training-based criteria share module-scoped
fixtures so the suite stays within its runtime budgets.
"""

import math

import numpy as np
import pytest

from mlvqe import ansatz, oneq, synth
from mlvqe.cli import main as cli_main
from mlvqe.dataset import augment_with_offsets, make_offset_grid
from mlvqe.experiments import (
    CHEMICAL_ACCURACY,
    ExperimentSpec,
    build_synthetic_dataset,
    noisy_devices_experiment,
    sweep_experiment,
    train_experiment,
)
from mlvqe.mitigation import estimate_depolarization, mitigate
from mlvqe.mlp import backward, init_he, make_widths, mse_loss
from mlvqe.optimize import OptimizerConfig, vqe_run
from mlvqe.pauli import PauliHamiltonian, exact_ground_energy
from mlvqe.sim import (
    EXACT,
    DeviceConfig,
    NoiseModel,
    measure_expectations,
    run_circuit,
)


def report(name: str, ok: bool, detail: str = "") -> None:
    print(f"{'PASS' if ok else 'FAIL'} {name} {detail}".rstrip())
    assert ok, f"{name}: {detail}"


# ----- shared trained models -------------------------------------------------

@pytest.fixture(scope="module")
def clean_model():
    """The reference configuration: 5 distances, 1000 epochs, batch 8."""
    spec = ExperimentSpec()
    model, history, train_ds, test_ds = train_experiment(spec)
    return spec, model, history


@pytest.fixture(scope="module")
def noise_model_pair(clean_model):
    """Noise-augmented model (±0.1π grid) plus the clean model for contrast."""
    spec = ExperimentSpec(
        offset_magnitudes=(0.1 * math.pi,),
        fold_traces=True,
        cutoff=30,
        seed=21,
        lr_schedule=((3e-3, 3000), (1e-3, 2000), (3e-4, 2000)),
    )
    model, history, _, _ = train_experiment(spec)
    return spec, model, history


# ----- criteria ---------------------------------------------------------------

def test_analytic_oracle_agreement():
    rng = np.random.Generator(np.random.PCG64(0))
    worst_gap = worst_opt = 0.0
    for _ in range(1000):
        h0, h1, h2, h3 = rng.uniform(-2.0, 2.0, size=4)
        h = PauliHamiltonian.from_terms(
            1, [("I", h0), ("X", h1), ("Y", h2), ("Z", h3)]
        )
        r = math.sqrt(h1 * h1 + h2 * h2 + h3 * h3)
        worst_gap = max(worst_gap, abs(exact_ground_energy(h) - (h0 - r)))
        sol = oneq.solve(h1, h2, h3)
        x, y, z = oneq.expectations_at(sol.u_opt, sol.v_opt)
        e_opt = h0 + h1 * x + h2 * y + h3 * z
        worst_opt = max(worst_opt, abs(e_opt - (h0 - r)))
    ok = worst_gap < 1e-9 and worst_opt < 1e-9
    report("acceptance: analytic oracle over 1000 random Hamiltonians", ok,
           f"max|diag gap|={worst_gap:.2e}, max|optimum gap|={worst_opt:.2e}, tol 1e-9")


def test_baseline_vqe_convergence():
    circuit = ansatz.build("H2_1Q")
    device = DeviceConfig.exact()
    rng = np.random.Generator(np.random.PCG64(1))
    worst = 0.0
    most_evals = 0
    for i in range(50):
        h1, h2, h3 = rng.uniform(-2.0, 2.0, size=3)
        h = PauliHamiltonian.from_terms(1, [("X", h1), ("Y", h2), ("Z", h3)])
        cfg = OptimizerConfig(max_evals_full=100, convergence_tol=1e-9, seed=i)
        trace = vqe_run(h, circuit, device, cfg)
        gap = float(trace.energies.min()) - oneq.solve(h1, h2, h3).min_energy
        worst = max(worst, gap)
        # the trace appends a re-evaluation of the converged point
        most_evals = max(most_evals, len(trace.evaluations) - 1)
    ok = worst < 1e-6 and most_evals <= 100
    report("acceptance: baseline VQE from 50 random starts", ok,
           f"max gap={worst:.2e} Ha (tol 1e-6), max evals={most_evals} (cap 100)")


def test_gradient_check():
    from mlvqe.mlp import _forward_cached

    rng = np.random.Generator(np.random.PCG64(2))
    worst = 0.0
    eps = 1e-6
    checked = skipped = 0

    def relu_pattern(model, x):
        _, pre, _ = _forward_cached(model, np.atleast_2d(x))
        return [p > 0.0 for p in pre]

    for trial in range(100):
        model = init_he(make_widths(8, 2), seed=trial)
        x = rng.normal(size=8)
        y = rng.normal(size=2)
        grads_w, grads_b, _ = backward(model, x, y)
        for arrays, grads in ((model.weights, grads_w), (model.biases, grads_b)):
            for arr, grad in zip(arrays, grads):
                flat = arr.reshape(-1)
                idx = rng.integers(flat.size)
                orig = flat[idx]
                flat[idx] = orig + eps
                up = mse_loss(model, x, y)
                pattern_up = relu_pattern(model, x)
                flat[idx] = orig - eps
                down = mse_loss(model, x, y)
                pattern_down = relu_pattern(model, x)
                flat[idx] = orig
                if any(not np.array_equal(a, b)
                       for a, b in zip(pattern_up, pattern_down)):
                    skipped += 1  # ReLU kink: central differences invalid here
                    continue
                fd = (up - down) / (2 * eps)
                g = grad.reshape(-1)[idx]
                scale = max(abs(fd), abs(g), 1e-8)
                worst = max(worst, abs(fd - g) / scale)
                checked += 1
    ok = worst < 1e-5 and checked >= 500
    report("acceptance: backpropagation gradient check", ok,
           f"max relative error={worst:.2e} over {checked} coordinates "
           f"(tol 1e-5, {skipped} kink-adjacent skipped)")


def test_training_thresholds(clean_model):
    _, _, history = clean_model
    ok = history.final_train_mse < 1e-4 and history.final_test_mse < 1e-3
    report("acceptance: training thresholds on the 5-distance dataset", ok,
           f"train MSE={history.final_train_mse:.3e} (tol 1e-4), "
           f"test MSE={history.final_test_mse:.3e} (tol 1e-3)")


def test_energy_curve_prediction(clean_model):
    spec, model, _ = clean_model
    rows = sweep_experiment(model, spec)
    mean_err = float(np.mean([r[3] for r in rows]))

    one_spec = ExperimentSpec(train_points=1)
    one_model, _, _, _ = train_experiment(one_spec)
    one_rows = sweep_experiment(one_model, one_spec)
    one_err = float(np.mean([r[3] for r in one_rows]))

    ok = mean_err <= CHEMICAL_ACCURACY and one_err > CHEMICAL_ACCURACY
    report("acceptance: 51-distance energy curve prediction", ok,
           f"mean|err|={mean_err:.2e} Ha (tol {CHEMICAL_ACCURACY}); "
           f"1-distance model mean|err|={one_err:.2e} (must exceed tol)")


def test_offset_device_robustness(clean_model, noise_model_pair):
    _, clean, _ = clean_model
    noise_spec, noisy, _ = noise_model_pair
    rows = noisy_devices_experiment(noisy, noise_spec, 1.5)
    hits = sum(1 for r in rows if r[4] <= 1e-2)

    clean_rows = noisy_devices_experiment(clean, noise_spec, 1.5)
    clean_misses = sum(1 for r in clean_rows if r[4] > 1e-2)

    ok = hits >= 27 and clean_misses >= 15
    report("acceptance: 30 random offset devices", ok,
           f"noise-trained within 1e-2 Ha on {hits}/30 (need >=27); "
           f"clean model violates on {clean_misses}/30 (need >=15)")


def test_augmentation_arithmetic():
    spec = ExperimentSpec(train_points=2, offset_magnitudes=(0.1 * math.pi,))
    plain = build_synthetic_dataset(ExperimentSpec(train_points=2))
    augmented = build_synthetic_dataset(spec)
    grid = make_offset_grid(2, [0.1 * math.pi])
    count_ok = (
        len(grid) == 4
        and len(augmented) == len(plain) * (1 + len(grid))
        and len(make_offset_grid(3, [0.1, 0.2])) == 4**3
    )

    # every augmented sample must equal the closed-form noisy-sample oracle
    worst_sample = 0.0
    worst_resim = 0.0
    circuit = ansatz.build("H2_1Q")
    distance_of = {f"d={d:.6f}": float(d)
                   for d in synth.distance_grid(spec.train_points)}
    by_key = {}
    for s in augmented.samples:
        if s.epsilon:
            continue
        by_key[(s.trace_id, s.eval_index)] = s
    checked = 0
    for s in augmented.samples:
        if not s.epsilon:
            continue
        base = by_key[(s.trace_id, s.eval_index)]
        h1, h2, h3 = base.inputs[:3]
        u, v = base.inputs[6:8]
        inputs, target = oneq.make_noisy_sample(
            h1, h2, h3, u - s.epsilon[0], v - s.epsilon[1],
            u_err=s.epsilon[0], v_err=s.epsilon[1],
        )
        worst_sample = max(
            worst_sample,
            float(np.max(np.abs(inputs - s.inputs))),
            float(np.max(np.abs(target - s.target))),
        )
        device = DeviceConfig.exact(NoiseModel(rotation_offsets=tuple(s.epsilon)))
        state = run_circuit(circuit, s.inputs[6:8], device.noise)
        exps = measure_expectations(state, synth.hamiltonian(
            distance_of[s.trace_id]), device)
        worst_resim = max(
            worst_resim,
            float(np.max(np.abs(exps[1:] - s.inputs[3:6]))),  # identity excluded
        )
        checked += 1
    ok = count_ok and worst_sample < 1e-12 and worst_resim < 1e-12 and checked > 0
    report("acceptance: offset-grid augmentation arithmetic", ok,
           f"counts ok={count_ok}, max|sample diff|={worst_sample:.2e}, "
           f"max|re-simulated diff|={worst_resim:.2e}, tol 1e-12 ({checked} samples)")


def test_mitigation_round_trip():
    circuit = ansatz.build("HEHP_4Q")
    h = PauliHamiltonian.from_terms(
        4, [("IIII", 0.3), ("ZZII", -0.4), ("XXYY", 0.25), ("ZIIZ", 0.15)]
    )
    angles = np.array([0.7, -0.4, 0.9])
    clean = measure_expectations(
        run_circuit(circuit, angles), h, DeviceConfig.exact()
    )
    worst = 0.0
    for lam in (0.02, 0.04, 0.05):
        noise = NoiseModel(depolarizing_lambda=lam)
        device = DeviceConfig.exact(noise)
        est = estimate_depolarization(circuit, device)
        noisy = measure_expectations(run_circuit(circuit, angles, noise), h, device)
        worst = max(worst, float(np.max(np.abs(mitigate(noisy, h, est) - clean))))

    lam = 0.04
    hits = 0
    shots = 10_000
    se = math.sqrt(lam * (2 - lam)) / math.sqrt(shots)  # binomial SE of <Z..Z>
    for seed in range(200):
        device = DeviceConfig(noise=NoiseModel(depolarizing_lambda=lam),
                              shots=shots, rng_seed=seed)
        est = estimate_depolarization(circuit, device)
        if abs(est.p - (1 - lam)) <= 3 * se:
            hits += 1

    skip = estimate_depolarization(ansatz.build("H2_1Q"),
                                   DeviceConfig.exact()).skip
    ok = worst < 1e-12 and hits >= 190 and skip
    report("acceptance: depolarization mitigation round-trip", ok,
           f"max residual={worst:.2e} (tol 1e-12), p within 3SE in {hits}/200 "
           f"(need >=190), lambda=0 skips={skip}")


def test_shot_noise_scaling():
    h = synth.hamiltonian(1.0)
    circuit = ansatz.build("H2_1Q")
    state_angles = np.array([0.9, -0.5])
    levels = (100, 1600, 10_000)
    stds = {}
    for shots in levels:
        vals = []
        for seed in range(400):
            device = DeviceConfig(noise=NoiseModel(), shots=shots, rng_seed=seed)
            exps = measure_expectations(
                run_circuit(circuit, state_angles), h, device
            )
            vals.append(exps[h.labels.index("X")])
        stds[shots] = float(np.std(vals))
    ok = True
    detail = []
    for a, b in ((100, 1600), (1600, 10_000), (100, 10_000)):
        measured = stds[a] / stds[b]
        expected = math.sqrt(b / a)
        ratio = measured / expected
        detail.append(f"{a}->{b}: {ratio:.2f}")
        ok = ok and (1 / 1.5 <= ratio <= 1.5)
    report("acceptance: shot-noise 1/sqrt(shots) scaling", ok,
           "ratio vs ideal within factor 1.5: " + ", ".join(detail))


def test_cli_determinism(tmp_path):
    command_sets = [
        ["gen-data", "--train-points", "2", "--augment"],
        ["train", "--train-points", "1", "--epochs", "20"],
        ["sweep", "--train-points", "1", "--epochs", "20", "--test-points", "5"],
        ["compare", "--train-points", "1", "--epochs", "20", "--budget", "15"],
        ["mitigate-check", "--system", "H2_1Q", "--depolarizing-lambda", "0.04",
         "--shots", "4096"],
    ]
    identical = True
    for k, args in enumerate(command_sets):
        outs = []
        for run in ("a", "b"):
            out = tmp_path / f"{k}{run}"
            if args[0] == "mitigate-check":
                rc = cli_main(args + ["--out", str(out / "report.json")])
            else:
                rc = cli_main(args + ["--out", str(out)])
            assert rc == 0
            outs.append({p.name: p.read_bytes() for p in sorted(out.rglob("*"))
                         if p.is_file()})
        identical = identical and outs[0] == outs[1]
    report("acceptance: CLI reruns are byte-identical", identical,
           f"{len(command_sets)} commands, two runs each")
