"""Feedforward surrogate: 4-layer ReLU MLP trained on angle-delta targets.

Architecture rule: widths descend from the input size to the output size,
each hidden width = ceil(previous / 2) clamped to >= the output size, for
exactly four weight layers.  Weights use He initialization; training is
minibatch MSE with Adam (or plain SGD behind a config switch), fully
deterministic per seed.

The trained model replaces the classical minimizer: `predictor_loop`
measures, asks the network for an angle update, applies it, and after a
fixed number of rounds returns the minimum-energy point visited (the
initial point included, so a perfect start is never worsened).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .pauli import PauliHamiltonian, TermSchema, coefficient_vector
from .sim import DeviceConfig, energy as term_energy, measure_expectations, run_circuit
from .dataset import Dataset, expectations_to_schema

N_WEIGHT_LAYERS = 4
MODEL_FILE_VERSION = 1


class ModelError(ValueError):
    pass


def make_widths(input_dim: int, output_dim: int) -> list:
    """Halving-descent width rule: [in, h1, h2, h3, out]."""
    widths = [input_dim]
    for _ in range(N_WEIGHT_LAYERS - 1):
        widths.append(max(math.ceil(widths[-1] / 2), output_dim))
    widths.append(output_dim)
    return widths


@dataclass
class MlpModel:
    widths: list
    weights: list   # weights[k]: (widths[k+1], widths[k])
    biases: list    # biases[k]: (widths[k+1],)
    system_id: str = ""
    schema_labels: tuple = ()
    layout: str = "h|exp|ang"
    seed: int = 0

    @property
    def input_dim(self) -> int:
        return self.widths[0]

    @property
    def output_dim(self) -> int:
        return self.widths[-1]


def init_he(widths, seed: int = 0, system_id: str = "",
            schema_labels=()) -> MlpModel:
    """He-initialized model: W ~ N(0, 2/fan_in), biases zero."""
    widths = list(widths)
    if len(widths) != N_WEIGHT_LAYERS + 1:
        raise ModelError(
            f"need {N_WEIGHT_LAYERS + 1} widths for {N_WEIGHT_LAYERS} weight layers, "
            f"got {len(widths)}"
        )
    if any(w < 1 for w in widths):
        raise ModelError(f"invalid widths {widths}")
    rng = np.random.Generator(np.random.PCG64(seed))
    weights, biases = [], []
    for fan_in, fan_out in zip(widths[:-1], widths[1:]):
        weights.append(rng.normal(0.0, math.sqrt(2.0 / fan_in), size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return MlpModel(widths, weights, biases, system_id=system_id,
                    schema_labels=tuple(schema_labels), seed=seed)


def forward(m: MlpModel, x: np.ndarray) -> np.ndarray:
    """Batch or single-vector inference; ReLU hidden, identity output."""
    single = x.ndim == 1
    a = np.atleast_2d(np.asarray(x, dtype=float))
    if a.shape[1] != m.input_dim:
        raise ModelError(f"input dim {a.shape[1]} != model input {m.input_dim}")
    for w, b in zip(m.weights[:-1], m.biases[:-1]):
        a = np.maximum(a @ w.T + b, 0.0)
    a = a @ m.weights[-1].T + m.biases[-1]
    return a[0] if single else a


def _forward_cached(m: MlpModel, x: np.ndarray):
    activations = [x]
    pre = []
    a = x
    for w, b in zip(m.weights[:-1], m.biases[:-1]):
        z = a @ w.T + b
        pre.append(z)
        a = np.maximum(z, 0.0)
        activations.append(a)
    out = a @ m.weights[-1].T + m.biases[-1]
    return activations, pre, out


def backward(m: MlpModel, x: np.ndarray, y: np.ndarray):
    """Gradients of batch-mean squared error; returns (grads_w, grads_b, mse).

    The ReLU subgradient at 0 is taken as 0.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = np.atleast_2d(np.asarray(y, dtype=float))
    if x.shape[0] != y.shape[0]:
        raise ModelError("batch size mismatch between inputs and targets")
    n = x.shape[0]
    activations, pre, out = _forward_cached(m, x)
    err = out - y
    mse = float(np.mean(err * err))
    # d(mean(err^2))/d(out): mean over batch AND output dims
    delta = 2.0 * err / err.size
    grads_w = [None] * len(m.weights)
    grads_b = [None] * len(m.weights)
    grads_w[-1] = delta.T @ activations[-1]
    grads_b[-1] = delta.sum(axis=0)
    for k in range(len(m.weights) - 2, -1, -1):
        delta = (delta @ m.weights[k + 1]) * (pre[k] > 0.0)
        grads_w[k] = delta.T @ activations[k]
        grads_b[k] = delta.sum(axis=0)
    return grads_w, grads_b, mse


def mse_loss(m: MlpModel, x: np.ndarray, y: np.ndarray) -> float:
    err = forward(m, x) - np.asarray(y, dtype=float)
    return float(np.mean(err * err))


@dataclass
class TrainConfig:
    epochs: int = 1000
    batch_size: int = 8
    learning_rate: float = 1e-3
    seed: int = 0
    update_rule: str = "adam"   # or "sgd"
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8


@dataclass
class TrainHistory:
    train_mse: list = field(default_factory=list)
    test_mse: list = field(default_factory=list)

    @property
    def final_train_mse(self) -> float:
        return self.train_mse[-1]

    @property
    def final_test_mse(self) -> float:
        return self.test_mse[-1]


def train(m: MlpModel, train_set: Dataset, test_set: Dataset | None,
          cfg: TrainConfig) -> TrainHistory:
    """Minibatch MSE training, shuffled per epoch by cfg.seed; in-place."""
    x_train, y_train = train_set.arrays()
    if x_train.shape[1] != m.input_dim or y_train.shape[1] != m.output_dim:
        raise ModelError("dataset dimensions do not match the model")
    x_test = y_test = None
    if test_set is not None and len(test_set):
        x_test, y_test = test_set.arrays()
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    history = TrainHistory()
    if cfg.update_rule == "adam":
        m_w = [np.zeros_like(w) for w in m.weights]
        v_w = [np.zeros_like(w) for w in m.weights]
        m_b = [np.zeros_like(b) for b in m.biases]
        v_b = [np.zeros_like(b) for b in m.biases]
        t = 0
    elif cfg.update_rule != "sgd":
        raise ModelError(f"unknown update rule {cfg.update_rule!r}")

    n = x_train.shape[0]
    for epoch in range(cfg.epochs):
        order = rng.permutation(n)
        for start in range(0, n, cfg.batch_size):
            idx = order[start:start + cfg.batch_size]
            gw, gb, _ = backward(m, x_train[idx], y_train[idx])
            if cfg.update_rule == "sgd":
                for k in range(len(m.weights)):
                    m.weights[k] -= cfg.learning_rate * gw[k]
                    m.biases[k] -= cfg.learning_rate * gb[k]
            else:
                t += 1
                corr1 = 1.0 - cfg.adam_beta1**t
                corr2 = 1.0 - cfg.adam_beta2**t
                for k in range(len(m.weights)):
                    m_w[k] = cfg.adam_beta1 * m_w[k] + (1 - cfg.adam_beta1) * gw[k]
                    v_w[k] = cfg.adam_beta2 * v_w[k] + (1 - cfg.adam_beta2) * gw[k] ** 2
                    m_b[k] = cfg.adam_beta1 * m_b[k] + (1 - cfg.adam_beta1) * gb[k]
                    v_b[k] = cfg.adam_beta2 * v_b[k] + (1 - cfg.adam_beta2) * gb[k] ** 2
                    m.weights[k] -= cfg.learning_rate * (m_w[k] / corr1) / (
                        np.sqrt(v_w[k] / corr2) + cfg.adam_eps)
                    m.biases[k] -= cfg.learning_rate * (m_b[k] / corr1) / (
                        np.sqrt(v_b[k] / corr2) + cfg.adam_eps)
        epoch_train = mse_loss(m, x_train, y_train)
        if not math.isfinite(epoch_train):
            raise ModelError(f"training diverged at epoch {epoch}")
        history.train_mse.append(epoch_train)
        history.test_mse.append(
            mse_loss(m, x_test, y_test) if x_test is not None else float("nan")
        )
    return history


def predict_step(m: MlpModel, h: PauliHamiltonian, schema: TermSchema,
                 angles: np.ndarray, expectations: np.ndarray) -> np.ndarray:
    """Assemble the versioned input layout and return the angle update."""
    if m.schema_labels and tuple(schema.labels) != tuple(m.schema_labels):
        raise ModelError(
            f"model schema {m.schema_labels} != query schema {tuple(schema.labels)}"
        )
    coeffs = coefficient_vector(h, schema)
    exps_s = expectations_to_schema(np.asarray(expectations, dtype=float), h, schema)
    x = np.concatenate([coeffs, exps_s, np.asarray(angles, dtype=float)])
    return forward(m, x)


@dataclass
class PredictorConfig:
    iterations: int = 5  # rounds of measure -> predict -> update


def predictor_loop(m: MlpModel, h: PauliHamiltonian, circuit, device: DeviceConfig,
                   initial_angles, cfg: PredictorConfig | None = None,
                   schema: TermSchema | None = None):
    """Iterate the network as the optimizer; keep the minimum-energy point.

    Returns (best_angles, best_energy, per-iteration energies).  Energies
    include the initial point's measurement as iteration 0.
    """
    cfg = cfg or PredictorConfig()
    schema = schema or TermSchema(tuple(m.schema_labels))
    angles = np.asarray(initial_angles, dtype=float).copy()
    energies = []
    best_angles, best_energy = angles.copy(), math.inf
    for it in range(cfg.iterations + 1):
        state = run_circuit(circuit, angles, device.noise)
        if device.shots is None:
            dev = device
        else:
            dev = DeviceConfig(noise=device.noise, shots=device.shots,
                               rng_seed=device.rng_seed * 1_000_003 + it)
        exps = measure_expectations(state, h, dev)
        e = term_energy(exps, h)
        energies.append(e)
        if e < best_energy:
            best_angles, best_energy = angles.copy(), e
        if it == cfg.iterations:
            break
        angles = angles + predict_step(m, h, schema, angles, exps)
    return best_angles, best_energy, energies


def save_model(m: MlpModel, path) -> None:
    """JSON checkpoint; float64 values round-trip exactly via repr."""
    obj = {
        "version": MODEL_FILE_VERSION,
        "system": m.system_id,
        "layout": m.layout,
        "widths": list(m.widths),
        "schema": list(m.schema_labels),
        "seed": m.seed,
        "weights": [w.tolist() for w in m.weights],
        "biases": [b.tolist() for b in m.biases],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh)


def load_model(path) -> MlpModel:
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if obj.get("version") != MODEL_FILE_VERSION:
        raise ModelError(f"unsupported model version {obj.get('version')}")
    widths = list(obj["widths"])
    weights = [np.array(w, dtype=float) for w in obj["weights"]]
    biases = [np.array(b, dtype=float) for b in obj["biases"]]
    for k, (w, b) in enumerate(zip(weights, biases)):
        if w.shape != (widths[k + 1], widths[k]) or b.shape != (widths[k + 1],):
            raise ModelError(f"checkpoint layer {k} has inconsistent dimensions")
    return MlpModel(widths, weights, biases, system_id=obj.get("system", ""),
                    schema_labels=tuple(obj.get("schema", ())),
                    layout=obj.get("layout", "h|exp|ang"), seed=obj.get("seed", 0))
