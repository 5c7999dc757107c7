"""Supervised datasets from optimization traces, plus offset augmentation.

Sample layout (versioned in the file header as "h|exp|ang"):

    input  = [Hamiltonian coefficients (schema order, identity excluded)
              | per-term expectations (schema order)
              | requested angles]
    target = optimal_angles - requested_angles

Offset augmentation: a sample recorded at angles theta on a clean device is
also a valid sample for a device whose rotations are offset by eps, with the
requested angles shifted to theta - eps and everything else unchanged -- on
that device the request theta - eps physically realizes theta, and the
device-optimal request is theta* - eps, so the delta is untouched.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .optimize import OptimizationTrace
from .pauli import PauliHamiltonian, TermSchema, coefficient_vector

LAYOUT = "h|exp|ang"
FILE_VERSION = 1

#: grid guard: refuse combinatorial explosions
MAX_GRID_VECTORS = 10**6


class DatasetError(ValueError):
    pass


@dataclass
class TrainingSample:
    inputs: np.ndarray
    target: np.ndarray
    trace_id: str = ""
    eval_index: int = 0
    epsilon: tuple = ()

    def split_inputs(self, schema_size: int):
        k = schema_size
        return self.inputs[:k], self.inputs[k:2 * k], self.inputs[2 * k:]


@dataclass
class Dataset:
    samples: list
    schema: TermSchema
    system_id: str = ""
    split_seed: int = 0

    def __len__(self):
        return len(self.samples)

    @property
    def input_dim(self) -> int:
        return int(self.samples[0].inputs.size) if self.samples else 0

    @property
    def target_dim(self) -> int:
        return int(self.samples[0].target.size) if self.samples else 0

    def arrays(self):
        x = np.stack([s.inputs for s in self.samples])
        y = np.stack([s.target for s in self.samples])
        return x, y


def expectations_to_schema(exps: np.ndarray, h: PauliHamiltonian,
                           schema: TermSchema) -> np.ndarray:
    """Reorder per-term expectations from h's term order to schema order."""
    by_label = {label: exps[i] for i, (label, _) in enumerate(h.terms)}
    missing = [lab for lab in schema.labels if lab not in by_label]
    if missing:
        raise DatasetError(f"Hamiltonian has no expectation for schema labels {missing}")
    return np.array([by_label[lab] for lab in schema.labels], dtype=float)


def trace_to_samples(trace: OptimizationTrace, optimal_angles, h: PauliHamiltonian,
                     schema: TermSchema, trace_id: str = "") -> list:
    """One sample per trace evaluation, target = optimal - evaluated angles."""
    optimal_angles = np.asarray(optimal_angles, dtype=float)
    coeffs = coefficient_vector(h, schema)
    samples = []
    for i, (angles, exps, _energy) in enumerate(trace.evaluations):
        if angles.shape != optimal_angles.shape:
            raise DatasetError(
                f"angle dimension {angles.shape} != optimal {optimal_angles.shape}"
            )
        exps_s = expectations_to_schema(exps, h, schema)
        samples.append(
            TrainingSample(
                inputs=np.concatenate([coeffs, exps_s, angles]),
                target=optimal_angles - angles,
                trace_id=trace_id,
                eval_index=i,
            )
        )
    return samples


def make_offset_grid(param_count: int, magnitudes, include_zero: bool = False) -> list:
    """Cartesian product of signed magnitudes per parameter.

    Yields (2 * len(magnitudes)) ** param_count offset vectors, plus the zero
    vector when requested.
    """
    if not magnitudes:
        raise DatasetError("magnitudes must be non-empty")
    signed = [s * m for m in magnitudes for s in (-1.0, 1.0)]
    total = len(signed) ** param_count
    if total > MAX_GRID_VECTORS:
        raise DatasetError(f"offset grid of {total} vectors exceeds the guard")
    grid = [tuple(v) for v in itertools.product(signed, repeat=param_count)]
    if include_zero:
        grid.insert(0, (0.0,) * param_count)
    return grid


def augment_with_offsets(samples, epsilon_vectors, schema_size: int) -> list:
    """Original samples plus one shifted copy per (sample, epsilon)."""
    out = list(samples)
    for sample in samples:
        coeffs, exps, angles = sample.split_inputs(schema_size)
        for eps in epsilon_vectors:
            eps = np.asarray(eps, dtype=float)
            if eps.shape != angles.shape:
                raise DatasetError(
                    f"epsilon dimension {eps.shape} != angle dimension {angles.shape}"
                )
            out.append(
                TrainingSample(
                    inputs=np.concatenate([coeffs, exps, angles - eps]),
                    target=sample.target.copy(),
                    trace_id=sample.trace_id,
                    eval_index=sample.eval_index,
                    epsilon=tuple(eps),
                )
            )
    return out


def split(d: Dataset, test_fraction: float = 0.01, seed: int = 0):
    """Deterministic disjoint train/test split; test size max(1, round(f*N))."""
    n = len(d)
    if n < 2:
        raise DatasetError("need at least 2 samples to split")
    n_test = max(1, round(test_fraction * n))
    order = np.random.Generator(np.random.PCG64(seed)).permutation(n)
    test_idx = set(order[:n_test].tolist())
    train = [d.samples[i] for i in range(n) if i not in test_idx]
    test = [d.samples[i] for i in sorted(test_idx)]
    train_ds = Dataset(train, d.schema, d.system_id, split_seed=seed)
    test_ds = Dataset(test, d.schema, d.system_id, split_seed=seed)
    return train_ds, test_ds


def save(d: Dataset, path) -> None:
    header = {
        "version": FILE_VERSION,
        "system": d.system_id,
        "schema": list(d.schema.labels),
        "layout": LAYOUT,
        "split_seed": d.split_seed,
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header) + "\n")
        for s in d.samples:
            rec = {
                "in": s.inputs.tolist(),
                "out": s.target.tolist(),
                "prov": {
                    "trace": s.trace_id,
                    "eval": s.eval_index,
                    "eps": list(s.epsilon),
                },
            }
            fh.write(json.dumps(rec) + "\n")


def load(path) -> Dataset:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise DatasetError(f"{path}: empty dataset file")
    try:
        header = json.loads(lines[0])
        version = header["version"]
        schema = TermSchema(tuple(header["schema"]))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise DatasetError(f"{path}: corrupt header line 1: {exc}") from exc
    if version != FILE_VERSION:
        raise DatasetError(f"{path}: unsupported dataset version {version}")
    if header.get("layout") != LAYOUT:
        raise DatasetError(f"{path}: unknown layout {header.get('layout')!r}")
    samples = []
    for lineno, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        try:
            rec = json.loads(ln)
            prov = rec.get("prov", {})
            samples.append(
                TrainingSample(
                    inputs=np.array(rec["in"], dtype=float),
                    target=np.array(rec["out"], dtype=float),
                    trace_id=prov.get("trace", ""),
                    eval_index=prov.get("eval", 0),
                    epsilon=tuple(prov.get("eps", ())),
                )
            )
        except (json.JSONDecodeError, KeyError) as exc:
            raise DatasetError(f"{path}: corrupt sample at line {lineno}: {exc}") from exc
    return Dataset(samples, schema, header.get("system", ""),
                   split_seed=header.get("split_seed", 0))
