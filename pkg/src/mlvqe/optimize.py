"""Derivative-free baseline VQE with a full evaluation trace.

The minimizer is Nelder-Mead (scipy, adaptive parameters) with an initial
simplex step of 0.5 rad per coordinate and a simultaneous convergence test:
simplex diameter < 1e-4 rad and energy spread < convergence_tol.  Every
loss evaluation is recorded in call order; the converged point is appended
as an explicit final evaluation, so it is both `final_angles` and the last
trace entry.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .ansatz import AnsatzCircuit
from .pauli import PauliHamiltonian
from .sim import DeviceConfig, energy as term_energy, measure_expectations, run_circuit

SIMPLEX_STEP = 0.5
XATOL = 1e-4

#: sentinel for a uniformly random initial point (seeded from the config)
RANDOM = "random"


class NonFiniteLossError(RuntimeError):
    """Loss returned a non-finite energy; carries the trace recorded so far."""

    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace


@dataclass
class OptimizerConfig:
    max_evals_cutoff: int = 10       # harvest-mode truncation (10 for 1q, 30 for 4q)
    convergence_tol: float = 1e-4    # Hartree
    max_evals_full: int = 2000
    seed: int = 0

    @staticmethod
    def for_system(system_id: str, **kwargs) -> "OptimizerConfig":
        cutoff = {"H2_1Q": 10, "HEHP_4Q": 30}.get(system_id, 30)
        return OptimizerConfig(max_evals_cutoff=cutoff, **kwargs)


@dataclass
class OptimizationTrace:
    """Every (angles, expectations, energy) evaluation of one run."""

    evaluations: list = field(default_factory=list)  # (np.ndarray, np.ndarray, float)
    final_angles: np.ndarray | None = None
    converged: bool = False
    hamiltonian_ref: str = ""
    noise_offsets: tuple = ()
    depolarizing_lambda: float = 0.0
    seed: int = 0

    @property
    def energies(self) -> np.ndarray:
        return np.array([e for _, _, e in self.evaluations])

    def truncated(self, cutoff: int) -> "OptimizationTrace":
        """Harvest view: the first `cutoff` evaluations plus the final point."""
        if self.final_angles is None:
            raise ValueError("trace has no final point to harvest")
        evals = list(self.evaluations[:cutoff])
        evals.append(self.evaluations[-1])
        return OptimizationTrace(
            evaluations=evals,
            final_angles=self.final_angles,
            converged=self.converged,
            hamiltonian_ref=self.hamiltonian_ref,
            noise_offsets=self.noise_offsets,
            depolarizing_lambda=self.depolarizing_lambda,
            seed=self.seed,
        )

    def to_jsonl(self) -> str:
        header = {
            "hamiltonian": self.hamiltonian_ref,
            "noise_offsets": list(self.noise_offsets),
            "depolarizing_lambda": self.depolarizing_lambda,
            "seed": self.seed,
            "converged": self.converged,
        }
        lines = [json.dumps(header)]
        for i, (angles, exps, e) in enumerate(self.evaluations):
            rec = {
                "angles": list(np.asarray(angles, dtype=float)),
                "expectations": list(np.asarray(exps, dtype=float)),
                "energy": e,
            }
            if i == len(self.evaluations) - 1:
                rec["final"] = True
            lines.append(json.dumps(rec))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_jsonl(text: str) -> "OptimizationTrace":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty trace file")
        header = json.loads(lines[0])
        trace = OptimizationTrace(
            hamiltonian_ref=header.get("hamiltonian", ""),
            noise_offsets=tuple(header.get("noise_offsets", [])),
            depolarizing_lambda=header.get("depolarizing_lambda", 0.0),
            seed=header.get("seed", 0),
            converged=header.get("converged", False),
        )
        for ln in lines[1:]:
            rec = json.loads(ln)
            trace.evaluations.append(
                (np.array(rec["angles"]), np.array(rec["expectations"]), rec["energy"])
            )
            if rec.get("final"):
                trace.final_angles = np.array(rec["angles"])
        return trace


def minimize(loss, initial, cfg: OptimizerConfig) -> OptimizationTrace:
    """Nelder-Mead with trace recording.

    `loss` maps an angle vector to (energy, expectations).  The returned
    trace records every evaluation in call order, then the converged point
    appended explicitly.
    """
    initial = np.asarray(initial, dtype=float)
    trace = OptimizationTrace(seed=cfg.seed)

    def wrapped(x):
        e, exps = loss(np.asarray(x, dtype=float))
        if not math.isfinite(e):
            raise NonFiniteLossError(f"non-finite loss {e} at {x}", trace)
        trace.evaluations.append((np.array(x, dtype=float), np.asarray(exps, dtype=float), float(e)))
        return e

    simplex = np.vstack([initial] + [initial + SIMPLEX_STEP * np.eye(initial.size)[i]
                                     for i in range(initial.size)])
    result = _scipy_minimize(
        wrapped,
        initial,
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "xatol": XATOL,
            "fatol": cfg.convergence_tol,
            "maxfev": cfg.max_evals_full,
            "adaptive": True,
        },
    )
    final = np.asarray(result.x, dtype=float)
    final_energy = wrapped(final)  # appended final evaluation
    trace.final_angles = final
    trace.converged = bool(result.success) and math.isfinite(final_energy)
    return trace


def vqe_run(h: PauliHamiltonian, circuit: AnsatzCircuit, device: DeviceConfig,
            cfg: OptimizerConfig, initial=RANDOM) -> OptimizationTrace:
    """Full VQE run: minimize the measured energy of `h` on `circuit`.

    A RANDOM start draws each angle uniformly from [-pi, pi) using cfg.seed.
    Shot-mode devices draw a fresh sub-seed per evaluation (deterministic in
    cfg.seed) so repeated measurements are independent.
    """
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    if isinstance(initial, str) and initial == RANDOM:
        initial = rng.uniform(-np.pi, np.pi, size=circuit.param_count)
    counter = [0]

    def loss(angles):
        state = run_circuit(circuit, angles, device.noise)
        if device.shots is None:
            dev = device
        else:
            counter[0] += 1
            dev = DeviceConfig(noise=device.noise, shots=device.shots,
                               rng_seed=device.rng_seed * 1_000_003 + counter[0])
        exps = measure_expectations(state, h, dev)
        return term_energy(exps, h), exps

    trace = minimize(loss, initial, cfg)
    trace.hamiltonian_ref = h.molecule or circuit.system_id
    trace.noise_offsets = tuple(device.noise.offsets_array(circuit.param_count))
    trace.depolarizing_lambda = device.noise.depolarizing_lambda
    return trace
