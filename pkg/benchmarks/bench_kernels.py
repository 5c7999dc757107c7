"""Throughput comparison of the numba and pure-numpy gate kernels.

Runs the same randomized single-qubit and CX workloads through both
backends by re-importing the kernel module under each MLVQE_KERNELS
setting, and reports wall-clock time plus agreement of the final states.

Usage: python benchmarks/bench_kernels.py [--qubits N] [--gates M]
"""

import argparse
import importlib
import os
import sys
import time

import numpy as np


def load_backend(name: str):
    os.environ["MLVQE_KERNELS"] = name
    import mlvqe.kernels as kernels
    return importlib.reload(kernels)


def make_workload(num_qubits: int, num_gates: int, seed: int = 0):
    rng = np.random.Generator(np.random.PCG64(seed))
    ops = []
    for _ in range(num_gates):
        if num_qubits > 1 and rng.random() < 0.3:
            control, target = rng.choice(num_qubits, size=2, replace=False)
            ops.append(("cx", int(control), int(target)))
        else:
            theta = rng.uniform(-np.pi, np.pi)
            c, s = np.cos(theta / 2), np.sin(theta / 2)
            ops.append(("1q", int(rng.integers(num_qubits)),
                        (c + 0j, -s + 0j, s + 0j, c + 0j)))
    return ops


def run(kernels, ops, num_qubits: int) -> np.ndarray:
    state = np.zeros(2**num_qubits, dtype=complex)
    state[0] = 1.0
    for op in ops:
        if op[0] == "cx":
            kernels.apply_cx(state, op[1], op[2])
        else:
            u00, u01, u10, u11 = op[2]
            kernels.apply_1q(state, op[1], u00, u01, u10, u11)
    return state


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--qubits", type=int, default=12)
    parser.add_argument("--gates", type=int, default=2000)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    ops = make_workload(args.qubits, args.gates)
    results = {}
    for backend in ("numpy", "numba"):
        kernels = load_backend(backend)
        if kernels.BACKEND != backend:
            print(f"{backend}: unavailable (fell back to {kernels.BACKEND}), skipping")
            continue
        run(kernels, ops[:10], args.qubits)  # warm-up / JIT compile
        best = float("inf")
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            state = run(kernels, ops, args.qubits)
            best = min(best, time.perf_counter() - t0)
        results[backend] = (best, state)
        rate = args.gates / best
        print(f"{backend:6s}: {best:8.4f} s  ({rate:,.0f} gates/s)")

    if len(results) == 2:
        diff = np.max(np.abs(results["numpy"][1] - results["numba"][1]))
        speedup = results["numpy"][0] / results["numba"][0]
        print(f"max |state difference| = {diff:.3e}")
        print(f"numba speedup over numpy: {speedup:.2f}x")
        if diff > 1e-12:
            print("backends disagree", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
