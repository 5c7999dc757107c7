"""Hot statevector kernels: single-qubit 2x2 updates and CX.

Two implementations are provided: a numba @njit version and a pure-numpy
fallback.  Selection happens once at import time:

* default: numba if importable, else numpy
* ``MLVQE_KERNELS=numpy`` forces the numpy path
* ``MLVQE_KERNELS=numba`` requires numba (ImportError if missing)

Both paths produce bit-identical results; ``benchmarks/bench_kernels.py``
compares their throughput.
"""

from __future__ import annotations

import os

import numpy as np


def _apply_1q_numpy(state: np.ndarray, target: int, u00, u01, u10, u11) -> None:
    """In-place 2x2 gate on `target` of a little-endian statevector."""
    n = state.shape[0]
    step = 1 << target
    shaped = state.reshape(n // (2 * step), 2, step)
    a0 = shaped[:, 0, :].copy()
    a1 = shaped[:, 1, :]
    shaped[:, 0, :] = u00 * a0 + u01 * a1
    shaped[:, 1, :] = u10 * a0 + u11 * a1


def _apply_cx_numpy(state: np.ndarray, control: int, target: int) -> None:
    """In-place CX: flip `target` amplitude pairs where `control` bit is 1."""
    n = state.shape[0]
    idx = np.arange(n)
    mask = ((idx >> control) & 1).astype(bool) & (((idx >> target) & 1) == 0)
    src = idx[mask]
    dst = src | (1 << target)
    state[src], state[dst] = state[dst].copy(), state[src].copy()


def _build_numba():
    from numba import njit

    @njit(cache=True)
    def apply_1q(state, target, u00, u01, u10, u11):  # pragma: no cover - jit
        step = 1 << target
        n = state.shape[0]
        for base in range(0, n, 2 * step):
            for off in range(step):
                i0 = base + off
                i1 = i0 + step
                a0 = state[i0]
                a1 = state[i1]
                state[i0] = u00 * a0 + u01 * a1
                state[i1] = u10 * a0 + u11 * a1

    @njit(cache=True)
    def apply_cx(state, control, target):  # pragma: no cover - jit
        n = state.shape[0]
        cbit = 1 << control
        tbit = 1 << target
        for i in range(n):
            if (i & cbit) and not (i & tbit):
                j = i | tbit
                tmp = state[i]
                state[i] = state[j]
                state[j] = tmp

    return apply_1q, apply_cx


_mode = os.environ.get("MLVQE_KERNELS", "auto").lower()
if _mode not in ("auto", "numba", "numpy"):
    raise ValueError(f"MLVQE_KERNELS must be auto|numba|numpy, got {_mode!r}")

if _mode == "numpy":
    BACKEND = "numpy"
    apply_1q, apply_cx = _apply_1q_numpy, _apply_cx_numpy
else:
    try:
        apply_1q, apply_cx = _build_numba()
        BACKEND = "numba"
    except ImportError:
        if _mode == "numba":
            raise
        BACKEND = "numpy"
        apply_1q, apply_cx = _apply_1q_numpy, _apply_cx_numpy
