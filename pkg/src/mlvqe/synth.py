"""Synthetic one-qubit Hamiltonian family for self-contained experiments.

Coefficients are smooth bounded functions of a distance-like parameter
d in [0.25, 2.75].  The functional forms below are arbitrary test fixtures
carrying no physical claim; every correctness check against this family
goes through the analytic one-qubit oracle, so nothing depends on the
particular shapes chosen.  The identity coefficient gives the energy curve
a single-minimum binding-well profile for plot realism.
"""

from __future__ import annotations

import math

import numpy as np

from .pauli import PauliHamiltonian, TermSchema

D_MIN = 0.25
D_MAX = 2.75

SCHEMA_1Q = TermSchema(("X", "Y", "Z"))


def coefficients(d: float) -> tuple:
    """(h0, h1, h2, h3) at distance-like parameter d."""
    h0 = 0.35 / d - 0.55 + 0.12 * d
    h1 = 0.42 + 0.10 * math.sin(1.1 * d)
    h2 = 0.16 + 0.05 * math.cos(0.9 * d)
    h3 = -0.75 + 0.45 * math.tanh(1.4 * (d - 1.4))
    return h0, h1, h2, h3


def hamiltonian(d: float) -> PauliHamiltonian:
    h0, h1, h2, h3 = coefficients(d)
    return PauliHamiltonian.from_terms(
        1,
        [("I", h0), ("X", h1), ("Y", h2), ("Z", h3)],
        molecule=f"synth1q(d={d:.6f})",
        distance_angstrom=float(d),
    )


def distance_grid(count: int, d_min: float = D_MIN, d_max: float = D_MAX) -> np.ndarray:
    """`count` equally spaced distances (a single point sits at the midpoint)."""
    if count == 1:
        return np.array([0.5 * (d_min + d_max)])
    return np.linspace(d_min, d_max, count)
