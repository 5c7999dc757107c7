"""Closed-form molecular integrals over contracted s-type Gaussians.

Implements the STO-3G minimal basis for H and He (s shells only) and the
standard analytic one- and two-electron integrals for s-type primitives:
overlap, kinetic, nuclear attraction (via the Boys function F0), and the
(ss|ss) electron repulsion integral.  All positions in Bohr, energies in
Hartree.
"""

import math

import numpy as np
from scipy.special import erf

ANGSTROM_TO_BOHR = 1.0 / 0.529177210903

#: STO-3G 1s shells: (exponents, contraction coefficients) per element
STO3G_S = {
    "H": (
        np.array([3.425250914, 0.6239137298, 0.168855404]),
        np.array([0.1543289673, 0.5353281423, 0.4446345422]),
    ),
    "He": (
        np.array([6.362421394, 1.158922999, 0.3136497915]),
        np.array([0.1543289673, 0.5353281423, 0.4446345422]),
    ),
}

NUCLEAR_CHARGE = {"H": 1.0, "He": 2.0}


class BasisError(ValueError):
    """Raised for unsupported elements or malformed geometries."""


def boys_f0(t):
    """Boys function F0(t) = integral of exp(-t u^2) over u in [0, 1]."""
    t = np.asarray(t, dtype=float)
    small = t < 1e-12
    safe = np.where(small, 1.0, t)
    out = 0.5 * np.sqrt(np.pi / safe) * erf(np.sqrt(safe))
    return np.where(small, 1.0 - t / 3.0, out)


class Shell:
    """One normalized contracted s-type Gaussian centered at a nucleus."""

    def __init__(self, element: str, center):
        if element not in STO3G_S:
            raise BasisError(f"no STO-3G s shell for element {element!r}")
        exps, coeffs = STO3G_S[element]
        self.center = np.asarray(center, dtype=float)
        self.exps = exps
        # fold primitive normalization (2a/pi)^(3/4) into the coefficients
        self.coeffs = coeffs * (2.0 * exps / np.pi) ** 0.75


def _pair(a: Shell, b: Shell):
    """Primitive-pair quantities: total exponent, prefactor, Gaussian center."""
    p = a.exps[:, None] + b.exps[None, :]
    ab2 = float(np.dot(a.center - b.center, a.center - b.center))
    k = np.exp(-a.exps[:, None] * b.exps[None, :] / p * ab2)
    cc = a.coeffs[:, None] * b.coeffs[None, :]
    centers = (
        a.exps[:, None, None] * a.center[None, None, :]
        + b.exps[None, :, None] * b.center[None, None, :]
    ) / p[:, :, None]
    return p, k, cc, centers


def overlap(a: Shell, b: Shell) -> float:
    p, k, cc, _ = _pair(a, b)
    return float(np.sum(cc * (np.pi / p) ** 1.5 * k))


def kinetic(a: Shell, b: Shell) -> float:
    p, k, cc, _ = _pair(a, b)
    mu = a.exps[:, None] * b.exps[None, :] / p
    ab2 = float(np.dot(a.center - b.center, a.center - b.center))
    return float(np.sum(cc * mu * (3.0 - 2.0 * mu * ab2) * (np.pi / p) ** 1.5 * k))


def nuclear_attraction(a: Shell, b: Shell, nucleus, charge: float) -> float:
    p, k, cc, centers = _pair(a, b)
    nucleus = np.asarray(nucleus, dtype=float)
    pc2 = np.sum((centers - nucleus[None, None, :]) ** 2, axis=2)
    return float(np.sum(cc * (-2.0 * np.pi / p) * charge * k * boys_f0(p * pc2)))


def electron_repulsion(a: Shell, b: Shell, c: Shell, d: Shell) -> float:
    """(ab|cd) in chemist notation for four s shells."""
    p, kab, ccab, pab = _pair(a, b)
    q, kcd, cccd, pcd = _pair(c, d)
    p4, q4 = p[:, :, None, None], q[None, None, :, :]
    pq2 = np.sum(
        (pab[:, :, None, None, :] - pcd[None, None, :, :, :]) ** 2, axis=4
    )
    pref = 2.0 * np.pi**2.5 / (p4 * q4 * np.sqrt(p4 + q4))
    vals = pref * kab[:, :, None, None] * kcd[None, None, :, :] * boys_f0(
        p4 * q4 / (p4 + q4) * pq2
    )
    return float(np.sum(ccab[:, :, None, None] * cccd[None, None, :, :] * vals))


def ao_integrals(elements, centers_bohr):
    """All AO matrices for a list of s shells: S, Hcore, ERI, E_nn."""
    shells = [Shell(el, c) for el, c in zip(elements, centers_bohr)]
    n = len(shells)
    s = np.empty((n, n))
    hcore = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            s[i, j] = overlap(shells[i], shells[j])
            t = kinetic(shells[i], shells[j])
            v = sum(
                nuclear_attraction(shells[i], shells[j], c, NUCLEAR_CHARGE[el])
                for el, c in zip(elements, centers_bohr)
            )
            hcore[i, j] = t + v
    eri = np.empty((n, n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    eri[i, j, k, l] = electron_repulsion(
                        shells[i], shells[j], shells[k], shells[l]
                    )
    e_nn = 0.0
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            r = np.linalg.norm(
                np.asarray(centers_bohr[i], dtype=float)
                - np.asarray(centers_bohr[j], dtype=float)
            )
            e_nn += NUCLEAR_CHARGE[elements[i]] * NUCLEAR_CHARGE[elements[j]] / r
    return s, hcore, eri, e_nn
