"""Self-consistent field solver for minimal-basis molecules.

A single unrestricted loop covers both cases used here: closed shells
(equal alpha and beta occupation, where the iterate stays restricted) and
the three-electron doublet.  Deterministic core-Hamiltonian guess plus
damping; non-convergence raises SCFError so callers can report per-distance
failures.
"""

import numpy as np


class SCFError(RuntimeError):
    """Raised when the SCF loop fails to converge."""


def _orthogonalizer(s):
    vals, vecs = np.linalg.eigh(s)
    if vals.min() < 1e-10:
        raise SCFError(f"near-singular overlap matrix (min eigenvalue {vals.min():.3e})")
    return vecs @ np.diag(vals**-0.5) @ vecs.T


def _density(c, n_occ):
    occ = c[:, :n_occ]
    return occ @ occ.T


def hartree_fock(s, hcore, eri, n_alpha, n_beta, e_nn=0.0,
                 max_iter=500, tol=1e-11, damping=0.3):
    """Unrestricted SCF. Returns (energy, C_alpha, C_beta).

    Orbitals are columns of the coefficient matrices, ordered by orbital
    energy; the first n_alpha / n_beta columns are occupied.
    """
    x = _orthogonalizer(s)

    def solve_fock(f):
        e, c_prime = np.linalg.eigh(x.T @ f @ x)
        return x @ c_prime

    c_a = c_b = solve_fock(hcore)
    d_a, d_b = _density(c_a, n_alpha), _density(c_b, n_beta)
    energy = None
    for _ in range(max_iter):
        j = np.einsum("ijkl,kl->ij", eri, d_a + d_b)
        k_a = np.einsum("ikjl,kl->ij", eri, d_a)
        k_b = np.einsum("ikjl,kl->ij", eri, d_b)
        f_a, f_b = hcore + j - k_a, hcore + j - k_b
        new_energy = 0.5 * float(
            np.sum((d_a + d_b) * hcore) + np.sum(d_a * f_a) + np.sum(d_b * f_b)
        ) + e_nn
        c_a, c_b = solve_fock(f_a), solve_fock(f_b)
        new_a = (1 - damping) * _density(c_a, n_alpha) + damping * d_a
        new_b = (1 - damping) * _density(c_b, n_beta) + damping * d_b
        delta = max(np.abs(new_a - d_a).max(), np.abs(new_b - d_b).max())
        d_a, d_b = new_a, new_b
        energy = new_energy
        if delta < tol:
            return energy, c_a, c_b
    raise SCFError(f"SCF did not converge in {max_iter} iterations "
                   f"(last energy {energy})")
