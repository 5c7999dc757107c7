"""Mapping tests: ladder algebra, decomposition round-trips, tapering."""

import numpy as np
import pytest

from hamgen.mapping import (
    MappingError,
    annihilation_operators,
    find_z_symmetries,
    parity_permutation,
    pauli_decompose,
    taper_z_sector,
    terms_to_matrix,
)


def random_hermitian(n_qubits, seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    dim = 2**n_qubits
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (m + m.conj().T) / 2


def test_ladder_anticommutation():
    n = 3
    a = annihilation_operators(n)
    eye = np.eye(2**n)
    for p in range(n):
        for q in range(n):
            anti = a[p] @ a[q].conj().T + a[q].conj().T @ a[p]
            expected = eye if p == q else np.zeros_like(eye)
            assert np.allclose(anti, expected, atol=1e-12)
            assert np.allclose(a[p] @ a[q] + a[q] @ a[p], 0.0, atol=1e-12)


def test_number_operator_is_diagonal_occupation():
    n = 3
    a = annihilation_operators(n)
    for p in range(n):
        num = (a[p].conj().T @ a[p]).real
        expected = np.diag([(b >> p) & 1 for b in range(2**n)]).astype(float)
        assert np.allclose(num, expected, atol=1e-12)


def test_pauli_decompose_round_trip():
    for n, seed in [(1, 0), (2, 1), (3, 2)]:
        h = random_hermitian(n, seed)
        coeffs = pauli_decompose(h, n)
        assert np.allclose(terms_to_matrix(coeffs, n), h, atol=1e-12)


def test_pauli_decompose_rejects_non_hermitian():
    m = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    with pytest.raises(MappingError):
        pauli_decompose(m, 1)


def test_little_endian_label_convention():
    # "ZX" must mean Z on qubit 1 and X on qubit 0
    z = np.diag([1.0, -1.0]).astype(complex)
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    coeffs = pauli_decompose(np.kron(z, x), 2)
    assert set(coeffs) == {"ZX"}


def test_parity_permutation_preserves_spectrum():
    w = parity_permutation(3)
    assert np.allclose(w @ w.T, np.eye(8), atol=1e-12)
    h = random_hermitian(3, 5)
    before = np.linalg.eigvalsh(h)
    after = np.linalg.eigvalsh(w @ h @ w.T)
    assert np.allclose(before, after, atol=1e-10)


def test_parity_permutation_cumulative_bits():
    w = parity_permutation(3)
    # occupations 0b110 -> parities (0, 1, 0) -> 0b010
    assert w[0b010, 0b110] == 1.0


def test_find_z_symmetries_h2_like_support():
    labels = ["IIII", "ZIII", "IZII", "IIZI", "IIIZ", "ZZII", "XXYY", "YYXX"]
    syms = find_z_symmetries(labels, 4)
    assert len(syms) == 3
    for z in syms:
        assert z.sum() % 2 == 0  # orthogonal to the all-X support


def test_taper_spectrum_is_a_sub_multiset():
    # Z0Z1-symmetric random Hamiltonian on 2 qubits
    rng = np.random.Generator(np.random.PCG64(9))
    base = random_hermitian(2, 9)
    zz = np.diag([1.0, -1.0, -1.0, 1.0])
    h = (base + zz @ base @ zz) / 2
    reduced, sector, free = taper_z_sector(h, 2, [np.array([1, 1])], 0b00)
    assert reduced.shape == (2, 2)
    assert sector == [1]
    full = np.linalg.eigvalsh(h)
    sub = np.linalg.eigvalsh(reduced)
    for val in sub:
        assert np.min(np.abs(full - val)) < 1e-10


def test_taper_rejects_sector_mixing():
    h = random_hermitian(2, 11)  # generically breaks the symmetry
    with pytest.raises(MappingError):
        taper_z_sector(h, 2, [np.array([1, 1])], 0b00)


def test_taper_qubit_order_permutes_register():
    base = random_hermitian(3, 13)
    zmask = np.diag([(-1.0) ** (((b >> 0) & 1)) for b in range(8)])
    h = (base + zmask @ base @ zmask) / 2
    r1, _, free = taper_z_sector(h, 3, [np.array([1, 0, 0])], 0b000)
    r2, _, _ = taper_z_sector(h, 3, [np.array([1, 0, 0])], 0b000,
                              new_qubit_order=[2, 1])
    assert free == [1, 2]
    swap = np.zeros((4, 4))
    for b in range(4):
        swapped = ((b & 1) << 1) | ((b >> 1) & 1)
        swap[swapped, b] = 1.0
    assert np.allclose(r2, swap @ r1 @ swap.T, atol=1e-12)
    with pytest.raises(MappingError):
        taper_z_sector(h, 3, [np.array([1, 0, 0])], 0b000,
                       new_qubit_order=[0, 1])
