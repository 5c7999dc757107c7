"""Fermion-to-qubit mappings built numerically on small dense matrices.

Spin orbitals use blocked ordering (all alpha orbitals first, then all
beta), and qubit p stores the occupation of spin orbital p.  Qubit order is
little-endian to match the consumer toolkit: qubit 0 is the least
significant statevector bit and the rightmost Pauli-label character.

The Jordan-Wigner Hamiltonian is assembled from explicit ladder matrices;
the parity mapping is the corresponding basis permutation; qubit tapering
projects onto the joint eigensector of Z-type symmetries found over GF(2).
Coefficient files come out of a trace-based Pauli decomposition, so every
mapping is validated against the operator it came from by construction.
"""

import itertools

import numpy as np

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class MappingError(ValueError):
    """Raised when a mapping step produces an inconsistent operator."""


def _kron_chain(single_qubit_ops):
    """Kronecker product with list index = qubit index (little-endian)."""
    mat = np.array([[1.0 + 0j]])
    for op in single_qubit_ops:
        mat = np.kron(op, mat)
    return mat


def annihilation_operators(n: int):
    """Jordan-Wigner ladder matrices a_0 .. a_{n-1} on n qubits."""
    lower = np.array([[0, 1], [0, 0]], dtype=complex)
    ops = []
    for p in range(n):
        ops.append(
            _kron_chain(
                [PAULI["Z"]] * p + [lower] + [PAULI["I"]] * (n - p - 1)
            )
        )
    return ops


def second_quantized_matrix(h_so, eri_so, constant=0.0):
    """Dense Hamiltonian from spin-orbital integrals (chemist-notation ERI).

    H = const + sum h_pq a+_p a_q + 1/2 sum (pq|rs) a+_p a+_r a_s a_q.
    """
    n = h_so.shape[0]
    a = annihilation_operators(n)
    dim = 2**n
    h = constant * np.eye(dim, dtype=complex)
    for p in range(n):
        for q in range(n):
            if abs(h_so[p, q]) > 1e-14:
                h += h_so[p, q] * (a[p].conj().T @ a[q])
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    coeff = eri_so[p, q, r, s]
                    if abs(coeff) > 1e-14:
                        h += 0.5 * coeff * (
                            a[p].conj().T @ a[r].conj().T @ a[s] @ a[q]
                        )
    if np.abs(h - h.conj().T).max() > 1e-10:
        raise MappingError("second-quantized Hamiltonian is not Hermitian")
    return h


def spin_orbital_integrals(hcore, eri, c_alpha, c_beta):
    """Blocked spin-orbital integrals from AO integrals and MO coefficients."""
    n = hcore.shape[0]
    h_mo = {
        "a": c_alpha.T @ hcore @ c_alpha,
        "b": c_beta.T @ hcore @ c_beta,
    }
    c = {"a": c_alpha, "b": c_beta}

    def transform(s1, s2):
        return np.einsum(
            "ijkl,ip,jq,kr,ls->pqrs", eri, c[s1], c[s1], c[s2], c[s2],
            optimize=True,
        )

    eri_mo = {(s1, s2): transform(s1, s2) for s1 in "ab" for s2 in "ab"}

    m = 2 * n
    h_so = np.zeros((m, m))
    eri_so = np.zeros((m, m, m, m))
    spin = lambda p: "a" if p < n else "b"
    orb = lambda p: p if p < n else p - n
    for p in range(m):
        for q in range(m):
            if spin(p) == spin(q):
                h_so[p, q] = h_mo[spin(p)][orb(p), orb(q)]
    for p in range(m):
        for q in range(m):
            if spin(p) != spin(q):
                continue
            for r in range(m):
                for s in range(m):
                    if spin(r) != spin(s):
                        continue
                    eri_so[p, q, r, s] = eri_mo[(spin(p), spin(r))][
                        orb(p), orb(q), orb(r), orb(s)
                    ]
    return h_so, eri_so


def pauli_decompose(matrix, num_qubits, threshold=0.0):
    """Real Pauli coefficients of a Hermitian matrix, keyed by label."""
    dim = 2**num_qubits
    if matrix.shape != (dim, dim):
        raise MappingError(f"matrix shape {matrix.shape} != 2^{num_qubits}")
    coeffs = {}
    for chars in itertools.product("IXYZ", repeat=num_qubits):
        label = "".join(chars)
        p = _kron_chain([PAULI[ch] for ch in reversed(label)])
        c = np.trace(p @ matrix) / dim
        if abs(c.imag) > 1e-10:
            raise MappingError(f"non-real coefficient {c} for label {label}")
        if abs(c.real) > threshold:
            coeffs[label] = float(c.real)
    return coeffs


def terms_to_matrix(coeffs, num_qubits):
    dim = 2**num_qubits
    h = np.zeros((dim, dim), dtype=complex)
    for label, c in coeffs.items():
        h += c * _kron_chain([PAULI[ch] for ch in reversed(label)])
    return h


def parity_permutation(n: int) -> np.ndarray:
    """Basis permutation sending occupations to cumulative parities.

    Parity qubit j stores the XOR of occupations 0..j; the returned matrix W
    acts as W |occupations> = |parities>.
    """
    dim = 2**n
    w = np.zeros((dim, dim))
    for occ in range(dim):
        parity, out = 0, 0
        for j in range(n):
            parity ^= (occ >> j) & 1
            out |= parity << j
        w[out, occ] = 1.0
    return w


def _gf2_kernel(rows, n):
    """Basis of {z in GF(2)^n : z . row = 0 for all rows}."""
    mat = [row.copy() for row in rows]
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                mat[i] = (mat[i] + mat[r]) % 2
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        vec = np.zeros(n, dtype=int)
        vec[f] = 1
        for row_idx, p in enumerate(pivots):
            if mat[row_idx][f]:
                vec[p] = 1
        basis.append(vec)
    return basis


def find_z_symmetries(labels, num_qubits):
    """Z-type Pauli strings commuting with every term, as 0/1 support vectors.

    A Z string commutes with a Pauli term iff its support is orthogonal
    (mod 2) to the term's X support, so the symmetries are the GF(2) kernel
    of the X-support matrix.  Label characters are reversed so vector index
    equals qubit index.
    """
    rows = []
    for label in labels:
        row = np.array(
            [1 if ch in "XY" else 0 for ch in reversed(label)], dtype=int
        )
        if row.any():
            rows.append(row)
    return _gf2_kernel(rows, num_qubits)


def taper_z_sector(matrix, num_qubits, z_supports, reference_state: int,
                   new_qubit_order=None):
    """Project onto the Z-symmetry sector containing a computational state.

    z_supports are 0/1 vectors (index = qubit) of Z-string symmetries; the
    sector eigenvalues are those of ``reference_state``.  Gaussian
    elimination picks one pivot qubit per symmetry; the remaining free
    qubits become the reduced register, ordered by ``new_qubit_order``
    (a list of original free-qubit indices; low-to-high by default).
    Returns (reduced_matrix, sector_eigenvalues, free_qubits).
    """
    supports = [np.asarray(z, dtype=int) % 2 for z in z_supports]
    # row reduce to make each symmetry own a distinct pivot qubit
    mat = [s.copy() for s in supports]
    pivots = []
    r = 0
    for col in range(num_qubits):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                mat[i] = (mat[i] + mat[r]) % 2
        pivots.append(col)
        r += 1
    if r != len(mat):
        raise MappingError("dependent symmetry generators")
    free = [q for q in range(num_qubits) if q not in pivots]
    if new_qubit_order is None:
        new_qubit_order = list(free)
    if sorted(new_qubit_order) != sorted(free):
        raise MappingError(
            f"qubit order {new_qubit_order} is not a permutation of {free}"
        )

    def parity(bits: int, support) -> int:
        mask = sum(int(s) << q for q, s in enumerate(support))
        return bin(bits & mask).count("1") % 2

    target = [parity(reference_state, row) for row in mat]
    sector = [1 - 2 * t for t in target]

    members = []
    for b in range(2**num_qubits):
        if all(parity(b, row) == t for row, t in zip(mat, target)):
            members.append(b)
    if len(members) != 2 ** len(free):
        raise MappingError("sector dimension mismatch")

    def reduced_index(b: int) -> int:
        return sum(((b >> q) & 1) << k for k, q in enumerate(new_qubit_order))

    order = sorted(members, key=reduced_index)
    proj = np.zeros((len(order), matrix.shape[0]))
    for row_idx, b in enumerate(order):
        proj[row_idx, b] = 1.0
    reduced = proj @ matrix @ proj.T
    leakage = np.abs(matrix[np.ix_(order, [b for b in range(matrix.shape[0])
                                           if b not in set(order)])]).max() \
        if len(order) < matrix.shape[0] else 0.0
    if leakage > 1e-9:
        raise MappingError(
            f"Hamiltonian couples symmetry sectors (leakage {leakage:.3e})"
        )
    return reduced, sector, free
