"""Offline STO-3G Hamiltonian generator for the VQE optimizer toolkit."""

from .generate import SYSTEMS, MoleculeSpec, SystemResult, build_system, generate
from .integrals import ANGSTROM_TO_BOHR, ao_integrals, boys_f0
from .mapping import (
    MappingError,
    find_z_symmetries,
    parity_permutation,
    pauli_decompose,
    second_quantized_matrix,
    spin_orbital_integrals,
    taper_z_sector,
    terms_to_matrix,
)
from .scf import SCFError, hartree_fock
from .validate import validate_directory

__version__ = "0.1.0"

__all__ = [
    "ANGSTROM_TO_BOHR",
    "MappingError",
    "MoleculeSpec",
    "SCFError",
    "SYSTEMS",
    "SystemResult",
    "ao_integrals",
    "boys_f0",
    "build_system",
    "find_z_symmetries",
    "generate",
    "hartree_fock",
    "parity_permutation",
    "pauli_decompose",
    "second_quantized_matrix",
    "spin_orbital_integrals",
    "taper_z_sector",
    "terms_to_matrix",
    "validate_directory",
]
