"""Machine-learned optimizer toolkit for variational quantum eigensolvers.

The package covers the full loop: a small statevector simulator with
coherent and depolarizing noise, hardware-efficient ansatz circuits, a
trace-recording Nelder-Mead baseline, dataset harvesting and augmentation,
a from-scratch MLP surrogate that predicts angle updates, reference-state
depolarization mitigation, and reproducible experiment pipelines behind a
command-line interface.
"""

from .ansatz import AnsatzCircuit, build, reference_clifford
from .dataset import Dataset, TrainingSample, augment_with_offsets, make_offset_grid
from .mitigation import DepolarizationEstimate, estimate_depolarization, mitigate
from .mlp import (
    MlpModel,
    PredictorConfig,
    TrainConfig,
    forward,
    init_he,
    load_model,
    predictor_loop,
    save_model,
    train,
)
from .optimize import OptimizationTrace, OptimizerConfig, vqe_run
from .pauli import (
    PauliHamiltonian,
    TermSchema,
    exact_ground_energy,
    load_hamiltonian,
    parse_hamiltonian,
)
from .sim import EXACT, DeviceConfig, Gate, NoiseModel, energy, measure_expectations, run_circuit

__version__ = "0.1.0"

__all__ = [
    "AnsatzCircuit",
    "Dataset",
    "DepolarizationEstimate",
    "DeviceConfig",
    "EXACT",
    "Gate",
    "MlpModel",
    "NoiseModel",
    "OptimizationTrace",
    "OptimizerConfig",
    "PauliHamiltonian",
    "PredictorConfig",
    "TermSchema",
    "TrainConfig",
    "TrainingSample",
    "augment_with_offsets",
    "build",
    "energy",
    "estimate_depolarization",
    "exact_ground_energy",
    "forward",
    "init_he",
    "load_hamiltonian",
    "load_model",
    "make_offset_grid",
    "measure_expectations",
    "mitigate",
    "parse_hamiltonian",
    "predictor_loop",
    "reference_clifford",
    "run_circuit",
    "save_model",
    "train",
    "vqe_run",
    "__version__",
]
