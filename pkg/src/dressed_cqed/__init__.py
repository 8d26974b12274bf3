"""Dressed states and level-crossing criticality of two Ising-coupled qubits in a resonator."""

__version__ = "0.1.0"

from .model import BasisKet, BlockPartition, DeviceParams, ModelParams, block_partition, build_basis, device_to_model, hamiltonian_matrix
from .analytic import (
    CrossingPoint,
    DressedState,
    SpectrumTable,
    classify_region,
    crossing_point,
    hq_phase,
    perturbative_levels,
    singlet_level,
    spectrum_sweep,
    w0_level,
    w1_eigensystem,
    wn_eigensystem,
    xi0,
    xi1,
)
from .numeric import eigensolve_symmetric, evolve, oracle_spectrum, singlet_population
from .transitions import BathModel, damping_ratio, rabi_splitting, selection_rules, transition_amplitude

__all__ = [
    "BasisKet", "BlockPartition", "DeviceParams", "ModelParams", "block_partition", "build_basis",
    "device_to_model", "hamiltonian_matrix", "CrossingPoint", "DressedState", "SpectrumTable",
    "classify_region", "crossing_point", "hq_phase", "perturbative_levels", "singlet_level",
    "spectrum_sweep", "w0_level", "w1_eigensystem", "wn_eigensystem", "xi0", "xi1",
    "eigensolve_symmetric", "evolve", "oracle_spectrum", "singlet_population",
    "BathModel", "damping_ratio", "rabi_splitting", "selection_rules", "transition_amplitude",
]
