"""Quantum Szilard engine with level shifts under adiabatic barrier insertion.

Everything is a function of the reduced parameter
``xi = pi^2 hbar^2 / (2 m L^2 k_B T)``; ``xi -> 0`` is the classical limit.
"""
from .config import Controls, ReducedConfig, xi_from_physical, xi_sequence_from_physical
from .cycle import (
    CycleReport,
    StepRecord,
    adiabatic_strategy,
    insertion_work,
    isothermal_strategy,
    quasistatic_path,
    run_cycle,
    run_insertion_and_measure,
)
from .errors import DomainError, SeriesRangeError, SzilardError
from .kernels import BACKEND
from .limits import (
    BoundReport,
    asymptotic_Z,
    bound_report,
    classical_limit_check,
    delta_bounds,
    w1_over_u0_bound,
    w1_upper_bound,
)
from .spectrum import Spectrum, barrier_roots, perturbed_spectrum, redistribution_map, reduced_level
from .thermo import (
    InfoSplit,
    ThermalState,
    entropy,
    equilibrium_state,
    info_split,
    internal_energy,
    partition_function,
    partition_sum,
    post_insertion_state,
)

__version__ = "0.1.0"
