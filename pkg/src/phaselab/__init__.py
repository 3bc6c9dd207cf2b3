"""phaselab: a numerical laboratory for geometric phases.

Exactly solvable spin-1/2 dynamics in a rotating magnetic field
(:mod:`phaselab.model`), an independent unitary integrator used as its
oracle (:mod:`phaselab.propagate`), phase decomposition and hidden-gauge
bookkeeping (:mod:`phaselab.phases`), and a flux-threaded tight-binding
ring as the Aharonov-Bohm contrast case (:mod:`phaselab.ring`).
"""

from .model import (
    Branch,
    ModelParams,
    ExactBasis,
    AdiabaticAmplitude,
    InterferenceIntensity,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    adiabatic_amplitude,
    basis_spinor,
    berry_phase_factor,
    connection_pullback,
    effective_energy,
    exact_amplitude,
    field_at,
    hamiltonian_at,
    interference_intensity,
    solid_angle,
    tilt_angle,
)
from .phases import (
    GaugeFunction,
    GaugedBasis,
    PhaseDecomposition,
    apply_gauge,
    decompose,
    extract_geometric_phase,
    pancharatnam_overlap,
)
from .propagate import Trajectory, evolve, schrodinger_defect, step_unitary
from .ring import (
    RingConfig,
    TwoArmResult,
    gaussian_packet,
    reduced_flux,
    ring_hamiltonian,
    ring_spectrum,
    two_arm_phase,
)

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "ModelParams",
    "ExactBasis",
    "AdiabaticAmplitude",
    "InterferenceIntensity",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "adiabatic_amplitude",
    "basis_spinor",
    "berry_phase_factor",
    "connection_pullback",
    "effective_energy",
    "exact_amplitude",
    "field_at",
    "hamiltonian_at",
    "interference_intensity",
    "solid_angle",
    "tilt_angle",
    "GaugeFunction",
    "GaugedBasis",
    "PhaseDecomposition",
    "apply_gauge",
    "decompose",
    "extract_geometric_phase",
    "pancharatnam_overlap",
    "Trajectory",
    "evolve",
    "schrodinger_defect",
    "step_unitary",
    "RingConfig",
    "TwoArmResult",
    "gaussian_packet",
    "reduced_flux",
    "ring_hamiltonian",
    "ring_spectrum",
    "two_arm_phase",
    "__version__",
]
