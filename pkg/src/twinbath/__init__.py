"""Two damped oscillators in a Gaussian description.

Covariance-matrix dynamics for a pair of harmonic oscillators coupled to a
shared or separate Ohmic thermal environment, with entanglement, discord,
mutual information and twin-correlation diagnostics, plus asymptotic
phase-diagram scans.
"""

from ._backend import kernel_backend_name
from .dynamics import (
    BathConfig,
    Generator,
    PhysicalityError,
    Topology,
    Trajectory,
    asymptotic_state,
    build_generator,
    evolve,
    steady_state,
)
from .equilibrium import dressed_variances, thermal_variance
from .phasescan import (
    BoundaryRow,
    PhaseDiagram,
    PhasePoint,
    asymptotic_entanglement_predicate,
    asymptotic_twin_predicate,
    scan_boundaries,
    scan_phase_diagram,
    twin_inequality_margin,
)
from .presets import PRESETS, ConfigError, RunConfig, parse_config
from .quantifiers import (
    IndicatorRecord,
    gaussian_discord,
    indicators,
    log_negativity,
    mutual_information,
    twin_variance,
)
from .states import (
    SYMPLECTIC_FORM,
    CovarianceState,
    NormalModeBasis,
    OscillatorPair,
    normal_mode_basis,
    rotate_to_modes,
    symplectic_eigenvalues,
    thermal_state,
    tms_state,
    vacuum_state,
)

__version__ = "0.1.0"

__all__ = [
    "BathConfig",
    "BoundaryRow",
    "ConfigError",
    "CovarianceState",
    "Generator",
    "IndicatorRecord",
    "NormalModeBasis",
    "OscillatorPair",
    "PRESETS",
    "PhaseDiagram",
    "PhasePoint",
    "PhysicalityError",
    "RunConfig",
    "SYMPLECTIC_FORM",
    "Topology",
    "Trajectory",
    "asymptotic_entanglement_predicate",
    "asymptotic_state",
    "asymptotic_twin_predicate",
    "build_generator",
    "dressed_variances",
    "evolve",
    "gaussian_discord",
    "indicators",
    "kernel_backend_name",
    "log_negativity",
    "mutual_information",
    "normal_mode_basis",
    "parse_config",
    "rotate_to_modes",
    "scan_boundaries",
    "scan_phase_diagram",
    "steady_state",
    "symplectic_eigenvalues",
    "twin_inequality_margin",
    "thermal_state",
    "thermal_variance",
    "tms_state",
    "twin_variance",
    "vacuum_state",
    "__version__",
]
