"""Thermal-state broadcast protocol: simulation and analytic key rates.

The package splits into five working layers.  ``gaussian`` holds the
covariance-matrix toolkit (beam splitters, partial traces, symplectic
spectra, von Neumann entropy).  ``protocol`` builds the six-mode state of
the source-splitter-tap circuit and its closed form.  ``montecarlo``
draws photon-count and heterodyne records trial by trial.  ``infotheory``
turns bit strings into Shannon estimates with bootstrap errors and runs
an exact small-occupation enumeration.  ``uncertainty`` carries the
measurement-noise route to the same mutual informations.
"""

from .gaussian import (
    BeamSplitterSpec,
    CovarianceMatrix,
    ModePartition,
    SymplecticSpectrum,
    UnphysicalStateError,
    append_vacuum,
    apply_beam_splitter,
    bosonic_entropy,
    mutual_information,
    reduce,
    single_mode_symplectic_value,
    symplectic_spectrum,
    thermal_covariance,
    two_mode_symplectic_values,
    vacuum_covariance,
    von_neumann_entropy,
)
from .infotheory import (
    InfoSummary,
    JointHistogram,
    OffsetCorrelation,
    binary_entropy,
    bootstrap_errors,
    conditional_mutual_information,
    exact_enumeration,
    key_rate_bounds,
    mutual_information_bits,
    offset_correlation,
    population_count_correlation,
    shannon_summary,
)
from .montecarlo import (
    BitString,
    PartyMeasurements,
    ThermalSourceSpec,
    TrialEnsemble,
    derive_bits,
    run_protocol,
    sample_thermal,
    split_fock,
)
from .protocol import (
    ALICE,
    BOB,
    EVE,
    ProtocolConfig,
    ProtocolGaussianState,
    build_final_state,
    closed_form_state,
    closed_form_submatrices,
    global_entropy,
    protocol_mutual_informations,
)
from .uncertainty import (
    NoiseBreakdown,
    NoiseModel,
    UncertaintyResult,
    delta_ab,
    delta_be,
    estimate,
    gaussian_mi,
    measured_variance,
    mi_curves,
    party_coefficients,
    total_noise,
)

__version__ = "0.1.0"

__all__ = [
    "ALICE",
    "BOB",
    "EVE",
    "BeamSplitterSpec",
    "BitString",
    "CovarianceMatrix",
    "InfoSummary",
    "JointHistogram",
    "ModePartition",
    "NoiseBreakdown",
    "NoiseModel",
    "OffsetCorrelation",
    "PartyMeasurements",
    "ProtocolConfig",
    "ProtocolGaussianState",
    "SymplecticSpectrum",
    "ThermalSourceSpec",
    "TrialEnsemble",
    "UncertaintyResult",
    "UnphysicalStateError",
    "append_vacuum",
    "apply_beam_splitter",
    "binary_entropy",
    "bootstrap_errors",
    "bosonic_entropy",
    "build_final_state",
    "closed_form_state",
    "closed_form_submatrices",
    "conditional_mutual_information",
    "delta_ab",
    "delta_be",
    "derive_bits",
    "estimate",
    "exact_enumeration",
    "gaussian_mi",
    "global_entropy",
    "key_rate_bounds",
    "measured_variance",
    "mi_curves",
    "mutual_information",
    "mutual_information_bits",
    "offset_correlation",
    "party_coefficients",
    "population_count_correlation",
    "protocol_mutual_informations",
    "reduce",
    "run_protocol",
    "sample_thermal",
    "shannon_summary",
    "single_mode_symplectic_value",
    "split_fock",
    "symplectic_spectrum",
    "thermal_covariance",
    "total_noise",
    "two_mode_symplectic_values",
    "vacuum_covariance",
    "von_neumann_entropy",
]
