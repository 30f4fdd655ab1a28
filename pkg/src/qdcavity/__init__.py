"""Multipartite entangled coherent states of N excitons coupled to a cavity mode."""
from .errors import (
    BracketError,
    DegenerateEncodingError,
    DegenerateStateError,
    DomainError,
    HorizonError,
    InvalidConfigurationError,
    QDCavityError,
    UnsupportedSizeError,
)
from .model import (
    AmplitudeSet,
    DecayCoefficients,
    DecayConfig,
    SphericalCoupling,
    SystemConfig,
    cat_normalization,
    couplings_from_spherical,
    decay_coefficients,
    lossless_amplitudes,
    mean_photon,
    spherical_from_couplings,
)
from .witnesses import (
    QubitCountContext,
    WitnessReport,
    bell_expectation,
    bell_quantity,
    dissipative_fidelity,
    exciton_witnesses,
    fidelity,
    tau,
    threshold,
)

__version__ = "0.1.0"
