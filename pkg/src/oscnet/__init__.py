"""Two-site continuous-variable entanglement in thermal networks of coupled
harmonic oscillators."""

from .analytic import AnalyticBasis, circular_modes, linear_modes
from .diag import NormalModeBasis, jacobi_eigh, mode_frequencies, simultaneous_diagonalize
from .entangle import (
    EntanglementReport,
    PairCovariance,
    critical_temperature,
    entanglement_report,
    log_negativity,
    pair_covariance,
    partial_transpose,
    separability_L,
    symplectic_spectrum,
)
from .errors import InputError, NumericalError, OscnetError, PhysicalError
from .network import (
    GROUND_STATE,
    OscillatorNetwork,
    ThermalEnvironment,
    make_circular_chain,
    make_linear_chain,
    parse_network,
)
from .thermal import ModeMoments, mode_moments, mode_position_density, single_oscillator_moments

__version__ = "0.1.0"
