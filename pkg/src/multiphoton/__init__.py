"""Measurement-induced focussing of light from independent single-photon emitters.

Correlation functions G^(m) of N initially excited two-level atoms, computed
by quantum-path enumeration, by direct operator application, and in closed
form, plus heralded conditional states and angle sweeps.
"""

__version__ = "0.1.0"

from .errors import DegenerateStateError, EstimationError, InputDomainError
from .geometry import DetectionConfig, EmitterChain, PhaseMatrix, phase, phase_matrix
from .quantum_state import (
    PureState,
    apply_field,
    conditional_state,
    fully_excited,
    heralded_w_state,
    norm_sq,
    normalize,
    overlap,
    w_state,
)
from .correlations import (
    CorrelationResult,
    fwhm_predicted,
    g1_conditional,
    g_m_closed_form,
    g_m_operator,
    g_m_paths,
    permanent,
    permanent_naive,
    visibility_closed_form,
)
from .analysis import SweepResult, estimate_fwhm, estimate_visibility, sweep, verify_routes
