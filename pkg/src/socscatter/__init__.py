"""Multichannel two-body scattering in a 1D Raman-dressed spin-orbit-coupled Fermi gas."""

from .params import (
    OMEGA_CRITICAL,
    THRESHOLD_EPS,
    ChannelCensus,
    DegenerateEnergy,
    Regime,
    RegimeInfo,
    SystemParams,
    channel_census,
    classify_regime,
    degenerate_energies,
)
from .dispersion import (
    Branch,
    ChannelSet,
    ChannelState,
    Kind,
    Placement,
    branch_energy,
    build_channel_set,
    flux,
    solve_wavevectors,
    spinor,
)
from .scattering import (
    ClosedIncidentChannel,
    MatchingSystem,
    ScatteringResult,
    SingularSystem,
    SweepPoint,
    build_matching_system,
    solve_scattering,
    sweep,
)
from .spectra import (
    BoundStateEntry,
    BoundStateSpectrum,
    ResonanceCurve,
    ResonanceEntry,
    ResonancePeak,
    WindowMismatch,
    bound_state_spectrum,
    find_bound_states,
    find_resonances,
    resonance_curve,
)

__version__ = "0.1.0"

__all__ = [
    "OMEGA_CRITICAL",
    "THRESHOLD_EPS",
    "Branch",
    "BoundStateEntry",
    "BoundStateSpectrum",
    "ChannelCensus",
    "ChannelSet",
    "ChannelState",
    "ClosedIncidentChannel",
    "DegenerateEnergy",
    "Kind",
    "MatchingSystem",
    "Placement",
    "Regime",
    "RegimeInfo",
    "ResonanceCurve",
    "ResonanceEntry",
    "ResonancePeak",
    "ScatteringResult",
    "SingularSystem",
    "SweepPoint",
    "SystemParams",
    "WindowMismatch",
    "branch_energy",
    "bound_state_spectrum",
    "build_channel_set",
    "build_matching_system",
    "channel_census",
    "classify_regime",
    "degenerate_energies",
    "find_bound_states",
    "find_resonances",
    "flux",
    "resonance_curve",
    "solve_scattering",
    "solve_wavevectors",
    "spinor",
    "sweep",
    "__version__",
]
