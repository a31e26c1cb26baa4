"""System parameters, regime classification, and energy landmarks.

Everything downstream works in dimensionless units hbar = m = lambda = 1
(m the single-atom mass, lambda the spin-orbit coupling strength):

* energies in hbar^2 lambda^2 / m, which equals hbar^2 lambda^2 / (2 mu)
  for the reduced mass mu = m/2 of the colliding pair,
* wave vectors in lambda, lengths in 1/lambda,
* the Raman coupling omega in the same energy unit,
* the contact coupling g in hbar^2 lambda / m (attractive g < 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

# Raman strength separating the single-minimum from the double-minimum
# lowest band (dimensionless form of 2*hbar*lambda^2/m).
OMEGA_CRITICAL = 2.0

# Rejection radius around degenerate energies.  Exactly at a band edge or a
# root coalescence the six-state basis is defective, so those energies are
# refused and observables there are taken as one-sided limits.
THRESHOLD_EPS = 1e-9


class DegenerateEnergy(ValueError):
    """Energy lies within tolerance of a band edge or a root coalescence."""


class Regime(Enum):
    SINGLE_MINIMUM = "single-minimum"
    DOUBLE_MINIMUM = "double-minimum"


@dataclass(frozen=True)
class SystemParams:
    """Physical inputs, validated once and shared immutably.

    delta (two-photon detuning) and total_momentum (center-of-mass wave
    vector) are carried for documentation but must both be zero: only then
    does the antisymmetric triplet decouple and the spin space reduce to
    the three components (|S>, |T1>, |T2>) this solver works in.
    """

    omega: float
    g: float = 0.0
    delta: float = 0.0
    total_momentum: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.omega) and self.omega > 0.0):
            raise ValueError(f"omega must be positive and finite, got {self.omega!r}")
        if not math.isfinite(self.g):
            raise ValueError(f"g must be finite, got {self.g!r}")
        if self.delta != 0.0:
            raise ValueError("delta must be 0 (nonzero detuning re-couples the antisymmetric triplet)")
        if self.total_momentum != 0.0:
            raise ValueError("total_momentum must be 0 (solver works in the center-of-mass frame)")


@dataclass(frozen=True)
class RegimeInfo:
    """Regime tag plus the energy landmarks of the three dressed bands."""

    regime: Regime
    e_upper_threshold: float   # upper-band minimum, +omega
    e_middle_threshold: float  # middle-band minimum, 0
    e_lowest_threshold: float  # -omega (SM) or -1 - omega^2/4 (DM)
    e_branch_point: float      # -omega^2/4, where the outer sheets touch

    @property
    def landmarks(self) -> tuple[float, float, float, float]:
        return (
            self.e_upper_threshold,
            self.e_middle_threshold,
            self.e_lowest_threshold,
            self.e_branch_point,
        )


@dataclass(frozen=True)
class ChannelCensus:
    """Open/closed channel count in one of the piecewise-constant regions."""

    n_open: int
    n_closed: int
    region: str


def classify_regime(params: SystemParams) -> RegimeInfo:
    """Classify the lowest band and return the four energy landmarks.

    The lowest band has a single minimum at k=0 (value -omega) when
    omega >= 2, and two symmetric minima of value -1 - omega^2/4 when
    omega < 2.  At omega = 2 the two expressions coincide; the boundary is
    classified as single-minimum.
    """
    omega = params.omega
    if omega >= OMEGA_CRITICAL:
        regime = Regime.SINGLE_MINIMUM
        lowest = -omega
    else:
        regime = Regime.DOUBLE_MINIMUM
        lowest = -1.0 - omega * omega / 4.0
    return RegimeInfo(
        regime=regime,
        e_upper_threshold=omega,
        e_middle_threshold=0.0,
        e_lowest_threshold=lowest,
        e_branch_point=-omega * omega / 4.0,
    )


def degenerate_energies(params: SystemParams) -> tuple[float, ...]:
    """Energies at which the six-state basis degenerates, sorted ascending.

    These are the four landmarks plus the quartet coalescence at
    -1 - omega^2/4, which in the single-minimum regime lies below the
    lowest threshold without being a landmark itself.  (At +-omega and 0 a
    pair collapses onto k=0; at the branch point the middle pair collides
    with an outer-sheet pair; at -1 - omega^2/4 the two outer-sheet pairs
    merge.)
    """
    info = classify_regime(params)
    coalescence = -1.0 - params.omega * params.omega / 4.0
    return tuple(sorted(set(info.landmarks) | {coalescence}))


def require_regular_energy(E: float, params: SystemParams, eps: float = THRESHOLD_EPS) -> None:
    """Raise DegenerateEnergy if E is within eps of a degenerate energy."""
    for e0 in degenerate_energies(params):
        if abs(E - e0) <= eps:
            raise DegenerateEnergy(
                f"E={E!r} is within {eps:g} of the degenerate energy {e0!r} "
                f"(omega={params.omega!r}); evaluate one-sided limits instead"
            )


def channel_census(E: float, params: SystemParams, eps: float = THRESHOLD_EPS) -> ChannelCensus:
    """Count open and closed channels at energy E.

    A channel is open when its pair of wave-vector solutions is real
    (propagating).  The count is piecewise constant between landmarks and
    always satisfies n_open + n_closed = 3.  E must not sit within eps of
    a landmark.
    """
    info = classify_regime(params)
    for e0 in info.landmarks:
        if abs(E - e0) <= eps:
            raise DegenerateEnergy(
                f"E={E!r} is within {eps:g} of the landmark {e0!r} (omega={params.omega!r})"
            )
    if E > info.e_upper_threshold:
        return ChannelCensus(3, 0, "all-open")
    if E > info.e_middle_threshold:
        return ChannelCensus(2, 1, "upper-closed")
    if E > -params.omega:
        return ChannelCensus(1, 2, "one-open")
    if info.regime is Regime.DOUBLE_MINIMUM and E > info.e_lowest_threshold:
        # Both solution pairs of the lowest band propagate here.
        return ChannelCensus(2, 1, "dm-two-open")
    return ChannelCensus(0, 3, "all-closed")
