"""Dressed dispersion branches and the six-state basis at fixed energy.

Spinors live in the reduced spin basis (|S>, |T1>, |T2>).  The three
branches of the relative-motion Hamiltonian are

    E_u(k) = k^2 + sqrt(4 k^2 + omega^2)        (upper)
    E_m(k) = k^2                                (middle)
    E_b(k) = k^2 - sqrt(4 k^2 + omega^2)        (lower)

so at a real energy E the middle branch contributes the pair k^2 = E and
the outer branches contribute the four roots of the quartic

    k^4 - (2 E + 4) k^2 + (E^2 - omega^2) = 0,

i.e. k^2 = (E + 2) +- sqrt(4 E + 4 + omega^2).  The quartic is single
valued, so evanescent and fully complex solutions fall out of the same
algebra as the propagating ones; each root is tagged upper or lower by
which signed square root reproduces E.  This reproduces the continuation
taxonomy: purely imaginary roots attach to one sheet on either side of the
branch point -omega^2/4, and below the coalescence energy -1 - omega^2/4
all four roots are fully complex and belong to the lower sheet.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .params import (
    THRESHOLD_EPS,
    ChannelCensus,
    SystemParams,
    channel_census,
    require_regular_energy,
)

# Relative tolerance on Im(k) for classifying a root as propagating.  Roots
# come from closed-form square roots of real numbers, so they carry only
# rounding error.
IM_EPS = 1e-10

_SQRT2 = math.sqrt(2.0)


class Branch(Enum):
    UPPER = "upper"
    MIDDLE = "middle"
    LOWER = "lower"


class Kind(Enum):
    PROPAGATING = "propagating"          # real k
    EVANESCENT = "evanescent"            # purely imaginary k
    COMPLEX_OSCILLATORY = "complex"      # fully complex k


class Placement(Enum):
    OUTGOING_RIGHT = "outgoing-right"    # propagating, flux > 0
    OUTGOING_LEFT = "outgoing-left"      # propagating, flux < 0
    DECAYING_RIGHT = "decaying-right"    # Im k > 0, bounded as x -> +inf
    DECAYING_LEFT = "decaying-left"      # Im k < 0, bounded as x -> -inf


@dataclass(frozen=True, eq=False)
class ChannelState:
    """One stationary solution at fixed energy.

    label      1..6; odd labels are usable on the left of the scatterer,
               even labels on the right
    continued  True for states reached by analytic continuation (non-real k)
    spinor     3 complex amplitudes in (|S>, |T1>, |T2>), algebraically
               normalized (unit norm for real k)
    flux       signed probability flux; zero unless propagating
    """

    label: int
    k: complex
    branch: Branch
    kind: Kind
    continued: bool
    spinor: np.ndarray
    flux: float
    placement: Placement

    @property
    def incoming_capable(self) -> bool:
        """Whether the state can serve as the incident wave (from the left)."""
        return self.placement is Placement.OUTGOING_RIGHT


@dataclass(frozen=True, eq=False)
class ChannelSet:
    """The six labeled states at one energy, plus the open/closed census."""

    energy: float
    params: SystemParams
    states: tuple[ChannelState, ...]
    census: ChannelCensus

    def state(self, label: int) -> ChannelState:
        if not 1 <= label <= 6:
            raise ValueError(f"channel label must be 1..6, got {label}")
        return self.states[label - 1]

    @property
    def open_labels(self) -> tuple[int, ...]:
        return tuple(s.label for s in self.states if s.kind is Kind.PROPAGATING)

    @property
    def closed_labels(self) -> tuple[int, ...]:
        return tuple(s.label for s in self.states if s.kind is not Kind.PROPAGATING)


def branch_energy(branch: Branch, k: complex, params: SystemParams) -> complex:
    """Branch energy at (possibly complex) wave vector k.

    The outer branches use the principal square root of 4 k^2 + omega^2;
    roots produced by solve_wavevectors are tagged so that this function
    reproduces their energy.
    """
    k = complex(k)
    k2 = k * k
    if branch is Branch.MIDDLE:
        return k2
    root = cmath.sqrt(4.0 * k2 + params.omega * params.omega)
    return k2 + root if branch is Branch.UPPER else k2 - root


def flux(branch: Branch, k: float, params: SystemParams) -> float:
    """Probability flux of a propagating state (equals dE/dk).

    v_u = 2k + 4k/sqrt(4k^2 + omega^2)
    v_m = 2k
    v_b = 2k - 4k/sqrt(4k^2 + omega^2)

    On the lower branch in the double-minimum regime the correction term
    dominates for |k| below the band-minimum position, so flux and wave
    vector have opposite signs there.
    """
    k = float(k)
    if branch is Branch.MIDDLE:
        return 2.0 * k
    correction = 4.0 * k / math.sqrt(4.0 * k * k + params.omega * params.omega)
    return 2.0 * k + correction if branch is Branch.UPPER else 2.0 * k - correction


def spinor(branch: Branch, k: complex, params: SystemParams) -> np.ndarray:
    """Spinor amplitudes (|S>, |T1>, |T2>) of a branch state at wave vector k.

    With s = sqrt(k^2 + (omega/2)^2) (principal root, continued to complex k):

        upper:  (-sqrt(2) k,  -s - omega/2,  s - omega/2) / (2 s)
        middle: (-omega/sqrt(2),  k,  k) / (sqrt(2) s)
        lower:  ( sqrt(2) k,  -s + omega/2,  s + omega/2) / (2 s)

    For real k these have unit norm; for complex k the same algebraic
    factor is kept (analytic continuation), which is what the matching
    equations need.  Only the middle state at k=0 is a pure singlet; the
    outer states at k=0 have no singlet component at all.
    """
    k = complex(k)
    half = params.omega / 2.0
    s = cmath.sqrt(k * k + half * half)
    if branch is Branch.MIDDLE:
        vec = np.array([-params.omega / _SQRT2, k, k], dtype=complex)
        return vec / (_SQRT2 * s)
    if branch is Branch.UPPER:
        vec = np.array([-_SQRT2 * k, -s - half, s - half], dtype=complex)
    else:
        vec = np.array([_SQRT2 * k, -s + half, s + half], dtype=complex)
    return vec / (2.0 * s)


def _quartet_k2(E: float, omega: float) -> tuple[complex, complex]:
    """The two k^2 roots shared by the outer branches, (E+2) +- sqrt(disc)."""
    disc = 4.0 * E + 4.0 + omega * omega
    s = cmath.sqrt(complex(disc))
    return (E + 2.0) + s, (E + 2.0) - s


def _branch_tag(E: float, k2: complex, omega: float) -> Branch:
    """Tag a quartet root by which signed square root reproduces E."""
    t = E - k2
    w = cmath.sqrt(4.0 * k2 + omega * omega)
    return Branch.UPPER if abs(t - w) <= abs(t + w) else Branch.LOWER


def solve_wavevectors(
    E: float, params: SystemParams, eps: float = THRESHOLD_EPS
) -> tuple[tuple[complex, Branch], ...]:
    """All six wave-vector solutions at real energy E, with branch tags.

    Returns the middle pair followed by the two quartet pairs; within each
    pair the roots are +-k.  Energies within eps of a degenerate energy are
    refused (coalescing roots).
    """
    E = float(E)
    require_regular_energy(E, params, eps)
    km = cmath.sqrt(complex(E))
    solutions: list[tuple[complex, Branch]] = [(km, Branch.MIDDLE), (-km, Branch.MIDDLE)]
    for k2 in _quartet_k2(E, params.omega):
        k = cmath.sqrt(k2)
        tag = _branch_tag(E, k2, params.omega)
        solutions.append((k, tag))
        solutions.append((-k, tag))
    return tuple(solutions)


def _classify(k: complex) -> Kind:
    scale = max(1.0, abs(k))
    if abs(k.imag) <= IM_EPS * scale:
        return Kind.PROPAGATING
    if abs(k.real) <= IM_EPS * scale:
        return Kind.EVANESCENT
    return Kind.COMPLEX_OSCILLATORY


def _pair_states(
    k: complex,
    branch: Branch,
    labels: tuple[int, int],
    params: SystemParams,
) -> list[ChannelState]:
    """Build the two states of a +-k pair; labels = (odd, even).

    The even label goes to the right-mover (flux > 0) for a propagating
    pair and to the right-decayer (Im k > 0) otherwise.
    """
    odd_label, even_label = labels
    kind = _classify(k)
    if kind is Kind.PROPAGATING:
        k_re = k.real
        v = flux(branch, k_re, params)
        k_even, v_even = (k_re, v) if v > 0 else (-k_re, -v)
        states = [
            (odd_label, complex(-k_even), -v_even, Placement.OUTGOING_LEFT),
            (even_label, complex(k_even), v_even, Placement.OUTGOING_RIGHT),
        ]
    else:
        k_even = k if k.imag > 0 else -k
        states = [
            (odd_label, -k_even, 0.0, Placement.DECAYING_LEFT),
            (even_label, k_even, 0.0, Placement.DECAYING_RIGHT),
        ]
    return [
        ChannelState(
            label=label,
            k=kv,
            branch=branch,
            kind=kind,
            continued=kind is not Kind.PROPAGATING,
            spinor=spinor(branch, kv, params),
            flux=v,
            placement=placement,
        )
        for label, kv, v, placement in states
    ]


def build_channel_set(
    E: float, params: SystemParams, eps: float = THRESHOLD_EPS
) -> ChannelSet:
    """Construct the labeled six-state basis at energy E.

    Label pairs: (1,2) middle branch, (3,4) upper branch or its
    continuation, (5,6) lower branch.  When all four quartet roots sit on
    the lower sheet, (3,4) goes to the continuation pair: the inner pair
    (smaller |k|) when all four are real, so that label 4 is the
    negative-wave-vector positive-flux state of the double-minimum window;
    the larger-|Im k| pair when both pairs are evanescent; and the pair
    with Im k^2 > 0 when all four roots are fully complex.
    """
    E = float(E)
    require_regular_energy(E, params, eps)
    census = channel_census(E, params, eps)
    omega = params.omega

    km = cmath.sqrt(complex(E))
    states = _pair_states(km, Branch.MIDDLE, (1, 2), params)

    r_plus, r_minus = _quartet_k2(E, omega)
    pair_plus = (cmath.sqrt(r_plus), _branch_tag(E, r_plus, omega))
    pair_minus = (cmath.sqrt(r_minus), _branch_tag(E, r_minus, omega))

    if pair_plus[1] is not pair_minus[1]:
        pair34 = pair_plus if pair_plus[1] is Branch.UPPER else pair_minus
        pair56 = pair_minus if pair34 is pair_plus else pair_plus
    else:
        # Both pairs on the lower sheet; (3,4) takes the continuation pair.
        kinds = (_classify(pair_plus[0]), _classify(pair_minus[0]))
        if kinds == (Kind.PROPAGATING, Kind.PROPAGATING):
            # Double-minimum window: inner pair (smaller k^2, i.e. r_minus)
            # carries the counter-propagating flux and gets (3,4).
            pair34, pair56 = pair_minus, pair_plus
        elif kinds == (Kind.EVANESCENT, Kind.EVANESCENT):
            # r_minus is the more negative k^2, i.e. the larger |Im k|.
            pair34, pair56 = pair_minus, pair_plus
        elif Kind.PROPAGATING in kinds:
            # Below the branch point one lower-sheet pair still propagates
            # (thick curve): it keeps (5,6), the evanescent pair gets (3,4).
            propagating_first = kinds[0] is Kind.PROPAGATING
            pair34 = pair_minus if propagating_first else pair_plus
            pair56 = pair_plus if propagating_first else pair_minus
        else:
            # Fully complex conjugate quadruple: deterministic convention,
            # (3,4) takes the pair with Im k^2 > 0.
            pair34, pair56 = pair_plus, pair_minus

    states += _pair_states(pair34[0], pair34[1], (3, 4), params)
    states += _pair_states(pair56[0], pair56[1], (5, 6), params)

    states.sort(key=lambda s: s.label)
    n_open = sum(1 for s in states if s.kind is Kind.PROPAGATING) // 2
    if n_open != census.n_open:
        raise AssertionError(
            f"channel census mismatch at E={E!r}, omega={omega!r}: "
            f"{n_open} propagating pairs vs census {census.n_open}"
        )
    return ChannelSet(energy=E, params=params, states=tuple(states), census=census)
