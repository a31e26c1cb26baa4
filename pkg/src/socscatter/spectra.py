"""Resonance positions versus coupling strength, and bound-state spectra.

Reflection resonances are located inside the one-open-channel window
(-omega, 0): total reflection there is driven by quasi-bound states held
by the closed bands.  Bound states below the lowest threshold are zeros of
a secular function built from the six decaying solutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .dispersion import Placement, build_channel_set
from .params import (
    DegenerateEnergy,
    SystemParams,
    classify_regime,
    degenerate_energies,
)
from .scattering import SWEEP_EXCLUSION, SingularSystem, matching_matrix, solve_scattering

# Smallest accepted reflection for a resonance peak; rejects broad
# background humps while tolerating finite grid resolution.
PEAK_MIN_REFLECTION = 0.5

# A bound-state candidate must push the secular function below this.
SECULAR_TOL = 1e-8

# Candidate bound states closer than this to a basis-coalescence energy are
# spurious (the secular function dips there because basis columns become
# parallel, not because a bound state exists).
COALESCENCE_GUARD = 1e-5

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class WindowMismatch(ValueError):
    """Scan window does not sit inside the required census region."""


@dataclass(frozen=True)
class ResonancePeak:
    energy: float
    reflection: float


@dataclass(frozen=True)
class ResonanceEntry:
    g: float
    peaks: tuple[ResonancePeak, ...]
    flag: str = ""


@dataclass(frozen=True)
class ResonanceCurve:
    omega: float
    entries: tuple[ResonanceEntry, ...]


@dataclass(frozen=True)
class BoundStateEntry:
    g: float
    energies: tuple[float, ...]
    flag: str = ""


@dataclass(frozen=True)
class BoundStateSpectrum:
    omega: float
    entries: tuple[BoundStateEntry, ...]


def _golden_min(f, a: float, b: float, xtol: float) -> tuple[float, float]:
    """Golden-section minimum of f on [a, b] to absolute x tolerance."""
    h = b - a
    c, d = b - _INVPHI * h, a + _INVPHI * h
    fc, fd = f(c), f(d)
    while h > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INVPHI * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = f(d)
    x = c if fc < fd else d
    return x, min(fc, fd)


def _one_open_window(params: SystemParams) -> tuple[float, float]:
    # In both regimes exactly one channel is open for -omega < E < 0.
    return (-params.omega, 0.0)


def find_resonances(
    params: SystemParams,
    window: tuple[float, float] | None = None,
    grid_n: int = 2001,
    refine_tol: float = 1e-8,
    min_peak: float = PEAK_MIN_REFLECTION,
) -> list[ResonancePeak]:
    """Locate total-reflection resonances in the one-open-channel window.

    Scans total reflection on a grid, keeps strict local maxima with
    R >= min_peak, refines each with golden-section search to refine_tol in
    energy, and returns the peaks sorted by energy.  The incident channel
    is the unique open right-mover of the window.
    """
    lo_max, hi_max = _one_open_window(params)
    if window is None:
        window = (lo_max + SWEEP_EXCLUSION, hi_max - SWEEP_EXCLUSION)
    lo, hi = float(window[0]), float(window[1])
    if not (lo_max <= lo < hi <= hi_max):
        raise WindowMismatch(
            f"window ({lo!r}, {hi!r}) is not inside the one-open-channel "
            f"region ({lo_max!r}, 0.0) for omega={params.omega!r}"
        )

    probe = build_channel_set(0.5 * (lo + hi), params)
    incoming = [s.label for s in probe.states if s.placement is Placement.OUTGOING_RIGHT]
    if len(incoming) != 1:
        raise WindowMismatch(
            f"expected exactly one open channel in ({lo!r}, {hi!r}), found {incoming}"
        )
    incident = incoming[0]

    blocked = degenerate_energies(params)

    def refl(E: float) -> float:
        if any(abs(E - e0) <= SWEEP_EXCLUSION for e0 in blocked):
            return math.nan
        try:
            return solve_scattering(E, incident, params).total_reflection
        except (DegenerateEnergy, SingularSystem):
            return math.nan

    grid = np.linspace(lo, hi, grid_n)
    values = np.array([refl(E) for E in grid])
    comparable = np.where(np.isnan(values), -math.inf, values)

    peaks: list[ResonancePeak] = []
    step = (hi - lo) / (grid_n - 1)
    for i in range(1, grid_n - 1):
        if math.isnan(values[i]) or values[i] < min_peak:
            continue
        if not (comparable[i] > comparable[i - 1] and comparable[i] > comparable[i + 1]):
            continue

        def neg(E: float) -> float:
            r = refl(E)
            return math.inf if math.isnan(r) else -r

        e_ref, neg_ref = _golden_min(neg, grid[i - 1], grid[i + 1], refine_tol)
        peaks.append(ResonancePeak(energy=float(e_ref), reflection=float(-neg_ref)))

    # Merge refinements that landed on the same peak.
    peaks.sort(key=lambda p: p.energy)
    merged: list[ResonancePeak] = []
    for p in peaks:
        if merged and abs(p.energy - merged[-1].energy) <= step:
            if p.reflection > merged[-1].reflection:
                merged[-1] = p
        else:
            merged.append(p)
    return merged


def resonance_curve(params: SystemParams, g_grid, **scan_kwargs) -> ResonanceCurve:
    """Resonance peaks for each coupling in g_grid (all attractive).

    Per-g failures are recorded as flagged empty entries; the scan itself
    is never aborted.
    """
    g_values = [float(g) for g in g_grid]
    if not g_values:
        raise ValueError("g_grid must be nonempty")
    if any(g >= 0 for g in g_values):
        raise ValueError("resonance scans expect attractive coupling (all g < 0)")
    entries = []
    for g in g_values:
        p = replace(params, g=g)
        try:
            peaks = find_resonances(p, **scan_kwargs)
            entries.append(ResonanceEntry(g=g, peaks=tuple(peaks)))
        except (WindowMismatch, DegenerateEnergy, SingularSystem) as exc:
            entries.append(ResonanceEntry(g=g, peaks=(), flag=type(exc).__name__))
    return ResonanceCurve(omega=params.omega, entries=tuple(entries))


def _secular(E: float, params: SystemParams) -> float:
    """Smallest singular value of the homogeneous matching matrix at E.

    Columns are scaled to unit norm first: that keeps the value comparable
    across energies without moving its zeros.
    """
    channel_set = build_channel_set(E, params)
    M = matching_matrix(channel_set, params.g)
    norms = np.linalg.norm(M, axis=0)
    return float(np.linalg.svd(M / norms, compute_uv=False)[-1])


def find_bound_states(
    params: SystemParams,
    window: tuple[float, float] | None = None,
    grid_n: int = 2001,
) -> list[float]:
    """Bound-state energies below the lowest scattering threshold.

    Scans the secular function (smallest singular value of the homogeneous
    matching system built from the six decaying states) over the window,
    refines local minima by golden-section search, and keeps energies where
    it drops below SECULAR_TOL.  Minima within COALESCENCE_GUARD of a basis
    coalescence are discarded as spurious.  g = 0 trivially yields no bound
    state.
    """
    if params.g == 0.0:
        return []
    info = classify_regime(params)
    e_low = info.e_lowest_threshold
    if window is None:
        window = (e_low - 10.0, e_low - SWEEP_EXCLUSION)
    lo, hi = float(window[0]), float(window[1])
    if not (lo < hi <= e_low):
        raise WindowMismatch(
            f"window ({lo!r}, {hi!r}) must lie below the lowest threshold {e_low!r}"
        )

    blocked = [e0 for e0 in degenerate_energies(params) if lo <= e0 <= hi]

    def sigma(E: float) -> float:
        if any(abs(E - e0) <= SWEEP_EXCLUSION for e0 in blocked):
            return math.inf
        try:
            return _secular(E, params)
        except DegenerateEnergy:
            return math.inf

    grid = np.linspace(lo, hi, grid_n)
    values = np.array([sigma(E) for E in grid])

    found: list[float] = []
    for i in range(1, grid_n - 1):
        if not (values[i] < values[i - 1] and values[i] < values[i + 1]):
            continue
        e_ref, s_ref = _golden_min(sigma, grid[i - 1], grid[i + 1], 1e-12)
        if s_ref > SECULAR_TOL:
            continue
        if any(abs(e_ref - e0) <= COALESCENCE_GUARD for e0 in blocked):
            continue
        found.append(float(e_ref))

    # Coincident refinements from neighbouring grid minima count once.
    found.sort()
    deduped: list[float] = []
    for e in found:
        if not deduped or abs(e - deduped[-1]) > 1e-8:
            deduped.append(e)
    return deduped


def bound_state_spectrum(params: SystemParams, g_grid, **scan_kwargs) -> BoundStateSpectrum:
    """find_bound_states over a grid of couplings; g = 0 rows stay empty."""
    entries = []
    for g in g_grid:
        p = replace(params, g=float(g))
        try:
            energies = tuple(find_bound_states(p, **scan_kwargs))
            entries.append(BoundStateEntry(g=float(g), energies=energies))
        except (WindowMismatch, DegenerateEnergy, SingularSystem) as exc:
            entries.append(BoundStateEntry(g=float(g), energies=(), flag=type(exc).__name__))
    return BoundStateSpectrum(omega=params.omega, entries=tuple(entries))
