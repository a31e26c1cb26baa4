"""Matching at the contact potential and reflection/transmission extraction.

The interaction is a delta pseudo-potential at x=0 acting on the singlet
component only.  The scattering solution is written as

    x < 0:  psi_inc(x) + sum over odd labels   c_a psi_a(x)
    x > 0:  sum over even labels  c_a psi_a(x)

with the incident state carried separately at unit amplitude on the left,
so that the even-label unknown sharing the incident's label is directly
the transmitted amplitude.  Matching all three spinor components at x=0
(continuity), their derivatives for the two triplet components, and the
derivative jump g * psi(0) for the singlet component yields a square 6x6
complex linear system.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .dispersion import ChannelSet, ChannelState, Kind, build_channel_set
from .params import THRESHOLD_EPS, DegenerateEnergy, SystemParams, degenerate_energies

# Relative residual accepted from the dense solve; one step of iterative
# refinement is attempted before giving up.
RESIDUAL_RTOL = 1e-10

# Default half-width of the exclusion window around degenerate energies
# when sweeping (wider than THRESHOLD_EPS so one-sided threshold limits are
# still sampled while truly ill-conditioned points are skipped).
SWEEP_EXCLUSION = 1e-6


class ClosedIncidentChannel(ValueError):
    """Requested incident channel is not propagating with positive flux."""


class SingularSystem(RuntimeError):
    """Matching system could not be solved to the required residual."""


@dataclass(frozen=True, eq=False)
class MatchingSystem:
    """The 6x6 matching matrix, its right-hand side, and the basis used.

    Column j corresponds to the unknown amplitude of label j+1; odd labels
    multiply left-side states, even labels right-side states.  The incident
    state appears only in the right-hand side.
    """

    matrix: np.ndarray
    rhs: np.ndarray
    channel_set: ChannelSet
    incident_label: int


@dataclass(frozen=True)
class ScatteringResult:
    """Probabilities for one (energy, incident channel) point.

    reflection / transmission map open outgoing labels to flux ratios;
    occupation maps closed labels to |c|^2 of the analytically normalized
    evanescent states (unnormalized occupation measure).
    """

    incident_label: int
    energy: float
    reflection: dict[int, float]
    transmission: dict[int, float]
    occupation: dict[int, float]
    conservation_residual: float

    @property
    def total_reflection(self) -> float:
        return sum(self.reflection.values())

    @property
    def total_transmission(self) -> float:
        return sum(self.transmission.values())


def matching_matrix(channel_set: ChannelSet, g: float) -> np.ndarray:
    """Homogeneous matching matrix for the six basis states.

    Rows: continuity of components 1..3, derivative continuity of
    components 2 and 3, singlet derivative jump with coupling g.  Row sign
    convention is (right side) - (left side), so even-label columns enter
    with + and odd-label columns with -.
    """
    M = np.zeros((6, 6), dtype=complex)
    for j, st in enumerate(channel_set.states):
        sign = 1.0 if st.label % 2 == 0 else -1.0
        phi = st.spinor
        ik = 1j * st.k
        M[0:3, j] = sign * phi
        M[3, j] = sign * ik * phi[1]
        M[4, j] = sign * ik * phi[2]
        M[5, j] = sign * ik * phi[0]
        if st.label % 2 == 0:
            M[5, j] -= g * phi[0]
    return M


def _incident_rhs(incident: ChannelState) -> np.ndarray:
    b = np.zeros(6, dtype=complex)
    phi = incident.spinor
    ik = 1j * incident.k
    b[0:3] = phi
    b[3] = ik * phi[1]
    b[4] = ik * phi[2]
    b[5] = ik * phi[0]
    return b


def build_matching_system(
    E: float, incident_label: int, params: SystemParams, eps: float = THRESHOLD_EPS
) -> MatchingSystem:
    """Assemble the linear system for a unit-amplitude incident wave."""
    channel_set = build_channel_set(E, params, eps)
    incident = channel_set.state(incident_label)
    if not incident.incoming_capable:
        raise ClosedIncidentChannel(
            f"channel {incident_label} is not an open right-mover at E={E!r} "
            f"(kind={incident.kind.value}, flux={incident.flux!r})"
        )
    return MatchingSystem(
        matrix=matching_matrix(channel_set, params.g),
        rhs=_incident_rhs(incident),
        channel_set=channel_set,
        incident_label=incident_label,
    )


def solve_scattering(
    E: float, incident_label: int, params: SystemParams, eps: float = THRESHOLD_EPS
) -> ScatteringResult:
    """Solve the matching system and convert amplitudes to probabilities.

    R_f = |c_f|^2 |v_f| / v_i over open left-movers, T_f likewise over open
    right-movers (the incident label's own amplitude is the transmitted
    one), q_f = |c_f|^2 for closed labels.
    """
    system = build_matching_system(E, incident_label, params, eps)
    M, b = system.matrix, system.rhs
    try:
        c = np.linalg.solve(M, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(
            f"matching matrix singular at E={E!r}, incident={incident_label}"
        ) from exc

    norm_b = np.linalg.norm(b)
    residual = np.linalg.norm(M @ c - b)
    if residual > RESIDUAL_RTOL * norm_b:
        c = c + np.linalg.solve(M, b - M @ c)
        residual = np.linalg.norm(M @ c - b)
        if residual > RESIDUAL_RTOL * norm_b:
            raise SingularSystem(
                f"residual {residual:.3e} exceeds {RESIDUAL_RTOL:g}*|b| at "
                f"E={E!r}, incident={incident_label} "
                f"(cond~{np.linalg.cond(M):.3e})"
            )

    channel_set = system.channel_set
    v_in = channel_set.state(incident_label).flux
    reflection: dict[int, float] = {}
    transmission: dict[int, float] = {}
    occupation: dict[int, float] = {}
    for st in channel_set.states:
        weight = float(abs(c[st.label - 1]) ** 2)
        if st.kind is Kind.PROPAGATING:
            ratio = weight * abs(st.flux) / v_in
            if st.label % 2 == 0:
                transmission[st.label] = ratio
            else:
                reflection[st.label] = ratio
        else:
            occupation[st.label] = weight

    total = sum(reflection.values()) + sum(transmission.values())
    return ScatteringResult(
        incident_label=incident_label,
        energy=E,
        reflection=reflection,
        transmission=transmission,
        occupation=occupation,
        conservation_residual=abs(total - 1.0),
    )


@dataclass(frozen=True)
class SweepPoint:
    """One grid point of a sweep; flag is empty for a solved point."""

    energy: float
    result: ScatteringResult | None = None
    flag: str = ""


def sweep(
    energies,
    incident_label: int,
    params: SystemParams,
    exclusion: float = SWEEP_EXCLUSION,
) -> list[SweepPoint]:
    """Solve an ordered energy grid, flagging unusable points.

    Grid points within `exclusion` of a degenerate energy are skipped (one
    aggregate warning), points where the incident channel is closed or the
    system is numerically singular are flagged; the sweep never aborts.
    """
    landmarks = degenerate_energies(params)
    points: list[SweepPoint] = []
    n_excluded = 0
    for E in energies:
        E = float(E)
        if any(abs(E - e0) <= exclusion for e0 in landmarks):
            points.append(SweepPoint(E, None, "near-landmark"))
            n_excluded += 1
            continue
        try:
            points.append(SweepPoint(E, solve_scattering(E, incident_label, params)))
        except ClosedIncidentChannel:
            points.append(SweepPoint(E, None, "closed-incident"))
        except DegenerateEnergy:
            points.append(SweepPoint(E, None, "near-landmark"))
            n_excluded += 1
        except SingularSystem:
            points.append(SweepPoint(E, None, "singular"))
    if n_excluded:
        warnings.warn(
            f"sweep skipped {n_excluded} grid point(s) within {exclusion:g} "
            f"of a degenerate energy",
            stacklevel=2,
        )
    return points
