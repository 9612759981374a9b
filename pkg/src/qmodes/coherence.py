"""Fringe visibility, its universal coupling to the Schmidt number, and a
qubit-entanglement model of partially coherent illumination.

A source point displaced from the optical axis advances one slit's phase
by phi relative to the other; entangling the sign of that shift with an
auxiliary qubit reproduces classical partial coherence.  For any two-mode
decomposition,

    K = 2 / (1 + V^2),   lambda_0 = (1 + V)/2,   lambda_1 = (1 - V)/2,

and a uniform source of dimensionless size y gives V(y) = |sinc(4 y)| with
the normalized sinc convention sinc(x) = sin(pi x)/(pi x) (note: pi inside,
as in numpy).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .interference import MOMENTUM, JointState, SlitParams
from .numerics import Grid1D, SampledWave, trapezoid_weights

__all__ = [
    "CoherenceModel",
    "VisibilityReport",
    "UnresolvedFringesError",
    "QUBIT_GRID",
    "visibility_from_intensity",
    "qubit_coherence_state",
    "k_from_v",
    "v_from_k",
    "entropy_from_v",
    "visibility_report",
    "source_visibility",
    "source_schmidt",
]

MIN_SAMPLES_PER_PERIOD = 16

# Two-point "grid" for a qubit axis: [0, 2] makes both trapezoid weights
# exactly 1, so quadrature over the detector axis is a plain sum.
QUBIT_GRID = Grid1D(2, 0.0, 2.0)


class UnresolvedFringesError(ValueError):
    """Momentum grid too coarse to resolve the fringe period pi/a."""


@dataclass(frozen=True)
class CoherenceModel:
    """Phase shift phi = 2 pi a y / (lambda F) applied with opposite signs per qubit branch."""

    phi: float
    slits: SlitParams

    def __post_init__(self):
        if self.slits.m != 2:
            raise ValueError("coherence model is defined for two slits")


@dataclass(frozen=True)
class VisibilityReport:
    """Visibility with the equivalent two-mode Schmidt quantities."""

    v: float
    k: float
    lambda0: float
    lambda1: float
    s: float


def _parabolic_refine(y: np.ndarray, idx: int) -> float:
    """Vertex value of the parabola through three samples around idx."""
    if idx == 0 or idx == len(y) - 1:
        return float(y[idx])
    y0, y1, y2 = y[idx - 1], y[idx], y[idx + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom == 0.0:
        return float(y1)
    return float(y1 - (y2 - y0) ** 2 / (8.0 * denom))


def visibility_from_intensity(density: SampledWave, a: float, sigma_x: float) -> float:
    """Fringe visibility (I_max - I_min) / (I_max + I_min) of a two-slit pattern.

    The Gaussian envelope exp(-2 sigma_x^2 p^2) is divided out first; the
    central extremum and its neighbours at |p| ~ pi/(2a) are then located
    on the grid and refined parabolically.  Requires at least
    16 samples per fringe period pi/a.
    """
    if not a > 0:
        raise ValueError(f"slit half-spacing must be positive, got {a}")
    grid = density.grid
    period = np.pi / a
    if grid.spacing > period / MIN_SAMPLES_PER_PERIOD:
        raise UnresolvedFringesError(
            f"grid spacing {grid.spacing:.4g} exceeds {period / MIN_SAMPLES_PER_PERIOD:.4g} "
            f"(need >= {MIN_SAMPLES_PER_PERIOD} samples per period pi/a)"
        )
    p = grid.points
    window = np.abs(p) <= 0.75 * period
    if np.count_nonzero(window) < 5:
        raise UnresolvedFringesError("central fringe window not covered by the grid")
    flat = np.real(density.amplitudes[window]) / np.exp(-2.0 * sigma_x**2 * p[window] ** 2)
    i_max = _parabolic_refine(flat, int(np.argmax(flat)))
    i_min = _parabolic_refine(flat, int(np.argmin(flat)))
    if i_max + i_min <= 0:
        raise ValueError("intensity pattern is not positive on the central window")
    return float(np.clip((i_max - i_min) / (i_max + i_min), 0.0, 1.0))


def qubit_coherence_state(model: CoherenceModel, particle_grid: Grid1D) -> JointState:
    """Particle entangled with an auxiliary qubit carrying the phase-shift sign.

    In momentum representation the qubit branches are real cosine fringes
    shifted by +/-phi:

        branch |0>: env(p) cos(p a + phi),   branch |1>: env(p) cos(p a - phi),

    normalized numerically.  The detector axis is the two-point qubit grid,
    so marginals and Schmidt decompositions treat it as a plain sum.
    """
    p = particle_grid.points
    env = np.exp(-model.slits.sigma_x**2 * p**2)
    amp = np.stack(
        [env * np.cos(p * model.slits.a + model.phi), env * np.cos(p * model.slits.a - model.phi)],
        axis=1,
    )
    total = trapezoid_weights(particle_grid) @ (np.abs(amp) ** 2) @ trapezoid_weights(QUBIT_GRID)
    return JointState(particle_grid, QUBIT_GRID, amp / np.sqrt(total), MOMENTUM)


def k_from_v(v: float) -> float:
    """Schmidt number of a two-mode state with visibility v: K = 2/(1 + v^2)."""
    if not -1e-12 <= v <= 1.0 + 1e-12:
        raise ValueError(f"visibility must lie in [0, 1], got {v}")
    return 2.0 / (1.0 + min(max(v, 0.0), 1.0) ** 2)


def v_from_k(k: float) -> float:
    """Visibility of a two-mode state with Schmidt number k: V = sqrt((2-k)/k)."""
    if not 1.0 - 1e-12 <= k <= 2.0 + 1e-12:
        raise ValueError(f"two-mode Schmidt number must lie in [1, 2], got {k}")
    k = min(max(k, 1.0), 2.0)
    return float(np.sqrt((2.0 - k) / k))


def entropy_from_v(v: float) -> float:
    """Entropy of the two-mode weights ((1+V)/2, (1-V)/2)."""
    if not -1e-12 <= v <= 1.0 + 1e-12:
        raise ValueError(f"visibility must lie in [0, 1], got {v}")
    v = min(max(v, 0.0), 1.0)
    s = 0.0
    for lam in ((1.0 + v) / 2.0, (1.0 - v) / 2.0):
        if lam > 0.0:
            s -= lam * np.log2(lam)
    return float(s)


def visibility_report(v: float) -> VisibilityReport:
    """All two-mode quantities implied by a visibility value."""
    return VisibilityReport(
        v=v,
        k=k_from_v(v),
        lambda0=(1.0 + v) / 2.0,
        lambda1=(1.0 - v) / 2.0,
        s=entropy_from_v(v),
    )


def source_visibility(y: float) -> float:
    """Visibility from a uniform source of dimensionless size y: |sinc(4 y)|."""
    if y < 0:
        raise ValueError(f"source size must be non-negative, got {y}")
    return float(np.abs(np.sinc(4.0 * y)))


def source_schmidt(y: float) -> float:
    """Schmidt number from a uniform source of size y: 2 / (1 + sinc^2(4 y))."""
    if y < 0:
        raise ValueError(f"source size must be non-negative, got {y}")
    return float(2.0 / (1.0 + np.sinc(4.0 * y) ** 2))
