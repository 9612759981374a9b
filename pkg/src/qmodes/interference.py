"""Gaussian slit wavefunctions, multi-slit geometry and the entangled
particle-detector joint state.

A particle passes a screen with m Gauss-type slits of width parameter
sigma_x spaced 2a apart; a detecting degree of freedom xi responds with a
Gaussian "spot" of width sigma_xi centered at +/-b, ... correlated with the
slit index.  Momentum-space amplitudes factor into Gaussian envelopes times
the slit form factor

    F(eta) = sin(m eta) / sin(eta),   eta = p_x a + p_xi b,

whose Schmidt structure the :mod:`qmodes.schmidt` module analyses.
Normalization constants are always computed numerically rather than set
to their well-separated-slit limit of 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import Grid1D, SampledWave, quadrature, trapezoid_weights

__all__ = [
    "COORDINATE",
    "MOMENTUM",
    "SlitParams",
    "DetectorParams",
    "JointState",
    "WrongRepresentationError",
    "single_slit_momentum_density",
    "two_slit_norm",
    "two_slit_intensity",
    "slit_centers",
    "spot_centers",
    "form_factor",
    "joint_state_momentum",
    "joint_state_coordinate",
    "marginal_momentum_density",
    "marginal_coordinate_density",
]

COORDINATE = "coordinate"
MOMENTUM = "momentum"

WELL_SEPARATED_OVERLAP = 0.01
_SIN_SINGULARITY = 1e-6


class WrongRepresentationError(ValueError):
    """Operation applied to a joint state in the wrong representation."""


@dataclass(frozen=True)
class SlitParams:
    """Screen geometry: m slits of width sigma_x, consecutive centers 2a apart."""

    a: float
    sigma_x: float
    m: int = 2

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"slit count must be >= 1, got {self.m}")
        if not self.sigma_x > 0:
            raise ValueError(f"sigma_x must be positive, got {self.sigma_x}")
        if self.m >= 2 and not self.a > 0:
            raise ValueError(f"slit half-spacing must be positive, got {self.a}")

    @property
    def overlap(self) -> float:
        """Gaussian overlap exp(-a^2 / 2 sigma_x^2) of neighbouring slits."""
        return float(np.exp(-self.a**2 / (2.0 * self.sigma_x**2)))

    @property
    def well_separated(self) -> bool:
        return self.overlap < WELL_SEPARATED_OVERLAP


@dataclass(frozen=True)
class DetectorParams:
    """Detector response: spots of width sigma_xi, half-spacing b (b = 0: no coupling)."""

    b: float
    sigma_xi: float

    def __post_init__(self):
        if self.b < 0:
            raise ValueError(f"spot half-spacing must be non-negative, got {self.b}")
        if not self.sigma_xi > 0:
            raise ValueError(f"sigma_xi must be positive, got {self.sigma_xi}")


@dataclass(frozen=True)
class JointState:
    """Two-particle amplitude psi(x, xi) sampled on a particle x detector grid.

    ``amplitudes[i, j]`` is the value at (particle point i, detector point j).
    The representation flag records whether the axes are coordinates or the
    conjugate momenta; the dtype may be real when the state carries no phase.
    """

    particle_grid: Grid1D
    detector_grid: Grid1D
    amplitudes: np.ndarray
    representation: str

    def __post_init__(self):
        amp = np.asarray(self.amplitudes)
        expected = (self.particle_grid.n_points, self.detector_grid.n_points)
        if amp.shape != expected:
            raise ValueError(f"amplitude shape {amp.shape} does not match grids {expected}")
        if self.representation not in (COORDINATE, MOMENTUM):
            raise ValueError(f"unknown representation {self.representation!r}")
        object.__setattr__(self, "amplitudes", amp)

    def norm(self) -> float:
        wx = trapezoid_weights(self.particle_grid)
        wxi = trapezoid_weights(self.detector_grid)
        total = wx @ (np.abs(self.amplitudes) ** 2) @ wxi
        return float(np.sqrt(total))


def single_slit_momentum_density(sigma_x: float, p_x) -> np.ndarray | float:
    """Far-field density of one Gaussian slit: sqrt(1/2pi) 2 sigma_x exp(-2 sigma_x^2 p^2).

    Gaussian with variance 1/(4 sigma_x^2), independent of the slit center.
    """
    if not sigma_x > 0:
        raise ValueError(f"sigma_x must be positive, got {sigma_x}")
    return np.sqrt(1.0 / (2.0 * np.pi)) * 2.0 * sigma_x * np.exp(-2.0 * sigma_x**2 * np.asarray(p_x) ** 2)


def two_slit_norm(a: float, sigma_x: float) -> float:
    """Normalization C^2 = 1 / (1 + exp(-a^2 / 2 sigma_x^2)) of the symmetric pair."""
    if not sigma_x > 0:
        raise ValueError(f"sigma_x must be positive, got {sigma_x}")
    return 1.0 / (1.0 + np.exp(-(a**2) / (2.0 * sigma_x**2)))


def two_slit_intensity(a: float, sigma_x: float, p_x) -> np.ndarray | float:
    """Two-slit interference pattern 4 C^2 sqrt(1/2pi) sigma_x exp(-2 sigma_x^2 p^2) cos^2(p a)."""
    c2 = two_slit_norm(a, sigma_x)
    p = np.asarray(p_x)
    return 4.0 * c2 * np.sqrt(1.0 / (2.0 * np.pi)) * sigma_x * np.exp(-2.0 * sigma_x**2 * p**2) * np.cos(p * a) ** 2


def slit_centers(m: int, a: float) -> np.ndarray:
    """Centers of m slits spaced 2a apart, symmetric about 0, sorted.

    Odd m: 0, +/-2a, ..., +/-(m-1)a.  Even m: +/-a, +/-3a, ..., +/-(m-1)a.
    """
    if m < 1:
        raise ValueError(f"slit count must be >= 1, got {m}")
    return (2.0 * np.arange(m) - (m - 1)) * a


def spot_centers(m: int, b: float) -> np.ndarray:
    """Detector spot centers, same layout as the slits with spacing 2b."""
    return slit_centers(m, b)


def form_factor(eta, m: int) -> np.ndarray | float:
    """Multi-slit amplitude factor sin(m eta) / sin(eta).

    The removable singularities at eta = k pi evaluate to +/-m; near them a
    quadratic expansion replaces the ratio for numerical continuity.
    |F| <= m everywhere and F(eta + pi) = (-1)^(m-1) F(eta).
    """
    if m < 1:
        raise ValueError(f"slit count must be >= 1, got {m}")
    eta_arr = np.asarray(eta, dtype=float)
    sin_eta = np.sin(eta_arr)
    near = np.abs(sin_eta) < _SIN_SINGULARITY
    safe_sin = np.where(near, 1.0, sin_eta)
    ratio = np.sin(m * eta_arr) / safe_sin
    # expansion about the nearest multiple of pi: F = (+/-)m (1 - (m^2-1) d^2 / 6)
    k = np.rint(eta_arr / np.pi)
    delta = eta_arr - k * np.pi
    sign = np.where((k.astype(np.int64) * (m - 1)) % 2 == 0, 1.0, -1.0)
    series = sign * m * (1.0 - (m**2 - 1) * delta**2 / 6.0)
    out = np.where(near, series, ratio)
    return out if out.ndim else float(out)


def _normalize_joint(
    amp: np.ndarray, particle_grid: Grid1D, detector_grid: Grid1D, representation: str
) -> JointState:
    wx = trapezoid_weights(particle_grid)
    wxi = trapezoid_weights(detector_grid)
    total = wx @ (np.abs(amp) ** 2) @ wxi
    if not total > 0:
        raise ValueError("joint amplitude is identically zero")
    return JointState(particle_grid, detector_grid, amp / np.sqrt(total), representation)


def joint_state_momentum(
    slits: SlitParams,
    det: DetectorParams,
    particle_grid: Grid1D,
    detector_grid: Grid1D,
) -> JointState:
    """Entangled m-slit state in momentum representation.

    psi~(p_x, p_xi) = (C/sqrt(m)) sqrt(2 sigma_x) sqrt(2 sigma_xi) / sqrt(2 pi)
                      * exp(-sigma_x^2 p_x^2) exp(-sigma_xi^2 p_xi^2) F(p_x a + p_xi b)

    with C fixed by numerical normalization on the supplied grids.  For b = 0
    the form factor depends on p_x alone and the amplitude matrix factorizes
    (no entanglement).
    """
    p = particle_grid.points
    q = detector_grid.points
    env_x = np.exp(-slits.sigma_x**2 * p**2)
    env_xi = np.exp(-det.sigma_xi**2 * q**2)
    eta = slits.a * p[:, None] + det.b * q[None, :]
    pref = (
        np.sqrt(2.0 * slits.sigma_x)
        * np.sqrt(2.0 * det.sigma_xi)
        / (np.sqrt(2.0 * np.pi) * np.sqrt(slits.m))
    )
    amp = pref * env_x[:, None] * env_xi[None, :] * form_factor(eta, slits.m)
    return _normalize_joint(amp, particle_grid, detector_grid, MOMENTUM)


def joint_state_coordinate(
    slits: SlitParams,
    det: DetectorParams,
    particle_grid: Grid1D,
    detector_grid: Grid1D,
) -> JointState:
    """Entangled m-slit state in coordinate representation.

    Superposition of m two-dimensional Gaussians, one per (slit, spot) pair,
    normalized numerically.  The two-slit case reduces to a symmetric pair of
    Gaussians at (+/-a, +/-b) with
    C^2 = 1 / (1 + exp(-(a^2/sigma_x^2 + b^2/sigma_xi^2)/2)).
    """
    x = particle_grid.points
    xi = detector_grid.points
    amp = np.zeros((particle_grid.n_points, detector_grid.n_points))
    for xs, xis in zip(slit_centers(slits.m, slits.a), spot_centers(slits.m, det.b)):
        gx = np.exp(-((x - xs) ** 2) / (4.0 * slits.sigma_x**2))
        gxi = np.exp(-((xi - xis) ** 2) / (4.0 * det.sigma_xi**2))
        amp += gx[:, None] * gxi[None, :]
    return _normalize_joint(amp, particle_grid, detector_grid, COORDINATE)


def _particle_marginal(state: JointState) -> SampledWave:
    wxi = trapezoid_weights(state.detector_grid)
    density = (np.abs(state.amplitudes) ** 2) @ wxi
    return SampledWave(state.particle_grid, density)


def marginal_momentum_density(state: JointState) -> SampledWave:
    """Particle momentum density P~_x(p_x) = Integral |psi~(p_x, p_xi)|^2 dp_xi.

    For the two-slit state this carries the fringe modulation factor
    exp(-b^2 / 2 sigma_xi^2) on cos(2 p_x a); at b = 0 it equals the ideal
    two-slit pattern.
    """
    if state.representation != MOMENTUM:
        raise WrongRepresentationError("marginal_momentum_density needs a momentum-space state")
    return _particle_marginal(state)


def marginal_coordinate_density(state: JointState) -> SampledWave:
    """Particle coordinate density P_x(x) = Integral |psi(x, xi)|^2 dxi."""
    if state.representation != COORDINATE:
        raise WrongRepresentationError("marginal_coordinate_density needs a coordinate-space state")
    return _particle_marginal(state)


def marginal_integral(density: SampledWave) -> float:
    """Trapezoid integral of a marginal density over its own grid."""
    return float(quadrature(density.amplitudes, density.grid).real)
