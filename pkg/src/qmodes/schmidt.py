"""Schmidt decomposition of bipartite joint states and the derived
information measures.

The two-slit entangled state admits closed forms: cosine/sine modes for
particle and detector with weights

    lambda_0 = (1 + e_a + e_b + e_a e_b) / (2 (1 + e_a e_b))
    lambda_1 = (1 - e_a - e_b + e_a e_b) / (2 (1 + e_a e_b))

where e_a = exp(-a^2/2 sigma_x^2), e_b = exp(-b^2/2 sigma_xi^2).  Any
sampled joint state is decomposed numerically through an SVD of the
amplitude matrix scaled by the per-sample quadrature weights, which makes
the recovered modes orthonormal under the continuum inner product and the
weights sum to 1.  Measures: entropy S = -sum lambda log2 lambda, mode
count K = 1/sum lambda^2, information I = log2 K.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .interference import DetectorParams, JointState, SlitParams
from .numerics import Grid1D, SampledWave, trapezoid_weights

__all__ = [
    "SchmidtDecomposition",
    "ReducedDensity",
    "InvalidWeightsError",
    "analytic_two_slit_schmidt",
    "numerical_schmidt",
    "entropy",
    "schmidt_number",
    "information",
    "reconstruct_marginal",
    "reduced_density",
    "density_eigensystem",
]

DEFAULT_TRUNCATION = 1e-12
DEGENERACY_TOL = 1e-10

# amplitude matrices this large first go through a pivoted-QR rank reveal
_QR_SHORTCUT_MIN = 512
_QR_CUT = 1e-13


class InvalidWeightsError(ValueError):
    """Weight vector is not a probability distribution."""


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Weights and paired particle/detector modes, weights descending.

    Modes are orthonormal under trapezoid quadrature on their grids.  When
    two retained weights coincide within ~1e-10 the individual modes are
    only defined up to rotations in the degenerate subspace and the
    ``degenerate`` flag is set.
    """

    weights: np.ndarray
    particle_modes: list[SampledWave]
    detector_modes: list[SampledWave]
    truncation_threshold: float
    degenerate: bool = False

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if len(self.particle_modes) != w.size or len(self.detector_modes) != w.size:
            raise ValueError("mode count does not match the number of weights")
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class ReducedDensity:
    """Single-particle density-matrix kernel rho(x, x') on a grid."""

    grid: Grid1D
    matrix: np.ndarray

    def trace(self) -> float:
        w = trapezoid_weights(self.grid)
        return float(np.real(np.sum(np.diag(self.matrix) * w)))


def _validate_weights(weights, tol: float = 1e-6) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise InvalidWeightsError(f"expected a non-empty 1-D weight vector, got shape {w.shape}")
    if np.any(w < -1e-12):
        raise InvalidWeightsError(f"negative weight {w.min():.3e}")
    if abs(w.sum() - 1.0) > tol:
        raise InvalidWeightsError(f"weights sum to {w.sum():.8f}, expected 1")
    return np.clip(w, 0.0, None)


def analytic_two_slit_weights(slits: SlitParams, det: DetectorParams) -> tuple[float, float]:
    """Closed-form (lambda_0, lambda_1) for the two-slit entangled state."""
    e_a = np.exp(-slits.a**2 / (2.0 * slits.sigma_x**2))
    e_b = np.exp(-det.b**2 / (2.0 * det.sigma_xi**2))
    denom = 2.0 * (1.0 + e_a * e_b)
    lam0 = (1.0 + e_a + e_b + e_a * e_b) / denom
    lam1 = (1.0 - e_a - e_b + e_a * e_b) / denom
    return float(lam0), float(lam1)


def _cos_sin_mode(grid: Grid1D, sigma: float, center: float, kind: str) -> SampledWave:
    p = grid.points
    overlap = np.exp(-(center**2) / (2.0 * sigma**2))
    if kind == "cos":
        norm = np.sqrt(2.0 * np.sqrt(2.0) * sigma / (np.sqrt(np.pi) * (1.0 + overlap)))
        values = norm * np.exp(-(sigma**2) * p**2) * np.cos(p * center)
    else:
        norm = np.sqrt(2.0 * np.sqrt(2.0) * sigma / (np.sqrt(np.pi) * (1.0 - overlap)))
        values = norm * np.exp(-(sigma**2) * p**2) * np.sin(p * center)
    return SampledWave(grid, values)


def analytic_two_slit_schmidt(
    slits: SlitParams,
    det: DetectorParams,
    particle_grid: Grid1D,
    detector_grid: Grid1D,
) -> SchmidtDecomposition:
    """Closed-form two-mode decomposition of the two-slit state.

    Mode 0 is the cosine (symmetric) pair, mode 1 the sine (antisymmetric)
    pair, sampled in momentum representation on the supplied grids.  At
    b = 0 the full weight sits in mode 0 and the particle state is pure.
    """
    if slits.m != 2:
        raise ValueError(f"closed forms exist for two slits only, got m={slits.m}")
    lam0, lam1 = analytic_two_slit_weights(slits, det)
    modes_x = [
        _cos_sin_mode(particle_grid, slits.sigma_x, slits.a, "cos"),
        _cos_sin_mode(particle_grid, slits.sigma_x, slits.a, "sin"),
    ]
    modes_xi = [
        _cos_sin_mode(detector_grid, det.sigma_xi, det.b, "cos"),
        _cos_sin_mode(detector_grid, det.sigma_xi, det.b, "sin"),
    ]
    degenerate = abs(lam0 - lam1) < DEGENERACY_TOL
    return SchmidtDecomposition(
        np.array([lam0, lam1]), modes_x, modes_xi, 0.0, degenerate
    )


def _amplitude_svd(b: np.ndarray):
    """Economy SVD, with a pivoted-QR rank reveal for large low-rank matrices.

    Slit states sampled on n x n grids have numerical rank m << n; QR with
    column pivoting exposes that rank so only a thin R block needs the SVD.
    Matrices that turn out not to be low rank fall back to the dense path.
    """
    n, k = b.shape
    if min(n, k) < _QR_SHORTCUT_MIN:
        return np.linalg.svd(b, full_matrices=False)
    q, r, piv = scipy.linalg.qr(b, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if diag[0] == 0.0:
        return np.linalg.svd(b, full_matrices=False)
    keep = min(int(np.sum(diag > diag[0] * _QR_CUT)) + 8, min(n, k))
    if keep > min(n, k) // 4:
        return np.linalg.svd(b, full_matrices=False)
    u_r, s, vh_r = np.linalg.svd(r[:keep, :], full_matrices=False)
    u = q[:, :keep] @ u_r
    vh = np.empty_like(vh_r)
    vh[:, piv] = vh_r
    return u, s, vh


def numerical_schmidt(state: JointState, threshold: float = DEFAULT_TRUNCATION) -> SchmidtDecomposition:
    """Schmidt decomposition of a sampled joint state via SVD.

    The amplitude matrix is scaled by sqrt of the per-sample quadrature
    weights on both axes, so singular values squared are the weights and
    the singular vectors, unscaled, are continuum-orthonormal modes.
    Weights below ``threshold`` are dropped.  The free phase of every mode
    pair is fixed by making the largest-magnitude particle-mode component
    real and positive.
    """
    wx = trapezoid_weights(state.particle_grid)
    wxi = trapezoid_weights(state.detector_grid)
    scaled = state.amplitudes * np.sqrt(wx)[:, None] * np.sqrt(wxi)[None, :]
    if np.iscomplexobj(scaled) and not np.any(scaled.imag):
        scaled = scaled.real
    u, s, vh = _amplitude_svd(scaled)
    lam = s**2
    keep = int(np.sum(lam >= threshold))
    keep = max(keep, 1)
    weights = lam[:keep]
    particle_modes: list[SampledWave] = []
    detector_modes: list[SampledWave] = []
    sqrt_wx = np.sqrt(wx)
    sqrt_wxi = np.sqrt(wxi)
    for k in range(keep):
        mode_x = u[:, k] / sqrt_wx
        mode_xi = vh[k, :].conj() / sqrt_wxi
        peak = np.argmax(np.abs(mode_x))
        if np.abs(mode_x[peak]) > 0:
            phase = mode_x[peak] / np.abs(mode_x[peak])
            mode_x = mode_x / phase
            mode_xi = mode_xi * phase
        particle_modes.append(SampledWave(state.particle_grid, mode_x))
        detector_modes.append(SampledWave(state.detector_grid, mode_xi))
    degenerate = bool(np.any(np.abs(np.diff(weights)) < DEGENERACY_TOL)) if keep > 1 else False
    return SchmidtDecomposition(weights, particle_modes, detector_modes, threshold, degenerate)


def entropy(weights) -> float:
    """Entanglement entropy S = -sum lambda_k log2 lambda_k, with 0 log 0 = 0."""
    w = _validate_weights(weights)
    nz = w[w > 0]
    return float(-np.sum(nz * np.log2(nz)))


def schmidt_number(weights) -> float:
    """Effective number of modes K = 1 / sum lambda_k^2."""
    w = _validate_weights(weights)
    return float(1.0 / np.sum(w**2))


def information(weights) -> float:
    """Schmidt information I = log2 K."""
    return float(np.log2(schmidt_number(weights)))


def reconstruct_marginal(decomp: SchmidtDecomposition) -> SampledWave:
    """Particle marginal as the mode mixture sum_k lambda_k |psi_k|^2.

    Equals the directly marginalized density of the decomposed state,
    point by point, up to the truncation threshold.
    """
    grid = decomp.particle_modes[0].grid
    density = np.zeros(grid.n_points)
    for lam, mode in zip(decomp.weights, decomp.particle_modes):
        density += lam * np.abs(mode.amplitudes) ** 2
    return SampledWave(grid, density)


def reduced_density(decomp: SchmidtDecomposition) -> ReducedDensity:
    """Particle density-matrix kernel sum_k lambda_k psi_k(x) psi_k*(x')."""
    grid = decomp.particle_modes[0].grid
    modes = np.stack([m.amplitudes for m in decomp.particle_modes])
    matrix = np.einsum("k,ki,kj->ij", decomp.weights, modes, modes.conj())
    return ReducedDensity(grid, matrix)


def density_eigensystem(rd: ReducedDensity) -> tuple[np.ndarray, list[SampledWave]]:
    """Eigenweights (descending) and eigenmodes of a reduced density kernel.

    Solves the continuum eigenproblem Integral rho(x, x') psi(x') dx' =
    lambda psi(x) by symmetrizing the kernel with quadrature weights, so
    the returned modes are orthonormal under trapezoid quadrature.
    """
    w = trapezoid_weights(rd.grid)
    sqrt_w = np.sqrt(w)
    sym = sqrt_w[:, None] * rd.matrix * sqrt_w[None, :]
    sym = 0.5 * (sym + sym.conj().T)
    values, vectors = np.linalg.eigh(sym)
    order = np.argsort(values)[::-1]
    values = values[order]
    modes = [SampledWave(rd.grid, vectors[:, k] / sqrt_w) for k in order]
    return values, modes
