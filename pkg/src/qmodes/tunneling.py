"""Two-level treatment of a particle in a symmetric double well, the
delta-coupled pair of such qubits, and the ammonia-inversion application.

The well U(x) = -alpha x^2/2 + beta x^4/4 has minima at +/-a with
a = sqrt(alpha/beta); Gaussian states of width sigma_x^2 = 1/(2 m omega_0)
sit in each, with omega_0 = sqrt(2 alpha / m).  Symmetric/antisymmetric
combinations give ground and excited levels whose splitting E1 - E0 is the
tunnel (inversion) frequency.

Ammonia units: masses in atomic mass units (1.66e-27 kg), lengths in Bohr
radii (0.529 Angstrom), so one model energy unit is hbar^2/(m0 a0^2) =
2.39e-21 J and corresponds to 3607 GHz (4 significant figures; division by
the Planck constant 6.62607015e-34 J s).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .numerics import Grid1D, eigh

__all__ = [
    "DoubleWell",
    "WellDerived",
    "TwoLevelEnergies",
    "TwoQubitSystem",
    "GroundStateEntanglement",
    "Isotope",
    "AMMONIA_ISOTOPES",
    "AMMONIA_EQUILIBRIUM",
    "AMMONIA_SPLITTING",
    "GHZ_PER_MODEL_UNIT",
    "DegenerateWellError",
    "InsufficientGridError",
    "FitError",
    "derive_well",
    "two_level_energies",
    "fit_potential",
    "reduced_mass",
    "splitting_to_frequency",
    "lowest_levels",
    "grid_eigensolve",
    "build_two_qubit",
    "ground_state_entanglement",
]

ENERGY_UNIT_J = 2.39e-21
PLANCK_J_S = 6.62607015e-34
GHZ_PER_MODEL_UNIT = ENERGY_UNIT_J / PLANCK_J_S / 1e9  # 3607 GHz per model unit

# Pyramid height over Bohr radius (0.37 / 0.529 Angstrom) and the 24 GHz
# inversion splitting in model units; both are input data, not recomputed.
AMMONIA_EQUILIBRIUM = 0.699
AMMONIA_SPLITTING = 0.00665

OVERLAP_VALIDITY = 0.01


class DegenerateWellError(ValueError):
    """Wells coincide (a = 0): the antisymmetric combination is singular."""


class InsufficientGridError(ValueError):
    """Eigensolver grid too narrow or too coarse."""


class FitError(ValueError):
    """Potential-parameter fit failed or left the two-level validity regime."""


@dataclass(frozen=True)
class DoubleWell:
    """Quartic double well -alpha x^2/2 + beta x^4/4 for a particle of given mass."""

    alpha: float
    beta: float
    mass: float

    def __post_init__(self):
        for name in ("alpha", "beta", "mass"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")

    def potential(self, x) -> np.ndarray | float:
        x = np.asarray(x, dtype=float)
        out = -self.alpha * x**2 / 2.0 + self.beta * x**4 / 4.0
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class WellDerived:
    """Equilibrium geometry and local-oscillator parameters of a double well."""

    a: float
    u_min: float
    omega0: float
    sigma_x: float
    overlap: float


@dataclass(frozen=True)
class TwoLevelEnergies:
    """Kinetic, potential and total energies of the symmetric/antisymmetric pair."""

    c0_sq: float
    c1_sq: float
    t0: float
    t1: float
    u0: float
    u1: float
    e0: float
    e1: float

    @property
    def splitting(self) -> float:
        return self.e1 - self.e0


@dataclass(frozen=True)
class TwoQubitSystem:
    """Two double-well qubits with contact interaction -g0 delta(x - xi).

    g0 > 0 is attraction, g0 < 0 repulsion.  Basis order (00, 01, 10, 11);
    the interaction fills the corners with h1/h3, the corner anti-diagonal
    and the whole middle 2x2 block with h2.
    """

    energies: TwoLevelEnergies
    g0: float
    h1: float
    h2: float
    h3: float
    h_matrix: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class GroundStateEntanglement:
    """Schmidt number of the two-qubit ground state.

    When the two lowest levels are degenerate the ground vector is not
    unique; both candidate values are reported and ``degenerate`` is set.
    """

    k: float
    degenerate: bool = False
    k_pair: tuple[float, float] | None = None


@dataclass(frozen=True)
class Isotope:
    """Named reduced mass, with the measured inversion frequency when known."""

    name: str
    mass: float
    experimental_ghz: float | None = None


AMMONIA_ISOTOPES = {
    "NH3": Isotope("NH3", 3.0 * 14.0 / 17.0, 24.0),
    "ND3": Isotope("ND3", 6.0 * 14.0 / 20.0, 1.6),
    "NT3": Isotope("NT3", 9.0 * 14.0 / 23.0, 0.306),
}


def derive_well(well: DoubleWell) -> WellDerived:
    """Equilibrium +/-a, well depth, oscillator frequency and Gaussian width.

    a = sqrt(alpha/beta), U_min = -alpha^2/(4 beta), omega0 = sqrt(2 alpha/m),
    sigma_x^2 = 1/(2 m omega0).  Warns when the inter-well overlap
    exp(-a^2/2 sigma_x^2) exceeds 0.01, outside two-level validity.
    """
    a = np.sqrt(well.alpha / well.beta)
    u_min = -well.alpha**2 / (4.0 * well.beta)
    omega0 = np.sqrt(2.0 * well.alpha / well.mass)
    sigma_x = np.sqrt(1.0 / (2.0 * well.mass * omega0))
    overlap = np.exp(-(a**2) / (2.0 * sigma_x**2))
    if overlap > OVERLAP_VALIDITY:
        warnings.warn(
            f"inter-well overlap {overlap:.3g} > {OVERLAP_VALIDITY}; "
            "two-level results are unreliable",
            stacklevel=2,
        )
    return WellDerived(float(a), float(u_min), float(omega0), float(sigma_x), float(overlap))


def two_level_energies(derived: WellDerived, well: DoubleWell) -> TwoLevelEnergies:
    """Closed-form energies of the symmetric (0) and antisymmetric (1) states.

    T0 = C0^2/(8 m sigma^2) [1 - (a^2/sigma^2 - 1) eps]  (eps = overlap),
    T1 with C1^2 and +, and the quartic-well potential expectations U0/U1
    evaluated over the same Gaussian pair.  E = U + T.
    """
    a, sx, m = derived.a, derived.sigma_x, well.mass
    eps = derived.overlap
    if eps >= 1.0 or a == 0.0:
        raise DegenerateWellError("wells coincide; antisymmetric state undefined")
    c0_sq = 1.0 / (1.0 + eps)
    c1_sq = 1.0 / (1.0 - eps)
    q = a**2 / sx**2
    kin = 1.0 / (8.0 * m * sx**2)
    t0 = c0_sq * kin * (1.0 - (q - 1.0) * eps)
    t1 = c1_sq * kin * (1.0 + (q - 1.0) * eps)
    base = -well.alpha / 2.0 * (a**2 + sx**2) + well.beta / 4.0 * (
        a**4 + 6.0 * sx**2 * a**2 + 3.0 * sx**4
    )
    cross = -well.alpha * sx**2 / 2.0 + 3.0 * well.beta * sx**4 / 4.0
    u0 = c0_sq * (base + eps * cross)
    u1 = c1_sq * (base - eps * cross)
    return TwoLevelEnergies(c0_sq, c1_sq, t0, t1, u0, u1, u0 + t0, u1 + t1)


def _splitting_of_alpha(alpha: float, a_target: float, mass: float) -> float:
    well = DoubleWell(alpha, alpha / a_target**2, mass)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        derived = derive_well(well)
        return two_level_energies(derived, well).splitting


def fit_potential(
    a_target: float,
    delta_e_target: float,
    mass: float,
    overlap_limit: float = OVERLAP_VALIDITY,
) -> DoubleWell:
    """Well parameters (alpha, beta) reproducing equilibrium a and splitting E1 - E0.

    The constraint beta = alpha / a^2 pins the equilibrium exactly and the
    splitting is solved by 1-D bracketing and root refinement in alpha
    (the splitting decreases monotonically with alpha at fixed a).  The
    fitted well must satisfy the two-level validity overlap < 0.01.
    """
    if not (a_target > 0 and delta_e_target > 0 and mass > 0):
        raise ValueError("targets and mass must be positive")

    def objective(alpha: float) -> float:
        return _splitting_of_alpha(alpha, a_target, mass) - delta_e_target

    lo = 1e-4
    if objective(lo) < 0:
        raise FitError(f"splitting target {delta_e_target} unreachable: too large at alpha={lo}")
    hi = 1.0
    for _ in range(80):
        if objective(hi) < 0:
            break
        hi *= 2.0
    else:
        raise FitError(f"no bracket found for splitting target {delta_e_target}")
    alpha = brentq(objective, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    well = DoubleWell(alpha, alpha / a_target**2, mass)
    derived = derive_well(well)
    if derived.overlap >= overlap_limit:
        raise FitError(
            f"fitted well has overlap {derived.overlap:.3g} >= {overlap_limit}; "
            "two-level model invalid"
        )
    achieved = two_level_energies(derived, well).splitting
    if abs(achieved - delta_e_target) > 1e-10 * delta_e_target:
        raise FitError(f"root refinement stalled: achieved {achieved}, wanted {delta_e_target}")
    return well


def reduced_mass(m_a: float, m_b: float) -> float:
    """m_a m_b / (m_a + m_b)."""
    if not (m_a > 0 and m_b > 0):
        raise ValueError("masses must be positive")
    return m_a * m_b / (m_a + m_b)


def splitting_to_frequency(delta_e: float) -> float:
    """Transition frequency in GHz for a splitting in model energy units."""
    return delta_e * GHZ_PER_MODEL_UNIT


def lowest_levels(potential_values, mass: float, grid: Grid1D, n_levels: int = 2) -> np.ndarray:
    """Lowest eigenvalues of -(1/2m) d^2/dx^2 + U(x) by central differences.

    Dirichlet walls at the grid ends; the potential is sampled on the grid.
    """
    u = np.asarray(potential_values, dtype=float)
    if u.shape[0] != grid.n_points:
        raise ValueError("potential samples do not match the grid")
    dx = grid.spacing
    diag = 1.0 / (mass * dx**2) + u
    off = np.full(grid.n_points - 1, -1.0 / (2.0 * mass * dx**2))
    values = eigh_tridiagonal(diag, off, select="i", select_range=(0, n_levels - 1))[0]
    return values


def grid_eigensolve(well: DoubleWell, grid: Grid1D) -> tuple[float, float]:
    """Two lowest double-well levels from the finite-difference Hamiltonian.

    Independent of the two-level closed forms; the grid must span at least
    [-2a, 2a] with at least 512 points.
    """
    a = np.sqrt(well.alpha / well.beta)
    if grid.x_min > -2.0 * a or grid.x_max < 2.0 * a:
        raise InsufficientGridError(
            f"grid [{grid.x_min:.3g}, {grid.x_max:.3g}] does not span [-2a, 2a] = "
            f"[{-2 * a:.3g}, {2 * a:.3g}]"
        )
    if grid.n_points < 512:
        raise InsufficientGridError(f"need at least 512 points, got {grid.n_points}")
    e0, e1 = lowest_levels(well.potential(grid.points), well.mass, grid, n_levels=2)
    return float(e0), float(e1)


def build_two_qubit(energies: TwoLevelEnergies, derived: WellDerived, g0: float) -> TwoQubitSystem:
    """Hamiltonian of two delta-coupled double-well qubits.

    H = diag(2E0, E0+E1, E0+E1, 2E1) + h with

        h1 = -C0^4 g0/(4 sqrt(pi) sigma) (1 + 4 e3 + 3 e4)
        h2 = -C0^2 C1^2 g0/(4 sqrt(pi) sigma) (1 - e4)
        h3 = -C1^4 g0/(4 sqrt(pi) sigma) (1 - 4 e3 + 3 e4)

    where e3 = exp(-3a^2/4 sigma^2), e4 = exp(-a^2/sigma^2).  As the
    overlap vanishes all three tend to -g0/(4 sqrt(pi) sigma).
    """
    a, sx = derived.a, derived.sigma_x
    e3 = np.exp(-3.0 * a**2 / (4.0 * sx**2))
    e4 = np.exp(-(a**2) / sx**2)
    scale = g0 / (4.0 * np.sqrt(np.pi) * sx)
    h1 = -energies.c0_sq**2 * scale * (1.0 + 4.0 * e3 + 3.0 * e4)
    h2 = -energies.c0_sq * energies.c1_sq * scale * (1.0 - e4)
    h3 = -energies.c1_sq**2 * scale * (1.0 - 4.0 * e3 + 3.0 * e4)
    e0, e1 = energies.e0, energies.e1
    h = np.array(
        [
            [2.0 * e0 + h1, 0.0, 0.0, h2],
            [0.0, e0 + e1 + h2, h2, 0.0],
            [0.0, h2, e0 + e1 + h2, 0.0],
            [h2, 0.0, 0.0, 2.0 * e1 + h3],
        ]
    )
    return TwoQubitSystem(energies, g0, float(h1), float(h2), float(h3), h)


def _pair_schmidt_number(vector: np.ndarray) -> float:
    c = vector.reshape(2, 2)
    delta = abs(c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0]) ** 2
    return float(1.0 / (1.0 - 2.0 * delta))


def ground_state_entanglement(
    system: TwoQubitSystem, degeneracy_tol: float = 1e-12
) -> GroundStateEntanglement:
    """Schmidt number K = 1/(1 - 2 Delta) of the two-qubit ground state.

    Delta = |c00 c11 - c01 c10|^2 from the lowest eigenvector of H.  K runs
    from 1 (product state) to 2 (Bell-like state).
    """
    values, vectors = eigh(system.h_matrix)
    scale = max(1.0, float(np.max(np.abs(values))))
    k0 = _pair_schmidt_number(vectors[:, 0])
    if values[1] - values[0] < degeneracy_tol * scale:
        k1 = _pair_schmidt_number(vectors[:, 1])
        return GroundStateEntanglement(k0, degenerate=True, k_pair=(k0, k1))
    return GroundStateEntanglement(k0)
