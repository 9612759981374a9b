"""Scenario catalog: deterministic reproduction of the reference figure
data and parametric runs of every subsystem.

Each scenario writes plot-ready two-column (or multi-column) CSV/JSON data
files plus a JSON run report with the computed scalars.  Output is
byte-identical across repeated runs with the same configuration; the wall
time is echoed to the console but kept out of the serialized report.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import coherence, interference, schmidt, tomography, tunneling
from .numerics import Grid1D, make_grid, quadrature

__all__ = ["ScenarioConfig", "RunReport", "run", "list_scenarios", "SCENARIOS"]

FLOAT_FORMAT = "%.12g"


@dataclass
class ScenarioConfig:
    """A scenario name plus its numeric parameters and output destination."""

    name: str
    out_dir: Path
    fmt: str = "csv"
    grid_points: int = 1024
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.out_dir = Path(self.out_dir)
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.fmt!r}")
        if self.grid_points < 16:
            raise ValueError(f"grid_points too small: {self.grid_points}")


@dataclass
class RunReport:
    """Echo of the run: scalars traceable to module operations, file manifest."""

    scenario: str
    parameters: dict
    scalars: dict
    files: list
    wall_time_s: float

    def to_dict(self) -> dict:
        # wall time deliberately excluded: reports must be byte-stable
        return {
            "scenario": self.scenario,
            "parameters": self.parameters,
            "scalars": self.scalars,
            "files": self.files,
        }


def _sig6(value: float) -> float:
    return float(f"{float(value):.6g}")


class _Emitter:
    def __init__(self, config: ScenarioConfig):
        self.config = config
        self.files: list[str] = []
        config.out_dir.mkdir(parents=True, exist_ok=True)

    def table(self, stem: str, names: list[str], columns: list[np.ndarray]) -> str:
        if self.config.fmt == "csv":
            name = f"{stem}.csv"
            path = self.config.out_dir / name
            rows = np.column_stack(columns)
            lines = [",".join(names)]
            for row in rows:
                lines.append(",".join(FLOAT_FORMAT % v for v in row))
            path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
        else:
            name = f"{stem}.json"
            path = self.config.out_dir / name
            data = {"columns": names, "rows": [[float(v) for v in row] for row in zip(*columns)]}
            tomography.save_json(path, data)
        self.files.append(name)
        return name

    def json_file(self, stem: str, data: dict) -> str:
        name = f"{stem}.json"
        tomography.save_json(self.config.out_dir / name, data)
        self.files.append(name)
        return name


def _momentum_grid(sigma: float, n: int) -> Grid1D:
    # envelope exp(-sigma^2 p^2): 9 momentum sigmas leave amplitude < 1e-8
    return make_grid(0.0, 9.0 / (2.0 * sigma), n)


def _coordinate_grid(m: int, a: float, sigma: float, n: int) -> Grid1D:
    extent = (m - 1) * a
    return make_grid(0.0, extent + 8.0 * sigma, n)


def _slit_config(params: dict) -> tuple[interference.SlitParams, interference.DetectorParams]:
    slits = interference.SlitParams(
        a=params["a"], sigma_x=params["sigma_x"], m=int(params["m"])
    )
    det = interference.DetectorParams(b=params["b"], sigma_xi=params["sigma_xi"])
    return slits, det


def _decompose(params: dict, n: int):
    slits, det = _slit_config(params)
    pgrid = _momentum_grid(slits.sigma_x, n)
    dgrid = _momentum_grid(det.sigma_xi, n)
    state = interference.joint_state_momentum(slits, det, pgrid, dgrid)
    return slits, det, state, schmidt.numerical_schmidt(state)


# ---------------------------------------------------------------------------
# runners


def _run_slits(config: ScenarioConfig, emit: _Emitter) -> dict:
    params = config.params
    slits = interference.SlitParams(a=params["a"], sigma_x=params["sigma_x"], m=int(params["m"]))
    det = interference.DetectorParams(b=0.0, sigma_xi=params["sigma_xi"])
    n = config.grid_points
    pgrid = _momentum_grid(slits.sigma_x, n)
    xgrid = _coordinate_grid(slits.m, slits.a, slits.sigma_x, n)
    mom = interference.marginal_momentum_density(
        interference.joint_state_momentum(slits, det, pgrid, _momentum_grid(det.sigma_xi, n))
    )
    coord = interference.marginal_coordinate_density(
        interference.joint_state_coordinate(slits, det, xgrid, _coordinate_grid(1, 0.0, det.sigma_xi, n))
    )
    emit.table(f"{config.name}_momentum", ["p_x", "density"], [pgrid.points, mom.amplitudes])
    emit.table(f"{config.name}_coordinate", ["x", "density"], [xgrid.points, coord.amplitudes])
    scalars = {
        "momentum_integral": quadrature(mom.amplitudes, pgrid),
        "coordinate_integral": quadrature(coord.amplitudes, xgrid),
    }
    if slits.m == 2:
        scalars["c_squared"] = interference.two_slit_norm(slits.a, slits.sigma_x)
    return scalars


def _run_entangled(config: ScenarioConfig, emit: _Emitter) -> dict:
    params = config.params
    slits, det, state, decomp = _decompose(params, config.grid_points)
    marg = interference.marginal_momentum_density(state)
    emit.table(
        f"{config.name}_marginal_momentum",
        ["p_x", "density"],
        [state.particle_grid.points, marg.amplitudes],
    )
    xgrid = _coordinate_grid(slits.m, slits.a, slits.sigma_x, config.grid_points)
    dxgrid = _coordinate_grid(slits.m, det.b, det.sigma_xi, config.grid_points)
    coord = interference.marginal_coordinate_density(
        interference.joint_state_coordinate(slits, det, xgrid, dxgrid)
    )
    emit.table(
        f"{config.name}_marginal_coordinate", ["x", "density"], [xgrid.points, coord.amplitudes]
    )
    scalars = {
        "schmidt_number": schmidt.schmidt_number(decomp.weights),
        "entropy": schmidt.entropy(decomp.weights),
        "fringe_modulation": np.exp(-det.b**2 / (2.0 * det.sigma_xi**2)),
        "visibility": coherence.visibility_from_intensity(marg, slits.a, slits.sigma_x)
        if slits.m == 2
        else None,
        "marginal_integral": quadrature(marg.amplitudes, state.particle_grid),
    }
    return {k: v for k, v in scalars.items() if v is not None}


def _run_schmidt(config: ScenarioConfig, emit: _Emitter) -> dict:
    params = config.params
    slits, det, state, decomp = _decompose(params, config.grid_points)
    pgrid = state.particle_grid
    marg = interference.marginal_momentum_density(state)
    mixture = schmidt.reconstruct_marginal(decomp)
    names = ["p_x"] + [f"mode{k}_density" for k in range(len(decomp.weights))]
    cols = [pgrid.points] + [np.abs(m.amplitudes) ** 2 for m in decomp.particle_modes]
    emit.table(f"{config.name}_modes", names, cols)
    emit.table(
        f"{config.name}_marginal",
        ["p_x", "marginal", "mode_mixture"],
        [pgrid.points, marg.amplitudes, mixture.amplitudes],
    )
    emit.table(
        f"{config.name}_weights",
        ["k", "weight"],
        [np.arange(len(decomp.weights), dtype=float), decomp.weights],
    )
    scalars = {
        "schmidt_number": schmidt.schmidt_number(decomp.weights),
        "entropy": schmidt.entropy(decomp.weights),
        "information": schmidt.information(decomp.weights),
        "mode_count": float(len(decomp.weights)),
    }
    for k, lam in enumerate(decomp.weights[:8]):
        scalars[f"lambda{k}"] = lam
    if slits.m == 2:
        lam0, lam1 = schmidt.analytic_two_slit_weights(slits, det)
        scalars["lambda0_analytic"] = lam0
        scalars["lambda1_analytic"] = lam1
        scalars["analytic_numeric_gap"] = max(
            abs(lam0 - decomp.weights[0]), abs(lam1 - decomp.weights[1])
        )
    return scalars


def _run_fig4(config: ScenarioConfig, emit: _Emitter) -> dict:
    params = config.params
    n = config.grid_points
    b_values = (0.0, 0.3, 0.7, 1.5)
    slits = interference.SlitParams(a=params["a"], sigma_x=params["sigma_x"], m=int(params["m"]))
    pgrid = _momentum_grid(slits.sigma_x, n)
    names = ["p_x"]
    cols = [pgrid.points]
    scalars = {}
    for b in b_values:
        det = interference.DetectorParams(b=b, sigma_xi=params["sigma_xi"])
        state = interference.joint_state_momentum(
            slits, det, pgrid, _momentum_grid(det.sigma_xi, n)
        )
        marg = interference.marginal_momentum_density(state)
        names.append(f"density_b_{b:g}")
        cols.append(marg.amplitudes)
        decomp = schmidt.numerical_schmidt(state)
        scalars[f"schmidt_number_b_{b:g}"] = schmidt.schmidt_number(decomp.weights)
    emit.table(f"{config.name}_intensity", names, cols)
    return scalars


def _run_source(config: ScenarioConfig, emit: _Emitter) -> dict:
    params = config.params
    n = config.grid_points
    slits = interference.SlitParams(a=params["a"], sigma_x=params["sigma_x"], m=2)
    pgrid = _momentum_grid(slits.sigma_x, n)
    p = pgrid.points
    env_sq = np.exp(-2.0 * slits.sigma_x**2 * p**2)
    y_values = (0.0, 0.0625, 0.125, 0.1875, 0.25)
    names = ["p_x"]
    cols = [p]
    scalars = {}
    for y in y_values:
        v = coherence.source_visibility(y)
        pattern = env_sq * (1.0 + v * np.cos(2.0 * p * slits.a))
        pattern = pattern / quadrature(pattern, pgrid)
        names.append(f"density_y_{y:g}")
        cols.append(pattern)
        scalars[f"visibility_y_{y:g}"] = v
        scalars[f"schmidt_number_y_{y:g}"] = coherence.source_schmidt(y)
    emit.table(f"{config.name}_intensity", names, cols)
    return scalars


def _run_coupling_curve(config: ScenarioConfig, emit: _Emitter) -> dict:
    y = np.linspace(0.0, 0.5, 257)
    v = np.array([coherence.source_visibility(t) for t in y])
    k = np.array([coherence.source_schmidt(t) for t in y])
    emit.table(f"{config.name}_curve", ["y", "visibility", "schmidt_number"], [y, v, k])
    return {
        "visibility_y0": v[0],
        "schmidt_number_y0": k[0],
        "visibility_y025": coherence.source_visibility(0.25),
        "schmidt_number_y025": coherence.source_schmidt(0.25),
    }


def _run_coherence(config: ScenarioConfig, emit: _Emitter) -> dict:
    params = config.params
    n = config.grid_points
    slits = interference.SlitParams(a=params["a"], sigma_x=params["sigma_x"], m=2)
    pgrid = _momentum_grid(slits.sigma_x, n)
    phis = np.linspace(0.0, np.pi / 2.0, 17)
    rows = {"phi": [], "visibility": [], "schmidt_number": [], "schmidt_from_v": []}
    for phi in phis:
        state = coherence.qubit_coherence_state(coherence.CoherenceModel(phi, slits), pgrid)
        marg = interference.marginal_momentum_density(state)
        v = coherence.visibility_from_intensity(marg, slits.a, slits.sigma_x)
        k = schmidt.schmidt_number(schmidt.numerical_schmidt(state).weights)
        rows["phi"].append(phi)
        rows["visibility"].append(v)
        rows["schmidt_number"].append(k)
        rows["schmidt_from_v"].append(coherence.k_from_v(v))
    emit.table(
        f"{config.name}_sweep",
        list(rows),
        [np.asarray(rows[k]) for k in rows],
    )
    gap = max(abs(a - b) for a, b in zip(rows["schmidt_number"], rows["schmidt_from_v"]))
    phi0 = params.get("phi", np.pi / 8.0)
    state = coherence.qubit_coherence_state(coherence.CoherenceModel(phi0, slits), pgrid)
    marg = interference.marginal_momentum_density(state)
    v0 = coherence.visibility_from_intensity(marg, slits.a, slits.sigma_x)
    report = coherence.visibility_report(v0)
    return {
        "phi": phi0,
        "visibility": report.v,
        "schmidt_number": report.k,
        "lambda0": report.lambda0,
        "lambda1": report.lambda1,
        "entropy": report.s,
        "max_coupling_gap": gap,
    }


def _ammonia_rows(isotopes, fit_mass: float, n_grid: int):
    well = tunneling.fit_potential(
        tunneling.AMMONIA_EQUILIBRIUM, tunneling.AMMONIA_SPLITTING, fit_mass
    )
    rows = []
    for iso in isotopes:
        iso_well = tunneling.DoubleWell(well.alpha, well.beta, iso.mass)
        derived = tunneling.derive_well(iso_well)
        energies = tunneling.two_level_energies(derived, iso_well)
        grid = make_grid(0.0, 3.0 * derived.a, n_grid)
        fd_e0, fd_e1 = tunneling.grid_eigensolve(iso_well, grid)
        rows.append(
            {
                "isotope": iso.name,
                "mass": iso.mass,
                "overlap": derived.overlap,
                "delta_e": energies.splitting,
                "frequency_ghz": tunneling.splitting_to_frequency(energies.splitting),
                "fd_delta_e": fd_e1 - fd_e0,
                "fd_frequency_ghz": tunneling.splitting_to_frequency(fd_e1 - fd_e0),
                "experimental_ghz": iso.experimental_ghz,
            }
        )
    return well, rows


def _run_ammonia(config: ScenarioConfig, emit: _Emitter) -> dict:
    params = config.params
    choice = str(params.get("isotope", "all"))
    table = tunneling.AMMONIA_ISOTOPES
    if choice != "all":
        if choice not in table:
            raise ValueError(f"unknown isotope {choice!r}; pick one of {sorted(table)} or all")
        isotopes = [table[choice]]
    else:
        isotopes = [table[k] for k in ("NH3", "ND3", "NT3")]
    fit_mass = params.get("mass", table["NH3"].mass)
    well, rows = _ammonia_rows(isotopes, fit_mass, max(config.grid_points, 2048))
    names = list(rows[0])
    names.remove("isotope")
    cols = [np.array([float(r[k]) for r in rows]) for k in names]
    emit.json_file(
        f"{config.name}_table",
        {"isotopes": [r["isotope"] for r in rows], "columns": names, "rows": [
            [float(r[k]) for k in names] for r in rows
        ]},
    )
    emit.table(f"{config.name}_splittings", names, cols)
    scalars = {"alpha": well.alpha, "beta": well.beta, "fit_mass": fit_mass}
    for r in rows:
        tag = r["isotope"]
        scalars[f"frequency_ghz_{tag}"] = r["frequency_ghz"]
        scalars[f"overlap_{tag}"] = r["overlap"]
        scalars[f"fd_frequency_ghz_{tag}"] = r["fd_frequency_ghz"]
        if r["experimental_ghz"] is not None:
            scalars[f"experimental_ghz_{tag}"] = r["experimental_ghz"]
    return scalars


def _run_qubits(config: ScenarioConfig, emit: _Emitter) -> dict:
    params = config.params
    fit_mass = params.get("mass", tunneling.AMMONIA_ISOTOPES["NH3"].mass)
    well = tunneling.fit_potential(
        tunneling.AMMONIA_EQUILIBRIUM, tunneling.AMMONIA_SPLITTING, fit_mass
    )
    derived = tunneling.derive_well(well)
    energies = tunneling.two_level_energies(derived, well)
    contact = 4.0 * np.sqrt(np.pi) * derived.sigma_x
    g_max = params.get("g0_max", 300.0 * energies.splitting * contact)
    n_sweep = int(params.get("n_sweep", 101))
    g_values = np.linspace(-g_max, g_max, n_sweep)
    k_values = np.array(
        [
            tunneling.ground_state_entanglement(
                tunneling.build_two_qubit(energies, derived, g)
            ).k
            for g in g_values
        ]
    )
    emit.table(
        f"{config.name}_sweep",
        ["g0", "reduced_coupling", "schmidt_number"],
        [g_values, g_values / contact / energies.splitting, k_values],
    )
    mid = n_sweep // 2
    return {
        "delta_e": energies.splitting,
        "sigma_x": derived.sigma_x,
        "g0_max": g_max,
        "schmidt_number_g0_0": k_values[mid],
        "schmidt_number_attraction_max": k_values[-1],
        "schmidt_number_repulsion_max": k_values[0],
    }


def _run_tomography(config: ScenarioConfig, emit: _Emitter) -> dict:
    params = config.params
    n_points = int(params.get("n_points", 32))
    slits = interference.SlitParams(a=params["a"], sigma_x=params["sigma_x"], m=2)

    populations = tomography.ProtocolMatrix(
        np.array([[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]], dtype=complex), s=2
    )
    analysis = tomography.analyze(populations)
    pure = tomography.reconstruct(analysis, np.array([1.0, 0.0]))
    mixed = tomography.reconstruct(analysis, np.array([0.5, 0.5]))
    scan = tomography.scan_completions(analysis, np.array([0.5, 0.5]))
    emit.json_file(f"{config.name}_populations_protocol", tomography.protocol_to_dict(populations))
    emit.json_file(f"{config.name}_populations_pure_report", tomography.report_to_dict(pure))
    emit.json_file(f"{config.name}_populations_mixed_report", tomography.report_to_dict(mixed))

    protocol = tomography.interference_protocol(slits, n_points)
    ianalysis = tomography.analyze(protocol)
    rho_sym = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    p_data = np.real(protocol.b @ tomography.vectorize(rho_sym))
    ireport = tomography.reconstruct(ianalysis, p_data)
    emit.json_file(f"{config.name}_interference_protocol", tomography.protocol_to_dict(protocol))
    emit.json_file(
        f"{config.name}_interference_measurements", tomography.measurements_to_dict(p_data)
    )
    emit.json_file(f"{config.name}_interference_report", tomography.report_to_dict(ireport))
    return {
        "populations_rank": float(analysis.rank),
        "pure_k_max": pure.k_max,
        "pure_class": pure.completeness_class,
        "mixed_k_max": mixed.k_max,
        "scan_purity_min": scan.purity_min,
        "scan_purity_max": scan.purity_max,
        "scan_count": float(scan.count),
        "interference_rank": float(ianalysis.rank),
        "interference_k_max": ireport.k_max,
        "interference_residual": ireport.residual,
    }


# ---------------------------------------------------------------------------
# catalog

_TWO_SLIT_DEFAULTS = {"m": 2, "a": 5.0, "b": 0.5, "sigma_x": 0.5, "sigma_xi": 0.5}


@dataclass(frozen=True)
class _Scenario:
    summary: str
    runner: object
    defaults: dict


SCENARIOS: dict[str, _Scenario] = {
    "fig1": _Scenario(
        "two-slit coordinate and momentum densities (a=5, sigma_x=0.5)",
        _run_slits,
        {"m": 2, "a": 5.0, "sigma_x": 0.5, "sigma_xi": 0.5},
    ),
    "fig2": _Scenario(
        "which-way damping of the two-slit fringes (b=0.7 marginal)",
        _run_entangled,
        {**_TWO_SLIT_DEFAULTS, "b": 0.7},
    ),
    "fig3": _Scenario(
        "two-slit Schmidt modes and weights (a=5, b=0.5 reference case)",
        _run_schmidt,
        dict(_TWO_SLIT_DEFAULTS),
    ),
    "fig4": _Scenario(
        "four-slit fringes at several particle-detector couplings",
        _run_fig4,
        {"m": 4, "a": 5.0, "sigma_x": 0.5, "sigma_xi": 0.5},
    ),
    "fig5": _Scenario(
        "five-slit Schmidt modes and weights (a=5, b=0.5 reference case)",
        _run_schmidt,
        {**_TWO_SLIT_DEFAULTS, "m": 5},
    ),
    "fig6-data": _Scenario(
        "fringe patterns for finite source sizes y (uniform-source model)",
        _run_source,
        {"a": 5.0, "sigma_x": 0.5},
    ),
    "fig7": _Scenario(
        "visibility and Schmidt number versus source size y",
        _run_coupling_curve,
        {},
    ),
    "fig10": _Scenario(
        "ground-state entanglement versus contact coupling g0 (ammonia qubits)",
        _run_qubits,
        {},
    ),
    "ammonia": _Scenario(
        "inversion splittings of NH3/ND3/NT3 from the fitted double well",
        _run_ammonia,
        {"isotope": "all"},
    ),
    "tomography-demo": _Scenario(
        "population-only and coordinate+momentum protocols with K_max bounds",
        _run_tomography,
        {"a": 5.0, "sigma_x": 0.5, "n_points": 32},
    ),
    "slits": _Scenario(
        "m-slit densities without which-way coupling (parametric)",
        _run_slits,
        {"m": 2, "a": 5.0, "sigma_x": 0.5, "sigma_xi": 0.5},
    ),
    "entangled": _Scenario(
        "entangled particle-detector marginals (parametric)",
        _run_entangled,
        dict(_TWO_SLIT_DEFAULTS),
    ),
    "schmidt": _Scenario(
        "Schmidt decomposition of the m-slit state (parametric)",
        _run_schmidt,
        dict(_TWO_SLIT_DEFAULTS),
    ),
    "coherence": _Scenario(
        "qubit coherence model: visibility-Schmidt coupling sweep",
        _run_coherence,
        {"a": 5.0, "sigma_x": 0.5, "phi": np.pi / 8.0},
    ),
    "qubits": _Scenario(
        "two-qubit ground-state entanglement sweep (parametric)",
        _run_qubits,
        {},
    ),
    "tomography": _Scenario(
        "measurement-protocol adequacy/completeness demo (parametric)",
        _run_tomography,
        {"a": 5.0, "sigma_x": 0.5, "n_points": 32},
    ),
}


def list_scenarios() -> dict[str, str]:
    """Scenario names with one-line summaries."""
    return {name: sc.summary for name, sc in SCENARIOS.items()}


def run(config: ScenarioConfig) -> RunReport:
    """Execute a scenario: write its data files and the JSON run report."""
    if config.name not in SCENARIOS:
        raise ValueError(f"unknown scenario {config.name!r}; see list_scenarios()")
    scenario = SCENARIOS[config.name]
    params = dict(scenario.defaults)
    unknown = set(config.params) - set(params)
    allowed_extra = {"isotope", "mass", "g0_max", "n_sweep", "phi", "n_points"}
    bad = {k for k in unknown if k not in allowed_extra}
    if bad:
        raise ValueError(f"unknown parameters for {config.name!r}: {sorted(bad)}")
    params.update(config.params)
    config = ScenarioConfig(config.name, config.out_dir, config.fmt, config.grid_points, params)

    start = time.perf_counter()
    emit = _Emitter(config)
    scalars = scenario.runner(config, emit)
    wall = time.perf_counter() - start

    clean_params = {k: (v if isinstance(v, str) else _sig6(v)) for k, v in params.items()}
    clean_scalars = {k: (v if isinstance(v, str) else _sig6(v)) for k, v in scalars.items()}
    report = RunReport(config.name, clean_params, clean_scalars, emit.files, wall)
    tomography.save_json(config.out_dir / f"{config.name}_report.json", report.to_dict())
    return report
