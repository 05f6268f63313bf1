"""Fermi-level setup and profile assembly for every method on a common grid."""
from dataclasses import dataclass
import math

import numpy as np

from . import density as dens
from .classical import PhaseData, TurningPoints, airy_length, find_turning_points, mid_phase_point, phase_data
from .density import DensityProfile
from .metrics import eta, eta_t
from .potentials import PotentialModel
from .quantization import SpectrumResult, spectrum
from .reference import BoundStateSet, exact_density, exact_ked, solve_auto

__all__ = [
    "FermiSetup",
    "fermi_setup",
    "auto_grid",
    "build_profiles",
    "NUMBER_METHODS",
    "KINETIC_METHODS",
    "LIMIT_SUPPORT",
    "near_capacity",
    "error_scan",
]

NUMBER_METHODS = ("tf", "uniform", "allowed_limit", "evanescent_limit", "exact", "langer_sum")
KINETIC_METHODS = ("tf", "uniform", "evanescent_limit", "exact", "langer_sum", "local_functional")

# regional limits are only meaningful away from the turning points; elsewhere they are NaN
LIMIT_SUPPORT = 1.0


@dataclass(frozen=True)
class FermiSetup:
    potential: PotentialModel
    N: int
    hbar: float
    spectrum: SpectrumResult
    tps: TurningPoints
    x_m: float

    @property
    def E_F(self):
        return self.spectrum.E_F

    @property
    def omega_F(self):
        return self.spectrum.omega_F

    def phase(self, grid) -> PhaseData:
        return phase_data(self.potential, self.E_F, self.omega_F, self.x_m, grid, self.hbar, self.tps)

    def meta(self) -> dict:
        return {
            "N": self.N,
            "hbar": self.hbar,
            "potential": self.potential.label(),
            "E_F": self.E_F,
            "omega_F": self.omega_F,
            "x_m": self.x_m,
            "x_minus": self.tps.x_minus,
            "x_plus": self.tps.x_plus,
        }


def fermi_setup(pot: PotentialModel, N: int, hbar: float = 1.0) -> FermiSetup:
    if not (hbar > 0 and math.isfinite(hbar)):
        raise ValueError(f"hbar must be positive, got {hbar!r}")
    sp = spectrum(pot, N, hbar)
    tps = find_turning_points(pot, sp.E_F)
    x_m = mid_phase_point(pot, sp.E_F, N, hbar, tps)
    return FermiSetup(pot, int(N), float(hbar), sp, tps, x_m)


def auto_grid(setup: FermiSetup, npoints: int = 2001) -> np.ndarray:
    """Uniform grid over ``[x_- - 8 l_-, x_+ + 8 l_+]`` with ``l`` the local Airy length."""
    pot, tps, hbar = setup.potential, setup.tps, setup.hbar
    lo = tps.x_minus - 8.0 * airy_length(pot, tps.x_minus, hbar)
    hi = tps.x_plus + 8.0 * airy_length(pot, tps.x_plus, hbar)
    lo, hi = max(lo, pot.search_window[0]), min(hi, pot.search_window[1])
    return np.linspace(lo, hi, npoints)


def _langer_sum(setup, grid, observable):
    total = np.zeros_like(grid)
    vx = setup.potential.v(grid)
    for j in range(setup.N):
        phi = dens.langer_orbital(setup.potential, j, setup.hbar, grid)
        if observable == "number":
            total += phi * phi
        else:
            E_j = setup.spectrum.levels[j][1]
            total += (E_j - vx) * phi * phi
    return total


def build_profiles(setup: FermiSetup, grid, methods, observable: str = "number",
                   states: BoundStateSet = None, oracle_spacing=None) -> dict:
    """Profiles of ``observable`` for each method in ``methods`` on ``grid``.

    ``states`` supplies precomputed exact bound states; otherwise they are
    solved on an automatic box that covers ``grid``.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) < 2 or not np.all(np.diff(grid) > 0):
        raise ValueError("grid must be a strictly increasing 1-D array with at least two points")
    allowed_methods = NUMBER_METHODS if observable == "number" else KINETIC_METHODS
    bad = [m for m in methods if m not in allowed_methods]
    if bad:
        raise ValueError(f"methods {bad} unavailable for observable {observable!r}; choose from {allowed_methods}")

    ph = setup.phase(grid)
    hbar = setup.hbar
    z = np.asarray(ph.z)
    cache = {}

    def n_sc():
        if "n" not in cache:
            inputs = dens.uniform_inputs(ph)
            cache["inputs"] = inputs
            cache["n"] = dens.uniform_density(inputs)
        return cache["n"]

    out = {}
    for method in methods:
        meta = setup.meta()
        if method == "tf":
            values = dens.tf_density(ph, hbar) if observable == "number" else dens.tf_ked(ph, hbar)
        elif method == "uniform":
            n = n_sc()
            values = n if observable == "number" else dens.uniform_ked(cache["inputs"], n)
        elif method == "local_functional":
            values = dens.local_ked_functional(np.clip(n_sc(), 0.0, None), hbar)
            meta["evaluated_on"] = "uniform"
        elif method == "allowed_limit":
            values = np.full_like(grid, np.nan)
            sel = z >= LIMIT_SUPPORT
            if sel.any():
                values[sel] = dens.allowed_limit_density(_subset(ph, sel), hbar)
            meta["support"] = f"z >= {LIMIT_SUPPORT:g}"
        elif method == "evanescent_limit":
            values = np.full_like(grid, np.nan)
            sel = z <= -LIMIT_SUPPORT
            if sel.any():
                sub = _subset(ph, sel)
                fn = dens.evanescent_limit_density if observable == "number" else dens.evanescent_limit_ked
                values[sel] = fn(sub, hbar)
            meta["support"] = f"z <= -{LIMIT_SUPPORT:g}"
        elif method == "exact":
            if states is None:
                states = solve_auto(setup.potential, setup.N, hbar, cover=(grid[0], grid[-1]), spacing=oracle_spacing)
            prof = exact_density(states, setup.N, grid) if observable == "number" else \
                exact_ked(states, setup.potential, setup.N, grid)
            values = prof.values
            meta.update(prof.meta)
        elif method == "langer_sum":
            values = _langer_sum(setup, grid, observable)
        out[method] = DensityProfile(grid, values, observable, method, setup.N, hbar, setup.potential.label(), meta)
    return out


def _subset(ph: PhaseData, sel) -> PhaseData:
    """Array PhaseData restricted to the boolean mask ``sel``."""
    fields = {}
    for name in PhaseData.__dataclass_fields__:
        val = getattr(ph, name)
        if isinstance(val, np.ndarray) and val.shape == np.shape(ph.x):
            val = val[sel]
        fields[name] = val
    return PhaseData(**fields)


# the Fermi orbit is flagged once its frequency drops below this fraction of the small-oscillation frequency
NEAR_CAPACITY_RATIO = 0.25


def near_capacity(setup: FermiSetup) -> bool:
    """True when the Fermi level sits in the anharmonic top of the well."""
    g = float(setup.potential.v_second(setup.potential.well_minimum[0]))
    return bool(setup.omega_F < NEAR_CAPACITY_RATIO * math.sqrt(g)) if g > 0 else False


def error_scan(pot: PotentialModel, n_values, hbar: float = 1.0, npoints: int = 2001, oracle_spacing=None) -> dict:
    """Error measures against the exact oracle for each N in ``n_values``.

    Returns equal-length columns ``N, E_F, omega_F, eta_tf, eta_uniform,
    eta_t_tf, eta_t_uniform, eta_t_local, norm_uniform, near_capacity``.
    """
    n_values = [int(n) for n in n_values]
    states = solve_auto(pot, max(n_values), hbar, spacing=oracle_spacing) if n_values else None
    cols = {k: [] for k in ("N", "E_F", "omega_F", "eta_tf", "eta_uniform", "eta_t_tf", "eta_t_uniform",
                            "eta_t_local", "norm_uniform", "near_capacity")}
    for N in n_values:
        setup = fermi_setup(pot, N, hbar)
        grid = auto_grid(setup, npoints)
        if grid[0] < states.box[0] or grid[-1] > states.box[1]:
            states = solve_auto(pot, max(n_values), hbar, cover=(grid[0], grid[-1]), spacing=oracle_spacing)
        n = build_profiles(setup, grid, ("tf", "uniform", "exact"), "number", states)
        t = build_profiles(setup, grid, ("tf", "uniform", "exact", "local_functional"), "kinetic", states)
        cols["N"].append(N)
        cols["E_F"].append(setup.E_F)
        cols["omega_F"].append(setup.omega_F)
        cols["eta_tf"].append(eta(n["tf"], n["exact"]))
        cols["eta_uniform"].append(eta(n["uniform"], n["exact"]))
        cols["eta_t_tf"].append(eta_t(t["tf"], t["exact"]))
        cols["eta_t_uniform"].append(eta_t(t["uniform"], t["exact"]))
        cols["eta_t_local"].append(eta_t(t["local_functional"], t["exact"]))
        cols["norm_uniform"].append(n["uniform"].integral())
        cols["near_capacity"].append(near_capacity(setup))
    return cols
