"""Exact reference: finite-difference bound states and the densities built from them.

The Hamiltonian ``-hbar^2/2 d^2/dx^2 + v`` is discretised with the
three-point second difference on a uniform grid with Dirichlet walls and
diagonalised by a symmetric tridiagonal eigensolver.  The kinetic-energy
density is the local-momentum form

    t(x) = sum_j (E_j - v(x)) |phi_j(x)|^2,

not ``sum_j |phi_j'|^2 / 2``; the two differ pointwise (this one is
negative beyond the turning points) but share the same integral.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import eigh_tridiagonal

from .classical import airy_length, find_turning_points
from .density import DensityProfile
from .potentials import PotentialModel
from .quantization import capacity, wkb_level

__all__ = [
    "BoxTooSmallError",
    "BoundStateSet",
    "solve_box",
    "auto_box",
    "solve_auto",
    "exact_density",
    "exact_ked",
    "analytic_levels",
    "WALL_TAIL",
]

WALL_TAIL = 1e-8
MIN_POINTS = 500


class BoxTooSmallError(ValueError):
    """An orbital has not decayed by the time it reaches the box wall."""


@dataclass(frozen=True)
class BoundStateSet:
    grid: np.ndarray  # includes both wall points
    orbitals: np.ndarray  # shape (nstates, len(grid)); zero on the walls
    energies: np.ndarray
    box: tuple
    spacing: float
    hbar: float
    potential: PotentialModel

    @property
    def nstates(self) -> int:
        return len(self.energies)

    def orbital_on(self, j: int, x):
        """Orbital ``j`` spline-interpolated onto ``x``; zero outside the box."""
        x = np.asarray(x, dtype=float)
        spline = CubicSpline(self.grid, self.orbitals[j])
        inside = (x >= self.box[0]) & (x <= self.box[1])
        return np.where(inside, spline(np.clip(x, *self.box)), 0.0)


def solve_box(pot: PotentialModel, box, npoints: int, nstates: int, hbar: float = 1.0) -> BoundStateSet:
    """Lowest ``nstates`` eigenpairs on ``npoints`` uniform points spanning ``box``.

    Raises :class:`BoxTooSmallError` when any orbital's amplitude next to a
    wall exceeds ``WALL_TAIL`` times its maximum.
    """
    lo, hi = map(float, box)
    if not hi > lo:
        raise ValueError(f"box must satisfy lo < hi, got {box!r}")
    if npoints < MIN_POINTS:
        raise ValueError(f"npoints must be >= {MIN_POINTS}, got {npoints}")
    if nstates < 1 or nstates > npoints - 2:
        raise ValueError(f"nstates out of range: {nstates}")
    grid = np.linspace(lo, hi, npoints)
    h = grid[1] - grid[0]
    inner = grid[1:-1]
    kin = hbar * hbar / (2.0 * h * h)
    diag = 2.0 * kin + pot.v(inner)
    off = np.full(len(inner) - 1, -kin)
    energies, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, nstates - 1))
    orbitals = np.zeros((nstates, npoints))
    orbitals[:, 1:-1] = vecs.T / math.sqrt(h)
    for j in range(nstates):
        # fix the sign so every orbital starts positive on the left
        k = int(np.argmax(np.abs(orbitals[j]) > 1e-3 * np.abs(orbitals[j]).max()))
        if orbitals[j, k] < 0:
            orbitals[j] = -orbitals[j]
        peak = np.abs(orbitals[j]).max()
        tail = max(abs(orbitals[j, 1]), abs(orbitals[j, -2]))
        if tail > WALL_TAIL * peak:
            raise BoxTooSmallError(
                f"orbital {j} has wall amplitude {tail / peak:.2e} of its peak in box [{lo:g}, {hi:g}]"
            )
    return BoundStateSet(grid, orbitals, energies, (lo, hi), h, float(hbar), pot)


def auto_box(pot: PotentialModel, nstates: int, hbar: float = 1.0, cover=None):
    """Initial box and spacing for ``nstates`` levels.

    The box spans the classical region of the highest level plus 12 Airy
    lengths on each side (and ``cover``, if given); the spacing resolves the
    largest local momentum with ``p h / hbar <= 0.005``.
    """
    cap = capacity(pot, hbar)
    if nstates > cap["bound_states"]:
        raise ValueError(f"{pot.label()} has {cap['bound_states']} bound states; asked for {nstates}")
    E = wkb_level(pot, nstates - 1, hbar)
    tps = find_turning_points(pot, E)
    lo = tps.x_minus - 12.0 * airy_length(pot, tps.x_minus, hbar)
    hi = tps.x_plus + 12.0 * airy_length(pot, tps.x_plus, hbar)
    if cover is not None:
        lo, hi = min(lo, cover[0]), max(hi, cover[1])
    p_max = math.sqrt(2.0 * (E - pot.well_minimum[1]))
    h = 0.005 * hbar / p_max
    return (lo, hi), h


def solve_auto(pot: PotentialModel, nstates: int, hbar: float = 1.0, cover=None, spacing=None) -> BoundStateSet:
    """:func:`solve_box` on an automatically sized box, widened up to four times."""
    (lo, hi), h = auto_box(pot, nstates, hbar, cover)
    h = spacing or h
    x0 = pot.well_minimum[0]
    for _ in range(5):
        npoints = max(MIN_POINTS, int(math.ceil((hi - lo) / h)) + 1)
        try:
            return solve_box(pot, (lo, hi), npoints, nstates, hbar)
        except BoxTooSmallError:
            lo, hi = x0 - 2.0 * (x0 - lo), x0 + 2.0 * (hi - x0)
    raise BoxTooSmallError(f"orbitals still reach the wall after four doublings (box [{lo:g}, {hi:g}])")


def _check_n(states, N):
    if int(N) != N or N < 1 or N > states.nstates:
        raise ValueError(f"N must lie in 1..{states.nstates}, got {N!r}")
    return int(N)


def exact_density(states: BoundStateSet, N: int, grid=None) -> DensityProfile:
    """``sum_{j<N} |phi_j|^2`` on the solver grid, or spline-interpolated onto ``grid``."""
    N = _check_n(states, N)
    if grid is None:
        x = states.grid
        values = np.sum(states.orbitals[:N] ** 2, axis=0)
    else:
        x = np.asarray(grid, dtype=float)
        values = sum(states.orbital_on(j, x) ** 2 for j in range(N))
    return DensityProfile(x, values, "number", "exact", N, states.hbar, states.potential.label(),
                          {"box": list(states.box), "spacing": states.spacing})


def exact_ked(states: BoundStateSet, pot: PotentialModel, N: int, grid=None) -> DensityProfile:
    """``sum_{j<N} (E_j - v) |phi_j|^2`` on the solver grid or on ``grid``."""
    N = _check_n(states, N)
    x = states.grid if grid is None else np.asarray(grid, dtype=float)
    vx = pot.v(x)
    values = np.zeros_like(x)
    for j in range(N):
        phi = states.orbitals[j] if grid is None else states.orbital_on(j, x)
        values += (states.energies[j] - vx) * phi * phi
    return DensityProfile(x, values, "kinetic", "exact", N, states.hbar, pot.label(),
                          {"box": list(states.box), "spacing": states.spacing})


def analytic_levels(family: str, params, j, hbar: float = 1.0):
    """Closed-form levels of the Morse and harmonic wells (m = 1)."""
    j = np.asarray(j, dtype=float)
    if family == "harmonic":
        out = hbar * math.sqrt(params["k"]) * (j + 0.5)
    elif family == "morse":
        D, a = params["D"], params["a"]
        lam = j + 0.5
        if np.any(lam > math.sqrt(2.0 * D) / (hbar * a)):
            raise ValueError("Morse level index above the bound-state capacity")
        out = -D + hbar * a * math.sqrt(2.0 * D) * lam - 0.5 * (hbar * a * lam) ** 2
    else:
        raise ValueError(f"no analytic spectrum for {family!r}")
    return out.item() if np.ndim(out) == 0 else out
