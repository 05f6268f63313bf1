"""WKB levels and the Fermi level of N fermions in a single well."""
from dataclasses import dataclass
import math

from scipy.optimize import brentq

from .classical import find_turning_points, period_frequency, total_action
from .potentials import PotentialModel

__all__ = ["CapacityError", "SpectrumResult", "wkb_level", "spectrum", "capacity", "quantum_number"]


class CapacityError(ValueError):
    """The well does not hold the requested level."""

    def __init__(self, message, max_particles=None):
        super().__init__(message)
        self.max_particles = max_particles


@dataclass(frozen=True)
class SpectrumResult:
    levels: tuple  # ((j, E_j), ...)
    E_F: float
    omega_F: float
    T_F: float
    N: int
    hbar: float

    @property
    def energies(self):
        return [e for _, e in self.levels]


def _energy_bracket(pot):
    v0 = pot.well_minimum[1]
    top = pot.top
    scale = max(1.0, abs(top - v0))
    eps = 1e-9 * scale
    return v0 + eps, top - eps, scale


def quantum_number(pot: PotentialModel, E: float, hbar: float) -> float:
    """Continuous WKB index ``lambda(E) = S_total(E) / (pi hbar) - 1/2``."""
    return total_action(pot, E) / (math.pi * hbar) - 0.5


def capacity(pot: PotentialModel, hbar: float) -> dict:
    """Largest WKB index below the lid of the well and the counts that follow.

    ``bound_states`` counts integer levels ``j`` with ``j <= lambda_max``;
    ``max_particles`` is the largest N whose Fermi level (index N - 1/2)
    is still bound.
    """
    _, e_hi, _ = _energy_bracket(pot)
    lam = quantum_number(pot, e_hi, hbar)
    return {
        "lambda_max": lam,
        "bound_states": int(math.floor(lam)) + 1 if lam >= 0 else 0,
        "max_particles": int(math.floor(lam + 0.5)) if lam >= -0.5 else 0,
    }


def wkb_level(pot: PotentialModel, lam: float, hbar: float) -> float:
    """Energy solving ``S_total(E) = pi hbar (lam + 1/2)``."""
    if lam < -0.5:
        raise ValueError(f"WKB index must be >= -1/2, got {lam!r}")
    e_lo, e_hi, scale = _energy_bracket(pot)
    target = math.pi * hbar * (lam + 0.5)

    def f(E):
        return total_action(pot, E) - target

    f_hi = f(e_hi)
    if f_hi < 0:
        cap = capacity(pot, hbar)
        raise CapacityError(
            f"insufficient bound states: index {lam:g} exceeds lambda_max={cap['lambda_max']:.6g}",
            max_particles=cap["max_particles"],
        )
    f_lo = f(e_lo)
    if f_lo > 0:
        # the level sits within eps of the well bottom; only lam = -1/2 lands here
        return e_lo
    return brentq(f, e_lo, e_hi, xtol=1e-12 * scale, rtol=1e-15, maxiter=300)


def spectrum(pot: PotentialModel, N: int, hbar: float) -> SpectrumResult:
    """Levels ``j = 0..N-1``, the Fermi energy at index ``N - 1/2`` and the orbit at E_F."""
    if int(N) != N or N < 1:
        raise ValueError(f"particle number must be a positive integer, got {N!r}")
    N = int(N)
    try:
        E_F = wkb_level(pot, N - 0.5, hbar)
    except CapacityError as exc:
        raise CapacityError(
            f"{pot.label()} holds at most {exc.max_particles} particles (Fermi level bound); asked for N={N}",
            max_particles=exc.max_particles,
        ) from None
    levels = tuple((j, wkb_level(pot, j, hbar)) for j in range(N))
    tps = find_turning_points(pot, E_F)
    T, omega = period_frequency(pot, E_F, tps)
    return SpectrumResult(levels=levels, E_F=E_F, omega_F=omega, T_F=T, N=N, hbar=float(hbar))
