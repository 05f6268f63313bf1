"""Integrated error measures between profiles on a shared grid."""
from dataclasses import dataclass, field

import numpy as np

from .density import DensityProfile

__all__ = ["ErrorReport", "TruncationError", "eta", "eta_t", "compare", "TAIL_THRESHOLD"]

TAIL_THRESHOLD = 1e-10


class TruncationError(ValueError):
    """A profile has not decayed at the grid ends."""


@dataclass
class ErrorReport:
    N: int
    eta: float
    eta_t: float
    norm_a: float
    norm_b: float
    method_a: str
    method_b: str
    truncation: dict = field(default_factory=dict)


def _check_pair(a: DensityProfile, b: DensityProfile, observable: str):
    if a.observable != observable or b.observable != observable:
        raise ValueError(f"both profiles must have observable {observable!r}")
    if a.grid.shape != b.grid.shape or not np.array_equal(a.grid, b.grid):
        raise ValueError("profiles are on different grids")
    if a.N != b.N:
        raise ValueError(f"profiles are for different N ({a.N} vs {b.N})")
    for prof in (a, b):
        if not np.all(np.isfinite(prof.values)):
            raise ValueError(f"{prof.method} profile has non-finite values")


def tail_ratio(prof: DensityProfile) -> float:
    """Largest end-point magnitude relative to the profile maximum."""
    peak = np.max(np.abs(prof.values))
    if peak == 0:
        return 0.0
    return float(max(abs(prof.values[0]), abs(prof.values[-1])) / peak)


def _check_tails(*profiles):
    ratios = {}
    for prof in profiles:
        r = tail_ratio(prof)
        ratios[prof.method] = r
        if r > TAIL_THRESHOLD:
            raise TruncationError(
                f"{prof.method} {prof.observable} profile is {r:.2e} of its peak at the grid edge; extend the grid"
            )
    return ratios


def eta(a: DensityProfile, b: DensityProfile) -> float:
    """``(1/N) * integral |a - b| dx`` for number densities on one grid."""
    _check_pair(a, b, "number")
    _check_tails(a, b)
    return float(np.trapezoid(np.abs(a.values - b.values), a.grid) / a.N)


def eta_t(a: DensityProfile, b_exact: DensityProfile) -> float:
    """``integral |t_a - t_exact| dx / |integral t_exact dx|``."""
    _check_pair(a, b_exact, "kinetic")
    _check_tails(a, b_exact)
    total = np.trapezoid(b_exact.values, b_exact.grid)
    if abs(total) <= 1e-12 * np.trapezoid(np.abs(b_exact.values), b_exact.grid):
        raise ZeroDivisionError("reference kinetic energy integrates to zero")
    return float(np.trapezoid(np.abs(a.values - b_exact.values), a.grid) / abs(total))


def compare(n_a: DensityProfile, n_b: DensityProfile, t_a: DensityProfile = None,
            t_b: DensityProfile = None) -> ErrorReport:
    """Both measures plus normalisations; ``eta_t`` is NaN without KED profiles."""
    e = eta(n_a, n_b)
    et = eta_t(t_a, t_b) if t_a is not None and t_b is not None else float("nan")
    profiles = [p for p in (n_a, n_b, t_a, t_b) if p is not None]
    trunc = {f"{p.observable}:{p.method}": tail_ratio(p) for p in profiles}
    return ErrorReport(n_a.N, e, et, n_a.integral(), n_b.integral(), n_a.method, n_b.method, trunc)
