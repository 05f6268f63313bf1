"""Closed-form semiclassical number and kinetic-energy densities (m = 1).

The uniform density is

    n(x) = (p/hbar) [sqrt(z) Ai(-z)^2 + Ai'(-z)^2 / sqrt(z)]
           + (omega csc(alpha) / p - p / (2 hbar z^(3/2))) Ai(-z) Ai'(-z)

and the kinetic-energy density

    t(x) = p^2 n(x) / 6 + p omega Ai(-z) Ai'(-z) / (3 sin(alpha)),

with every Fermi-level quantity measured from the turning point nearer to
``x`` (the split is the mid-phase point).  In the forbidden regions the
same expressions are evaluated on the branch

    S -> -i|S|,  p -> i|p|,  z -> -|z|,  z^(1/2) -> i|z|^(1/2),  alpha -> i theta,

which makes both densities real.  The imaginary residue is checked.

Inside ``|z| < Z_MIN`` the two singular pieces of the A0 coefficient cancel
to a finite limit; there the value is interpolated linearly in ``z``
between the exact turning-point limit and the formula at ``|z| = Z_MIN``.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import brentq

from .classical import PhaseData, airy_length, find_turning_points, mid_phase_point, period_frequency, phase_data
from .potentials import PotentialModel
from .quantization import wkb_level
from .special import AI0, AIP0, AiryPair, airy, bernoulli, tp_constants

__all__ = [
    "Z_MIN",
    "RESIDUE_TOL",
    "ContinuationError",
    "UniformInputs",
    "uniform_inputs",
    "tf_density",
    "tf_ked",
    "g_plus_minus",
    "xi0_series",
    "uniform_terms",
    "uniform_density",
    "uniform_ked",
    "turning_point_limits",
    "allowed_limit_density",
    "evanescent_limit_density",
    "evanescent_limit_ked",
    "turning_point_density",
    "turning_point_ked",
    "langer_orbital",
    "local_ked_functional",
    "DensityProfile",
    "METHODS",
    "OBSERVABLES",
]

Z_MIN = 0.02
RESIDUE_TOL = 1e-10

C0, D0 = tp_constants()


class ContinuationError(FloatingPointError):
    """The continued formula left an imaginary part above tolerance."""


@dataclass(frozen=True)
class UniformInputs:
    phase: PhaseData
    hbar: float
    airy: AiryPair  # evaluated at -phase.z


def uniform_inputs(phase: PhaseData) -> UniformInputs:
    return UniformInputs(phase, phase.hbar, airy(-np.asarray(phase.z, dtype=float)))


def _as_array(phase):
    return {k: np.atleast_1d(np.asarray(getattr(phase, k))) for k in ("z", "p_abs", "s_abs", "alpha", "x_tp")}


def tf_density(phase: PhaseData, hbar: float):
    """Thomas-Fermi density ``p_F / (pi hbar)``; zero outside the allowed region."""
    z = np.asarray(phase.z)
    out = np.where(z > 0, np.asarray(phase.p_abs) / (math.pi * hbar), 0.0)
    return out.item() if out.ndim == 0 else out


def tf_ked(phase: PhaseData, hbar: float):
    """Thomas-Fermi kinetic-energy density ``p_F^3 / (6 pi hbar)``; zero outside."""
    z = np.asarray(phase.z)
    p = np.asarray(phase.p_abs)
    out = np.where(z > 0, p ** 3 / (6.0 * math.pi * hbar), 0.0)
    return out.item() if out.ndim == 0 else out


def g_plus_minus(z, airy_pair: AiryPair):
    """``g(+/-) = sqrt(z) Ai(-z)^2 +/- Ai'(-z)^2 / sqrt(z)`` for ``z > 0``."""
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise ValueError("g_plus_minus is defined for z > 0 only")
    if not np.allclose(np.asarray(airy_pair.argument), -z, rtol=0, atol=0):
        raise ValueError("airy_pair must be evaluated at -z")
    sz = np.sqrt(z)
    a2 = sz * np.asarray(airy_pair.ai) ** 2
    b2 = np.asarray(airy_pair.ai_prime) ** 2 / sz
    return a2 + b2, a2 - b2


def xi0_series(alpha, terms: int = 25):
    """Partial sum of the Bernoulli series for ``csc(alpha) - 1/alpha``."""
    alpha = np.asarray(alpha, dtype=float)
    if np.any(np.abs(alpha) >= math.pi):
        raise ValueError("xi0_series converges only for |alpha| < pi")
    if not 1 <= terms <= 30:
        raise ValueError("terms must lie in [1, 30]")
    total = np.zeros_like(alpha)
    for k in range(1, terms + 1):
        coef = (-1) ** (k - 1) * 2.0 * (2.0 ** (2 * k - 1) - 1.0) * bernoulli(2 * k) / math.factorial(2 * k)
        total = total + coef * alpha ** (2 * k - 1)
    return total.item() if total.ndim == 0 else total


def _csc_factor(z, alpha):
    """csc(alpha) on the continued branch: 1/sin(alpha) or -i/sinh(theta)."""
    allowed = z > 0
    alpha = np.broadcast_to(alpha, z.shape)
    out = np.empty(z.shape, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out[allowed] = 1.0 / np.sin(alpha[allowed])
        out[~allowed] = -1j / np.sinh(alpha[~allowed])
    return out


def uniform_terms(inputs: UniformInputs):
    """Complex ``(n, t)`` from the continued closed forms, without the turning-point window.

    Points with ``z == 0`` give non-finite values; use :func:`uniform_density`
    for a value everywhere.
    """
    ph = inputs.phase
    hbar = inputs.hbar
    arr = _as_array(ph)
    z = arr["z"]
    allowed = z > 0
    p = np.where(allowed, arr["p_abs"], 1j * arr["p_abs"])
    sz = np.sqrt(z + 0j)
    ai = np.atleast_1d(inputs.airy.ai)
    aip = np.atleast_1d(inputs.airy.ai_prime)
    a0 = ai * aip
    csc = _csc_factor(z, arr["alpha"])
    omega = ph.omega_F
    with np.errstate(divide="ignore", invalid="ignore"):
        n = (p / hbar) * (sz * ai * ai + aip * aip / sz) + (omega * csc / p - p / (2.0 * hbar * z * sz)) * a0
        t = p * p / 6.0 * n + p * omega * csc / 3.0 * a0
    return n, t


def _residue(values):
    re = np.abs(values.real)
    im = np.abs(values.imag)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(im == 0, 0.0, im / np.maximum(re, np.finfo(float).tiny))
    return rel


def turning_point_limits(phase: PhaseData):
    """Exact ``z -> 0`` limits of the uniform density and kinetic-energy density.

    The density limit is ``c0 hbar^(-2/3) |v'|^(1/3)`` plus the finite
    remainder ``(2 v''/15 + omega^2/6) Ai(0) Ai'(0) / |v'|`` of the
    cancelling A0 coefficient; the kinetic-energy limit is ``-d0 |v'|``.
    """
    F = np.asarray(phase.vprime_tp, dtype=float)
    G = np.asarray(phase.vsecond_tp, dtype=float)
    w = phase.omega_F
    n0 = turning_point_density(F, phase.hbar) + (2.0 * G / 15.0 + w * w / 6.0) / F * AI0 * AIP0
    t0 = turning_point_ked(F)
    return n0, t0


def _seam_phase(ph: PhaseData, allowed_side: bool):
    """PhaseData at the point where ``|z| = Z_MIN`` next to the turning point of ``ph``."""
    pot = ph.potential
    x_tp = ph.x_tp
    inward = 1.0 if ph.nearest_tp == "left" else -1.0
    direction = inward if allowed_side else -inward
    tps = find_turning_points(pot, ph.E_F, check_critical=False)
    ell = airy_length(pot, x_tp, ph.hbar)
    if allowed_side:
        reach = abs(ph.x_m - x_tp)
    else:
        lo, hi = pot.search_window
        reach = abs((hi if direction > 0 else lo) - x_tp)

    def f(delta):
        q = phase_data(pot, ph.E_F, ph.omega_F, ph.x_m, x_tp + direction * delta, ph.hbar, tps)
        return abs(q.z) - Z_MIN

    guess = Z_MIN * ell / 2.0 ** (1.0 / 3.0)
    upper = min(4.0 * guess, reach)
    while f(upper) < 0 and upper < reach:
        upper = min(2.0 * upper, reach)
    # the seam's own z is used for interpolation, so a loose location is enough
    delta = brentq(f, 0.0, upper, xtol=1e-8 * guess)
    return phase_data(pot, ph.E_F, ph.omega_F, ph.x_m, x_tp + direction * delta, ph.hbar, tps)


def _window_values(ph: PhaseData, index):
    """Windowed ``(n, t)`` for the points ``index`` of an array PhaseData."""
    n_out = np.empty(len(index))
    t_out = np.empty(len(index))
    seams = {}
    for k, i in enumerate(index):
        pi = ph.at(i) if np.ndim(ph.x) else ph
        n0, t0 = turning_point_limits(pi)
        if pi.z == 0.0:
            n_out[k], t_out[k] = n0, t0
            continue
        key = (pi.x_tp, pi.z > 0)
        if key not in seams:
            seam = _seam_phase(pi, pi.z > 0)
            ns, ts = uniform_terms(uniform_inputs(seam))
            seams[key] = (seam.z, ns.real[0], ts.real[0])
        zs, ns, ts = seams[key]
        frac = pi.z / zs
        n_out[k] = n0 + (ns - n0) * frac
        t_out[k] = t0 + (ts - t0) * frac
    return n_out, t_out


def _evaluate(inputs: UniformInputs):
    ph = inputs.phase
    z = np.atleast_1d(np.asarray(ph.z, dtype=float))
    n, t = uniform_terms(inputs)
    for name, vals in (("density", n), ("kinetic-energy density", t)):
        outside = np.abs(z) >= Z_MIN
        worst = _residue(vals[outside]).max(initial=0.0)
        if worst > RESIDUE_TOL:
            raise ContinuationError(f"imaginary residue {worst:.3g} in continued {name}")
    n = n.real.copy()
    t = t.real.copy()
    inside = np.nonzero(np.abs(z) < Z_MIN)[0]
    if inside.size:
        n[inside], t[inside] = _window_values(ph, inside)
    if not (np.all(np.isfinite(n)) and np.all(np.isfinite(t))):
        raise FloatingPointError("non-finite semiclassical density")
    return n, t


def uniform_density(inputs: UniformInputs):
    """Uniform semiclassical density at every point of ``inputs.phase``."""
    n, _ = _evaluate(inputs)
    return n.item() if np.ndim(inputs.phase.z) == 0 else n


def uniform_ked(inputs: UniformInputs, n_sc_value=None):
    """Uniform semiclassical kinetic-energy density.

    ``n_sc_value`` (the uniform density at the same points) is reused when
    given; otherwise it is recomputed.
    """
    ph = inputs.phase
    z = np.atleast_1d(np.asarray(ph.z, dtype=float))
    if n_sc_value is None:
        _, t = _evaluate(inputs)
    else:
        n = np.atleast_1d(np.asarray(n_sc_value, dtype=float))
        arr = _as_array(ph)
        allowed = z > 0
        p = np.where(allowed, arr["p_abs"], 1j * arr["p_abs"])
        a0 = np.atleast_1d(inputs.airy.ai) * np.atleast_1d(inputs.airy.ai_prime)
        with np.errstate(divide="ignore", invalid="ignore"):
            tc = p * p / 6.0 * n + p * ph.omega_F * _csc_factor(z, arr["alpha"]) / 3.0 * a0
        outside = np.abs(z) >= Z_MIN
        worst = _residue(tc[outside]).max(initial=0.0)
        if worst > RESIDUE_TOL:
            raise ContinuationError(f"imaginary residue {worst:.3g} in continued kinetic-energy density")
        t = tc.real.copy()
        inside = np.nonzero(~outside)[0]
        if inside.size:
            t[inside] = _window_values(ph, inside)[1]
    return t.item() if np.ndim(ph.z) == 0 else t


def allowed_limit_density(phase: PhaseData, hbar: float):
    """Deep allowed-region form: smooth TF term plus the reflected oscillation."""
    z = np.asarray(phase.z)
    if np.any(z <= 0):
        raise ValueError("allowed_limit_density needs points inside the allowed region")
    p = np.asarray(phase.p_abs)
    S = np.asarray(phase.s_abs)
    out = p / (hbar * math.pi) - phase.omega_F * np.cos(2.0 * S / hbar) / (2.0 * math.pi * p * np.sin(phase.alpha))
    return out.item() if np.ndim(out) == 0 else out


def _forbidden(phase):
    z = np.asarray(phase.z)
    if np.any(z >= 0):
        raise ValueError("evanescent limits need points inside a forbidden region")
    return np.asarray(phase.p_abs), np.asarray(phase.s_abs), np.asarray(phase.alpha)


def evanescent_limit_density(phase: PhaseData, hbar: float):
    """Leading evanescent form ``omega exp(-2|S|/hbar) / (4 pi |p| sinh(theta))``.

    On the continued branch the ``p/(3S)`` pieces of the A0 coefficient and
    of the ``g+`` term cancel at this order, leaving only the multiple
    reflection term.
    """
    p, S, theta = _forbidden(phase)
    out = phase.omega_F * np.exp(-2.0 * S / hbar) / (4.0 * math.pi * p * np.sinh(theta))
    return out.item() if np.ndim(out) == 0 else out


def evanescent_limit_ked(phase: PhaseData, hbar: float):
    """Leading evanescent kinetic-energy density ``-3 omega |p| exp(-2|S|/hbar) / (24 pi sinh(theta))``.

    Equal to ``-|p|^2 / 2`` times :func:`evanescent_limit_density`.
    """
    p, S, theta = _forbidden(phase)
    out = -3.0 * phase.omega_F * p * np.exp(-2.0 * S / hbar) / (24.0 * math.pi * np.sinh(theta))
    return out.item() if np.ndim(out) == 0 else out


def turning_point_density(vprime_abs, hbar: float):
    """Leading turning-point density ``c0 hbar^(-2/3) |v'|^(1/3)``."""
    f = np.asarray(vprime_abs, dtype=float)
    if np.any(f <= 0):
        raise ValueError("turning-point density needs |v'| > 0")
    out = C0 * hbar ** (-2.0 / 3.0) * np.cbrt(f)
    return out.item() if out.ndim == 0 else out


def turning_point_ked(vprime_abs):
    """Turning-point kinetic-energy density ``-d0 |v'|``."""
    f = np.asarray(vprime_abs, dtype=float)
    if np.any(f <= 0):
        raise ValueError("turning-point kinetic-energy density needs |v'| > 0")
    out = -D0 * f
    return out.item() if out.ndim == 0 else out


def local_ked_functional(n, hbar: float = 1.0):
    """Local functional ``pi^2 hbar^2 n^3 / 6``."""
    n = np.asarray(n, dtype=float)
    if np.any(n < 0):
        raise ValueError("local_ked_functional needs a non-negative density")
    out = math.pi ** 2 * hbar ** 2 * n ** 3 / 6.0
    return out.item() if out.ndim == 0 else out


def langer_orbital(pot: PotentialModel, j: int, hbar: float, grid):
    """Langer orbital ``sqrt(2 omega_j / p_j) z_j^(1/4) Ai(-z_j)`` on ``grid``.

    Left and right turning-point solutions are joined at the mid-phase point
    of level ``j``; the right-hand piece carries the sign ``(-1)^j``.
    """
    if int(j) != j or j < 0:
        raise ValueError(f"orbital index must be a non-negative integer, got {j!r}")
    E = wkb_level(pot, j, hbar)
    tps = find_turning_points(pot, E)
    _, omega = period_frequency(pot, E, tps)
    x_m = mid_phase_point(pot, E, j + 0.5, hbar, tps)
    ph = phase_data(pot, E, omega, x_m, np.asarray(grid, dtype=float), hbar, tps)
    z = np.atleast_1d(ph.z)
    w = np.abs(z)
    p = np.atleast_1d(ph.p_abs)
    ai = airy(-z).ai
    with np.errstate(divide="ignore", invalid="ignore"):
        phi = np.sqrt(2.0 * omega / p) * w ** 0.25 * ai
    F = np.atleast_1d(ph.vprime_tp)
    at_tp = w < 1e-10
    phi = np.where(at_tp, np.sqrt(2.0 * omega) * (2.0 * F * hbar) ** (-1.0 / 6.0) * AI0, phi)
    right = np.atleast_1d(ph.nearest_tp) == "right"
    phi = np.where(right, (-1.0) ** j * phi, phi)
    return phi.item() if np.ndim(grid) == 0 else phi


METHODS = ("tf", "uniform", "allowed_limit", "evanescent_limit", "exact", "langer_sum", "local_functional")
OBSERVABLES = ("number", "kinetic")


@dataclass
class DensityProfile:
    """One observable from one method on a grid.

    ``values`` is a number density (1/length) when ``observable`` is
    ``"number"`` and a kinetic-energy density (energy/length) when it is
    ``"kinetic"``.  ``meta`` carries run details such as E_F and x_m.
    """

    grid: np.ndarray
    values: np.ndarray
    observable: str
    method: str
    N: int
    hbar: float
    potential: str
    meta: dict = None

    def __post_init__(self):
        if self.observable not in OBSERVABLES:
            raise ValueError(f"unknown observable {self.observable!r}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.shape != self.values.shape:
            raise ValueError("grid and values differ in shape")
        if self.meta is None:
            self.meta = {}

    def integral(self) -> float:
        """Trapezoid integral over the finite entries of the grid."""
        ok = np.isfinite(self.values)
        return float(np.trapezoid(np.where(ok, self.values, 0.0), self.grid))
