"""Classical mechanics at fixed energy: turning points, action, period, phase data.

All integrals that start at a turning point use the substitution
``x = x_tp + d u^2`` on ``u in [0, 1]``, which turns the inverse square-root
endpoint behaviour of ``1/p`` (and the square-root cusp of ``p``) into a
smooth integrand.  Scalar quantities go through QUADPACK's adaptive
Gauss-Kronrod rule; whole grids use a vectorised composite Gauss-Legendre
rule on the same substituted integrand.

Forbidden-region quantities are stored as real magnitudes plus a region tag;
complex phases are only introduced by the density formulas.
"""
from dataclasses import dataclass
import math
import warnings

import numpy as np
from scipy import integrate
from scipy.optimize import brentq

from .potentials import PotentialModel

__all__ = [
    "EnergyRangeError",
    "NearCriticalPointError",
    "QuadratureError",
    "TurningPoints",
    "PhaseData",
    "find_turning_points",
    "action",
    "flight_time",
    "total_action",
    "period_frequency",
    "segment_integrals",
    "phase_data",
    "mid_phase_point",
    "airy_length",
]

SCAN_PANELS = 512
CRITICAL_SLOPE = 1e-8


class EnergyRangeError(ValueError):
    """Energy outside the range where the well has exactly two turning points."""


class NearCriticalPointError(ValueError):
    """A turning point sits (numerically) on a critical point of v."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


@dataclass(frozen=True)
class TurningPoints:
    x_minus: float
    x_plus: float
    energy: float


@dataclass(frozen=True)
class PhaseData:
    """Fermi-level classical quantities at one point or along a grid.

    Array-valued fields share the shape of ``x``.  ``alpha`` holds the
    phase time ``omega_F * tau``; where ``imaginary`` is true it is the
    magnitude ``theta`` of an imaginary phase time (forbidden region).
    ``x_tp``, ``vprime_tp`` and ``vsecond_tp`` describe the turning point
    each value is measured from.
    """

    x: np.ndarray
    region: np.ndarray
    nearest_tp: np.ndarray
    p_abs: np.ndarray
    s_abs: np.ndarray
    tau_abs: np.ndarray
    z: np.ndarray
    alpha: np.ndarray
    imaginary: np.ndarray
    omega_F: float
    E_F: float
    hbar: float
    x_m: float
    x_tp: np.ndarray
    vprime_tp: np.ndarray
    vsecond_tp: np.ndarray
    potential: PotentialModel

    @property
    def allowed(self):
        return np.asarray(self.z) > 0

    def at(self, index):
        """PhaseData for a single entry of an array-valued instance."""
        pick = lambda a: np.asarray(a)[index].item()  # noqa: E731
        return PhaseData(
            x=pick(self.x), region=str(np.asarray(self.region)[index]),
            nearest_tp=str(np.asarray(self.nearest_tp)[index]), p_abs=pick(self.p_abs),
            s_abs=pick(self.s_abs), tau_abs=pick(self.tau_abs), z=pick(self.z),
            alpha=pick(self.alpha), imaginary=bool(np.asarray(self.imaginary)[index]),
            omega_F=self.omega_F, E_F=self.E_F, hbar=self.hbar, x_m=self.x_m,
            x_tp=pick(self.x_tp), vprime_tp=pick(self.vprime_tp),
            vsecond_tp=pick(self.vsecond_tp), potential=self.potential,
        )


def _sign_changes(f, a, b, n):
    xs = np.linspace(a, b, n + 1)
    fs = f(xs)
    idx = np.nonzero(np.sign(fs[:-1]) * np.sign(fs[1:]) <= 0)[0]
    # an exact zero on a shared node would be counted twice
    brackets = []
    for i in idx:
        if brackets and fs[i] == 0 and brackets[-1][1] == xs[i]:
            continue
        brackets.append((xs[i], xs[i + 1]))
    return brackets


def find_turning_points(pot: PotentialModel, E: float, check_critical: bool = True) -> TurningPoints:
    """Left and right roots of ``v(x) = E`` inside the search window.

    With ``check_critical`` a root where ``|v'| < 1e-8`` raises
    :class:`NearCriticalPointError`.
    """
    x0, v0 = pot.well_minimum
    lo, hi = pot.search_window
    if not E > v0:
        raise EnergyRangeError(f"energy {E!r} is not above the well minimum {v0!r}")
    if not E < pot.top:
        raise EnergyRangeError(f"energy {E!r} is not below the well edge {pot.top!r}")

    def g(x):
        return pot.v(x) - E

    roots = []
    for a, b in ((lo, x0), (x0, hi)):
        brackets = _sign_changes(g, a, b, SCAN_PANELS)
        if len(brackets) != 1:
            raise EnergyRangeError(
                f"expected one turning point in [{a:g}, {b:g}] at E={E:g}, found {len(brackets)}"
            )
        a1, b1 = brackets[0]
        if g(a1) == 0:
            r = a1
        elif g(b1) == 0:
            r = b1
        else:
            r = brentq(g, a1, b1, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
        roots.append(float(r))
    for r in roots if check_critical else ():
        if abs(float(pot.v_prime(r))) < CRITICAL_SLOPE:
            raise NearCriticalPointError(f"|v'| < {CRITICAL_SLOPE:g} at turning point x={r:g}")
    return TurningPoints(roots[0], roots[1], float(E))


def _substituted(pot, x_tp, d, kind):
    v_tp = float(pot.v(x_tp))

    def f(u):
        x = x_tp + d * u * u
        k = abs(v_tp - pot.v(x))
        jac = 2.0 * abs(d) * u
        if kind == "action":
            return math.sqrt(2.0 * k) * jac
        if k == 0.0:
            # u -> 0 limit: 2|d| / sqrt(2 |v'| |d|)
            return 2.0 * abs(d) / math.sqrt(2.0 * abs(float(pot.v_prime(x_tp))) * abs(d))
        return jac / math.sqrt(2.0 * k)

    return f


def _quad_from_tp(pot, x_tp, x, kind, tol):
    d = float(x) - float(x_tp)
    if d == 0.0:
        return 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err, info = integrate.quad(
            _substituted(pot, x_tp, d, kind), 0.0, 1.0,
            epsabs=tol, epsrel=tol, limit=400, full_output=True,
        )[:3]
    if err > 1e-10 * max(1.0, abs(val)):
        raise QuadratureError(f"{kind} quadrature from x={x_tp:g} to x={x:g}: error estimate {err:g}")
    return val


def _tp_for(tps: TurningPoints, side: str) -> float:
    if side == "left":
        return tps.x_minus
    if side == "right":
        return tps.x_plus
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def action(pot: PotentialModel, E: float, side: str, x: float, tps: TurningPoints = None) -> float:
    """Magnitude of the action integral of |p| from the ``side`` turning point to ``x``."""
    tps = tps or find_turning_points(pot, E)
    return _quad_from_tp(pot, _tp_for(tps, side), x, "action", 1e-13)


def flight_time(pot: PotentialModel, E: float, side: str, x: float, tps: TurningPoints = None) -> float:
    """Magnitude of the integral of dx/|p| from the ``side`` turning point to ``x``."""
    tps = tps or find_turning_points(pot, E)
    return _quad_from_tp(pot, _tp_for(tps, side), x, "time", 1e-13)


def _split_point(pot, tps):
    x0 = pot.well_minimum[0]
    if tps.x_minus < x0 < tps.x_plus:
        return x0
    return 0.5 * (tps.x_minus + tps.x_plus)


def total_action(pot: PotentialModel, E: float, tps: TurningPoints = None) -> float:
    """Action integral of p between the two turning points."""
    tps = tps or find_turning_points(pot, E, check_critical=False)
    c = _split_point(pot, tps)
    return action(pot, E, "left", c, tps) + action(pot, E, "right", c, tps)


def period_frequency(pot: PotentialModel, E: float, tps: TurningPoints = None):
    """Classical period ``T = 2 * int dx/p`` and frequency ``2 pi / T`` (m = 1)."""
    tps = tps or find_turning_points(pot, E)
    c = _split_point(pot, tps)
    T = 2.0 * (flight_time(pot, E, "left", c, tps) + flight_time(pot, E, "right", c, tps))
    return T, 2.0 * math.pi / T


# composite Gauss-Legendre in u for grid evaluation
_GL_PANELS = 8
_GL_ORDER = 24


def _gl_rule():
    t, w = np.polynomial.legendre.leggauss(_GL_ORDER)
    edges = np.linspace(0.0, 1.0, _GL_PANELS + 1)
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        nodes.append(0.5 * (b - a) * t + 0.5 * (a + b))
        weights.append(0.5 * (b - a) * w)
    return np.concatenate(nodes), np.concatenate(weights)


_U, _W = _gl_rule()


def segment_integrals(pot: PotentialModel, x_tp, x):
    """Vectorised ``(|S|, tau)`` from turning point(s) ``x_tp`` to points ``x``.

    ``|S| = int |p| dx`` and ``tau = int dx / |p|`` along the straight
    segment, valid on either side of the turning point as long as no other
    root of ``v - E`` lies on the segment.
    """
    x = np.asarray(x, dtype=float)
    x_tp = np.broadcast_to(np.asarray(x_tp, dtype=float), x.shape)
    d = x - x_tp
    ad = np.abs(d)[..., None]
    xx = x_tp[..., None] + d[..., None] * _U ** 2
    k = np.abs(pot.v(x_tp)[..., None] - pot.v(xx))
    p = np.sqrt(2.0 * k)
    jac = 2.0 * ad * _U
    S = np.sum(p * jac * _W, axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        tau_integrand = np.where(p > 0, jac / p, 0.0)
    tau = np.sum(tau_integrand * _W, axis=-1)
    return S, tau


def phase_data(pot: PotentialModel, E_F: float, omega_F: float, x_m: float, x, hbar: float,
               tps: TurningPoints = None) -> PhaseData:
    """Classical Fermi-level data at ``x`` (scalar or array).

    Points left of (or at) ``x_m`` are measured from the left turning point,
    the rest from the right one.  ``z`` is positive in the allowed region,
    zero at the turning points and negative in the forbidden regions.
    """
    tps = tps or find_turning_points(pot, E_F)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    left = x <= x_m
    x_tp = np.where(left, tps.x_minus, tps.x_plus)
    s_abs, tau = segment_integrals(pot, x_tp, x)
    allowed = (x > tps.x_minus) & (x < tps.x_plus)
    region = np.where(allowed, "allowed", np.where(x <= tps.x_minus, "forbidden_left", "forbidden_right"))
    w = (1.5 * s_abs / hbar) ** (2.0 / 3.0)
    z = np.where(allowed, w, -w)
    alpha = omega_F * tau
    if np.any(allowed & (alpha >= math.pi)):
        raise ValueError("phase time reached pi inside the allowed region; inconsistent x_m or omega_F")
    p_abs = np.sqrt(2.0 * np.abs(E_F - pot.v(x)))
    pd = PhaseData(
        x=x, region=region, nearest_tp=np.where(left, "left", "right"), p_abs=p_abs,
        s_abs=s_abs, tau_abs=tau, z=z, alpha=alpha, imaginary=~allowed,
        omega_F=float(omega_F), E_F=float(E_F), hbar=float(hbar), x_m=float(x_m),
        x_tp=x_tp, vprime_tp=np.abs(pot.v_prime(x_tp)), vsecond_tp=np.asarray(pot.v_second(x_tp)) * np.ones_like(x),
        potential=pot,
    )
    return pd.at(0) if scalar else pd


def mid_phase_point(pot: PotentialModel, E_F: float, N: float, hbar: float, tps: TurningPoints = None) -> float:
    """Point where the action from the left turning point equals ``hbar * N * pi / 2``.

    For an orbital of index ``j`` pass ``N = j + 1/2``.
    """
    tps = tps or find_turning_points(pot, E_F)
    target = hbar * N * math.pi / 2.0
    return brentq(lambda q: action(pot, E_F, "left", q, tps) - target, tps.x_minus, tps.x_plus,
                  xtol=1e-13, rtol=1e-14, maxiter=200)


def airy_length(pot: PotentialModel, x_tp: float, hbar: float) -> float:
    """Local Airy length ``(hbar^2 / |v'(x_tp)|)^(1/3)`` (m = 1)."""
    return (hbar * hbar / abs(float(pot.v_prime(x_tp)))) ** (1.0 / 3.0)
