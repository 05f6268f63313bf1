"""Airy functions on the real line, Bernoulli numbers and turning-point constants.

The Airy pair is evaluated in double precision without an external
special-function library:

* ``|x| > 9``: asymptotic expansions (exponential form for ``x > 0``,
  oscillatory form for ``x < 0``), truncated at the smallest term.
* ``|x| <= 9``: Taylor expansion about the nearest node of a table with
  spacing 0.25.  The table is generated once at import from the ODE
  ``y'' = x y``: the ``x >= 0`` half is stepped backwards from the
  asymptotic value at ``x = 9`` (the stable direction for the decaying
  solution) and the ``x <= 0`` half is stepped from the closed-form values
  at the origin.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math

import numpy as np

__all__ = ["AiryPair", "airy", "bernoulli", "tp_constants", "AI0", "AIP0"]

AI0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
AIP0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)

SWITCH = 9.0
NODE_STEP = 0.25
_TAYLOR_TERMS = 30
_ASYMPTOTIC_TERMS = 60


@dataclass(frozen=True)
class AiryPair:
    """Values of Ai and Ai' at ``argument`` (scalars or equally shaped arrays)."""

    ai: np.ndarray
    ai_prime: np.ndarray
    argument: np.ndarray


def _asymptotic_coefficients(n):
    u = [1.0]
    for k in range(1, n):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    v = [1.0] + [-(6 * k + 1) / (6 * k - 1) * u[k] for k in range(1, n)]
    return np.array(u), np.array(v)


_U, _V = _asymptotic_coefficients(_ASYMPTOTIC_TERMS)


def _truncated_sum(coeffs, inv_zeta, signs):
    """Sum ``signs[k] * coeffs[k] * inv_zeta**k`` stopping at the smallest term."""
    inv_zeta = np.atleast_1d(inv_zeta)
    total = np.zeros_like(inv_zeta)
    prev = np.full_like(inv_zeta, np.inf)
    active = np.ones(inv_zeta.shape, dtype=bool)
    power = np.ones_like(inv_zeta)
    for k in range(len(coeffs)):
        term = coeffs[k] * power
        mag = np.abs(term)
        active &= mag < prev
        total = np.where(active, total + signs[k] * term, total)
        prev = np.where(active, mag, prev)
        power = power * inv_zeta
    return total


def _asymptotic_positive(x):
    zeta = 2.0 / 3.0 * x ** 1.5
    inv = 1.0 / zeta
    alt = np.array([(-1.0) ** k for k in range(_ASYMPTOTIC_TERMS)])
    su = _truncated_sum(_U, inv, alt)
    sv = _truncated_sum(_V, inv, alt)
    pref = np.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    x4 = x ** 0.25
    return pref / x4 * su, -pref * x4 * sv


def _asymptotic_negative(x):
    y = -x
    zeta = 2.0 / 3.0 * y ** 1.5
    inv = 1.0 / zeta
    inv2 = inv * inv
    # even / odd subsequences, alternating in the pair index
    alt = np.array([(-1.0) ** k for k in range(_ASYMPTOTIC_TERMS // 2)])
    p = _truncated_sum(_U[0::2], inv2, alt)
    q = inv * _truncated_sum(_U[1::2], inv2, alt)
    r = _truncated_sum(_V[0::2], inv2, alt)
    s = inv * _truncated_sum(_V[1::2], inv2, alt)
    phase = zeta - math.pi / 4.0
    c, sn = np.cos(phase), np.sin(phase)
    y4 = y ** 0.25
    ai = (c * p + sn * q) / (math.sqrt(math.pi) * y4)
    aip = y4 * (sn * r - c * s) / math.sqrt(math.pi)
    return ai, aip


def _taylor(x0, y0, dy0, h):
    """Evaluate the solution of y'' = x y through (x0, y0, dy0) at x0 + h."""
    c_prev2 = np.zeros_like(h)  # c_{k-1}
    c_prev = np.asarray(y0, dtype=float) * np.ones_like(h)  # c_k, k = 0
    c_cur = np.asarray(dy0, dtype=float) * np.ones_like(h)  # c_{k+1}
    y = c_prev + c_cur * h
    dy = c_cur.copy()
    hp = h.copy()  # h**(k+1)
    for k in range(0, _TAYLOR_TERMS):
        c_next = (x0 * c_prev + c_prev2) / ((k + 1) * (k + 2))
        dy = dy + (k + 2) * c_next * hp
        hp = hp * h
        y = y + c_next * hp
        c_prev2, c_prev, c_cur = c_prev, c_cur, c_next
    return y, dy


def _build_table():
    n_side = int(round(SWITCH / NODE_STEP))
    nodes = np.linspace(-SWITCH, SWITCH, 2 * n_side + 1)
    ai = np.empty_like(nodes)
    aip = np.empty_like(nodes)
    mid = n_side
    ai[mid], aip[mid] = AI0, AIP0
    for i in range(mid, 0, -1):
        y, dy = _taylor(nodes[i], ai[i], aip[i], np.array([-NODE_STEP]))
        ai[i - 1], aip[i - 1] = y[0], dy[0]
    a, ap = _asymptotic_positive(np.array([SWITCH]))
    ai[-1], aip[-1] = a[0], ap[0]
    for i in range(len(nodes) - 1, mid + 1, -1):
        y, dy = _taylor(nodes[i], ai[i], aip[i], np.array([-NODE_STEP]))
        ai[i - 1], aip[i - 1] = y[0], dy[0]
    return nodes, ai, aip


_NODES, _NODE_AI, _NODE_AIP = _build_table()


def airy(x):
    """Ai(x) and Ai'(x) for real ``x`` (scalar or array).

    Raises
    ------
    ValueError
        If any argument is not finite.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("airy: argument must be finite")
    flat = arr.reshape(-1)
    ai = np.empty_like(flat)
    aip = np.empty_like(flat)

    pos = flat > SWITCH
    neg = flat < -SWITCH
    mid = ~(pos | neg)
    if pos.any():
        ai[pos], aip[pos] = _asymptotic_positive(flat[pos])
    if neg.any():
        ai[neg], aip[neg] = _asymptotic_negative(flat[neg])
    if mid.any():
        xm = flat[mid]
        idx = np.rint((xm + SWITCH) / NODE_STEP).astype(int)
        x0 = _NODES[idx]
        ai[mid], aip[mid] = _taylor(x0, _NODE_AI[idx], _NODE_AIP[idx], xm - x0)

    if arr.ndim == 0:
        return AiryPair(float(ai[0]), float(aip[0]), float(arr))
    return AiryPair(ai.reshape(arr.shape), aip.reshape(arr.shape), arr)


@lru_cache(maxsize=1)
def _bernoulli_table(nmax=60):
    # sum_{k=0}^{m} C(m+1, k) B_k = 0, B_0 = 1
    table = [Fraction(1)]
    for m in range(1, nmax + 1):
        acc = sum(math.comb(m + 1, k) * table[k] for k in range(m))
        table.append(-acc / (m + 1))
    return tuple(table)


_bernoulli_table()  # eager: the table is immutable once built


def bernoulli_fraction(n: int) -> Fraction:
    """Exact Bernoulli number B_n (convention B_1 = -1/2) for 0 <= n <= 60."""
    if not isinstance(n, (int, np.integer)) or n < 0 or n > 60:
        raise ValueError(f"bernoulli index out of range: {n!r}")
    return _bernoulli_table()[int(n)]


def bernoulli(n: int) -> float:
    """B_n as a float, for even n with 2 <= n <= 60."""
    if not isinstance(n, (int, np.integer)) or n % 2 or not 2 <= n <= 60:
        raise ValueError(f"bernoulli needs an even index in [2, 60], got {n!r}")
    return float(bernoulli_fraction(n))


def tp_constants():
    """Turning-point constants ``(c0, d0)``.

    ``c0 = (2/9)^(1/3) / Gamma(1/3)^2`` fixes the density and
    ``d0 = 1 / (9 Gamma(2/3) Gamma(1/3))`` the kinetic-energy density at a
    Fermi-level turning point.
    """
    g13 = math.gamma(1.0 / 3.0)
    g23 = math.gamma(2.0 / 3.0)
    c0 = (2.0 / 9.0) ** (1.0 / 3.0) / g13 ** 2
    d0 = 1.0 / (9.0 * g23 * g13)
    return c0, d0
