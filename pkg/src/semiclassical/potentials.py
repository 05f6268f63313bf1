"""Single-well potentials: Morse, harmonic, quartic, Rosen-Morse and tabulated.

Mass is fixed to m = 1 everywhere in the package.
"""
from dataclasses import dataclass, field
from typing import Callable, Mapping
import math

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize_scalar

__all__ = [
    "PotentialModel",
    "make_potential",
    "morse",
    "harmonic",
    "quartic",
    "rosen_morse",
    "tabulated",
    "load_table",
    "parse_params",
    "BUILTIN_PARAMS",
]

BUILTIN_PARAMS = {
    "morse": ("D", "a"),
    "harmonic": ("k",),
    "quartic": ("c",),
    "rosen_morse": ("V0", "a"),
}


@dataclass(frozen=True)
class PotentialModel:
    """An evaluatable single-well potential with its search window.

    ``v``, ``v_prime`` and ``v_second`` accept scalars or arrays.
    ``search_window`` brackets the well; every bound level lies below the
    potential at both window edges.
    """

    name: str
    params: Mapping[str, float]
    v: Callable = field(repr=False)
    v_prime: Callable = field(repr=False)
    v_second: Callable = field(repr=False)
    search_window: tuple
    well_minimum: tuple

    @property
    def top(self) -> float:
        """Lowest potential value at the window edges (the well's lid)."""
        lo, hi = self.search_window
        return float(min(self.v(lo), self.v(hi)))

    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.name}({inner})"


def _require_positive(**kw):
    for k, v in kw.items():
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise ValueError(f"parameter {k} must be a positive number, got {v!r}")


def morse(D: float, a: float, window=None) -> PotentialModel:
    """v(x) = D (exp(-2 a x) - 2 exp(-a x)); minimum -D at x = 0."""
    _require_positive(D=D, a=a)

    def v(x):
        e = np.exp(-a * np.asarray(x, dtype=float))
        return D * (e * e - 2.0 * e)

    def dv(x):
        e = np.exp(-a * np.asarray(x, dtype=float))
        return 2.0 * a * D * (e - e * e)

    def d2v(x):
        e = np.exp(-a * np.asarray(x, dtype=float))
        return a * a * D * (4.0 * e * e - 2.0 * e)

    if window is None:
        # right edge where v >= -1e-9 D, i.e. 2 exp(-a x) ~ 1e-9
        window = (-4.0 * math.log(2.0) / a, math.log(2.0e9) / a)
    return PotentialModel("morse", {"D": D, "a": a}, v, dv, d2v, tuple(window), (0.0, -float(D)))


def harmonic(k: float, window=None) -> PotentialModel:
    """v(x) = k x^2 / 2."""
    _require_positive(k=k)

    def v(x):
        x = np.asarray(x, dtype=float)
        return 0.5 * k * x * x

    def dv(x):
        return k * np.asarray(x, dtype=float)

    def d2v(x):
        return np.full_like(np.asarray(x, dtype=float), float(k))

    if window is None:
        half = math.sqrt(2.0 * 400.0 / k)  # lid at v = 400
        window = (-half, half)
    return PotentialModel("harmonic", {"k": k}, v, dv, d2v, tuple(window), (0.0, 0.0))


def quartic(c: float, window=None) -> PotentialModel:
    """v(x) = c x^4."""
    _require_positive(c=c)

    def v(x):
        x = np.asarray(x, dtype=float)
        x2 = x * x
        return c * x2 * x2

    def dv(x):
        x = np.asarray(x, dtype=float)
        return 4.0 * c * x * x * x

    def d2v(x):
        x = np.asarray(x, dtype=float)
        return 12.0 * c * x * x

    if window is None:
        half = (400.0 / c) ** 0.25
        window = (-half, half)
    return PotentialModel("quartic", {"c": c}, v, dv, d2v, tuple(window), (0.0, 0.0))


def rosen_morse(V0: float, a: float, window=None) -> PotentialModel:
    """v(x) = -V0 sech^2(a x)."""
    _require_positive(V0=V0, a=a)

    def v(x):
        s = 1.0 / np.cosh(a * np.asarray(x, dtype=float))
        return -V0 * s * s

    def dv(x):
        ax = a * np.asarray(x, dtype=float)
        s = 1.0 / np.cosh(ax)
        return 2.0 * V0 * a * s * s * np.tanh(ax)

    def d2v(x):
        ax = a * np.asarray(x, dtype=float)
        s = 1.0 / np.cosh(ax)
        t = np.tanh(ax)
        return 2.0 * V0 * a * a * s * s * (1.0 - 3.0 * t * t)

    if window is None:
        half = math.acosh(math.sqrt(1.0e9)) / a  # sech^2 = 1e-9
        window = (-half, half)
    return PotentialModel("rosen_morse", {"V0": V0, "a": a}, v, dv, d2v, tuple(window), (0.0, -float(V0)))


def tabulated(x, values, name="table") -> PotentialModel:
    """Cubic-spline potential through position/value pairs."""
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.shape != values.shape:
        raise ValueError("tabulated potential needs two equal-length 1-D columns")
    if len(x) < 16:
        raise ValueError(f"tabulated potential needs at least 16 points, got {len(x)}")
    if not np.all(np.diff(x) > 0):
        raise ValueError("tabulated abscissae must be strictly increasing")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(values))):
        raise ValueError("tabulated potential contains non-finite entries")
    spline = CubicSpline(x, values)
    d1 = spline.derivative(1)
    d2 = spline.derivative(2)

    def v(q):
        return spline(np.asarray(q, dtype=float))

    def dv(q):
        return d1(np.asarray(q, dtype=float))

    def d2v(q):
        return d2(np.asarray(q, dtype=float))

    i = int(np.argmin(values))
    if i == 0 or i == len(x) - 1:
        raise ValueError("tabulated potential has its minimum on the table edge")
    res = minimize_scalar(lambda q: float(spline(q)), bracket=(x[i - 1], x[i], x[i + 1]), tol=1e-12)
    x0 = float(res.x)
    return PotentialModel(name, {}, v, dv, d2v, (float(x[0]), float(x[-1])), (x0, float(spline(x0))))


def load_table(path) -> PotentialModel:
    """Read a two-column ``x v(x)`` text file; ``#`` starts a comment."""
    data = np.loadtxt(path, comments="#", ndmin=2)
    if data.shape[1] != 2:
        raise ValueError(f"{path}: expected two columns, found {data.shape[1]}")
    return tabulated(data[:, 0], data[:, 1], name=f"table:{path}")


def parse_params(text: str) -> dict:
    """Parse ``"D=15,a=0.25"`` into ``{"D": 15.0, "a": 0.25}``."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"malformed parameter {item!r}; expected key=value")
        out[key.strip()] = float(val)
    return out


_FACTORIES = {"morse": morse, "harmonic": harmonic, "quartic": quartic, "rosen_morse": rosen_morse}


def make_potential(name: str, params: Mapping[str, float] = None, window=None) -> PotentialModel:
    """Build a built-in potential by name from a parameter mapping."""
    if name not in _FACTORIES:
        raise ValueError(f"unknown potential {name!r}; choose from {sorted(_FACTORIES)}")
    params = dict(params or {})
    expected = BUILTIN_PARAMS[name]
    missing = [p for p in expected if p not in params]
    extra = [p for p in params if p not in expected]
    if missing or extra:
        raise ValueError(f"{name} takes parameters {expected}; missing {missing}, unexpected {extra}")
    return _FACTORIES[name](*(params[p] for p in expected), window=window)
