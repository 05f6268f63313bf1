"""Uniform semiclassical densities for fermions in one-dimensional wells.

Typical use::

    from semiclassical import morse, fermi_setup, auto_grid, build_profiles
    setup = fermi_setup(morse(15.0, 0.25), N=2)
    profiles = build_profiles(setup, auto_grid(setup), ["tf", "uniform", "exact"])
"""
from .density import DensityProfile, uniform_density, uniform_inputs, uniform_ked
from .metrics import ErrorReport, compare, eta, eta_t
from .potentials import harmonic, make_potential, morse, quartic, rosen_morse, tabulated
from .profiles import auto_grid, build_profiles, error_scan, fermi_setup
from .quantization import CapacityError, capacity, spectrum, wkb_level
from .reference import analytic_levels, exact_density, exact_ked, solve_auto, solve_box

__version__ = "0.1.0"
