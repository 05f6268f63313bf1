import math
import time

import numpy as np
import pytest

from semiclassical.potentials import harmonic, morse, quartic
from semiclassical.quantization import CapacityError, _energy_bracket, capacity, quantum_number, spectrum, wkb_level
from semiclassical.reference import analytic_levels


def test_morse_levels_are_analytic():
    pot = morse(15.0, 0.25)
    for j in range(16):
        ref = analytic_levels("morse", {"D": 15.0, "a": 0.25}, j)
        assert wkb_level(pot, j, 1.0) == pytest.approx(ref, rel=1e-8)


def test_harmonic_levels():
    pot = harmonic(1.0)
    for j in range(10):
        assert abs(wkb_level(pot, j, 1.0) - (j + 0.5)) <= 1e-10 * (j + 0.5)


def test_hbar_scaling_harmonic():
    pot = harmonic(4.0)
    assert wkb_level(pot, 3, 0.1) == pytest.approx(0.1 * 2.0 * 3.5, rel=1e-10)


def test_morse_capacity_numbers():
    cap = capacity(morse(15.0, 0.25), 1.0)
    # evaluated just below the window lid (E = -3e-8), where lambda(E) = sqrt(2D)/a - 1/2 - sqrt(-2E)/a
    E_top = _energy_bracket(morse(15.0, 0.25))[1]
    assert cap["lambda_max"] == pytest.approx(math.sqrt(30.0) / 0.25 - 0.5 - math.sqrt(-2 * E_top) / 0.25, rel=1e-10)
    assert cap["lambda_max"] == pytest.approx(math.sqrt(30.0) / 0.25 - 0.5, abs=1e-3)
    assert cap["bound_states"] == 22
    assert cap["max_particles"] == 21


def test_spectrum_result():
    sp = spectrum(morse(15.0, 0.25), 2, 1.0)
    # E_F at lambda = 3/2, omega_F = dE/dlambda
    assert sp.E_F == pytest.approx(analytic_levels("morse", {"D": 15.0, "a": 0.25}, 1.5), rel=1e-12)
    assert sp.omega_F == pytest.approx(0.25 * math.sqrt(30.0) - 0.0625 * 2.0, rel=1e-10)
    assert sp.T_F == pytest.approx(2 * math.pi / sp.omega_F)
    assert len(sp.levels) == 2 and sp.energies[0] < sp.energies[1] < sp.E_F


def test_quantum_number_inverts_level():
    pot = quartic(1.0)
    E = wkb_level(pot, 4.0, 1.0)
    assert quantum_number(pot, E, 1.0) == pytest.approx(4.0, abs=1e-10)


def test_capacity_error():
    pot = morse(15.0, 0.25)
    with pytest.raises(CapacityError) as info:
        spectrum(pot, 22, 1.0)
    assert info.value.max_particles == 21
    spectrum(pot, 21, 1.0)


def test_bad_inputs():
    with pytest.raises(ValueError):
        spectrum(harmonic(1.0), 0, 1.0)
    with pytest.raises(ValueError):
        wkb_level(harmonic(1.0), -1, 1.0)


def test_levels_increase():
    pot = quartic(0.3)
    e = np.array([wkb_level(pot, j, 1.0) for j in range(8)])
    assert np.all(np.diff(e) > 0)


def test_runtime_budget():
    t0 = time.perf_counter()
    pot = morse(15.0, 0.25)
    [wkb_level(pot, j, 1.0) for j in range(16)]
    ho = harmonic(1.0)
    [wkb_level(ho, j, 1.0) for j in range(16)]
    assert time.perf_counter() - t0 < 5.0
