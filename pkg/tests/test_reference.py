import math

import numpy as np
import pytest

from semiclassical.potentials import harmonic, morse
from semiclassical.reference import (BoxTooSmallError, analytic_levels, exact_density, exact_ked, solve_auto,
                                     solve_box)

MORSE = {"D": 15.0, "a": 0.25}


@pytest.fixture(scope="module")
def ho_states():
    return solve_box(harmonic(1.0), (-10, 10), 4000, 6)


@pytest.fixture(scope="module")
def morse_states():
    return solve_auto(morse(**MORSE), 16)


def test_harmonic_ground_state(ho_states):
    assert abs(ho_states.energies[0] - 0.5) < 1e-6
    assert np.all(np.diff(ho_states.energies) > 0)


def test_orthonormality(ho_states, morse_states):
    for st in (ho_states, morse_states):
        g = np.trapezoid(st.orbitals[:, None, :] * st.orbitals[None, :, :], st.grid, axis=-1)
        assert np.max(np.abs(g - np.eye(st.nstates))) < 1e-8


def test_node_counts(morse_states):
    for j, phi in enumerate(morse_states.orbitals):
        sig = phi[np.abs(phi) > 1e-6 * np.abs(phi).max()]
        assert np.count_nonzero(np.diff(np.sign(sig))) == j


def test_wall_tails(ho_states):
    phi = ho_states.orbitals[0]
    assert abs(phi[1]) < 1e-8 * np.abs(phi).max()


def test_morse_levels(morse_states):
    ref = analytic_levels("morse", MORSE, np.arange(16))
    assert np.max(np.abs(morse_states.energies - ref)) < 1e-5


def test_second_order_convergence():
    pot = harmonic(1.0)
    e1 = solve_box(pot, (-10, 10), 1001, 6).energies
    e2 = solve_box(pot, (-10, 10), 2001, 6).energies
    exact = np.arange(6) + 0.5
    ratio = np.abs(e1 - exact) / np.abs(e2 - exact)
    assert np.all((ratio > 3.8) & (ratio < 4.2))


def test_exact_density_harmonic(ho_states):
    prof = exact_density(ho_states, 1)
    i = np.argmin(np.abs(prof.grid))
    assert prof.values[i] == pytest.approx(1 / math.sqrt(math.pi), rel=1e-5)
    assert np.all(prof.values >= 0)
    assert np.trapezoid(exact_density(ho_states, 4).values, prof.grid) == pytest.approx(4.0, abs=1e-8)


def test_exact_ked_harmonic(ho_states):
    prof = exact_ked(ho_states, harmonic(1.0), 1)
    i = np.argmin(np.abs(prof.grid))
    assert prof.values[i] == pytest.approx(0.5 / math.sqrt(math.pi), rel=2e-5)


@pytest.mark.parametrize("N", [1, 2, 5])
def test_ked_integral_identity(morse_states, N):
    pot = morse(**MORSE)
    t = exact_ked(morse_states, pot, N)
    n = exact_density(morse_states, N)
    total = np.sum(morse_states.energies[:N]) - np.trapezoid(pot.v(n.grid) * n.values, n.grid)
    assert np.trapezoid(t.values, t.grid) == pytest.approx(total, rel=1e-6)


def test_ked_negative_outside_turning_points(morse_states):
    t = exact_ked(morse_states, morse(**MORSE), 2)
    assert t.values.min() < 0


def test_virial_harmonic():
    pot = harmonic(1.0)
    ho_states = solve_box(pot, (-10, 10), 10001, 5)
    for N in (1, 3, 5):
        t = exact_ked(ho_states, pot, N)
        n = exact_density(ho_states, N)
        kin = np.trapezoid(t.values, t.grid)
        potential = np.trapezoid(pot.v(n.grid) * n.values, n.grid)
        assert kin == pytest.approx(potential, rel=1e-5)


def test_resolution_doubling():
    pot = morse(**MORSE)
    a = solve_box(pot, (-8, 14), 8001, 3)
    b = solve_box(pot, (-8, 14), 16001, 3)
    x = np.linspace(-3, 6, 300)
    assert np.max(np.abs(exact_density(a, 3, x).values - exact_density(b, 3, x).values)) < 1e-5


def test_box_too_small():
    with pytest.raises(BoxTooSmallError):
        solve_box(harmonic(1.0), (-2, 2), 1000, 1)


def test_bad_arguments(ho_states):
    with pytest.raises(ValueError):
        solve_box(harmonic(1.0), (-5, 5), 100, 1)
    with pytest.raises(ValueError):
        exact_density(ho_states, 7)
    with pytest.raises(ValueError):
        solve_auto(morse(**MORSE), 23)
    with pytest.raises(ValueError):
        analytic_levels("quartic", {"c": 1.0}, 0)


def test_analytic_examples():
    assert analytic_levels("harmonic", {"k": 1.0}, 3) == 3.5
    assert analytic_levels("morse", MORSE, 0) == pytest.approx(-14.32316, abs=1e-5)
    with pytest.raises(ValueError):
        analytic_levels("morse", MORSE, 22)
    assert math.floor(math.sqrt(2 * 15.0) / 0.25 - 0.5) == 21
