import json
from pathlib import Path

import numpy as np
import pytest

from semiclassical.potentials import harmonic, quartic, rosen_morse
from semiclassical.profiles import (NUMBER_METHODS, KINETIC_METHODS, auto_grid, build_profiles, error_scan,
                                    fermi_setup, near_capacity)

BASELINE = json.loads((Path(__file__).parent / "data" / "morse_eta_baseline.json").read_text())


@pytest.mark.parametrize("N", [2, 5, 12])
def test_normalisation_and_positivity(morse_pot, N):
    s = fermi_setup(morse_pot, N)
    g = auto_grid(s)
    p = build_profiles(s, g, ("tf", "uniform", "exact"), "number")
    assert p["uniform"].integral() == pytest.approx(N, rel=1e-2)
    assert p["exact"].integral() == pytest.approx(N, rel=1e-6)
    for m in ("tf", "uniform", "exact"):
        assert np.all(p[m].values >= 0) and np.all(np.isfinite(p[m].values))


@pytest.mark.parametrize("pot", [harmonic(1.0), quartic(0.5), rosen_morse(10.0, 0.7)], ids=lambda p: p.name)
def test_other_wells_normalise(pot):
    s = fermi_setup(pot, 3)
    p = build_profiles(s, auto_grid(s), ("uniform", "exact"), "number")
    assert p["uniform"].integral() == pytest.approx(3, rel=2e-2)
    assert np.max(np.abs(p["uniform"].values - p["exact"].values)) < 0.05 * p["exact"].values.max()


def test_all_methods_build(morse2):
    g = auto_grid(morse2, 801)
    n = build_profiles(morse2, g, NUMBER_METHODS, "number")
    t = build_profiles(morse2, g, KINETIC_METHODS, "kinetic")
    assert set(n) == set(NUMBER_METHODS) and set(t) == set(KINETIC_METHODS)
    z = morse2.phase(g).z
    assert np.all(np.isnan(n["allowed_limit"].values[z < 1]))
    assert np.all(np.isfinite(n["allowed_limit"].values[z >= 1]))
    assert np.all(np.isnan(n["evanescent_limit"].values[z > -1]))
    assert n["langer_sum"].integral() == pytest.approx(2.0, rel=0.05)
    with pytest.raises(ValueError):
        build_profiles(morse2, g, ("allowed_limit",), "kinetic")
    with pytest.raises(ValueError):
        build_profiles(morse2, g[::-1], ("tf",), "number")


def test_ked_profiles_and_sign(morse2):
    g = auto_grid(morse2)
    t = build_profiles(morse2, g, ("uniform", "exact", "local_functional"), "kinetic")
    for tp in (morse2.tps.x_minus, morse2.tps.x_plus):
        i = np.argmin(np.abs(g - tp))
        assert t["uniform"].values[i] < 0 and t["exact"].values[i] < 0
    assert np.all(t["local_functional"].values >= 0)


def test_near_capacity_flag(morse_pot):
    assert not near_capacity(fermi_setup(morse_pot, 16))
    assert near_capacity(fermi_setup(morse_pot, 17))


def test_scan_matches_archived_baseline(morse_pot):
    # the oracle box is sized for the largest N, so the full range is rerun
    rows = BASELINE["rows"]
    cols = error_scan(morse_pot, [r["N"] for r in rows])
    for i, r in enumerate(rows):
        assert cols["near_capacity"][i] == r["near_capacity"]
        for key in ("eta_tf", "eta_uniform", "eta_t_tf", "eta_t_uniform", "eta_t_local"):
            assert cols[key][i] == pytest.approx(r[key], rel=1e-9)


def test_baseline_trends():
    rows = BASELINE["rows"]
    eta_u = [r["eta_uniform"] for r in rows]
    assert all(r["eta_tf"] > 20 * r["eta_uniform"] for r in rows)
    assert all(a > b for a, b in zip(eta_u[1:12], eta_u[2:12]))
    # the uniform error rises again once the Fermi level nears the top of the well
    assert eta_u[16] > eta_u[15]
    assert all(r["eta_t_local"] > r["eta_t_uniform"] for r in rows)
