"""Acceptance criteria 1-9, each at its stated tolerance.

Every test records one PASS/FAIL line (printed in the terminal summary)
before asserting, so the full status is visible even when some fail.
"""
import json
import time
from pathlib import Path

import numpy as np
import pytest
from scipy.optimize import brentq

from conftest import ACCEPTANCE
from semiclassical import density as d
from semiclassical.classical import phase_data
from semiclassical.potentials import harmonic, morse
from semiclassical.profiles import auto_grid, build_profiles, error_scan, fermi_setup
from semiclassical.quantization import spectrum
from semiclassical.reference import analytic_levels, exact_density, solve_auto, solve_box
from semiclassical.special import tp_constants

MORSE = {"D": 15.0, "a": 0.25}
BASELINE = json.loads((Path(__file__).parent / "data" / "morse_eta_baseline.json").read_text())


def record(k, ok, detail):
    ACCEPTANCE[k] = (bool(ok), detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def seek_z(setup, side, target):
    """PhaseData at signed ``z = target`` on ``side``, or None if no such point exists."""
    x_tp = setup.tps.x_minus if side == "left" else setup.tps.x_plus
    inward = 1.0 if side == "left" else -1.0
    sgn = inward if target > 0 else -inward
    if target > 0:
        reach = abs(setup.x_m - x_tp)
    else:
        lo, hi = setup.potential.search_window
        reach = abs((hi if sgn > 0 else lo) - x_tp)
    f = lambda s: abs(setup.phase(x_tp + sgn * s).z) - abs(target)  # noqa: E731
    if f(reach * (1 - 1e-12)) < 0:
        return None
    return setup.phase(x_tp + sgn * brentq(f, 0.0, reach * (1 - 1e-12), xtol=1e-14, rtol=1e-14))


@pytest.fixture(scope="module")
def morse_scan():
    return error_scan(morse(**MORSE), [r["N"] for r in BASELINE["rows"]])


def test_criterion_1_wkb_spectra():
    t0 = time.perf_counter()
    pot = morse(**MORSE)
    sp = spectrum(pot, 16, 1.0)
    j = np.arange(16)
    e = np.array([lv[1] for lv in sp.levels])
    ref = analytic_levels("morse", MORSE, j)
    err_m = float(np.max(np.abs(e - ref) / np.abs(ref)))
    sh = spectrum(harmonic(1.0), 16, 1.0)
    eh = np.array([lv[1] for lv in sh.levels])
    err_h = float(np.max(np.abs(eh - (j + 0.5))))
    dt = time.perf_counter() - t0
    ok = err_m <= 1e-8 and err_h <= 1e-10 and dt < 5.0
    record(1, ok, f"Morse rel err {err_m:.2e} (<=1e-8), harmonic err {err_h:.2e} (<=1e-10), {dt:.2f} s (<5 s)")


def test_criterion_2_turning_point_values():
    c0, d0 = tp_constants()
    lines, ok = [], True
    assert c0 == pytest.approx(0.08440, abs=5e-6) and d0 == pytest.approx(0.030629, abs=5e-7)
    # the closed form tends to c0 hbar^(-2/3) |v'|^(1/3) (the leading hbar term) at z -> 0;
    # with E_F held fixed the O(hbar^(2/3)) remainder drops below 1e-6 by hbar = 1e-10
    for pot, N in ((morse(**MORSE), 2), (harmonic(1.0), 1)):
        s = fermi_setup(pot, N)
        for x_tp in (s.tps.x_minus, s.tps.x_plus):
            ph = phase_data(pot, s.E_F, s.omega_F, s.x_m, x_tp, 1e-10, s.tps)
            F = abs(ph.vprime_tp)
            n = d.uniform_density(d.uniform_inputs(ph))
            t = d.uniform_ked(d.uniform_inputs(ph))
            en = abs(n / (c0 * 1e-10 ** (-2 / 3) * F ** (1 / 3)) - 1)
            et = abs(t / (-d0 * F) - 1)
            ok &= en <= 1e-6 and et <= 1e-6
            lines.append(f"{pot.name}: n {en:.1e}, t {et:.1e}")
    # the z -> 0 value must also be the true limit of the closed form (extrapolation from |z| = 0.02, 0.04)
    s = fermi_setup(morse(**MORSE), 2)
    ext = 0.0
    for side, x_tp in (("left", s.tps.x_minus), ("right", s.tps.x_plus)):
        inputs = d.uniform_inputs(s.phase(x_tp))
        n0 = d.uniform_density(inputs)
        zs, ns = [], []
        for z in (-0.04, -0.02, 0.02, 0.04):
            ph = seek_z(s, side, z)
            zs.append(ph.z)
            ns.append(d.uniform_terms(d.uniform_inputs(ph))[0].real[0])
        ext = max(ext, abs(np.polyval(np.polyfit(zs, ns, 3), 0.0) / n0 - 1))
    ok &= ext <= 1e-6
    record(2, ok, f"hbar=1e-10 rel errs [{'; '.join(lines)}] (<=1e-6); limit vs extrapolated formula {ext:.1e}")


def test_criterion_3_regional_consistency():
    cases = [("Morse N=2", morse(**MORSE), 2), ("Morse N=8", morse(**MORSE), 8),
             ("harmonic N=1", harmonic(1.0), 1), ("harmonic N=8", harmonic(1.0), 8)]
    worst, missing, bad = 0.0, [], []
    for label, pot, N in cases:
        s = fermi_setup(pot, N)
        for side in ("left", "right"):
            for az, tol in ((8.0, 1e-2), (20.0, 1e-3)):
                ph = seek_z(s, side, az)
                if ph is None:
                    missing.append(f"{label} {side} z=+{az:g}")
                else:
                    r = abs(d.uniform_density(d.uniform_inputs(ph)) / d.allowed_limit_density(ph, 1.0) - 1)
                    worst = max(worst, r / tol)
                    if r > tol:
                        bad.append(f"{label} {side} z=+{az:g}: {r:.1e}")
                ph = seek_z(s, side, -az)
                inputs = d.uniform_inputs(ph)
                rn = abs(d.uniform_density(inputs) / d.evanescent_limit_density(ph, 1.0) - 1)
                rt = abs(d.uniform_ked(inputs) / d.evanescent_limit_ked(ph, 1.0) - 1)
                worst = max(worst, rn / tol, rt / tol)
                if max(rn, rt) > tol:
                    bad.append(f"{label} {side} z=-{az:g}: n {rn:.1e} t {rt:.1e}")
    ok = not missing and not bad
    record(3, ok, f"{len(missing)} allowed targets beyond x_m, {len(bad)} ratios out of tolerance "
                  f"(worst {worst:.0f}x tol); e.g. {(bad or missing or ['none'])[0]}")


def test_criterion_4_density_profile():
    t0 = time.perf_counter()
    s = fermi_setup(morse(**MORSE), 2)
    p = build_profiles(s, auto_grid(s), ("tf", "uniform", "exact"), "number")
    dt = time.perf_counter() - t0
    g = p["exact"].grid
    allowed = (g > s.tps.x_minus) & (g < s.tps.x_plus)
    e_sc = np.max(np.abs(p["uniform"].values - p["exact"].values)[allowed])
    e_tf = np.max(np.abs(p["tf"].values - p["exact"].values)[allowed])
    norm = p["uniform"].integral()
    ok = e_sc <= 0.2 * e_tf and abs(norm / 2 - 1) <= 0.01 and dt < 30
    record(4, ok, f"max|sc-exact| {e_sc:.2e} vs 0.2 max|TF-exact| {0.2 * e_tf:.2e}; "
                  f"int n_sc {norm:.5f} (2 +- 1%); {dt:.1f} s (<30 s)")


def test_criterion_5_eta_trends(morse_scan):
    N = np.asarray(morse_scan["N"])
    eu, et = np.asarray(morse_scan["eta_uniform"]), np.asarray(morse_scan["eta_tf"])
    sel = (N >= 2) & (N <= 16)
    ratio_ok = bool(np.all(eu[sel] < et[sel] / 5))
    mono = (N >= 2) & (N <= 12)
    mono_ok = bool(np.all(np.diff(eu[mono]) < 0))
    base = np.array([r["eta_uniform"] for r in BASELINE["rows"]])
    drift = float(np.max(np.abs(eu / base - 1)))
    ok = ratio_ok and mono_ok and drift <= 1e-9
    record(5, ok, f"eta_u < eta_TF/5 on 2..16: {ratio_ok} (max ratio {np.max(eu[sel] / et[sel]):.3f}); "
                  f"decreasing on 2..12: {mono_ok}; baseline drift {drift:.1e}")


def test_criterion_6_ked_trends(morse_scan):
    s = fermi_setup(morse(**MORSE), 2)
    g = auto_grid(s)
    t = build_profiles(s, g, ("uniform", "exact"), "kinetic")
    ph = s.phase(g)
    neg = True
    for side in ("left", "right"):
        near = (ph.nearest_tp == side) & (np.abs(ph.z) <= 0.4)
        neg &= bool(np.all(t["uniform"].values[near] < 0) and np.all(t["exact"].values[near] < 0))
    N = np.asarray(morse_scan["N"])
    tu, tt = np.asarray(morse_scan["eta_t_uniform"]), np.asarray(morse_scan["eta_t_tf"])
    mono = (N >= 2) & (N <= 12)
    mono_ok = bool(np.all(np.diff(tu[mono]) < 0))
    below = bool(np.all(tu < tt))
    ok = neg and mono_ok and below
    record(6, ok, f"t_sc and t_exact < 0 where |z| <= 0.4 at both turning points: {neg}; "
                  f"eta_T(uniform) decreasing on 2..12: {mono_ok}; below eta_T(TF) for N=1..17: {below}")


def test_criterion_7_continuation():
    worst_res = 0.0
    jumps, seams = [], []
    for pot, N in ((morse(**MORSE), 2), (morse(**MORSE), 8), (harmonic(1.0), 1), (harmonic(1.0), 8)):
        s = fermi_setup(pot, N)
        n, t = d.uniform_terms(d.uniform_inputs(s.phase(auto_grid(s))))
        worst_res = max(worst_res, d._residue(n).max(), d._residue(t).max())
        for side in ("left", "right"):
            a = seek_z(s, side, d.Z_MIN)
            b = seek_z(s, side, -d.Z_MIN)
            na = d.uniform_density(d.uniform_inputs(a))
            nb = d.uniform_density(d.uniform_inputs(b))
            jumps.append(abs(na / nb - 1))
            # the window meets the closed form at its edge
            inner = s.phase(a.x - np.sign(a.x - a.x_tp) * 1e-9)
            seams.append(abs(d.uniform_density(d.uniform_inputs(inner)) / na - 1))
    ok = worst_res <= 1e-10 and max(jumps) <= 1e-3
    record(7, ok, f"max imaginary residue {worst_res:.1e} (<=1e-10); window edge mismatch {max(seams):.1e}; "
                  f"n(z=+0.02) vs n(z=-0.02) differ by {min(jumps):.1e}..{max(jumps):.1e} (<=1e-3)")


def test_criterion_8_xi0_identity():
    alphas = np.linspace(-2.0, 2.0, 401)
    alphas = alphas[alphas != 0.0]
    err = np.abs(d.xi0_series(alphas, 25) - (1 / np.sin(alphas) - 1 / alphas))
    worst = float(err.max())
    at = float(alphas[np.argmax(err)])
    inside = float(err[np.abs(alphas) <= 1.99].max())
    record(8, worst <= 1e-10, f"max |partial sum - (csc a - 1/a)| {worst:.3e} at a={at:+.2f} (<=1e-10); "
                              f"{inside:.1e} for |a|<=1.99")


def test_criterion_9_oracle_integrity():
    ho = solve_box(harmonic(1.0), (-10, 10), 4000, 6)
    e0 = abs(ho.energies[0] - 0.5)
    pot = morse(**MORSE)
    st = solve_auto(pot, 16)
    worst_orth = 0.0
    for states in (ho, st):
        gram = np.trapezoid(states.orbitals[:, None, :] * states.orbitals[None, :, :], states.grid, axis=-1)
        worst_orth = max(worst_orth, float(np.max(np.abs(gram - np.eye(states.nstates)))))
    worst_ked = 0.0
    for N in (1, 2, 8, 16):
        n = exact_density(st, N)
        total = np.sum(st.energies[:N]) - np.trapezoid(pot.v(n.grid) * n.values, n.grid)
        # kinetic energy from the orbitals' own difference quotients
        dphi = np.diff(st.orbitals[:N], axis=1)
        kinetic = 0.5 * st.hbar ** 2 * np.sum(dphi ** 2) / st.spacing
        worst_ked = max(worst_ked, abs(kinetic / total - 1))
    ok = worst_orth <= 1e-8 and e0 <= 1e-6 and worst_ked <= 1e-6
    record(9, ok, f"orthonormality {worst_orth:.1e} (<=1e-8); harmonic |E0-0.5| {e0:.1e} (<=1e-6); "
                  f"KED total vs sum E - int v n {worst_ked:.1e} (<=1e-6)")
