"""Acceptance suite: one test per headline result, printed pass/fail.

Each test prints a single pass/fail line.  The three shock-tube presets
are simulated once per scheme in a module-scoped fixture and shared by
the array, plateau, and comparison criteria.  The ODE-method runs use
r = 1e-5 with nu_step = 1e-3 (the documented scaling) to keep the suite
within minutes.
"""

import math

import numpy as np
import pytest

from twofluid import diag, tcs, wam
from twofluid.cli import (RunConfig, _simulate, comparison_report,
                          initial_state, reproduce_arrays, scaling_study)
from twofluid.eos import solve_alpha, alpha_lower_bound
from twofluid.grid import GridSpec, GridState
from twofluid.presets import PRESET_NAMES

from conftest import bisect_alpha

WAM_CFL = 1e-5
WAM_NU_STEP = 1e-3


def _report(cid, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"\n[acceptance] criterion {cid}: {status} ({detail})")
    assert ok, f"criterion {cid} failed: {detail}"


def _base_config(name, **kw):
    return RunConfig(preset=name, scheme="both", cfl_wam=WAM_CFL,
                     nu_step=WAM_NU_STEP, snapshots=(0.0005,), **kw)


@pytest.fixture(scope="module")
def preset_runs():
    """Final and mid-time profiles plus wave tables for every preset/scheme."""
    out = {}
    for name in PRESET_NAMES:
        config = _base_config(name)
        params, ic = initial_state(config)
        per = {}
        for scheme in ("wam", "tcs"):
            snaps = _simulate(config, scheme, params, ic)
            mid, fin = snaps[0], snaps[-1]
            prof_mid = diag.primitive_profile(mid, params)
            prof_fin = diag.primitive_profile(fin, params)
            entries = diag.wave_report(prof_mid, prof_fin, mid.t, fin.t,
                                       params)
            per[scheme] = {"mid": prof_mid, "final": prof_fin,
                           "entries": entries}
        out[name] = {"params": params, "h": ic.spec.h, "schemes": per}
    return out


def _row(entries, which):
    idx = {"left": 0, "middle": 1, "right": -1}[which]
    return np.array(entries[idx].speeds.as_tuple())


def test_criterion_1_shock_tube_1_wave_speeds(preset_runs, tmp_path):
    details = []
    ok = True
    for scheme in ("tcs", "wam"):
        entries = preset_runs["shock-tube-1"]["schemes"][scheme]["entries"]
        ok &= len(entries) == 3
        for which, target in (("left", -255.9), ("right", 370.2)):
            row = _row(entries, which)
            dev = float(np.max(np.abs(row - target)))
            spread = float(np.max(row) - np.min(row))
            ok &= dev <= 1.0 and spread <= 0.5
            details.append(f"{scheme}/{which}: max|c-({target})|={dev:.3f}, "
                           f"spread={spread:.3f}")
    # the CLI-level table entry point agrees with the fixture pipeline
    tables = reproduce_arrays(RunConfig(preset="shock-tube-1", scheme="tcs"),
                              tmp_path)
    cli_row = np.array(tables["tcs"][0].speeds.as_tuple())
    fixture_row = _row(preset_runs["shock-tube-1"]["schemes"]["tcs"]["entries"],
                       "left")
    ok &= bool(np.allclose(cli_row, fixture_row, rtol=1e-12))
    _report(1, ok, "; ".join(details))


def test_criterion_2_shock_tube_2_wave_speeds(preset_runs):
    details = []
    ok = True
    for scheme in ("tcs", "wam"):
        entries = preset_runs["shock-tube-2"]["schemes"][scheme]["entries"]
        ok &= len(entries) == 3
        left = _row(entries, "left")
        right = _row(entries, "right")
        ok &= bool(np.all(np.abs(left - (-240.7)) <= 1.5))
        ok &= bool(np.all(np.abs(right - 358.6) <= 1.5))
        c1, c2, c3, c4, c5 = _row(entries, "middle")
        ok &= abs(c1 - 9.3) <= 1.0 and abs(c2 - 9.3) <= 1.0
        others = [c for c in (c3, c4, c5) if np.isfinite(c)]
        max_dev = max(abs(c - c1) / abs(c1) for c in others) if others else 1.0
        ok &= max_dev > 0.10
        details.append(f"{scheme}: c1={c1:.2f}, c2={c2:.2f}, "
                       f"max middle deviation={max_dev:.1%}")
    _report(2, ok, "; ".join(details))


def test_criterion_3_shock_tube_2_plateau_values(preset_runs):
    details = []
    ok = True
    for scheme in ("tcs", "wam"):
        prof = preset_runs["shock-tube-2"]["schemes"][scheme]["final"]
        plateaus = diag.detect_plateaus(prof)
        ok &= len(plateaus) == 4
        if len(plateaus) == 4:
            second = plateaus[1]
            ok &= abs(second.p - 2.46e5) <= 0.02e5
            ok &= abs(second.u2 - 89.0) <= 2.0
            details.append(f"{scheme}: p={second.p:.0f}, u2={second.u2:.2f}")
        else:
            details.append(f"{scheme}: {len(plateaus)} plateaus")
    _report(3, ok, "; ".join(details))


def test_criterion_4_shock_tube_3_wave_speeds(preset_runs):
    details = []
    ok = True
    for scheme in ("tcs", "wam"):
        entries = preset_runs["shock-tube-3"]["schemes"][scheme]["entries"]
        ok &= len(entries) == 3
        left = _row(entries, "left")
        right = _row(entries, "right")
        ok &= bool(np.all(np.abs(left - (-253.3)) <= 1.5))
        ok &= bool(np.all(np.abs(right - 369.0) <= 1.5))
        c1, c2, c3, _, _ = _row(entries, "middle")

        def inconsistent(c):
            # n/a, or nowhere near the measured middle-wave speed scale
            return (not np.isfinite(c)) or abs(c) > 100.0

        ok &= inconsistent(c1) and inconsistent(c2)
        details.append(f"{scheme}: middle c1={c1:.4g}, c2={c2:.4g}")
    _report(4, ok, "; ".join(details))


def test_criterion_5_cross_scheme_agreement(preset_runs):
    details = []
    ok = True
    for name in PRESET_NAMES:
        data = preset_runs[name]
        rows = comparison_report(data["schemes"]["wam"]["final"],
                                 data["schemes"]["tcs"]["final"], data["h"])
        worst = max(ratio for _, _, _, ratio in rows)
        ok &= worst <= 0.02
        details.append(f"{name}: max L1/TV={worst:.2%}")
    _report(5, ok, "; ".join(details))


def test_criterion_6_periodic_conservation():
    config = RunConfig(preset="shock-tube-1", boundary="periodic",
                       scheme="both", cfl_wam=1e-4)
    params, ic = initial_state(config)
    tot0 = ic.totals()
    details = []
    ok = True
    for scheme, tol in (("tcs", 1e-12), ("wam", 1e-10)):
        snaps = _simulate(config, scheme, params, ic)
        tot = snaps[-1].totals()
        drift = max(abs(tot[0] - tot0[0]) / tot0[0],
                    abs(tot[1] - tot0[1]) / tot0[1])
        ok &= drift <= tol
        details.append(f"{scheme}: drift={drift:.2e} (tol {tol:g})")
    _report(6, ok, "; ".join(details))


def test_criterion_7_vacuum_proposition(params):
    rng = np.random.default_rng(2024)
    sp = tcs.SchemeParams(cfl=0.002, t_final=0.0)
    n = 32
    violations = 0
    for k in range(1000):
        boundary = "periodic" if k % 2 else "outflow"
        spec = GridSpec(0.0, 1.0, n, boundary=boundary)
        r1 = rng.uniform(0.0, 1000.0, n)
        r2 = rng.uniform(0.0, 5.0, n)
        r1[rng.random(n) < 0.4] = 0.0
        r2[rng.random(n) < 0.4] = 0.0
        state = GridState(spec=spec, r1=r1, r2=r2,
                          m1=r1 * rng.uniform(-100.0, 100.0, n),
                          m2=r2 * rng.uniform(-100.0, 100.0, n))
        out = tcs.step_scheme(state, params, sp)
        if np.any(out.m1[out.r1 == 0.0] != 0.0):
            violations += 1
        if np.any(out.m2[out.r2 == 0.0] != 0.0):
            violations += 1
    _report(7, violations == 0,
            f"1000 randomized states, {violations} violations")


def test_criterion_8_closure_oracle_equivalence(params):
    rng = np.random.default_rng(42)
    n = 100_000
    r1 = 10.0 ** rng.uniform(-8, 4, n)
    r2 = 10.0 ** rng.uniform(-8, 4, n)
    alpha = solve_alpha(r1, r2, params)
    oracle = bisect_alpha(r1, r2, params)
    max_err = float(np.max(np.abs(alpha - oracle)))
    bound_ok = bool(np.all(alpha >= alpha_lower_bound(r1, r2, params)))
    _report(8, max_err <= 1e-10 and bound_ok,
            f"max |alpha - bisection| = {max_err:.2e} over {n} pairs, "
            f"lower bound respected: {bound_ok}")


def test_criterion_9_singular_wave_scalings(tmp_path):
    config = RunConfig(preset="shock-tube-3", scheme="tcs")
    rows = scaling_study(config, resolutions=(1000, 4000),
                         times=(0.0005, 0.001), out_dir=tmp_path)
    # rows come ordered by (resolution, time):
    # (1000, t), (1000, 2t), (4000, t), (4000, 2t)
    (_, _, area_t, width_t, _), (_, _, area_2t, width_2t, _), \
        _, (_, _, _, width_2t_fine, _) = rows
    area_ratio = area_2t / area_t
    width_ratio = width_2t / width_2t_fine
    ok = 1.8 <= area_ratio <= 2.2 and 1.6 <= width_ratio <= 2.5
    _report(9, ok, f"area(2t)/area(t)={area_ratio:.3f}, "
                   f"width(eps)/width(eps/4)={width_ratio:.3f}")


def test_criterion_10_resolution_robustness():
    profiles = {}
    for n in (100, 1000):
        config = RunConfig(preset="shock-tube-1", scheme="tcs", n_cells=n)
        params, ic = initial_state(config)
        final = _simulate(config, "tcs", params, ic)[-1]
        profiles[n] = diag.primitive_profile(final, params)
    coarse = diag.detect_plateaus(profiles[100], tol=0.005, min_cells=4)
    fine = diag.detect_plateaus(profiles[1000], tol=0.005)
    ok = len(coarse) == len(fine) == 4
    worst = 0.0
    if ok:
        spans = {f: (np.max(profiles[1000][f]) - np.min(profiles[1000][f]))
                 for f in ("alpha", "p", "u1", "u2")}
        for pc, pf in zip(coarse, fine):
            for f in ("alpha", "p", "u1", "u2"):
                ref = getattr(pf, f)
                scale = max(abs(ref), 0.05 * spans[f])
                rel = abs(getattr(pc, f) - ref) / scale
                worst = max(worst, rel)
        ok = worst <= 0.05
    _report(10, ok, f"{len(coarse)} coarse vs {len(fine)} fine plateaus, "
                    f"max plateau deviation = {worst:.2%}")


def test_criterion_11_weak_residual_refinement():
    bump = diag.BumpSpec(center=0.5, radius=0.45)
    residuals = []
    for n in (250, 1000, 4000):
        config = RunConfig(preset="shock-tube-1", scheme="tcs", n_cells=n)
        params, _ = initial_state(config)
        dt = config.cfl_tcs / n
        t1 = 0.0005
        t2 = t1 + 20 * dt
        cfg = RunConfig(preset="shock-tube-1", scheme="tcs", n_cells=n,
                        t_final=t2, snapshots=(t1,))
        params, ic = initial_state(cfg)
        snaps = _simulate(cfg, "tcs", params, ic)
        residuals.append(diag.weak_residual(snaps[0], snaps[-1], bump, params))
    keys = sorted(residuals[0])
    monotone = [k for k in keys
                if residuals[0][k] > residuals[1][k] > residuals[2][k]]
    detail = ", ".join(
        f"{k}: " + " > ".join(f"{r[k]:.3g}" for r in residuals)
        for k in keys)
    _report(11, len(monotone) >= 3,
            f"{len(monotone)}/4 equations decrease monotonically; {detail}")
