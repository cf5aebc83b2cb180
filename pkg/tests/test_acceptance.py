"""End-to-end acceptance checks, one printed PASS/FAIL line per criterion."""

import json
import math
import subprocess
import sys
import time

import numpy as np

from pwlcanard import (ARCTAN, Claim, SimConfig, Stability, build_normal_form,
                       canard_cycle_polyline, classify, count_window,
                       delta_bar, directed_hausdorff, find_limit_cycles,
                       golden_cases, half_map, predict, sdi_domain,
                       sdi_tilde_prime, sweep_lambda)
from pwlcanard.cli import (suite_case_table, suite_geometry,
                           suite_halfmap_oracle, suite_phi_independence,
                           suite_sdi_quadrature, suite_symmetry,
                           suite_theorem_random)

SEED = 2026


def _emit(num: int, name: str, ok: bool, extra: str) -> None:
    verdict = "PASS" if ok else "FAIL"
    print(f"{verdict} criterion-{num:02d} {name} ({extra})")


def test_criterion_01_half_map_vs_ode_oracle():
    t0 = time.monotonic()
    res = suite_halfmap_oracle(SEED, n_x=50)
    dt = time.monotonic() - t0
    ok = res["passed"] and dt <= 60.0
    _emit(1, "half map closed form vs ODE shooting",
          ok, f"{res['checks']} checks, max scaled err "
              f"{res['max_scaled_error']:.3e}, {dt:.1f}s")
    assert ok, res


def test_criterion_02_fixed_point_and_derivative():
    cases = golden_cases()
    worst_prime = 0.0
    worst_fd = 0.0
    worst_odd = 0.0
    n = 0
    for cid, nf in sorted(cases.items()):
        ev0 = half_map(nf, 0.0)
        assert ev0.pi_x == 0.0, f"{cid}: Pi(0) != 0"
        worst_prime = max(worst_prime, abs(ev0.pi_prime + 1.0))
        regime = classify(nf)
        d = (regime.pi_domain_end
             if math.isfinite(regime.pi_domain_end) else 2.0)
        for x in (0.25 * d, 0.55 * d):
            h = 1e-6 * d
            fd = (half_map(nf, x + h).pi_x
                  - half_map(nf, x - h).pi_x) / (2.0 * h)
            drv = half_map(nf, x).pi_prime
            worst_fd = max(worst_fd, abs(drv - fd) / abs(fd))
            n += 1
        if nf.gamma_minus == 0.0:
            for x in np.linspace(0.05 * d, 0.9 * d, 9):
                worst_odd = max(worst_odd,
                                abs(half_map(nf, float(x)).pi_x + x))
    ok = worst_prime <= 1e-8 and worst_fd <= 1e-6 and worst_odd <= 1e-10
    _emit(2, "fixed point, derivative, odd symmetry", ok,
          f"{n} FD checks, |Pi'(0)+1| {worst_prime:.1e}, FD rel err "
          f"{worst_fd:.1e}, odd dev {worst_odd:.1e}")
    assert ok


def test_criterion_03_sdi_vs_quadrature():
    res = suite_sdi_quadrature(SEED, n_pts=12)
    _emit(3, "integral closed form vs quadrature", res["passed"],
          f"{res['checks']} checks, max abs err {res['max_abs_error']:.3e}")
    assert res["passed"], res


def test_criterion_04_derivative_sign_identity():
    n = 0
    bad = []
    for cid, nf in sorted(golden_cases().items()):
        b = sdi_domain(nf).b
        hi = b if math.isfinite(b) else 3.0
        for x in np.linspace(hi / 12, 0.88 * hi, 11):
            t = float(x)
            try:
                y = half_map(nf, t).pi_x
                dp = sdi_tilde_prime(nf, t)
                db = delta_bar(nf, t, y)
            except Exception:
                continue
            if abs(db) < 1e-11:
                continue
            n += 1
            if math.copysign(1.0, dp) != math.copysign(1.0, db):
                bad.append((cid, t))
    ok = not bad
    _emit(4, "derivative sign equals contact polynomial sign", ok,
          f"{n} checks, {len(bad)} mismatches")
    assert ok, bad


def test_criterion_05_randomized_zero_bound():
    t0 = time.monotonic()
    res = suite_theorem_random(SEED, n_draws=1000, n_grid=128)
    dt = time.monotonic() - t0
    ok = res["passed"] and dt <= 300.0
    for v in res["violations"]:
        print(f"  violation: {v}")
    _emit(5, "at most one zero on 1000 stratified draws", ok,
          f"{res['checks']} draws, {len(res['violations'])} violations, "
          f"{dt:.1f}s")
    assert ok, res


def test_criterion_06_case_table_crosscheck():
    res = suite_case_table(SEED)
    ok = res["passed"] and res["checks"] >= 33
    _emit(6, "case-table crosscheck", ok,
          f"{res['checks']} cases, {len(res['failures'])} failures")
    assert ok, res


def test_criterion_07_phi_independence():
    res = suite_phi_independence(SEED)
    _emit(7, "regularization independence", res["passed"],
          f"{res['checks']} checks, zero shift {res['max_zero_error']:.1e}, "
          f"ratio err {res['max_ratio_error']:.1e}")
    assert res["passed"], res


def test_criterion_08_reflection_symmetry():
    res = suite_symmetry(SEED)
    _emit(8, "reflection identity", res["passed"],
          f"{res['checks']} checks, max abs err {res['max_abs_error']:.1e}")
    assert res["passed"], res


def test_criterion_09_contact_geometry():
    res = suite_geometry(SEED, draws_per_branch=100)
    _emit(9, "involution, contact residuals, orderings", res["passed"],
          f"{res['checks']} checks, {len(res['failures'])} failures")
    assert res["passed"], res


def test_criterion_10_two_cycle_window():
    t0 = time.monotonic()
    nf = golden_cases()["saddle.3"]
    cfg = SimConfig(epsilon=0.1, max_time=100.0)
    rows = sweep_lambda(nf, ARCTAN, cfg, (-1e-12, -5e-14), 16,
                        (-0.30, -0.02), n_scan=32)
    window = count_window(rows, 2)
    ok = window is not None
    details = "no two-cycle window"
    if ok:
        from dataclasses import replace
        lam = 0.5 * (window[0] + window[1])
        cycles = find_limit_cycles(nf, ARCTAN,
                                   replace(cfg, lambda_tilde=lam),
                                   (-0.30, -0.02), n_scan=32)
        mults = sorted(c.multiplier for c in cycles)
        straddle = (len(cycles) == 2
                    and abs(mults[0]) < 1.0 < abs(mults[1]))
        dhs = []
        for c in cycles:
            x_hat = float(c.polyline[:, 0].max())
            skel = canard_cycle_polyline(nf, x_hat)
            dhs.append(directed_hausdorff(c.polyline, skel))
        near = all(d <= 3.0 * cfg.epsilon for d in dhs)
        ok = straddle and near
        details = (f"window [{window[0]:.2e}, {window[1]:.2e}], "
                   f"multipliers {mults[0]:.3f}/{mults[1]:.3f}, "
                   f"hausdorff {max(dhs):.3f}")
    dt = time.monotonic() - t0
    ok = ok and dt <= 600.0
    _emit(10, "two-cycle unfolding window", ok, f"{details}, {dt:.1f}s")
    assert ok, details


def test_criterion_11_stability_matches_claim():
    t0 = time.monotonic()
    cases = golden_cases()

    nf_a = cases["saddle.1"]
    assert predict(nf_a).claim is Claim.I_NEGATIVE
    cfg_a = SimConfig(epsilon=0.1, lambda_tilde=-1e-6, max_time=100.0)
    cyc_a = find_limit_cycles(nf_a, ARCTAN, cfg_a, (-0.26, -0.04), n_scan=32)
    ok_a = len(cyc_a) == 1 and cyc_a[0].stability is Stability.ATTRACTING

    nf_r = cases["saddle.5"]
    assert predict(nf_r).claim is Claim.I_POSITIVE
    cfg_r = SimConfig(epsilon=0.1, lambda_tilde=2e-2, max_time=100.0,
                      time_reversed=True)
    cyc_r = find_limit_cycles(nf_r, ARCTAN, cfg_r, (-0.06, -0.008), n_scan=32)
    ok_r = len(cyc_r) == 1 and cyc_r[0].stability is Stability.REPELLING

    dt = time.monotonic() - t0
    ok = ok_a and ok_r and dt <= 300.0
    _emit(11, "detected cycle stability matches the sign claim", ok,
          f"attracting n={len(cyc_a)}, repelling n={len(cyc_r)}, {dt:.1f}s")
    assert ok


def test_criterion_12_verify_determinism(tmp_path):
    outs = []
    for name, jobs in (("a", 1), ("b", 1), ("c", 8)):
        out = tmp_path / name
        r = subprocess.run(
            [sys.executable, "-m", "pwlcanard.cli", "verify",
             "--out", str(out), "--seed", "7", "--jobs", str(jobs)],
            capture_output=True, text=True)
        assert r.returncode == 0, r.stdout + r.stderr
        outs.append((out / "verify_summary.json").read_bytes())
    ok = outs[0] == outs[1] == outs[2]
    summary = json.loads(outs[0])
    _emit(12, "byte-identical verification summaries", ok,
          f"{len(summary['suites'])} suites, reruns and jobs 1 vs 8")
    assert ok
