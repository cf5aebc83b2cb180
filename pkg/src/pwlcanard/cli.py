"""Command line front end.

Subcommands: classify | sdi | portrait | verify | cycles | sweep.
Exit codes: 0 success, 1 verification or experiment failure, 2 invalid
input.  All emitted files are deterministic for a given (config, seed).
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from .cases import (Claim, crosscheck, draw_normal_form, golden_cases,
                    predict)
from .config import RunConfig, load_config, normal_form_from, sim_config_from
from .errors import NotVI3, PwlCanardError, Violation
from .halfmap import half_map, half_map_inverse, half_map_ode_oracle
from .model import (NormalForm, RegimeKind, build_normal_form, classify,
                    eigenvalues_minus, sliding_vf, symmetry_reflect, v_poly,
                    x_star)
from .regularization import ARCTAN, TANH, get as get_regularization
from .report import (SCHEMA_VERSION, fmt_float, json_dumps, write_csv,
                     write_json)
from .sdi import (CurveKind, MultiplicityClass, contact_points, curve_kind,
                  default_theta, delta_bar, find_sdi_zeros, hyperbola_hp,
                  phi_prefactor, sdi, sdi_domain, sdi_quadrature,
                  sdi_tilde_prime)
from .sim import (canard_cycle_polyline, count_window, find_limit_cycles,
                  sweep_lambda)

_REGIME_REPS = {
    RegimeKind.SADDLE: "saddle.1",
    RegimeKind.NODE_DISTINCT: "node-distinct.3",
    RegimeKind.NODE_REPEATED: "node-repeated.1",
    RegimeKind.FOCUS: "focus.1",
    RegimeKind.CENTER: "appendixA.a",
    RegimeKind.INVARIANT_LINE: "appendixB.a",
    RegimeKind.PARABOLA: "appendixB.e",
}


def _interior_grid(nf: NormalForm, n: int, frac: float = 0.9) -> np.ndarray:
    dom = sdi_domain(nf)
    hi = dom.b if math.isfinite(dom.b) else 5.0
    return np.linspace(hi / (n + 1), frac * hi, n)


# ---------------------------------------------------------------------------
# verification suites (shared by cmd_verify and the acceptance tests)

def suite_halfmap_oracle(seed: int, n_x: int = 10) -> dict:
    """Closed-form half map against ODE shooting, one representative per
    lower-field regime."""
    cases = golden_cases()
    max_err = 0.0
    checks = 0
    worst = ""
    for kind in sorted(_REGIME_REPS, key=lambda k: k.value):
        nf = cases[_REGIME_REPS[kind]]
        regime = classify(nf)
        d = regime.pi_domain_end if math.isfinite(regime.pi_domain_end) else 5.0
        hi = 0.9 * d
        # near the domain end the return point can blow up; keep the orbit
        # depth moderate so the shooting oracle stays within its own error
        if abs(half_map(nf, hi, regime).pi_x) > 50.0:
            hi = half_map_inverse(nf, -50.0, regime)
        for x in np.linspace(hi / (n_x + 1), hi, n_x):
            cf = half_map(nf, float(x), regime).pi_x
            ode = half_map_ode_oracle(nf, float(x)).pi_x
            err = abs(cf - ode) / (1.0 + abs(x))
            checks += 1
            if err > max_err:
                max_err = err
                worst = f"{_REGIME_REPS[kind]} x={x:.6g}"
    return {"passed": max_err <= 1e-8, "checks": checks,
            "max_scaled_error": max_err, "worst": worst}


_QUAD_CASES = ("saddle.1", "saddle.3", "saddle.5", "node-distinct.5",
               "node-distinct.8", "node-repeated.3", "focus.1", "focus.4",
               "appendixA.a", "appendixB.b")


def suite_sdi_quadrature(seed: int, n_pts: int = 12) -> dict:
    """Closed-form integral against adaptive quadrature."""
    cases = golden_cases()
    max_err = 0.0
    checks = 0
    worst = ""
    for cid in _QUAD_CASES:
        nf = cases[cid]
        for x in _interior_grid(nf, n_pts):
            err = abs(sdi(nf, ARCTAN, float(x))
                      - sdi_quadrature(nf, ARCTAN, float(x)))
            checks += 1
            if err > max_err:
                max_err = err
                worst = f"{cid} x={x:.6g}"
    return {"passed": max_err <= 1e-10, "checks": checks,
            "max_abs_error": max_err, "worst": worst}


def _report_zero_count(rep) -> int:
    return sum(2 if z.multiplicity_class is MultiplicityClass.DOUBLE else 1
               for z in rep.zeros)


def suite_theorem_random(seed: int, n_draws: int = 210,
                         n_grid: int = 96) -> dict:
    """Randomized zero-count bound: every admissible draw outside the
    identically-zero locus yields at most one zero counting multiplicity."""
    rng = np.random.default_rng(seed)
    kinds = sorted(RegimeKind, key=lambda k: k.value)
    per_kind = max(1, -(-n_draws // len(kinds)))
    violations = []
    checks = 0
    for kind in kinds:
        for _ in range(per_kind):
            nf = draw_normal_form(rng, kind)
            rep = find_sdi_zeros(nf, ARCTAN, n_grid=n_grid)
            checks += 1
            if _report_zero_count(rep) > 1 or rep.anomalies:
                violations.append({
                    "params": [nf.beta_minus, nf.gamma_minus, nf.B,
                               nf.alpha_plus, nf.delta_plus],
                    "zeros": [z.x0 for z in rep.zeros],
                    "anomalies": list(rep.anomalies),
                })
    return {"passed": not violations, "checks": checks,
            "violations": violations[:5]}


def suite_case_table(seed: int, n_grid: int = 128) -> dict:
    """Crosscheck of every golden case against its predicted claim."""
    failures = []
    checks = 0
    for cid, nf in sorted(golden_cases().items()):
        v = crosscheck(nf, ARCTAN, n_grid=n_grid)
        checks += 1
        if not v.passed:
            failures.append({"case": cid, "details": v.details})
    return {"passed": not failures, "checks": checks, "failures": failures}


def contact_residual(nf: NormalForm, x: float, y: float) -> float:
    """Largest residual of the two contact-point equations at (x, y): the
    contact curve passes through the point and the cubic field is tangent to
    it there."""
    grad = ((1.0 + nf.delta_plus) * nf.beta_minus
            * (x * v_poly(nf, y) * sliding_vf(nf, x)
               + y * v_poly(nf, x) * sliding_vf(nf, y)))
    return max(abs(grad), abs(delta_bar(nf, x, y)))


_LEMMA_BRANCHES = [
    # (lemma, branch, family)
    ("saddle", "x*=1/g", "eq"),
    ("saddle", "xR<x*<1/g", "in"),
    ("saddle", "xL<x*<xR", "in"),
    ("saddle", "x*<xL", "in"),
    ("node-distinct", "xR<x*", "in"),
    ("node-distinct", "xL<x*<xR", "in"),
    ("node-distinct", "1/g<x*<xL", "in"),
    ("node-distinct", "x*=1/g", "eq"),
    ("node-repeated", "2/g<x*", "in"),
    ("node-repeated", "1/g<x*<2/g", "in"),
    ("node-repeated", "x*=1/g", "eq"),
]


def _draw_lemma_case(rng, lemma: str, branch: str) -> NormalForm:
    drift = float(rng.uniform(0.2, 2.0))
    delta = float(rng.uniform(0.2, 2.0))
    B = delta + drift
    if lemma == "saddle":
        beta = -10.0 ** float(rng.uniform(-1.0, 1.0))
        gamma = 10.0 ** float(rng.uniform(-1.0, 0.7))
    elif lemma == "node-distinct":
        beta = 10.0 ** float(rng.uniform(-1.0, 1.0))
        gamma = math.sqrt(4.0 * beta) * 10.0 ** float(rng.uniform(0.05, 0.5))
    else:
        beta = 10.0 ** float(rng.uniform(-1.0, 1.0))
        gamma = 2.0 * math.sqrt(beta)
    disc = gamma * gamma - 4.0 * beta
    if disc > 0.0:
        s = math.sqrt(disc)
        x_l, x_r = sorted((2.0 / (gamma + s), 2.0 / (gamma - s)))
    else:
        x_l = x_r = 2.0 / gamma

    def between(lo, hi):
        return float(rng.uniform(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo)))

    if branch == "x*=1/g":
        alpha = -drift * gamma
        return build_normal_form(beta, gamma, B, alpha, 0.0, delta, 0.0)
    if lemma == "saddle":
        targets = {"xR<x*<1/g": between(x_r, 1.0 / gamma),
                   "xL<x*<xR": between(x_l, x_r),
                   "x*<xL": between(3.0 * x_l, x_l)}
    elif lemma == "node-distinct":
        targets = {"xR<x*": between(x_r, 3.0 * x_r),
                   "xL<x*<xR": between(x_l, x_r),
                   "1/g<x*<xL": between(1.0 / gamma, x_l)}
    else:
        targets = {"2/g<x*": between(2.0 / gamma, 6.0 / gamma),
                   "1/g<x*<2/g": between(1.0 / gamma, 2.0 / gamma)}
    xs = targets[branch]
    alpha = -drift / xs
    return build_normal_form(beta, gamma, B, alpha, 0.0, delta, 0.0)


def _lemma_ordering_holds(nf: NormalForm, lemma: str, branch: str) -> bool:
    regime = classify(nf)
    xs = x_star(nf)
    gamma, beta = nf.gamma_minus, nf.beta_minus
    ratio = (gamma * xs - 1.0) / beta
    if branch == "x*=1/g":
        return abs(ratio) <= 1e-12
    if ratio < 0.0:
        return False
    x_c = math.sqrt(ratio)
    x_l, x_r = regime.x_L, regime.x_R
    if lemma == "saddle":
        if branch == "xR<x*<1/g":
            return 0.0 < x_c < x_r
        if branch == "xL<x*<xR":
            return x_r < x_c < -x_l
        return -x_l < x_c < -xs
    if lemma == "node-distinct":
        if branch == "xR<x*":
            return x_r < x_c < xs
        if branch == "xL<x*<xR":
            return xs < x_c < x_r
        return 0.0 < x_c < xs
    if branch == "2/g<x*":
        return 2.0 / gamma < x_c < xs
    return 0.0 < x_c < xs


def suite_geometry(seed: int, draws_per_branch: int = 20) -> dict:
    """Hyperbola involution, contact-point residuals and the contact-point
    ordering statements for the saddle and node regimes."""
    cases = golden_cases()
    failures = []
    checks = 0

    # involution hp(hp(x)) = x where the contact curve is a hyperbola
    for cid, nf in sorted(cases.items()):
        if curve_kind(nf) is not CurveKind.HYPERBOLA:
            continue
        xs_val = x_star(nf)
        for x in np.linspace(0.05, 0.45, 9):
            t = float(x)
            if abs(t - xs_val) < 1e-3:
                continue
            try:
                h = hyperbola_hp(nf, t)
                if abs(h - xs_val) < 1e-9:
                    continue
                back = hyperbola_hp(nf, h)
            except PwlCanardError:
                continue
            checks += 1
            if abs(back - t) > 1e-10 * (1.0 + abs(t)):
                failures.append({"kind": "involution", "case": cid,
                                 "x": t, "err": abs(back - t)})

    # contact points satisfy both contact equations
    for cid, nf in sorted(cases.items()):
        if curve_kind(nf) not in (CurveKind.HYPERBOLA, CurveKind.LINE):
            continue
        for cx, cy in contact_points(nf):
            checks += 1
            res = contact_residual(nf, cx, cy)
            if res > 1e-10:
                failures.append({"kind": "contact", "case": cid,
                                 "point": [cx, cy], "residual": res})

    # ordering statements on random draws per branch
    rng = np.random.default_rng(seed)
    for lemma, branch, _ in _LEMMA_BRANCHES:
        for _ in range(draws_per_branch):
            nf = _draw_lemma_case(rng, lemma, branch)
            checks += 1
            if not _lemma_ordering_holds(nf, lemma, branch):
                failures.append({"kind": "ordering", "lemma": lemma,
                                 "branch": branch,
                                 "params": [nf.beta_minus, nf.gamma_minus,
                                            nf.B, nf.alpha_plus,
                                            nf.delta_plus]})
    return {"passed": not failures, "checks": checks,
            "failures": failures[:5]}


_SYMMETRY_CASES = ("saddle.1", "saddle.3", "node-distinct.5", "focus.1",
                   "appendixB.a")


def suite_symmetry(seed: int, n_pts: int = 25) -> dict:
    """Reflection identity I_{gamma}(x) = -I_{-gamma}(-Pi(x)) with
    alpha_plus negated."""
    cases = golden_cases()
    max_err = 0.0
    checks = 0
    for cid in _SYMMETRY_CASES:
        nf = cases[cid]
        mirror = symmetry_reflect(nf)
        for x in _interior_grid(nf, n_pts):
            pi_x = half_map(nf, float(x)).pi_x
            err = abs(sdi(nf, ARCTAN, float(x))
                      + sdi(mirror, ARCTAN, -pi_x))
            checks += 1
            max_err = max(max_err, err)
    return {"passed": max_err <= 1e-9, "checks": checks,
            "max_abs_error": max_err}


_PHI_CASES = ("saddle.3", "node-distinct.5", "node-repeated.3", "focus.1")


def suite_phi_independence(seed: int, n_pts: int = 15) -> dict:
    """Zero locations are phi-independent; I values scale by the prefactor
    ratio."""
    cases = golden_cases()
    max_zero_err = 0.0
    max_ratio_err = 0.0
    checks = 0
    for cid in _PHI_CASES:
        nf = cases[cid]
        ra = find_sdi_zeros(nf, ARCTAN, n_grid=128)
        rt = find_sdi_zeros(nf, TANH, n_grid=128)
        if len(ra.zeros) != len(rt.zeros):
            return {"passed": False, "checks": checks,
                    "details": f"{cid}: zero count differs"}
        for za, zt in zip(ra.zeros, rt.zeros):
            checks += 1
            max_zero_err = max(max_zero_err, abs(za.x0 - zt.x0))
        ratio = (phi_prefactor(ARCTAN, nf.delta_plus)
                 / phi_prefactor(TANH, nf.delta_plus))
        for x in _interior_grid(nf, n_pts):
            it = sdi(nf, TANH, float(x))
            if abs(it) < 1e-14:
                continue
            checks += 1
            max_ratio_err = max(max_ratio_err,
                                abs(sdi(nf, ARCTAN, float(x)) / it - ratio)
                                / ratio)
    return {"passed": max_zero_err <= 1e-9 and max_ratio_err <= 1e-9,
            "checks": checks, "max_zero_error": max_zero_err,
            "max_ratio_error": max_ratio_err}


SUITES = {
    "halfmap-oracle": suite_halfmap_oracle,
    "sdi-quadrature": suite_sdi_quadrature,
    "theorem-random": suite_theorem_random,
    "case-table": suite_case_table,
    "geometry": suite_geometry,
    "symmetry": suite_symmetry,
    "phi-independence": suite_phi_independence,
}


def _run_suite(args: tuple[str, int]) -> tuple[str, dict]:
    name, seed = args
    return name, SUITES[name](seed)


# ---------------------------------------------------------------------------
# subcommands

def _out_dir(cfg: RunConfig) -> Path:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _params_dict(nf: NormalForm) -> dict:
    return {"beta_minus": nf.beta_minus, "gamma_minus": nf.gamma_minus,
            "B": nf.B, "alpha_plus": nf.alpha_plus,
            "beta_plus": nf.beta_plus, "delta_plus": nf.delta_plus,
            "gamma_plus": nf.gamma_plus}


def _classify_payload(nf: NormalForm) -> dict:
    regime = classify(nf)
    pred = predict(nf)
    eig = eigenvalues_minus(nf)
    return {
        "schema_version": SCHEMA_VERSION,
        "params": _params_dict(nf),
        "regime": regime.kind.value,
        "eigenvalues": list(eig) if eig is not None else None,
        "x_L": regime.x_L,
        "x_R": regime.x_R,
        "x_star": x_star(nf),
        "pi_domain_end": regime.pi_domain_end,
        "pi_image_end": regime.pi_image_end,
        "sdi_domain_b": pred.domain_b.b,
        "sdi_domain_binding": pred.domain_b.binding.value,
        "curve_kind": curve_kind(nf).value,
        "contact_points": ([list(p) for p in contact_points(nf)]
                           if curve_kind(nf) in (CurveKind.HYPERBOLA,
                                                 CurveKind.LINE) else []),
        "case_id": pred.case_id,
        "claim": pred.claim.value,
        "cyclicity_bound": pred.cyclicity_bound,
        "cycle_stability": (pred.cycle_stability.value
                            if pred.cycle_stability else None),
        "reflected": pred.reflected,
    }


def cmd_classify(cfg: RunConfig) -> int:
    nf = normal_form_from(cfg)
    payload = _classify_payload(nf)
    out = _out_dir(cfg)
    if cfg.format == "csv":
        header = ["case_id", "regime", "claim", "cyclicity_bound",
                  "cycle_stability", "x_L", "x_R", "x_star", "sdi_domain_b",
                  "curve_kind"]
        row = [payload[k] if payload[k] is not None else "" for k in header]
        from .report import csv_text
        text = csv_text(header, [row])
        (out / "report.csv").write_text(text, newline="\n")
        sys.stdout.write(text)
    else:
        write_json(out / "report.json", payload)
        sys.stdout.write(json_dumps(payload))
    return 0


def cmd_sdi(cfg: RunConfig) -> int:
    nf = normal_form_from(cfg)
    theta = cfg.theta if cfg.theta > 0.0 else None
    verdict = crosscheck(nf, get_regularization(cfg.phi_name),
                         theta=theta, n_grid=cfg.n_grid)
    rep = verdict.report
    pred = verdict.prediction
    out = _out_dir(cfg)

    payload = {
        "schema_version": SCHEMA_VERSION,
        "params": _params_dict(nf),
        "case_id": pred.case_id,
        "claim": pred.claim.value,
        "identically_zero": rep.identically_zero,
        "sign_profile": rep.sign_profile.value,
        "domain_b": rep.domain.b,
        "zeros": [{"x0": z.x0, "multiplicity": z.multiplicity_class.value,
                   "i_prime": z.i_prime_at_zero} for z in rep.zeros],
        "anomalies": list(rep.anomalies),
        "verdict": "PASS" if verdict.passed else "FAIL",
        "details": verdict.details,
    }
    write_json(out / "report.json", payload)

    rows = []
    regime = classify(nf)
    for x, val in rep.samples:
        try:
            pi_x = half_map(nf, x, regime).pi_x
            dbar = delta_bar(nf, x, pi_x)
            itp = sdi_tilde_prime(nf, x, regime)
        except PwlCanardError:
            dbar = math.nan
            itp = math.nan
        rows.append([x, val, itp, dbar])
    write_csv(out / "samples.csv", ["x", "I", "I_tilde_prime", "delta"], rows)

    from .plots import plot_sdi
    plot_sdi(rep, out / "sdi.svg")

    if verdict.passed:
        sys.stdout.write(f"PASS case={pred.case_id}\n")
        return 0
    sys.stdout.write(f"FAIL case={pred.case_id}: {verdict.details}\n")
    return 1


def cmd_portrait(cfg: RunConfig) -> int:
    nf = normal_form_from(cfg)
    out = _out_dir(cfg)
    from .plots import plot_portrait
    plot_portrait(nf, out / "portrait.svg", seed=cfg.seed)
    sys.stdout.write(f"wrote {out / 'portrait.svg'}\n")
    return 0


def cmd_verify(cfg: RunConfig, suite: str | None = None) -> int:
    names = sorted(SUITES) if suite is None else [suite]
    if suite is not None and suite not in SUITES:
        sys.stderr.write(f"unknown suite {suite!r}; choose from "
                         f"{sorted(SUITES)}\n")
        return 2
    jobs = [(name, cfg.seed) for name in names]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = dict(pool.map(_run_suite, jobs))
    else:
        results = dict(map(_run_suite, jobs))

    payload = {
        "schema_version": SCHEMA_VERSION,
        "seed": cfg.seed,
        "suites": {name: results[name] for name in names},
        "all_passed": all(results[name]["passed"] for name in names),
    }
    out = _out_dir(cfg)
    write_json(out / "verify_summary.json", payload)
    for name in names:
        status = "PASS" if results[name]["passed"] else "FAIL"
        sys.stdout.write(f"{status} suite={name}\n")
    return 0 if payload["all_passed"] else 1


def cmd_cycles(cfg: RunConfig) -> int:
    nf = normal_form_from(cfg)
    phi = get_regularization(cfg.phi_name)
    sim = sim_config_from(cfg)
    rows = sweep_lambda(nf, phi, sim, (cfg.lambda_lo, cfg.lambda_hi),
                        cfg.n_lambda, (cfg.y_lo, cfg.y_hi), cfg.n_scan)
    out = _out_dir(cfg)
    table = []
    for r in rows:
        table.append([r.lambda_tilde, r.count,
                      ";".join(fmt_float(v) for v in r.section_points),
                      ";".join(fmt_float(v) for v in r.multipliers)])
    write_csv(out / "bifurcation.csv",
              ["lambda_tilde", "count", "section_points", "multipliers"],
              table)

    window = count_window(rows, cfg.target_count)
    if window is None:
        sys.stdout.write(f"target count {cfg.target_count} not found in "
                         f"[{fmt_float(cfg.lambda_lo)}, "
                         f"{fmt_float(cfg.lambda_hi)}]\n")
        return 1

    lam_mid = 0.5 * (window[0] + window[1])
    sim_mid = replace(sim, lambda_tilde=lam_mid)
    cycles = find_limit_cycles(nf, phi, sim_mid, (cfg.y_lo, cfg.y_hi),
                               cfg.n_scan)
    poly_rows = []
    canards = []
    for i, cyc in enumerate(cycles):
        x_hat = float(np.max(cyc.polyline[:, 0]))
        canards.append(canard_cycle_polyline(nf, x_hat))
        for px, py in cyc.polyline:
            poly_rows.append([i, float(px), float(py)])
    write_csv(out / "cycles.csv", ["cycle_index", "x", "y"], poly_rows)

    from .plots import plot_cycles
    plot_cycles(nf, cycles, canards, out / "cycles.svg")

    payload = {
        "schema_version": SCHEMA_VERSION,
        "params": _params_dict(nf),
        "epsilon": cfg.epsilon,
        "window": list(window),
        "lambda_mid": lam_mid,
        "cycles": [{"section_point": c.section_point, "period": c.period,
                    "multiplier": c.multiplier,
                    "stability": c.stability.value,
                    "residual": c.residual} for c in cycles],
    }
    write_json(out / "report.json", payload)
    sys.stdout.write(f"count={cfg.target_count} window="
                     f"[{fmt_float(window[0])}, {fmt_float(window[1])}] "
                     f"cycles={len(cycles)}\n")
    return 0


def _sweep_point(args) -> list:
    alpha, cfg_tuple = args
    beta, gamma, B, beta_p, delta, gamma_p, phi_name, n_grid = cfg_tuple
    nf = build_normal_form(beta, gamma, B, alpha, beta_p, delta, gamma_p)
    pred = predict(nf)
    rep = find_sdi_zeros(nf, get_regularization(phi_name), n_grid=n_grid)
    return [alpha, pred.case_id, pred.claim.value, len(rep.zeros),
            ";".join(fmt_float(z.x0) for z in rep.zeros)]


def cmd_sweep(cfg: RunConfig) -> int:
    alphas = np.linspace(cfg.alpha_lo, cfg.alpha_hi, cfg.n_alpha)
    cfg_tuple = (cfg.beta_minus, cfg.gamma_minus, cfg.B, cfg.beta_plus,
                 cfg.delta_plus, cfg.gamma_plus, cfg.phi_name, cfg.n_grid)
    jobs = [(float(a), cfg_tuple) for a in alphas]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_sweep_point, jobs))
    else:
        rows = list(map(_sweep_point, jobs))
    rows.sort(key=lambda r: r[0])
    out = _out_dir(cfg)
    write_csv(out / "sweep.csv",
              ["alpha_plus", "case_id", "claim", "zero_count", "zeros"],
              rows)
    sys.stdout.write(f"wrote {out / 'sweep.csv'} ({len(rows)} rows)\n")
    return 0


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pwlcanard",
        description="half-maps, slow divergence integrals and limit cycles "
                    "of regularized piecewise-linear two-fold systems")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("classify", "sdi", "portrait", "verify", "cycles", "sweep"):
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="key=value config file")
        p.add_argument("--format", choices=("json", "csv"), default=None)
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--jobs", type=int, default=None)
        p.add_argument("--theta", type=float, default=None)
        p.add_argument("--epsilon", type=float, default=None)
        p.add_argument("--lambda-tilde", type=float, default=None,
                       dest="lambda_tilde")
        p.add_argument("--case", default=None, help="golden case id")
        if name == "verify":
            p.add_argument("--suite", default=None,
                           help=f"run one suite: {sorted(SUITES)}")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, format=args.format,
                          output_dir=args.out, seed=args.seed,
                          jobs=args.jobs, theta=args.theta,
                          epsilon=args.epsilon,
                          lambda_tilde=args.lambda_tilde, case=args.case)
        if args.command == "classify":
            return cmd_classify(cfg)
        if args.command == "sdi":
            return cmd_sdi(cfg)
        if args.command == "portrait":
            return cmd_portrait(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, suite=args.suite)
        if args.command == "cycles":
            return cmd_cycles(cfg)
        return cmd_sweep(cfg)
    except (NotVI3, Violation, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
