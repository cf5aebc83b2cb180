"""Decision table mapping normal-form parameters to zero-count predictions.

Every admissible parameter tuple lands in exactly one sub-case keyed on the
regime of the lower field and the position of the sliding-field zero x*
relative to the thresholds {x_L, 0, x_R, 1/gamma, 2/gamma}.  Each case
carries a claim about the slow divergence integral (sign, zero count, or
identical vanishing), the induced cyclicity bound, and the stability of the
unique cycle when the sign is known.  gamma_minus < 0 reduces to
gamma_minus > 0 through the reflection symmetry, with the claim sign and
the stability flipped and zero locations mapped through -Pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .model import (NormalForm, RegimeKind, build_normal_form, classify,
                    symmetry_reflect, v_roots)
from .regularization import RegularizationFn
from .sdi import (SdiDomain, SdiReport, SignProfile, find_sdi_zeros,
                  is_identically_zero, sdi_domain)


class Claim(Enum):
    I_NEGATIVE = "INegative"
    I_POSITIVE = "IPositive"
    AT_MOST_ONE_ZERO = "AtMostOneZero"
    EXACTLY_ONE_ZERO = "ExactlyOneZero"
    IDENTICALLY_ZERO = "IdenticallyZero"


class CycleStability(Enum):
    ATTRACTING = "Attracting"
    REPELLING = "Repelling"
    PAIR = "Pair"


#: stability of the unique cycle follows the sign of I: negative means the
#: slow passage contracts, so the cycle attracts
_CLAIM_META = {
    Claim.I_NEGATIVE: (1, CycleStability.ATTRACTING),
    Claim.I_POSITIVE: (1, CycleStability.REPELLING),
    Claim.AT_MOST_ONE_ZERO: (2, CycleStability.PAIR),
    Claim.EXACTLY_ONE_ZERO: (2, CycleStability.PAIR),
    Claim.IDENTICALLY_ZERO: (2, None),
}

_FLIP = {Claim.I_NEGATIVE: Claim.I_POSITIVE,
         Claim.I_POSITIVE: Claim.I_NEGATIVE,
         Claim.AT_MOST_ONE_ZERO: Claim.AT_MOST_ONE_ZERO,
         Claim.EXACTLY_ONE_ZERO: Claim.EXACTLY_ONE_ZERO,
         Claim.IDENTICALLY_ZERO: Claim.IDENTICALLY_ZERO}


@dataclass(frozen=True)
class Prediction:
    case_id: str
    claim: Claim
    cyclicity_bound: int
    cycle_stability: CycleStability | None
    domain_b: SdiDomain
    reflected: bool = False


@dataclass(frozen=True)
class Verdict:
    passed: bool
    prediction: Prediction
    report: SdiReport
    details: str


def _x_star_vs(nf: NormalForm, c: float) -> float:
    """sign(x* - c) computed without the division, exact when the caller
    constructed alpha_plus = -drift/c in floating point."""
    t = nf.drift + nf.alpha_plus * c
    s = math.copysign(1.0, t) if t != 0.0 else 0.0
    if t == 0.0:
        return 0.0
    return s if nf.alpha_plus < 0.0 else -s


def _make(nf: NormalForm, case_id: str, claim: Claim,
          reflected: bool = False) -> Prediction:
    bound, stab = _CLAIM_META[claim]
    return Prediction(case_id, claim, bound, stab, sdi_domain(nf), reflected)


def predict(nf: NormalForm) -> Prediction:
    """Assign the unique sub-case and its claim to a parameter tuple."""
    if nf.gamma_minus < 0.0:
        p = predict(symmetry_reflect(nf))
        claim = _FLIP[p.claim]
        bound, stab = _CLAIM_META[claim]
        return Prediction(p.case_id, claim, bound, stab, sdi_domain(nf),
                          reflected=True)

    b, g, a, s = nf.beta_minus, nf.gamma_minus, nf.alpha_plus, nf.drift

    if is_identically_zero(nf):
        if b == 0.0:
            case = "appendixB.f" if g == 0.0 else "appendixB.a0"
        elif b > 0.0:
            case = "appendixA.b"
        else:
            case = "degenerate.symmetric"
        return _make(nf, case, Claim.IDENTICALLY_ZERO)

    if b == 0.0:
        if g == 0.0:
            case = "appendixB.e" if a < 0.0 else "appendixB.g"
            claim = Claim.I_POSITIVE if a < 0.0 else Claim.I_NEGATIVE
        elif a == 0.0:
            case, claim = "appendixB.c", Claim.I_NEGATIVE
        elif a > 0.0:
            case, claim = "appendixB.d", Claim.I_NEGATIVE
        else:
            # alpha < 0: position of x* against the invariant-line abscissa
            if a + g * s > 0.0:
                case, claim = "appendixB.a", Claim.I_NEGATIVE
            else:
                case, claim = "appendixB.b", Claim.I_POSITIVE
        return _make(nf, case, claim)

    if g == 0.0:
        # symmetric half-map: the integral sign is set by alpha alone
        if b > 0.0:
            case = "appendixA.a" if a < 0.0 else "appendixA.c"
        else:
            case = "degenerate.saddle-neg" if a < 0.0 else "degenerate.saddle-pos"
        claim = Claim.I_POSITIVE if a < 0.0 else Claim.I_NEGATIVE
        return _make(nf, case, claim)

    regime = classify(nf)
    roots = v_roots(nf)

    if b < 0.0:  # saddle
        if a == 0.0:
            return _make(nf, "saddle.9", Claim.I_NEGATIVE)
        x_l, x_r = roots
        if a < 0.0:
            if a + g * s == 0.0:
                return _make(nf, "saddle.2", Claim.I_NEGATIVE)
            if a + g * s > 0.0:
                return _make(nf, "saddle.1", Claim.I_NEGATIVE)
            vs_r = _x_star_vs(nf, x_r)
            if vs_r == 0.0:
                return _make(nf, "saddle.4", Claim.I_POSITIVE)
            if vs_r > 0.0:
                return _make(nf, "saddle.3", Claim.AT_MOST_ONE_ZERO)
            return _make(nf, "saddle.5", Claim.I_POSITIVE)
        vs_l = _x_star_vs(nf, x_l)
        if vs_l == 0.0:
            return _make(nf, "saddle.7", Claim.I_NEGATIVE)
        if vs_l > 0.0:
            return _make(nf, "saddle.6", Claim.I_NEGATIVE)
        return _make(nf, "saddle.8", Claim.I_NEGATIVE)

    disc = g * g - 4.0 * b
    if disc > 0.0:  # node with distinct eigenvalues, 1/g < x_L < x_R
        if a == 0.0:
            return _make(nf, "node-distinct.9", Claim.I_NEGATIVE)
        if a > 0.0:
            return _make(nf, "node-distinct.8", Claim.I_NEGATIVE)
        x_l, x_r = roots
        vs_r = _x_star_vs(nf, x_r)
        if vs_r == 0.0:
            return _make(nf, "node-distinct.2", Claim.I_NEGATIVE)
        if vs_r > 0.0:
            return _make(nf, "node-distinct.1", Claim.I_NEGATIVE)
        vs_l = _x_star_vs(nf, x_l)
        if vs_l == 0.0:
            return _make(nf, "node-distinct.4", Claim.I_NEGATIVE)
        if vs_l > 0.0:
            return _make(nf, "node-distinct.3", Claim.I_NEGATIVE)
        if a + g * s == 0.0:
            return _make(nf, "node-distinct.6", Claim.I_POSITIVE)
        if a + g * s < 0.0:
            return _make(nf, "node-distinct.7", Claim.I_POSITIVE)
        return _make(nf, "node-distinct.5", Claim.EXACTLY_ONE_ZERO)

    if disc == 0.0:  # node with repeated eigenvalue at 2/g
        if a == 0.0:
            return _make(nf, "node-repeated.7", Claim.I_NEGATIVE)
        if a > 0.0:
            return _make(nf, "node-repeated.6", Claim.I_NEGATIVE)
        r = roots[0]
        vs_r = _x_star_vs(nf, r)
        if vs_r == 0.0:
            return _make(nf, "node-repeated.2", Claim.I_NEGATIVE)
        if vs_r > 0.0:
            return _make(nf, "node-repeated.1", Claim.I_NEGATIVE)
        if a + g * s == 0.0:
            return _make(nf, "node-repeated.4", Claim.I_POSITIVE)
        if a + g * s < 0.0:
            return _make(nf, "node-repeated.5", Claim.I_POSITIVE)
        return _make(nf, "node-repeated.3", Claim.EXACTLY_ONE_ZERO)

    # focus
    if a == 0.0:
        return _make(nf, "focus.5", Claim.I_NEGATIVE)
    if a > 0.0:
        return _make(nf, "focus.4", Claim.I_NEGATIVE)
    if a + g * s == 0.0:
        return _make(nf, "focus.2", Claim.I_POSITIVE)
    if a + g * s < 0.0:
        return _make(nf, "focus.3", Claim.I_POSITIVE)
    return _make(nf, "focus.1", Claim.EXACTLY_ONE_ZERO)


def crosscheck(nf: NormalForm, phi: RegularizationFn,
               theta: float | None = None, n_grid: int = 512) -> Verdict:
    """Run the numeric zero finder and compare against the prediction."""
    pred = predict(nf)
    rep = find_sdi_zeros(nf, phi, theta=theta, n_grid=n_grid)
    vals = [v for _, v in rep.samples]
    max_abs = max(abs(v) for v in vals) if vals else 0.0

    if pred.claim is Claim.IDENTICALLY_ZERO:
        ok = rep.identically_zero and max_abs <= 1e-10
        detail = f"max|I|={max_abs:.3e}"
    elif pred.claim is Claim.I_NEGATIVE:
        ok = (rep.sign_profile is SignProfile.ALL_NEGATIVE
              and not rep.zeros)
        detail = f"profile={rep.sign_profile.value}, zeros={len(rep.zeros)}"
    elif pred.claim is Claim.I_POSITIVE:
        ok = (rep.sign_profile is SignProfile.ALL_POSITIVE
              and not rep.zeros)
        detail = f"profile={rep.sign_profile.value}, zeros={len(rep.zeros)}"
    elif pred.claim is Claim.AT_MOST_ONE_ZERO:
        ok = len(rep.zeros) <= 1
        detail = f"zeros={len(rep.zeros)}"
    else:  # exactly one
        ok = len(rep.zeros) == 1
        detail = f"zeros={len(rep.zeros)}"
    if rep.anomalies:
        ok = False
        detail += "; anomalies: " + "; ".join(rep.anomalies)
    return Verdict(ok, pred, rep, detail)


def _nf(beta, gamma, alpha, B=2.0, delta=1.0) -> NormalForm:
    return build_normal_form(beta, gamma, B, alpha, 0.0, delta, 0.0)


def golden_cases() -> dict[str, NormalForm]:
    """One exactly constructed representative per sub-case.

    Threshold equalities are built so the exact comparisons in predict hold:
    the saddle/node families use parameters with dyadic V roots, and
    equality cases set alpha_plus = -drift/threshold with dyadic thresholds.
    """
    cases = {
        # saddle family with V roots x_R = 1/2, x_L = -2 (gamma = 1.5)
        "saddle.1": _nf(-1.0, 1.5, -0.5),       # x* = 2 > 1/g
        "saddle.2": _nf(-1.0, 1.5, -1.5),       # x* = 1/g = 2/3
        "saddle.4": _nf(-1.0, 1.5, -2.0),       # x* = x_R = 1/2
        "saddle.5": _nf(-1.0, 1.5, -4.0),       # x* = 1/4 < x_R
        "saddle.6": _nf(-1.0, 1.5, 1.0),        # x* = -1, x_L < x* < 0
        "saddle.7": _nf(-1.0, 1.5, 0.5),        # x* = x_L = -2
        "saddle.8": _nf(-1.0, 1.5, 0.25),       # x* = -4 < x_L
        "saddle.9": _nf(-1.0, 1.5, 0.0),
        # headline two-cycle family
        "saddle.3": _nf(-1.0, 1.0, -20.0 / 19.0),  # x* = 0.95
        # node family with V roots x_L = 1/2, x_R = 2 (gamma = 2.5)
        "node-distinct.1": _nf(1.0, 2.5, -0.25),   # x* = 4 > x_R
        "node-distinct.2": _nf(1.0, 2.5, -0.5),    # x* = x_R = 2
        "node-distinct.3": _nf(1.0, 2.5, -1.0),    # x* = 1
        "node-distinct.4": _nf(1.0, 2.5, -2.0),    # x* = x_L = 1/2
        "node-distinct.5": _nf(1.0, 2.5, -20.0 / 9.0),  # x* = 0.45
        "node-distinct.6": _nf(1.0, 2.5, -2.5),    # x* = 1/g = 0.4
        "node-distinct.7": _nf(1.0, 2.5, -5.0),    # x* = 0.2
        "node-distinct.8": _nf(1.0, 2.5, 1.0),
        "node-distinct.9": _nf(1.0, 2.5, 0.0),
        # repeated eigenvalue at 2/g = 1 (gamma = 2, beta = 1)
        "node-repeated.1": _nf(1.0, 2.0, -0.5),    # x* = 2
        "node-repeated.2": _nf(1.0, 2.0, -1.0),    # x* = 2/g = 1
        "node-repeated.3": _nf(1.0, 2.0, -5.0 / 3.0),  # x* = 0.6
        "node-repeated.4": _nf(1.0, 2.0, -2.0),    # x* = 1/g = 1/2
        "node-repeated.5": _nf(1.0, 2.0, -4.0),    # x* = 1/4
        "node-repeated.6": _nf(1.0, 2.0, 1.0),
        "node-repeated.7": _nf(1.0, 2.0, 0.0),
        # focus (gamma = 1, beta = 1)
        "focus.1": _nf(1.0, 1.0, -2.0 / 3.0),      # x* = 1.5 > 1/g
        "focus.2": _nf(1.0, 1.0, -1.0),            # x* = 1/g = 1
        "focus.3": _nf(1.0, 1.0, -2.0),            # x* = 1/2
        "focus.4": _nf(1.0, 1.0, 1.0),
        "focus.5": _nf(1.0, 1.0, 0.0),
        # center (beta > 0, gamma = 0)
        "appendixA.a": _nf(1.0, 0.0, -1.0),
        "appendixA.b": _nf(1.0, 0.0, 0.0),
        "appendixA.c": _nf(1.0, 0.0, 1.0),
        # singularity-free lower field (beta = 0)
        "appendixB.a": _nf(0.0, 1.0, -0.5),        # x* = 2 > 1/g
        "appendixB.a0": _nf(0.0, 1.0, -1.0),       # x* = 1/g: I vanishes
        "appendixB.b": _nf(0.0, 1.0, -2.0),        # x* = 1/2
        "appendixB.c": _nf(0.0, 1.0, 0.0),
        "appendixB.d": _nf(0.0, 1.0, 1.0),
        "appendixB.e": _nf(0.0, 0.0, -1.0),
        "appendixB.f": _nf(0.0, 0.0, 0.0),
        "appendixB.g": _nf(0.0, 0.0, 1.0),
        # saddle with symmetric half-map (beta < 0, gamma = 0)
        "degenerate.symmetric": _nf(-1.0, 0.0, 0.0),
        "degenerate.saddle-neg": _nf(-1.0, 0.0, -2.0),
        "degenerate.saddle-pos": _nf(-1.0, 0.0, 2.0),
    }
    return cases


def draw_normal_form(rng, kind: RegimeKind) -> NormalForm:
    """Random admissible parameters with the requested lower-field regime,
    avoiding the identically-zero locus so the at-most-one-zero statement
    applies.  Both signs of gamma_minus are produced."""
    drift = float(rng.uniform(0.2, 2.0))
    delta = float(rng.uniform(0.2, 2.0))
    B = delta + drift
    sg = -1.0 if rng.random() < 0.5 else 1.0
    alpha = float(rng.uniform(-3.0, 3.0))

    if kind is RegimeKind.SADDLE:
        beta = -10.0 ** float(rng.uniform(-1.0, 1.0))
        gamma = sg * 10.0 ** float(rng.uniform(-1.0, 0.7))
    elif kind is RegimeKind.NODE_DISTINCT:
        beta = 10.0 ** float(rng.uniform(-1.0, 1.0))
        gamma = sg * math.sqrt(4.0 * beta) * 10.0 ** float(rng.uniform(0.05, 0.5))
    elif kind is RegimeKind.NODE_REPEATED:
        # derive beta from gamma so the discriminant is exactly zero in
        # floating point (division by 4 is exact)
        gamma = sg * 10.0 ** float(rng.uniform(-0.5, 0.5))
        beta = gamma * gamma / 4.0
    elif kind is RegimeKind.FOCUS:
        beta = 10.0 ** float(rng.uniform(-1.0, 1.0))
        gamma = sg * math.sqrt(4.0 * beta) * 10.0 ** float(rng.uniform(-0.5, -0.05))
    elif kind is RegimeKind.CENTER:
        beta = 10.0 ** float(rng.uniform(-1.0, 1.0))
        gamma = 0.0
        while abs(alpha) < 1e-3:
            alpha = float(rng.uniform(-3.0, 3.0))
    elif kind is RegimeKind.INVARIANT_LINE:
        beta = 0.0
        gamma = sg * 10.0 ** float(rng.uniform(-1.0, 0.7))
        while abs(alpha + gamma * drift) < 1e-6:
            alpha = float(rng.uniform(-3.0, 3.0))
    elif kind is RegimeKind.PARABOLA:
        beta = 0.0
        gamma = 0.0
        while abs(alpha) < 1e-3:
            alpha = float(rng.uniform(-3.0, 3.0))
    else:
        raise ValueError(f"unknown regime kind {kind}")
    return build_normal_form(beta, gamma, B, alpha, 0.0, delta, 0.0)


def case_catalog() -> list[dict]:
    """Machine-readable listing of all sub-cases with their claims."""
    out = []
    for case_id, nf in sorted(golden_cases().items()):
        pred = predict(nf)
        out.append({
            "case_id": case_id,
            "claim": pred.claim.value,
            "cyclicity_bound": pred.cyclicity_bound,
            "cycle_stability": (pred.cycle_stability.value
                                if pred.cycle_stability else None),
            "representative": {
                "beta_minus": nf.beta_minus, "gamma_minus": nf.gamma_minus,
                "B": nf.B, "alpha_plus": nf.alpha_plus,
                "delta_plus": nf.delta_plus,
            },
        })
    return out
