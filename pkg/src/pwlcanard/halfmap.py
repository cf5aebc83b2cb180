"""Poincare half-map of the lower field from {x>0, y=0} to {x<0, y=0}.

The map is characterized by the vanishing of the integral of -u/V(u) over
[Pi(x), x], so Pi(x) is the unique y <= 0 with F(y) = F(x) where F is the
antiderivative of -u/V(u) normalized by F(0) = 0.  The closed-form F branches
on the root structure of V; an independent ODE-shooting oracle is provided
for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import BracketFailure, DomainExceeded, ImageExceeded, NoReturn, OutOfBranch
from .model import NormalForm, Regime, classify, v_poly, v_roots

#: operating margin kept from a finite domain/image endpoint, where the
#: solve degenerates logarithmically
BOUNDARY_MARGIN = 1e-9


class HalfMapMethod(Enum):
    CLOSED_FORM_ROOT = "ClosedFormRoot"
    ODE_SHOOTING = "OdeShooting"


@dataclass(frozen=True)
class HalfMapEval:
    x: float
    pi_x: float
    pi_prime: float
    residual: float
    method: HalfMapMethod


def _check_branch(nf: NormalForm, u: float, regime: Regime) -> None:
    if not (regime.pi_image_end < u < regime.pi_domain_end):
        raise OutOfBranch(
            f"u={u} outside the V-positive interval "
            f"({regime.pi_image_end}, {regime.pi_domain_end})")


def antiderivative_F(nf: NormalForm, u: float, regime: Regime | None = None) -> float:
    """Antiderivative of -u/V(u) with F(0) = 0, valid on the maximal
    interval around 0 where V > 0."""
    if regime is None:
        regime = classify(nf)
    _check_branch(nf, u, regime)
    b, g = nf.beta_minus, nf.gamma_minus

    if b == 0.0 and g == 0.0:
        return -0.5 * u * u
    if b == 0.0:
        # V = 1 - g u; argument of the log is positive on the valid interval
        return u / g + math.log1p(-g * u) / (g * g)

    disc = g * g - 4.0 * b
    if disc > 0.0:
        r1, r2 = v_roots(nf)
        # partial fractions: -u/V = A/(u-r1) + C/(u-r2)
        A = -r1 / (b * (r1 - r2))
        C = -r2 / (b * (r2 - r1))
        return A * math.log1p(-u / r1) + C * math.log1p(-u / r2)
    if disc == 0.0:
        r = 2.0 / g
        return -math.log1p(-u / r) / b + u / (b * (u - r))
    # complex roots: V > 0 everywhere, continuous arctangent branch
    s = math.sqrt(-disc)
    at = math.atan((2.0 * b * u - g) / s) - math.atan(-g / s)
    return -math.log(v_poly(nf, u)) / (2.0 * b) - (g / (b * s)) * at


def _f_prime(nf: NormalForm, u: float) -> float:
    return -u / v_poly(nf, u)


def _solve_match(nf, regime, target, lo, hi, grow_to):
    """Root of F(y) - target on the side bracketed by [lo, hi], growing the
    outer bracket toward grow_to (an extended real) until the sign flips."""
    def g(y):
        return antiderivative_F(nf, y, regime) - target

    g_hi = g(hi)
    y = lo
    for _ in range(400):
        if math.isfinite(grow_to) and abs(grow_to - y) < 1e-12:
            raise BracketFailure(
                f"no sign change before reaching boundary {grow_to}")
        gy = g(y)
        if gy == 0.0:
            return y
        if gy * g_hi < 0.0:
            root = brentq(g, min(y, hi), max(y, hi), xtol=1e-15, rtol=8.882e-16)
            # Newton polish on the residual
            for _ in range(4):
                r = g(root)
                fp = _f_prime(nf, root)
                if r == 0.0 or fp == 0.0:
                    break
                step = r / fp
                cand = root - step
                if not (regime.pi_image_end < cand < regime.pi_domain_end):
                    break
                if abs(g(cand)) < abs(r):
                    root = cand
                else:
                    break
            return root
        hi = y
        g_hi = gy
        if math.isinf(grow_to):
            y = 2.0 * y
            if abs(y) > 1e15:
                raise BracketFailure("bracket grew past 1e15 without sign change")
        else:
            y = grow_to + 0.5 * (y - grow_to)
    raise BracketFailure("bracket growth iteration limit reached")


def half_map(nf: NormalForm, x: float, regime: Regime | None = None) -> HalfMapEval:
    """Pi(x): the landing point on {x<0, y=0} of the forward Z- orbit."""
    if regime is None:
        regime = classify(nf)
    if x < 0.0 or not math.isfinite(x):
        raise DomainExceeded(f"half map requires x >= 0, got {x}")
    if x == 0.0:
        return HalfMapEval(0.0, 0.0, -1.0, 0.0, HalfMapMethod.CLOSED_FORM_ROOT)
    d = regime.pi_domain_end
    if x >= d or (math.isfinite(d) and x > d - BOUNDARY_MARGIN):
        raise DomainExceeded(f"x={x} at or beyond the domain end {d}")

    fx = antiderivative_F(nf, x, regime)
    e = regime.pi_image_end
    start = -x if -x > e else e + 0.5 * (0.0 - e)
    y = _solve_match(nf, regime, fx, start, 0.0, e)
    residual = abs(antiderivative_F(nf, y, regime) - fx)
    pi_prime = x * v_poly(nf, y) / (y * v_poly(nf, x))
    return HalfMapEval(x, y, pi_prime, residual, HalfMapMethod.CLOSED_FORM_ROOT)


def half_map_inverse(nf: NormalForm, y: float, regime: Regime | None = None) -> float:
    """The unique x >= 0 with Pi(x) = y."""
    if regime is None:
        regime = classify(nf)
    if y > 0.0 or not math.isfinite(y):
        raise ImageExceeded(f"half map inverse requires y <= 0, got {y}")
    if y == 0.0:
        return 0.0
    e = regime.pi_image_end
    if y <= e or (math.isfinite(e) and y < e + BOUNDARY_MARGIN):
        raise ImageExceeded(f"y={y} at or beyond the image end {e}")

    fy = antiderivative_F(nf, y, regime)
    d = regime.pi_domain_end
    start = -y if -y < d else 0.5 * d
    return _solve_match(nf, regime, fy, start, 0.0, d)


def half_map_derivative(nf: NormalForm, x: float, regime: Regime | None = None) -> float:
    """Pi'(x) = x V(Pi(x)) / (Pi(x) V(x)); equals -1 at x = 0."""
    if x == 0.0:
        return -1.0
    return half_map(nf, x, regime).pi_prime


def half_map_ode_oracle(nf: NormalForm, x: float,
                        box: float = 1e3, max_time: float = 1e4,
                        rtol: float = 1e-12, atol: float = 1e-14) -> HalfMapEval:
    """Independent oracle: integrate Z- from (x, 0) and locate the first
    return to y = 0 with x < 0 by event detection."""
    if x <= 0.0:
        raise DomainExceeded(f"oracle requires x > 0, got {x}")
    b, g = nf.beta_minus, nf.gamma_minus

    def rhs(t, z):
        return (-1.0 + b * z[1], -z[0] + g * z[1])

    def hit_axis(t, z):
        return z[1]
    hit_axis.terminal = True
    hit_axis.direction = 1.0  # upward crossing: the return has ydot = -x > 0

    def escape(t, z):
        return box - max(abs(z[0]), abs(z[1]))
    escape.terminal = True

    sol = solve_ivp(rhs, (0.0, max_time), (x, 0.0), method="DOP853",
                    rtol=rtol, atol=atol, events=(hit_axis, escape),
                    dense_output=True)
    if sol.t_events[0].size == 0:
        raise NoReturn(f"trajectory from ({x}, 0) left the box or ran out of "
                       f"time without returning to y=0 (status={sol.status})")
    t_ev = sol.t_events[0][0]
    # sharpen the event time by bisection on the dense output
    lo = max(0.0, t_ev - 1e-6 * max(1.0, t_ev))
    hi = min(sol.t[-1], t_ev + 1e-6 * max(1.0, t_ev))
    if sol.sol(lo)[1] < 0.0 < sol.sol(hi)[1]:
        t_ev = brentq(lambda t: sol.sol(t)[1], lo, hi, xtol=1e-14)
    x_land, y_land = sol.sol(t_ev)
    regime = classify(nf)
    pi_prime = x * v_poly(nf, x_land) / (x_land * v_poly(nf, x))
    return HalfMapEval(x, float(x_land), pi_prime, abs(float(y_land)),
                       HalfMapMethod.ODE_SHOOTING)
