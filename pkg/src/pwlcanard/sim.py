"""Stiff simulation of the regularized field and limit-cycle detection.

The two pieces are blended through phi(y/eps^2); an unfolding parameter
lambda = eps*lambda_tilde is added to the y-component of the upper field.
Cycles are located as fixed points of the first-return map on the section
{x = 0, y < 0} crossed with xdot < 0, which the canard loop meets exactly
once per revolution (the smoothed sliding passage crosses x = 0 with
xdot > 0 and is filtered out by the crossing direction).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import BoxExit, NoReturn, TimeExhausted
from .halfmap import half_map_ode_oracle
from .model import NormalForm
from .regularization import RegularizationFn

#: time spent leaving the section before arming the return event; far below
#: any loop period at the epsilon range of interest
SECTION_ESCAPE_TIME = 1e-3


class Stability(Enum):
    ATTRACTING = "Attracting"
    REPELLING = "Repelling"


@dataclass(frozen=True)
class SimConfig:
    epsilon: float = 0.1
    lambda_tilde: float = 0.0
    rel_tol: float = 1e-12
    abs_tol: float = 1e-12
    max_time: float = 50.0
    bounding_box: tuple[float, float, float, float] = (-4.0, 4.0, -4.0, 4.0)
    max_step: float | None = None
    #: integrate the reversed field; a repelling cycle of the forward flow is
    #: an attracting fixed point of the reversed return map and can be located
    #: robustly.  Reported multipliers refer to the forward flow either way.
    time_reversed: bool = False

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")
        for t in (self.rel_tol, self.abs_tol):
            if not 1e-14 <= t <= 1e-6:
                raise ValueError(f"tolerance {t} outside [1e-14, 1e-6]")

    def step_cap(self) -> float:
        # keep several steps inside the switching layer of width eps^2
        if self.max_step is not None:
            return self.max_step
        return 5.0 * self.epsilon ** 2


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    xy: np.ndarray  # shape (n, 2)


@dataclass(frozen=True)
class LimitCycle:
    section_point: float
    period: float
    multiplier: float
    stability: Stability
    polyline: np.ndarray  # shape (n, 2), one full loop
    residual: float


def regularized_field(nf: NormalForm, phi: RegularizationFn, cfg: SimConfig,
                      x: float, y: float) -> tuple[float, float]:
    """Blend of the two affine pieces at (x, y)."""
    p = phi.value(y / cfg.epsilon ** 2)
    lam = cfg.epsilon * cfg.lambda_tilde
    xm = -1.0 + nf.beta_minus * y
    ym = -x + nf.gamma_minus * y
    xp = nf.B + nf.alpha_plus * x + nf.beta_plus * y
    yp = nf.delta_plus * x + nf.gamma_plus * y + lam
    return (xp * p + xm * (1.0 - p), yp * p + ym * (1.0 - p))


def _rhs(nf: NormalForm, phi: RegularizationFn, cfg: SimConfig):
    b, g, B, a = nf.beta_minus, nf.gamma_minus, nf.B, nf.alpha_plus
    bp, dp, gp = nf.beta_plus, nf.delta_plus, nf.gamma_plus
    lam = cfg.epsilon * cfg.lambda_tilde
    eps2 = cfg.epsilon ** 2
    pv = phi.value
    sgn = -1.0 if cfg.time_reversed else 1.0

    def rhs(t, z):
        x, y = z
        p = pv(y / eps2)
        q = 1.0 - p
        return (sgn * ((B + a * x + bp * y) * p + (-1.0 + b * y) * q),
                sgn * ((dp * x + gp * y + lam) * p + (-x + g * y) * q))
    return rhs


def integrate(nf: NormalForm, phi: RegularizationFn, cfg: SimConfig,
              init: tuple[float, float], t_span: tuple[float, float],
              events=(), dense: bool = False):
    """Adaptive integration inside the bounding box; raises BoxExit with the
    partial trajectory if the box is left."""
    x0, x1, y0, y1 = cfg.bounding_box
    if not (x0 <= init[0] <= x1 and y0 <= init[1] <= y1):
        raise ValueError(f"initial point {init} outside bounding box")

    def escape(t, z):
        return min(z[0] - x0, x1 - z[0], z[1] - y0, y1 - z[1])
    escape.terminal = True

    sol = solve_ivp(_rhs(nf, phi, cfg), t_span, init, method="DOP853",
                    rtol=cfg.rel_tol, atol=cfg.abs_tol,
                    max_step=cfg.step_cap(),
                    events=(escape, *events), dense_output=dense)
    traj = Trajectory(sol.t, sol.y.T)
    if sol.t_events[0].size > 0:
        raise BoxExit(f"trajectory left the bounding box at t={sol.t[-1]:.4g}",
                      trajectory=traj)
    return sol


def return_map(nf: NormalForm, phi: RegularizationFn, cfg: SimConfig,
               y0: float, want_solution: bool = False):
    """First-return map P on the section {x = 0, y < 0}, xdot < 0.

    Returns the landing y (and, optionally, the period and the two solution
    segments for polyline extraction)."""
    if y0 >= 0.0:
        raise ValueError(f"section requires y0 < 0, got {y0}")
    # leave the section before arming the terminal crossing event, so the
    # departure at t = 0 (x = 0 exactly) is not detected as the return
    sol_a = integrate(nf, phi, cfg, (0.0, y0), (0.0, SECTION_ESCAPE_TIME),
                      dense=want_solution)
    za = (float(sol_a.y[0, -1]), float(sol_a.y[1, -1]))

    def section(t, z):
        return z[0]
    section.terminal = True
    # the loop crosses the section with xdot < 0 in forward time, so the
    # reversed flow crosses it with xdot > 0
    section.direction = 1.0 if cfg.time_reversed else -1.0

    try:
        sol_b = integrate(nf, phi, cfg, za,
                          (SECTION_ESCAPE_TIME, cfg.max_time),
                          events=(section,), dense=want_solution)
    except BoxExit as e:
        raise NoReturn(f"no section return from y0={y0}: left the box") from e
    if sol_b.t_events[1].size == 0:
        raise TimeExhausted(f"no section return from y0={y0} within "
                            f"t={cfg.max_time}",
                            trajectory=Trajectory(sol_b.t, sol_b.y.T))
    y_ret = float(sol_b.y_events[1][0][1])
    period = float(sol_b.t_events[1][0])
    if want_solution:
        return y_ret, period, (sol_a, sol_b)
    return y_ret


def cycle_polyline(nf: NormalForm, phi: RegularizationFn, cfg: SimConfig,
                   y_star: float, n_pts: int = 2000) -> tuple[np.ndarray, float]:
    """One full loop through (0, y_star), densely sampled."""
    y_ret, period, (sol_a, sol_b) = return_map(nf, phi, cfg, y_star,
                                               want_solution=True)
    ta = np.linspace(0.0, SECTION_ESCAPE_TIME, 16)
    tb = np.linspace(SECTION_ESCAPE_TIME, period, n_pts)
    pts = np.vstack([sol_a.sol(ta).T, sol_b.sol(tb).T])
    return pts, period


def find_limit_cycles(nf: NormalForm, phi: RegularizationFn, cfg: SimConfig,
                      y_range: tuple[float, float],
                      n_scan: int = 32) -> list[LimitCycle]:
    """Fixed points of the return map located by a scan of P(y) - y."""
    lo, hi = y_range
    if not (lo < hi <= 0.0) or hi == 0.0 and lo >= 0.0:
        raise ValueError(f"y_range must lie in (-inf, 0), got {y_range}")
    if n_scan < 32:
        raise ValueError("n_scan must be at least 32")

    ys = np.linspace(lo, hi, n_scan)

    def disp(y):
        return return_map(nf, phi, cfg, float(y)) - float(y)

    vals = np.full(n_scan, np.nan)
    for i, y in enumerate(ys):
        try:
            vals[i] = disp(y)
        except (NoReturn, TimeExhausted, BoxExit):
            pass

    cycles: list[LimitCycle] = []
    for i in range(n_scan - 1):
        a, c = vals[i], vals[i + 1]
        if np.isnan(a) or np.isnan(c) or not a * c < 0.0:
            continue
        y_star = brentq(disp, ys[i], ys[i + 1], xtol=1e-12)
        residual = abs(disp(y_star))
        # step large enough to rise above the integrator noise in P
        h = 1e-3 * max(abs(y_star), 1e-3)
        mult = (return_map(nf, phi, cfg, y_star + h)
                - return_map(nf, phi, cfg, y_star - h)) / (2.0 * h)
        if cfg.time_reversed:
            # the measured slope is that of the reversed return map
            mult = 1.0 / mult
        poly, period = cycle_polyline(nf, phi, cfg, y_star)
        stab = Stability.ATTRACTING if abs(mult) < 1.0 else Stability.REPELLING
        cycles.append(LimitCycle(float(y_star), period, float(mult), stab,
                                 poly, float(residual)))
    cycles.sort(key=lambda c: abs(c.section_point))
    return cycles


@dataclass(frozen=True)
class SweepRow:
    lambda_tilde: float
    count: int
    section_points: tuple[float, ...]
    multipliers: tuple[float, ...]


def sweep_lambda(nf: NormalForm, phi: RegularizationFn, cfg: SimConfig,
                 lam_range: tuple[float, float], n: int,
                 y_range: tuple[float, float],
                 n_scan: int = 32) -> list[SweepRow]:
    """Cycle count and data on a lambda_tilde grid."""
    if n < 16:
        raise ValueError("n must be at least 16")
    rows = []
    for lam in np.linspace(lam_range[0], lam_range[1], n):
        cfg_l = replace(cfg, lambda_tilde=float(lam))
        cycles = find_limit_cycles(nf, phi, cfg_l, y_range, n_scan)
        rows.append(SweepRow(float(lam), len(cycles),
                             tuple(c.section_point for c in cycles),
                             tuple(c.multiplier for c in cycles)))
    return rows


def count_window(rows: list[SweepRow], target: int) -> tuple[float, float] | None:
    """Extent of the lambda_tilde values whose cycle count equals target."""
    hits = [r.lambda_tilde for r in rows if r.count == target]
    if not hits:
        return None
    return (min(hits), max(hits))


def canard_cycle_polyline(nf: NormalForm, x_hat: float,
                          n_pts: int = 1200) -> np.ndarray:
    """The singular-limit cycle through (x_hat, 0): the fast lower-field arc
    down to (Pi(x_hat), 0) plus the segment back along y = 0."""
    b, g = nf.beta_minus, nf.gamma_minus

    def rhs(t, z):
        return (-1.0 + b * z[1], -z[0] + g * z[1])

    ev = half_map_ode_oracle(nf, x_hat)
    # recover the arc with the same event setup as the oracle
    def hit_axis(t, z):
        return z[1]
    hit_axis.terminal = True
    hit_axis.direction = 1.0
    sol = solve_ivp(rhs, (0.0, 1e4), (x_hat, 0.0), method="DOP853",
                    rtol=1e-10, atol=1e-12, events=(hit_axis,),
                    dense_output=True)
    t_end = sol.t_events[0][0]
    arc = sol.sol(np.linspace(0.0, t_end, n_pts)).T
    seg = np.column_stack([np.linspace(ev.pi_x, x_hat, n_pts // 3),
                           np.zeros(n_pts // 3)])
    return np.vstack([arc, seg])


def directed_hausdorff(pts: np.ndarray, target: np.ndarray) -> float:
    """max over pts of the distance to the polyline given by target."""
    a = target[:-1]
    d = target[1:] - a
    dd = np.einsum("ij,ij->i", d, d)
    dd[dd == 0.0] = 1.0
    worst = 0.0
    for chunk in np.array_split(pts, max(1, len(pts) // 256)):
        w = chunk[:, None, :] - a[None, :, :]
        t = np.clip(np.einsum("pij,ij->pi", w, d) / dd, 0.0, 1.0)
        proj = a[None, :, :] + t[:, :, None] * d[None, :, :]
        dist = np.min(np.linalg.norm(chunk[:, None, :] - proj, axis=2), axis=1)
        worst = max(worst, float(np.max(dist)))
    return worst
