"""SVG figure emission: integral curves, phase portraits, cycle overlays.

All figures are rendered with the Agg backend and a fixed hash salt so the
emitted SVG is deterministic for a given (config, seed).
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .halfmap import half_map  # noqa: E402
from .model import NormalForm, classify, x_star  # noqa: E402
from .sdi import (CurveKind, SdiReport, contact_points,  # noqa: E402
                  cubic_field, curve_kind, delta_bar)

matplotlib.rcParams["svg.hashsalt"] = "pwlcanard"
matplotlib.rcParams["svg.fonttype"] = "none"

_METADATA = {"Date": None}


def _save(fig, path: str | Path) -> None:
    fig.savefig(path, format="svg", metadata=_METADATA)
    plt.close(fig)


def plot_sdi(report: SdiReport, path: str | Path) -> None:
    """I over the working interval with detected zeros marked."""
    xs = np.array([x for x, _ in report.samples])
    vals = np.array([v for _, v in report.samples])
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.plot(xs, vals, color="tab:blue", lw=1.4, label="I(x)")
    for z in report.zeros:
        ax.plot([z.x0], [0.0], marker="o", color="tab:red", ms=6,
                label=f"zero ({z.multiplicity_class.value})")
    ax.set_xlabel("x")
    ax.set_ylabel("I(x)")
    ax.set_title("slow divergence integral")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def _portrait_window(nf: NormalForm) -> tuple[float, float]:
    regime = classify(nf)
    hi = regime.pi_domain_end if math.isfinite(regime.pi_domain_end) else 3.0
    lo = regime.pi_image_end if math.isfinite(regime.pi_image_end) else -3.0
    span = max(hi, -lo, 1.0)
    return -1.2 * span, 1.2 * span


def plot_portrait(nf: NormalForm, path: str | Path, seed: int = 2026) -> None:
    """Cubic-system orbits, the half-map graph, the contact curve
    delta_bar = 0, the contact points, and the x* lines."""
    lo, hi = _portrait_window(nf)
    xs = np.linspace(lo, hi, 101)
    ys = np.linspace(lo, hi, 101)
    X, Y = np.meshgrid(xs, ys)
    U = np.empty_like(X)
    V = np.empty_like(Y)
    D = np.empty_like(X)
    for i in range(X.shape[0]):
        for j in range(X.shape[1]):
            U[i, j], V[i, j] = cubic_field(nf, X[i, j], Y[i, j])
            D[i, j] = delta_bar(nf, X[i, j], Y[i, j])

    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    rng = np.random.default_rng(seed)
    starts = rng.uniform([lo, lo], [hi, hi], size=(24, 2))
    ax.streamplot(X, Y, U, V, color="0.75", linewidth=0.6, density=1.2,
                  start_points=starts, arrowsize=0.7)

    # half-map graph on its domain
    regime = classify(nf)
    d = regime.pi_domain_end if math.isfinite(regime.pi_domain_end) else hi
    gx = np.linspace(1e-6, min(d * (1.0 - 1e-6), hi), 160)
    gy = []
    kept = []
    for x in gx:
        try:
            gy.append(half_map(nf, float(x), regime).pi_x)
            kept.append(x)
        except Exception:
            break
    ax.plot(kept, gy, color="tab:blue", lw=1.6, label="half map")

    # contact curve and contact points
    if np.nanmin(D) < 0.0 < np.nanmax(D):
        ax.contour(X, Y, D, levels=[0.0], colors="tab:green",
                   linewidths=1.2)
    if curve_kind(nf) in (CurveKind.HYPERBOLA, CurveKind.LINE):
        for cx, cy in contact_points(nf):
            if lo <= cx <= hi and lo <= cy <= hi:
                ax.plot([cx], [cy], marker="o", color="tab:red", ms=6)

    xs_val = x_star(nf)
    if xs_val is not None and lo <= xs_val <= hi:
        ax.axvline(xs_val, color="tab:orange", lw=0.9, ls="--",
                   label="x = x*")
        ax.axhline(xs_val, color="tab:orange", lw=0.9, ls=":")

    ax.set_xlim(lo, hi)
    ax.set_ylim(lo, hi)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title("contact geometry")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def plot_cycles(nf: NormalForm, cycles, canards, path: str | Path) -> None:
    """Detected cycle polylines over the singular canard-cycle skeleton."""
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    for skel in canards:
        ax.plot(skel[:, 0], skel[:, 1], color="0.7", lw=1.0)
    for cyc in cycles:
        label = f"{cyc.stability.value} (y*={cyc.section_point:.4f})"
        ax.plot(cyc.polyline[:, 0], cyc.polyline[:, 1], lw=1.4, label=label)
    ax.axhline(0.0, color="0.85", lw=0.8)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title("limit cycles")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    _save(fig, path)
