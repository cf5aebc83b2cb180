"""Normal form of the piecewise-linear two-fold system and its classification.

The lower field Z- is the Lienard-form linear field

    xdot = -1 + beta_minus * y
    ydot = -x + gamma_minus * y

and the upper field Z+ is

    xdot = B + alpha_plus * x + beta_plus * y
    ydot = delta_plus * x + gamma_plus * y

with B > delta_plus > 0.  Everything downstream (half-map, slow divergence
integral, decision table) is parametrized by this tuple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NotVI3, Violation


class RegimeKind(Enum):
    SADDLE = "Saddle"
    NODE_DISTINCT = "NodeDistinct"
    NODE_REPEATED = "NodeRepeated"
    FOCUS = "Focus"
    CENTER = "Center"
    INVARIANT_LINE = "InvariantLine"
    PARABOLA = "Parabola"


@dataclass(frozen=True)
class NormalForm:
    """Validated parameter tuple of the normal form.

    beta_minus and gamma_minus are the determinant and trace of DZ-.
    """

    beta_minus: float
    gamma_minus: float
    B: float
    alpha_plus: float
    beta_plus: float = 0.0
    delta_plus: float = 1.0
    gamma_plus: float = 0.0

    def __post_init__(self):
        vals = (self.beta_minus, self.gamma_minus, self.B, self.alpha_plus,
                self.beta_plus, self.delta_plus, self.gamma_plus)
        if not all(math.isfinite(v) for v in vals):
            raise Violation("all normal-form parameters must be finite")
        if not self.delta_plus > 0:
            raise Violation(f"delta_plus must be positive, got {self.delta_plus}")
        if not self.B > self.delta_plus:
            raise Violation(
                f"need B > delta_plus, got B={self.B}, delta_plus={self.delta_plus}")

    @property
    def drift(self) -> float:
        """B - delta_plus, the sliding speed at the fold (positive)."""
        return self.B - self.delta_plus


@dataclass(frozen=True)
class AffineMap:
    """Invertible affine change of coordinates z -> matrix @ z + offset."""

    matrix: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float).reshape(2, 2)
        o = np.asarray(self.offset, dtype=float).reshape(2)
        if abs(np.linalg.det(m)) == 0.0:
            raise Violation("affine map matrix must be invertible")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "offset", o)

    def __call__(self, z):
        return self.matrix @ np.asarray(z, dtype=float) + self.offset

    def push_linear(self, A, b):
        """Transform the linear system zdot = A z + b to the new coordinates."""
        M = self.matrix
        Minv = np.linalg.inv(M)
        return M @ np.asarray(A, float) @ Minv, M @ np.asarray(b, float)


@dataclass(frozen=True)
class Regime:
    """Classification of Z- with the half-map domain and image bounds.

    pi_domain_end / pi_image_end use math.inf / -math.inf for the unbounded
    cases; they never enter arithmetic without an isinf branch.
    """

    kind: RegimeKind
    singularity: tuple[float, float] | None
    eigenvalues: tuple[float, float] | None
    x_L: float | None
    x_R: float | None
    pi_domain_end: float
    pi_image_end: float


def build_normal_form(beta_minus, gamma_minus, B, alpha_plus,
                      beta_plus=0.0, delta_plus=1.0, gamma_plus=0.0) -> NormalForm:
    """Validate and build a NormalForm; raises Violation on bad input."""
    return NormalForm(float(beta_minus), float(gamma_minus), float(B),
                      float(alpha_plus), float(beta_plus), float(delta_plus),
                      float(gamma_plus))


def normalize_general(A_minus, b_minus, A_plus, b_plus) -> tuple[NormalForm, AffineMap]:
    """Bring a general admissible piecewise-linear two-fold to normal form.

    The change of coordinates is the y-fibered shear removing the (1,1)
    entry of A-, followed by the scalings x -> x/|b1-|, y -> y/(|b1-||A21-|).
    Raises NotVI3 naming the violated admissibility condition.
    """
    Am = np.asarray(A_minus, dtype=float).reshape(2, 2)
    bm = np.asarray(b_minus, dtype=float).reshape(2)
    Ap = np.asarray(A_plus, dtype=float).reshape(2, 2)
    bp = np.asarray(b_plus, dtype=float).reshape(2)

    checks = [
        (bp[0] > 0, "b+_1 > 0"),
        (bp[1] == 0, "b+_2 = 0"),
        (Ap[1, 0] > 0, "A+_21 > 0"),
        (bm[0] < 0, "b-_1 < 0"),
        (bm[1] == 0, "b-_2 = 0"),
        (Am[1, 0] < 0, "A-_21 < 0"),
        (bm[0] * Ap[1, 0] - bp[0] * Am[1, 0] > 0, "b-_1 A+_21 - b+_1 A-_21 > 0"),
    ]
    for ok, name in checks:
        if not ok:
            raise NotVI3(f"admissibility condition violated: {name}")

    shear = np.array([[1.0, -Am[0, 0] / Am[1, 0]], [0.0, 1.0]])
    scale = np.diag([1.0 / abs(bm[0]), 1.0 / (abs(bm[0]) * abs(Am[1, 0]))])
    phi = AffineMap(scale @ shear, np.zeros(2))

    Am2, bm2 = phi.push_linear(Am, bm)
    Ap2, bp2 = phi.push_linear(Ap, bp)
    nf = build_normal_form(
        beta_minus=Am2[0, 1], gamma_minus=Am2[1, 1],
        B=bp2[0], alpha_plus=Ap2[0, 0], beta_plus=Ap2[0, 1],
        delta_plus=Ap2[1, 0], gamma_plus=Ap2[1, 1])
    return nf, phi


def v_poly(nf: NormalForm, u: float) -> float:
    """V(u) = beta_minus u^2 - gamma_minus u + 1; positive on the half-map
    domain and image."""
    return (nf.beta_minus * u - nf.gamma_minus) * u + 1.0


def v_roots(nf: NormalForm) -> list[float]:
    """Real roots of V in increasing order (0, 1 or 2 of them)."""
    b, g = nf.beta_minus, nf.gamma_minus
    if b == 0.0:
        return [] if g == 0.0 else [1.0 / g]
    disc = g * g - 4.0 * b
    if disc < 0.0:
        return []
    if disc == 0.0:
        return [2.0 / g]
    s = math.sqrt(disc)
    # roots of V are reciprocals of the eigenvalues (g +- s)/2
    r1 = 2.0 / (g + s)
    r2 = 2.0 / (g - s)
    return sorted((r1, r2))


def eigenvalues_minus(nf: NormalForm) -> tuple[float, float] | None:
    """Eigenvalues of DZ- as an ordered pair when beta_minus != 0."""
    b, g = nf.beta_minus, nf.gamma_minus
    if b == 0.0:
        return None
    disc = g * g - 4.0 * b
    if disc < 0.0:
        return None
    s = math.sqrt(disc)
    return ((g - s) / 2.0, (g + s) / 2.0)


def classify(nf: NormalForm) -> Regime:
    """Total classification of Z- with half-map domain/image bounds."""
    b, g = nf.beta_minus, nf.gamma_minus
    disc = g * g - 4.0 * b
    if b < 0.0:
        kind = RegimeKind.SADDLE
    elif b > 0.0:
        if g == 0.0:
            kind = RegimeKind.CENTER
        elif disc > 0.0:
            kind = RegimeKind.NODE_DISTINCT
        elif disc == 0.0:
            kind = RegimeKind.NODE_REPEATED
        else:
            kind = RegimeKind.FOCUS
    else:
        kind = RegimeKind.INVARIANT_LINE if g != 0.0 else RegimeKind.PARABOLA

    singularity = (g / b, 1.0 / b) if b != 0.0 else None
    eig = eigenvalues_minus(nf)

    roots = v_roots(nf)
    if len(roots) == 2:
        x_L, x_R = roots
    elif len(roots) == 1:
        if b != 0.0:  # repeated eigenvalue: the single invariant line
            x_L = x_R = roots[0]
        else:  # invariant line of the singularity-free system
            x_L, x_R = None, roots[0]
    else:
        x_L = x_R = None

    pos = [r for r in roots if r > 0.0]
    neg = [r for r in roots if r < 0.0]
    pi_domain_end = min(pos) if pos else math.inf
    pi_image_end = max(neg) if neg else -math.inf

    return Regime(kind=kind, singularity=singularity, eigenvalues=eig,
                  x_L=x_L, x_R=x_R,
                  pi_domain_end=pi_domain_end, pi_image_end=pi_image_end)


def sliding_vf(nf: NormalForm, x: float) -> float:
    """The one-dimensional sliding field (B - delta_plus + alpha_plus x)/(1 + delta_plus)."""
    return (nf.drift + nf.alpha_plus * x) / (1.0 + nf.delta_plus)


def x_star(nf: NormalForm) -> float | None:
    """Simple zero of the sliding field, or None when the field never vanishes."""
    if nf.alpha_plus == 0.0:
        return None
    return -nf.drift / nf.alpha_plus


def symmetry_reflect(nf: NormalForm) -> NormalForm:
    """Parameter image under (x, t) -> (-x, -t): negates gamma_minus,
    alpha_plus and gamma_plus."""
    return NormalForm(nf.beta_minus, -nf.gamma_minus, nf.B, -nf.alpha_plus,
                      nf.beta_plus, nf.delta_plus, -nf.gamma_plus)
