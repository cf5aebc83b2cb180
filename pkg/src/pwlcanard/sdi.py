"""Slow divergence integral along the sliding segment [Pi(x), x].

I(x) is a positive phi-dependent prefactor times the integral of
u / X_sl(u) over [Pi(x), x]; the integral has a closed-form antiderivative
G, so I is evaluated as prefactor * (G(x) - G(Pi(x))).  The derivative of
the bare integral factors through the symmetric quadratic Delta-bar, whose
zero set (two lines, a hyperbola, or a line) organizes the zero counting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .errors import AtAsymptote, BracketFailure, DomainExceeded, ImageExceeded
from .halfmap import half_map, half_map_inverse
from .model import NormalForm, Regime, classify, sliding_vf, v_poly, x_star
from .regularization import RegularizationFn

#: hard cap on the scan range when the domain is unbounded
X_MAX = 1e3


class DomainBinding(Enum):
    PI_DOMAIN = "PiDomain"
    X_STAR_RIGHT = "XStarRight"
    X_STAR_LEFT_PREIMAGE = "XStarLeftPreimage"


class MultiplicityClass(Enum):
    SIMPLE = "Simple"
    DOUBLE = "Double"
    UNRESOLVED = "Unresolved"


class SignProfile(Enum):
    ALL_NEGATIVE = "AllNegative"
    ALL_POSITIVE = "AllPositive"
    ONE_SIGN_CHANGE = "OneSignChange"
    ZERO = "Zero"


class CurveKind(Enum):
    TWO_LINES = "TwoLines"
    HYPERBOLA = "Hyperbola"
    LINE = "Line"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class SdiDomain:
    b: float  # right endpoint, math.inf when unbounded
    binding: DomainBinding


@dataclass(frozen=True)
class SdiZero:
    x0: float
    multiplicity_class: MultiplicityClass
    i_prime_at_zero: float


@dataclass(frozen=True)
class SdiReport:
    nf: NormalForm
    domain: SdiDomain
    identically_zero: bool
    zeros: list[SdiZero]
    sign_profile: SignProfile
    samples: list[tuple[float, float]]
    anomalies: list[str] = field(default_factory=list)

    @property
    def zero_count(self) -> int:
        return len(self.zeros)


def sdi_domain(nf: NormalForm, regime: Regime | None = None) -> SdiDomain:
    """Right endpoint b of the integral's domain [0, b): the largest interval
    on which the sliding field stays positive along [Pi(x), x]."""
    if regime is None:
        regime = classify(nf)
    d = regime.pi_domain_end
    xs = x_star(nf)
    if nf.alpha_plus == 0.0:
        return SdiDomain(d, DomainBinding.PI_DOMAIN)
    if nf.alpha_plus < 0.0:  # xs > 0 bounds on the right
        if xs < d:
            return SdiDomain(xs, DomainBinding.X_STAR_RIGHT)
        return SdiDomain(d, DomainBinding.PI_DOMAIN)
    # alpha_plus > 0: xs < 0 bounds through the half-map image
    if xs > regime.pi_image_end:
        try:
            return SdiDomain(half_map_inverse(nf, xs, regime),
                             DomainBinding.X_STAR_LEFT_PREIMAGE)
        except (BracketFailure, ImageExceeded):
            # preimage indistinguishable from the domain end at double
            # precision (x* at the edge of the image)
            return SdiDomain(d, DomainBinding.PI_DOMAIN)
    return SdiDomain(d, DomainBinding.PI_DOMAIN)


def phi_prefactor(phi: RegularizationFn, delta_plus: float) -> float:
    """(1 + delta_plus) * phi'(phi^{-1}(1/(1+delta_plus))); always positive."""
    if delta_plus <= 0.0:
        raise ValueError("delta_plus must be positive")
    return (1.0 + delta_plus) * phi.derivative(phi.inverse(1.0 / (1.0 + delta_plus)))


def _g_antiderivative(nf: NormalForm, u: float) -> float:
    """Closed-form antiderivative of u / X_sl(u)."""
    a, s, dp = nf.alpha_plus, nf.drift, nf.delta_plus
    if a == 0.0:
        return (1.0 + dp) * u * u / (2.0 * s)
    return (1.0 + dp) * (u / a - (s / (a * a)) * math.log(abs(s + a * u)))


def sdi(nf: NormalForm, phi: RegularizationFn, x: float,
        regime: Regime | None = None, domain: SdiDomain | None = None) -> float:
    """I(x) for x in [0, b)."""
    if regime is None:
        regime = classify(nf)
    if domain is None:
        domain = sdi_domain(nf, regime)
    if x < 0.0 or x >= domain.b:
        if x == 0.0:
            return 0.0
        raise DomainExceeded(f"x={x} outside the integral domain [0, {domain.b})")
    if x == 0.0:
        return 0.0
    y = half_map(nf, x, regime).pi_x
    pref = phi_prefactor(phi, nf.delta_plus)
    return pref * (_g_antiderivative(nf, x) - _g_antiderivative(nf, y))


def sdi_quadrature(nf: NormalForm, phi: RegularizationFn, x: float,
                   regime: Regime | None = None) -> float:
    """Independent oracle: adaptive quadrature of the integrand over
    [Pi(x), x].  Test use only."""
    from scipy.integrate import quad
    if regime is None:
        regime = classify(nf)
    if x == 0.0:
        return 0.0
    y = half_map(nf, x, regime).pi_x
    pref = phi_prefactor(phi, nf.delta_plus)
    val, _ = quad(lambda u: u / sliding_vf(nf, u), y, x,
                  epsabs=1e-13, epsrel=1e-13, limit=200)
    return pref * val


def delta_bar(nf: NormalForm, x: float, y: float) -> float:
    """Symmetric quadratic whose zero set carries the derivative sign of the
    bare integral."""
    a, b, s, g = nf.alpha_plus, nf.beta_minus, nf.drift, nf.gamma_minus
    return a * b * x * y + b * s * (x + y) - a - g * s


def sdi_tilde_prime(nf: NormalForm, x: float,
                    regime: Regime | None = None,
                    domain: SdiDomain | None = None) -> float:
    """Derivative of the bare integral (I without the prefactor)."""
    if regime is None:
        regime = classify(nf)
    if domain is None:
        domain = sdi_domain(nf, regime)
    if not 0.0 < x < domain.b:
        raise DomainExceeded(f"x={x} outside (0, {domain.b})")
    y = half_map(nf, x, regime).pi_x
    num = x * (x - y) * delta_bar(nf, x, y)
    den = ((1.0 + nf.delta_plus) * sliding_vf(nf, x) * sliding_vf(nf, y)
           * v_poly(nf, x))
    return num / den


def curve_kind(nf: NormalForm) -> CurveKind:
    """Shape of the zero set of delta_bar in the (x, y) plane."""
    if nf.alpha_plus != 0.0 and nf.beta_minus != 0.0:
        xs = x_star(nf)
        return CurveKind.TWO_LINES if v_poly(nf, xs) == 0.0 else CurveKind.HYPERBOLA
    if nf.alpha_plus == 0.0 and nf.beta_minus != 0.0:
        return CurveKind.LINE
    return CurveKind.DEGENERATE


def hyperbola_hp(nf: NormalForm, x: float) -> float:
    """The involution parametrizing the hyperbola branch of delta_bar = 0."""
    if curve_kind(nf) is not CurveKind.HYPERBOLA:
        raise ValueError("hyperbola parametrization requires the Hyperbola case")
    xs = x_star(nf)
    if abs(x - xs) < 1e-12:
        raise AtAsymptote(f"x={x} within 1e-12 of the asymptote x*={xs}")
    a, b, s, g, dp = (nf.alpha_plus, nf.beta_minus, nf.drift,
                      nf.gamma_minus, nf.delta_plus)
    return (a + g * s - b * s * x) / (b * (1.0 + dp) * sliding_vf(nf, x))


def contact_points(nf: NormalForm) -> list[tuple[float, float]]:
    """Tangency points of delta_bar = 0 with the orbits of the auxiliary
    cubic field; empty when none exist."""
    kind = curve_kind(nf)
    if kind not in (CurveKind.HYPERBOLA, CurveKind.LINE):
        raise ValueError("contact points defined for the Hyperbola and Line cases")
    from .model import v_roots
    pts: list[tuple[float, float]] = []
    roots = v_roots(nf)
    if len(roots) == 2:
        x_l, x_r = roots
        pts.append((x_l, x_r))
        pts.append((x_r, x_l))
    elif len(roots) == 1 and nf.beta_minus != 0.0:
        r = roots[0]
        pts.append((r, r))
    if kind is CurveKind.HYPERBOLA:
        xs = x_star(nf)
        rad = (nf.gamma_minus * xs - 1.0) / nf.beta_minus
        if rad >= 0.0:
            x_c = math.sqrt(rad)
            if x_c == 0.0:
                pts.append((0.0, 0.0))
            else:
                pts.append((x_c, -x_c))
                pts.append((-x_c, x_c))
    return pts


def cubic_field(nf: NormalForm, x: float, y: float) -> tuple[float, float]:
    """Auxiliary cubic field (y V(x), x V(y)); the x>=0 part of the stable
    manifold of its origin saddle is the graph of the half-map."""
    return (y * v_poly(nf, x), x * v_poly(nf, y))


def is_identically_zero(nf: NormalForm) -> bool:
    """True when the parameters force I to vanish identically."""
    if nf.alpha_plus == 0.0 and nf.gamma_minus == 0.0:
        return True
    return (nf.beta_minus == 0.0
            and nf.alpha_plus + nf.gamma_minus * nf.drift == 0.0)


def scan_interval(domain: SdiDomain, theta: float) -> tuple[float, float]:
    """[theta, b - theta], or [theta, min(1/theta, X_MAX)] when b is infinite."""
    if math.isinf(domain.b):
        return theta, min(1.0 / theta, X_MAX)
    return theta, domain.b - theta


def default_theta(domain: SdiDomain) -> float:
    return 1e-3 if math.isinf(domain.b) else 1e-3 * domain.b


def find_sdi_zeros(nf: NormalForm, phi: RegularizationFn,
                   theta: float | None = None, n_grid: int = 512) -> SdiReport:
    """Sample I on the working interval, locate and classify its zeros."""
    regime = classify(nf)
    domain = sdi_domain(nf, regime)
    if theta is None:
        theta = default_theta(domain)
    if theta <= 0.0:
        raise ValueError("theta must be positive")
    if math.isfinite(domain.b) and not theta < domain.b / 4.0:
        raise ValueError(f"theta={theta} too large for domain b={domain.b}")
    if n_grid < 64:
        raise ValueError("n_grid must be at least 64")

    lo, hi = scan_interval(domain, theta)
    pref = phi_prefactor(phi, nf.delta_plus)

    def ival(x):
        return sdi(nf, phi, float(x), regime, domain)

    # Pi(x) can leave the representable float range near the domain end
    # (repeated-root node: the image blows up like exp(1/(b-x))); shrink
    # the scan until the right endpoint is evaluable
    for _ in range(200):
        try:
            ival(hi)
            break
        except (BracketFailure, OverflowError):
            hi = lo + 0.95 * (hi - lo)
    else:
        raise BracketFailure("no evaluable scan interval")

    xs = np.linspace(lo, hi, n_grid)
    vals = np.array([ival(x) for x in xs])
    samples = list(zip(xs.tolist(), vals.tolist()))
    anomalies: list[str] = []

    ident = is_identically_zero(nf)
    max_abs = float(np.max(np.abs(vals)))
    if ident:
        if max_abs > 1e-10:
            anomalies.append(
                f"parameters imply I == 0 but max |I| on grid is {max_abs:.3e}")
        return SdiReport(nf, domain, True, [], SignProfile.ZERO, samples, anomalies)

    def iprime(x):
        return pref * sdi_tilde_prime(nf, float(x), regime, domain)

    iprime_scale = max(abs(iprime(x)) for x in xs[:: max(1, n_grid // 32)])
    tol_mult = 1e-6 * max(iprime_scale, 1e-300)

    # values below the cancellation noise of G(x) - G(Pi(x)) carry no sign
    noise = 1e-12 * max(max_abs, 1e-300)

    def effsign(v):
        return 0.0 if abs(v) < noise else math.copysign(1.0, v)

    zeros: list[SdiZero] = []
    sign_changes = 0
    for i in range(n_grid - 1):
        a, c = vals[i], vals[i + 1]
        if effsign(a) * effsign(c) < 0.0:
            sign_changes += 1
            # local refinement around the bracket before the root solve
            fine = np.linspace(xs[i], xs[i + 1], 9)
            fvals = [ival(t) for t in fine]
            for j in range(8):
                if fvals[j] * fvals[j + 1] < 0.0:
                    x0 = brentq(ival, fine[j], fine[j + 1], xtol=1e-12)
                    break
            else:
                x0 = brentq(ival, xs[i], xs[i + 1], xtol=1e-12)
            ip = iprime(x0)
            cls = (MultiplicityClass.SIMPLE if abs(ip) > tol_mult
                   else MultiplicityClass.UNRESOLVED)
            zeros.append(SdiZero(float(x0), cls, float(ip)))

    # touching (even-multiplicity) zeros: sign change of I' without one of I
    dvals = np.array([iprime(x) for x in xs])
    i_scale = max(max_abs, 1e-300)
    d_noise = 1e-12 * max(iprime_scale, 1e-300)
    for i in range(n_grid - 1):
        if dvals[i] * dvals[i + 1] < 0.0 and \
                max(abs(dvals[i]), abs(dvals[i + 1])) > d_noise:
            xc = brentq(iprime, xs[i], xs[i + 1], xtol=1e-12)
            if any(abs(z.x0 - xc) < 1e-9 * (1.0 + abs(xc)) for z in zeros):
                continue
            if abs(ival(xc)) <= 1e-9 * i_scale:
                zeros.append(SdiZero(float(xc), MultiplicityClass.DOUBLE,
                                     float(iprime(xc))))

    zeros.sort(key=lambda z: z.x0)
    if zeros:
        profile = SignProfile.ONE_SIGN_CHANGE
        if sign_changes > 1:
            anomalies.append(f"{sign_changes} sign changes detected")
    else:
        esigns = {effsign(v) for v in vals}
        if 1.0 not in esigns:
            profile = SignProfile.ALL_NEGATIVE
        elif -1.0 not in esigns:
            profile = SignProfile.ALL_POSITIVE
        else:
            profile = SignProfile.ONE_SIGN_CHANGE
            anomalies.append("mixed signs without a located zero")
    return SdiReport(nf, domain, False, zeros, profile, samples, anomalies)
