import math

import numpy as np
import pytest

from pwlcanard import (DomainExceeded, ImageExceeded, build_normal_form,
                       classify, golden_cases, half_map,
                       half_map_derivative, half_map_inverse,
                       half_map_ode_oracle)

_SMOKE = ("saddle.1", "node-distinct.3", "node-repeated.1", "focus.1",
          "appendixA.a", "appendixB.a", "appendixB.e")


@pytest.mark.parametrize("cid", _SMOKE)
def test_half_map_against_ode(cases, cid):
    nf = cases[cid]
    regime = classify(nf)
    d = regime.pi_domain_end if math.isfinite(regime.pi_domain_end) else 2.0
    for x in (0.2 * d, 0.5 * d):
        ev = half_map(nf, x, regime)
        ode = half_map_ode_oracle(nf, x)
        assert ev.pi_x == pytest.approx(ode.pi_x, abs=1e-8 * (1.0 + x))
        assert ev.pi_x < 0.0


def test_fixed_point_at_origin(cases):
    for nf in cases.values():
        assert half_map(nf, 0.0).pi_x == 0.0


def test_derivative_at_origin(cases):
    for nf in cases.values():
        assert half_map(nf, 0.0).pi_prime == pytest.approx(-1.0, abs=1e-12)


@pytest.mark.parametrize("cid", _SMOKE)
def test_derivative_matches_finite_difference(cases, cid):
    nf = cases[cid]
    regime = classify(nf)
    d = regime.pi_domain_end if math.isfinite(regime.pi_domain_end) else 2.0
    x = 0.4 * d
    h = 1e-6 * d
    fd = (half_map(nf, x + h).pi_x - half_map(nf, x - h).pi_x) / (2.0 * h)
    drv = half_map_derivative(nf, x)
    assert drv == pytest.approx(fd, rel=1e-6)


def test_odd_symmetry_when_gamma_zero():
    for beta in (-1.0, 0.0, 1.0):
        nf = build_normal_form(beta, 0.0, 2.0, -1.0)
        regime = classify(nf)
        d = regime.pi_domain_end if math.isfinite(regime.pi_domain_end) else 3.0
        for x in np.linspace(0.05 * d, 0.9 * d, 7):
            assert abs(half_map(nf, float(x)).pi_x + x) <= 1e-10


@pytest.mark.parametrize("cid", _SMOKE)
def test_inverse_roundtrip(cases, cid):
    nf = cases[cid]
    regime = classify(nf)
    d = regime.pi_domain_end if math.isfinite(regime.pi_domain_end) else 2.0
    x = 0.3 * d
    y = half_map(nf, x).pi_x
    assert half_map_inverse(nf, y) == pytest.approx(x, rel=1e-9)


def test_domain_violations(cases):
    nf = cases["saddle.1"]
    regime = classify(nf)
    with pytest.raises(DomainExceeded):
        half_map(nf, regime.pi_domain_end + 0.1)
    with pytest.raises(DomainExceeded):
        half_map(nf, -0.5)
    with pytest.raises(ImageExceeded):
        half_map_inverse(nf, 0.5)


def test_monotone_decreasing(cases):
    nf = cases["node-distinct.3"]
    regime = classify(nf)
    xs = np.linspace(0.0, 0.9 * regime.pi_domain_end, 25)
    ys = [half_map(nf, float(x)).pi_x for x in xs]
    assert all(b < a for a, b in zip(ys, ys[1:]))
