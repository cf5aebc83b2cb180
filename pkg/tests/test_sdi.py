import math

import numpy as np
import pytest

from pwlcanard import (ARCTAN, TANH, CurveKind, build_normal_form, classify,
                       contact_points, curve_kind, delta_bar, find_sdi_zeros,
                       half_map, hyperbola_hp, is_identically_zero,
                       phi_prefactor, sdi, sdi_domain, sdi_quadrature,
                       sdi_tilde_prime, symmetry_reflect, x_star)


def _grid(nf, n=8, frac=0.85):
    b = sdi_domain(nf).b
    hi = b if math.isfinite(b) else 3.0
    return np.linspace(hi / (n + 1), frac * hi, n)


def test_prefactors():
    assert phi_prefactor(ARCTAN, 1.0) == pytest.approx(2.0 / math.pi)
    assert phi_prefactor(TANH, 1.0) == pytest.approx(1.0)


@pytest.mark.parametrize("cid", ["saddle.3", "node-distinct.5", "focus.1",
                                 "appendixA.a", "appendixB.b"])
def test_closed_form_vs_quadrature(cases, cid):
    nf = cases[cid]
    for x in _grid(nf):
        assert abs(sdi(nf, ARCTAN, float(x))
                   - sdi_quadrature(nf, ARCTAN, float(x))) <= 1e-10


def test_sdi_vanishes_at_origin(cases):
    for nf in cases.values():
        assert sdi(nf, ARCTAN, 0.0) == 0.0


def test_identically_zero_locus():
    assert is_identically_zero(build_normal_form(1.0, 0.0, 2.0, 0.0))
    assert is_identically_zero(build_normal_form(0.0, 0.0, 2.0, 0.0))
    # beta = 0 with alpha + gamma S = 0
    assert is_identically_zero(build_normal_form(0.0, 1.0, 2.0, -1.0))
    assert not is_identically_zero(build_normal_form(-1.0, 1.0, 2.0, -1.0))


def test_identically_zero_numerically():
    nf = build_normal_form(0.0, 1.0, 2.0, -1.0)
    vals = [abs(sdi(nf, ARCTAN, float(x))) for x in _grid(nf)]
    assert max(vals) <= 1e-10


def test_delta_bar_symmetric_and_roots(cases):
    nf = cases["saddle.3"]
    regime = classify(nf)
    assert delta_bar(nf, 0.3, -0.7) == pytest.approx(delta_bar(nf, -0.7, 0.3))
    assert delta_bar(nf, regime.x_L, regime.x_R) == pytest.approx(0.0, abs=1e-12)
    xs = x_star(nf)
    # delta_bar(x, x*) = -alpha V(x*) independently of x
    from pwlcanard import v_poly
    want = -nf.alpha_plus * v_poly(nf, xs)
    for x in (-1.0, 0.2, 0.9):
        assert delta_bar(nf, x, xs) == pytest.approx(want)


def test_tilde_prime_sign_matches_delta_bar(cases):
    for cid in ("saddle.3", "node-distinct.5", "focus.1"):
        nf = cases[cid]
        for x in _grid(nf):
            y = half_map(nf, float(x)).pi_x
            dp = sdi_tilde_prime(nf, float(x))
            db = delta_bar(nf, float(x), y)
            if abs(db) > 1e-12:
                assert math.copysign(1.0, dp) == math.copysign(1.0, db)


def test_tilde_prime_matches_finite_difference(cases):
    nf = cases["saddle.3"]
    pref = phi_prefactor(ARCTAN, nf.delta_plus)
    for x in _grid(nf, n=5):
        h = 1e-6
        fd = (sdi(nf, ARCTAN, float(x) + h)
              - sdi(nf, ARCTAN, float(x) - h)) / (2.0 * h)
        assert pref * sdi_tilde_prime(nf, float(x)) == pytest.approx(fd, rel=1e-5)


def test_curve_kinds():
    assert curve_kind(build_normal_form(-1.0, 1.0, 2.0, -1.5)) is CurveKind.HYPERBOLA
    assert curve_kind(build_normal_form(-1.0, 1.0, 2.0, 0.0)) is CurveKind.LINE
    assert curve_kind(build_normal_form(0.0, 0.0, 2.0, -1.0)) is CurveKind.DEGENERATE


def test_hyperbola_hp_involution(cases):
    nf = cases["saddle.3"]
    for x in np.linspace(0.05, 0.45, 9):
        y = hyperbola_hp(nf, float(x))
        assert hyperbola_hp(nf, y) == pytest.approx(float(x), abs=1e-10)
        assert delta_bar(nf, float(x), y) == pytest.approx(0.0, abs=1e-10)


def test_contact_points_on_curve(cases):
    nf = cases["saddle.3"]
    for cx, cy in contact_points(nf):
        assert abs(delta_bar(nf, cx, cy)) <= 1e-10


def test_zero_finder_counts(cases):
    # attracting everywhere: no interior zero
    rep = find_sdi_zeros(cases["saddle.1"], ARCTAN, n_grid=96)
    assert rep.zero_count == 0
    # one transversal zero
    rep = find_sdi_zeros(cases["saddle.3"], ARCTAN, n_grid=96)
    assert rep.zero_count == 1
    # identically zero
    rep = find_sdi_zeros(cases["appendixA.b"], ARCTAN, n_grid=96)
    assert rep.identically_zero
    assert not rep.anomalies


def test_symmetry_identity(cases):
    for cid in ("saddle.3", "node-distinct.5", "focus.2"):
        nf = cases[cid]
        nf_r = symmetry_reflect(nf)
        for x in _grid(nf, n=6):
            y = half_map(nf, float(x)).pi_x
            lhs = sdi(nf, ARCTAN, float(x))
            rhs = -sdi(nf_r, ARCTAN, -y)
            assert abs(lhs - rhs) <= 1e-9


def test_phi_independent_zero(cases):
    nf = cases["saddle.3"]
    za = find_sdi_zeros(nf, ARCTAN, n_grid=96).zeros
    zt = find_sdi_zeros(nf, TANH, n_grid=96).zeros
    assert len(za) == len(zt) == 1
    assert abs(za[0].x0 - zt[0].x0) <= 1e-9
    x = 0.3
    ratio = sdi(nf, ARCTAN, x) / sdi(nf, TANH, x)
    want = phi_prefactor(ARCTAN, nf.delta_plus) / phi_prefactor(TANH, nf.delta_plus)
    assert ratio == pytest.approx(want, rel=1e-9)
