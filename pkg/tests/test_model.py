import math

import numpy as np
import pytest

from pwlcanard import (NormalForm, NotVI3, RegimeKind, Violation,
                       build_normal_form, classify, eigenvalues_minus,
                       normalize_general, sliding_vf, symmetry_reflect,
                       v_poly, v_roots, x_star)


def test_build_rejects_nonpositive_drift():
    with pytest.raises(Violation):
        build_normal_form(-1.0, 1.0, 1.0, -1.0, delta_plus=1.0)  # B == delta
    with pytest.raises(Violation):
        build_normal_form(-1.0, 1.0, 0.5, -1.0, delta_plus=1.0)  # B < delta
    with pytest.raises(Violation):
        build_normal_form(-1.0, 1.0, 2.0, -1.0, delta_plus=0.0)  # delta <= 0


def test_drift():
    nf = build_normal_form(-1.0, 1.0, 2.0, -1.0, delta_plus=1.0)
    assert nf.drift == 1.0


@pytest.mark.parametrize("beta,gamma,kind", [
    (-1.0, 1.5, RegimeKind.SADDLE),
    (1.0, 2.5, RegimeKind.NODE_DISTINCT),
    (1.0, 2.0, RegimeKind.NODE_REPEATED),
    (1.0, 1.0, RegimeKind.FOCUS),
    (1.0, 0.0, RegimeKind.CENTER),
    (0.0, 1.0, RegimeKind.INVARIANT_LINE),
    (0.0, 0.0, RegimeKind.PARABOLA),
])
def test_classify_kinds(beta, gamma, kind):
    nf = build_normal_form(beta, gamma, 2.0, -1.0)
    assert classify(nf).kind is kind


def test_v_roots_bracket_domain():
    nf = build_normal_form(-1.0, 1.5, 2.0, -1.0)
    roots = v_roots(nf)
    assert roots == sorted(roots)
    for r in roots:
        assert abs(v_poly(nf, r)) < 1e-12
    regime = classify(nf)
    assert regime.x_R == max(roots)
    assert regime.x_L == min(roots)
    assert regime.pi_domain_end == regime.x_R


def test_focus_has_no_real_roots():
    nf = build_normal_form(1.0, 1.0, 2.0, -1.0)
    assert v_roots(nf) == []
    regime = classify(nf)
    assert math.isinf(regime.pi_domain_end)


def test_eigenvalues_match_trace_det():
    nf = build_normal_form(1.0, 2.5, 2.0, -1.0)
    l1, l2 = eigenvalues_minus(nf)
    assert l1 + l2 == pytest.approx(nf.gamma_minus)
    assert l1 * l2 == pytest.approx(nf.beta_minus)


def test_sliding_vf_zero():
    nf = build_normal_form(-1.0, 1.0, 2.0, -2.0)
    xs = x_star(nf)
    assert xs == pytest.approx(0.5)
    assert sliding_vf(nf, xs) == pytest.approx(0.0)
    assert x_star(build_normal_form(-1.0, 1.0, 2.0, 0.0)) is None


def test_symmetry_reflect_involution():
    nf = build_normal_form(-1.0, 1.0, 2.0, -1.5)
    assert symmetry_reflect(symmetry_reflect(nf)) == nf
    r = symmetry_reflect(nf)
    assert r.gamma_minus == -nf.gamma_minus
    assert r.alpha_plus == -nf.alpha_plus
    assert r.beta_minus == nf.beta_minus


def test_normalize_general_roundtrip():
    # start from a normal form, apply a random admissible change, recover it
    nf0 = build_normal_form(-1.0, 1.0, 2.0, -1.5)
    Am = np.array([[0.0, nf0.beta_minus], [-1.0, nf0.gamma_minus]])
    bm = np.array([-1.0, 0.0])
    Ap = np.array([[nf0.alpha_plus, nf0.beta_plus],
                   [nf0.delta_plus, nf0.gamma_plus]])
    bp = np.array([nf0.B, 0.0])
    # scale x by 2 and y by 3 (a change the normalization must undo)
    S = np.diag([2.0, 3.0])
    Si = np.diag([0.5, 1.0 / 3.0])
    nf, _ = normalize_general(S @ Am @ Si, S @ bm, S @ Ap @ Si, S @ bp)
    assert nf.beta_minus == pytest.approx(nf0.beta_minus)
    assert nf.gamma_minus == pytest.approx(nf0.gamma_minus)
    assert nf.B == pytest.approx(nf0.B)
    assert nf.alpha_plus == pytest.approx(nf0.alpha_plus)
    assert nf.delta_plus == pytest.approx(nf0.delta_plus)


def test_normalize_general_rejects_bad_signs():
    Am = np.array([[0.0, -1.0], [-1.0, 1.0]])
    Ap = np.array([[-1.0, 0.0], [1.0, 0.0]])
    with pytest.raises(NotVI3):
        normalize_general(Am, [1.0, 0.0], Ap, [2.0, 0.0])  # b-_1 must be < 0
    with pytest.raises(NotVI3):
        normalize_general(Am, [-1.0, 0.0], Ap, [0.5, 0.0])  # drift fails
