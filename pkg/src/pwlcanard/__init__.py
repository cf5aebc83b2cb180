"""Poincare half-maps, slow divergence integrals and limit cycles of
regularized piecewise-linear two-fold systems."""

from .cases import (Claim, CycleStability, Prediction, Verdict, case_catalog,
                    crosscheck, draw_normal_form, golden_cases, predict)
from .errors import (AtAsymptote, BoxExit, BracketFailure, DomainExceeded,
                     ImageExceeded, NoReturn, NotVI3, OutOfBranch,
                     PwlCanardError, TimeExhausted, Violation)
from .halfmap import (HalfMapEval, HalfMapMethod, antiderivative_F, half_map,
                      half_map_derivative, half_map_inverse,
                      half_map_ode_oracle)
from .model import (AffineMap, NormalForm, Regime, RegimeKind,
                    build_normal_form, classify, eigenvalues_minus,
                    normalize_general, sliding_vf, symmetry_reflect, v_poly,
                    v_roots, x_star)
from .regularization import ARCTAN, BUILTIN, TANH, RegularizationFn
from .regularization import get as get_regularization
from .sim import (LimitCycle, SimConfig, Stability, SweepRow,
                  canard_cycle_polyline, count_window, cycle_polyline,
                  directed_hausdorff, find_limit_cycles, integrate,
                  regularized_field, return_map, sweep_lambda)
from .sdi import (CurveKind, DomainBinding, MultiplicityClass, SdiDomain,
                  SdiReport, SdiZero, SignProfile, contact_points, cubic_field,
                  curve_kind, delta_bar, find_sdi_zeros, hyperbola_hp,
                  is_identically_zero, phi_prefactor, sdi, sdi_domain,
                  sdi_quadrature, sdi_tilde_prime)

__version__ = "0.1.0"
