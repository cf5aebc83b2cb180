"""Monotone sigmoid blending functions used by the regularized field.

Both built-ins rise strictly from 0 at -inf to 1 at +inf and are smooth at
infinity in the reciprocal variable, so the regularized field is a regular
perturbation of either piece away from the switching line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class RegularizationFn:
    value: Callable[[float], float]
    derivative: Callable[[float], float]
    inverse: Callable[[float], float]
    name: str = "custom"

    def validate(self, s_grid=None) -> None:
        """Spot-check monotonicity, limits and the inverse round trip."""
        if s_grid is None:
            s_grid = np.linspace(-50.0, 50.0, 201)
        for s in s_grid:
            if not self.derivative(float(s)) > 0.0:
                raise ValueError(f"{self.name}: derivative not positive at s={s}")
        if abs(self.value(1e6) - 1.0) > 1e-6 or abs(self.value(-1e6)) > 1e-6:
            raise ValueError(f"{self.name}: limits at +-inf not attained")
        for p in np.linspace(0.01, 0.99, 25):
            if abs(self.value(self.inverse(float(p))) - p) > 1e-12:
                raise ValueError(f"{self.name}: inverse round trip fails at p={p}")


ARCTAN = RegularizationFn(
    value=lambda s: 0.5 + math.atan(s) / math.pi,
    derivative=lambda s: 1.0 / (math.pi * (1.0 + s * s)),
    inverse=lambda p: math.tan(math.pi * (p - 0.5)),
    name="arctan",
)

TANH = RegularizationFn(
    value=lambda s: 0.5 * (1.0 + math.tanh(s)),
    derivative=lambda s: 0.5 / math.cosh(s) ** 2 if abs(s) < 350.0 else 0.0,
    inverse=lambda p: math.atanh(2.0 * p - 1.0),
    name="tanh",
)

BUILTIN = {"arctan": ARCTAN, "tanh": TANH}


def get(name: str) -> RegularizationFn:
    try:
        return BUILTIN[name]
    except KeyError:
        raise KeyError(f"unknown regularization function {name!r}; "
                       f"built-ins: {sorted(BUILTIN)}") from None
