"""Run configuration parsed from a flat key=value file.

Grammar: one `key = value` pair per line; blank lines and lines starting
with `#` are ignored; no sections or nesting.  Unknown keys are rejected so
typos fail loudly.  Booleans accept true/false (case-insensitive).
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from .cases import golden_cases
from .model import NormalForm, build_normal_form
from .regularization import BUILTIN
from .sim import SimConfig


@dataclass(frozen=True)
class RunConfig:
    # normal-form parameters (used when `case` is empty)
    beta_minus: float = -1.0
    gamma_minus: float = 1.0
    B: float = 2.0
    alpha_plus: float = -20.0 / 19.0
    beta_plus: float = 0.0
    delta_plus: float = 1.0
    gamma_plus: float = 0.0
    #: golden case id; when set it overrides the raw parameters above
    case: str = ""
    phi_name: str = "arctan"
    # simulation knobs
    epsilon: float = 0.1
    lambda_tilde: float = 0.0
    lambda_lo: float = -1e-12
    lambda_hi: float = -5e-14
    n_lambda: int = 16
    y_lo: float = -0.30
    y_hi: float = -0.02
    n_scan: int = 32
    max_time: float = 100.0
    time_reversed: bool = False
    target_count: int = 2
    # slow-divergence-integral knobs (theta = 0 means the default margin)
    theta: float = 0.0
    n_grid: int = 256
    # parameter sweep over alpha_plus
    alpha_lo: float = -2.0
    alpha_hi: float = -0.5
    n_alpha: int = 16
    # run plumbing
    seed: int = 2026
    jobs: int = 1
    output_dir: str = "out"
    format: str = "json"

    def __post_init__(self):
        if self.phi_name not in BUILTIN:
            raise ValueError(f"unknown phi_name {self.phi_name!r}; "
                             f"choose from {sorted(BUILTIN)}")
        if self.case and self.case not in golden_cases():
            raise ValueError(f"unknown case id {self.case!r}")
        if self.format not in ("json", "csv"):
            raise ValueError(f"format must be json or csv, got {self.format!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, raw: str):
    t = _FIELD_TYPES[key]
    if t in ("bool", bool):
        low = raw.lower()
        if low in ("true", "1", "yes"):
            return True
        if low in ("false", "0", "no"):
            return False
        raise ValueError(f"key {key}: expected a boolean, got {raw!r}")
    if t in ("int", int):
        return int(raw)
    if t in ("float", float):
        return float(raw)
    return raw


def parse_config_text(text: str) -> dict:
    """key=value lines to a typed override dict; unknown keys rejected."""
    overrides: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"line {lineno}: expected key = value, "
                             f"got {stripped!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _FIELD_TYPES:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in overrides:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        overrides[key] = _coerce(key, value)
    return overrides


def load_config(path: str | Path | None, **extra) -> RunConfig:
    """RunConfig from an optional file plus keyword overrides."""
    overrides: dict = {}
    if path is not None:
        overrides.update(parse_config_text(Path(path).read_text()))
    overrides.update({k: v for k, v in extra.items() if v is not None})
    return RunConfig(**overrides)


def normal_form_from(cfg: RunConfig) -> NormalForm:
    if cfg.case:
        return golden_cases()[cfg.case]
    return build_normal_form(cfg.beta_minus, cfg.gamma_minus, cfg.B,
                             cfg.alpha_plus, cfg.beta_plus, cfg.delta_plus,
                             cfg.gamma_plus)


def sim_config_from(cfg: RunConfig) -> SimConfig:
    return SimConfig(epsilon=cfg.epsilon, lambda_tilde=cfg.lambda_tilde,
                     max_time=cfg.max_time, time_reversed=cfg.time_reversed)
