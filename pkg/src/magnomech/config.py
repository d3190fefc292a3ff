"""Line-oriented ``key = value`` run configuration.

Frequencies and rates are given as linear frequencies in Hz (the angular
value divided by 2*pi).  A plain key such as ``g_a_hz`` sets both
subsystems; ``g_a1_hz`` / ``g_a2_hz`` set one and win over the plain key.
If no magnon linewidth is given it follows ``kappa_m = kappa_a / 5``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .assembly import validate_params
from .errors import ParseError
from .params import FREQUENCY_FIELDS, RATE_FIELDS, TWO_PI, EnvironmentParams, SubsystemParams, SystemParams

_SUB_FIELDS = FREQUENCY_FIELDS + RATE_FIELDS

FREQUENCY_KEYS: tuple[str, ...] = tuple(
    key for name in _SUB_FIELDS for key in (f"{name}_hz", f"{name}1_hz", f"{name}2_hz")
)
ENV_KEYS = ("temperature_k", "r")
PARAM_KEYS = FREQUENCY_KEYS + ENV_KEYS
RUN_KEYS = ("preset", "axis1", "axis2", "grid", "jobs", "out")
KNOWN_KEYS = PARAM_KEYS + RUN_KEYS


@dataclass
class RunConfig:
    overrides: dict[str, float] = field(default_factory=dict)
    preset: str | None = None
    axis1: str | None = None
    axis2: str | None = None
    grid: int | None = None
    jobs: int = 1
    out: str | None = None

    def system(self) -> tuple[SystemParams, EnvironmentParams]:
        return resolve_params(self.overrides)

    def resolved(self) -> dict:
        """Every parameter of the run in both linear (Hz) and angular (rad/s) form."""
        params, env = self.system()
        subs = {}
        for j, sub in enumerate(params.subsystems, start=1):
            subs[f"sub{j}"] = {
                name: {"hz": getattr(sub, name) / TWO_PI, "rad_per_s": getattr(sub, name)}
                for name in _SUB_FIELDS
            }
        return {**subs, "temperature_k": env.temperature, "r": env.squeeze_r}


def _split_key(key: str) -> tuple[str, int | None]:
    stem = key[: -len("_hz")]
    if stem in _SUB_FIELDS:
        return stem, None
    return stem[:-1], int(stem[-1])


def resolve_params(overrides: dict[str, float]) -> tuple[SystemParams, EnvironmentParams]:
    base = SubsystemParams()
    values = [dict(base.__dict__), dict(base.__dict__)]
    explicit_km = [False, False]
    # plain keys first so subsystem-specific keys take precedence
    ordered = sorted((k for k in overrides if k in FREQUENCY_KEYS), key=lambda k: _split_key(k)[1] is not None)
    for key in ordered:
        name, j = _split_key(key)
        targets = (0, 1) if j is None else (j - 1,)
        for t in targets:
            values[t][name] = overrides[key] * TWO_PI
            if name == "kappa_m":
                explicit_km[t] = True
    for t in (0, 1):
        if not explicit_km[t]:
            values[t]["kappa_m"] = values[t]["kappa_a"] / 5.0
    env = EnvironmentParams(
        temperature=overrides.get("temperature_k", EnvironmentParams.temperature),
        squeeze_r=overrides.get("r", EnvironmentParams.squeeze_r),
    )
    return SystemParams(SubsystemParams(**values[0]), SubsystemParams(**values[1])), env


def _parse_value(key: str, raw: str, lineno: int):
    if key in ("preset", "axis1", "axis2", "out"):
        if not raw:
            raise ParseError(f"{key} needs a value", lineno)
        return raw
    if key in ("grid", "jobs"):
        try:
            v = int(raw)
        except ValueError:
            raise ParseError(f"{key} must be an integer, got {raw!r}", lineno) from None
        if v < (2 if key == "grid" else 1):
            raise ParseError(f"{key} out of range: {v}", lineno)
        return v
    try:
        v = float(raw)
    except ValueError:
        raise ParseError(f"{key} must be a number, got {raw!r}", lineno) from None
    if not math.isfinite(v):
        raise ParseError(f"{key} must be finite", lineno)
    if v < 0:
        raise ParseError(f"{key} must be non-negative, got {v!r}", lineno)
    return v


def parse_config(text: str) -> RunConfig:
    cfg = RunConfig()
    seen: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", lineno)
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ParseError(f"unknown key {key!r}", lineno)
        if key in seen:
            raise ParseError(f"duplicate key {key!r} (first set on line {seen[key]})", lineno)
        seen[key] = lineno
        value = _parse_value(key, raw, lineno)
        if key in PARAM_KEYS:
            cfg.overrides[key] = value
        else:
            setattr(cfg, key, value)

    params, env = cfg.system()
    diag = validate_params(params, env)
    if diag.violations:
        raise ParseError("; ".join(diag.violations))
    return cfg


def render_config(cfg: RunConfig) -> str:
    lines = []
    for key in PARAM_KEYS:
        if key in cfg.overrides:
            lines.append(f"{key} = {cfg.overrides[key]!r}")
    for key in RUN_KEYS:
        v = getattr(cfg, key)
        if v is None or (key == "jobs" and v == 1):
            continue
        lines.append(f"{key} = {v}")
    return "\n".join(lines) + ("\n" if lines else "")
