"""Parameter grids, figure presets, optimization and threshold searches."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from . import __version__
from .entanglement import PAIR_ORDER, Pair, steady_state
from .errors import ConfigurationError, DomainError, SearchError
from .params import TWO_PI, EnvironmentParams, SystemParams

KAPPA_A = TWO_PI * 1.5e6
KAPPA_C = TWO_PI * 3e6

# axis name -> (subsystem field, subsystems it sets)
_COUPLING_AXES = {
    "G_mb": ("G_mb", (1, 2)),
    "G_bc": ("G_bc", (1, 2)),
    "g_a": ("g_a", (1, 2)),
    "G_mb1": ("G_mb", (1,)),
    "G_mb2": ("G_mb", (2,)),
    "G_bc1": ("G_bc", (1,)),
    "G_bc2": ("G_bc", (2,)),
    "g_a1": ("g_a", (1,)),
    "g_a2": ("g_a", (2,)),
}
_ENV_AXES = {"r": "squeeze_r", "T": "temperature"}
AXIS_NAMES = tuple(_COUPLING_AXES) + tuple(_ENV_AXES)


def is_frequency_axis(name: str) -> bool:
    return name in _COUPLING_AXES


def apply_axis(params: SystemParams, env: EnvironmentParams, name: str, value: float):
    """Return ``(params, env)`` with the named parameter set to ``value``.

    Coupling values are angular (rad/s), ``T`` is in kelvin.
    """
    if name in _ENV_AXES:
        return params, EnvironmentParams(**{**env.__dict__, _ENV_AXES[name]: value})
    try:
        fname, which = _COUPLING_AXES[name]
    except KeyError:
        raise ConfigurationError(f"unknown sweep axis {name!r}") from None
    sub1, sub2 = params.sub1, params.sub2
    if 1 in which:
        sub1 = sub1.replace(**{fname: value})
    if 2 in which:
        sub2 = sub2.replace(**{fname: value})
    return SystemParams(sub1, sub2), env


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    n: int

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)


@dataclass(frozen=True)
class SweepSpec:
    axis1: Axis
    axis2: Axis | None = None
    params: SystemParams = field(default_factory=SystemParams)
    env: EnvironmentParams = field(default_factory=EnvironmentParams)
    pairs: tuple[Pair, ...] = PAIR_ORDER

    @property
    def axes(self) -> tuple[Axis, ...]:
        return (self.axis1,) if self.axis2 is None else (self.axis1, self.axis2)

    def validate(self) -> None:
        for ax in self.axes:
            if ax.name not in AXIS_NAMES:
                raise ConfigurationError(f"unknown sweep axis {ax.name!r}")
            if ax.n < 2:
                raise ConfigurationError(f"axis {ax.name} needs at least 2 points")
            if not (math.isfinite(ax.lo) and math.isfinite(ax.hi)):
                raise ConfigurationError(f"axis {ax.name} range must be finite")
            if ax.lo < 0 or ax.hi < 0:
                raise ConfigurationError(f"axis {ax.name} range must be non-negative")
        if self.axis2 is not None and self.axis1.name == self.axis2.name:
            raise ConfigurationError("sweep axes must be distinct")
        if not self.pairs:
            raise ConfigurationError("no pairs selected")

    def grid_points(self) -> list[tuple[float, ...]]:
        """Row-major over axis1 then axis2."""
        return list(product(*(ax.values.tolist() for ax in self.axes)))

    def point(self, coords: Sequence[float]) -> tuple[SystemParams, EnvironmentParams]:
        params, env = self.params, self.env
        for ax, v in zip(self.axes, coords):
            params, env = apply_axis(params, env, ax.name, v)
        return params, env


@dataclass(frozen=True)
class PointRecord:
    coords: tuple[float, ...]
    stable: bool
    values: Mapping[Pair, float]


@dataclass
class SweepResult:
    spec: SweepSpec
    records: list[PointRecord]
    provenance: dict

    def grid(self, pair: Pair) -> np.ndarray:
        """E_N over the grid, shaped by the axis point counts; NaN where unstable."""
        shape = tuple(ax.n for ax in self.spec.axes)
        vals = [r.values.get(pair, math.nan) if r.stable else math.nan for r in self.records]
        return np.array(vals).reshape(shape)

    def max(self, pair: Pair) -> float:
        vals = [r.values[pair] for r in self.records if r.stable and pair in r.values]
        return max(vals) if vals else math.nan

    @property
    def n_unstable(self) -> int:
        return sum(not r.stable for r in self.records)


def evaluate_point(params: SystemParams, env: EnvironmentParams, pairs=PAIR_ORDER) -> tuple[bool, dict]:
    ss = steady_state(params, env)
    if not ss.stable:
        return False, {}
    return True, {p: ss.entanglement(p) for p in pairs}


def _evaluate(task) -> PointRecord:
    spec, coords = task
    params, env = spec.point(coords)
    stable, values = evaluate_point(params, env, spec.pairs)
    return PointRecord(tuple(coords), stable, values)


def grid_sweep(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    spec.validate()
    tasks = [(spec, c) for c in spec.grid_points()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))
    else:
        records = [_evaluate(t) for t in tasks]
    provenance = {
        "tool": "magnomech",
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    return SweepResult(spec, records, provenance)


FIGURE_IDS = ("fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig4a", "fig4b", "fig4c", "fig4d")

_FIG2_PAIR = {"fig2a": Pair.OPTICAL, "fig2b": Pair.PHONON, "fig2c": Pair.MAGNON, "fig2d": Pair.MICROWAVE}


def figure_preset(
    fig_id: str,
    grid: int = 101,
    params: SystemParams | None = None,
    env: EnvironmentParams | None = None,
) -> SweepSpec:
    """Sweep behind one reference figure panel.

    ``params``/``env`` replace the reference base point.  Without an explicit
    base, the fig3*/fig4* presets pin G_mb = 2.8 k_a and G_bc = 1.6 k_c.
    """
    if fig_id not in FIGURE_IDS:
        raise ConfigurationError(f"unknown preset {fig_id!r}; choose from {', '.join(FIGURE_IDS)}")
    env = env or EnvironmentParams()
    if params is None:
        params = SystemParams.symmetric()
        if not fig_id.startswith("fig2"):
            params = params.replace_both(G_mb=2.8 * KAPPA_A, G_bc=1.6 * KAPPA_C)
    ka, kc = params.sub1.kappa_a, params.sub1.kappa_c

    if fig_id in _FIG2_PAIR:
        return SweepSpec(
            Axis("G_mb", 0.0, 3.5 * ka, grid),
            Axis("G_bc", 0.0, 3.5 * kc, grid),
            params, env, (_FIG2_PAIR[fig_id],),
        )
    if fig_id == "fig3a":
        return SweepSpec(Axis("T", 0.0, 0.5, grid), Axis("r", 0.0, 2.0, grid), params, env, (Pair.MICROWAVE,))
    if fig_id == "fig3b":
        return SweepSpec(Axis("r", 0.0, 2.0, grid), None, params, env, PAIR_ORDER)
    if fig_id == "fig4d":
        return SweepSpec(Axis("r", 0.0, 2.0, grid), Axis("g_a", 0.0, 5.0 * ka, grid), params, env, (Pair.MICROWAVE,))
    name, hi = {"fig4a": ("g_a", 5.0 * ka), "fig4b": ("G_mb", 3.5 * ka), "fig4c": ("G_bc", 3.5 * kc)}[fig_id]
    return SweepSpec(Axis(f"{name}1", 0.0, hi, grid), Axis(f"{name}2", 0.0, hi, grid), params, env, (Pair.MICROWAVE,))


@dataclass(frozen=True)
class Optimum:
    point: dict[str, float]
    value: float
    evaluations: int


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    a, b = lo, hi
    c, d = b - _INVPHI * (b - a), a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def optimize_max_entanglement(
    params: SystemParams,
    env: EnvironmentParams,
    bounds: Mapping[str, tuple[float, float]],
    pair: Pair = Pair.MICROWAVE,
    grid: int = 21,
    rel_tol: float = 1e-3,
    max_cycles: int = 20,
) -> Optimum:
    """Coarse grid scan, then coordinate-wise golden-section refinement.

    ``bounds`` maps free axis names (e.g. ``G_mb``, ``G_bc``) to ranges.
    The refinement bracket for each coordinate is one grid step either side
    of the incumbent, clipped to the bounds.
    """
    if not bounds:
        raise ConfigurationError("no free parameters")
    names = list(bounds)
    for name in names:
        lo, hi = bounds[name]
        if name not in AXIS_NAMES:
            raise ConfigurationError(f"unknown parameter {name!r}")
        if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
            raise ConfigurationError(f"bad bounds for {name}: {(lo, hi)}")
    n_eval = 0

    def objective(x: Sequence[float]) -> float:
        nonlocal n_eval
        n_eval += 1
        p, e = params, env
        for name, v in zip(names, x):
            p, e = apply_axis(p, e, name, v)
        stable, vals = evaluate_point(p, e, (pair,))
        return vals[pair] if stable else -math.inf

    axes = [np.linspace(*bounds[n], grid) if bounds[n][1] > bounds[n][0] else np.array([bounds[n][0]]) for n in names]
    best_x, best_f = None, -math.inf
    for x in product(*axes):
        fx = objective(x)
        if fx > best_f:
            best_x, best_f = list(x), fx
    if best_x is None or best_f == -math.inf:
        raise SearchError("no stable point inside the bounds")

    steps = [(bounds[n][1] - bounds[n][0]) / (grid - 1) for n in names]
    for _ in range(max_cycles):
        improved = False
        for k, name in enumerate(names):
            lo, hi = bounds[name]
            if hi == lo:
                continue
            a, b = max(lo, best_x[k] - steps[k]), min(hi, best_x[k] + steps[k])

            def f1(v, k=k):
                x = list(best_x)
                x[k] = v
                return objective(x)

            v, fv = _golden_max(f1, a, b, rel_tol * (hi - lo))
            if fv > best_f + 1e-12:
                best_x[k], best_f, improved = v, fv, True
        if not improved:
            break
    return Optimum(dict(zip(names, map(float, best_x))), float(best_f), n_eval)


ENTANGLEMENT_FLOOR = 1e-6


def temperature_threshold(
    params: SystemParams,
    env: EnvironmentParams,
    pair: Pair = Pair.MICROWAVE,
    T_max: float = 2.0,
    tol: float = 1e-3,
) -> float | None:
    """Lowest bath temperature (K) at which E_N of ``pair`` drops below 1e-6.

    Returns ``None`` when the pair is not entangled at ``env.temperature``
    already.  Raises ``SearchError`` if entanglement persists at ``T_max``.
    """

    def e_at(T: float) -> float:
        stable, vals = evaluate_point(params, EnvironmentParams(T, env.squeeze_r), (pair,))
        if not stable:
            raise SearchError(f"unstable drift while searching at T = {T} K")
        return vals[pair]

    lo = env.temperature
    if e_at(lo) < ENTANGLEMENT_FLOOR:
        return None
    hi = T_max
    if e_at(hi) >= ENTANGLEMENT_FLOOR:
        raise SearchError(f"{pair.column} still above {ENTANGLEMENT_FLOOR} at T_max = {T_max} K")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if e_at(mid) < ENTANGLEMENT_FLOOR:
            hi = mid
        else:
            lo = mid
    return hi


def transfer_efficiency(e_out: float, r: float) -> float:
    """Output E_N relative to the ideal two-mode squeezed vacuum E_N = 2r."""
    if not r > 0:
        raise DomainError("squeezing parameter must be positive")
    return e_out / (2.0 * r)

