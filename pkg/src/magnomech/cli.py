"""Command-line front end.

Examples::

    magnomech point
    magnomech point --config run.cfg
    magnomech sweep --preset fig2d --grid 101 --out fig2d.csv
    magnomech sweep --axis1 G_mb:0:5.25e6:41 --axis2 G_bc:0:10.5e6:41 --out custom.csv
    magnomech optimize --free G_mb,G_bc
    magnomech threshold --pair microwave
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .config import RunConfig, parse_config, render_config
from .entanglement import PAIR_ORDER, Pair, steady_state
from .errors import ConfigurationError, MagnomechError
from .params import TWO_PI, SystemParams
from .sweep import (
    AXIS_NAMES,
    FIGURE_IDS,
    Axis,
    SweepResult,
    SweepSpec,
    figure_preset,
    grid_sweep,
    is_frequency_axis,
    optimize_max_entanglement,
    temperature_threshold,
    transfer_efficiency,
)

CSV_HEADER = "axis1,axis2,E_c1c2,E_b1b2,E_m1m2,E_a1a2,stable"


def _fmt(v: float) -> str:
    return f"{v:.9g}"


def axis_to_cli(name: str, value: float) -> float:
    """Internal axis value -> CLI units (Hz for couplings, K, dimensionless r)."""
    return value / TWO_PI if is_frequency_axis(name) else value


def parse_axis(text: str, grid: int | None = None) -> Axis:
    """``name:lo:hi:n`` with ``lo``/``hi`` in CLI units; ``n`` may be omitted if ``grid`` is set."""
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise ConfigurationError(f"axis must be name:lo:hi:n, got {text!r}")
    name = parts[0]
    if name not in AXIS_NAMES:
        raise ConfigurationError(f"unknown axis {name!r}; choose from {', '.join(AXIS_NAMES)}")
    try:
        lo, hi = float(parts[1]), float(parts[2])
        n = int(parts[3]) if len(parts) == 4 else grid
    except ValueError:
        raise ConfigurationError(f"malformed axis {text!r}") from None
    if n is None:
        raise ConfigurationError(f"axis {name} needs a point count")
    scale = TWO_PI if is_frequency_axis(name) else 1.0
    return Axis(name, lo * scale, hi * scale, n)


def sweep_csv(result: SweepResult) -> str:
    axes = result.spec.axes
    rows = [CSV_HEADER]
    for rec in result.records:
        cells = [_fmt(axis_to_cli(ax.name, v)) for ax, v in zip(axes, rec.coords)]
        if len(cells) == 1:
            cells.append("")
        for pair in PAIR_ORDER:
            cells.append(_fmt(rec.values[pair]) if rec.stable and pair in rec.values else "")
        cells.append("1" if rec.stable else "0")
        rows.append(",".join(cells))
    return "\n".join(rows) + "\n"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def manifest_path(csv_path: Path) -> Path:
    return csv_path.with_suffix(".manifest.json")


def build_manifest(cfg: RunConfig, result: SweepResult, csv_text: str, csv_path: Path, argv: list[str]) -> dict:
    spec = result.spec
    return {
        "tool": "magnomech",
        "version": __version__,
        "timestamp": result.provenance["timestamp"],
        "argv": argv,
        "config": render_config(cfg),
        "resolved_parameters": cfg.resolved(),
        "preset": cfg.preset,
        "axes": [
            {
                "name": ax.name,
                "lo": axis_to_cli(ax.name, ax.lo),
                "hi": axis_to_cli(ax.name, ax.hi),
                "n": ax.n,
                "unit": "Hz" if is_frequency_axis(ax.name) else ("K" if ax.name == "T" else "1"),
            }
            for ax in spec.axes
        ],
        "pairs": [p.column for p in spec.pairs],
        "csv": {"path": csv_path.name, "sha256": hashlib.sha256(csv_text.encode()).hexdigest()},
        "summary": {
            "points": len(result.records),
            "unstable": result.n_unstable,
            "max": {p.column: result.max(p) for p in spec.pairs},
        },
    }


def run_sweep(cfg: RunConfig, argv: list[str] | None = None) -> tuple[Path, Path]:
    params, env = cfg.system()
    if cfg.preset:
        if cfg.axis1 or cfg.axis2:
            raise ConfigurationError("give either a preset or custom axes, not both")
        if not cfg.preset.startswith("fig2") and not any(k.startswith(("G_mb", "G_bc")) for k in cfg.overrides):
            params = SystemParams(*(
                sub.replace(G_mb=2.8 * sub.kappa_a, G_bc=1.6 * sub.kappa_c) for sub in params.subsystems
            ))
        spec = figure_preset(cfg.preset, grid=cfg.grid or 101, params=params, env=env)
    elif cfg.axis1:
        axis2 = parse_axis(cfg.axis2, cfg.grid) if cfg.axis2 else None
        spec = SweepSpec(parse_axis(cfg.axis1, cfg.grid), axis2, params, env, PAIR_ORDER)
    else:
        raise ConfigurationError("sweep needs --preset or --axis1")
    result = grid_sweep(spec, jobs=cfg.jobs)
    text = sweep_csv(result)
    out = Path(cfg.out or f"{cfg.preset or 'sweep'}.csv")
    manifest = build_manifest(cfg, result, text, out, argv or [])
    _atomic_write(out, text)
    _atomic_write(manifest_path(out), json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return out, manifest_path(out)


def run_point(cfg: RunConfig) -> dict:
    params, env = cfg.system()
    ss = steady_state(params, env)
    record = {"stable": ss.stable, "spectral_abscissa_rad_per_s": ss.abscissa}
    for pair in PAIR_ORDER:
        e = ss.entanglement(pair)
        record[pair.column] = e if ss.stable else None
    record["min_symplectic_eigenvalue"] = ss.min_symplectic_eigenvalue() if ss.stable else None
    if ss.stable and env.squeeze_r > 0:
        record["transfer_efficiency"] = transfer_efficiency(record["E_a1a2"], env.squeeze_r)
    else:
        record["transfer_efficiency"] = None
    return record


def _print_record(record: dict) -> None:
    for key, v in record.items():
        if v is None:
            text = "n/a"
        elif isinstance(v, bool):
            text = str(v).lower()
        else:
            text = _fmt(v)
        print(f"{key} = {text}")


def _load_config(args) -> RunConfig:
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigurationError(f"cannot read config: {exc}") from exc
        cfg = parse_config(text)
    else:
        cfg = parse_config("")
    for key in ("preset", "axis1", "axis2", "grid", "out"):
        v = getattr(args, key, None)
        if v is not None:
            setattr(cfg, key, v)
    if getattr(args, "jobs", None) is not None:
        cfg.jobs = args.jobs
    return cfg


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="magnomech", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value parameter file (frequencies in Hz)")
    common.add_argument("--jobs", type=int, help="worker processes for grid evaluation")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("point", parents=[common], help="evaluate one parameter point")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("sweep", parents=[common], help="grid sweep, writes CSV and JSON manifest")
    sp.add_argument("--preset", choices=FIGURE_IDS)
    sp.add_argument("--axis1", help="name:lo:hi:n (couplings in Hz, T in K)")
    sp.add_argument("--axis2")
    sp.add_argument("--grid", type=int, help="points per axis (presets default to 101)")
    sp.add_argument("--out", help="CSV output path")

    sp = sub.add_parser("optimize", parents=[common], help="maximize E_N over couplings")
    sp.add_argument("--free", default="G_mb,G_bc", help="comma-separated coupling names")
    sp.add_argument("--bounds", action="append", default=[], metavar="NAME:LO:HI",
                    help="bounds in Hz; default [0, 3.5 kappa] for each free coupling")
    sp.add_argument("--pair", default="microwave")
    sp.add_argument("--grid", type=int, default=21, help="coarse scan points per axis")

    sp = sub.add_parser("threshold", parents=[common], help="temperature at which E_N vanishes")
    sp.add_argument("--pair", default="microwave")
    sp.add_argument("--t-max", type=float, default=2.0, help="search ceiling in K")
    return ap


def _default_bound(name: str, cfg: RunConfig) -> tuple[float, float]:
    params, _ = cfg.system()
    kappa = params.sub1.kappa_c if name.startswith("G_bc") else params.sub1.kappa_a
    return 0.0, 3.5 * kappa


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        if args.command == "point":
            record = run_point(cfg)
            if args.json:
                print(json.dumps(record, indent=2))
            else:
                _print_record(record)
        elif args.command == "sweep":
            out, man = run_sweep(cfg, argv)
            print(f"wrote {out} and {man}")
        elif args.command == "optimize":
            params, env = cfg.system()
            pair = Pair.parse(args.pair)
            bounds = {n.strip(): _default_bound(n.strip(), cfg) for n in args.free.split(",") if n.strip()}
            for b in args.bounds:
                name, lo, hi = b.split(":")
                if name not in bounds:
                    raise ConfigurationError(f"bounds given for non-free parameter {name!r}")
                bounds[name] = (float(lo) * TWO_PI, float(hi) * TWO_PI)
            best = optimize_max_entanglement(params, env, bounds, pair=pair, grid=args.grid)
            for name, v in best.point.items():
                print(f"{name}_hz = {_fmt(v / TWO_PI)}")
            print(f"{pair.column} = {_fmt(best.value)}")
        elif args.command == "threshold":
            params, env = cfg.system()
            pair = Pair.parse(args.pair)
            t = temperature_threshold(params, env, pair, T_max=args.t_max)
            if t is None:
                print(f"{pair.column} is not entangled at T = {env.temperature} K; no threshold")
            else:
                print(f"threshold_k = {_fmt(t)}")
                print(f"threshold_mk = {_fmt(t * 1e3)}")
    except (MagnomechError, KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, (ConfigurationError, KeyError)) else 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
