import math

import numpy as np
import pytest

from magnomech.entanglement import PAIR_ORDER, Pair
from magnomech.errors import ConfigurationError, DomainError, SearchError
from magnomech.params import TWO_PI, EnvironmentParams
from magnomech.sweep import (
    KAPPA_A,
    KAPPA_C,
    Axis,
    SweepSpec,
    apply_axis,
    figure_preset,
    grid_sweep,
    optimize_max_entanglement,
    temperature_threshold,
    transfer_efficiency,
)


def test_zero_squeezing_grid_gives_zero_records(optimum_params):
    spec = SweepSpec(
        Axis("G_mb", 0.0, 3 * KAPPA_A, 2),
        Axis("G_bc", 0.0, 3 * KAPPA_C, 2),
        optimum_params,
        EnvironmentParams(0.01, 0.0),
    )
    result = grid_sweep(spec)
    assert len(result.records) == 4
    for rec in result.records:
        assert rec.stable
        assert all(rec.values[p] == 0.0 for p in PAIR_ORDER)


def test_grid_is_row_major_and_deterministic(optimum_params, env):
    spec = SweepSpec(Axis("G_mb", KAPPA_A, 2 * KAPPA_A, 3), Axis("G_bc", KAPPA_C, 2 * KAPPA_C, 2), optimum_params, env)
    coords = spec.grid_points()
    assert coords[0] == (KAPPA_A, KAPPA_C)
    assert coords[1] == (KAPPA_A, 2 * KAPPA_C)
    assert coords[2][0] == pytest.approx(1.5 * KAPPA_A)
    a, b = grid_sweep(spec), grid_sweep(spec)
    assert [r.values for r in a.records] == [r.values for r in b.records]
    assert a.grid(Pair.MICROWAVE).shape == (3, 2)


def test_decoupled_column_keeps_only_source_entanglement(optimum_params, env):
    params = optimum_params.replace_both(G_bc=0.0)
    result = grid_sweep(SweepSpec(Axis("G_mb", 0.0, 3.5 * KAPPA_A, 6), None, params, env))
    grid = {p: result.grid(p) for p in PAIR_ORDER}
    for p in (Pair.PHONON, Pair.MAGNON, Pair.MICROWAVE):
        assert np.all(grid[p] < 1e-10)
    # the optical modes just filter the injected two-mode squeezed vacuum
    np.testing.assert_allclose(grid[Pair.OPTICAL], 2.0, atol=1e-9)


def test_apply_axis_units_and_targets(optimum_params, env):
    p, e = apply_axis(optimum_params, env, "g_a1", 1.0)
    assert p.sub1.g_a == 1.0 and p.sub2.g_a == optimum_params.sub2.g_a
    p, e = apply_axis(optimum_params, env, "T", 0.2)
    assert e.temperature == 0.2 and p is optimum_params
    with pytest.raises(ConfigurationError):
        apply_axis(optimum_params, env, "omega_b", 1.0)


@pytest.mark.parametrize(
    "spec",
    [
        SweepSpec(Axis("G_mb", 0.0, 1.0, 1)),
        SweepSpec(Axis("bogus", 0.0, 1.0, 3)),
        SweepSpec(Axis("G_mb", 0.0, 1.0, 3), Axis("G_mb", 0.0, 1.0, 3)),
        SweepSpec(Axis("G_mb", -1.0, 1.0, 3)),
        SweepSpec(Axis("G_mb", 0.0, math.inf, 3)),
        SweepSpec(Axis("G_mb", 0.0, 1.0, 3), pairs=()),
    ],
)
def test_invalid_specs_rejected(spec):
    with pytest.raises(ConfigurationError):
        grid_sweep(spec)


def test_presets():
    fig3b = figure_preset("fig3b")
    assert fig3b.axis2 is None and fig3b.axis1.name == "r"
    assert fig3b.env.temperature == 0.01
    assert fig3b.pairs == PAIR_ORDER

    fig2d = figure_preset("fig2d")
    assert [ax.name for ax in fig2d.axes] == ["G_mb", "G_bc"]
    assert fig2d.pairs == (Pair.MICROWAVE,)
    assert fig2d.axis1.n == fig2d.axis2.n == 101

    assert [ax.name for ax in figure_preset("fig4d").axes] == ["r", "g_a"]
    assert figure_preset("fig3a").params.sub1.G_mb == pytest.approx(2.8 * KAPPA_A)
    with pytest.raises(ConfigurationError):
        figure_preset("fig5")


@pytest.mark.parametrize("fig_id", ["fig4a", "fig4b", "fig4c"])
def test_fig4_mirror_symmetry(fig_id):
    result = grid_sweep(figure_preset(fig_id, grid=7))
    grid = result.grid(Pair.MICROWAVE)
    stable = ~np.isnan(grid)
    assert np.array_equal(stable, stable.T)
    np.testing.assert_allclose(grid[stable], grid.T[stable], rtol=0, atol=1e-9)


def test_parallel_matches_serial(optimum_params, env):
    spec = figure_preset("fig2d", grid=5, params=optimum_params, env=env)
    serial = grid_sweep(spec, jobs=1)
    parallel = grid_sweep(spec, jobs=2)
    assert [r.values for r in serial.records] == [r.values for r in parallel.records]


def test_rate_rescale_leaves_sweep_unchanged(fig3_params, env):
    spec = figure_preset("fig3b", grid=5, params=fig3_params, env=env)
    scaled = figure_preset("fig3b", grid=5, params=fig3_params.scaled(10.0), env=env)
    for p in PAIR_ORDER:
        np.testing.assert_allclose(grid_sweep(spec).grid(p), grid_sweep(scaled).grid(p), rtol=0, atol=1e-9)


def test_optimizer_interior_maximum_in_G_bc(optimum_params, env):
    bounds = {"G_bc": (0.0, 3.5 * KAPPA_C)}
    best = optimize_max_entanglement(optimum_params, env, bounds, grid=15)
    lo, hi = bounds["G_bc"]
    assert lo < best.point["G_bc"] < hi
    for g in np.linspace(lo, hi, 15):
        p, e = apply_axis(optimum_params, env, "G_bc", g)
        single = optimize_max_entanglement(p, e, {"G_bc": (g, g)})
        assert best.value >= single.value - 1e-12


def test_optimizer_degenerate_bounds_return_the_point(optimum_params, env):
    g = TWO_PI * 10e6
    best = optimize_max_entanglement(optimum_params, env, {"G_bc": (g, g), "G_mb": (TWO_PI * 4.5e6,) * 2})
    assert best.point == {"G_bc": g, "G_mb": TWO_PI * 4.5e6}
    assert best.value == pytest.approx(0.2622, abs=1e-3)


def test_optimizer_two_dimensional(optimum_params, env):
    bounds = {"G_mb": (0.0, 3.5 * KAPPA_A), "G_bc": (0.0, 3.5 * KAPPA_C)}
    best = optimize_max_entanglement(optimum_params, env, bounds, grid=11)
    assert best.value == pytest.approx(0.54, abs=0.01)
    assert best.point["G_mb"] / KAPPA_A == pytest.approx(3.0, abs=0.3)


def test_optimizer_errors(optimum_params, env):
    with pytest.raises(ConfigurationError):
        optimize_max_entanglement(optimum_params, env, {})
    with pytest.raises(ConfigurationError):
        optimize_max_entanglement(optimum_params, env, {"G_mb": (2.0, 1.0)})
    unstable = optimum_params.replace_both(gamma_b=-1e9)
    with pytest.raises(SearchError):
        optimize_max_entanglement(unstable, env, {"G_mb": (0.0, KAPPA_A)}, grid=3)


def test_threshold_not_applicable_without_squeezing(fig3_params):
    assert temperature_threshold(fig3_params, EnvironmentParams(0.01, 0.0)) is None


def test_threshold_grows_with_squeezing(fig3_params):
    t1 = temperature_threshold(fig3_params, EnvironmentParams(0.01, 1.0))
    t2 = temperature_threshold(fig3_params, EnvironmentParams(0.01, 2.0))
    assert t2 > t1


def test_threshold_not_found_below_ceiling(fig3_params, env):
    with pytest.raises(SearchError):
        temperature_threshold(fig3_params, env, T_max=0.05)


def test_transfer_efficiency():
    assert transfer_efficiency(0.54, 1.0) == pytest.approx(0.27)
    assert transfer_efficiency(0.0, 0.7) == 0.0
    assert transfer_efficiency(2 * 0.7, 0.7) == pytest.approx(1.0)
    for r in (0.0, -1.0):
        with pytest.raises(DomainError):
            transfer_efficiency(0.1, r)

