import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from magnomech.entanglement import (
    PAIR_ORDER,
    UNSTABLE,
    Pair,
    PairCM,
    eta_minus,
    extract_pair,
    is_entangled,
    log_negativity,
    steady_state,
    steady_state_entanglement,
)
from magnomech.errors import DomainError
from magnomech.params import EnvironmentParams


def tmsv(r):
    c, s = math.cosh(2 * r) / 2, math.sinh(2 * r) / 2
    return PairCM(c * np.eye(2), c * np.eye(2), s * np.diag([1.0, -1.0]))


def rotation(theta):
    return np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])


def test_pair_metadata():
    assert [p.column for p in PAIR_ORDER] == ["E_c1c2", "E_b1b2", "E_m1m2", "E_a1a2"]
    assert Pair.MICROWAVE.indices == (0, 1, 2, 3)
    assert Pair.OPTICAL.indices == (12, 13, 14, 15)
    assert Pair.parse("microwave") is Pair.parse("E_a1a2") is Pair.parse("a") is Pair.MICROWAVE
    with pytest.raises(KeyError):
        Pair.parse("spin")


def test_extract_vacuum():
    pcm = extract_pair(np.eye(16) / 2, Pair.MAGNON)
    assert np.array_equal(pcm.v4, np.eye(4) / 2)
    assert not pcm.c12.any()


def test_extract_picks_cross_block():
    V = np.arange(256.0).reshape(16, 16)
    V = V + V.T
    pcm = extract_pair(V, Pair.PHONON)
    assert np.array_equal(pcm.c12, V[8:10, 10:12])
    assert np.array_equal(pcm.v4, V[8:12, 8:12])


def test_vacuum_not_entangled():
    pcm = PairCM.from_matrix(np.eye(4) / 2)
    assert eta_minus(pcm) == pytest.approx(0.5)
    assert log_negativity(pcm) == 0.0
    assert not is_entangled(pcm)


def test_thermal_product_state():
    pcm = PairCM.from_matrix(np.diag([1.5] * 4))
    assert log_negativity(pcm) == 0.0
    assert not is_entangled(pcm)


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0, 2.0])
def test_tmsv_closed_form(r):
    assert eta_minus(tmsv(r)) == pytest.approx(math.exp(-2 * r) / 2, rel=1e-9)
    assert log_negativity(tmsv(r)) == pytest.approx(2 * r, abs=1e-9)
    assert is_entangled(tmsv(r))


def test_unphysical_input_rejected():
    pcm = PairCM(0.1 * np.eye(2), 0.1 * np.eye(2), np.diag([2.0, 2.0]))
    with pytest.raises(DomainError):
        log_negativity(pcm)


@given(st.floats(0.0, 2.0), st.floats(0.0, 2 * math.pi), st.floats(0.0, 2 * math.pi), st.floats(0.0, 3.0))
def test_local_rotation_invariance(r, t1, t2, nth):
    base = tmsv(r)
    base = PairCM(base.v1 + nth * np.eye(2), base.v2 + 0.5 * nth * np.eye(2), base.c12)
    R1, R2 = rotation(t1), rotation(t2)
    rotated = PairCM(R1 @ base.v1 @ R1.T, R2 @ base.v2 @ R2.T, R1 @ base.c12 @ R2.T)
    assert log_negativity(rotated) == pytest.approx(log_negativity(base), abs=1e-10)


@given(st.floats(0.0, 2.0), st.floats(0.0, 3.0), st.floats(0.0, 3.0))
def test_swap_invariance(r, n1, n2):
    base = tmsv(r)
    pcm = PairCM(base.v1 + n1 * np.eye(2), base.v2 + n2 * np.eye(2), base.c12)
    assert log_negativity(pcm.swapped()) == pytest.approx(log_negativity(pcm), abs=1e-12)


def test_no_squeezing_no_entanglement(optimum_params):
    ss = steady_state(optimum_params, EnvironmentParams(0.01, 0.0))
    for pair in PAIR_ORDER:
        assert ss.entanglement(pair) == 0.0


def test_cut_optomechanical_link(optimum_params, env):
    assert steady_state_entanglement(optimum_params.replace_both(G_bc=0.0), env, Pair.PHONON) == 0.0


def test_squeezed_correlations_reach_optical_pair(optimum_params, env):
    pcm = extract_pair(steady_state(optimum_params, env).covariance, Pair.OPTICAL)
    assert np.abs(pcm.c12).max() > 0.1


def test_unstable_outcome():
    # a strongly negative damping makes the drift non-Hurwitz
    from magnomech.params import SystemParams

    params = SystemParams.symmetric(gamma_b=-1e9)
    assert steady_state_entanglement(params, EnvironmentParams(), Pair.MICROWAVE) is UNSTABLE
    ss = steady_state(params, EnvironmentParams())
    assert not ss.stable and ss.covariance is None
