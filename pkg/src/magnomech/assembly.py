"""Drift and diffusion matrices of the linearized eight-mode network.

Quadratures are ``X = (o + o^dag)/sqrt(2)`` and ``Y = (o - o^dag)/(i sqrt(2))``
so the vacuum variance is 1/2.  Modes are stored in blocks of four, ordered
microwave, magnon, phonon, optical; inside a block subsystem 1 precedes
subsystem 2 and X precedes Y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields

import numpy as np

from .params import (
    EnvironmentParams,
    SubsystemParams,
    SystemParams,
    bose_occupation,
    squeeze_moments,
)

MODE_KINDS = ("a", "m", "b", "c")
_BLOCK = {kind: 4 * i for i, kind in enumerate(MODE_KINDS)}

QUADRATURE_LABELS = (
    "X_a1", "Y_a1", "X_a2", "Y_a2",
    "X_m1", "Y_m1", "X_m2", "Y_m2",
    "q_1", "p_1", "q_2", "p_2",
    "X_c1", "Y_c1", "X_c2", "Y_c2",
)
DIM = len(QUADRATURE_LABELS)


def mode_index(kind: str, j: int) -> int:
    """Index of the X (or q) quadrature of mode ``kind`` in subsystem ``j`` (1 or 2)."""
    if kind not in _BLOCK or j not in (1, 2):
        raise KeyError(f"unknown mode {kind}{j}")
    return _BLOCK[kind] + 2 * (j - 1)


def subsystem_swap_permutation() -> np.ndarray:
    """Index permutation exchanging subsystem 1 and subsystem 2."""
    perm = np.arange(DIM)
    for kind in MODE_KINDS:
        i1, i2 = mode_index(kind, 1), mode_index(kind, 2)
        perm[[i1, i1 + 1, i2, i2 + 1]] = [i2, i2 + 1, i1, i1 + 1]
    return perm


def _frozen(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


def _mode_rates(sub: SubsystemParams) -> dict[str, float]:
    return {"a": sub.kappa_a, "m": sub.kappa_m, "b": sub.gamma_b, "c": sub.kappa_c}


def rate_diagonal(params: SystemParams) -> np.ndarray:
    """Damping rate attached to each quadrature, in storage order."""
    diag = np.empty(DIM)
    for j, sub in enumerate(params.subsystems, start=1):
        for kind, rate in _mode_rates(sub).items():
            i = mode_index(kind, j)
            diag[i] = diag[i + 1] = rate
    return diag


def build_drift(params: SystemParams) -> np.ndarray:
    """Drift matrix of the red-detuned (beam-splitter) linearized dynamics.

    Per subsystem the resonant-frame Langevin equations are::

        a' = -k_a a - i g_a m
        m' = -k_m m - i g_a a - G_mb b
        b' = -g_b b + G_mb m - G_bc c
        c' = -k_c c + G_bc b

    which in quadratures give a negative diagonal plus a skew-symmetric
    coupling part.  The returned array is read-only.
    """
    A = np.zeros((DIM, DIM))
    A[np.diag_indices(DIM)] = -rate_diagonal(params)
    for j, sub in enumerate(params.subsystems, start=1):
        a, m, b, c = (mode_index(k, j) for k in MODE_KINDS)
        # -i g (X + iY)  ->  X' += g Y,  Y' -= g X
        A[a, m + 1] = sub.g_a
        A[a + 1, m] = -sub.g_a
        A[m, a + 1] = sub.g_a
        A[m + 1, a] = -sub.g_a
        for p in (0, 1):
            A[m + p, b + p] = -sub.G_mb
            A[b + p, m + p] = sub.G_mb
            A[b + p, c + p] = -sub.G_bc
            A[c + p, b + p] = sub.G_bc
    return _frozen(A)


def build_diffusion(params: SystemParams, env: EnvironmentParams) -> np.ndarray:
    """Diffusion matrix for thermal baths plus a two-mode squeezed optical input.

    The squeezed cross-correlations enter only between the two optical modes:
    ``+2 sqrt(k_c1 k_c2) M`` on X_c1/X_c2 and the opposite sign on Y_c1/Y_c2.
    """
    D = np.zeros((DIM, DIM))
    sq = squeeze_moments(env.squeeze_r)
    for j, sub in enumerate(params.subsystems, start=1):
        thermal = {
            "a": (sub.kappa_a, sub.omega_a),
            "m": (sub.kappa_m, sub.omega_m),
            "b": (sub.gamma_b, sub.omega_b),
        }
        for kind, (rate, omega) in thermal.items():
            i = mode_index(kind, j)
            D[i, i] = D[i + 1, i + 1] = rate * (2.0 * bose_occupation(omega, env.temperature) + 1.0)
        i = mode_index("c", j)
        D[i, i] = D[i + 1, i + 1] = sub.kappa_c * (2.0 * sq.n_sq + 1.0)

    c1, c2 = mode_index("c", 1), mode_index("c", 2)
    cross = 2.0 * math.sqrt(params.sub1.kappa_c * params.sub2.kappa_c) * sq.m_sq
    D[c1, c2] = D[c2, c1] = cross
    D[c1 + 1, c2 + 1] = D[c2 + 1, c1 + 1] = -cross
    return _frozen(D)


@dataclass
class Diagnostics:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


_POSITIVE = ("kappa_a", "kappa_m", "kappa_c", "gamma_b")


def validate_params(params: SystemParams, env: EnvironmentParams) -> Diagnostics:
    """Collect parameter problems without raising.

    Violations make the model meaningless (NaN, negative values, zero decay
    rates).  Warnings flag points outside the strong magnon-microwave
    coupling regime the scheme is designed for.
    """
    diag = Diagnostics()
    for j, sub in enumerate(params.subsystems, start=1):
        for f in fields(sub):
            v = getattr(sub, f.name)
            if not math.isfinite(v):
                diag.violations.append(f"{f.name}{j} is not finite ({v!r})")
            elif v < 0:
                diag.violations.append(f"{f.name}{j} is negative ({v!r})")
            elif f.name in _POSITIVE and v == 0:
                diag.violations.append(f"{f.name}{j} must be strictly positive")
        if sub.omega_a <= 0 or sub.omega_m <= 0 or sub.omega_b <= 0:
            diag.violations.append(f"mode frequencies of subsystem {j} must be positive")
        if math.isfinite(sub.g_a) and sub.g_a <= max(sub.kappa_a, sub.kappa_m):
            diag.warnings.append(
                f"g_a{j} = {sub.g_a:.6g} rad/s does not exceed kappa_a{j}, kappa_m{j} (weak coupling)"
            )
    for name in ("temperature", "squeeze_r"):
        v = getattr(env, name)
        if not math.isfinite(v):
            diag.violations.append(f"{name} is not finite ({v!r})")
        elif v < 0:
            diag.violations.append(f"{name} is negative ({v!r})")
    return diag
