"""Two-mode logarithmic negativity of same-type mode pairs."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .assembly import build_diffusion, build_drift, mode_index
from .errors import DomainError
from .linalg import det2, det4, is_stable, solve_lyapunov, spectral_abscissa, symplectic_eigenvalues
from .params import EnvironmentParams, SystemParams

DISCRIMINANT_TOL = 1e-12


class Pair(enum.Enum):
    """Bipartition between the two subsystems' modes of one type."""

    OPTICAL = "c"
    PHONON = "b"
    MAGNON = "m"
    MICROWAVE = "a"

    @property
    def column(self) -> str:
        return f"E_{self.value}1{self.value}2"

    @property
    def indices(self) -> tuple[int, int, int, int]:
        i1, i2 = mode_index(self.value, 1), mode_index(self.value, 2)
        return (i1, i1 + 1, i2, i2 + 1)

    @classmethod
    def parse(cls, name: str) -> Pair:
        key = name.strip().lower()
        for pair in cls:
            if key in (pair.name.lower(), pair.value, pair.column.lower()):
                return pair
        raise KeyError(f"unknown pair {name!r}")


# CSV column order
PAIR_ORDER = (Pair.OPTICAL, Pair.PHONON, Pair.MAGNON, Pair.MICROWAVE)


class Outcome(enum.Enum):
    UNSTABLE = "unstable"


UNSTABLE = Outcome.UNSTABLE


@dataclass(frozen=True)
class PairCM:
    v1: np.ndarray
    v2: np.ndarray
    c12: np.ndarray

    @cached_property
    def v4(self) -> np.ndarray:
        return np.block([[self.v1, self.c12], [self.c12.T, self.v2]])

    @classmethod
    def from_matrix(cls, v4) -> PairCM:
        v4 = np.asarray(v4, dtype=float)
        return cls(v4[:2, :2].copy(), v4[2:, 2:].copy(), v4[:2, 2:].copy())

    def swapped(self) -> PairCM:
        return PairCM(self.v2, self.v1, self.c12.T)


def extract_pair(V: np.ndarray, pair: Pair) -> PairCM:
    idx = list(pair.indices)
    return PairCM.from_matrix(np.asarray(V)[np.ix_(idx, idx)])


_PT = np.diag([1.0, 1.0, 1.0, -1.0])
_OMEGA4 = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _discriminant(v4_pt: np.ndarray, sigma: float) -> float:
    """``sigma**2 - 4 det V4`` evaluated as ``tr(N @ N)``.

    ``N = (Omega V)^2 + sigma/2`` has eigenvalues ``+-(nu_+^2 - nu_-^2)/2``,
    so the trace of its square equals the discriminant without the
    catastrophic cancellation of the direct difference when nu_+ ~ nu_-.
    """
    w = _OMEGA4 @ v4_pt
    n = w @ w + 0.5 * sigma * np.eye(4)
    return float(np.sum(n * n.T))


def eta_minus(pcm: PairCM) -> float:
    """Smallest symplectic eigenvalue of the partially transposed pair CM."""
    sigma = det2(pcm.v1) + det2(pcm.v2) - 2.0 * det2(pcm.c12)
    det_v4 = det4(pcm.v4)
    disc = _discriminant(_PT @ pcm.v4 @ _PT, sigma)
    if disc < 0:
        if disc < -DISCRIMINANT_TOL * max(1.0, sigma * sigma):
            raise DomainError(f"unphysical covariance block (discriminant {disc:.3e})")
        disc = 0.0
    # (sigma - sqrt(disc)) / 2 rewritten as 2 det / (sigma + sqrt(disc)) to avoid cancellation
    denom = sigma + math.sqrt(disc)
    if not (det_v4 > 0 and denom > 0):
        raise DomainError(f"non-positive partial-transpose eigenvalue (det {det_v4:.3e}, sigma {sigma:.3e})")
    return math.sqrt(2.0 * det_v4 / denom)


def log_negativity(pcm: PairCM) -> float:
    """``max(0, -ln(2 eta_minus))``, natural log, vacuum variance 1/2."""
    return max(0.0, -math.log(2.0 * eta_minus(pcm)))


def is_entangled(pcm: PairCM) -> bool:
    return eta_minus(pcm) < 0.5


@dataclass(frozen=True)
class SteadyState:
    drift: np.ndarray
    diffusion: np.ndarray
    covariance: np.ndarray | None
    stable: bool

    @property
    def abscissa(self) -> float:
        return spectral_abscissa(self.drift)

    def min_symplectic_eigenvalue(self) -> float:
        if self.covariance is None:
            return math.nan
        return float(symplectic_eigenvalues(self.covariance)[0])

    def entanglement(self, pair: Pair) -> float | Outcome:
        if not self.stable:
            return UNSTABLE
        return log_negativity(extract_pair(self.covariance, pair))

    def entanglements(self, pairs=PAIR_ORDER) -> dict[Pair, float | Outcome]:
        return {p: self.entanglement(p) for p in pairs}


def steady_state(params: SystemParams, env: EnvironmentParams) -> SteadyState:
    A = build_drift(params)
    D = build_diffusion(params, env)
    if not is_stable(A):
        return SteadyState(A, D, None, False)
    return SteadyState(A, D, solve_lyapunov(A, D, check_stability=False), True)


def steady_state_entanglement(params: SystemParams, env: EnvironmentParams, pair: Pair) -> float | Outcome:
    """Stationary E_N of ``pair``, or ``UNSTABLE`` when the drift is not Hurwitz."""
    return steady_state(params, env).entanglement(pair)
