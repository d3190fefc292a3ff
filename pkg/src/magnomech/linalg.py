"""Dense numerics for 16x16 covariance problems."""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import DomainError, NumericError, StabilityError

STABILITY_RTOL = 1e-9


def spectral_abscissa(A: np.ndarray) -> float:
    """Largest real part over the eigenvalues of ``A``.

    LAPACK ``geev`` (Hessenberg reduction + shifted QR) does the work.
    """
    A = np.asarray(A, dtype=float)
    if not np.all(np.isfinite(A)):
        raise NumericError("matrix has non-finite entries")
    try:
        eig = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigenvalue iteration did not converge: {exc}") from exc
    return float(np.max(eig.real))


def is_stable(A: np.ndarray) -> bool:
    A = np.asarray(A, dtype=float)
    eps = STABILITY_RTOL * np.max(np.sum(np.abs(A), axis=1))
    return spectral_abscissa(A) < -eps


def lyapunov_residual(A: np.ndarray, V: np.ndarray, D: np.ndarray) -> float:
    """Max-norm of ``A V + V A^T + D``."""
    return float(np.max(np.abs(A @ V + V @ A.T + D)))


def solve_lyapunov(A: np.ndarray, D: np.ndarray, check_stability: bool = True) -> np.ndarray:
    """Stationary covariance ``V`` with ``A V + V A^T = -D``.

    Bartels-Stewart via scipy, followed by one step of iterative refinement
    on the residual.  The result is symmetrized.
    """
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    if check_stability and not is_stable(A):
        raise StabilityError("drift matrix is not Hurwitz; no stationary state")
    try:
        V = scipy.linalg.solve_continuous_lyapunov(A, -D)
        R = A @ V + V @ A.T + D
        V = V + scipy.linalg.solve_continuous_lyapunov(A, -R)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericError(f"Lyapunov solve failed: {exc}") from exc
    if not np.all(np.isfinite(V)):
        raise NumericError("Lyapunov solve produced non-finite entries")
    return 0.5 * (V + V.T)


def _lyapunov_rhs(A: np.ndarray, D: np.ndarray, V: np.ndarray) -> np.ndarray:
    AV = A @ V
    return AV + AV.T + D


def evolve_covariance(
    A: np.ndarray, D: np.ndarray, V0: np.ndarray, duration: float, step: float
) -> np.ndarray:
    """Integrate ``dV/dt = A V + V A^T + D`` with fixed-step classical RK4.

    The last step is shortened so the integration ends exactly at
    ``duration``.
    """
    if not step > 0:
        raise DomainError("step must be positive")
    if duration < 0:
        raise DomainError("duration must be non-negative")
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    V = np.array(V0, dtype=float)
    n_full, rem = divmod(duration, step)
    steps = [step] * int(n_full)
    if rem > 1e-12 * step:
        steps.append(rem)
    with np.errstate(over="ignore", invalid="ignore"):
        for h in steps:
            k1 = _lyapunov_rhs(A, D, V)
            k2 = _lyapunov_rhs(A, D, V + 0.5 * h * k1)
            k3 = _lyapunov_rhs(A, D, V + 0.5 * h * k2)
            k4 = _lyapunov_rhs(A, D, V + h * k3)
            V = V + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            V = 0.5 * (V + V.T)
            if not np.all(np.isfinite(V)):
                raise NumericError("covariance integration diverged")
    return V


def symplectic_form(n_modes: int) -> np.ndarray:
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def symplectic_eigenvalues(V: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a ``2n x 2n`` covariance matrix, ascending.

    The eigenvalues of ``i Omega V`` come in pairs ``+-nu``; each ``nu`` is
    reported once.
    """
    V = np.asarray(V, dtype=float)
    dim = V.shape[0]
    if V.shape != (dim, dim) or dim % 2:
        raise DomainError(f"expected an even square matrix, got shape {V.shape}")
    try:
        eig = np.linalg.eigvals(symplectic_form(dim // 2) @ V)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigenvalue iteration did not converge: {exc}") from exc
    nu = np.sort(np.abs(eig))
    return nu[::2]


def det2(M) -> float:
    return float(M[0][0] * M[1][1] - M[0][1] * M[1][0])


def det4(M) -> float:
    """Determinant of a 4x4 matrix via LU with partial pivoting.

    LU keeps the relative error near machine precision for the strongly
    squeezed covariance blocks, where cofactor expansion cancels badly.
    """
    m = np.asarray(M, dtype=float)
    if m.shape != (4, 4):
        raise DomainError(f"expected a 4x4 matrix, got shape {m.shape}")
    return float(np.linalg.det(m))
