"""Perron vector and left singular vector by power iteration."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ReciprocalMatrix

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000


class NoConvergence(RuntimeError):
    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"power iteration did not converge in {iterations} iterations "
            f"(residual {residual:.3e})"
        )


@dataclass(frozen=True)
class SpectralResult:
    """Dominant eigenpair of a positive matrix.

    ``vector`` is normalized to last entry 1. ``residual`` is
    ``||M v - lam v||_inf / (lam ||v||_inf)``.
    """

    vector: np.ndarray
    eigenvalue: float
    iterations: int
    residual: float


def power_iteration(
    M: np.ndarray, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> SpectralResult:
    """Perron eigenpair of an entrywise positive square matrix.

    Starts from the all-ones vector and rescales to unit infinity norm at
    every step. Stops when the change between iterates and the relative
    residual are both at most ``tol``.

    Raises
    ------
    NoConvergence
        If ``max_iter`` steps pass without meeting ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = np.asarray(M, dtype=float)
    v = np.ones(M.shape[0])
    residual = np.inf
    for it in range(1, max_iter + 1):
        y = M @ v
        y /= y.max()
        change = np.abs(y - v).max()
        v = y
        if change <= tol:
            Mv = M @ v
            lam = float(v @ Mv / (v @ v))
            residual = float(np.abs(Mv - lam * v).max() / lam)
            if residual <= tol:
                return SpectralResult(v / v[-1], lam, it, residual)
    raise NoConvergence(max_iter, residual)


def perron_vector(
    A: ReciprocalMatrix, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> SpectralResult:
    """Right Perron eigenvector of ``A``, last entry 1."""
    return power_iteration(np.asarray(A), tol, max_iter)


def singular_vector(
    A: ReciprocalMatrix, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> SpectralResult:
    """Perron eigenvector of ``A A^T`` (the dominant left singular vector of ``A``).

    The reported eigenvalue is that of ``A A^T``, i.e. the squared spectral
    norm of ``A``.
    """
    a = np.asarray(A)
    return power_iteration(a @ a.T, tol, max_iter)
