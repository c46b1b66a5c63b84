"""Column-perturbed and simple-perturbed consistent matrices, cone tests.

A column-perturbed consistent matrix has a consistent principal submatrix
of order ``n - 1``. Up to monomial similarity it is the all-ones block
bordered by a last column ``x`` (sorted descending) and last row ``1/x``.
The simple-perturbed case ``S_n(x)`` has ``x = (x, 1, ..., 1)``, ``x >= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import nnls

from .core import CONSISTENCY_RTOL, ReciprocalMatrix, as_weight_vector, is_consistent

CONE_TOL = 1e-8
CLOSED_FORM_TOL = 1e-12


class StructureError(ValueError):
    pass


class NotSortedError(StructureError):
    pass


class NonPositiveError(StructureError):
    pass


class DimensionTooSmall(StructureError):
    pass


class XBelowOne(StructureError):
    pass


class AllZeroCoefficients(StructureError):
    pass


def _check_border(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 1:
        raise StructureError("x must be a nonempty 1-d vector")
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise NonPositiveError("x entries must be finite and positive")
    if np.any(np.diff(x) > 0):
        raise NotSortedError("x must be sorted in descending order")
    return x


def build_column_perturbed(x) -> ReciprocalMatrix:
    """Canonical column-perturbed matrix of order ``len(x) + 1``.

    >>> build_column_perturbed([2.0]).entries.tolist()
    [[1.0, 2.0], [0.5, 1.0]]
    """
    x = _check_border(x)
    n = x.size + 1
    a = np.ones((n, n))
    a[:-1, -1] = x
    a[-1, :-1] = 1.0 / x
    return ReciprocalMatrix(a)


def build_simple_perturbed(n: int, x: float) -> ReciprocalMatrix:
    """``S_n(x)``: the column-perturbed matrix with border ``(x, 1, ..., 1)``."""
    if n < 3:
        raise DimensionTooSmall(f"n must be at least 3, got {n}")
    if not x >= 1:
        raise XBelowOne(f"x must be >= 1, got {x}")
    border = np.ones(n - 1)
    border[0] = x
    return build_column_perturbed(border)


def is_column_perturbed_consistent(
    A: ReciprocalMatrix, tol: float = CONSISTENCY_RTOL
) -> int | None:
    """Smallest 0-based index whose deletion leaves a consistent submatrix.

    Returns ``None`` when no such index exists.
    """
    a = np.asarray(A)
    n = a.shape[0]
    for k in range(n):
        keep = [i for i in range(n) if i != k]
        sub = a[np.ix_(keep, keep)]
        if len(keep) < 2 or is_consistent(ReciprocalMatrix._trusted(sub.copy()), tol):
            return k
    return None


def simple_perturbed_efficiency(n: int, x: float, w, tol: float = CLOSED_FORM_TOL) -> bool:
    """Closed-form efficiency test for ``S_n(x)``.

    ``w`` is efficient iff ``w_n <= w_i <= w_1 <= x w_n`` for ``i = 2..n-1``,
    checked on ``w / w_n`` with absolute slack ``tol``.
    """
    if n < 3:
        raise DimensionTooSmall(f"n must be at least 3, got {n}")
    if not x >= 1:
        raise XBelowOne(f"x must be >= 1, got {x}")
    w = as_weight_vector(w, n)
    w = w / w[-1]
    mid = w[1:-1]
    return bool(
        np.all(mid >= 1.0 - tol) and np.all(mid <= w[0] + tol) and w[0] <= x + tol
    )


@dataclass(frozen=True)
class ConeMembership:
    """Result of testing ``w`` for membership in the cone of ``A``'s columns.

    ``indeterminate`` marks residuals within a factor 10 of the tolerance,
    where the boolean should not be trusted.
    """

    member: bool
    residual: float
    coefficients: np.ndarray
    indeterminate: bool

    def __bool__(self):
        return self.member


def cone_membership(A: ReciprocalMatrix, w, tol: float = CONE_TOL) -> ConeMembership:
    """Is ``w`` a nonnegative, nonzero combination of the columns of ``A``?

    Solves ``min ||A s - w||`` over ``s >= 0`` (Lawson-Hanson NNLS) and
    compares the relative residual ``||A s - w|| / ||w||`` with ``tol``.
    """
    a = np.asarray(A)
    w = as_weight_vector(w, a.shape[0])
    s, _ = nnls(a, w, maxiter=50 * a.shape[1])
    residual = float(np.linalg.norm(a @ s - w) / np.linalg.norm(w))
    member = residual <= tol and bool(np.any(s > 0))
    indeterminate = tol / 10 <= residual <= tol * 10
    return ConeMembership(member, residual, s, indeterminate)


def cycle_slack_profile(x, s) -> np.ndarray:
    """Slacks ``b_{i,i+1}`` (``i = 1..n-1``) and ``b_{n,1}`` of ``W - A`` for ``w = A s``.

    ``A`` is the canonical column-perturbed matrix with border ``x`` and
    ``W = [w_i / w_j]``. The values come from closed forms in ``x`` and ``s``
    alone; all of them are nonnegative, so ``1 -> 2 -> ... -> n -> 1`` is a
    cycle of ``G(A, A s)``.
    """
    x = _check_border(x)
    s = np.asarray(s, dtype=float)
    n = x.size + 1
    if s.shape != (n,):
        raise StructureError(f"s must have length {n}")
    if np.any(s < 0):
        raise StructureError("s must be nonnegative")
    if not np.any(s > 0):
        raise AllZeroCoefficients("s must not be all zero")
    head, sn = s[:-1], s[-1]
    total = head.sum()
    inv_sum = (head / x).sum()
    out = np.empty(n)
    # b_{i,i+1}, i = 1..n-2
    out[: n - 2] = sn * (x[:-1] - x[1:]) / (total + x[1:] * sn)
    # b_{n-1,n}
    out[n - 2] = (head[:-1] * (1.0 - x[-1] / x[:-1])).sum() / (inv_sum + sn)
    # b_{n,1}
    out[n - 1] = (head[1:] * (1.0 / x[1:] - 1.0 / x[0])).sum() / (total + x[0] * sn)
    return out
