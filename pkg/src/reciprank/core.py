"""Reciprocal matrices, weight vectors, consistency and monomial similarity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

RECIPROCITY_RTOL = 1e-12
CONSISTENCY_RTOL = 1e-9


class ReciprocalMatrixError(ValueError):
    """Base class for invalid pairwise-comparison input."""


class NotSquareError(ReciprocalMatrixError):
    pass


class NonPositiveEntryError(ReciprocalMatrixError):
    pass


class ReciprocityViolation(ReciprocalMatrixError):
    """Raised when ``a_ij * a_ji`` is not 1 within tolerance.

    The offending pair is available as ``pair`` (0-based ``(i, j)``, ``i <= j``).
    """

    def __init__(self, pair: tuple[int, int], product: float):
        self.pair = pair
        self.product = product
        i, j = pair
        super().__init__(
            f"entries ({i}, {j}) and ({j}, {i}) are not reciprocal: product = {product!r}"
        )


class DimensionMismatch(ValueError):
    pass


class ReciprocalMatrix:
    """A positive square matrix with ``a_ji = 1 / a_ij``.

    Construction validates the input and canonicalizes it from the upper
    triangle, so every stored lower-triangle entry is exactly ``1 / a_ij``
    and the diagonal is exactly 1. The stored array is read-only.

    Parameters
    ----------
    entries : array_like, shape (n, n)
        Finite, strictly positive entries.
    rtol : float
        Relative tolerance on ``a_ij * a_ji == 1``.
    """

    __slots__ = ("_a",)

    def __init__(self, entries, rtol: float = RECIPROCITY_RTOL):
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise NotSquareError(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] < 2:
            raise ReciprocalMatrixError(f"need n >= 2, got n = {a.shape[0]}")
        if not np.all(np.isfinite(a)):
            bad = tuple(int(k) for k in np.argwhere(~np.isfinite(a))[0])
            raise NonPositiveEntryError(f"entry {bad} is not finite")
        if np.any(a <= 0):
            bad = tuple(int(k) for k in np.argwhere(a <= 0)[0])
            raise NonPositiveEntryError(f"entry {bad} = {a[bad]!r} is not positive")
        dev = np.abs(a * a.T - 1.0)
        if np.any(dev > rtol):
            i, j = sorted(int(k) for k in np.unravel_index(np.argmax(dev), dev.shape))
            raise ReciprocityViolation((i, j), float(a[i, j] * a[j, i]))
        self._a = _canonical(a)

    @classmethod
    def _trusted(cls, a: np.ndarray) -> ReciprocalMatrix:
        # Skips validation; ``a`` must already be canonical.
        obj = cls.__new__(cls)
        a.setflags(write=False)
        obj._a = a
        return obj

    @property
    def entries(self) -> np.ndarray:
        return self._a

    @property
    def n(self) -> int:
        return self._a.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._a
        return self._a.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, ReciprocalMatrix):
            return NotImplemented
        return np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash(self._a.tobytes())

    def __repr__(self):
        return f"ReciprocalMatrix(n={self.n})"

    def column(self, j: int) -> np.ndarray:
        return self._a[:, j].copy()


def _canonical(a: np.ndarray) -> np.ndarray:
    upper = np.triu(a, 1)
    out = upper + np.triu(1.0 / a, 1).T
    np.fill_diagonal(out, 1.0)
    out.setflags(write=False)
    return out


def validate_reciprocal(entries, rtol: float = RECIPROCITY_RTOL) -> ReciprocalMatrix:
    """Validate ``entries`` as a reciprocal matrix and canonicalize it.

    Raises
    ------
    NotSquareError, NonPositiveEntryError, ReciprocityViolation
    """
    return ReciprocalMatrix(entries, rtol=rtol)


def from_upper_triangle(entries, lower_rtol: float | None = None) -> ReciprocalMatrix:
    """Build a reciprocal matrix from the strict upper triangle of ``entries``.

    The lower triangle is ignored unless ``lower_rtol`` is given, in which case
    it must agree with the reciprocals of the upper triangle to that relative
    tolerance. This is how matrices printed to a few significant digits are
    read.
    """
    a = np.array(entries, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {a.shape}")
    upper = np.triu(a, 1)
    mask = np.triu(np.ones(a.shape, dtype=bool), 1)
    bad_mask = mask & ~(np.isfinite(a) & (a > 0))
    if bad_mask.any():
        bad = tuple(int(k) for k in np.argwhere(bad_mask)[0])
        raise NonPositiveEntryError(f"entry {bad} = {a[bad]!r} is not positive")
    if lower_rtol is not None:
        ReciprocalMatrix(a, rtol=lower_rtol)
    full = upper + np.triu(1.0 / np.where(mask, a, 1.0), 1).T
    np.fill_diagonal(full, 1.0)
    return ReciprocalMatrix(full)


def as_weight_vector(w, n: int | None = None) -> np.ndarray:
    """Return ``w`` as a float array after checking it is strictly positive."""
    v = np.asarray(w, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"expected a nonempty 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)) or np.any(v <= 0):
        raise ValueError("weight vector entries must be finite and positive")
    if n is not None and v.size != n:
        raise DimensionMismatch(f"vector has length {v.size}, matrix has n = {n}")
    return v


def normalize(w) -> np.ndarray:
    """Scale ``w`` so its last entry is 1."""
    v = as_weight_vector(w)
    return v / v[-1]


def consistent_from_weights(w) -> ReciprocalMatrix:
    """The consistent matrix ``[w_i / w_j]``."""
    v = as_weight_vector(w)
    return ReciprocalMatrix(np.divide.outer(v, v))


def is_consistent(A: ReciprocalMatrix, tol: float = CONSISTENCY_RTOL) -> bool:
    """True iff ``a_ik == a_ij * a_jk`` for all triples, to relative ``tol``."""
    a = np.asarray(A)
    prod = a[:, :, None] * a[None, :, :]  # [i, j, k] = a_ij a_jk
    target = a[:, None, :]
    return bool(np.all(np.abs(prod - target) <= tol * target))


def geometric_mean_vector(A: ReciprocalMatrix) -> np.ndarray:
    """Row geometric means of ``A``, normalized to last entry 1."""
    g = np.exp(np.log(np.asarray(A)).mean(axis=1))
    return g / g[-1]


@dataclass(frozen=True)
class MonomialMatrix:
    """``S = D P`` stored in factored form.

    ``(S w)_i = scale[i] * w[perm[i]]``; ``perm`` is 0-based.
    """

    perm: tuple[int, ...]
    scale: tuple[float, ...]

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        scale = tuple(float(s) for s in self.scale)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"perm is not a permutation of 0..{len(perm) - 1}")
        if len(scale) != len(perm):
            raise DimensionMismatch("perm and scale lengths differ")
        if not all(np.isfinite(s) and s > 0 for s in scale):
            raise ValueError("scale entries must be finite and positive")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "scale", scale)

    @classmethod
    def identity(cls, n: int) -> MonomialMatrix:
        return cls(tuple(range(n)), (1.0,) * n)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, log_spread: float = 1.0) -> MonomialMatrix:
        perm = rng.permutation(n)
        scale = np.exp(rng.uniform(-log_spread, log_spread, n))
        return cls(tuple(perm), tuple(scale))

    @property
    def n(self) -> int:
        return len(self.perm)

    def dense(self) -> np.ndarray:
        s = np.zeros((self.n, self.n))
        s[np.arange(self.n), self.perm] = self.scale
        return s

    def apply(self, w) -> np.ndarray:
        v = np.asarray(w, dtype=float)
        if v.shape != (self.n,):
            raise DimensionMismatch(f"vector length {v.size} != {self.n}")
        return np.asarray(self.scale) * v[list(self.perm)]

    def inverse(self) -> MonomialMatrix:
        inv = np.empty(self.n, dtype=int)
        inv[list(self.perm)] = np.arange(self.n)
        return MonomialMatrix(tuple(inv), tuple(1.0 / np.asarray(self.scale)[inv]))


def monomial_similarity(A: ReciprocalMatrix, S: MonomialMatrix) -> ReciprocalMatrix:
    """Return ``S A S^-1``; the matching vector map is ``S.apply``."""
    if A.n != S.n:
        raise DimensionMismatch(f"matrix n = {A.n}, monomial n = {S.n}")
    p = list(S.perm)
    d = np.asarray(S.scale)
    a = np.asarray(A)[np.ix_(p, p)]
    return ReciprocalMatrix(d[:, None] * a / d[None, :])
