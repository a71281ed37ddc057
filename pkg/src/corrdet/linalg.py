"""Dense symmetric eigenvalues, LU determinants and variance primitives.

Everything here is written for small matrices (n up to a few hundred) and
favours accuracy and determinism over speed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyVector, NonConvergence, OutOfRange

JACOBI_RTOL = 1e-12
JACOBI_MAX_SWEEPS = 100


class Order(enum.Enum):
    ASCENDING = "ascending"
    DESCENDING = "descending"


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Real symmetric matrix stored densely as a read-only float64 array."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
        # (a + a.T) / 2 is exactly symmetric since float addition commutes
        a = (a + a.T) / 2.0
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.entries.copy()
        return self.entries.astype(dtype)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues together with the order they are sorted in."""

    values: np.ndarray
    order: Order

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64).reshape(-1)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.shape[0]

    def sorted(self, order: Order) -> Spectrum:
        if order is self.order:
            return self
        return Spectrum(self.values[::-1], order)


def _sort(values, order: Order) -> np.ndarray:
    # stable sort keeps Jacobi output order among ties
    if order is Order.ASCENDING:
        return np.sort(values, kind="stable")
    return -np.sort(-np.asarray(values), kind="stable")


def jacobi_eigenvalues(a: np.ndarray, rtol: float = JACOBI_RTOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Unsorted eigenvalues of a symmetric array by cyclic Jacobi rotations.

    Sweeps visit the pairs (p, q), p < q, in row order. Iteration stops once
    the off-diagonal Frobenius norm is at most ``rtol * ||a||_F``.
    """
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if n == 1:
        return a.diagonal().copy()
    threshold = rtol * math.sqrt(float(np.sum(a * a)))
    # row-major lists are much faster than numpy for the scalar-heavy inner loop
    m = a.tolist()
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    for _ in range(max_sweeps):
        off = 0.0
        for p, q in pairs:
            off += m[p][q] * m[p][q]
        if math.sqrt(2.0 * off) <= threshold:
            return np.array([m[i][i] for i in range(n)])
        for p, q in pairs:
            apq = m[p][q]
            if apq == 0.0:
                continue
            theta = (m[q][q] - m[p][p]) / (2.0 * apq)
            t = 1.0 / (abs(theta) + math.sqrt(1.0 + theta * theta))
            if theta < 0.0:
                t = -t
            c = 1.0 / math.sqrt(1.0 + t * t)
            s = t * c
            rp, rq = m[p], m[q]
            for k in range(n):
                if k == p or k == q:
                    continue
                akp, akq = rp[k], rq[k]
                nkp = c * akp - s * akq
                nkq = s * akp + c * akq
                rp[k] = nkp
                rq[k] = nkq
                m[k][p] = nkp
                m[k][q] = nkq
            rp[p] -= t * apq
            rq[q] += t * apq
            rp[q] = 0.0
            rq[p] = 0.0
    raise NonConvergence(f"Jacobi did not converge in {max_sweeps} sweeps (n={n})")


def eigenvalues_symmetric(A: SymMatrix, order: Order = Order.ASCENDING) -> Spectrum:
    """All eigenvalues of ``A`` sorted according to ``order``."""
    return Spectrum(_sort(jacobi_eigenvalues(A.entries), order), order)


def lu_factor(a: np.ndarray):
    """In-place style LU with partial pivoting.

    Returns ``(lu, perm, sign)`` where ``lu`` packs unit-lower L below the
    diagonal and U on and above it, ``perm`` is the row permutation and
    ``sign`` is the permutation parity. Zero pivots are left in place.
    """
    lu = np.array(a, dtype=np.float64)
    n = lu.shape[0]
    perm = np.arange(n)
    sign = 1.0
    for j in range(n - 1):
        piv = j + int(np.argmax(np.abs(lu[j:, j])))
        if piv != j:
            lu[[j, piv]] = lu[[piv, j]]
            perm[[j, piv]] = perm[[piv, j]]
            sign = -sign
        pivot = lu[j, j]
        if pivot == 0.0:
            continue
        lu[j + 1:, j] /= pivot
        lu[j + 1:, j + 1:] -= np.outer(lu[j + 1:, j], lu[j, j + 1:])
    return lu, perm, sign


def determinant(A) -> float:
    """Determinant via LU with partial pivoting; the sign follows row swaps."""
    a = A.entries if isinstance(A, SymMatrix) else np.asarray(A, dtype=np.float64)
    lu, _, sign = lu_factor(a)
    return sign * float(np.prod(lu.diagonal()))


def variance(x) -> float:
    """Population variance, dividing by the length of ``x``."""
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.size == 0:
        raise EmptyVector("variance of an empty vector")
    d = x - x.mean()
    return float(np.dot(d, d) / x.size)


def prefix(x, k: int) -> np.ndarray:
    """The first ``k`` entries of ``x``."""
    x = np.asarray(x).reshape(-1)
    if not 1 <= k <= x.size:
        raise OutOfRange(f"prefix length {k} outside [1, {x.size}]")
    return x[:k].copy()
