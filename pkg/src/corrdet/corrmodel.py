"""Correlation matrices, off-diagonal statistics and equicorrelation models."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    DimensionTooSmall,
    InvalidExponent,
    NotPositiveSemidefinite,
    NotUnitDiagonal,
    OffDiagonalOutOfRange,
)
from .linalg import Order, Spectrum, SymMatrix, eigenvalues_symmetric

PSD_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """A :class:`SymMatrix` that passed :func:`validate_correlation`.

    Build instances through :func:`validate_correlation` rather than directly.
    """

    base: SymMatrix

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def entries(self) -> np.ndarray:
        return self.base.entries

    @cached_property
    def spectrum(self) -> Spectrum:
        """Ascending eigenvalues, computed once and shared by all checks."""
        return eigenvalues_symmetric(self.base, Order.ASCENDING)

    def __array__(self, dtype=None, copy=None):
        return self.base.__array__(dtype)


@dataclass(frozen=True)
class OffDiagStats:
    r1: float
    r2: float
    r_inf: float
    n: int


def _as_sym(A) -> SymMatrix:
    if isinstance(A, CorrelationMatrix):
        return A.base
    if isinstance(A, SymMatrix):
        return A
    return SymMatrix(A)


def validate_correlation(A, psd_tolerance: float | None = None) -> CorrelationMatrix:
    """Check ``A`` is a correlation matrix and wrap it.

    The PSD check accepts a smallest eigenvalue down to ``-psd_tolerance``,
    which defaults to ``1e-10 * n``. Raises the error for the first violated
    condition, checked in the order: dimension, diagonal, range, PSD.
    """
    A = _as_sym(A)
    n = A.n
    a = A.entries
    if n < 2:
        raise DimensionTooSmall(f"correlation matrix needs n >= 2, got n={n}")
    if not np.all(np.isfinite(a)):
        raise OffDiagonalOutOfRange("matrix has non-finite entries")
    diag = a.diagonal()
    bad = np.flatnonzero(diag != 1.0)
    if bad.size:
        i = int(bad[0])
        raise NotUnitDiagonal(f"diagonal entry ({i},{i}) is {diag[i]!r}, expected 1.0")
    out = np.argwhere(np.abs(a) > 1.0)
    if out.size:
        i, j = (int(v) for v in out[0])
        raise OffDiagonalOutOfRange(f"entry ({i},{j}) = {a[i, j]!r} outside [-1, 1]")
    if psd_tolerance is None:
        psd_tolerance = PSD_RTOL * n
    R = CorrelationMatrix(A)
    lam_min = float(R.spectrum.values[0])
    if lam_min < -psd_tolerance:
        raise NotPositiveSemidefinite(
            f"smallest eigenvalue {lam_min!r} below -{psd_tolerance!r}", lam_min
        )
    return R


def _off_diagonal(R) -> np.ndarray:
    a = np.asarray(R.entries)
    return a[~np.eye(a.shape[0], dtype=bool)]


def off_diag_stats(R: CorrelationMatrix) -> OffDiagStats:
    """Mean, quadratic mean of |r_ij| and max |r_ij| over ordered pairs i != j."""
    off = _off_diagonal(R)
    return OffDiagStats(
        r1=float(off.mean()),
        r2=math.sqrt(float(np.mean(off * off))),
        r_inf=float(np.max(np.abs(off))),
        n=R.n,
    )


def r_p(R: CorrelationMatrix, p: float) -> float:
    """Power mean of the absolute off-diagonal entries; ``p=math.inf`` gives the max."""
    if not p > 1:
        raise InvalidExponent(f"r_p needs p > 1, got {p!r}")
    off = np.abs(_off_diagonal(R))
    m = float(off.max())
    if m == 0.0:
        return 0.0
    if math.isinf(p):
        return m
    # rescaling by the max keeps (|r|/m)**p in [0, 1] for any p
    return m * float(np.mean((off / m) ** p)) ** (1.0 / p)


def _check_n(n: int):
    if n < 2:
        raise DimensionTooSmall(f"equicorrelation needs n >= 2, got n={n}")


def equicorrelation(n: int, t: float) -> SymMatrix:
    """Unit diagonal, every off-diagonal entry equal to ``t``.

    ``t`` is not restricted, so the result need not be positive semidefinite.
    """
    _check_n(n)
    a = np.full((n, n), float(t))
    np.fill_diagonal(a, 1.0)
    return SymMatrix(a)


def equicorrelation_spectrum(n: int, t: float) -> Spectrum:
    _check_n(n)
    values = [1.0 - t] * (n - 1) + [1.0 + (n - 1) * t]
    return Spectrum(np.sort(values, kind="stable"), Order.ASCENDING)


def f_bound(n: int, t: float) -> float:
    """(1 - t)^(n-1) * (1 + (n-1) t), the determinant of ``equicorrelation(n, t)``."""
    return (1.0 - t) ** (n - 1) * (1.0 + (n - 1) * t)
