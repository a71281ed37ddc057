"""Classical and variance majorization verdicts with per-k slacks."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .corrmodel import CorrelationMatrix, equicorrelation_spectrum, off_diag_stats
from .errors import LengthMismatch, LengthTooSmall
from .linalg import variance

DEFAULT_TOL = 1e-9


class Kind(enum.Enum):
    CLASSICAL = "classical"
    VARIANCE = "variance"


@dataclass(frozen=True)
class MajorizationVerdict:
    """Outcome of a majorization test.

    ``slacks`` holds the margin of each inequality (positive means satisfied),
    ``equality_residuals`` the signed residual of each equality condition.
    """

    holds: bool
    kind: Kind
    slacks: tuple
    equality_residuals: tuple
    tolerance: float

    @property
    def min_slack(self) -> float:
        return min(self.slacks) if self.slacks else 0.0


def _verdict(kind, slacks, residuals, tol) -> MajorizationVerdict:
    slacks = tuple(float(s) for s in slacks)
    residuals = tuple(float(r) for r in residuals)
    holds = all(s >= -tol for s in slacks) and all(abs(r) <= tol for r in residuals)
    return MajorizationVerdict(holds, kind, slacks, residuals, tol)


def _pair(x, y):
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if x.size != y.size:
        raise LengthMismatch(f"lengths differ: {x.size} vs {y.size}")
    return x, y


def majorizes(x, y, tol: float = DEFAULT_TOL) -> MajorizationVerdict:
    """Test whether ``x`` majorizes ``y``; both are sorted descending first."""
    x, y = _pair(x, y)
    if x.size < 1:
        raise LengthTooSmall("majorization needs non-empty vectors")
    xs = np.cumsum(-np.sort(-x))
    ys = np.cumsum(-np.sort(-y))
    return _verdict(Kind.CLASSICAL, xs[:-1] - ys[:-1], [xs[-1] - ys[-1]], tol)


def variance_majorizes(x, y, tol: float = DEFAULT_TOL) -> MajorizationVerdict:
    """Test whether ``x`` variance-majorizes ``y``; both are sorted ascending first.

    Equalities: totals and full variances. Inequalities: Var(x[:k]) >= Var(y[:k])
    for k = 2..n-1, so for n == 2 only the equalities remain.
    """
    x, y = _pair(x, y)
    n = x.size
    if n < 2:
        raise LengthTooSmall(f"variance majorization needs n >= 2, got {n}")
    x = np.sort(x)
    y = np.sort(y)
    slacks = [variance(x[:k]) - variance(y[:k]) for k in range(2, n)]
    residuals = [x.sum() - y.sum(), variance(x) - variance(y)]
    return _verdict(Kind.VARIANCE, slacks, residuals, tol)


def verify_theorem1(R: CorrelationMatrix, tol: float = DEFAULT_TOL):
    """Check lambda(Rbar) >vm lambda(R) >vm lambda(Rhat).

    Rhat and Rbar are the equicorrelation matrices at +r2 and -r2; their spectra
    come from the closed form while lambda(R) comes from the eigensolver.
    """
    stats = off_diag_stats(R)
    lam = R.spectrum.values
    lam_bar = equicorrelation_spectrum(R.n, -stats.r2).values
    lam_hat = equicorrelation_spectrum(R.n, stats.r2).values
    return variance_majorizes(lam_bar, lam, tol), variance_majorizes(lam, lam_hat, tol)
