"""Determinant bounds for correlation matrices.

Every comparison determinant is evaluated with the closed form ``f_bound``;
only ``det R`` itself goes through a factorization.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .corrmodel import CorrelationMatrix, OffDiagStats, f_bound, off_diag_stats, r_p
from .errors import InternalInconsistency
from .linalg import determinant

DEFAULT_TOL = 1e-9
EQUAL_TOL = 1e-12


@dataclass(frozen=True)
class BoundsReport:
    n: int
    det_R: float
    stats: OffDiagStats
    det_Rtilde: float
    det_Rhat: float
    det_Rbar: float
    sandwich_holds: bool
    olkin_holds: bool
    improves_olkin: bool
    r1_nonnegative: bool


@dataclass(frozen=True)
class PBoundResult:
    p: float
    r_p: float
    det_Rp: float
    bound_holds: bool
    margin: float


class Comparison(enum.Enum):
    IMPROVES_OLKIN = "improves_olkin"
    WEAKER_THAN_OLKIN = "weaker_than_olkin"
    EQUAL = "equal"


@dataclass(frozen=True)
class BoundComparison:
    verdict: Comparison
    det_Rhat: float
    det_Rtilde: float
    margin: float


def bounds_report(R: CorrelationMatrix, tol: float = DEFAULT_TOL) -> BoundsReport:
    """Olkin's bound and the equicorrelation sandwich for one matrix."""
    n = R.n
    det_R = determinant(R.base)
    stats = off_diag_stats(R)
    det_Rtilde = f_bound(n, stats.r1)
    det_Rhat = f_bound(n, stats.r2)
    det_Rbar = f_bound(n, -stats.r2)
    return BoundsReport(
        n=n,
        det_R=det_R,
        stats=stats,
        det_Rtilde=det_Rtilde,
        det_Rhat=det_Rhat,
        det_Rbar=det_Rbar,
        sandwich_holds=det_Rbar - tol <= det_R <= det_Rhat + tol,
        olkin_holds=det_R <= det_Rtilde + tol,
        improves_olkin=det_Rhat <= det_Rtilde,
        r1_nonnegative=stats.r1 >= 0.0,
    )


def p_bound(R: CorrelationMatrix, p: float, tol: float = DEFAULT_TOL) -> PBoundResult:
    """Evaluate det R <= f(n, r_p).

    For p in (1, 2] the inequality is guaranteed, so a violation there raises
    :class:`InternalInconsistency` instead of being reported.
    """
    rp = r_p(R, p)
    det_R = determinant(R.base)
    det_Rp = f_bound(R.n, rp)
    holds = det_R <= det_Rp + tol
    if not holds and p <= 2:
        raise InternalInconsistency(
            f"det R = {det_R!r} exceeds f(n, r_p) = {det_Rp!r} at p = {p!r}"
        )
    return PBoundResult(p=p, r_p=rp, det_Rp=det_Rp, bound_holds=holds, margin=det_Rp - det_R)


def bound_comparison(R: CorrelationMatrix) -> BoundComparison:
    stats = off_diag_stats(R)
    det_Rhat = f_bound(R.n, stats.r2)
    det_Rtilde = f_bound(R.n, stats.r1)
    margin = abs(det_Rhat - det_Rtilde)
    if margin <= EQUAL_TOL:
        verdict = Comparison.EQUAL
    elif det_Rhat < det_Rtilde:
        verdict = Comparison.IMPROVES_OLKIN
    else:
        verdict = Comparison.WEAKER_THAN_OLKIN
    return BoundComparison(verdict, det_Rhat, det_Rtilde, margin)

