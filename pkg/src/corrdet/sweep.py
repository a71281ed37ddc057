"""Property sweeps over seeded random correlation matrices.

Each sampled matrix is checked against the guaranteed results: Olkin's
bound and classical majorization, the equicorrelation sandwich, both variance
majorization relations, the trace/Frobenius identities and the r_p bound for
p in (1, 2].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bounds import bounds_report, p_bound
from .corrmodel import CorrelationMatrix, equicorrelation_spectrum
from .errors import InternalInconsistency
from .explore import derive_seed, random_correlation
from .majorization import majorizes, verify_theorem1

GUARANTEED_P = (1.25, 1.5, 1.75, 2.0)
CHECKS = ("olkin", "olkin_majorization", "sandwich", "improvement", "theorem1_left",
          "theorem1_right", "trace", "frobenius", "p_bound")


@dataclass(frozen=True)
class MatrixCheck:
    """Margins for one matrix; a check passes when its margin is >= 0."""

    margins: dict

    @property
    def failures(self) -> list[str]:
        return [name for name, m in self.margins.items() if not m >= 0.0]


def check_matrix(R: CorrelationMatrix, tol: float = 1e-9) -> MatrixCheck:
    n = R.n
    rep = bounds_report(R, tol)
    lam = R.spectrum.values
    s = rep.stats
    olkin_maj = majorizes(lam, equicorrelation_spectrum(n, s.r1).values, tol)
    left, right = verify_theorem1(R, tol)

    def verdict_margin(v):
        # >= 0 exactly when v.holds
        return min([tol + x for x in v.slacks] + [tol - abs(r) for r in v.equality_residuals])

    margins = {
        "olkin": rep.det_Rtilde + tol - rep.det_R,
        "olkin_majorization": verdict_margin(olkin_maj),
        "sandwich": min(rep.det_R - (rep.det_Rbar - tol), rep.det_Rhat + tol - rep.det_R),
        "theorem1_left": verdict_margin(left),
        "theorem1_right": verdict_margin(right),
        "trace": 1e-9 * n - abs(float(lam.sum()) - n),
        "frobenius": 1e-9 * n * n - abs(float(lam @ lam) - (n + n * (n - 1) * s.r2**2)),
    }
    # only meaningful when r1 >= 0; elsewhere either order can occur
    margins["improvement"] = (
        rep.det_Rtilde + 1e-12 - rep.det_Rhat if rep.r1_nonnegative else 0.0
    )
    worst_p = np.inf
    for p in GUARANTEED_P:
        try:
            worst_p = min(worst_p, p_bound(R, p, tol).margin + tol)
        except InternalInconsistency:
            worst_p = -np.inf
    margins["p_bound"] = float(worst_p)
    return MatrixCheck(margins)


@dataclass
class SweepSummary:
    count: int = 0
    failures: dict = field(default_factory=lambda: {c: 0 for c in CHECKS})
    worst: dict = field(default_factory=lambda: {c: np.inf for c in CHECKS})
    first_failure: dict = field(default_factory=dict)

    @property
    def total_failures(self) -> int:
        return sum(self.failures.values())

    def add(self, check: MatrixCheck, label):
        self.count += 1
        for name, m in check.margins.items():
            self.worst[name] = min(self.worst[name], m)
            if not m >= 0.0:
                self.failures[name] += 1
                self.first_failure.setdefault(name, label)


def sample(n: int, count: int, seed: int):
    """Yield ``count`` random n x n correlation matrices derived from ``seed``."""
    for i in range(count):
        yield random_correlation(n, derive_seed(seed, n, i))


def run_sweep(ns, count: int, seed: int, tol: float = 1e-9) -> SweepSummary:
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    summary = SweepSummary()
    for n in ns:
        for i, R in enumerate(sample(n, count, seed)):
            summary.add(check_matrix(R, tol), (n, i))
    return summary
