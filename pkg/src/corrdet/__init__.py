"""Determinant bounds for correlation matrices via (variance) majorization."""

from .bounds import BoundsReport, PBoundResult, bound_comparison, bounds_report, p_bound
from .corrmodel import (
    CorrelationMatrix,
    OffDiagStats,
    equicorrelation,
    equicorrelation_spectrum,
    f_bound,
    off_diag_stats,
    r_p,
    validate_correlation,
)
from .explore import (
    SearchConfig,
    SearchResult,
    perturb_correlation,
    random_correlation,
    search_improvement_with_negative_r1,
    search_p_counterexample,
)
from .linalg import Order, Spectrum, SymMatrix, determinant, eigenvalues_symmetric, prefix, variance
from .majorization import MajorizationVerdict, majorizes, variance_majorizes, verify_theorem1

__version__ = "0.1.0"
