"""Random correlation matrices and hill-climbing counterexample search.

All randomness comes from numpy's PCG64 bit generator seeded with a 64-bit
integer, so every function here is a pure function of its inputs and seed.
Derived seeds (per restart, per proposal) are drawn through ``SeedSequence``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .corrmodel import (
    CorrelationMatrix,
    f_bound,
    off_diag_stats,
    r_p,
    validate_correlation,
)
from .errors import DegenerateRow, InvalidExponent
from .linalg import SymMatrix, determinant

ROW_NORM_MIN = 1e-12
ROW_RETRIES = 16
EIG_FLOOR = 1e-10
FOUND_TOL = 1e-9
STALL_LIMIT = 20
SCALE_FLOOR = 1e-4


def _rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def derive_seed(seed: int, *keys: int) -> int:
    """Mix ``seed`` with integer keys into a new 64-bit seed."""
    ss = np.random.SeedSequence([int(seed), *map(int, keys)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def random_correlation(n: int, seed: int) -> CorrelationMatrix:
    """Gram matrix of n standard-normal rows scaled to unit length."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    rng = _rng(seed)
    rows = np.empty((n, n))
    for i in range(n):
        for _ in range(ROW_RETRIES):
            row = rng.standard_normal(n)
            norm = float(np.linalg.norm(row))
            if norm >= ROW_NORM_MIN:
                break
        else:
            raise DegenerateRow(f"row {i} stayed degenerate after {ROW_RETRIES} draws")
        rows[i] = row / norm
    g = rows @ rows.T
    g = np.clip((g + g.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(g, 1.0)
    return validate_correlation(SymMatrix(g))


def reproject(a: np.ndarray) -> np.ndarray:
    """Floor eigenvalues at EIG_FLOOR and rescale back to unit diagonal."""
    w, v = np.linalg.eigh(a)
    a = (v * np.maximum(w, EIG_FLOOR)) @ v.T
    d = 1.0 / np.sqrt(np.diag(a))
    a = a * d[:, None] * d[None, :]
    a = np.clip((a + a.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(a, 1.0)
    return a


def perturb_correlation(R: CorrelationMatrix, scale: float, seed: int) -> CorrelationMatrix:
    """Add symmetric uniform(-scale, scale) noise off the diagonal, then reproject."""
    if not scale > 0:
        raise ValueError(f"scale must be positive, got {scale!r}")
    n = R.n
    rng = _rng(seed)
    iu = np.triu_indices(n, 1)
    noise = np.zeros((n, n))
    noise[iu] = rng.uniform(-scale, scale, size=len(iu[0]))
    noise = noise + noise.T
    a = np.clip(R.entries + noise, -1.0, 1.0)
    np.fill_diagonal(a, 1.0)
    return validate_correlation(SymMatrix(reproject(a)))


@dataclass(frozen=True)
class SearchConfig:
    """Hill-climbing settings.

    ``budget`` counts objective evaluations over all restarts, starting points
    included; it is split as evenly as possible across ``restarts``.
    """

    n: int = 3
    p: float = math.inf
    budget: int = 5000
    seed: int = 0
    perturb_scale: float = 0.05
    restarts: int = 20

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not self.p > 1:
            raise InvalidExponent(f"p must be > 1, got {self.p!r}")
        if self.budget < 1:
            raise ValueError(f"budget must be >= 1, got {self.budget}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if not 0 < self.perturb_scale < 1:
            raise ValueError(f"perturb_scale must lie in (0, 1), got {self.perturb_scale!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class SearchResult:
    best_matrix: CorrelationMatrix
    objective: float
    iterations_used: int
    seed: int
    found: bool
    history: tuple = field(default=(), repr=False)


def p_violation(R: CorrelationMatrix, p: float) -> float:
    """det R - f(n, r_p); positive means R violates the r_p bound."""
    return determinant(R.base) - f_bound(R.n, r_p(R, p))


def negative_r1_objective(R: CorrelationMatrix) -> float:
    """det Rtilde - det Rhat when r1 < 0.

    Matrices with r1 >= 0 score ``-2 - r1``, strictly below every feasible
    value (those lie in [-1, 1]), so the climber never leaves the feasible
    region once inside it and is pushed towards it from outside.
    """
    s = off_diag_stats(R)
    if s.r1 >= 0.0:
        return -2.0 - s.r1
    return f_bound(R.n, s.r1) - f_bound(R.n, s.r2)


def _split_budget(budget: int, restarts: int) -> list[int]:
    base, extra = divmod(budget, restarts)
    return [base + (1 if i < extra else 0) for i in range(restarts) if base or i < extra]


def hill_climb(objective, start: CorrelationMatrix, evaluations: int, scale: float, seed: int):
    """Greedy climb from ``start`` using ``evaluations`` objective calls.

    The step scale halves after STALL_LIMIT consecutive rejections, never going
    below SCALE_FLOOR. Returns ``(best, best_value, evaluations_used)``.
    """
    best = start
    best_value = objective(start)
    used = 1
    rng = _rng(seed)
    stall = 0
    while used < evaluations:
        proposal = perturb_correlation(best, scale, int(rng.integers(0, 2**63)))
        value = objective(proposal)
        used += 1
        if value > best_value:
            best, best_value, stall = proposal, value, 0
        else:
            stall += 1
            if stall >= STALL_LIMIT:
                scale = max(scale / 2.0, SCALE_FLOOR)
                stall = 0
    return best, best_value, used


def _search(objective, cfg: SearchConfig, start: CorrelationMatrix | None) -> SearchResult:
    best = None
    best_value = -math.inf
    used_total = 0
    history = []
    for k, evals in enumerate(_split_budget(cfg.budget, cfg.restarts)):
        if start is None:
            x0 = random_correlation(cfg.n, derive_seed(cfg.seed, k, 0))
        elif k == 0:
            x0 = start
        else:
            x0 = perturb_correlation(start, cfg.perturb_scale, derive_seed(cfg.seed, k, 0))
        m, v, used = hill_climb(objective, x0, evals, cfg.perturb_scale, derive_seed(cfg.seed, k, 1))
        used_total += used
        history.append(v)
        # strict > keeps the earliest restart on ties
        if v > best_value:
            best, best_value = m, v
    return SearchResult(
        best_matrix=best,
        objective=best_value,
        iterations_used=used_total,
        seed=cfg.seed,
        found=best_value > FOUND_TOL,
        history=tuple(history),
    )


def search_p_counterexample(cfg: SearchConfig, start: CorrelationMatrix | None = None) -> SearchResult:
    """Search for a matrix with det R > f(n, r_p), i.e. a violation of the r_p bound.

    With ``start`` the first restart climbs from it directly and the others from
    perturbed copies; otherwise every restart begins at a random matrix.
    """
    if start is not None and start.n != cfg.n:
        raise ValueError(f"start matrix has n={start.n}, config has n={cfg.n}")
    return _search(lambda R: p_violation(R, cfg.p), cfg, start)


def search_improvement_with_negative_r1(
    cfg: SearchConfig, start: CorrelationMatrix | None = None
) -> SearchResult:
    """Search for r1 < 0 with det Rhat < det Rtilde. ``cfg.p`` is ignored."""
    if start is not None and start.n != cfg.n:
        raise ValueError(f"start matrix has n={start.n}, config has n={cfg.n}")
    return _search(negative_r1_objective, cfg, start)
