"""Brute-force ground truth on small discrete spaces.

Exhaustive grids over binary (and, as a spot check, ternary) probability
vectors validate the optimal lower-bound curve from below, the reverse
Pinsker bound from above, and settle which total-variation scale that
upper bound consumes. Binary supports suffice for the lower-bound curve:
restricting to two-point spaces loses nothing there.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .measures import DiscreteDistribution, TvConvention
from .pinsker import SandwichReport, check_sandwich_same_dim
from .serialize import dumps


@dataclass(frozen=True)
class OracleGridSpec:
    """Grid resolution and optional TV constraint for the scans.

    ``constraint_delta`` is a variational TV target; pairs whose TV falls
    within ``constraint_tol`` of it are feasible. The tolerance defaults
    to the step and may not be smaller.
    """

    support_size: int = 2
    step: float = 1e-3
    constraint_delta: float | None = None
    constraint_tol: float | None = None

    def __post_init__(self):
        if self.support_size not in (2, 3):
            raise DomainError(f"support_size must be 2 or 3, got {self.support_size}")
        if not 0 < self.step <= 0.5:
            raise DomainError(f"step must lie in (0, 0.5], got {self.step}")
        if self.constraint_tol is None:
            object.__setattr__(self, "constraint_tol", self.step)
        if self.constraint_tol < self.step:
            raise DomainError(
                f"constraint_tol {self.constraint_tol} smaller than step {self.step}"
            )
        if self.constraint_delta is not None and not (
            0 <= self.constraint_delta <= 2
        ):
            raise DomainError(
                f"constraint_delta must lie in [0, 2], got {self.constraint_delta}"
            )


def _kl_terms(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    # elementwise p log(p/q) with 0 log 0 = 0 and +inf where p > 0, q = 0
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, p * (np.log(p) - np.log(q)), 0.0)
    return terms


def _simplex_grid(support: int, step: float) -> np.ndarray:
    n = round(1.0 / step)
    if abs(n * step - 1.0) > 1e-9:
        raise DomainError(f"step {step} does not divide 1")
    axis = np.linspace(0.0, 1.0, n + 1)
    if support == 2:
        return np.column_stack([axis, axis[::-1]])
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    keep = i + j <= n
    i, j = i[keep], j[keep]
    # index the axis for the last coordinate so it is exactly on-grid and
    # never a tiny negative from float subtraction
    return np.column_stack([axis[i], axis[j], axis[n - i - j]])


def min_kl_at_tv(spec: OracleGridSpec) -> float:
    """Exhaustive minimum of KL over grid pairs near a fixed TV value.

    Scans all ordered pairs (p, q) on the simplex grid and minimizes
    kl(p, q) subject to |variational TV - constraint_delta| <=
    constraint_tol. Pairs violating absolute continuity contribute +inf
    and never achieve the minimum. Raises if no pair is feasible.
    """
    if spec.constraint_delta is None:
        raise DomainError("min_kl_at_tv needs constraint_delta set")
    grid = _simplex_grid(spec.support_size, spec.step)
    target, tol = spec.constraint_delta, spec.constraint_tol
    best = math.inf
    found = False
    # chunk the p side so the pairwise arrays stay modest
    chunk = max(1, int(2e6 / grid.shape[0]))
    for start in range(0, grid.shape[0], chunk):
        p = grid[start : start + chunk, None, :]
        q = grid[None, :, :]
        tv_var = np.abs(p - q).sum(axis=2)
        feasible = np.abs(tv_var - target) <= tol
        if not feasible.any():
            continue
        found = True
        kl = _kl_terms(p, q).sum(axis=2)
        candidate = float(kl[feasible].min())
        best = min(best, candidate)
    if not found:
        raise DomainError(
            f"no grid pair has variational TV within {tol} of {target}"
        )
    return best


@dataclass(frozen=True)
class SandwichViolation:
    """One fuzz trial whose bound chain failed."""

    p: tuple
    q: tuple
    report: SandwichReport

    def as_dict(self) -> dict:
        out = {"p": list(self.p), "q": list(self.q)}
        out.update(self.report.as_dict())
        return out


@dataclass(frozen=True)
class FuzzReport:
    """Violations found by randomized sandwich checking."""

    n_trials: int
    max_support: int
    seed: int
    violations: tuple

    @property
    def n_violations(self) -> int:
        return len(self.violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_lines(self) -> str:
        return "\n".join(dumps(v.as_dict()) for v in self.violations)


def fuzz_sandwich(n_trials: int, max_support: int, seed: int) -> FuzzReport:
    """Random strictly-positive pairs pushed through the sandwich checker.

    Supports are drawn uniformly in 2..max_support, probabilities by
    normalizing exponential draws (uniform on the simplex). Violations
    are collected, not raised; the expected count is zero.
    """
    if n_trials < 1:
        raise DomainError(f"n_trials must be >= 1, got {n_trials}")
    if max_support < 2:
        raise DomainError(f"max_support must be >= 2, got {max_support}")
    rng = np.random.default_rng(seed)
    violations = []
    for _ in range(n_trials):
        k = int(rng.integers(2, max_support + 1))
        draws = rng.exponential(size=2 * k)
        while np.any(draws <= 0):
            draws = rng.exponential(size=2 * k)
        p = DiscreteDistribution(draws[:k] / draws[:k].sum())
        q = DiscreteDistribution(draws[k:] / draws[k:].sum())
        report = check_sandwich_same_dim(p, q)
        if not report.all_hold:
            violations.append(
                SandwichViolation(p=tuple(p.probs), q=tuple(q.probs), report=report)
            )
    return FuzzReport(
        n_trials=n_trials,
        max_support=max_support,
        seed=seed,
        violations=tuple(violations),
    )


def resolve_tv_convention(step: float = 1e-3) -> TvConvention:
    """Settle which TV scale the reverse-Pinsker formula consumes.

    Exhaustive scan of strictly positive binary pairs on a grid: if
    KL <= U holds everywhere with delta read as SUP, that convention is
    returned; otherwise VARIATIONAL is tried; if neither validates the
    implementation is broken and an error is raised. Deterministic.
    """
    n = round(1.0 / step)
    a = np.arange(1, n) / n
    p1 = a[:, None]
    q1 = a[None, :]
    kl = p1 * np.log(p1 / q1) + (1.0 - p1) * np.log((1.0 - p1) / (1.0 - q1))
    r1 = p1 / q1
    r2 = (1.0 - p1) / (1.0 - q1)
    m = np.minimum(r1, r2)
    big = np.maximum(r1, r2)
    with np.errstate(divide="ignore", invalid="ignore"):
        # phi(x) = x log(x)/(x - 1), extended by phi(1) = 1
        phi_big = np.where(big == 1.0, 1.0, big * np.log(big) / (big - 1.0))
        phi_small = np.where(m == 1.0, 1.0, m * np.log(m) / (m - 1.0))
    slope = phi_big - phi_small
    delta_sup = np.abs(p1 - q1)
    if np.all(kl <= delta_sup * slope + 1e-12):
        return TvConvention.SUP
    if np.all(kl <= 2.0 * delta_sup * slope + 1e-12):
        return TvConvention.VARIATIONAL
    raise RuntimeError(
        "neither TV convention validates the reverse-Pinsker bound on the "
        "binary grid; the upper-bound implementation must be wrong"
    )
