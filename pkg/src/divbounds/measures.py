"""Probability measures and exact divergence computations.

Finite discrete distributions, 1-D and n-D Gaussians, the two
total-variation scaling conventions, and the exact KL / TV values that
every bound in this package is checked against.

Convention policy: nothing here defaults a TV convention silently. SUP is
the event-supremum form sup_A |P(A) - Q(A)| with range [0, 1]; VARIATIONAL
is the L1 form, exactly twice SUP, with range [0, 2].
"""

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

import numpy as np

from .errors import (
    AbsoluteContinuityError,
    DomainError,
    InvalidDistributionError,
)
from .quadrature import integrate_adaptive

PROB_SUM_TOL = 1e-12
SYMMETRY_TOL = 1e-12
GAUSS_TV_ABS_TOL = 1e-9
_TAIL_SIGMAS = 10.0  # pdf mass beyond is ~1e-23, far below the 1e-9 budget


class TvConvention(Enum):
    """Total-variation scaling convention; SUP = VARIATIONAL / 2."""

    SUP = "sup"
    VARIATIONAL = "variational"

    @property
    def span(self) -> float:
        """Largest attainable TV value under this convention."""
        return 1.0 if self is TvConvention.SUP else 2.0


def convert_tv(value: float, source: TvConvention, target: TvConvention) -> float:
    """Rescale a TV value between conventions (exact factor of 2)."""
    if not math.isfinite(value):
        raise DomainError(f"TV value must be finite, got {value}")
    if value < -1e-12 or value > source.span + 1e-12:
        raise DomainError(
            f"TV value {value} outside [0, {source.span}] for {source.value}"
        )
    if source is target:
        return value
    return value * 2.0 if source is TvConvention.SUP else value * 0.5


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """Probability vector on a finite support.

    Entries must be nonnegative and sum to 1 within 1e-12 absolute.
    """

    probs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.probs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidDistributionError("probs must be a nonempty 1-D vector")
        if not np.all(np.isfinite(arr)):
            raise InvalidDistributionError("probs must be finite")
        if np.any(arr < 0):
            raise InvalidDistributionError(f"negative probability in {arr!r}")
        total = float(arr.sum())
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise InvalidDistributionError(f"probabilities sum to {total!r}, not 1")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "probs", arr)

    @property
    def size(self) -> int:
        return int(self.probs.size)

    def to_json_dict(self) -> dict:
        return {"type": "discrete", "probs": [float(x) for x in self.probs]}


@dataclass(frozen=True)
class Gaussian1D:
    """Normal distribution on the real line with variance sigma2 > 0."""

    mu: float
    sigma2: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma2)):
            raise InvalidDistributionError("mu and sigma2 must be finite")
        if not self.sigma2 > 0:
            raise InvalidDistributionError(f"sigma2 must be positive, got {self.sigma2}")

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    def pdf(self, x: float) -> float:
        z = x - self.mu
        return math.exp(-z * z / (2.0 * self.sigma2)) / math.sqrt(
            2.0 * math.pi * self.sigma2
        )

    def to_json_dict(self) -> dict:
        return {"type": "gaussian1d", "mu": self.mu, "sigma2": self.sigma2}


@dataclass(frozen=True, eq=False)
class GaussianND:
    """Normal distribution on R^n with symmetric positive-definite covariance.

    The covariance is symmetrized by averaging with its transpose (inputs
    may carry parse noise up to 1e-12 asymmetry) before the eigenvalue
    decomposition; eigenvalues are stored sorted ascending.
    """

    nu: np.ndarray
    sigma: np.ndarray
    eigenvalues: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        nu = np.asarray(self.nu, dtype=float)
        sig = np.asarray(self.sigma, dtype=float)
        if nu.ndim != 1 or nu.size == 0:
            raise InvalidDistributionError("nu must be a nonempty 1-D vector")
        n = nu.size
        if sig.shape != (n, n):
            raise InvalidDistributionError(
                f"sigma must be {n}x{n} to match nu, got shape {sig.shape}"
            )
        if not (np.all(np.isfinite(nu)) and np.all(np.isfinite(sig))):
            raise InvalidDistributionError("nu and sigma must be finite")
        asym = float(np.max(np.abs(sig - sig.T))) if n > 1 else 0.0
        if asym > SYMMETRY_TOL:
            raise InvalidDistributionError(
                f"sigma asymmetric by {asym:.3e} (tolerance {SYMMETRY_TOL})"
            )
        sym = 0.5 * (sig + sig.T)
        evs = np.linalg.eigvalsh(sym)
        if evs[0] <= 0:
            raise InvalidDistributionError(
                f"sigma is not positive definite (smallest eigenvalue {evs[0]:.3e})"
            )
        for name, arr in (("nu", nu.copy()), ("sigma", sym), ("eigenvalues", evs)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def dim(self) -> int:
        return int(self.nu.size)

    def to_json_dict(self) -> dict:
        return {
            "type": "gaussiannd",
            "nu": [float(x) for x in self.nu],
            "sigma": [[float(x) for x in row] for row in self.sigma],
        }


@dataclass(frozen=True)
class DensityBounds:
    """Essential infimum m and supremum M of a relative density dP/dQ.

    Because dP/dQ integrates to 1 under Q, m <= 1 <= M always. m = 0 is
    representable (P vanishing on part of Q's support) but is rejected by
    the reverse-Pinsker operations, which need m > 0.
    """

    m: float
    M: float

    def __post_init__(self):
        if not (math.isfinite(self.m) and math.isfinite(self.M)):
            raise DomainError("density bounds must be finite")
        if self.m < 0:
            raise DomainError(f"essential infimum must be >= 0, got {self.m}")
        if self.m > 1.0 + 1e-12 or self.M < 1.0 - 1e-12:
            raise DomainError(
                f"density bounds must satisfy m <= 1 <= M, got ({self.m}, {self.M})"
            )
        if self.M < self.m:
            raise DomainError(f"M < m: ({self.m}, {self.M})")


Distribution = Union[DiscreteDistribution, Gaussian1D, GaussianND]


def _check_same_support(p: DiscreteDistribution, q: DiscreteDistribution) -> None:
    if p.size != q.size:
        raise DomainError(f"support lengths differ: {p.size} vs {q.size}")


def kl_discrete(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """KL divergence sum_i p_i log(p_i / q_i), natural log.

    0 log 0 is 0; +inf when p puts mass where q does not.
    """
    _check_same_support(p, q)
    pa, qa = p.probs, q.probs
    mask = pa > 0
    if np.any(qa[mask] == 0):
        return math.inf
    val = float(np.sum(pa[mask] * np.log(pa[mask] / qa[mask])))
    return val if val > 0 else 0.0


def tv_discrete(
    p: DiscreteDistribution, q: DiscreteDistribution, conv: TvConvention
) -> float:
    """Total variation between discrete distributions under ``conv``."""
    _check_same_support(p, q)
    variational = float(np.abs(p.probs - q.probs).sum())
    return 0.5 * variational if conv is TvConvention.SUP else variational


def kl_gaussian_1d(a: Gaussian1D, b: Gaussian1D) -> float:
    """Closed-form KL between 1-D Gaussians:

        (1/2) [ s_a/s_b - 1 + log(s_b/s_a) + (mu_a - mu_b)^2 / s_b ]
    """
    r = a.sigma2 / b.sigma2
    dmu = a.mu - b.mu
    val = 0.5 * (r - 1.0 - math.log(r) + dmu * dmu / b.sigma2)
    return val if val > 0 else 0.0


def density_crossings(a: Gaussian1D, b: Gaussian1D) -> list[float]:
    """Points where the two Gaussian densities are equal.

    log f_a - log f_b is a quadratic in x; its real roots (0, 1, or 2 of
    them) are returned sorted. Near-identical inputs may yield none.
    """
    sa, sb = a.sigma2, b.sigma2
    ca = 0.5 / sb - 0.5 / sa
    cb = a.mu / sa - b.mu / sb
    cc = b.mu**2 / (2.0 * sb) - a.mu**2 / (2.0 * sa) + 0.5 * math.log(sb / sa)
    if ca == 0.0:
        if cb == 0.0:
            return []
        return [-cc / cb]
    disc = cb * cb - 4.0 * ca * cc
    if disc <= 0.0:
        return []
    # Citardauq pairing avoids cancellation when |4 ca cc| << cb^2 (nearly
    # equal variances), where the textbook formula loses the finite root
    q = -0.5 * (cb + math.copysign(math.sqrt(disc), cb))
    return sorted([q / ca, cc / q])


def tv_gaussian_1d(a: Gaussian1D, b: Gaussian1D, conv: TvConvention) -> float:
    """Total variation between 1-D Gaussians by adaptive quadrature.

    The integral of |f_a - f_b| is split at the analytic density-crossing
    points, so each piece has a sign-constant smooth integrand, and at
    mu +/- k sigma of both densities, so no panel is wide compared to the
    local density scale (a panel thousands of sigmas wide can hide a whole
    bump from the quadrature nodes). The summed absolute error is kept
    below 1e-9. Raises QuadratureError (carrying the achieved error
    estimate) on non-convergence.
    """
    if a.mu == b.mu and a.sigma2 == b.sigma2:
        return 0.0
    lo = min(a.mu - _TAIL_SIGMAS * a.sigma, b.mu - _TAIL_SIGMAS * b.sigma)
    hi = max(a.mu + _TAIL_SIGMAS * a.sigma, b.mu + _TAIL_SIGMAS * b.sigma)
    cuts = set(density_crossings(a, b))
    for g in (a, b):
        for k in (1.0, 2.0, 4.0, 8.0):
            cuts.add(g.mu - k * g.sigma)
            cuts.add(g.mu + k * g.sigma)
    edges = [lo]
    for cut in sorted(c for c in cuts if lo < c < hi):
        if cut - edges[-1] > 1e-13 * (hi - lo):
            edges.append(cut)
    edges.append(hi)
    piece_tol = GAUSS_TV_ABS_TOL / len(edges)

    def integrand(x: float) -> float:
        return abs(a.pdf(x) - b.pdf(x))

    total = 0.0
    for left, right in zip(edges, edges[1:]):
        value, _ = integrate_adaptive(integrand, left, right, abs_tol=piece_tol)
        total += value
    sup = min(max(0.5 * total, 0.0), 1.0)
    return sup if conv is TvConvention.SUP else 2.0 * sup


def density_bounds_discrete(
    p: DiscreteDistribution, q: DiscreteDistribution
) -> DensityBounds:
    """Elementwise min and max of p_i / q_i over the support of q.

    Requires p absolutely continuous w.r.t. q.
    """
    _check_same_support(p, q)
    support = q.probs > 0
    if np.any(p.probs[~support] > 0):
        raise AbsoluteContinuityError(
            "p puts mass where q does not; relative density undefined"
        )
    ratios = p.probs[support] / q.probs[support]
    return DensityBounds(m=float(ratios.min()), M=float(ratios.max()))


def distribution_from_json(source) -> Distribution:
    """Parse a distribution literal from a JSON string or mapping.

    Accepted forms:
        {"type": "discrete",   "probs": [...]}
        {"type": "gaussian1d", "mu": ..., "sigma2": ...}
        {"type": "gaussiannd", "nu": [...], "sigma": [[...], ...]}
    """
    if isinstance(source, (str, bytes)):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON: {exc}") from exc
    else:
        obj = source
    if not isinstance(obj, dict) or "type" not in obj:
        raise DomainError("distribution literal must be an object with a 'type' key")
    kind = obj["type"]
    try:
        if kind == "discrete":
            return DiscreteDistribution(np.asarray(obj["probs"], dtype=float))
        if kind == "gaussian1d":
            return Gaussian1D(mu=float(obj["mu"]), sigma2=float(obj["sigma2"]))
        if kind == "gaussiannd":
            return GaussianND(
                nu=np.asarray(obj["nu"], dtype=float),
                sigma=np.asarray(obj["sigma"], dtype=float),
            )
    except KeyError as exc:
        raise DomainError(f"missing field {exc} for type {kind!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidDistributionError):
            raise
        raise DomainError(f"malformed {kind!r} literal: {exc}") from exc
    raise DomainError(f"unknown distribution type {kind!r}")
