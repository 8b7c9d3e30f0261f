"""Closed-form degree-rank model for power-law networks.

Degrees are modelled as i.i.d. draws from a continuous power law
``f(x) = c * x**-gamma`` on ``[k_min - 1/2, k_max + 1/2]``, discretised with
a half-integer continuity correction. A node of degree ``k`` is beaten by
each other node independently with the tail probability
``p = P(deg > k)``, so its rank is ``1 + Binomial(n - 1, p)``.

The exponent is recovered from the average degree through the large-network
limit ``d_avg = (gamma - 1) / (gamma - 2) * (k_min - 1/2)``, which also lets
``k_max`` drop out of ``p``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from degrank.errors import DomainError

EXACT_BINOMIAL = "exact-binomial"
PAPER_FAITHFUL = "paper-faithful"
_MODE_ALIASES = {
    "exact": EXACT_BINOMIAL,
    EXACT_BINOMIAL: EXACT_BINOMIAL,
    "paper": PAPER_FAITHFUL,
    PAPER_FAITHFUL: PAPER_FAITHFUL,
}

# Below this exponent the k_max-free approximation is unreliable.
GAMMA_WARN_THRESHOLD = 2.05


def variance_mode(name: str) -> str:
    """Normalise a variance-mode name (``exact``/``paper`` are accepted as short forms)."""
    try:
        return _MODE_ALIASES[name]
    except KeyError:
        raise DomainError(f"unknown variance mode {name!r}; "
                          f"expected one of {sorted(_MODE_ALIASES)}") from None


def fit_gamma(k_min: float, d_avg: float) -> float:
    """Power-law exponent implied by the minimum and average degree.

    Raises DomainError unless ``d_avg > k_min - 1/2``.
    """
    if not d_avg > k_min - 0.5:
        raise DomainError(
            f"cannot fit gamma: need d_avg > k_min - 1/2, got k_min={k_min}, d_avg={d_avg}")
    return 2.0 + (k_min - 0.5) / (d_avg - k_min + 0.5)


@dataclass(frozen=True)
class NetworkParams:
    """Everything the rank model knows about a network.

    ``k_max`` is optional: only the normalisation constant, the pdf and the
    finite-support tail need it. It may be ``math.inf``.
    """

    n: int
    k_min: int
    d_avg: float
    gamma: float
    k_max: float | None = None

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"n must be at least 2, got {self.n}")
        if self.k_min < 1:
            raise DomainError(f"k_min must be at least 1, got {self.k_min}")
        if not self.d_avg > self.k_min - 0.5:
            raise DomainError(
                f"need d_avg > k_min - 1/2, got k_min={self.k_min}, d_avg={self.d_avg}")
        if not self.gamma > 1:
            raise DomainError(f"gamma must exceed 1, got {self.gamma}")
        if self.gamma <= GAMMA_WARN_THRESHOLD:
            warnings.warn(f"gamma={self.gamma:.4f} is close to 2; the k_max-free tail "
                          "approximation is inaccurate", RuntimeWarning, stacklevel=3)

    @classmethod
    def from_estimates(cls, n: int, k_min: int, d_avg: float,
                       k_max: float | None = None) -> "NetworkParams":
        return cls(n=n, k_min=k_min, d_avg=d_avg, gamma=fit_gamma(k_min, d_avg), k_max=k_max)

    @classmethod
    def from_gamma(cls, n: int, k_min: int, gamma: float,
                   k_max: float | None = None) -> "NetworkParams":
        """Parameters for a given exponent; ``d_avg`` is back-solved from it."""
        if gamma <= 2:
            d_avg = math.inf
        else:
            d_avg = (k_min - 0.5) * (gamma - 1) / (gamma - 2)
        return cls(n=n, k_min=k_min, d_avg=d_avg, gamma=gamma, k_max=k_max)

    @property
    def floor(self) -> float:
        """Lower edge of the continuous support, ``k_min - 1/2``."""
        return self.k_min - 0.5


def _require_k_max(params: NetworkParams) -> float:
    if params.k_max is None:
        raise DomainError("k_max is required for the finite-support normalisation")
    if params.k_max <= params.k_min:
        raise DomainError(f"need k_max > k_min, got k_min={params.k_min}, k_max={params.k_max}")
    return params.k_max


def _check_degree(k, params: NetworkParams) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    if np.any(k < params.k_min - 1):
        raise DomainError(f"degree must be >= k_min - 1 = {params.k_min - 1}")
    return k


def _scalar_or_array(x: np.ndarray):
    return float(x) if np.ndim(x) == 0 else x


def tail_probability(k, params: NetworkParams):
    """Approximate ``P(deg > k)`` with ``k_max`` sent to infinity, clamped to [0, 1].

    Accepts a scalar or an array of degrees.
    """
    k = _check_degree(k, params)
    p = np.clip(((k + 0.5) / params.floor) ** (1.0 - params.gamma), 0.0, 1.0)
    return _scalar_or_array(p)


def tail_probability_exact(k, params: NetworkParams):
    """``P(deg > k)`` under the finite support ``[k_min, k_max]``."""
    k_max = _require_k_max(params)
    k = _check_degree(k, params)
    e = 1.0 - params.gamma
    lo = params.floor ** e
    hi = (k_max + 0.5) ** e
    upper = np.minimum(k, k_max) + 0.5
    p = np.clip((upper ** e - hi) / (lo - hi), 0.0, 1.0)
    return _scalar_or_array(p)


def normalization_c(params: NetworkParams) -> float:
    """Constant ``c`` making ``c * x**-gamma`` integrate to one over the support."""
    k_max = _require_k_max(params)
    e = 1.0 - params.gamma
    return (params.gamma - 1.0) / (params.floor ** e - (k_max + 0.5) ** e)


def pdf_f(k, params: NetworkParams):
    """``P(deg = k)``: the density integrated over ``(k - 1/2, k + 1/2)``; zero off the support."""
    c = normalization_c(params)
    k = np.asarray(k, dtype=float)
    e = 1.0 - params.gamma
    inside = (k >= params.k_min) & (k <= params.k_max)
    safe = np.where(inside, k, params.k_min)
    mass = c / (params.gamma - 1.0) * ((safe - 0.5) ** e - (safe + 0.5) ** e)
    return _scalar_or_array(np.where(inside, mass, 0.0))


_lgamma = np.vectorize(math.lgamma, otypes=[float])


def binomial_rank_pmf(alpha, n: int, p: float):
    """``P(rank = alpha)`` when rank is ``1 + Binomial(n - 1, p)``; computed in log space."""
    a = np.asarray(alpha)
    if np.any((a < 1) | (a > n)):
        raise DomainError(f"rank must lie in 1..{n}")
    j = a.astype(float) - 1.0
    trials = n - 1
    if p <= 0.0:
        out = (j == 0).astype(float)
    elif p >= 1.0:
        out = (j == trials).astype(float)
    else:
        log_coef = _lgamma(trials + 1.0) - _lgamma(j + 1.0) - _lgamma(trials - j + 1.0)
        out = np.exp(log_coef + j * math.log(p) + (trials - j) * math.log1p(-p))
    return _scalar_or_array(out)


def rank_pmf(alpha, k: int, params: NetworkParams):
    """Probability that a node of degree ``k`` has rank ``alpha``."""
    return binomial_rank_pmf(alpha, params.n, tail_probability(k, params))


@dataclass(frozen=True)
class RankEstimate:
    degree_k: int
    p: float
    expected_rank: float
    variance: float
    variance_mode: str
    sigma_band: tuple[float, float]
    clamped: bool = False


@dataclass(frozen=True)
class RankArrays:
    """Vectorised counterpart of :class:`RankEstimate` for many degrees at once."""

    p: np.ndarray
    expected: np.ndarray
    variance: np.ndarray
    band_low: np.ndarray
    band_high: np.ndarray
    clamp_count: int


def rank_arrays(degrees, params: NetworkParams, mode: str = EXACT_BINOMIAL,
                band_width: float = 2.0) -> RankArrays:
    mode = variance_mode(mode)
    n = params.n
    p = np.atleast_1d(np.asarray(tail_probability(degrees, params), dtype=float))
    expected = (n - 1) * p + 1.0
    if mode == EXACT_BINOMIAL:
        variance = (n - 1) * p * (1.0 - p)
        clamps = 0
    else:
        # The printed second moment omits a +1, leaving a spurious -2.
        raw = (n - 1) * p - (n - 1) * p ** 2 - 2.0
        clamps = int((raw < 0).sum())
        variance = np.maximum(raw, 0.0)
    half = band_width * np.sqrt(variance)
    low = np.clip(expected - half, 1.0, n)
    high = np.clip(expected + half, 1.0, n)
    return RankArrays(p, expected, variance, low, high, clamps)


def expected_rank(k: int, params: NetworkParams, mode: str = EXACT_BINOMIAL,
                  band_width: float = 2.0) -> RankEstimate:
    """Expected rank, its variance and a ``band_width``-sigma band for one degree.

    >>> params = NetworkParams.from_estimates(n=10_000, k_min=10, d_avg=20.0)
    >>> round(expected_rank(100, params).expected_rank, 1)
    112.9
    """
    arr = rank_arrays([k], params, mode, band_width)
    return RankEstimate(
        degree_k=k,
        p=float(arr.p[0]),
        expected_rank=float(arr.expected[0]),
        variance=float(arr.variance[0]),
        variance_mode=variance_mode(mode),
        sigma_band=(float(arr.band_low[0]), float(arr.band_high[0])),
        clamped=arr.clamp_count > 0,
    )


def compare_nodes(k1: int, k2: int, params: NetworkParams) -> int:
    """-1 if degree ``k1`` has the better (smaller) expected rank, 1 if ``k2`` does, 0 if tied."""
    r1 = expected_rank(k1, params).expected_rank
    r2 = expected_rank(k2, params).expected_rank
    return (r1 > r2) - (r1 < r2)
