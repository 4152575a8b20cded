"""Finite-size Monte Carlo laboratory for the spreading ensembles.

Draws finite systems (n_dims dimensions, n_users users), exposes the
exactly diagonal Gram structure of one-dimension-per-user spreading,
and estimates empirical moments, spectral-distribution distances, and
achievable rates that the closed forms in :mod:`noma_limits.rates` must
match as the system grows.

Reproducibility: every routine is a pure function of its arguments.
Randomness comes from a counter-based generator keyed by
(seed, stream tag, block index), so results are bit-for-bit identical
for a given seed no matter how calls are scheduled across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .combinatorics import MomentVector
from .errors import DomainError, FactorizationError
from .numerics import reg_lower_gamma
from .rates import LN2

__all__ = [
    "SystemDraw",
    "GramDiagonal",
    "LsdMixture",
    "McEstimate",
    "draw_system",
    "gram_diagonal",
    "empirical_moments",
    "empirical_opt_se",
    "empirical_lsd_cdf_distance",
    "mc_sumf_rate",
    "mc_ds_fading_logdet",
    "independence_diagnostic",
]

_MASK64 = (1 << 64) - 1
_BLOCK = 1_000_000

# stream tags keep independent estimators on disjoint key spaces
_STREAM_SYSTEM = 1
_STREAM_SUMF = 2
_STREAM_DS = 3
_STREAM_INDEP = 4


def _generator(seed: int, stream: int, index: int = 0) -> np.random.Generator:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise DomainError(f"seed must be an integer, got {seed!r}")
    if seed < 0:
        raise DomainError(f"seed must be nonnegative, got {seed}")
    key = np.array([np.uint64(int(seed) & _MASK64),
                    np.uint64(((stream & 0xFFFF) << 48) | (index & 0xFFFFFFFFFFFF))],
                   dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _check_size(name: str, v: int, hi: int | None = None) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
        raise DomainError(f"{name} must be an integer, got {v!r}")
    if v < 1:
        raise DomainError(f"{name} must be >= 1, got {v}")
    if hi is not None and v > hi:
        raise DomainError(f"{name} must be <= {hi}, got {v}")
    return int(v)


@dataclass(frozen=True)
class SystemDraw:
    """One finite system: per-user dimension choices, chip signs, and
    unit-mean exponential fading powers."""

    n_dims: int
    n_users: int
    positions: np.ndarray   # 1-based dimension index per user, in [1, n_dims]
    signs: np.ndarray       # +1 or -1 per user
    fade_powers: np.ndarray  # Exp(1) per user
    seed: int

    def __post_init__(self) -> None:
        for name in ("positions", "signs", "fade_powers"):
            if len(getattr(self, name)) != self.n_users:
                raise DomainError(f"{name} must have length n_users={self.n_users}")


@dataclass(frozen=True)
class GramDiagonal:
    """Eigenvalues of the one-sparse Gram matrix: the per-dimension sums
    of fading powers of the users that landed there."""

    values: np.ndarray

    @property
    def n_dims(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo estimate with its standard error."""

    mean: float
    std_error: float
    n_samples: int
    seed: int


def draw_system(n_dims: int, n_users: int, seed: int) -> SystemDraw:
    """Draw one system: uniform dimension per user, uniform sign, Exp(1)
    fading power.  Deterministic in (n_dims, n_users, seed)."""
    n_dims = _check_size("n_dims", n_dims)
    n_users = _check_size("n_users", n_users)
    rng = _generator(seed, _STREAM_SYSTEM)
    positions = rng.integers(1, n_dims + 1, size=n_users)
    signs = rng.integers(0, 2, size=n_users) * 2 - 1
    fade_powers = rng.standard_exponential(n_users)
    return SystemDraw(n_dims=n_dims, n_users=n_users, positions=positions,
                      signs=signs, fade_powers=fade_powers, seed=int(seed))


def gram_diagonal(draw: SystemDraw) -> GramDiagonal:
    """Per-dimension received-power sums, computed in O(n_users) without
    forming any matrix.

    With one chip per user the cross terms of the Gram matrix vanish
    identically (each product contains a structurally zero factor), so
    these sums are exactly its eigenvalues, signs notwithstanding.
    """
    values = np.bincount(draw.positions - 1, weights=draw.fade_powers,
                         minlength=draw.n_dims)
    return GramDiagonal(values=values)


def empirical_moments(gram: GramDiagonal, l_max: int) -> MomentVector:
    """Spectral moments (1/N) sum_i lambda_i^L for L = 1..l_max, each sum
    compensated; the load field carries the first moment, the natural
    empirical load estimate."""
    l_max = _check_size("l_max", l_max, 64)
    lam = gram.values
    values = []
    power = np.ones_like(lam)
    for _ in range(l_max):
        power = power * lam
        values.append(math.fsum(power) / gram.n_dims)
    return MomentVector(beta=values[0], orders=tuple(range(1, l_max + 1)),
                        values=tuple(values))


def empirical_opt_se(gram: GramDiagonal, gamma: float) -> float:
    """Optimum-decoding spectral efficiency of one draw:
    (1/N) sum_i log2(1 + gamma lambda_i), using the diagonal eigenvalues."""
    if not (isinstance(gamma, (int, float)) and math.isfinite(gamma) and gamma >= 0):
        raise DomainError(f"gamma must be a nonnegative finite real, got {gamma!r}")
    if gamma == 0.0:
        return 0.0
    return float(np.sum(np.log1p(gamma * gram.values)) / (gram.n_dims * LN2))


class LsdMixture:
    """Limiting spectral law of the one-sparse fading ensemble at load
    beta: an atom at zero of mass e^(-beta) plus Poisson(beta)-weighted
    unit-rate Erlang components of shapes k >= 1."""

    def __init__(self, beta: float, weight_tol: float = 1e-13):
        if not (isinstance(beta, (int, float)) and math.isfinite(beta) and beta > 0):
            raise DomainError(f"beta must be a positive finite real, got {beta!r}")
        self.beta = float(beta)
        weights = []
        w = math.exp(-beta)
        self.atom_weight = w
        k = 0
        remaining = 1.0 - w
        while remaining > weight_tol:
            k += 1
            w = w * beta / k
            weights.append(w)
            remaining -= w
            if k > 100_000:
                raise DomainError(f"mixture truncation failed at beta={beta}")
        self.component_weights = np.array(weights)

    @property
    def n_components(self) -> int:
        return len(self.component_weights)

    def cdf(self, x: float) -> float:
        """Mixture CDF at a single point, through the regularized lower
        gamma function of each Erlang component."""
        if not math.isfinite(x):
            raise DomainError(f"x must be finite, got {x!r}")
        if x < 0.0:
            return 0.0
        total = self.atom_weight
        for k, w in enumerate(self.component_weights, start=1):
            total += w * reg_lower_gamma(k, x)
        return min(1.0, total)

    def cdf_many(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized mixture CDF.

        Uses the complement identity: summing Erlang CDFs against
        Poisson(beta) weights equals one minus the expectation, over a
        Poisson(x) count J, of the upper Poisson(beta) tail above J.
        Cross-checked against the scalar route in the tests.
        """
        xs = np.asarray(xs, dtype=float)
        if xs.ndim != 1:
            raise DomainError("xs must be one-dimensional")
        n_comp = self.n_components
        # upper[j] = mixture mass on components of shape strictly above j
        upper = self.component_weights[::-1].cumsum()[::-1]
        out = np.zeros_like(xs)
        pos = xs > 0
        x_pos = xs[pos]
        term = np.exp(-x_pos)  # Poisson(x) pmf at j = 0
        acc = term * upper[0]
        for j in range(1, n_comp):
            term = term * x_pos / j
            acc = acc + term * upper[j]
        # truncation: Poisson(x) mass above n_comp-1 times tail <= weight_tol
        out[pos] = 1.0 - acc
        out[pos] = np.clip(out[pos], 0.0, 1.0)
        out[xs == 0.0] = self.atom_weight
        return out


def empirical_lsd_cdf_distance(gram: GramDiagonal, mixture: LsdMixture) -> float:
    """Kolmogorov-Smirnov distance between the draw's empirical spectral
    distribution and the limiting mixture, evaluated exactly at the jump
    points (both sides of each jump)."""
    n = gram.n_dims
    uniq, counts = np.unique(gram.values, return_counts=True)
    ecdf_hi = np.cumsum(counts) / n
    ecdf_lo = ecdf_hi - counts / n
    model = mixture.cdf_many(uniq)
    # the lower comparison needs the model's left limit; the mixture is
    # continuous except for its single atom at zero
    model_left = np.where(uniq == 0.0, 0.0, model)
    return float(max(np.max(np.abs(model - ecdf_hi)),
                     np.max(np.abs(model_left - ecdf_lo))))


def mc_sumf_rate(n_dims: int, beta: float, gamma: float, n_samples: int,
                 seed: int) -> McEstimate:
    """Monte Carlo matched-filter rate at finite n_dims.

    Per sample: own power Exp(1), collision count Binomial(K-1, 1/N)
    with K = round(beta * n_dims), interference Gamma(count, 1); the
    sample value is log2(1 + gamma a / (1 + gamma interference)) and the
    reported mean is beta times the sample average, i.e. the rate in
    bits per dimension.  Draws are generated in fixed-size blocks, each
    keyed by its index, and reduced in block order, so the result is
    bit-for-bit reproducible and insensitive to scheduling.
    """
    n_dims = _check_size("n_dims", n_dims)
    n_samples = _check_size("n_samples", n_samples)
    if not (isinstance(beta, (int, float)) and math.isfinite(beta) and beta > 0):
        raise DomainError(f"beta must be a positive finite real, got {beta!r}")
    if not (isinstance(gamma, (int, float)) and math.isfinite(gamma) and gamma >= 0):
        raise DomainError(f"gamma must be a nonnegative finite real, got {gamma!r}")
    n_users = round(beta * n_dims)
    if n_users < 1:
        raise DomainError(f"beta * n_dims rounds to zero users (beta={beta}, n_dims={n_dims})")
    if gamma == 0.0:
        return McEstimate(0.0, 0.0, n_samples, int(seed))
    total = []
    total_sq = []
    done = 0
    block_index = 0
    while done < n_samples:
        m = min(_BLOCK, n_samples - done)
        rng = _generator(seed, _STREAM_SUMF, block_index)
        own = rng.standard_exponential(m)
        collisions = rng.binomial(n_users - 1, 1.0 / n_dims, size=m)
        interference = rng.standard_gamma(collisions)
        t = np.log1p(own * gamma / (1.0 + gamma * interference)) / LN2
        total.append(float(np.sum(t)))
        total_sq.append(float(np.sum(t * t)))
        done += m
        block_index += 1
    s1 = math.fsum(total)
    s2 = math.fsum(total_sq)
    mean_term = s1 / n_samples
    var_term = max(0.0, s2 / n_samples - mean_term * mean_term)
    return McEstimate(mean=beta * mean_term,
                      std_error=beta * math.sqrt(var_term / n_samples),
                      n_samples=n_samples, seed=int(seed))


def _logdet_capacity(spreading: np.ndarray, fades: np.ndarray, gamma: float) -> float:
    """log2 det(I + gamma B B*) / n_dims for B = spreading * fades, via a
    Cholesky factorization of the (Hermitian positive definite) matrix."""
    n = spreading.shape[0]
    b = spreading * fades[None, :]
    g = b @ b.conj().T
    m = np.eye(n) + gamma * g
    try:
        chol = np.linalg.cholesky(m)
    except np.linalg.LinAlgError as exc:
        raise FactorizationError(f"Cholesky factorization failed: {exc}") from exc
    return float(2.0 * np.sum(np.log2(np.real(np.diagonal(chol)))) / n)


def mc_ds_fading_logdet(n_dims: int, beta: float, gamma: float, n_trials: int,
                        seed: int, entries: str = "binary") -> McEstimate:
    """Monte Carlo optimum-decoding rate of dense spreading under fading
    at finite size: (1/N) log2 det(I + gamma B B*) averaged over draws.

    ``entries`` chooses the spreading matrix law: "binary" (default)
    uses +-1/sqrt(N) chips, "gaussian" uses N(0, 1/N) chips; the
    limiting value is the same, which the tests exercise.  Fading
    coefficients are standard complex Gaussian, so received powers are
    unit-mean exponential.  A failed factorization raises
    FactorizationError; it is never retried or jittered.
    """
    n_dims = _check_size("n_dims", n_dims, hi=2048)
    n_trials = _check_size("n_trials", n_trials)
    if not (isinstance(beta, (int, float)) and math.isfinite(beta) and beta > 0):
        raise DomainError(f"beta must be a positive finite real, got {beta!r}")
    if not (isinstance(gamma, (int, float)) and math.isfinite(gamma) and gamma >= 0):
        raise DomainError(f"gamma must be a nonnegative finite real, got {gamma!r}")
    if entries not in ("binary", "gaussian"):
        raise DomainError(f"entries must be 'binary' or 'gaussian', got {entries!r}")
    n_users = round(beta * n_dims)
    if n_users < 1:
        raise DomainError(f"beta * n_dims rounds to zero users (beta={beta}, n_dims={n_dims})")
    if gamma == 0.0:
        return McEstimate(0.0, 0.0, n_trials, int(seed))
    scale = 1.0 / math.sqrt(n_dims)
    vals = np.empty(n_trials)
    for trial in range(n_trials):
        rng = _generator(seed, _STREAM_DS, trial)
        if entries == "binary":
            s = (rng.integers(0, 2, size=(n_dims, n_users)) * 2.0 - 1.0) * scale
        else:
            s = rng.standard_normal((n_dims, n_users)) * scale
        fades = (rng.standard_normal(n_users) + 1j * rng.standard_normal(n_users)) / math.sqrt(2.0)
        vals[trial] = _logdet_capacity(s, fades, gamma)
    mean = float(vals.mean())
    se = float(vals.std(ddof=1) / math.sqrt(n_trials)) if n_trials > 1 else 0.0
    return McEstimate(mean=mean, std_error=se, n_samples=n_trials, seed=int(seed))


def independence_diagnostic(n_dims: int, beta: float, n_draws: int, seed: int) -> float:
    """Pearson correlation between the received powers of two fixed
    dimensions across independent draws.

    The pair is sampled from its exact joint law: the first dimension's
    occupancy is Binomial(K, 1/N), the second's is Binomial over the
    remaining users with success 1/(N-1), and powers are the
    corresponding Erlang sums; the other N-2 dimensions never need to be
    materialized.  The tests cross-check this shortcut against full
    draws at small sizes.  In the large-system limit the correlation
    vanishes (asymptotic independence); at finite N it sits near -1/(2N).
    """
    n_dims = _check_size("n_dims", n_dims)
    if n_dims < 2:
        raise DomainError("need at least two dimensions to correlate")
    n_draws = _check_size("n_draws", n_draws)
    if not (isinstance(beta, (int, float)) and math.isfinite(beta) and beta > 0):
        raise DomainError(f"beta must be a positive finite real, got {beta!r}")
    n_users = round(beta * n_dims)
    if n_users < 1:
        raise DomainError(f"beta * n_dims rounds to zero users (beta={beta}, n_dims={n_dims})")
    s1_parts: list[np.ndarray] = []
    s2_parts: list[np.ndarray] = []
    done = 0
    block_index = 0
    while done < n_draws:
        m = min(_BLOCK, n_draws - done)
        rng = _generator(seed, _STREAM_INDEP, block_index)
        k1 = rng.binomial(n_users, 1.0 / n_dims, size=m)
        k2 = rng.binomial(n_users - k1, 1.0 / (n_dims - 1))
        s1_parts.append(rng.standard_gamma(k1))
        s2_parts.append(rng.standard_gamma(k2))
        done += m
        block_index += 1
    s1 = np.concatenate(s1_parts)
    s2 = np.concatenate(s2_parts)
    d1 = s1 - s1.mean()
    d2 = s2 - s2.mean()
    denom = math.sqrt(float(np.sum(d1 * d1)) * float(np.sum(d2 * d2)))
    if denom == 0.0:
        return 0.0
    return float(np.sum(d1 * d2) / denom)
