"""Large-system spectral-efficiency limits for randomly spread multiple access.

Two spreading families are covered: dense spreading, where every user
occupies all dimensions, and maximally sparse spreading, where every
user occupies exactly one uniformly chosen dimension.  Each family is
evaluated with and without unit-mean Rayleigh fading (exponentially
distributed received powers) under the detector for which a closed form
exists: single-user matched filtering, linear MMSE, zero forcing, or
jointly optimum decoding.

All rates are returned in bits per dimension (equivalently bit/s/Hz);
``gamma`` is the per-symbol SNR, ``beta`` the user-per-dimension load,
and ``eta = gamma * beta / rate`` the energy per bit over the noise
level, whose universal minimum is ln 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    DegenerateRateError,
    DomainError,
    FixedPointError,
    NoSolutionError,
    NonConvergenceError,
    UnsupportedSchemeError,
)
from .numerics import (
    DEFAULT_TOLERANCE,
    Tolerance,
    exp_integral_en_scaled,
    find_root_bracketed,
    integrate_interval,
    integrate_semi_infinite,
    poisson_weighted_sum,
)

__all__ = [
    "LN2",
    "ChannelPoint",
    "Spreading",
    "Fading",
    "Detector",
    "SchemeSpec",
    "RateValue",
    "MmseEfficiency",
    "SUPPORTED_SCHEMES",
    "sumf_rate_lds_fading",
    "sumf_rate_lds_fading_unit_form",
    "sumf_rate_lds_nofading",
    "opt_se_lds_nofading",
    "opt_se_lds_fading",
    "opt_se_lds_fading_alt",
    "f_transform",
    "opt_se_ds_nofading",
    "mmse_se_ds_nofading",
    "mmse_efficiency_ds_fading",
    "mmse_se_ds_fading",
    "opt_se_ds_fading",
    "spectral_efficiency",
    "eta_min",
    "low_snr_slope",
    "high_snr_slope",
    "eta_from_gamma",
    "gamma_from_eta",
]

LN2 = math.log(2.0)
_LN3 = math.log(3.0)
_EXP_FLOOR = -745.0  # exp() underflows to 0 below this


@dataclass(frozen=True)
class ChannelPoint:
    """Operating point: load beta, per-symbol SNR gamma, optional eta."""

    beta: float
    gamma: float
    eta: float | None = None

    def __post_init__(self) -> None:
        if not (isinstance(self.beta, (int, float)) and math.isfinite(self.beta) and self.beta > 0):
            raise DomainError(f"beta must be a positive finite real, got {self.beta!r}")
        if not (isinstance(self.gamma, (int, float)) and math.isfinite(self.gamma) and self.gamma >= 0):
            raise DomainError(f"gamma must be a nonnegative finite real, got {self.gamma!r}")
        if self.eta is not None and not (math.isfinite(self.eta) and self.eta > 0):
            raise DomainError(f"eta must be positive and finite when given, got {self.eta!r}")


class Spreading(Enum):
    DENSE = "ds"
    ONE_SPARSE = "lds"


class Fading(Enum):
    NONE = "nofading"
    RAYLEIGH = "fading"


class Detector(Enum):
    SUMF = "sumf"
    MMSE = "mmse"
    ZF = "zf"
    OPTIMUM = "opt"


@dataclass(frozen=True)
class SchemeSpec:
    """A (spreading, fading, detector) combination."""

    spreading: Spreading
    fading: Fading
    detector: Detector

    @property
    def name(self) -> str:
        return f"{self.spreading.value}-{self.detector.value}-{self.fading.value}"

    @classmethod
    def parse(cls, text: str) -> "SchemeSpec":
        """Parse '<spreading>-<detector>[-<fading>]'; fading defaults to nofading."""
        if not isinstance(text, str):
            raise DomainError(f"scheme must be a string, got {text!r}")
        parts = text.strip().lower().split("-")
        if len(parts) == 2:
            parts.append("nofading")
        if len(parts) != 3:
            raise DomainError(f"scheme {text!r} is not of the form spreading-detector[-fading]")
        try:
            spreading = Spreading(parts[0])
            detector = Detector(parts[1])
            fading = Fading(parts[2])
        except ValueError:
            raise DomainError(f"scheme {text!r} has an unknown token") from None
        return cls(spreading=spreading, fading=fading, detector=detector)


@dataclass(frozen=True)
class RateValue:
    """Spectral efficiency in bits per dimension with an error bound."""

    bits_per_dim: float
    err_estimate: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.bits_per_dim) and self.bits_per_dim >= 0):
            raise DomainError(
                f"rate must be finite and nonnegative, got {self.bits_per_dim!r}")
        if not (math.isfinite(self.err_estimate) and self.err_estimate >= 0):
            raise DomainError(f"err_estimate must be finite and nonnegative, got {self.err_estimate!r}")


@dataclass(frozen=True)
class MmseEfficiency:
    """Multiuser efficiency of the dense MMSE receiver under fading.

    ``value`` lies in (max(0, 1 - beta), 1]; ``residual`` is the
    magnitude of the fixed-point equation at the returned value.
    """

    value: float
    residual: float


def _zero_rate() -> RateValue:
    return RateValue(0.0, 0.0)


def _log_growth_bound(gamma: float) -> float:
    # certifies |term(k)| <= bound * log(2 + k) for every per-user term
    # of the form log2(1 + gamma * (k-ish)); uses log(2+k) >= log 3.
    return 1.25 * (max(0.0, math.log1p(gamma)) / (LN2 * _LN3) + 1.0 / LN2)


# ----------------------------------------------------------------------
# Sparse spreading, Rayleigh fading
# ----------------------------------------------------------------------

def sumf_rate_lds_fading(point: ChannelPoint, tol: Tolerance = DEFAULT_TOLERANCE) -> RateValue:
    """Matched-filter rate under one-dimension-per-user spreading and fading.

    beta/ln2 times the integral over z >= 0 of
    exp(-z/gamma) * exp(-beta z/(1+z)) / (1+z): the outer exponential is
    the fading mixture of the useful power, the inner factor is the
    collision interference averaged over occupancy and fading.
    """
    beta, gamma = point.beta, point.gamma
    if gamma == 0.0:
        return _zero_rate()

    # integrate in w = z/gamma: the useful-power factor exp(-w) then has
    # unit width for every SNR, so the quadrature never faces a spike
    # narrower than its panels
    def integrand(w: float) -> float:
        z = gamma * w
        ex = -w - beta * z / (1.0 + z)
        if ex < _EXP_FLOOR:
            return 0.0
        return math.exp(ex) * gamma / (1.0 + z)

    q = integrate_semi_infinite(integrand, tol)
    scale = beta / LN2
    return RateValue(scale * q.value, scale * q.err_estimate)


def sumf_rate_lds_fading_unit_form(point: ChannelPoint,
                                   tol: Tolerance = DEFAULT_TOLERANCE) -> RateValue:
    """Same rate as :func:`sumf_rate_lds_fading` through the change of
    variable t = z/(1+z), which folds the half line onto [0, 1).

    Kept as an independent route for cross-validation; the two forms
    must agree to within their combined error estimates.
    """
    beta, gamma = point.beta, point.gamma
    if gamma == 0.0:
        return _zero_rate()

    def integrand(t: float) -> float:
        u = 1.0 - t
        if u <= 0.0:
            return 0.0
        ex = -t * (beta + 1.0 / (u * gamma))
        if ex < _EXP_FLOOR:
            return 0.0
        return math.exp(ex) / u

    # at small SNR the integrand lives on t = O(gamma); cut the interval
    # along that scale so no panel hides the whole peak between nodes
    cuts = sorted({0.0, 1.0} | {c for c in (gamma, 40.0 * gamma) if c < 1.0})
    value = err = 0.0
    for a, b in zip(cuts, cuts[1:]):
        q = integrate_interval(integrand, a, b, tol)
        value += q.value
        err += q.err_estimate
    scale = beta / LN2
    return RateValue(scale * value, scale * err)


def opt_se_lds_fading(point: ChannelPoint, tol: Tolerance = DEFAULT_TOLERANCE,
                      inner: str = "closed") -> RateValue:
    """Optimum-decoding spectral efficiency under sparse spreading and fading.

    Dimensions decouple in the large-system limit: a dimension hit by k
    users sees a unit-rate Erlang-k received power, so the rate is the
    Poisson(beta) mixture over k >= 1 of E[log2(1 + gamma * X_k)].

    ``inner`` selects how that expectation is computed: ``"closed"``
    (default) uses the exact cumulative-sum identity
    E[ln(1 + gamma X_k)] = sum_{q=1..k} e^z E_q(z) at z = 1/gamma;
    ``"quadrature"`` integrates the Erlang density directly and exists
    so the identity can be checked rather than trusted.
    """
    beta, gamma = point.beta, point.gamma
    if gamma == 0.0:
        return _zero_rate()
    if inner == "closed":
        z = 1.0 / gamma
        cumulative: list[float] = []

        def term(k: int) -> float:
            while len(cumulative) < k:
                q = len(cumulative) + 1
                prev = cumulative[-1] if cumulative else 0.0
                cumulative.append(prev + exp_integral_en_scaled(q, z))
            return cumulative[k - 1] / LN2

    elif inner == "quadrature":
        inner_tol = Tolerance(rel=tol.rel, abs=min(tol.abs, 1e-13), max_evals=tol.max_evals)

        def term(k: int) -> float:
            lg = math.lgamma(k)

            def density_weighted_log(lam: float) -> float:
                if lam <= 0.0:
                    return 0.0
                ex = (k - 1) * math.log(lam) - lam - lg
                if ex < _EXP_FLOOR:
                    return 0.0
                return math.exp(ex) * math.log1p(gamma * lam)

            return integrate_semi_infinite(density_weighted_log, inner_tol).value / LN2

    else:
        raise DomainError(f"inner must be 'closed' or 'quadrature', got {inner!r}")

    value = poisson_weighted_sum(beta, term, _log_growth_bound(gamma), tol)
    return RateValue(value, tol.abs + tol.rel * value)


def opt_se_lds_fading_alt(point: ChannelPoint, tol: Tolerance = DEFAULT_TOLERANCE) -> RateValue:
    """The same optimum-decoding rate through its SNR-derivative form.

    For each k the Erlang expectation is recovered by integrating its
    derivative in the SNR from 0 to gamma; the derivative at SNR x is
    k * e^(1/x) E_{k+1}(1/x) / x.  This shares no code path with the
    mixture-of-logs route, which is the point: the two must agree.
    """
    beta, gamma = point.beta, point.gamma
    if gamma == 0.0:
        return _zero_rate()
    inner_tol = Tolerance(rel=tol.rel, abs=min(tol.abs, 1e-13), max_evals=tol.max_evals)

    def term(k: int) -> float:
        def derivative_in_snr(x: float) -> float:
            if x <= 0.0:
                return 0.0
            return k * exp_integral_en_scaled(k + 1, 1.0 / x) / x

        return integrate_interval(derivative_in_snr, 0.0, gamma, inner_tol).value / LN2

    value = poisson_weighted_sum(beta, term, _log_growth_bound(gamma), tol)
    return RateValue(value, tol.abs + tol.rel * value)


# ----------------------------------------------------------------------
# Sparse spreading, no fading
# ----------------------------------------------------------------------

def opt_se_lds_nofading(point: ChannelPoint, tol: Tolerance = DEFAULT_TOLERANCE) -> RateValue:
    """Optimum-decoding rate for sparse spreading with unit gains:
    Poisson(beta) mixture of log2(1 + k * gamma) over occupancy k >= 1."""
    beta, gamma = point.beta, point.gamma
    if gamma == 0.0:
        return _zero_rate()
    value = poisson_weighted_sum(
        beta, lambda k: math.log1p(k * gamma) / LN2, _log_growth_bound(gamma), tol)
    return RateValue(value, tol.abs + tol.rel * value)


def sumf_rate_lds_nofading(point: ChannelPoint, tol: Tolerance = DEFAULT_TOLERANCE) -> RateValue:
    """Linear-detection rate for sparse spreading with unit gains.

    A user colliding with k others sees SNR gamma/(k gamma + 1); matched
    filter, MMSE and zero forcing all coincide here because each
    dimension is a scalar channel.
    """
    beta, gamma = point.beta, point.gamma
    if gamma == 0.0:
        return _zero_rate()
    solo = math.exp(-beta) * math.log1p(gamma) / LN2
    rest = poisson_weighted_sum(
        beta, lambda k: math.log1p(gamma / (k * gamma + 1.0)) / LN2,
        _log_growth_bound(gamma), tol)
    value = beta * (solo + rest)
    return RateValue(value, tol.abs + tol.rel * value)


# ----------------------------------------------------------------------
# Dense spreading, no fading
# ----------------------------------------------------------------------

def f_transform(x: float, z: float) -> float:
    """(sqrt(x(1+sqrt z)^2 + 1) - sqrt(x(1-sqrt z)^2 + 1))^2, evaluated
    in a difference-free form that stays accurate as x -> 0."""
    for name, v in (("x", x), ("z", z)):
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0):
            raise DomainError(f"{name} must be a nonnegative finite real, got {v!r}")
    if x == 0.0 or z == 0.0:
        return 0.0
    rz = math.sqrt(z)
    hi = math.sqrt(x * (1.0 + rz) ** 2 + 1.0)
    lo = math.sqrt(x * (1.0 - rz) ** 2 + 1.0)
    ratio = 4.0 * x * rz / (hi + lo)
    return ratio * ratio


def opt_se_ds_nofading(point: ChannelPoint) -> RateValue:
    """Optimum-decoding spectral efficiency of dense random spreading
    with unit gains (the classic square-root-law closed form)."""
    beta, gamma = point.beta, point.gamma
    if gamma == 0.0:
        return _zero_rate()
    quarter = f_transform(gamma, beta) / 4.0
    value = (beta * math.log1p(gamma - quarter)
             + math.log1p(beta * gamma - quarter)
             - quarter / gamma) / LN2
    return RateValue(max(0.0, value), 8.0 * 2.220446049250313e-16 * abs(value))


def mmse_se_ds_nofading(point: ChannelPoint) -> RateValue:
    """Linear-MMSE spectral efficiency of dense random spreading with
    unit gains: beta * log2(1 + gamma - F/4)."""
    beta, gamma = point.beta, point.gamma
    if gamma == 0.0:
        return _zero_rate()
    quarter = f_transform(gamma, beta) / 4.0
    value = beta * math.log1p(gamma - quarter) / LN2
    return RateValue(max(0.0, value), 8.0 * 2.220446049250313e-16 * abs(value))


# ----------------------------------------------------------------------
# Dense spreading, Rayleigh fading
# ----------------------------------------------------------------------

def _shrinkage(s: float) -> float:
    # E[1/(1 + s Z)] for unit-rate exponential Z
    if s == 0.0:
        return 1.0
    z = 1.0 / s
    return z * exp_integral_en_scaled(1, z)


def mmse_efficiency_ds_fading(point: ChannelPoint,
                              tol: Tolerance = DEFAULT_TOLERANCE) -> MmseEfficiency:
    """Multiuser efficiency x of the dense MMSE receiver under fading.

    Solves x = 1 - beta + beta * E[1/(1 + x gamma Z)] on
    (max(0, 1-beta), 1].  A 64-point sign scan certifies a unique
    crossing first; if the scan sees none or several, FixedPointError is
    raised rather than silently picking one.
    """
    beta, gamma = point.beta, point.gamma
    if gamma == 0.0:
        return MmseEfficiency(1.0, 0.0)

    def residual_fn(x: float) -> float:
        return x - 1.0 + beta * (1.0 - _shrinkage(x * gamma))

    lo = max(0.0, 1.0 - beta)
    n_scan = 64
    xs = [lo + (1.0 - lo) * i / n_scan for i in range(n_scan + 1)]
    hs = [residual_fn(x) for x in xs]
    flips = [i for i in range(n_scan) if (hs[i] > 0.0) != (hs[i + 1] > 0.0)]
    if len(flips) != 1:
        raise FixedPointError(
            f"expected one sign change on ({lo}, 1], scan found {len(flips)} "
            f"at beta={beta}, gamma={gamma}")
    i = flips[0]
    root_tol = Tolerance(rel=1e-14, abs=min(tol.abs, 1e-12), max_evals=tol.max_evals)
    x = find_root_bracketed(residual_fn, xs[i], xs[i + 1], root_tol)
    return MmseEfficiency(x, abs(residual_fn(x)))


def mmse_se_ds_fading(point: ChannelPoint, tol: Tolerance = DEFAULT_TOLERANCE) -> RateValue:
    """Linear-MMSE spectral efficiency of dense spreading under fading:
    beta/ln2 * e^z E_1(z) at z = 1/(gamma x), x the multiuser efficiency."""
    beta, gamma = point.beta, point.gamma
    if gamma == 0.0:
        return _zero_rate()
    eff = mmse_efficiency_ds_fading(point, tol)
    z = 1.0 / (gamma * eff.value)
    value = beta / LN2 * exp_integral_en_scaled(1, z)
    return RateValue(value, tol.abs + tol.rel * value)


def opt_se_ds_fading(point: ChannelPoint, tol: Tolerance = DEFAULT_TOLERANCE) -> RateValue:
    """Optimum-decoding spectral efficiency of dense spreading under
    fading: the MMSE rate plus the divergence term (x - 1 - ln x)/ln 2
    at the same multiuser efficiency x."""
    beta, gamma = point.beta, point.gamma
    if gamma == 0.0:
        return _zero_rate()
    eff = mmse_efficiency_ds_fading(point, tol)
    z = 1.0 / (gamma * eff.value)
    mmse_part = beta / LN2 * exp_integral_en_scaled(1, z)
    value = mmse_part + (eff.value - 1.0 - math.log(eff.value)) / LN2
    return RateValue(value, tol.abs + tol.rel * value)


# ----------------------------------------------------------------------
# Scheme dispatch
# ----------------------------------------------------------------------

_FORMULAS = {
    (Spreading.ONE_SPARSE, Fading.NONE, Detector.SUMF): sumf_rate_lds_nofading,
    (Spreading.ONE_SPARSE, Fading.NONE, Detector.MMSE): sumf_rate_lds_nofading,
    (Spreading.ONE_SPARSE, Fading.NONE, Detector.ZF): sumf_rate_lds_nofading,
    (Spreading.ONE_SPARSE, Fading.NONE, Detector.OPTIMUM): opt_se_lds_nofading,
    (Spreading.ONE_SPARSE, Fading.RAYLEIGH, Detector.SUMF): sumf_rate_lds_fading,
    (Spreading.ONE_SPARSE, Fading.RAYLEIGH, Detector.OPTIMUM): opt_se_lds_fading,
    (Spreading.DENSE, Fading.NONE, Detector.MMSE): lambda p, tol: mmse_se_ds_nofading(p),
    (Spreading.DENSE, Fading.NONE, Detector.OPTIMUM): lambda p, tol: opt_se_ds_nofading(p),
    (Spreading.DENSE, Fading.RAYLEIGH, Detector.MMSE): mmse_se_ds_fading,
    (Spreading.DENSE, Fading.RAYLEIGH, Detector.OPTIMUM): opt_se_ds_fading,
}

SUPPORTED_SCHEMES = tuple(
    sorted(SchemeSpec(s, f, d).name for (s, f, d) in _FORMULAS))


def _require_supported(scheme: SchemeSpec) -> None:
    key = (scheme.spreading, scheme.fading, scheme.detector)
    if key not in _FORMULAS:
        raise UnsupportedSchemeError(
            f"no closed form for {scheme.name}; supported: {', '.join(SUPPORTED_SCHEMES)}")


def spectral_efficiency(scheme: SchemeSpec, point: ChannelPoint,
                        tol: Tolerance = DEFAULT_TOLERANCE) -> RateValue:
    """Rate of the given scheme at the given operating point, in bits
    per dimension."""
    _require_supported(scheme)
    fn = _FORMULAS[(scheme.spreading, scheme.fading, scheme.detector)]
    return fn(point, tol)


# ----------------------------------------------------------------------
# Wideband and high-SNR anchors
# ----------------------------------------------------------------------

def eta_min(scheme: SchemeSpec) -> float:
    """Minimum energy per bit over noise level: ln 2 for every supported
    scheme (fading included, since received powers have unit mean)."""
    _require_supported(scheme)
    return LN2


def low_snr_slope(scheme: SchemeSpec, beta: float) -> float:
    """Wideband slope in bit/s/Hz per 3 dB at eta_min, where known."""
    if not (isinstance(beta, (int, float)) and math.isfinite(beta) and beta > 0):
        raise DomainError(f"beta must be a positive finite real, got {beta!r}")
    _require_supported(scheme)
    key = (scheme.spreading, scheme.fading, scheme.detector)
    if key == (Spreading.ONE_SPARSE, Fading.RAYLEIGH, Detector.SUMF):
        return beta / (1.0 + beta)
    if key == (Spreading.ONE_SPARSE, Fading.RAYLEIGH, Detector.OPTIMUM):
        return 2.0 * beta / (beta + 2.0)
    raise UnsupportedSchemeError(f"no wideband slope closed form for {scheme.name}")


def high_snr_slope(scheme: SchemeSpec, beta: float) -> float:
    """High-SNR slope in bit/s/Hz per 3 dB, where known.

    Sparse spreading keeps the same slope with or without fading:
    beta e^(-beta) for the linear detectors (only collision-free users
    keep growing) and 1 - e^(-beta) for optimum decoding (every hit
    dimension keeps growing).  Dense MMSE follows the piecewise rule
    beta, 1/2, 0 for loads below, at, and above one.
    """
    if not (isinstance(beta, (int, float)) and math.isfinite(beta) and beta > 0):
        raise DomainError(f"beta must be a positive finite real, got {beta!r}")
    _require_supported(scheme)
    if scheme.spreading is Spreading.ONE_SPARSE:
        if scheme.detector is Detector.OPTIMUM:
            return 1.0 - math.exp(-beta)
        return beta * math.exp(-beta)
    if scheme.detector is Detector.MMSE:
        if beta < 1.0:
            return beta
        if beta == 1.0:
            return 0.5
        return 0.0
    raise UnsupportedSchemeError(f"no high-SNR slope closed form for {scheme.name}")


# ----------------------------------------------------------------------
# Energy-per-bit conversions
# ----------------------------------------------------------------------

def eta_from_gamma(scheme: SchemeSpec, beta: float, gamma: float,
                   tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Energy per bit over noise level at the given per-symbol SNR."""
    point = ChannelPoint(beta=beta, gamma=gamma)
    if gamma == 0.0:
        raise DegenerateRateError("eta is undefined at zero SNR (zero rate)")
    rate = spectral_efficiency(scheme, point, tol).bits_per_dim
    if rate <= 0.0:
        raise DegenerateRateError(f"rate vanished at beta={beta}, gamma={gamma}")
    return gamma * beta / rate


def gamma_from_eta(scheme: SchemeSpec, beta: float, eta: float,
                   tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Per-symbol SNR at which the scheme operates at the given energy
    per bit.  Raises NoSolutionError at or below the ln 2 minimum."""
    if not (isinstance(eta, (int, float)) and math.isfinite(eta) and eta > 0):
        raise DomainError(f"eta must be a positive finite real, got {eta!r}")
    _require_supported(scheme)
    if eta <= LN2:
        raise NoSolutionError(
            f"eta = {eta} does not exceed the universal minimum ln 2 = {LN2}")

    def offset(t: float) -> float:
        g = math.exp(t)
        # scale the absolute rate target with the SNR: the rate itself is
        # O(gamma) near zero, and a fixed absolute floor would bury the
        # excess of eta over ln 2 in quadrature error for eta near the floor
        point_tol = Tolerance(rel=tol.rel, abs=tol.abs * min(1.0, g),
                              max_evals=tol.max_evals)
        return eta_from_gamma(scheme, beta, g, point_tol) - eta

    step = math.log(10.0)
    t_lo = t_hi = 0.0
    f0 = offset(0.0)
    if f0 == 0.0:
        return 1.0
    if f0 < 0.0:
        while offset(t_hi) < 0.0:
            t_hi += step
            if t_hi > 700.0:
                raise NonConvergenceError(f"eta = {eta} not reached below gamma = 1e304")
    else:
        while offset(t_lo) > 0.0:
            t_lo -= step
            if t_lo < -700.0:
                raise NonConvergenceError(f"eta = {eta} not bracketed above gamma = 1e-304")
    root_tol = Tolerance(rel=1e-11, abs=max(1e-12, eta * 1e-10), max_evals=tol.max_evals)
    t = find_root_bracketed(offset, t_lo, t_hi, root_tol)
    return math.exp(t)
