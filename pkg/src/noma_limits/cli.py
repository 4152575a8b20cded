"""Command-line surface.

Subcommands:

* ``rate``    one operating point of one scheme
* ``curve``   CSV sweep over load or energy per bit
* ``moments`` exact moment-polynomial rows of a spreading ensemble
* ``mc``      one Monte Carlo estimator run as a JSON record
* ``verify``  the bundled verification suite as a JSON report

Exit codes: 0 success; 1 verification failure; 2 usage or domain error;
3 I/O error.  All numbers are printed with 9 significant digits; JSON
records use lexicographic key order.  ``NOMA_LIMITS_THREADS`` caps the
sweep worker count (0 = auto).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from .combinatorics import EnsembleKind, exact_moments, moment_coefficients
from .ensemble_lab import (
    LsdMixture,
    draw_system,
    empirical_lsd_cdf_distance,
    gram_diagonal,
    mc_ds_fading_logdet,
    mc_sumf_rate,
    independence_diagnostic,
)
from .errors import NomaLimitsError, NoSolutionError
from .parallel import thread_map
from .rates import (
    LN2,
    ChannelPoint,
    SchemeSpec,
    gamma_from_eta,
    opt_se_ds_fading,
    opt_se_lds_fading,
    spectral_efficiency,
    sumf_rate_lds_fading,
)
from .verification import DEFAULT_SEED, run_suite

__all__ = ["main", "entry", "SweepSpec", "fmt9"]

_CSV_HEADER = "x,scheme,beta,gamma,eta_db,rate_bits_per_dim"


def fmt9(v: float) -> str:
    """9 significant digits; integer-valued floats carry an explicit
    nine-zero fraction so exact values like a vanishing rate or the
    1-bit anchor read as floats."""
    v = float(v)
    if v == 0.0:
        return "0.000000000"
    if not math.isfinite(v):
        return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")
    s = format(v, ".9g")
    if "." not in s and "e" not in s and "E" not in s:
        s += ".000000000"
    return s


@dataclass(frozen=True)
class SweepSpec:
    """A curve request: which axis, its grid, the held-constant value,
    and the schemes to trace."""

    x_axis: str          # "load" or "ebn0-db"
    x_min: float
    x_max: float
    n_points: int
    spacing: str         # "linear" or "log"
    fixed_value: float   # eta in dB for load sweeps, beta for eta sweeps
    schemes: tuple[SchemeSpec, ...]

    def __post_init__(self) -> None:
        if self.x_axis not in ("load", "ebn0-db"):
            raise ValueError(f"x_axis must be 'load' or 'ebn0-db', got {self.x_axis!r}")
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)
                and self.x_min < self.x_max):
            raise ValueError(f"need x_min < x_max, got {self.x_min!r}, {self.x_max!r}")
        if self.spacing == "log" and self.x_min <= 0.0:
            raise ValueError("log spacing requires x_min > 0")
        if self.n_points < 2:
            raise ValueError(f"n_points must be >= 2, got {self.n_points}")
        if not self.schemes:
            raise ValueError("at least one scheme is required")

    def grid(self) -> list[float]:
        n = self.n_points
        if self.spacing == "linear":
            step = (self.x_max - self.x_min) / (n - 1)
            return [self.x_min + step * i for i in range(n)]
        ratio = self.x_max / self.x_min
        return [self.x_min * ratio ** (i / (n - 1)) for i in range(n)]


def _eta_db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _eta_linear_to_db(eta: float) -> float:
    return 10.0 * math.log10(eta)


# ----------------------------------------------------------------------
# rate
# ----------------------------------------------------------------------

def _cmd_rate(args: argparse.Namespace) -> int:
    if (args.gamma is None) == (args.eta_db is None):
        print("rate: exactly one of --gamma / --eta-db is required", file=sys.stderr)
        return 2
    try:
        scheme = SchemeSpec.parse(args.scheme)
        if args.gamma is not None:
            gamma = args.gamma
            point = ChannelPoint(args.beta, gamma)
            rate = spectral_efficiency(scheme, point).bits_per_dim
            eta_db = (_eta_linear_to_db(args.beta * gamma / rate)
                      if rate > 0.0 else float("nan"))
        else:
            eta = _eta_db_to_linear(args.eta_db)
            gamma = gamma_from_eta(scheme, args.beta, eta)
            rate = spectral_efficiency(scheme, ChannelPoint(args.beta, gamma)).bits_per_dim
            eta_db = args.eta_db
    except NoSolutionError as exc:
        print(f"rate: below minimum energy per bit: {exc}", file=sys.stderr)
        return 2
    except NomaLimitsError as exc:
        print(f"rate: {exc}", file=sys.stderr)
        return 2
    print(f"scheme {scheme.name} beta {fmt9(args.beta)} gamma {fmt9(gamma)} "
          f"eta_db {fmt9(eta_db)} rate {fmt9(rate)}")
    return 0


# ----------------------------------------------------------------------
# curve
# ----------------------------------------------------------------------

def _curve_row(spec: SweepSpec, x: float, scheme: SchemeSpec) -> tuple[str, str | None]:
    """One CSV row; the second element carries a warning when the point
    has no value (the rate and gamma cells are then left empty)."""
    if spec.x_axis == "load":
        beta, eta_db = x, spec.fixed_value
    else:
        beta, eta_db = spec.fixed_value, x
    try:
        gamma = gamma_from_eta(scheme, beta, _eta_db_to_linear(eta_db))
        rate = spectral_efficiency(scheme, ChannelPoint(beta, gamma)).bits_per_dim
    except NomaLimitsError as exc:
        row = f"{fmt9(x)},{scheme.name},{fmt9(beta)},,{fmt9(eta_db)},"
        return row, f"curve: {scheme.name} at x={fmt9(x)}: {exc}"
    row = (f"{fmt9(x)},{scheme.name},{fmt9(beta)},{fmt9(gamma)},"
           f"{fmt9(eta_db)},{fmt9(rate)}")
    return row, None


def _cmd_curve(args: argparse.Namespace) -> int:
    if (args.beta is None) == (args.eta_db is None):
        print("curve: exactly one of --beta (energy-per-bit sweep) / "
              "--eta-db (load sweep) is required", file=sys.stderr)
        return 2
    try:
        schemes = []
        for chunk in args.scheme:
            schemes.extend(SchemeSpec.parse(p) for p in chunk.split(",") if p)
        if args.eta_db is not None:
            spec = SweepSpec(x_axis="load", x_min=args.range[0], x_max=args.range[1],
                             n_points=args.points, spacing=args.spacing,
                             fixed_value=args.eta_db, schemes=tuple(schemes))
        else:
            spec = SweepSpec(x_axis="ebn0-db", x_min=args.range[0], x_max=args.range[1],
                             n_points=args.points, spacing=args.spacing,
                             fixed_value=args.beta, schemes=tuple(schemes))
    except (NomaLimitsError, ValueError) as exc:
        print(f"curve: {exc}", file=sys.stderr)
        return 2

    tasks = [(x, scheme) for x in spec.grid() for scheme in spec.schemes]
    try:
        results = thread_map(lambda t: _curve_row(spec, t[0], t[1]), tasks)
    except NomaLimitsError as exc:
        print(f"curve: {exc}", file=sys.stderr)
        return 2
    # deterministic output order regardless of how the work was scheduled
    order = sorted(range(len(tasks)), key=lambda i: (tasks[i][0], tasks[i][1].name))
    lines = [_CSV_HEADER]
    for i in order:
        row, warning = results[i]
        if warning is not None:
            print(warning, file=sys.stderr)
        lines.append(row)
    payload = "\n".join(lines) + "\n"
    return _write_text(args.out, payload)


# ----------------------------------------------------------------------
# moments
# ----------------------------------------------------------------------

_ENSEMBLES = {
    "lds-fading": EnsembleKind.LDS_FADING,
    "lds-nofading": EnsembleKind.LDS_NO_FADING,
    "ds-nofading": EnsembleKind.DS_NO_FADING,
}


def _cmd_moments(args: argparse.Namespace) -> int:
    kind = _ENSEMBLES.get(args.ensemble)
    if kind is None:
        print(f"moments: unknown ensemble {args.ensemble!r}; "
              f"choose from {', '.join(sorted(_ENSEMBLES))}", file=sys.stderr)
        return 2
    try:
        vector = exact_moments(kind, args.lmax, args.beta)
        rows = [moment_coefficients(kind, order) for order in vector.orders]
    except NomaLimitsError as exc:
        print(f"moments: {exc}", file=sys.stderr)
        return 2
    print(f"ensemble {args.ensemble} beta {fmt9(args.beta)}")
    for order, coeffs, value in zip(vector.orders, rows, vector.values):
        coeff_text = " ".join(str(c) for c in coeffs)
        print(f"L {order} coefficients {coeff_text} moment {fmt9(value)}")
    return 0


# ----------------------------------------------------------------------
# mc
# ----------------------------------------------------------------------

def _mc_record(args: argparse.Namespace) -> dict:
    kind = args.kind
    beta = args.beta
    if kind == "sumf":
        _require(args.gamma is not None, "--gamma is required for sumf")
        _require(args.samples is not None, "--samples is required for sumf")
        est = mc_sumf_rate(args.n, beta, args.gamma, args.samples, args.seed)
        ref = sumf_rate_lds_fading(ChannelPoint(beta, args.gamma)).bits_per_dim
        return _record(est.mean, est.std_error, args.samples, args.seed, ref)
    if kind == "copt":
        _require(args.gamma is not None, "--gamma is required for copt")
        draw = draw_system(args.n, round(beta * args.n), args.seed)
        values = gram_diagonal(draw).values
        terms = np.log1p(args.gamma * values) / LN2
        est = float(terms.mean())
        se = float(terms.std(ddof=1) / math.sqrt(args.n)) if args.n > 1 else 0.0
        ref = opt_se_lds_fading(ChannelPoint(beta, args.gamma)).bits_per_dim
        return _record(est, se, args.n, args.seed, ref)
    if kind == "esd":
        draw = draw_system(args.n, round(beta * args.n), args.seed)
        dist = empirical_lsd_cdf_distance(gram_diagonal(draw), LsdMixture(beta))
        return _record(dist, 0.0, args.n, args.seed, 0.0)
    if kind == "ds-logdet":
        _require(args.gamma is not None, "--gamma is required for ds-logdet")
        _require(args.trials is not None, "--trials is required for ds-logdet")
        est = mc_ds_fading_logdet(args.n, beta, args.gamma, args.trials, args.seed)
        ref = opt_se_ds_fading(ChannelPoint(beta, args.gamma)).bits_per_dim
        return _record(est.mean, est.std_error, args.trials, args.seed, ref)
    # independence
    _require(args.samples is not None, "--samples is required for independence")
    corr = independence_diagnostic(args.n, beta, args.samples, args.seed)
    return _record(corr, 1.0 / math.sqrt(args.samples), args.samples, args.seed, 0.0)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise NomaLimitsError(message)


def _record(estimate: float, std_error: float, n: int, seed: int,
            reference: float) -> dict:
    z = (estimate - reference) / std_error if std_error > 0.0 else 0.0
    return {"analytic_reference": reference, "estimate": estimate, "n": n,
            "seed": seed, "std_error": std_error, "z_score": z}


def _cmd_mc(args: argparse.Namespace) -> int:
    import json

    try:
        record = _mc_record(args)
    except NomaLimitsError as exc:
        print(f"mc: {exc}", file=sys.stderr)
        return 2
    return _write_text(args.out, json.dumps(record, sort_keys=True) + "\n")


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def _cmd_verify(args: argparse.Namespace) -> int:
    report = run_suite(args.suite, args.seed)
    status = _write_text(args.out, report.to_json())
    if status != 0:
        return status
    return 0 if report.overall else 1


# ----------------------------------------------------------------------
# plumbing
# ----------------------------------------------------------------------

def _write_text(out_path: str | None, payload: str) -> int:
    if out_path is None:
        sys.stdout.write(payload)
        return 0
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    except OSError as exc:
        print(f"cannot write {out_path!r}: {exc}", file=sys.stderr)
        return 3
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noma-limits",
        description="Spectral-efficiency limits of dense and one-sparse "
                    "random spreading, with a Monte Carlo laboratory.")
    sub = parser.add_subparsers(dest="command", required=True)

    rate_p = sub.add_parser("rate", help="one operating point of one scheme")
    rate_p.add_argument("--scheme", required=True,
                        help="spreading-detector[-fading], e.g. lds-sumf-fading")
    rate_p.add_argument("--beta", type=float, required=True, help="load (users per dimension)")
    rate_p.add_argument("--gamma", type=float, help="per-symbol SNR (linear)")
    rate_p.add_argument("--eta-db", dest="eta_db", type=float,
                        help="energy per bit over noise level, in dB")
    rate_p.set_defaults(fn=_cmd_rate)

    curve_p = sub.add_parser("curve", help="CSV sweep over load or energy per bit")
    curve_p.add_argument("--scheme", action="append", required=True,
                         help="repeatable; comma lists are accepted")
    curve_p.add_argument("--range", nargs=2, type=float, required=True,
                         metavar=("MIN", "MAX"))
    curve_p.add_argument("--points", type=int, required=True)
    curve_p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    curve_p.add_argument("--beta", type=float,
                         help="fixed load: sweep energy per bit (dB) on the x axis")
    curve_p.add_argument("--eta-db", dest="eta_db", type=float,
                         help="fixed energy per bit (dB): sweep load on the x axis")
    curve_p.add_argument("--out", help="output CSV path (default: stdout)")
    curve_p.set_defaults(fn=_cmd_curve)

    moments_p = sub.add_parser("moments", help="moment-polynomial rows of an ensemble")
    moments_p.add_argument("ensemble", help=", ".join(sorted(_ENSEMBLES)))
    moments_p.add_argument("--beta", type=float, required=True)
    moments_p.add_argument("--lmax", "--n", dest="lmax", type=int, default=4)
    moments_p.set_defaults(fn=_cmd_moments)

    mc_p = sub.add_parser("mc", help="one Monte Carlo estimator run")
    mc_p.add_argument("kind", choices=("esd", "copt", "sumf", "ds-logdet", "independence"))
    mc_p.add_argument("--n", type=int, required=True,
                      help="system dimensions (matrix size for ds-logdet)")
    mc_p.add_argument("--beta", type=float, required=True)
    mc_p.add_argument("--gamma", type=float)
    mc_p.add_argument("--trials", type=int)
    mc_p.add_argument("--samples", type=int)
    mc_p.add_argument("--seed", type=int, default=0)
    mc_p.add_argument("--out", help="output JSON path (default: stdout)")
    mc_p.set_defaults(fn=_cmd_mc)

    verify_p = sub.add_parser("verify", help="run the verification suite")
    verify_p.add_argument("--suite", choices=("fast", "full"), default="fast")
    verify_p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify_p.add_argument("--out", help="output JSON path (default: stdout)")
    verify_p.set_defaults(fn=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    return args.fn(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
