"""Closed-form rate formulas, asymptotic anchors, and conversions."""

import math

import pytest

from noma_limits.errors import (
    DegenerateRateError,
    DomainError,
    NoSolutionError,
    UnsupportedSchemeError,
)
from noma_limits.numerics import Tolerance, exp_integral_en_scaled
from noma_limits.rates import (
    LN2,
    ChannelPoint,
    Detector,
    Fading,
    RateValue,
    SchemeSpec,
    Spreading,
    SUPPORTED_SCHEMES,
    eta_from_gamma,
    eta_min,
    f_transform,
    gamma_from_eta,
    high_snr_slope,
    low_snr_slope,
    mmse_efficiency_ds_fading,
    mmse_se_ds_fading,
    mmse_se_ds_nofading,
    opt_se_ds_fading,
    opt_se_ds_nofading,
    opt_se_lds_fading,
    opt_se_lds_fading_alt,
    opt_se_lds_nofading,
    spectral_efficiency,
    sumf_rate_lds_fading,
    sumf_rate_lds_fading_unit_form,
    sumf_rate_lds_nofading,
)

ALL_SCHEMES = [SchemeSpec.parse(name) for name in SUPPORTED_SCHEMES]


def single_user_rayleigh_capacity(gamma: float) -> float:
    """E[log2(1 + gamma Z)] for unit-mean exponential Z."""
    return exp_integral_en_scaled(1, 1.0 / gamma) / LN2


# ----------------------------------------------------------------------
# Domain types
# ----------------------------------------------------------------------

class TestChannelPoint:
    def test_accepts_valid_points(self):
        ChannelPoint(1.0, 0.0)
        ChannelPoint(0.5, 10.0, eta=2.0)

    @pytest.mark.parametrize("kwargs", [
        {"beta": 0.0, "gamma": 1.0},
        {"beta": -1.0, "gamma": 1.0},
        {"beta": float("nan"), "gamma": 1.0},
        {"beta": float("inf"), "gamma": 1.0},
        {"beta": 1.0, "gamma": -0.1},
        {"beta": 1.0, "gamma": float("nan")},
        {"beta": 1.0, "gamma": 1.0, "eta": 0.0},
        {"beta": 1.0, "gamma": 1.0, "eta": float("inf")},
    ])
    def test_rejects_bad_points(self, kwargs):
        with pytest.raises(DomainError):
            ChannelPoint(**kwargs)


class TestSchemeSpec:
    def test_parse_full_form(self):
        s = SchemeSpec.parse("lds-sumf-fading")
        assert (s.spreading, s.detector, s.fading) == (
            Spreading.ONE_SPARSE, Detector.SUMF, Fading.RAYLEIGH)
        assert s.name == "lds-sumf-fading"

    def test_parse_defaults_to_no_fading(self):
        assert SchemeSpec.parse("ds-mmse").name == "ds-mmse-nofading"

    def test_parse_normalizes_case_and_space(self):
        assert SchemeSpec.parse("  LDS-OPT-FADING ").name == "lds-opt-fading"

    @pytest.mark.parametrize("text", [
        "lds", "lds-sumf-fading-extra", "xx-sumf-fading", "lds-xx-fading",
        "lds-sumf-maybe", "", 7,
    ])
    def test_parse_rejects_malformed(self, text):
        with pytest.raises(DomainError):
            SchemeSpec.parse(text)

    def test_supported_schemes_roster(self):
        assert len(SUPPORTED_SCHEMES) == 10
        assert "lds-mmse-fading" not in SUPPORTED_SCHEMES
        assert "ds-sumf-nofading" not in SUPPORTED_SCHEMES
        assert "lds-zf-nofading" in SUPPORTED_SCHEMES


class TestRateValue:
    def test_rejects_bad_fields(self):
        with pytest.raises(DomainError):
            RateValue(-0.1, 0.0)
        with pytest.raises(DomainError):
            RateValue(float("nan"), 0.0)
        with pytest.raises(DomainError):
            RateValue(1.0, -1e-9)


# ----------------------------------------------------------------------
# Golden anchors (each value frozen from an independent oracle)
# ----------------------------------------------------------------------

class TestGoldenAnchors:
    @pytest.mark.parametrize("key,fn", [
        ("sumf_lds_fading_b0.5_g1", sumf_rate_lds_fading),
        ("sumf_lds_fading_b1_g10", sumf_rate_lds_fading),
        ("sumf_lds_fading_b3_g10", sumf_rate_lds_fading),
        ("opt_lds_fading_b1_g1", opt_se_lds_fading),
        ("opt_lds_fading_b1_g10", opt_se_lds_fading),
        ("opt_lds_fading_b2_g1", opt_se_lds_fading),
        ("opt_lds_fading_b2_g100", opt_se_lds_fading),
        ("sumf_lds_nofading_b2_g10", sumf_rate_lds_nofading),
        ("opt_lds_nofading_b1_g1", opt_se_lds_nofading),
        ("mmse_se_ds_fading_b1.5_g10", mmse_se_ds_fading),
        ("opt_ds_fading_b0.5_g10", opt_se_ds_fading),
        ("opt_ds_fading_b2_g10", opt_se_ds_fading),
    ])
    def test_rate_values(self, golden, key, fn):
        entry = golden[key]
        point = ChannelPoint(entry["beta"], entry["gamma"])
        assert fn(point).bits_per_dim == pytest.approx(entry["value"], rel=1e-9)

    def test_mmse_efficiency_values(self, golden):
        for beta in (0.5, 1.0, 1.5, 2.0):
            entry = golden[f"mmse_efficiency_ds_fading_b{beta:g}_g10"]
            eff = mmse_efficiency_ds_fading(ChannelPoint(beta, 10.0))
            assert eff.value == pytest.approx(entry["value"], rel=1e-10)

    def test_opt_lds_nofading_series_anchor(self, golden):
        # direct-series oracle value at beta = gamma = 1
        rate = opt_se_lds_nofading(ChannelPoint(1.0, 1.0)).bits_per_dim
        assert rate == pytest.approx(golden["opt_lds_nofading_b1_g1"]["value"], abs=5e-13)
        assert rate == pytest.approx(0.8274, abs=5e-4)

    def test_eta_from_gamma_anchor(self, golden):
        eta = eta_from_gamma(SchemeSpec.parse("lds-opt-nofading"), 1.0, 1.0)
        assert eta == pytest.approx(golden["eta_lds_opt_nofading_b1_g1"]["value"], rel=1e-10)

    def test_gamma_from_eta_anchors(self, golden):
        for key, name in (
                ("gamma_from_eta_lds_opt_fading_b1_eta10", "lds-opt-fading"),
                ("gamma_from_eta_lds_sumf_fading_b1_eta10db", "lds-sumf-fading")):
            entry = golden[key]
            scheme = SchemeSpec.parse(name)
            gamma = gamma_from_eta(scheme, entry["beta"], entry["eta"])
            assert gamma == pytest.approx(entry["value"], rel=1e-8)
            rate = spectral_efficiency(scheme, ChannelPoint(entry["beta"], gamma))
            assert rate.bits_per_dim == pytest.approx(entry["rate_at_root"], rel=1e-8)


# ----------------------------------------------------------------------
# Representation equalities
# ----------------------------------------------------------------------

GRID = [(beta, gamma) for beta in (0.5, 1.0, 2.0, 4.0)
        for gamma in (0.1, 1.0, 10.0, 100.0)]


class TestRepresentations:
    def test_closed_inner_form_matches_quadrature_on_grid(self):
        # gate for the closed-form default: it may be used only because
        # this agreement holds to 1e-10 over the whole grid
        tol = Tolerance(rel=1e-12, abs=1e-13, max_evals=500_000)
        for beta, gamma in GRID:
            point = ChannelPoint(beta, gamma)
            closed = opt_se_lds_fading(point, tol, inner="closed").bits_per_dim
            quad = opt_se_lds_fading(point, tol, inner="quadrature").bits_per_dim
            assert abs(closed - quad) <= 1e-10, (beta, gamma, closed, quad)

    def test_derivative_route_matches_mixture_route(self):
        tol = Tolerance(rel=1e-11, abs=1e-12, max_evals=500_000)
        for beta, gamma in ((1.0, 1.0), (2.0, 100.0)):
            point = ChannelPoint(beta, gamma)
            a = opt_se_lds_fading(point, tol).bits_per_dim
            b = opt_se_lds_fading_alt(point, tol).bits_per_dim
            assert abs(a - b) <= 1e-8

    def test_matched_filter_forms_agree(self):
        tol = Tolerance(rel=1e-12, abs=1e-14, max_evals=500_000)
        for beta, gamma in ((0.5, 0.1), (1.0, 10.0), (4.0, 100.0)):
            point = ChannelPoint(beta, gamma)
            a = sumf_rate_lds_fading(point, tol).bits_per_dim
            b = sumf_rate_lds_fading_unit_form(point, tol).bits_per_dim
            assert abs(a - b) <= 1e-10

    def test_invalid_inner_selector(self):
        with pytest.raises(DomainError):
            opt_se_lds_fading(ChannelPoint(1.0, 1.0), inner="magic")


# ----------------------------------------------------------------------
# Structural properties
# ----------------------------------------------------------------------

class TestProperties:
    @pytest.mark.parametrize("scheme", ALL_SCHEMES, ids=lambda s: s.name)
    def test_zero_snr_rate_is_exactly_zero(self, scheme):
        rate = spectral_efficiency(scheme, ChannelPoint(1.0, 0.0))
        assert rate.bits_per_dim == 0.0
        assert rate.err_estimate == 0.0

    @pytest.mark.parametrize("scheme", ALL_SCHEMES, ids=lambda s: s.name)
    def test_nondecreasing_in_snr(self, scheme):
        rates = [spectral_efficiency(scheme, ChannelPoint(1.2, g)).bits_per_dim
                 for g in (0.5, 1.0, 2.0, 8.0)]
        assert all(a < b for a, b in zip(rates, rates[1:]))

    @pytest.mark.parametrize("name", [
        "lds-opt-nofading", "lds-opt-fading", "ds-opt-nofading", "ds-opt-fading"])
    def test_optimum_rate_nondecreasing_in_load(self, name):
        scheme = SchemeSpec.parse(name)
        rates = [spectral_efficiency(scheme, ChannelPoint(b, 1.0)).bits_per_dim
                 for b in (0.5, 1.0, 2.0, 4.0)]
        assert all(a <= b + 1e-12 for a, b in zip(rates, rates[1:]))

    def test_optimum_dominates_linear_detection(self):
        for beta, gamma in ((0.5, 1.0), (1.0, 10.0), (3.0, 10.0)):
            point = ChannelPoint(beta, gamma)
            assert (opt_se_lds_fading(point).bits_per_dim
                    >= sumf_rate_lds_fading(point).bits_per_dim)
            assert (opt_se_ds_fading(point).bits_per_dim
                    >= mmse_se_ds_fading(point).bits_per_dim)
            assert (opt_se_ds_nofading(point).bits_per_dim
                    >= mmse_se_ds_nofading(point).bits_per_dim)

    def test_small_load_collapse_to_single_user_capacity(self):
        beta = 1e-3
        for gamma in (0.5, 2.0):
            lim = single_user_rayleigh_capacity(gamma)
            for fn in (sumf_rate_lds_fading, opt_se_lds_fading):
                per_user = fn(ChannelPoint(beta, gamma)).bits_per_dim / beta
                assert per_user == pytest.approx(lim, rel=0.002)

    def test_small_load_collapse_without_fading(self):
        beta = 1e-6
        per_user = sumf_rate_lds_nofading(ChannelPoint(beta, 3.0)).bits_per_dim / beta
        assert per_user == pytest.approx(2.0, rel=1e-5)

    def test_linear_detector_aliases_coincide(self):
        point = ChannelPoint(1.3, 7.0)
        values = {
            spectral_efficiency(SchemeSpec.parse(f"lds-{d}-nofading"), point).bits_per_dim
            for d in ("sumf", "mmse", "zf")}
        assert len(values) == 1


# ----------------------------------------------------------------------
# Dense spreading without fading
# ----------------------------------------------------------------------

class TestDenseNoFading:
    def test_f_transform_hand_value(self):
        # sqrt(2*4+1) - sqrt(0+1) squared
        assert f_transform(2.0, 1.0) == pytest.approx(4.0, rel=1e-15)

    def test_f_transform_edges(self):
        assert f_transform(0.0, 1.0) == 0.0
        assert f_transform(3.0, 0.0) == 0.0

    def test_f_transform_scaling_identity(self):
        # x z (1 +- 1/sqrt z)^2 = x (sqrt z +- 1)^2, so swapping (x, z)
        # for (x z, 1/z) leaves the value unchanged
        for x in (0.3, 2.0, 10.0):
            for z in (0.25, 1.0, 4.0):
                assert f_transform(x, z) == pytest.approx(
                    f_transform(x * z, 1.0 / z), rel=1e-12)

    def test_f_transform_rejects_negatives(self):
        with pytest.raises(DomainError):
            f_transform(-1.0, 1.0)
        with pytest.raises(DomainError):
            f_transform(1.0, -1.0)

    def test_hand_anchors(self):
        point = ChannelPoint(1.0, 2.0)
        assert mmse_se_ds_nofading(point).bits_per_dim == pytest.approx(1.0, abs=1e-12)
        assert opt_se_ds_nofading(point).bits_per_dim == pytest.approx(
            2.0 - 1.0 / (2.0 * LN2), abs=1e-12)

    def test_tiny_snr_stays_nonnegative(self):
        # the cancellation-free form keeps the rate positive where the
        # naive difference of square roots loses every digit
        for gamma in (1e-12, 1e-9, 1e-6):
            rate = opt_se_ds_nofading(ChannelPoint(1.0, gamma)).bits_per_dim
            assert rate > 0.0
            # leading order: beta * gamma / ln2 at beta = 1
            assert rate == pytest.approx(gamma / LN2, rel=0.01)


# ----------------------------------------------------------------------
# Dense spreading with fading: fixed point
# ----------------------------------------------------------------------

class TestMmseEfficiency:
    def test_residual_and_range(self):
        for beta in (0.3, 1.0, 2.5):
            for gamma in (0.5, 10.0, 1000.0):
                eff = mmse_efficiency_ds_fading(ChannelPoint(beta, gamma))
                assert eff.residual <= 1e-10
                assert max(0.0, 1.0 - beta) < eff.value <= 1.0

    def test_zero_snr_is_exactly_one(self):
        eff = mmse_efficiency_ds_fading(ChannelPoint(2.0, 0.0))
        assert eff.value == 1.0
        assert eff.residual == 0.0

    def test_vanishing_load_approaches_one(self):
        eff = mmse_efficiency_ds_fading(ChannelPoint(1e-9, 10.0))
        assert eff.value == pytest.approx(1.0, abs=1e-8)

    def test_small_load_mmse_rate_collapses(self):
        beta = 1e-4
        rate = mmse_se_ds_fading(ChannelPoint(beta, 5.0)).bits_per_dim
        assert rate / beta == pytest.approx(
            single_user_rayleigh_capacity(5.0), rel=1e-3)

    def test_optimum_correction_nonnegative_and_vanishing_at_small_load(self):
        point = ChannelPoint(1e-6, 10.0)
        mmse = mmse_se_ds_fading(point).bits_per_dim
        opt = opt_se_ds_fading(point).bits_per_dim
        assert opt >= mmse
        assert opt == pytest.approx(mmse, abs=1e-10)


# ----------------------------------------------------------------------
# Asymptotic anchors
# ----------------------------------------------------------------------

class TestSlopesAndFloor:
    def test_eta_min_is_ln2_everywhere(self):
        for scheme in ALL_SCHEMES:
            assert eta_min(scheme) == LN2

    def test_low_snr_slopes(self):
        assert low_snr_slope(SchemeSpec.parse("lds-sumf-fading"), 1.0) == pytest.approx(0.5)
        assert low_snr_slope(SchemeSpec.parse("lds-opt-fading"), 2.0) == pytest.approx(1.0)
        for beta in (1e-6, 1e-9):
            assert low_snr_slope(SchemeSpec.parse("lds-sumf-fading"), beta) < 2e-6
            assert low_snr_slope(SchemeSpec.parse("lds-opt-fading"), beta) < 2e-6

    def test_low_snr_slope_unsupported(self):
        with pytest.raises(UnsupportedSchemeError):
            low_snr_slope(SchemeSpec.parse("ds-mmse-nofading"), 1.0)

    def test_high_snr_slopes(self):
        assert high_snr_slope(SchemeSpec.parse("lds-sumf-fading"), 1.0) == pytest.approx(
            math.exp(-1.0))
        assert high_snr_slope(SchemeSpec.parse("lds-opt-fading"), 1.0) == pytest.approx(
            1.0 - math.exp(-1.0))
        ds_mmse = SchemeSpec.parse("ds-mmse-nofading")
        assert high_snr_slope(ds_mmse, 0.5) == 0.5
        assert high_snr_slope(ds_mmse, 1.0) == 0.5
        assert high_snr_slope(ds_mmse, 2.0) == 0.0

    def test_high_snr_slope_unsupported(self):
        with pytest.raises(UnsupportedSchemeError):
            high_snr_slope(SchemeSpec.parse("ds-opt-fading"), 1.0)

    def test_measured_high_snr_slope_realized(self):
        scheme = SchemeSpec.parse("lds-sumf-fading")
        lo = spectral_efficiency(scheme, ChannelPoint(1.0, 1e5)).bits_per_dim
        hi = spectral_efficiency(scheme, ChannelPoint(1.0, 1e8)).bits_per_dim
        measured = (hi - lo) / (3.0 * math.log2(10.0))
        assert measured == pytest.approx(high_snr_slope(scheme, 1.0), rel=0.02)


# ----------------------------------------------------------------------
# Energy-per-bit conversions
# ----------------------------------------------------------------------

class TestEtaConversions:
    @pytest.mark.parametrize("scheme", ALL_SCHEMES, ids=lambda s: s.name)
    def test_round_trip_at_eta_ten(self, scheme):
        for beta in (0.5, 1.0, 2.0):
            gamma = gamma_from_eta(scheme, beta, 10.0)
            assert eta_from_gamma(scheme, beta, gamma) == pytest.approx(10.0, rel=1e-8)

    def test_eta_never_below_floor(self):
        for scheme in ALL_SCHEMES:
            for gamma in (1e-4, 1.0, 100.0):
                assert eta_from_gamma(scheme, 1.0, gamma) > LN2

    def test_near_floor_solution_is_tiny(self):
        gamma = gamma_from_eta(SchemeSpec.parse("lds-sumf-fading"), 1.0,
                               LN2 * (1.0 + 1e-9))
        assert 0.0 < gamma < 1e-6

    def test_below_floor_raises(self):
        scheme = SchemeSpec.parse("lds-sumf-fading")
        with pytest.raises(NoSolutionError):
            gamma_from_eta(scheme, 1.0, LN2)
        with pytest.raises(NoSolutionError):
            gamma_from_eta(scheme, 1.0, 0.5)

    def test_degenerate_rate_at_zero_snr(self):
        with pytest.raises(DegenerateRateError):
            eta_from_gamma(SchemeSpec.parse("lds-opt-fading"), 1.0, 0.0)

    def test_rejects_bad_eta(self):
        scheme = SchemeSpec.parse("lds-opt-fading")
        for eta in (0.0, -1.0, float("nan"), float("inf")):
            with pytest.raises(DomainError):
                gamma_from_eta(scheme, 1.0, eta)


# ----------------------------------------------------------------------
# Unsupported combinations
# ----------------------------------------------------------------------

class TestUnsupportedSchemes:
    @pytest.mark.parametrize("name", [
        "lds-mmse-fading", "lds-zf-fading", "ds-sumf-nofading",
        "ds-sumf-fading", "ds-zf-nofading", "ds-zf-fading",
    ])
    def test_rejected_everywhere(self, name):
        scheme = SchemeSpec.parse(name)
        with pytest.raises(UnsupportedSchemeError):
            spectral_efficiency(scheme, ChannelPoint(1.0, 1.0))
        with pytest.raises(UnsupportedSchemeError):
            eta_min(scheme)
        with pytest.raises(UnsupportedSchemeError):
            gamma_from_eta(scheme, 1.0, 10.0)
