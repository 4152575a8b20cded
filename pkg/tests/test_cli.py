"""Command-line surface: formats, exit codes, ordering, determinism."""

import json
import math

import pytest

from noma_limits.cli import SweepSpec, fmt9, main
from noma_limits.rates import SchemeSpec

CSV_HEADER = "x,scheme,beta,gamma,eta_db,rate_bits_per_dim"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ----------------------------------------------------------------------
# Number formatting
# ----------------------------------------------------------------------

class TestFmt9:
    @pytest.mark.parametrize("value, text", [
        (0.0, "0.000000000"),
        (-0.0, "0.000000000"),
        (1.0, "1.000000000"),
        (10.0, "10.000000000"),
        (2.0, "2.000000000"),
        (-2.5, "-2.5"),
        (1e-07, "1e-07"),
        (3.0102999566398116, "3.01029996"),
        (20.013372691942784, "20.0133727"),
        (1.23456789e+300, "1.23456789e+300"),
        (float("nan"), "nan"),
        (float("inf"), "inf"),
        (float("-inf"), "-inf"),
    ])
    def test_examples(self, value, text):
        assert fmt9(value) == text


# ----------------------------------------------------------------------
# Sweep requests
# ----------------------------------------------------------------------

def _schemes(*names):
    return tuple(SchemeSpec.parse(n) for n in names)


class TestSweepSpec:
    def test_linear_grid_hits_both_endpoints(self):
        spec = SweepSpec(x_axis="load", x_min=0.5, x_max=4.5, n_points=5,
                         spacing="linear", fixed_value=10.0,
                         schemes=_schemes("lds-opt-fading"))
        grid = spec.grid()
        assert grid == [0.5, 1.5, 2.5, 3.5, 4.5]

    def test_log_grid_has_constant_ratio(self):
        spec = SweepSpec(x_axis="ebn0-db", x_min=0.1, x_max=10.0, n_points=21,
                         spacing="log", fixed_value=1.0,
                         schemes=_schemes("ds-opt-fading"))
        grid = spec.grid()
        assert len(grid) == 21
        assert grid[0] == pytest.approx(0.1, rel=1e-12)
        assert grid[-1] == pytest.approx(10.0, rel=1e-12)
        ratios = [b / a for a, b in zip(grid, grid[1:])]
        assert all(r == pytest.approx(ratios[0], rel=1e-10) for r in ratios)

    @pytest.mark.parametrize("kwargs", [
        dict(x_axis="frequency"),
        dict(spacing="cubic"),
        dict(x_min=2.0, x_max=1.0),
        dict(x_min=1.0, x_max=1.0),
        dict(x_min=0.0, spacing="log"),
        dict(n_points=1),
        dict(schemes=()),
    ])
    def test_rejections(self, kwargs):
        base = dict(x_axis="load", x_min=0.5, x_max=4.0, n_points=5,
                    spacing="linear", fixed_value=10.0,
                    schemes=_schemes("lds-opt-fading"))
        base.update(kwargs)
        with pytest.raises(ValueError):
            SweepSpec(**base)


# ----------------------------------------------------------------------
# rate
# ----------------------------------------------------------------------

class TestRateCommand:
    def test_zero_snr_point(self, capsys):
        code, out, _ = run_cli(capsys, "rate", "--scheme", "lds-sumf-fading",
                               "--beta", "1", "--gamma", "0")
        assert code == 0
        assert out == ("scheme lds-sumf-fading beta 1.000000000 gamma 0.000000000 "
                       "eta_db nan rate 0.000000000\n")

    def test_one_bit_anchor(self, capsys):
        # load one, snr two: the linear-detection dense limit is exactly
        # one bit per dimension at 3.01 dB of energy per bit
        code, out, _ = run_cli(capsys, "rate", "--scheme", "ds-mmse",
                               "--beta", "1", "--gamma", "2")
        assert code == 0
        assert out == ("scheme ds-mmse-nofading beta 1.000000000 gamma 2.000000000 "
                       "eta_db 3.01029996 rate 1.000000000\n")

    def test_energy_per_bit_inversion(self, capsys):
        code, out, _ = run_cli(capsys, "rate", "--scheme", "lds-sumf-fading",
                               "--beta", "1", "--eta-db", "10")
        assert code == 0
        assert out == ("scheme lds-sumf-fading beta 1.000000000 gamma 20.0133727 "
                       "eta_db 10.000000000 rate 2.00133727\n")

    def test_requires_exactly_one_operating_flag(self, capsys):
        code, _, err = run_cli(capsys, "rate", "--scheme", "lds-sumf-fading",
                               "--beta", "1", "--gamma", "1", "--eta-db", "3")
        assert code == 2 and "exactly one of" in err
        code, _, err = run_cli(capsys, "rate", "--scheme", "lds-sumf-fading",
                               "--beta", "1")
        assert code == 2 and "exactly one of" in err

    def test_below_floor_energy_is_a_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "rate", "--scheme", "lds-opt-fading",
                               "--beta", "1", "--eta-db", "-2")
        assert code == 2
        assert err.startswith("rate: below minimum energy per bit")

    @pytest.mark.parametrize("name", ["triple-foo", "lds-mmse-fading", "ds-sumf"])
    def test_unknown_or_unsupported_scheme(self, capsys, name):
        code, _, err = run_cli(capsys, "rate", "--scheme", name,
                               "--beta", "1", "--gamma", "1")
        assert code == 2 and err.startswith("rate:")

    def test_bad_load_is_a_domain_error(self, capsys):
        code, _, err = run_cli(capsys, "rate", "--scheme", "lds-opt-fading",
                               "--beta", "-1", "--gamma", "1")
        assert code == 2 and err.startswith("rate:")

    def test_argparse_rejects_missing_subcommand_args(self):
        with pytest.raises(SystemExit) as exc:
            main(["rate", "--beta", "1"])
        assert exc.value.code == 2


# ----------------------------------------------------------------------
# curve
# ----------------------------------------------------------------------

def parse_csv(out):
    lines = out.splitlines()
    assert lines[0] == CSV_HEADER
    return [line.split(",") for line in lines[1:]]


class TestCurveCommand:
    def test_load_sweep_layout_and_ordering(self, capsys):
        code, out, err = run_cli(
            capsys, "curve", "--scheme", "lds-opt-fading",
            "--scheme", "lds-sumf-fading", "--eta-db", "10",
            "--range", "0.5", "4.5", "--points", "3")
        assert code == 0 and err == ""
        rows = parse_csv(out)
        assert len(rows) == 6
        assert [r[0] for r in rows] == ["0.5", "0.5", "2.5", "2.5", "4.5", "4.5"]
        # ties on x break on the scheme name
        assert [r[1] for r in rows[:2]] == ["lds-opt-fading", "lds-sumf-fading"]
        for row in rows:
            x, _, beta, gamma, eta_db, rate = row
            assert beta == x and eta_db == "10.000000000"
            # the printed columns are mutually consistent
            back = 10.0 * math.log10(float(beta) * float(gamma) / float(rate))
            assert back == pytest.approx(10.0, abs=1e-6)
        # capacity-achieving detection dominates linear at every load
        for lo, hi in zip(rows[1::2], rows[0::2]):
            assert float(hi[5]) >= float(lo[5])

    def test_comma_list_equals_repeated_flags(self, capsys):
        _, separate, _ = run_cli(
            capsys, "curve", "--scheme", "lds-opt-fading",
            "--scheme", "lds-sumf-fading", "--eta-db", "10",
            "--range", "0.5", "4.5", "--points", "3")
        _, combined, _ = run_cli(
            capsys, "curve", "--scheme", "lds-opt-fading,lds-sumf-fading",
            "--eta-db", "10", "--range", "0.5", "4.5", "--points", "3")
        assert combined == separate

    def test_energy_sweep_rates_increase(self, capsys):
        code, out, _ = run_cli(
            capsys, "curve", "--scheme", "ds-opt-fading", "--beta", "1",
            "--range", "0", "10", "--points", "3")
        assert code == 0
        rows = parse_csv(out)
        assert [r[0] for r in rows] == ["0.000000000", "5.000000000", "10.000000000"]
        assert all(r[2] == "1.000000000" for r in rows)
        rates = [float(r[5]) for r in rows]
        assert rates[0] < rates[1] < rates[2]

    def test_minimum_grid(self, capsys):
        code, out, _ = run_cli(
            capsys, "curve", "--scheme", "lds-zf-nofading", "--eta-db", "6",
            "--range", "0.2", "0.8", "--points", "2")
        assert code == 0
        assert len(parse_csv(out)) == 2

    def test_below_floor_points_leave_cells_empty(self, capsys):
        # -1.65 dB sits below the universal -1.59 dB floor: every point
        # fails, each with a warning, yet the sweep itself succeeds
        code, out, err = run_cli(
            capsys, "curve", "--scheme", "lds-sumf-fading", "--eta-db", "-1.65",
            "--range", "0.5", "1.5", "--points", "2")
        assert code == 0
        rows = out.splitlines()[1:]
        assert rows == ["0.5,lds-sumf-fading,0.5,,-1.65,",
                        "1.5,lds-sumf-fading,1.5,,-1.65,"]
        warnings = err.splitlines()
        assert len(warnings) == 2
        assert all(w.startswith("curve: lds-sumf-fading at x=") for w in warnings)

    def test_requires_exactly_one_axis(self, capsys):
        code, _, err = run_cli(capsys, "curve", "--scheme", "lds-opt-fading",
                               "--range", "0.5", "1.5", "--points", "2")
        assert code == 2 and "exactly one of" in err
        code, _, err = run_cli(capsys, "curve", "--scheme", "lds-opt-fading",
                               "--range", "0.5", "1.5", "--points", "2",
                               "--beta", "1", "--eta-db", "10")
        assert code == 2 and "exactly one of" in err

    def test_log_spacing_rejects_zero_minimum(self, capsys):
        code, _, err = run_cli(capsys, "curve", "--scheme", "lds-opt-fading",
                               "--eta-db", "10", "--range", "0", "4",
                               "--points", "3", "--spacing", "log")
        assert code == 2 and "log spacing requires x_min > 0" in err

    def test_single_point_grid_rejected(self, capsys):
        code, _, err = run_cli(capsys, "curve", "--scheme", "lds-opt-fading",
                               "--eta-db", "10", "--range", "0.5", "1.5",
                               "--points", "1")
        assert code == 2 and "n_points" in err

    def test_worker_count_does_not_change_output(self, capsys, monkeypatch):
        argv = ("curve", "--scheme", "lds-opt-fading,ds-opt-fading",
                "--eta-db", "8", "--range", "0.5", "3.5", "--points", "4")
        monkeypatch.setenv("NOMA_LIMITS_THREADS", "1")
        _, serial, _ = run_cli(capsys, *argv)
        monkeypatch.setenv("NOMA_LIMITS_THREADS", "4")
        _, threaded, _ = run_cli(capsys, *argv)
        assert serial == threaded

    def test_malformed_worker_count_is_a_usage_error(self, capsys, monkeypatch):
        monkeypatch.setenv("NOMA_LIMITS_THREADS", "abc")
        code, _, err = run_cli(capsys, "curve", "--scheme", "lds-opt-fading",
                               "--eta-db", "10", "--range", "0.5", "1.5",
                               "--points", "2")
        assert code == 2 and err.startswith("curve:")

    def test_out_file_matches_stdout(self, capsys, tmp_path):
        argv = ("curve", "--scheme", "lds-opt-fading", "--eta-db", "10",
                "--range", "0.5", "1.5", "--points", "2")
        _, stdout_payload, _ = run_cli(capsys, *argv)
        target = tmp_path / "sweep.csv"
        code, out, _ = run_cli(capsys, *argv, "--out", str(target))
        assert code == 0 and out == ""
        assert target.read_text(encoding="utf-8") == stdout_payload

    def test_unwritable_out_path(self, capsys):
        code, _, err = run_cli(capsys, "curve", "--scheme", "lds-opt-fading",
                               "--eta-db", "10", "--range", "0.5", "1.5",
                               "--points", "2", "--out",
                               "/nonexistent-dir-xyz/out.csv")
        assert code == 3 and "cannot write" in err


# ----------------------------------------------------------------------
# moments
# ----------------------------------------------------------------------

class TestMomentsCommand:
    def test_fading_rows_and_values(self, capsys):
        code, out, _ = run_cli(capsys, "moments", "lds-fading",
                               "--beta", "2", "--lmax", "4")
        assert code == 0
        assert out.splitlines() == [
            "ensemble lds-fading beta 2.000000000",
            "L 1 coefficients 1 moment 2.000000000",
            "L 2 coefficients 2 1 moment 8.000000000",
            "L 3 coefficients 6 6 1 moment 44.000000000",
            "L 4 coefficients 24 36 12 1 moment 304.000000000",
        ]

    def test_fourth_rows_tell_the_ensembles_apart(self, capsys):
        _, no_fade, _ = run_cli(capsys, "moments", "lds-nofading",
                                "--beta", "1", "--lmax", "4")
        _, dense, _ = run_cli(capsys, "moments", "ds-nofading",
                              "--beta", "1", "--lmax", "4")
        assert "L 4 coefficients 1 7 6 1" in no_fade
        assert "L 4 coefficients 1 6 6 1" in dense

    def test_first_moment_is_the_load(self, capsys):
        _, out, _ = run_cli(capsys, "moments", "ds-nofading",
                            "--beta", "0.75", "--lmax", "1")
        assert out.splitlines()[1] == "L 1 coefficients 1 moment 0.75"

    def test_short_alias_for_depth(self, capsys):
        code, out, _ = run_cli(capsys, "moments", "lds-fading",
                               "--beta", "1", "--n", "2")
        assert code == 0 and len(out.splitlines()) == 3

    def test_unknown_ensemble(self, capsys):
        code, _, err = run_cli(capsys, "moments", "ds-fading", "--beta", "1")
        assert code == 2 and "unknown ensemble" in err

    def test_zero_depth_rejected(self, capsys):
        code, _, err = run_cli(capsys, "moments", "lds-fading",
                               "--beta", "1", "--lmax", "0")
        assert code == 2 and err.startswith("moments:")


# ----------------------------------------------------------------------
# mc
# ----------------------------------------------------------------------

class TestMcCommand:
    def test_zero_snr_record_is_exact(self, capsys):
        code, out, _ = run_cli(capsys, "mc", "sumf", "--n", "100", "--beta", "1",
                               "--gamma", "0", "--samples", "1000")
        assert code == 0
        assert out.startswith('{"analytic_reference"')  # keys stay sorted
        record = json.loads(out)
        assert record == {"analytic_reference": 0.0, "estimate": 0.0, "n": 1000,
                          "seed": 0, "std_error": 0.0, "z_score": 0.0}

    def test_matched_filter_record_is_unbiased(self, capsys):
        code, out, _ = run_cli(capsys, "mc", "sumf", "--n", "10000", "--beta", "1",
                               "--gamma", "10", "--samples", "200000", "--seed", "7")
        assert code == 0
        record = json.loads(out)
        assert abs(record["z_score"]) < 5.0
        assert record["std_error"] > 0.0

    def test_spectral_distance_record(self, capsys):
        code, out, _ = run_cli(capsys, "mc", "esd", "--n", "20000", "--beta", "1",
                               "--seed", "3")
        assert code == 0
        record = json.loads(out)
        assert 0.0 < record["estimate"] < 0.02
        assert record["std_error"] == 0.0 and record["z_score"] == 0.0

    def test_one_draw_capacity_record(self, capsys):
        code, out, _ = run_cli(capsys, "mc", "copt", "--n", "100000", "--beta", "1",
                               "--gamma", "10", "--seed", "5")
        assert code == 0
        record = json.loads(out)
        assert abs(record["z_score"]) < 5.0

    def test_dense_logdet_record(self, capsys):
        code, out, _ = run_cli(capsys, "mc", "ds-logdet", "--n", "128",
                               "--beta", "0.5", "--gamma", "10", "--trials", "40",
                               "--seed", "11")
        assert code == 0
        record = json.loads(out)
        assert record["estimate"] == pytest.approx(
            record["analytic_reference"], rel=0.05)

    def test_independence_record(self, capsys):
        code, out, _ = run_cli(capsys, "mc", "independence", "--n", "1000",
                               "--beta", "1", "--samples", "20000", "--seed", "2")
        assert code == 0
        record = json.loads(out)
        assert abs(record["estimate"]) < 0.04
        assert record["std_error"] == pytest.approx(1.0 / math.sqrt(20000))

    @pytest.mark.parametrize("argv, missing", [
        (("mc", "sumf", "--n", "100", "--beta", "1", "--samples", "10"), "--gamma"),
        (("mc", "sumf", "--n", "100", "--beta", "1", "--gamma", "1"), "--samples"),
        (("mc", "copt", "--n", "100", "--beta", "1"), "--gamma"),
        (("mc", "ds-logdet", "--n", "16", "--beta", "1", "--gamma", "1"), "--trials"),
        (("mc", "independence", "--n", "100", "--beta", "1"), "--samples"),
    ])
    def test_missing_required_flag(self, capsys, argv, missing):
        code, _, err = run_cli(capsys, *argv)
        assert code == 2 and missing in err

    def test_unknown_kind_rejected_by_parser(self):
        with pytest.raises(SystemExit) as exc:
            main(["mc", "bogus", "--n", "10", "--beta", "1"])
        assert exc.value.code == 2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "record.json"
        code, out, _ = run_cli(capsys, "mc", "esd", "--n", "1000", "--beta", "1",
                               "--out", str(target))
        assert code == 0 and out == ""
        record = json.loads(target.read_text(encoding="utf-8"))
        assert record["n"] == 1000


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

class TestVerifyCommand:
    def test_fast_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "fast")
        assert code == 0
        report = json.loads(out)
        assert report["overall"] is True
        assert report["seeds"] == [42]
        assert report["wall_time_s"] > 0.0
        assert all(check["passed"] for check in report["checks"])
        prefixes = sorted({check["name"][:3] for check in report["checks"]})
        assert prefixes == ["01.", "02.", "03.", "04.", "05.",
                            "11.", "12.", "13."]

    def test_fast_suite_is_deterministic(self, capsys):
        _, first, _ = run_cli(capsys, "verify", "--suite", "fast")
        _, second, _ = run_cli(capsys, "verify", "--suite", "fast")
        a, b = json.loads(first), json.loads(second)
        a.pop("wall_time_s"), b.pop("wall_time_s")
        assert a == b

    def test_seed_is_echoed(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "fast", "--seed", "7")
        assert code == 0
        assert json.loads(out)["seeds"] == [7]

    def test_unwritable_report_path(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--suite", "fast", "--out",
                               "/nonexistent-dir-xyz/report.json")
        assert code == 3 and "cannot write" in err

    def test_unknown_suite_rejected_by_parser(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "medium"])
        assert exc.value.code == 2
