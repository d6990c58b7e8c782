"""Command-line interface: CSV contract, determinism, exit codes."""

import math

import numpy as np
import pytest

import fadingrate.cli as cli
from fadingrate.cli import main
from fadingrate.prediction import PowerProfile, ToeplitzCov, pred_error_finite
from fadingrate.quadrature import g_logmoment
from fadingrate.simulate import read_fading_dump
from fadingrate.verify import CheckResult

SWEEP = ["sweep", "--psd", "rect", "--fd", "0.1,0.2", "--snr-db", "0:10:5"]


def _parse_csv(text):
    lines = text.strip().split("\n")
    meta = [l for l in lines if l.startswith("#")]
    body = [l for l in lines if not l.startswith("#")]
    header = body[0].split(",")
    rows = [l.split(",") for l in body[1:]]
    return meta, header, rows


def _run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_sweep_header_and_shape(capsys):
    code, out = _run(capsys, SWEEP)
    assert code == 0
    meta, header, rows = _parse_csv(out)
    assert meta[0].startswith("# fadingrate ")
    assert meta[1].startswith("# flags: sweep --psd rect --fd 0.1,0.2 --snr-db 0:10:5")
    assert meta[2] == "# seed: 0"
    assert header == [
        "f_d", "snr_db",
        "lower_pg", "lower_pg_clamped",
        "upper_pg", "upper_pg_clamped",
        "coherent",
    ]
    assert len(rows) == 2 * 3  # two Doppler values, three SNR points


def test_sweep_spot_values(capsys):
    _, out = _run(capsys, SWEEP)
    _, header, rows = _parse_csv(out)
    row = {k: v for k, v in zip(header, rows[0])}
    assert float(row["f_d"]) == 0.1 and float(row["snr_db"]) == 0.0
    assert float(row["lower_pg"]) == pytest.approx(0.23799546847758307418, abs=1e-13)
    assert float(row["upper_pg"]) == pytest.approx(0.39447743117349738704, abs=1e-13)
    assert float(row["coherent"]) == pytest.approx(g_logmoment(1.0), abs=1e-15)
    assert row["lower_pg_clamped"] == "0"


def test_sweep_reruns_identically(capsys):
    _, first = _run(capsys, SWEEP)
    _, second = _run(capsys, SWEEP)
    assert first == second


def test_mc_bounds_rerun_identically_and_respect_seed(capsys):
    argv = ["sweep", "--psd", "rect", "--fd", "0.2", "--snr-db", "0",
            "--bounds", "lower_cm", "--mc-n", "20000"]
    _, first = _run(capsys, argv)
    _, second = _run(capsys, argv)
    assert first == second
    _, other = _run(capsys, argv + ["--seed", "1"])
    _, header, rows_a = _parse_csv(first)
    _, _, rows_b = _parse_csv(other)
    col = header.index("lower_cm")
    assert rows_a[0][col] != rows_b[0][col]
    col_se = header.index("lower_cm_stderr")
    assert float(rows_a[0][col_se]) > 0.0


def test_units_bit_divides_rate_columns(capsys):
    _, nat = _run(capsys, SWEEP)
    _, bit = _run(capsys, SWEEP[:]
                  + ["--units", "bit"])
    _, header, rows_n = _parse_csv(nat)
    _, _, rows_b = _parse_csv(bit)
    i_rate = header.index("upper_pg")
    i_flag = header.index("upper_pg_clamped")
    for rn, rb in zip(rows_n, rows_b):
        assert float(rb[i_rate]) == pytest.approx(float(rn[i_rate]) / math.log(2.0), rel=1e-15)
        assert rb[i_flag] == rn[i_flag]  # indicator columns never rescale


def test_out_file_matches_stdout(tmp_path, capsys):
    _, streamed = _run(capsys, SWEEP)
    path = tmp_path / "sweep.csv"
    code = main(SWEEP + ["--out", str(path)])
    capsys.readouterr()
    assert code == 0
    on_disk = path.read_text()
    # the flags line records --out-independent parameters only
    assert on_disk == streamed


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--psd", "jakes", "--fd", "0.1", "--snr-db", "0", "--bounds", "upper_pg"],
        ["sweep", "--psd", "rect", "--fd", "0.1", "--snr-db", "0", "--bounds", "upper_peak"],
        ["sweep", "--psd", "tri", "--fd", "0.1", "--snr-db", "0"],
        ["sweep", "--psd", "rc:x", "--fd", "0.1", "--snr-db", "0"],
        ["sweep", "--psd", "rect", "--fd", "0.1", "--snr-db", "10:0:5"],
        ["sweep", "--psd", "rect", "--fd", "0.1", "--snr-db", "0", "--bounds", "magic"],
        ["sweep", "--psd", "rect", "--fd", "0.6", "--snr-db", "0"],
        ["figure", "9"],
        ["predict", "--psd", "rect", "--fd", "0.1", "--infinite"],
        ["predict", "--psd", "rect", "--fd", "0.1"],
        ["simulate", "--psd", "jakes", "--fd", "0.2", "--n", "64", "--out", "/dev/null"],
    ],
    ids=["rect-only-bound", "peak-needs-beta", "bad-psd", "bad-rolloff", "bad-grid",
         "unknown-bound", "bad-fd", "bad-figure", "infinite-needs-power",
         "missing-powers", "infeasible-embedding"],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    err = capsys.readouterr().err
    assert err.startswith("error:")


def test_default_bounds_depend_on_density(capsys):
    _, out = _run(capsys, ["sweep", "--psd", "jakes", "--fd", "0.1", "--snr-db", "0"])
    _, header, _ = _parse_csv(out)
    assert "upper_pg" not in header  # flat-density bound offered only for rect
    assert header[:2] == ["f_d", "snr_db"]
    assert "lower_pg" in header and "coherent" in header


def test_beta_axis_adds_column(capsys):
    argv = ["sweep", "--psd", "rect", "--fd", "0.1", "--snr-db", "0", "--beta", "2",
            "--bounds", "upper_peak"]
    _, out = _run(capsys, argv)
    _, header, rows = _parse_csv(out)
    assert "upper_peak_alpha" in header
    alpha = float(rows[0][header.index("upper_peak_alpha")])
    assert 0.0 <= alpha <= 1.0


def test_sd_cells_empty_when_no_spacing_admissible(capsys):
    argv = ["sweep", "--psd", "rect", "--fd", "0.45,0.05", "--snr-db", "10",
            "--bounds", "sd"]
    _, out = _run(capsys, argv)
    _, header, rows = _parse_csv(out)
    i = header.index("sd_lower")
    fast, slow = rows[0], rows[1]
    assert fast[i] == "" and fast[i + 1] == "" and fast[i + 2] == ""
    assert float(slow[i]) > 0.0
    assert int(float(slow[header.index("sd_L")])) >= 2


def test_lapidoth_upper_empty_below_unit_snr(capsys):
    # the leading dash needs the --flag=value spelling to clear argparse
    argv = ["sweep", "--psd", "rect", "--fd", "0.1", "--snr-db=-3:3:3",
            "--bounds", "lapidoth"]
    _, out = _run(capsys, argv)
    _, header, rows = _parse_csv(out)
    i_up = header.index("lap_upper")
    assert rows[0][i_up] == ""  # -3 dB
    assert rows[1][i_up] == ""  # 0 dB: iterated log undefined at rho = 1
    assert rows[2][i_up] != ""  # +3 dB


def test_figure_1_rows_and_ordering(capsys):
    _, out = _run(capsys, ["figure", "1"])
    _, header, rows = _parse_csv(out)
    assert len(rows) == 99 * 3
    i_lo, i_up = header.index("lower_pg"), header.index("upper_pg")
    for row in rows:
        assert float(row[i_lo]) <= float(row[i_up]) + 1e-12


def test_figure_7_entropy_gap_columns(capsys):
    _, out = _run(capsys, ["figure", "7"])
    _, header, rows = _parse_csv(out)
    assert header == ["snr_db", "delta_hy", "delta_hy_refined",
                      "delta_hy_refined_err", "euler_gamma"]
    assert len(rows) == 41
    last = rows[-1]
    assert float(last[0]) == 60.0
    assert float(last[1]) == pytest.approx(0.5772, abs=1e-3)
    assert float(last[2]) < float(last[1])
    assert float(last[4]) == pytest.approx(0.5772156649015329, abs=1e-15)


def test_figure_4_carries_stderr_columns(capsys):
    _, out = _run(capsys, ["figure", "4", "--mc-n", "2000"])
    _, header, rows = _parse_csv(out)
    assert len(rows) == 3 * 9
    assert "sethuraman_lower_stderr" in header
    assert "sethuraman_lower_ts_alpha" in header
    i = header.index("sethuraman_lower_stderr")
    assert all(float(r[i]) > 0.0 for r in rows)


def test_verify_exit_codes(capsys, monkeypatch):
    good = CheckResult("alpha", True, "fine", "fine", 0.01)
    bad = CheckResult("beta", False, "off by 1", "zero", 0.02)

    monkeypatch.setattr(cli, "run_suite", lambda level, seed: ([good], True))
    assert main(["verify", "--level", "fast"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] alpha" in out and "1/1 checks passed (fast level, seed 0)" in out

    monkeypatch.setattr(cli, "run_suite", lambda level, seed: ([good, bad], False))
    assert main(["verify", "--level", "full", "--seed", "3"]) == 1
    out = capsys.readouterr().out
    assert "[FAIL] beta" in out and "expected: zero" in out
    assert "1/2 checks passed (full level, seed 3)" in out


def test_predict_finite(capsys):
    code, out = _run(capsys, ["predict", "--psd", "rect", "--fd", "0.1",
                              "--powers", "1,1"])
    assert code == 0
    expect = pred_error_finite(
        ToeplitzCov.from_model(cli.Rectangular(0.1), 3), PowerProfile((1.0, 1.0)), 1.0
    )
    assert float(out) == pytest.approx(expect, abs=1e-16)
    assert float(out) == pytest.approx(0.49719510452390447, abs=1e-13)


def test_predict_infinite(capsys):
    code, out = _run(capsys, ["predict", "--psd", "rect", "--fd", "0.1",
                              "--infinite", "--power", "1"])
    assert code == 0
    assert float(out) == pytest.approx(6.0 ** 0.2 - 1.0, abs=1e-13)


def test_simulate_writes_readable_dump(tmp_path, capsys):
    path = tmp_path / "traces.fade"
    code, out = _run(capsys, ["simulate", "--psd", "rect", "--fd", "0.1",
                              "--n", "64", "--realizations", "2",
                              "--seed", "5", "--out", str(path)])
    assert code == 0
    assert out.strip() == f"wrote 2 x 64 trace(s) to {path}"
    back, meta = read_fading_dump(path)
    assert back.shape == (2, 64)
    assert meta["f_d"] == 0.1 and meta["seed"] == 5
    assert np.all(np.isfinite(back.view(np.float32)))
