"""Command-line front end: parameter sweeps, figure datasets, verification,
prediction queries, and fading-trace dumps.

Output is comma-separated text with '#'-prefixed metadata lines (version,
canonical flags, seed) ahead of the header; numbers carry 17 significant
digits so files round-trip through float64 exactly.  Cells that do not
apply at a grid point (an asymptote below its validity range, no
admissible pilot spacing) are left empty.  Exit codes: 0 on success, 1
when verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .entropy import entropy_gaps, h_y_lower, h_y_upper_refined
from .mcrates import rate_lower_cm, rate_lower_cm_timeshare, sethuraman_lower
from .model import ChannelParams, Jakes, RaisedCosine, Rectangular
from .prediction import PowerProfile, ToeplitzCov, pred_error_cm_infinite, pred_error_finite
from .quadrature import EULER_GAMMA, make_rng
from .rates import (
    PeakConstraint,
    coherent_capacity,
    lapidoth_asymptotes,
    rate_lower_pg,
    rate_upper_peak_rect,
    rate_upper_pg_rect,
    rate_upper_pred_pg,
    rate_upper_pred_peak,
    sd_optimal_L,
    sethuraman_upper,
)
from .simulate import gen_fading_batch, write_fading_dump
from .verify import run_suite

_LN2 = math.log(2.0)

# bounds that exist only under the flat density, and those needing a peak ratio
_RECT_ONLY = {"upper_pg", "upper_peak"}
_NEEDS_BETA = {"upper_peak", "sethuraman_upper", "upper_pred_peak",
               "lower_cm_ts", "sethuraman_lower_ts"}
_KNOWN_BOUNDS = _RECT_ONLY | _NEEDS_BETA | {
    "lower_pg", "coherent", "upper_pred_pg", "lower_cm",
    "sethuraman_lower", "sd", "lapidoth",
}


class _UsageError(Exception):
    pass


def _parse_psd(text):
    if text == "rect" or text == "jakes":
        return text, None
    if text.startswith("rc:"):
        try:
            rolloff = float(text[3:])
        except ValueError:
            raise _UsageError(f"bad roll-off in {text!r}")
        return "rc", rolloff
    raise _UsageError(f"unknown psd {text!r} (use rect, jakes, or rc:<rolloff>)")


def _make_model(psd_kind, rolloff, f_d, sigma_h2=1.0):
    try:
        if psd_kind == "rect":
            return Rectangular(f_d, sigma_h2)
        if psd_kind == "jakes":
            return Jakes(f_d, sigma_h2)
        return RaisedCosine(f_d, rolloff, sigma_h2)
    except ValueError as exc:
        raise _UsageError(str(exc))


def _parse_float_list(text, flag):
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise _UsageError(f"{flag} expects a comma-separated list of numbers, got {text!r}")
    if not vals:
        raise _UsageError(f"{flag} is empty")
    return vals


def _parse_snr_grid(text):
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise _UsageError(f"--snr-db expects lo:hi:step or a single value, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise _UsageError(f"--snr-db expects numbers, got {text!r}")
    if step <= 0 or hi < lo:
        raise _UsageError("--snr-db needs step > 0 and hi >= lo")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + k * step for k in range(count)]


def _columns_for(name):
    """Column layout (name, is_rate) contributed by one bound selector."""
    if name in ("lower_pg", "upper_pg", "upper_pred_pg"):
        return [(name, True), (name + "_clamped", False)]
    if name == "coherent":
        return [("coherent", True)]
    if name in ("upper_peak", "sethuraman_upper", "upper_pred_peak"):
        return [(name, True), (name + "_clamped", False), (name + "_alpha", False)]
    if name == "lower_cm":
        return [(name, True), (name + "_stderr", True), (name + "_clamped", False)]
    if name == "lower_cm_ts":
        return [(name, True), (name + "_stderr", True), (name + "_clamped", False),
                (name + "_alpha", False)]
    if name == "sethuraman_lower":
        return [(name, True), (name + "_stderr", True)]
    if name == "sethuraman_lower_ts":
        return [(name, True), (name + "_stderr", True), (name + "_alpha", False)]
    if name == "sd":
        return [("sd_lower", True), ("sd_upper", True), ("sd_L", False)]
    if name == "lapidoth":
        return [("lap_upper", True), ("lap_lower", True)]
    raise _UsageError(f"unknown bound {name!r}")


def _eval_bound(name, params, model, peak, rng, mc_n):
    if name == "lower_pg":
        b = rate_lower_pg(params, model)
        return [b.value, int(b.clamped)]
    if name == "upper_pg":
        b = rate_upper_pg_rect(params)
        return [b.value, int(b.clamped)]
    if name == "upper_pred_pg":
        b = rate_upper_pred_pg(params, model)
        return [b.value, int(b.clamped)]
    if name == "coherent":
        return [coherent_capacity(params.rho).value]
    if name == "upper_peak":
        b = rate_upper_peak_rect(params, peak)
        return [b.value, int(b.clamped), b.alpha_used]
    if name == "sethuraman_upper":
        b = sethuraman_upper(params, model, peak)
        return [b.value, int(b.clamped), b.alpha_used]
    if name == "upper_pred_peak":
        b = rate_upper_pred_peak(params, model, peak)
        return [b.value, int(b.clamped), b.alpha_used]
    if name == "lower_cm":
        b = rate_lower_cm(params, model, seed=int(rng.integers(0, 2**63)), n=mc_n)
        return [b.value, b.stderr, int(b.clamped)]
    if name == "lower_cm_ts":
        b = rate_lower_cm_timeshare(params, model, peak,
                                    seed=int(rng.integers(0, 2**63)), n=mc_n)
        return [b.value, b.stderr, int(b.clamped), b.alpha_used]
    if name == "sethuraman_lower":
        b = sethuraman_lower(params, model, seed=int(rng.integers(0, 2**63)), n=mc_n)
        return [b.value, b.stderr]
    if name == "sethuraman_lower_ts":
        b = sethuraman_lower(params, model, timeshare=True, peak=peak,
                             seed=int(rng.integers(0, 2**63)), n=mc_n)
        return [b.value, b.stderr, b.alpha_used]
    if name == "sd":
        best_l, table = sd_optimal_L(params, model)
        if best_l is None:
            return [None, None, None]
        entry = table[best_l]
        return [entry["lower"], entry["upper"], best_l]
    if name == "lapidoth":
        asym = lapidoth_asymptotes(params, model)
        return [asym["upper"], asym["lower"]]
    raise _UsageError(f"unknown bound {name!r}")


def _check_bounds(names, psd_kind, have_beta):
    for name in names:
        if name not in _KNOWN_BOUNDS:
            raise _UsageError(
                f"unknown bound {name!r}; choose from {', '.join(sorted(_KNOWN_BOUNDS))}"
            )
        if name in _RECT_ONLY and psd_kind != "rect":
            raise _UsageError(f"bound {name!r} is defined for --psd rect only")
        if name in _NEEDS_BETA and not have_beta:
            raise _UsageError(f"bound {name!r} requires --beta")


def _evaluate_grid(bound_names, psd_kind, rolloff, fds, snrs, betas, scalar_beta, seed, mc_n):
    """Rows in deterministic grid order (f_d, then SNR, then beta when it is
    an axis); Monte Carlo bounds at row k draw from stream (seed, k)."""
    models = {f_d: _make_model(psd_kind, rolloff, f_d) for f_d in fds}
    beta_axis = betas is not None
    columns = [("f_d", False), ("snr_db", False)]
    if beta_axis:
        columns.append(("beta", False))
    for name in bound_names:
        columns.extend(_columns_for(name))
    rows = []
    idx = 0
    for f_d in fds:
        for db in snrs:
            for beta in (betas if beta_axis else (scalar_beta,)):
                params = ChannelParams(f_d=f_d, sigma_x2=10.0 ** (db / 10.0))
                peak = PeakConstraint(beta) if beta is not None else None
                rng = make_rng(seed, idx)
                vals = [f_d, db] + ([beta] if beta_axis else [])
                for name in bound_names:
                    vals.extend(_eval_bound(name, params, models[f_d], peak, rng, mc_n))
                rows.append(vals)
                idx += 1
    return columns, rows


def _cell(value, is_rate, units):
    if value is None:
        return ""
    value = float(value)
    if not math.isfinite(value):
        raise RuntimeError("refusing to emit a non-finite cell")
    if is_rate and units == "bit":
        value /= _LN2
    return f"{value:.17g}"


def _emit_csv(out, flags_line, seed, columns, rows, units):
    out.write(f"# fadingrate {__version__}\n")
    out.write(f"# flags: {flags_line}\n")
    out.write(f"# seed: {seed}\n")
    out.write(",".join(name for name, _ in columns) + "\n")
    for row in rows:
        out.write(",".join(_cell(v, r, units) for v, (_, r) in zip(row, columns)) + "\n")


def _open_out(path):
    return open(path, "w") if path else sys.stdout


def cmd_sweep(args):
    psd_kind, rolloff = _parse_psd(args.psd)
    fds = _parse_float_list(args.fd, "--fd")
    snrs = _parse_snr_grid(args.snr_db)
    if args.bounds:
        bound_names = [b.strip() for b in args.bounds.split(",") if b.strip()]
    else:
        bound_names = ["lower_pg", "upper_pg", "coherent"] if psd_kind == "rect" else [
            "lower_pg", "coherent"]
    _check_bounds(bound_names, psd_kind, args.beta is not None)
    columns, rows = _evaluate_grid(
        bound_names, psd_kind, rolloff, fds, snrs, None, args.beta, args.seed, args.mc_n
    )
    flags = (
        f"sweep --psd {args.psd} --fd {args.fd} --snr-db {args.snr_db}"
        + (f" --beta {args.beta:g}" if args.beta is not None else "")
        + f" --bounds {','.join(bound_names)} --units {args.units} --seed {args.seed}"
        + (f" --mc-n {args.mc_n}" if args.mc_n else "")
    )
    out = _open_out(args.out)
    try:
        _emit_csv(out, flags, args.seed, columns, rows, args.units)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


_FD_FINE = [round(f, 3) for f in np.arange(0.005, 0.4951, 0.005)]
_FD_COARSE = [round(f, 2) for f in np.arange(0.01, 0.4901, 0.01)]


def _figure_rows(n, seed, mc_n):
    if n == 1:
        return _evaluate_grid(["lower_pg", "upper_pg"], "rect", None,
                              _FD_FINE, [0.0, 6.0, 12.0], None, None, seed, mc_n)
    if n == 2:
        return _evaluate_grid(["upper_pg", "upper_peak", "lower_cm"], "rect", None,
                              _FD_COARSE, [0.0, 12.0], [1.0, 2.0, 4.0], None, seed, mc_n)
    if n == 3:
        snrs = [float(d) for d in range(-10, 51, 2)]
        return _evaluate_grid(["lower_pg", "upper_pg", "lapidoth", "coherent"], "rect", None,
                              [0.1, 0.3], snrs, None, None, seed, mc_n)
    if n == 4:
        snrs = [float(d) for d in range(-10, 31, 5)]
        return _evaluate_grid(
            ["sethuraman_upper", "upper_pred_peak", "sethuraman_lower",
             "sethuraman_lower_ts", "coherent"],
            "rect", None, [0.001, 0.01, 0.1], snrs, None, 2.0, seed, mc_n,
        )
    if n == 5:
        return _evaluate_grid(["lower_pg", "upper_pg", "upper_pred_pg", "coherent"],
                              "rect", None, _FD_FINE, [0.0, 6.0, 12.0], None, None, seed, mc_n)
    if n == 6:
        return _evaluate_grid(["lower_pg", "upper_pg", "sd"], "rect", None,
                              _FD_FINE, [0.0, 6.0, 12.0], None, None, seed, mc_n)
    if n == 7:
        columns = [("snr_db", False), ("delta_hy", True), ("delta_hy_refined", True),
                   ("delta_hy_refined_err", True), ("euler_gamma", True)]
        rows = []
        for db in range(-20, 61, 2):
            params = ChannelParams(sigma_x2=10.0 ** (db / 10.0))
            gap, _ = entropy_gaps(params)
            refined = h_y_upper_refined(params)
            delta2 = refined.value - h_y_lower(params).value
            rows.append([float(db), gap, delta2, refined.err_bound, EULER_GAMMA])
        return columns, rows
    raise _UsageError(f"figure must be 1..7, got {n}")


def cmd_figure(args):
    columns, rows = _figure_rows(args.n, args.seed, args.mc_n)
    flags = (
        f"figure {args.n} --units {args.units} --seed {args.seed}"
        + (f" --mc-n {args.mc_n}" if args.mc_n else "")
    )
    out = _open_out(args.out)
    try:
        _emit_csv(out, flags, args.seed, columns, rows, args.units)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_verify(args):
    results, ok = run_suite(args.level, args.seed)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name:<{width}}  ({r.runtime:6.2f} s)  {r.observed}")
        if not r.passed:
            print(f"       {'':<{width}}  expected: {r.expected}")
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed ({args.level} level, seed {args.seed})")
    return 0 if ok else 1


def cmd_predict(args):
    psd_kind, rolloff = _parse_psd(args.psd)
    model = _make_model(psd_kind, rolloff, args.fd, args.sigma_h2)
    try:
        if args.infinite:
            if args.power is None:
                raise _UsageError("--infinite requires --power")
            value = pred_error_cm_infinite(model, args.power, args.sigma_n2)
        else:
            if args.powers is None:
                raise _UsageError("provide --powers, or --infinite with --power")
            powers = _parse_float_list(args.powers, "--powers")
            cov = ToeplitzCov.from_model(model, len(powers) + 1)
            value = pred_error_finite(cov, PowerProfile(powers), args.sigma_n2)
    except ValueError as exc:
        raise _UsageError(str(exc))
    print(f"{value:.17g}")
    return 0


def cmd_simulate(args):
    psd_kind, rolloff = _parse_psd(args.psd)
    model = _make_model(psd_kind, rolloff, args.fd, args.sigma_h2)
    try:
        batch = gen_fading_batch(model, args.n, args.realizations, args.seed, args.method)
    except ValueError as exc:
        raise _UsageError(str(exc))
    write_fading_dump(args.out, batch, model, args.seed)
    print(f"wrote {args.realizations} x {args.n} trace(s) to {args.out}")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fadingrate",
        description="Rate bounds for stationary Rayleigh flat-fading channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common_output(p):
        p.add_argument("--units", choices=("nat", "bit"), default="nat",
                       help="rate units in the output (default nat)")
        p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
        p.add_argument("--mc-n", type=int, default=None,
                       help="Monte Carlo samples per point (default 100000)")
        p.add_argument("--out", default=None, help="write CSV here instead of stdout")

    p = sub.add_parser("sweep", help="evaluate bounds over an (f_d, SNR) grid")
    p.add_argument("--psd", required=True, help="rect, jakes, or rc:<rolloff>")
    p.add_argument("--fd", required=True, help="comma-separated Doppler values")
    p.add_argument("--snr-db", required=True, help="lo:hi:step grid in dB, or one value")
    p.add_argument("--beta", type=float, default=None, help="nominal peak-to-average ratio")
    p.add_argument("--bounds", default=None, help="comma-separated bound names")
    common_output(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="emit the dataset behind one of the figures")
    p.add_argument("n", type=int, help="figure number, 1-7")
    common_output(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("predict", help="one-step prediction error variance")
    p.add_argument("--psd", required=True)
    p.add_argument("--fd", type=float, required=True)
    p.add_argument("--sigma-h2", type=float, default=1.0)
    p.add_argument("--sigma-n2", type=float, default=1.0)
    p.add_argument("--powers", default=None,
                   help="comma-separated past transmit powers, most recent first")
    p.add_argument("--infinite", action="store_true",
                   help="infinite past at constant power (requires --power)")
    p.add_argument("--power", type=float, default=None)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("simulate", help="synthesize fading traces to a binary dump")
    p.add_argument("--psd", required=True)
    p.add_argument("--fd", type=float, required=True)
    p.add_argument("--sigma-h2", type=float, default=1.0)
    p.add_argument("--n", type=int, default=1024, help="trace length")
    p.add_argument("--realizations", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=("embedding", "cholesky"), default="embedding")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # downstream closed the pipe (e.g. | head); keep the interpreter's
        # exit-time flush from tripping over the dead descriptor
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1


if __name__ == "__main__":
    sys.exit(main())
