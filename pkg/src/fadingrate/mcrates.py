"""Monte Carlo rate bounds for constant-modulus signaling.

The coherent mutual information of an m-point uniform-phase constellation
has no closed form; it is estimated by seeded Monte Carlo with the channel
magnitude drawn from its Rayleigh law.  The same estimator drives the
achievable-rate lower bounds, including their time-sharing variants, which
maximize over the boost factor gamma with common random numbers so the
search objective is smooth.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import logsumexp

from .entropy import noise_entropy
from .model import ChannelParams, PsdModel
from .prediction import pred_error_cm_infinite
from .quadrature import McEstimate, QuadratureConfig, make_rng, szego_log_integral
from .rates import BoundValue, PeakConstraint, _check_model

__all__ = [
    "coherent_mi_cm",
    "rate_lower_cm",
    "rate_lower_cm_timeshare",
    "sethuraman_lower",
]

_CHUNK = 1 << 14


def _phases(m_points):
    m_points = int(m_points)
    if m_points < 2:
        raise ValueError("need at least 2 constellation points")
    return np.exp(2j * math.pi * np.arange(m_points) / m_points)


def _draw_base(seed, n, task_index=0):
    rng = make_rng(seed, task_index)
    z = rng.exponential(size=n)
    w = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2.0)
    return z, w


def _mean_stderr(vals):
    mean = float(np.mean(vals))
    var = float(np.var(vals))
    return mean, math.sqrt(var / len(vals))


def _cm_mi_samples(z, w, snr, xs):
    # per-sample coherent mutual information of the unit-power constellation
    # xs at SNR snr: channel magnitude sqrt(snr z), unit-variance noise w,
    # symbol fixed to xs[0] = 1 by symmetry
    out = np.empty(len(z))
    logm = math.log(len(xs))
    for start in range(0, len(z), _CHUNK):
        sl = slice(start, min(start + _CHUNK, len(z)))
        h = np.sqrt(snr * z[sl])
        y = h + w[sl]
        d2 = np.abs(y[:, None] - h[:, None] * xs[None, :]) ** 2
        lse = logsumexp(-d2, axis=1)
        out[sl] = logm - np.abs(w[sl]) ** 2 - lse
    return out


def coherent_mi_cm(rho, m_points=100, cfg: QuadratureConfig | None = None,
                   seed=0, n=None, stderr_tol=None) -> McEstimate:
    """Mutual information of an m-point uniform-phase constant-modulus
    constellation over the coherent channel, in nats.

    Monte Carlo over the fading magnitude and noise; the estimate sits
    below both coherent capacity and log(m_points).  When stderr_tol is
    given, a larger achieved standard error raises instead of returning.
    """
    rho = float(rho)
    if rho < 0:
        raise ValueError(f"rho must be nonnegative, got {rho}")
    xs = _phases(m_points)
    cfg = cfg or QuadratureConfig()
    n = int(n) if n is not None else cfg.mc_default_n
    z, w = _draw_base(seed, n)
    mean, stderr = _mean_stderr(_cm_mi_samples(z, w, rho, xs))
    if stderr_tol is not None and stderr > stderr_tol:
        raise RuntimeError(
            f"estimate did not converge: achieved stderr {stderr:.3e} "
            f"exceeds tolerance {stderr_tol:.3e} at n = {n}"
        )
    return McEstimate(mean=mean, stderr=stderr, n=n, seed=int(seed))


def _golden_max(fun, lo, hi, tol=1e-6):
    # golden-section maximization of a deterministic scalar function
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fun(d)
    return 0.5 * (a + b)


def _timeshare_argmax(objective, beta, n):
    # coarse scan guards against non-unimodal objectives; golden section
    # refines within the bracket; both run on a reduced sample count
    n_small = min(n, 10_000)
    gammas = np.linspace(1.0, beta, 64)
    vals = [objective(g, n_small) for g in gammas]
    k = int(np.argmax(vals))
    lo = gammas[max(k - 1, 0)]
    hi = gammas[min(k + 1, len(gammas) - 1)]
    return _golden_max(lambda g: objective(g, n_small), lo, hi)


def rate_lower_cm(params: ChannelParams, model: PsdModel, m_points=100,
                  cfg: QuadratureConfig | None = None, seed=0, n=None) -> BoundValue:
    """Achievable rate with i.i.d. constant-modulus inputs: the coherent
    constellation information minus the spectral log integral, clamped at 0."""
    _check_model(params, model)
    xs = _phases(m_points)
    cfg = cfg or QuadratureConfig()
    n = int(n) if n is not None else cfg.mc_default_n
    z, w = _draw_base(seed, n)
    rho = params.rho
    mean, stderr = _mean_stderr(_cm_mi_samples(z, w, rho, xs))
    raw = mean - szego_log_integral(model, rho)
    return BoundValue(
        value=max(0.0, raw),
        kind="lower_cm",
        clamped=raw < 0.0,
        unclamped=raw,
        stderr=stderr,
    )


def rate_lower_cm_timeshare(params: ChannelParams, model: PsdModel, peak: PeakConstraint,
                            m_points=100, cfg: QuadratureConfig | None = None,
                            seed=0, n=None) -> BoundValue:
    """Time-sharing variant of the constant-modulus lower bound: transmit a
    fraction 1/gamma of the time at power gamma sigma_x2, maximized over
    gamma in [1, beta] (common random numbers keep the search smooth).

    alpha_used records the duty cycle 1/gamma_opt.
    """
    _check_model(params, model)
    xs = _phases(m_points)
    cfg = cfg or QuadratureConfig()
    n = int(n) if n is not None else cfg.mc_default_n
    z, w = _draw_base(seed, n)
    rho = params.rho

    def objective(gamma, count):
        snr = gamma * rho
        mi = float(np.mean(_cm_mi_samples(z[:count], w[:count], snr, xs)))
        return (mi - szego_log_integral(model, snr)) / gamma

    if peak.beta == 1.0:
        gamma_opt = 1.0
    else:
        gamma_opt = _timeshare_argmax(objective, peak.beta, n)
    snr = gamma_opt * rho
    mean, stderr = _mean_stderr(_cm_mi_samples(z, w, snr, xs))
    raw = (mean - szego_log_integral(model, snr)) / gamma_opt
    return BoundValue(
        value=max(0.0, raw),
        kind="lower_cm_ts",
        clamped=raw < 0.0,
        alpha_used=1.0 / gamma_opt,
        unclamped=raw,
        stderr=stderr / gamma_opt,
    )


def _sd_entropy_samples(z, w, hat_var, amp, sigma_eff2, xs, sigma_n2):
    # per-sample -log p(y | h_hat) for the constant-modulus mixture: the
    # receiver knows the one-step prediction h_hat = sqrt(hat_var z) (real
    # by symmetry) and sees y = h_hat * amp + w sqrt(sigma_eff2)
    out = np.empty(len(z))
    logm = math.log(len(xs))
    log_norm = math.log(math.pi * sigma_eff2)
    for start in range(0, len(z), _CHUNK):
        sl = slice(start, min(start + _CHUNK, len(z)))
        hhat = np.sqrt(hat_var * z[sl])
        y = hhat * amp + w[sl] * math.sqrt(sigma_eff2)
        d2 = np.abs(y[:, None] - (hhat * amp)[:, None] * xs[None, :]) ** 2
        out[sl] = logm + log_norm - logsumexp(-d2 / sigma_eff2, axis=1)
    return out


def sethuraman_lower(params: ChannelParams, model: PsdModel, cm_points=100,
                     timeshare=False, peak: PeakConstraint | None = None,
                     cfg: QuadratureConfig | None = None, seed=0, n=None,
                     stderr_tol=None) -> BoundValue:
    """Achievable-rate lower bound for constant-modulus inputs decoded
    against the infinite-past channel prediction.

    The conditional output entropy given the prediction is Monte Carlo
    estimated; the time-sharing variant boosts the power by gamma in
    [1, peak.beta] during a 1/gamma duty cycle and maximizes the rate.
    The raw value is reported without clamping (near rho = 0 it is zero
    only up to Monte Carlo noise).
    """
    _check_model(params, model)
    xs = _phases(cm_points)
    cfg = cfg or QuadratureConfig()
    n = int(n) if n is not None else cfg.mc_default_n
    if timeshare and peak is None:
        raise ValueError("time-sharing variant needs the peak constraint")
    z, w = _draw_base(seed, n)
    rho = params.rho
    sigma_h2 = params.sigma_h2
    sigma_n2 = params.sigma_n2

    def samples(gamma, count):
        power = gamma * params.sigma_x2
        s2 = pred_error_cm_infinite(model, power, sigma_n2)
        hat_var = max(sigma_h2 - s2, 0.0)
        sigma_eff2 = power * s2 + sigma_n2
        vals = _sd_entropy_samples(
            z[:count], w[:count], hat_var, math.sqrt(power), sigma_eff2, xs, sigma_n2
        )
        return _mean_stderr(vals)

    def c_l1(gamma, count):
        mean, _ = samples(gamma, count)
        return mean - noise_entropy(sigma_n2) - szego_log_integral(model, gamma * rho)

    if timeshare and peak.beta > 1.0:
        gamma_opt = _timeshare_argmax(lambda g, c: c_l1(g, c) / g, peak.beta, n)
    else:
        gamma_opt = 1.0
    mean, stderr = samples(gamma_opt, n)
    raw = (
        mean - noise_entropy(sigma_n2) - szego_log_integral(model, gamma_opt * rho)
    ) / gamma_opt
    stderr /= gamma_opt
    if stderr_tol is not None and stderr > stderr_tol:
        raise RuntimeError(
            f"estimate did not converge: achieved stderr {stderr:.3e} "
            f"exceeds tolerance {stderr_tol:.3e} at n = {n}"
        )
    return BoundValue(
        value=raw,
        kind="sethuraman_lower_ts" if timeshare else "sethuraman_lower",
        alpha_used=1.0 / gamma_opt,
        unclamped=raw,
        stderr=stderr,
    )
