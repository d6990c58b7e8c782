"""Monte Carlo oracle: synthesize stationary fading, run the channel, and
re-estimate analytic quantities empirically.

Fading realizations come from circulant embedding of the Toeplitz
autocorrelation (exact to rounding when the embedded spectrum is
nonnegative), with a direct Cholesky path as an independent oracle for
moderate lengths.  Every estimator is seeded through the counter-based
generator, with realization i drawing from stream (seed, i) so results do
not depend on scheduling.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import linalg
from scipy.special import logsumexp

from .model import PsdModel
from .prediction import PowerProfile, ToeplitzCov
from .quadrature import McEstimate, make_rng, mc_expectation

__all__ = [
    "FadingRealization",
    "SimConfig",
    "gen_fading",
    "gen_fading_batch",
    "simulate_channel",
    "empirical_pred_error",
    "empirical_coherent_mi",
    "write_fading_dump",
    "read_fading_dump",
]

_DUMP_MAGIC = b"FADE"
_DUMP_VERSION = 1
_DUMP_HEADER = struct.Struct("<4sIQdQ")  # magic, version, N, f_d, seed


@dataclass(frozen=True)
class FadingRealization:
    """One synthesized fading trace with its generating model and seed."""

    h: np.ndarray
    model: PsdModel
    seed: int


@dataclass(frozen=True)
class SimConfig:
    """Plumbing for batch simulation runs.

    input_kind is "pg" (proper Gaussian), ("cm", m_points), or "onoff".
    """

    n_symbols: int = 1024
    n_realizations: int = 100
    seed: int = 0
    input_kind: object = "pg"

    def __post_init__(self):
        if self.n_symbols < 2:
            raise ValueError("n_symbols must be at least 2")
        if self.n_realizations < 1:
            raise ValueError("n_realizations must be positive")


@lru_cache(maxsize=8)
def _embedding_spectrum(model: PsdModel, n: int):
    """Eigenvalues of the circulant embedding of the length-n Toeplitz
    covariance, doubling the embedding until the spectrum is nonnegative
    (cap 8n), then flooring what little negative mass remains."""
    r = np.array([model.autocorr(l) for l in range(4 * n + 1)])
    for m in (2 * n, 4 * n, 8 * n):
        half = m // 2
        c = np.concatenate([r[: half + 1], r[half - 1 : 0 : -1]])
        lam = np.fft.fft(c).real
        if lam.min() >= 0.0:
            return lam, m
    neg = -lam[lam < 0.0].sum()
    if neg > 0.01 * m * r[0]:
        raise ValueError(
            "circulant embedding spectrum has negative mass "
            f"{neg:.3e} (> 1% of trace); a larger embedding is needed"
        )
    return np.maximum(lam, 0.0), m


def _fading_from_spectrum(lam, m, n, rng):
    xi = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / math.sqrt(2.0)
    return (np.fft.ifft(np.sqrt(lam) * xi) * math.sqrt(m))[:n]


@lru_cache(maxsize=4)
def _fading_cholesky_factor(model: PsdModel, n: int):
    cov = ToeplitzCov.from_model(model, n)
    jitter = 1e-12 * model.sigma_h2
    return linalg.cholesky(cov.matrix() + jitter * np.eye(n), lower=True)


def gen_fading(model: PsdModel, n: int, seed, method="embedding") -> FadingRealization:
    """Draw one stationary zero-mean proper Gaussian trace of length n whose
    covariance is the Toeplitz matrix of the model's autocorrelation.

    method "embedding" synthesizes through the circulant spectrum;
    "cholesky" (n <= 2048) factors the covariance directly and serves as an
    independent oracle for the embedding path.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    rng = make_rng(seed, 0)
    if method == "embedding":
        lam, m = _embedding_spectrum(model, n)
        h = _fading_from_spectrum(lam, m, n, rng)
    elif method == "cholesky":
        if n > 2048:
            raise ValueError("cholesky path supports n <= 2048")
        chol = _fading_cholesky_factor(model, n)
        xi = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2.0)
        h = chol @ xi
    else:
        raise ValueError(f"unknown method {method!r}")
    return FadingRealization(h=h, model=model, seed=int(seed))


def gen_fading_batch(model: PsdModel, n: int, count: int, seed, method="embedding") -> np.ndarray:
    """Stack of `count` independent traces shaped (count, n); trace i draws
    from stream (seed, i), so row 0 coincides with gen_fading(model, n, seed)."""
    if count < 1:
        raise ValueError("count must be positive")
    if n < 2:
        raise ValueError("n must be at least 2")
    if method == "embedding":
        lam, m = _embedding_spectrum(model, n)
        return np.stack(
            [_fading_from_spectrum(lam, m, n, make_rng(seed, i)) for i in range(count)]
        )
    if method == "cholesky":
        if n > 2048:
            raise ValueError("cholesky path supports n <= 2048")
        chol = _fading_cholesky_factor(model, n)
        out = np.empty((count, n), dtype=complex)
        for i in range(count):
            rng = make_rng(seed, i)
            xi = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2.0)
            out[i] = chol @ xi
        return out
    raise ValueError(f"unknown method {method!r}")


def simulate_channel(real: FadingRealization, inputs, sigma_n2, seed) -> np.ndarray:
    """Pass `inputs` through the fading trace: y_k = h_k x_k + n_k with
    i.i.d. proper Gaussian noise of variance sigma_n2."""
    sigma_n2 = float(sigma_n2)
    if sigma_n2 < 0:
        raise ValueError("sigma_n2 must be nonnegative")
    x = np.asarray(inputs)
    if x.shape != real.h.shape:
        raise ValueError(f"inputs length {x.shape} does not match fading {real.h.shape}")
    y = real.h * x
    if sigma_n2 > 0.0:
        rng = make_rng(seed, 0)
        noise = (rng.standard_normal(len(x)) + 1j * rng.standard_normal(len(x)))
        y = y + noise * math.sqrt(sigma_n2 / 2.0)
    return y


def empirical_pred_error(model: PsdModel, z: PowerProfile, sigma_n2,
                         n_realizations, seed) -> McEstimate:
    """Empirical one-step prediction error: the analytic LMMSE weights are
    applied to simulated observation vectors, and the squared prediction
    residual is averaged over realizations (stream (seed, i) for the i-th).

    The mean must agree with pred_error_finite at the same arguments.
    """
    sigma_n2 = float(sigma_n2)
    if not sigma_n2 > 0:
        raise ValueError("sigma_n2 must be positive")
    n_realizations = int(n_realizations)
    if n_realizations < 2:
        raise ValueError("need at least 2 realizations")
    horizon = len(z.z) + 1
    if horizon > 2048:
        raise ValueError("horizon must be at most 2048")
    cov = ToeplitzCov.from_model(model, horizon)
    r = np.asarray(cov.lags)
    zz = np.asarray(z.z)
    s = np.sqrt(zz)
    past = horizon - 1
    weights = np.zeros(past)
    if past and zz.any():
        big_r = linalg.toeplitz(r[:past])
        m_sys = (s[:, None] * s[None, :]) * big_r + sigma_n2 * np.eye(past)
        weights = linalg.cho_solve(linalg.cho_factor(m_sys, lower=True), s * r[1:])
    chol = _fading_cholesky_factor(model, horizon)
    errs = np.empty(n_realizations)
    for i in range(n_realizations):
        rng = make_rng(seed, i)
        xi = (rng.standard_normal(horizon) + 1j * rng.standard_normal(horizon)) / math.sqrt(2.0)
        h = chol @ xi
        target = h[-1]
        h_past = h[-2::-1]  # h_past[k] is k+1 steps before the target
        noise = (rng.standard_normal(past) + 1j * rng.standard_normal(past)) * math.sqrt(sigma_n2 / 2.0)
        y = s * h_past + noise
        errs[i] = abs(target - weights @ y) ** 2
    mean = float(errs.mean())
    stderr = math.sqrt(float(errs.var()) / n_realizations)
    return McEstimate(mean=mean, stderr=stderr, n=n_realizations, seed=int(seed))


def empirical_coherent_mi(rho, input_kind, n, seed) -> McEstimate:
    """Coherent mutual information by direct simulation.

    "pg": E log(1 + rho |h|^2/sigma_h2) sampled over the fading magnitude.
    ("cm", m): uniform m-point constant-modulus constellation with the sent
    symbol, fading coefficient, and noise all drawn fresh — an estimator
    independent of the symmetry-reduced one.
    """
    rho = float(rho)
    if rho < 0:
        raise ValueError(f"rho must be nonnegative, got {rho}")
    n = int(n)
    if n < 10_000:
        raise ValueError("need at least 1e4 samples")
    if input_kind == "pg":
        return mc_expectation(
            lambda rng, size: rng.exponential(size=size),
            lambda zs: np.log1p(rho * zs),
            n,
            seed,
        )
    if isinstance(input_kind, tuple) and len(input_kind) == 2 and input_kind[0] == "cm":
        m_points = int(input_kind[1])
        if m_points < 2:
            raise ValueError("need at least 2 constellation points")
        xs = np.exp(2j * math.pi * np.arange(m_points) / m_points)
        logm = math.log(m_points)
        sq = math.sqrt(rho)

        def sampler(rng, size):
            h = (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / math.sqrt(2.0)
            w = (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / math.sqrt(2.0)
            j = rng.integers(0, m_points, size=size)
            return h, w, j

        def integrand(batch):
            h, w, j = batch
            y = sq * h * xs[j] + w
            d2 = np.abs(y[:, None] - sq * h[:, None] * xs[None, :]) ** 2
            return logm - np.abs(w) ** 2 - logsumexp(-d2, axis=1)

        return mc_expectation(sampler, integrand, n, seed, chunk=1 << 14)
    raise ValueError(f"unknown input_kind {input_kind!r}")


def write_fading_dump(path, realizations, model: PsdModel, seed):
    """Write realizations (array shaped (count, N) or a single trace) as
    little-endian interleaved complex64 after a 32-byte header carrying the
    magic "FADE", format version, trace length N, f_d, and the seed."""
    h = np.atleast_2d(np.asarray(realizations))
    n = h.shape[1]
    with open(path, "wb") as fh:
        fh.write(_DUMP_HEADER.pack(_DUMP_MAGIC, _DUMP_VERSION, n, model.f_d, int(seed)))
        fh.write(h.astype(np.complex64).tobytes())


def read_fading_dump(path):
    """Read a fading dump; returns (realizations, meta) where realizations
    is shaped (count, N) — count inferred from the file size — and meta
    holds the header fields."""
    with open(path, "rb") as fh:
        header = fh.read(_DUMP_HEADER.size)
        magic, version, n, f_d, seed = _DUMP_HEADER.unpack(header)
        if magic != _DUMP_MAGIC:
            raise ValueError(f"not a fading dump: bad magic {magic!r}")
        if version != _DUMP_VERSION:
            raise ValueError(f"unsupported dump version {version}")
        payload = fh.read()
    itemsize = np.dtype(np.complex64).itemsize
    if len(payload) % (itemsize * n):
        raise ValueError("truncated fading dump")
    flat = np.frombuffer(payload, dtype=np.complex64)
    meta = {"version": version, "n": int(n), "f_d": float(f_d), "seed": int(seed)}
    return flat.reshape(-1, int(n)), meta
