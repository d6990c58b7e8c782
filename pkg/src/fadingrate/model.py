"""Channel parameterization and fading spectral models.

The channel is a stationary Rayleigh flat-fading link y_k = h_k x_k + n_k
whose zero-mean proper Gaussian fading process is described by a symmetric,
compactly supported power spectral density S_h(f) on the normalized
frequency interval [-1/2, 1/2].  Bandlimitation to |f| <= f_d < 1/2 puts
the process in the nonregular regime: the one-step prediction error
vanishes as the observation SNR grows.

Autocorrelation functions r_h(l) are the inverse Fourier transforms of the
densities and carry the total power r_h(0) = sigma_h2.  All rates derived
from these models elsewhere in the package are in nats per channel use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

__all__ = [
    "ChannelParams",
    "PsdModel",
    "Rectangular",
    "Jakes",
    "RaisedCosine",
    "Tabulated",
    "psd_eval",
    "autocorr",
    "spectral_l2",
    "integrated_power",
]

# Adaptive quadrature settings shared by the spectral integrals below.
_QUAD_OPTS = dict(epsabs=1e-13, epsrel=1e-13, limit=400)


def _check_freq(f):
    f = float(f)
    if not -0.5 <= f <= 0.5:
        raise ValueError(f"frequency {f} outside [-1/2, 1/2]")
    return abs(f)


def _check_power(sigma_h2):
    if not sigma_h2 > 0:
        raise ValueError(f"sigma_h2 must be positive, got {sigma_h2}")


def _check_doppler(f_d):
    if not 0.0 < f_d < 0.5:
        raise ValueError(f"f_d must lie in (0, 0.5), got {f_d}")


@dataclass(frozen=True)
class ChannelParams:
    """Operating point of the fading channel.

    Attributes
    ----------
    sigma_h2 : float
        Fading power E|h_k|^2 (> 0).
    sigma_n2 : float
        Additive noise power (> 0).
    sigma_x2 : float
        Maximum average input power (>= 0; zero is the noise-only edge
        case used by limit checks).
    f_d : float
        Normalized maximum Doppler frequency, 0 < f_d < 1/2.
    """

    sigma_h2: float = 1.0
    sigma_n2: float = 1.0
    sigma_x2: float = 1.0
    f_d: float = 0.1

    def __post_init__(self):
        if not self.sigma_h2 > 0 or not self.sigma_n2 > 0:
            raise ValueError("sigma_h2 and sigma_n2 must be positive")
        if self.sigma_x2 < 0:
            raise ValueError("sigma_x2 must be nonnegative")
        _check_doppler(self.f_d)

    @property
    def rho(self) -> float:
        """Average SNR sigma_x2 * sigma_h2 / sigma_n2 (recomputed, never stored)."""
        return self.sigma_x2 * self.sigma_h2 / self.sigma_n2

    def with_power(self, sigma_x2) -> "ChannelParams":
        """Same channel with a different average input power."""
        return ChannelParams(self.sigma_h2, self.sigma_n2, sigma_x2, self.f_d)


class PsdModel:
    """Base class for symmetric compact-support spectral densities.

    Subclasses provide point evaluation ``psd``, the autocorrelation
    ``autocorr`` and the spectral functional ``transform`` which integrates
    phi(S_h(f)) over one frequency period.  ``transform`` is the single
    integration entry point that the Szego-type functionals build on.
    """

    sigma_h2: float
    f_d: float

    @property
    def support_edge(self) -> float:
        """Largest |f| carrying power."""
        return self.f_d

    def psd(self, f):
        raise NotImplementedError

    def autocorr(self, lag):
        raise NotImplementedError

    def transform(self, phi):
        raise NotImplementedError

    def spectral_l2(self):
        """Integral of the squared density over one period."""
        return self.transform(lambda s: s * s)


@dataclass(frozen=True)
class Rectangular(PsdModel):
    """Flat density sigma_h2/(2 f_d) on |f| <= f_d, zero elsewhere."""

    f_d: float
    sigma_h2: float = 1.0

    def __post_init__(self):
        _check_doppler(self.f_d)
        _check_power(self.sigma_h2)

    def psd(self, f):
        fa = _check_freq(f)
        return self.sigma_h2 / (2.0 * self.f_d) if fa <= self.f_d else 0.0

    def autocorr(self, lag):
        return self.sigma_h2 * float(np.sinc(2.0 * self.f_d * lag))

    def transform(self, phi):
        height = self.sigma_h2 / (2.0 * self.f_d)
        return 2.0 * self.f_d * phi(height) + (1.0 - 2.0 * self.f_d) * phi(0.0)


@dataclass(frozen=True)
class Jakes(PsdModel):
    """Dense-scatterer density sigma_h2 / (pi sqrt(f_d^2 - f^2)) on |f| < f_d.

    The inverse-square-root band-edge singularities are integrable.  All
    integrals against this density substitute f = f_d sin(theta), which
    removes the singularity exactly; point evaluation clamps |f| at
    f_d - 1e-12 so queries at the edge stay finite.
    """

    f_d: float
    sigma_h2: float = 1.0

    def __post_init__(self):
        _check_doppler(self.f_d)
        _check_power(self.sigma_h2)

    def _edge(self):
        pad = 1e-12 if self.f_d > 2e-12 else 0.5 * self.f_d
        return self.f_d - pad

    def psd(self, f):
        fa = _check_freq(f)
        if fa > self.f_d:
            return 0.0
        fa = min(fa, self._edge())
        return self.sigma_h2 / (math.pi * math.sqrt(self.f_d**2 - fa**2))

    def autocorr(self, lag):
        # inverse transform via the sine substitution:
        # r(l) = sigma_h2 * (2/pi) * int_0^{pi/2} cos(2 pi f_d l sin t) dt
        x = 2.0 * math.pi * self.f_d * abs(float(lag))
        val, _ = integrate.quad(
            lambda t: math.cos(x * math.sin(t)), 0.0, math.pi / 2.0, **_QUAD_OPTS
        )
        return self.sigma_h2 * (2.0 / math.pi) * val

    def transform(self, phi):
        fd = self.f_d
        s2 = self.sigma_h2

        def integrand(theta):
            c = math.cos(theta)
            if c <= 0.0:
                return 0.0
            return phi(s2 / (math.pi * fd * c)) * fd * c

        val, _ = integrate.quad(integrand, 0.0, math.pi / 2.0, **_QUAD_OPTS)
        return 2.0 * val + (1.0 - 2.0 * fd) * phi(0.0)

    def spectral_l2(self):
        raise ValueError(
            "spectral_l2 diverges for the Jakes density: the squared "
            "inverse-square-root band edges are not integrable"
        )


@dataclass(frozen=True)
class RaisedCosine(PsdModel):
    """Raised-cosine density: flat up to (1-beta_ro) f_d, sinusoidal roll-off
    until (1+beta_ro) f_d, zero beyond.

    Approximates the rectangular density as beta_ro -> 0 while keeping the
    autocorrelation absolutely summable for any beta_ro > 0, which is what
    the prediction-horizon convergence checks rely on.
    """

    f_d: float
    beta_ro: float
    sigma_h2: float = 1.0

    def __post_init__(self):
        _check_doppler(self.f_d)
        _check_power(self.sigma_h2)
        if not 0.0 < self.beta_ro <= 1.0:
            raise ValueError(f"beta_ro must lie in (0, 1], got {self.beta_ro}")
        if (1.0 + self.beta_ro) * self.f_d >= 0.5:
            raise ValueError(
                "roll-off exceeds the frequency period: need (1+beta_ro)*f_d < 0.5"
            )

    @property
    def support_edge(self):
        return (1.0 + self.beta_ro) * self.f_d

    def psd(self, f):
        fa = _check_freq(f)
        lo = (1.0 - self.beta_ro) * self.f_d
        hi = (1.0 + self.beta_ro) * self.f_d
        if fa <= lo:
            return self.sigma_h2 / (2.0 * self.f_d)
        if fa <= hi:
            s = math.sin(math.pi * (fa - self.f_d) / (2.0 * self.beta_ro * self.f_d))
            return self.sigma_h2 / (4.0 * self.f_d) * (1.0 - s)
        return 0.0

    def autocorr(self, lag):
        # closed form sinc(2 f_d l) * cos(2 pi beta_ro f_d l) / (1 - (4 beta_ro f_d l)^2),
        # rewritten with u = 4 beta_ro f_d |l| as (pi/2) sinc((1-u)/2) / (1+u)
        # so the removable singularity at u = 1 never divides by zero.
        u = 4.0 * self.beta_ro * self.f_d * abs(float(lag))
        taper = (math.pi / 2.0) * float(np.sinc((1.0 - u) / 2.0)) / (1.0 + u)
        return self.sigma_h2 * float(np.sinc(2.0 * self.f_d * lag)) * taper

    def transform(self, phi):
        lo = (1.0 - self.beta_ro) * self.f_d
        hi = (1.0 + self.beta_ro) * self.f_d
        flat = 2.0 * lo * phi(self.sigma_h2 / (2.0 * self.f_d))
        roll, _ = integrate.quad(lambda f: phi(self.psd(f)), lo, hi, **_QUAD_OPTS)
        return flat + 2.0 * roll + (1.0 - 2.0 * hi) * phi(0.0)


@lru_cache(maxsize=4)
def _leggauss(order):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, weights


@dataclass(frozen=True)
class Tabulated(PsdModel):
    """Piecewise-linear symmetric density given on a frequency grid.

    The grid must be strictly increasing, symmetric about zero, and lie in
    [-1/2, 1/2]; values must be nonnegative and symmetric.  Values are
    renormalized on construction so the (trapezoid) integral equals
    sigma_h2 exactly.  Outside the grid the density is zero, and the grid
    extent is treated as the band edge f_d.
    """

    freqs: tuple
    values: tuple
    sigma_h2: float = 1.0

    def __post_init__(self):
        _check_power(self.sigma_h2)
        f = np.asarray(self.freqs, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if f.ndim != 1 or f.shape != v.shape or len(f) < 2:
            raise ValueError("freqs and values must be equal-length 1-D grids (>= 2 points)")
        if np.any(np.diff(f) <= 0):
            raise ValueError("frequency grid must be strictly increasing")
        if f[0] < -0.5 or f[-1] > 0.5:
            raise ValueError("frequency grid must lie inside [-1/2, 1/2]")
        if np.any(v < 0):
            raise ValueError("density values must be nonnegative")
        if not np.allclose(f, -f[::-1], atol=1e-12):
            raise ValueError("frequency grid must be symmetric about zero")
        if not np.allclose(v, v[::-1], rtol=1e-9, atol=0.0):
            raise ValueError("density values must be symmetric")
        total = float(integrate.trapezoid(v, f))
        if total <= 0:
            raise ValueError("density integrates to zero")
        v = v * (self.sigma_h2 / total)
        object.__setattr__(self, "freqs", tuple(float(x) for x in f))
        object.__setattr__(self, "values", tuple(float(x) for x in v))
        object.__setattr__(self, "_f", f)
        object.__setattr__(self, "_v", v)

    @property
    def f_d(self):
        return max(abs(self._f[0]), abs(self._f[-1]))

    @property
    def support_edge(self):
        return self.f_d

    def psd(self, f):
        fa = _check_freq(f)
        return float(np.interp(fa, self._f, self._v, left=0.0, right=0.0))

    def autocorr(self, lag):
        f, v = self._f, self._v
        lag = abs(float(lag))
        if lag == 0.0:
            return float(integrate.trapezoid(v, f))
        # exact segment-wise transform of the piecewise-linear density:
        # int (a + b f) cos(w f) df with w = 2 pi lag
        w = 2.0 * math.pi * lag
        f0, f1 = f[:-1], f[1:]
        v0, v1 = v[:-1], v[1:]
        b = (v1 - v0) / (f1 - f0)
        term = (v1 * np.sin(w * f1) - v0 * np.sin(w * f0)) / w
        term += b * (np.cos(w * f1) - np.cos(w * f0)) / w**2
        return float(np.sum(term))

    def transform(self, phi):
        f, v = self._f, self._v
        nodes, weights = _leggauss(48)
        total = (1.0 - (f[-1] - f[0])) * phi(0.0)
        for k in range(len(f) - 1):
            half = 0.5 * (f[k + 1] - f[k])
            mid = 0.5 * (f[k + 1] + f[k])
            x = mid + half * nodes
            sv = np.interp(x, f, v)
            total += half * float(np.dot(weights, [phi(s) for s in sv]))
        return total


def psd_eval(model, f):
    """Spectral density of `model` at normalized frequency f in [-1/2, 1/2]."""
    return model.psd(f)


def autocorr(model, lag):
    """Autocorrelation r_h(lag) of the fading process described by `model`."""
    return model.autocorr(lag)


def spectral_l2(model):
    """Integral of the squared spectral density (diverges for Jakes)."""
    return model.spectral_l2()


def integrated_power(model):
    """Numerically integrated total power; should equal model.sigma_h2."""
    return model.transform(lambda s: s)
