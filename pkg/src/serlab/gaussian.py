"""Closed-form Gaussian machinery.

Tail probability Q, noise-ball masses via the regularized incomplete gamma
function, the universal bound constants attached to each dimension, and the
small log-concavity/log-convexity toolkit used by the test suites.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special


SQRT_2PI = math.sqrt(2.0 * math.pi)


def q(x):
    """Gaussian tail probability Q(x) = Pr[N(0,1) > x].

    Computed through erfc; relative error is at machine level (< 1e-14)
    for |x| <= 8 and stays accurate far into the tail.
    """
    return 0.5 * special.erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))


def gaussian_pdf(x):
    """Standard normal density."""
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / SQRT_2PI


def sphere_mass(n: int, gamma: float, radius) -> float | np.ndarray:
    """Probability that an n-dim Gaussian noise vector at SNR gamma lands
    inside the ball of the given radius.

    Equals the regularized lower incomplete gamma P(n/2, gamma*R^2/2);
    monotone in R from 0 to 1.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if gamma <= 0:
        raise ValueError(f"snr must be > 0, got {gamma}")
    radius = np.asarray(radius, dtype=float)
    if np.any(radius < 0):
        raise ValueError("radius must be >= 0")
    return special.gammainc(n / 2.0, gamma * radius * radius / 2.0)


@dataclass(frozen=True)
class BoundConstants:
    """Dimension-only constants driving the universal derivative bounds and
    curvature-sign thresholds.

    The *_root_* values are the indicator-weight roots in |z|^2 (z the
    whitened noise): SNR curvature roots n +/- sqrt(2n), noise-power
    curvature roots n+2 +/- sqrt(2(n+2)), amplitude roots
    (2n+1 +/- sqrt(8n+1))/2.  first_derivative_scale bounds |dSER/dSNR|
    by scale/gamma; the curvature entries bound d2SER/dSNR2 by
    [lower, upper]/gamma^2 and the noise-power analogue by
    [lower, upper]/P_N^2.
    """

    dimension: int
    first_derivative_scale: float          # (n/2)^(n/2) e^(-n/2) / Gamma(n/2)
    snr_curvature_upper: float
    snr_curvature_lower: float             # 0 for n <= 2, negative above
    noise_curvature_upper: float
    noise_curvature_lower: float           # negative for every n >= 1
    snr_root_high: float                   # n + sqrt(2n)
    snr_root_low: float                    # n - sqrt(2n), <= 0 for n <= 2
    noise_root_high: float                 # n + 2 + sqrt(2(n+2))
    noise_root_low: float                  # n + 2 - sqrt(2(n+2)), always > 0
    amplitude_root_high: float             # (2n+1+sqrt(8n+1))/2
    amplitude_root_low: float              # (2n+1-sqrt(8n+1))/2, 0 at n=1
    snr_curvature_gain_high: float         # (2+sqrt(2n))/2
    snr_curvature_gain_low: float          # (2-sqrt(2n))/2


def _chi2_mode_mass(a: float, y: float) -> float:
    """y^a e^(-y) / Gamma(a), evaluated in the log domain."""
    if y <= 0.0:
        return 0.0
    return math.exp(a * math.log(y) - y - special.gammaln(a))


def bound_constants(n: int) -> BoundConstants:
    """All universal bound constants for dimension n."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    nf = float(n)
    a = nf / 2.0

    c_n = _chi2_mode_mass(a, a)

    snr_hi = nf + math.sqrt(2.0 * nf)
    snr_lo = nf - math.sqrt(2.0 * nf)
    gain_hi = (2.0 + math.sqrt(2.0 * nf)) / 2.0
    gain_lo = (2.0 - math.sqrt(2.0 * nf)) / 2.0
    # Curvature extrema sit at whitened radius^2 = snr roots; the weight at
    # the extremum is gain_hi (resp. gain_lo).  The lower extremum only
    # exists once the low root is positive (n > 2).
    upper = gain_hi * _chi2_mode_mass(a, snr_hi / 2.0)
    lower = 0.0 if gain_lo >= 0.0 else gain_lo * _chi2_mode_mass(a, snr_lo / 2.0)

    noise_hi = nf + 2.0 + math.sqrt(2.0 * (nf + 2.0))
    noise_lo = nf + 2.0 - math.sqrt(2.0 * (nf + 2.0))
    w = math.sqrt((nf + 2.0) / 2.0)
    b_u = w * _chi2_mode_mass(a, noise_hi / 2.0)
    b_l = -w * _chi2_mode_mass(a, noise_lo / 2.0)

    amp_hi = (2.0 * nf + 1.0 + math.sqrt(8.0 * nf + 1.0)) / 2.0
    amp_lo = (2.0 * nf + 1.0 - math.sqrt(8.0 * nf + 1.0)) / 2.0

    return BoundConstants(
        dimension=n,
        first_derivative_scale=c_n,
        snr_curvature_upper=upper,
        snr_curvature_lower=lower,
        noise_curvature_upper=b_u,
        noise_curvature_lower=b_l,
        snr_root_high=snr_hi,
        snr_root_low=snr_lo,
        noise_root_high=noise_hi,
        noise_root_low=noise_lo,
        amplitude_root_high=amp_hi,
        amplitude_root_low=amp_lo,
        snr_curvature_gain_high=gain_hi,
        snr_curvature_gain_low=gain_lo,
    )


def qsqrt_log_second_derivative(gamma):
    """Second derivative of ln Q(sqrt(gamma)); non-negative everywhere
    (Q(sqrt(.)) is log-convex on gamma > 0).

    Closed form:
        e^(-g/2) / (4 sqrt(2 pi) Q(sqrt g)^2) * (g+1)/(g sqrt g)
            * (Q(sqrt g) - sqrt(g) e^(-g/2) / (sqrt(2 pi)(1+g)))
    """
    g = np.asarray(gamma, dtype=float)
    if np.any(g <= 0):
        raise ValueError("gamma must be > 0")
    r = np.sqrt(g)
    qg = q(r)
    bracket = qg - r * np.exp(-g / 2.0) / (SQRT_2PI * (1.0 + g))
    out = (np.exp(-g / 2.0) / (4.0 * SQRT_2PI * qg * qg)
           * (g + 1.0) / (g * r) * bracket)
    if out.ndim == 0:
        return float(out)
    return out


def q_bound_31_margin(x):
    """Q(x) minus its classical lower bound x e^(-x^2/2)/(sqrt(2 pi)(1+x^2));
    non-negative for x >= 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("x must be >= 0")
    out = q(x) - x * np.exp(-0.5 * x * x) / (SQRT_2PI * (1.0 + x * x))
    if out.ndim == 0:
        return float(out)
    return out


def log_concavity_margin(f, x1: float, x2: float) -> float:
    """Midpoint log-concavity margin ln f(mid) - (ln f(x1) + ln f(x2))/2.

    >= 0 means the pair is consistent with log-concavity, <= 0 with
    log-convexity.  f must be strictly positive at both points and the
    midpoint.
    """
    xm = 0.5 * (x1 + x2)
    vals = np.array([f(x1), f(x2), f(xm)], dtype=float)
    if np.any(vals <= 0.0):
        raise ValueError("function must be strictly positive on the tested points")
    return float(math.log(vals[2]) - 0.5 * (math.log(vals[0]) + math.log(vals[1])))


def midpoint_convexity_margin(f, x1: float, x2: float) -> float:
    """(f(x1)+f(x2))/2 - f(mid); >= 0 on convex functions."""
    return float(0.5 * (f(x1) + f(x2)) - f(0.5 * (x1 + x2)))
