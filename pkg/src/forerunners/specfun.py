"""Self-contained special functions: integer-order Bessel J and the Faddeeva w.

Bessel sequences come from Miller's downward recurrence normalized with the
even-order sum rule J0 + 2*(J2 + J4 + ...) = 1, which is stable for all
orders up to the start index (upward recurrence is not once n > x).

The Faddeeva function w(z) = exp(-z^2) * erfc(-iz) is evaluated by region:
a Maclaurin series near the origin, a rational (Fourier-tangent) expansion
at intermediate radii, and the Laplace continued fraction far out.  Lower
half-plane arguments go through the reflection w(-z) = 2 exp(-z^2) - w(z)
so the continued fraction is only ever used where it converges.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["BesselSequence", "bessel_j", "bessel_j_seq", "faddeeva_w"]

_RESCALE = 1e250
_INV_RESCALE = 1e-250


@dataclass(frozen=True)
class BesselSequence:
    """J_0(x) .. J_{order_max}(x) for a fixed real argument x >= 0."""

    order_max: int
    argument: float
    values: np.ndarray


def _check_bessel_args(n: int, x: float) -> None:
    if n < 0:
        raise ValueError(f"Bessel order must be non-negative, got {n}")
    if not math.isfinite(x):
        raise ValueError(f"Bessel argument must be finite, got {x}")
    if x < 0:
        raise ValueError(f"Bessel argument must be non-negative, got {x}")


def miller_start_index(n_max: int, x: float) -> int:
    """First recurrence index safely inside the super-exponential decay zone."""
    base = max(n_max, int(math.ceil(x)))
    return base + 12 + int(3.0 * math.sqrt(base + 1.0))


def bessel_j_seq(n_max: int, x: float) -> BesselSequence:
    """All of J_0(x) .. J_{n_max}(x) by normalized downward recurrence."""
    _check_bessel_args(n_max, x)
    if x == 0.0:
        vals = np.zeros(n_max + 1)
        vals[0] = 1.0
        return BesselSequence(n_max, x, vals)
    if x < 1e-8:
        # Recurrence would need a rescale every few steps; one series term
        # per order is already exact to double precision here.
        vals = np.zeros(n_max + 1)
        term = 1.0
        for n in range(n_max + 1):
            vals[n] = term * (1.0 - 0.25 * x * x / (n + 1.0))
            term *= 0.5 * x / (n + 1.0)
            if term == 0.0:
                break
        return BesselSequence(n_max, x, vals)

    m_start = miller_start_index(n_max, x)
    f = np.zeros(m_start + 2)
    f[m_start + 1] = 0.0
    f[m_start] = 1e-30
    for n in range(m_start, 0, -1):
        f[n - 1] = (2.0 * n / x) * f[n] - f[n + 1]
        if abs(f[n - 1]) > _RESCALE:
            f[n - 1 :] *= _INV_RESCALE
    norm = f[0] + 2.0 * f[2::2].sum()
    vals = f[: n_max + 1] / norm
    return BesselSequence(n_max, x, vals)


def bessel_j(n: int, x: float) -> float:
    """J_n(x) for integer n >= 0 and real x >= 0."""
    _check_bessel_args(n, x)
    return float(bessel_j_seq(n, x).values[n])


# --- Faddeeva function ---------------------------------------------------

_SQRT_PI = math.sqrt(math.pi)

# Region radii; validated against the high-precision oracle in the tests.
_R_SERIES = 2.0
_R_CONTFRAC = 8.0
_CF_DEPTH = 32


def _weideman_coefficients(n_terms: int) -> tuple[float, np.ndarray]:
    """Rational-expansion coefficients (Fourier method on a tangent grid)."""
    m = 2 * n_terms
    ell = math.sqrt(n_terms / math.sqrt(2.0))
    k = np.arange(-m + 1, m)
    theta = k * np.pi / m
    t = ell * np.tan(theta / 2.0)
    f = np.concatenate(([0.0], np.exp(-t * t) * (ell * ell + t * t)))
    a = np.real(np.fft.fft(np.fft.fftshift(f))) / (2 * m)
    return ell, a[1 : n_terms + 1][::-1]


_WEIDEMAN_L, _WEIDEMAN_A = _weideman_coefficients(64)


def _w_series(z: complex) -> complex:
    # w(z) = e^{-z^2} + i z * sum_m (-z^2)^m / Gamma(m + 3/2)
    zz = -z * z
    term = 1.0 / (0.5 * _SQRT_PI)  # 1/Gamma(3/2)
    total = term
    m = 0
    while True:
        m += 1
        term *= zz / (m + 0.5)
        total += term
        if abs(term) < 1e-18 * abs(total) or m > 120:
            break
    return cmath.exp(zz) + 1j * z * total


def _w_rational(z: complex) -> complex:
    # Upper half-plane only.
    iz = 1j * z
    zm = _WEIDEMAN_L - iz
    big_z = (_WEIDEMAN_L + iz) / zm
    p = 0.0 + 0.0j
    for a in _WEIDEMAN_A:
        p = p * big_z + a
    return 2.0 * p / (zm * zm) + (1.0 / _SQRT_PI) / zm


def _w_contfrac(z: complex) -> complex:
    # Laplace continued fraction; upper half-plane, |z| large.
    f = z
    for k in range(_CF_DEPTH, 0, -1):
        f = z - (0.5 * k) / f
    return (1j / _SQRT_PI) / f


def _w_upper(z: complex) -> complex:
    r = abs(z)
    if r <= _R_SERIES:
        return _w_series(z)
    if r >= _R_CONTFRAC:
        return _w_contfrac(z)
    return _w_rational(z)


def faddeeva_w(z: complex) -> complex:
    """w(z) = exp(-z^2) erfc(-iz), accurate to ~1e-13 relative for |z| <= 1e3."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"faddeeva_w requires finite argument, got {z}")
    if z.imag >= 0.0:
        return _w_upper(z)
    # Reflect into the upper half-plane; exp(-z^2) may overflow there.
    re_mz2 = z.imag * z.imag - z.real * z.real
    if re_mz2 > 709.0:
        raise OverflowError(
            f"exp(-z^2) overflows in the reflection w(-z)=2exp(-z^2)-w(z) at z={z}"
        )
    return 2.0 * cmath.exp(-z * z) - _w_upper(-z)
