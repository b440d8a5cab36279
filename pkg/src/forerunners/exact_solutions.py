"""Closed-form time-domain solutions for the sharp-onset below-cutoff source.

The relativistic solution inside the light cone is a Bessel series in the
front variables eta = sqrt(t^2 - x^2) and xi = sqrt((t+x)/(t-x)):

    psi = J0(eta) + sum_{n>=1} (-1)^n (i/xi)^n (z+^n + z-^n) J_n(eta),

with z+- = omega0 +- i kappa0 on the unit circle.  The inverse-xi powers
make every term bounded by 2 xi^-n |J_n|, so the series converges for all
t > x; truncation stops after three consecutive terms fall below the
requested tolerance (a single small term may just be a Bessel zero).

The nonrelativistic counterpart is the Faddeeva-function solution

    psi = 1/2 e^{-it} e^{ix^2/(2t)} [w(y_+) + w(y_-)],
    y_{+-} = i e^{-i pi/4} (2t)^{-1/2} (x -+ k0 t).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .dispersion import Dispersion, SourceSpec, kappa0
from .errors import ConvergenceError
from .specfun import bessel_j_seq, faddeeva_w, miller_start_index

__all__ = [
    "SeriesSettings",
    "FrontVariables",
    "WaveSample",
    "front_variables",
    "psi_rel",
    "psi_rel_grid",
    "psi_rel_generating_form",
    "psi_rel_front",
    "psi_rel_front_paper",
    "psi_rel_front_linear",
    "psi_nonrel",
    "psi_nonrel_grid",
    "scale_nonrel",
    "stationary_density",
]


@dataclass(frozen=True)
class SeriesSettings:
    """Truncation control for the relativistic Bessel series."""

    rel_tol: float = 1e-10
    n_max: int = 2000

    def __post_init__(self):
        if not 0.0 < self.rel_tol <= 1e-3:
            raise ValueError(f"rel_tol must lie in (0, 1e-3], got {self.rel_tol}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")


@dataclass(frozen=True)
class FrontVariables:
    """Light-cone variables and the unit-circle pole pair z+- = omega0 +- i kappa0."""

    xi: float
    eta: float
    z_plus: complex
    z_minus: complex


@dataclass(frozen=True)
class WaveSample:
    x: float
    t: float
    amplitude: complex

    @property
    def density(self) -> float:
        return abs(self.amplitude) ** 2


def front_variables(x: float, t: float, src: SourceSpec) -> FrontVariables:
    if not (t > x > 0.0):
        raise ValueError(f"front variables need t > x > 0, got x={x}, t={t}")
    src.require_tunneling()
    k0 = kappa0(src, Dispersion.RELATIVISTIC)
    return FrontVariables(
        xi=math.sqrt((t + x) / (t - x)),
        eta=math.sqrt((t - x) * (t + x)),
        z_plus=complex(src.omega0, k0),
        z_minus=complex(src.omega0, -k0),
    )


# (-i)^n for n mod 4
_MINUS_I_POW = (1.0 + 0.0j, -1.0j, -1.0 + 0.0j, 1.0j)


def _series_order_cap(eta: float, n_max: int) -> int:
    """Orders beyond the Bessel turning point contribute below 1e-17."""
    return min(n_max, int(math.ceil(eta)) + 12 + int(3.0 * math.sqrt(eta + 1.0)))


def psi_rel(x: float, t: float, src: SourceSpec, s: SeriesSettings = SeriesSettings()) -> WaveSample:
    """Exact relativistic wave at one space-time point."""
    if x < 0.0:
        raise ValueError(f"x must be >= 0, got {x}")
    src.require_tunneling()
    if t < x:
        return WaveSample(x, t, 0.0j)
    if t == x:
        return WaveSample(x, t, 1.0 + 0.0j)
    if x == 0.0:
        # xi = 1 exactly: the series telescopes to the boundary value.
        return WaveSample(x, t, cmath.exp(-1j * src.omega0 * t))

    fv = front_variables(x, t, src)
    theta = math.atan2(fv.z_plus.imag, fv.z_plus.real)
    cap = _series_order_cap(fv.eta, s.n_max)
    seq = bessel_j_seq(cap, fv.eta).values

    total = complex(seq[0])
    inv_xi = 1.0 / fv.xi
    pw = 1.0
    streak = 0
    for n in range(1, cap + 1):
        pw *= inv_xi
        jn = seq[n]
        total += _MINUS_I_POW[n % 4] * (2.0 * math.cos(n * theta) * pw * jn)
        if 2.0 * pw * abs(jn) < s.rel_tol * abs(total):
            streak += 1
            if streak >= 3:
                return WaveSample(x, t, total)
        else:
            streak = 0
    if cap < s.n_max:
        # Turning-point cap reached: remaining terms are below double precision.
        return WaveSample(x, t, total)
    raise ConvergenceError(
        f"series cap n_max={s.n_max} reached at x={x}, t={t} "
        f"(last term bound {2.0 * pw * abs(seq[cap]):.3e})",
        last_term=2.0 * pw * abs(seq[cap]),
    )


def _bessel_rows(eta: np.ndarray, n_need: np.ndarray, n_rows: int) -> np.ndarray:
    """J_n(eta_i) for n = 0..n_rows, columns = points; vectorized Miller recurrence.

    Each column is seeded just above its own highest useful order (n_need),
    so short columns never recurse through the huge unnormalized magnitudes
    a start at the global cap would produce.
    """
    npts = eta.size
    starts = np.array(
        [miller_start_index(int(n), e) for n, e in zip(n_need, eta)]
    )
    m_top = int(starts.max())
    f = np.zeros((m_top + 2, npts))
    cols = np.arange(npts)
    f[starts, cols] = 1e-30
    for n in range(m_top, 0, -1):
        active = starts >= n
        f[n - 1, active] = (2.0 * n / eta[active]) * f[n, active] - f[n + 1, active]
    norm = f[0] + 2.0 * f[2:m_top + 1:2].sum(axis=0)
    return f[: n_rows + 1] / norm


def psi_rel_grid(
    x: float,
    times: np.ndarray,
    src: SourceSpec,
    s: SeriesSettings = SeriesSettings(),
) -> np.ndarray:
    """Exact relativistic amplitudes on a grid of times at fixed x > 0.

    Matches :func:`psi_rel` pointwise (same truncation rule); points closer
    to the front than eta = 1 fall back to the scalar path.
    """
    if x < 0.0:
        raise ValueError(f"x must be >= 0, got {x}")
    src.require_tunneling()
    times = np.asarray(times, dtype=float)
    out = np.zeros(times.shape, dtype=complex)
    out[times == x] = 1.0
    if x == 0.0:
        m = times > 0.0
        out[m] = np.exp(-1j * src.omega0 * times[m])
        return out

    eta_all = np.where(times > x, np.sqrt(np.maximum((times - x) * (times + x), 0.0)), 0.0)
    scalar_mask = (times > x) & (eta_all < 1.0)
    for i in np.nonzero(scalar_mask)[0]:
        out[i] = psi_rel(x, float(times[i]), src, s).amplitude

    m = (times > x) & ~scalar_mask
    if not m.any():
        return out
    t = times[m]
    eta = eta_all[m]
    xi = np.sqrt((t + x) / (t - x))
    k0 = kappa0(src, Dispersion.RELATIVISTIC)
    theta = math.atan2(k0, src.omega0)

    per_point_cap = np.minimum(
        np.ceil(eta).astype(int) + 12 + np.ceil(3.0 * np.sqrt(eta + 1.0)).astype(int),
        s.n_max,
    )
    cap = _series_order_cap(float(eta.max()), s.n_max)
    rows = _bessel_rows(eta, per_point_cap, cap)

    total = rows[0].astype(complex)
    pw = np.ones_like(eta)
    inv_xi = 1.0 / xi
    streak = np.zeros(eta.shape, dtype=int)
    frozen = np.zeros(eta.shape, dtype=bool)
    for n in range(1, cap + 1):
        pw *= inv_xi
        jn = rows[n]
        live = ~frozen
        total[live] += _MINUS_I_POW[n % 4] * (2.0 * math.cos(n * theta)) * pw[live] * jn[live]
        small = 2.0 * pw * np.abs(jn) < s.rel_tol * np.abs(total)
        streak = np.where(small & live, streak + 1, np.where(live, 0, streak))
        frozen |= streak >= 3
        frozen |= n >= per_point_cap
        if frozen.all():
            break
    unconverged = (~(streak >= 3)) & (per_point_cap >= s.n_max)
    if unconverged.any():
        i = int(np.nonzero(unconverged)[0][0])
        raise ConvergenceError(
            f"series cap n_max={s.n_max} reached for {int(unconverged.sum())} grid "
            f"points (first at t={t[i]})",
            last_term=float(2.0 * pw[i] * abs(rows[-1][i])),
        )
    out[m] = total
    return out


def psi_rel_generating_form(
    x: float, t: float, src: SourceSpec, rel_tol: float = 1e-10, n_max: int = 20000
) -> complex:
    """Equivalent form with growing xi^n powers; retained as a cross-check only.

    psi(x, +-k0, t) = e^{+-i k0 x - i omega0 t} - 1/2 J0 - sum_{n>=1}(xi/iz_+-)^n J_n.
    Terms grow like xi^n until the Bessel decay takes over, so this form is
    numerically wasteful near the front; the inverse-xi series is production.
    """
    src.require_tunneling()
    if t < x:
        return 0.0j
    if t == x:
        return 1.0 + 0.0j
    fv = front_variables(x, t, src)
    k0c = complex(0.0, kappa0(src, Dispersion.RELATIVISTIC))
    carrier = cmath.exp(-1j * src.omega0 * t)
    total = carrier * (cmath.exp(1j * k0c * x) + cmath.exp(-1j * k0c * x))
    # The growing xi^n factor delays convergence past the Bessel turning
    # point; extend the order cap accordingly and refuse once xi^n overflows.
    ln_xi = math.log(fv.xi)
    cap = min(n_max, _series_order_cap(fv.eta, n_max) + 12 + int(30.0 * ln_xi))
    if cap * ln_xi > 690.0:
        raise ConvergenceError(
            f"generating-form series overflows this close to the front (xi={fv.xi:.3g})",
            last_term=float("inf"),
        )
    seq = bessel_j_seq(cap, fv.eta).values
    total -= seq[0]
    rp = fv.xi / (1j * fv.z_plus)
    rm = fv.xi / (1j * fv.z_minus)
    pp = pm = 1.0 + 0.0j
    for n in range(1, cap + 1):
        pp *= rp
        pm *= rm
        total -= (pp + pm) * seq[n]
    tail = (abs(pp) + abs(pm)) * abs(seq[cap])
    if tail > rel_tol * max(abs(total), 1e-30):
        raise ConvergenceError(
            f"generating-form series not converged at x={x}, t={t}", last_term=tail
        )
    return total


def psi_rel_front(x: float, t: float, src: SourceSpec) -> complex:
    """First-order front approximation J0(eta) - 2i omega0 J1(eta)/xi."""
    src.require_tunneling()
    if not t >= x or x <= 0.0:
        raise ValueError(f"front approximation needs t >= x > 0, got x={x}, t={t}")
    if t == x:
        return 1.0 + 0.0j
    fv = front_variables(x, t, src)
    seq = bessel_j_seq(1, fv.eta).values
    return seq[0] - 2.0j * src.omega0 * seq[1] / fv.xi


def psi_rel_front_paper(x: float, t: float, src: SourceSpec) -> complex:
    """Front approximation in its printed variant J0(eta) - 2i(omega0/eta) J1(eta).

    At the front this tends to 1 - i omega0 (density 1 + omega0^2), unlike the
    exact series which reaches unit density; shipped for documentation parity
    and excluded from acceptance.
    """
    src.require_tunneling()
    if not t >= x or x <= 0.0:
        raise ValueError(f"front approximation needs t >= x > 0, got x={x}, t={t}")
    if t == x:
        return 1.0 - 1.0j * src.omega0
    fv = front_variables(x, t, src)
    seq = bessel_j_seq(1, fv.eta).values
    return seq[0] - 2.0j * (src.omega0 / fv.eta) * seq[1]


def psi_rel_front_linear(x: float, t: float, src: SourceSpec) -> complex:
    """Linear front expansion psi ~ 1 - (t-x)[(t+x)/4 + i omega0].

    Density decays from 1 with slope -(t+x)/2, independent of omega0 to
    first order.
    """
    src.require_tunneling()
    return 1.0 - (t - x) * ((t + x) / 4.0 + 1j * src.omega0)


_E_IPI4 = cmath.exp(1j * math.pi / 4.0)  # i e^{-i pi/4}


def _w_arguments(x: float, t: float, src: SourceSpec) -> tuple[complex, complex]:
    k0 = complex(0.0, kappa0(src, Dispersion.NONRELATIVISTIC))
    pref = _E_IPI4 / math.sqrt(2.0 * t)
    return pref * (x - k0 * t), pref * (x + k0 * t)


def psi_nonrel(x: float, t: float, src: SourceSpec) -> WaveSample:
    """Exact Schroedinger solution via the Faddeeva function."""
    if x < 0.0:
        raise ValueError(f"x must be >= 0, got {x}")
    src.require_tunneling()
    if t <= 0.0:
        return WaveSample(x, t, 0.0j)
    yp, ym = _w_arguments(x, t, src)
    amp = 0.5 * cmath.exp(-1j * t) * cmath.exp(1j * x * x / (2.0 * t)) * (
        faddeeva_w(yp) + faddeeva_w(ym)
    )
    return WaveSample(x, t, amp)


def psi_nonrel_grid(x: float, times: np.ndarray, src: SourceSpec) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    out = np.zeros(times.shape, dtype=complex)
    for i, t in enumerate(times):
        if t > 0.0:
            out[i] = psi_nonrel(x, float(t), src).amplitude
    return out


def scale_nonrel(
    x: float, t: float, Omega0: float, alpha: float
) -> tuple[float, float, float]:
    """Similarity map (x, t, Omega0) -> (sqrt(alpha) x, alpha t, Omega0/alpha).

    Omega0 = omega0 - 1 is the carrier frequency counted from cutoff; the
    map sends any below-cutoff Schroedinger solution onto any other.
    """
    if not alpha > 0.0:
        raise ValueError(f"scale factor must be positive, got {alpha}")
    return math.sqrt(alpha) * x, alpha * t, Omega0 / alpha


def stationary_density(x: float, src: SourceSpec, d: Dispersion) -> float:
    """Late-time density exp(-2 kappa0 x); same form for both equations."""
    if x < 0.0:
        raise ValueError(f"x must be >= 0, got {x}")
    return math.exp(-2.0 * kappa0(src, d) * x)
