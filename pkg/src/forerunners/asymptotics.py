"""Large-x saddle-pole asymptotics of the relativistic transient.

The field splits into a pole term (the stationary evanescent wave, switched
on at the traversal time tau = x/kappa0) and two saddle contributions
oscillating at the instantaneous frequencies +-omega_s = +-t/eta:

    psi_p   = Theta(t - tau) e^{-kappa0 x} e^{-i omega0 t}
    psi_s^+ = +i e^{-i pi/4} sqrt(x^2 / (2 pi eta^3)) e^{-i eta} / (omega_s - omega0)
    psi_s^- = -i e^{+i pi/4} sqrt(x^2 / (2 pi eta^3)) e^{+i eta} / (omega_s + omega0)

The normalization carries a 1/sqrt(eta) relative to sqrt(x^2/(2 pi t^2)) and
the negative-saddle term a relative minus sign; both are fixed by the exact
closed-form interference density below (and checked against the Bessel
series), which this decomposition reproduces to roundoff.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .dispersion import Dispersion, SourceSpec, kappa0, traversal_time
from .errors import HorizonError

__all__ = [
    "SaddleParts",
    "EnvelopeExtrema",
    "ExtremumTime",
    "saddle_frequency",
    "sdp_contour",
    "psi_saddle",
    "validity_margins",
    "pole_saddle_ratio",
    "transient_time_paper",
    "transient_time_numeric",
    "density_saddle",
    "oscillation_amplitude",
    "density_envelopes",
    "envelope_extremum_times",
    "omega_av_saddle",
]

_SQRT_EXP = {  # sqrt(-i), sqrt(+i) on the principal branch
    "+": cmath.exp(-1j * math.pi / 4.0),
    "-": cmath.exp(1j * math.pi / 4.0),
}


@dataclass(frozen=True)
class SaddleParts:
    pole: complex
    saddle_plus: complex
    saddle_minus: complex

    @property
    def total(self) -> complex:
        return self.pole + self.saddle_plus + self.saddle_minus


@dataclass(frozen=True)
class ExtremumTime:
    """One envelope extremum time in units of tau, with a feasibility flag."""

    value: float | None
    feasible: bool
    reason: str = ""


@dataclass(frozen=True)
class EnvelopeExtrema:
    t_max_xL: ExtremumTime
    t_max_tL: ExtremumTime
    t_max_tU: ExtremumTime
    t_min_tU: ExtremumTime
    t_max_xU: ExtremumTime
    t_min_xU: ExtremumTime

    def as_dict(self) -> dict:
        return {
            name: {"value": e.value, "feasible": e.feasible, "reason": e.reason}
            for name, e in self.__dict__.items()
        }


def _require_inside_cone(x: float, t: float) -> None:
    if not (t > x > 0.0):
        raise ValueError(f"saddle formulas need t > x > 0, got x={x}, t={t}")


def saddle_frequency(x: float, t: float) -> float:
    """omega_s = t / sqrt(t^2 - x^2) > 1; both saddles sit at +-omega_s."""
    _require_inside_cone(x, t)
    return t / math.sqrt(t * t - x * x)


def sdp_contour(x: float, t: float, n_samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Steepest-descent paths through +-omega_s, sampled between their asymptotes.

    Returns two polylines of complex omega points.  Each crosses the real
    axis at (+-omega_s, +-1/omega_s); the asymptotes sit at
    +-[omega_s +- sqrt(omega_s^2 - 1)].
    """
    if n_samples < 3:
        raise ValueError(f"need at least 3 samples, got {n_samples}")
    ws = saddle_frequency(x, t)
    half_span = math.sqrt(ws * ws - 1.0)

    def branch(sign: float) -> np.ndarray:
        lo, hi = sign * ws - half_span, sign * ws + half_span
        inset = 1e-9 * (hi - lo)
        wr = np.linspace(lo + inset, hi - inset, n_samples)
        # Force exact real-axis crossings into the sample set.
        wr = np.sort(np.unique(np.concatenate([wr, [sign * ws, sign / ws]])))
        radicand = (ws * ws - 1.0) * (-wr * wr + sign * 2.0 * wr * ws - 1.0)
        ok = radicand > 0.0
        wi = np.zeros_like(wr)
        wi[ok] = (
            -(sign * wr[ok] * ws - 1.0) * (sign * wr[ok] - ws) / np.sqrt(radicand[ok])
        )
        crossing = (wr == sign * ws) | (wr == sign / ws)
        wi[crossing] = 0.0
        return (wr + 1j * wi)[ok | crossing]

    return branch(+1.0), branch(-1.0)


def psi_saddle(x: float, t: float, src: SourceSpec) -> SaddleParts:
    """Pole plus two-saddle decomposition; Theta(0) = 1 at t = tau."""
    _require_inside_cone(x, t)
    src.require_tunneling()
    k0 = kappa0(src, Dispersion.RELATIVISTIC)
    tau = x / k0
    eta = math.sqrt(t * t - x * x)
    ws = t / eta
    amp = math.sqrt(x * x / (2.0 * math.pi * eta ** 3))
    plus = 1j * _SQRT_EXP["+"] * amp / (ws - src.omega0) * cmath.exp(-1j * eta)
    minus = -1j * _SQRT_EXP["-"] * amp / (ws + src.omega0) * cmath.exp(1j * eta)
    pole = 0.0j
    if t >= tau:
        pole = math.exp(-k0 * x) * cmath.exp(-1j * src.omega0 * t)
    return SaddleParts(pole=pole, saddle_plus=plus, saddle_minus=minus)


def validity_margins(x: float, src: SourceSpec) -> tuple[float, float]:
    """Saddle-width criteria at t = tau; both >> 1 marks the saddle-pole regime."""
    if x <= 0.0:
        raise ValueError(f"x must be positive, got {x}")
    src.require_tunneling()
    w0 = src.omega0
    k0 = kappa0(src, Dispersion.RELATIVISTIC)
    m_plus = x * w0 * k0
    m_minus = x * w0 * (1.0 + w0 * w0) ** 2 / k0 ** 3
    return m_plus, m_minus


def pole_saddle_ratio(x: float, t: float, src: SourceSpec) -> float:
    """R = |psi_p| / |psi_s^+|; zero before tau, grows monotonically after."""
    _require_inside_cone(x, t)
    src.require_tunneling()
    k0 = kappa0(src, Dispersion.RELATIVISTIC)
    if t < x / k0:
        return 0.0
    eta = math.sqrt(t * t - x * x)
    return (
        math.pi
        * math.exp(-2.0 * k0 * x)
        * (t * t * eta / (x * x))
        * (1.0 - src.omega0 * eta / (t * t))
    )


def transient_time_paper(x: float, src: SourceSpec) -> float:
    """Closed-form transient duration e^{2 kappa0 x/3} x^{2/3} / [(2pi)^{1/3}(1-omega0)^{2/3}].

    Shipped verbatim; see transient_time_numeric for the defining property
    R = 1, with which this closed form can disagree by orders of magnitude.
    """
    if x <= 0.0:
        raise ValueError(f"x must be positive, got {x}")
    src.require_tunneling()
    k0 = kappa0(src, Dispersion.RELATIVISTIC)
    exponent = 2.0 * k0 * x / 3.0
    if exponent > 700.0:
        raise OverflowError(
            f"transient time overflows: exp({exponent:.1f}) not representable"
        )
    return (
        math.exp(exponent)
        * x ** (2.0 / 3.0)
        / ((2.0 * math.pi) ** (1.0 / 3.0) * (1.0 - src.omega0) ** (2.0 / 3.0))
    )


def transient_time_numeric(
    x: float, src: SourceSpec, horizon_factor: float = 1e4
) -> float:
    """First time with R(x, t) >= 1, by bisection in log t to 1e-6 relative.

    Returns tau when the pole already dominates at the crossing.  Raises
    HorizonError if R stays below 1 up to horizon_factor * tau.
    """
    src.require_tunneling()
    tau = traversal_time(x, src, Dispersion.RELATIVISTIC)
    if pole_saddle_ratio(x, tau * (1.0 + 1e-12), src) >= 1.0:
        return tau
    t_hi = horizon_factor * tau
    if pole_saddle_ratio(x, t_hi, src) < 1.0:
        raise HorizonError(
            f"R(x={x}, t) < 1 for all t <= {horizon_factor:g} tau = {t_hi:.6g}"
        )
    lo, hi = math.log(tau), math.log(t_hi)
    while hi - lo > 1e-7:
        mid = 0.5 * (lo + hi)
        if pole_saddle_ratio(x, math.exp(mid), src) >= 1.0:
            hi = mid
        else:
            lo = mid
    return math.exp(hi)


def density_saddle(x: float, t: float, src: SourceSpec) -> float:
    """Two-saddle interference density (pole neglected, R << 1 regime)."""
    _require_inside_cone(x, t)
    src.require_tunneling()
    w0 = src.omega0
    tau = traversal_time(x, src, Dispersion.RELATIVISTIC)
    eta = math.sqrt(t * t - x * x)
    d = t * t / (tau * tau) + w0 * w0
    num = t * t + w0 * w0 * eta * eta + x * x * d * math.sin(2.0 * eta)
    return num / (math.pi * eta * x * x * d * d)


def oscillation_amplitude(x: float, t: float, src: SourceSpec) -> float:
    """Half peak-to-trough amplitude A = x^2 / [pi eta (t^2 - omega0^2 eta^2)]."""
    _require_inside_cone(x, t)
    src.require_tunneling()
    eta = math.sqrt(t * t - x * x)
    den = t * t - src.omega0 ** 2 * eta * eta
    if den <= 0.0:
        raise ValueError(f"amplitude undefined: t^2 <= omega0^2 eta^2 at x={x}, t={t}")
    return x * x / (math.pi * eta * den)


def density_envelopes(x: float, t: float, src: SourceSpec) -> tuple[float, float]:
    """Upper/lower envelopes of the two-saddle density (sin(2 eta) = +-1)."""
    _require_inside_cone(x, t)
    src.require_tunneling()
    w0 = src.omega0
    tau = traversal_time(x, src, Dispersion.RELATIVISTIC)
    eta = math.sqrt(t * t - x * x)
    d = t * t / (tau * tau) + w0 * w0
    upper = 2.0 * t * t / (math.pi * x * x * eta * d * d)
    lower = 2.0 * w0 * w0 * eta / (math.pi * x * x * d * d)
    return upper, lower


def envelope_extremum_times(src: SourceSpec) -> EnvelopeExtrema:
    """Envelope extremum times in units of tau, with feasibility flags.

    Lower-envelope extrema always exist; the upper-envelope pairs require a
    non-negative discriminant (shallow tunneling) and must lie outside the
    light cone (value > kappa0 in tau units) to be physical.
    """
    src.require_tunneling()
    w0sq = src.omega0 ** 2
    k0 = kappa0(src, Dispersion.RELATIVISTIC)

    t_max_xl = 0.5 * math.sqrt(
        3.0 - w0sq + math.sqrt(9.0 * (1.0 + w0sq * w0sq) - 14.0 * w0sq)
    )
    t_max_tl = math.sqrt((4.0 - 3.0 * w0sq) / 3.0)

    def upper_pair(mid: float, disc: float, scale: float) -> tuple[ExtremumTime, ExtremumTime]:
        if disc < 0.0:
            missing = ExtremumTime(None, False, "negative discriminant (deep tunneling)")
            return missing, missing
        out = []
        for sign in (+1.0, -1.0):
            val = scale * math.sqrt(mid + sign * math.sqrt(disc))
            if val > k0:
                out.append(ExtremumTime(val, True))
            else:
                out.append(ExtremumTime(val, False, "inside the light cone (t <= x)"))
        return out[0], out[1]

    t_max_tu, t_min_tu = upper_pair(
        2.0 - w0sq, 4.0 - 28.0 * w0sq + 25.0 * w0sq * w0sq, 1.0 / math.sqrt(6.0)
    )
    t_max_xu, t_min_xu = upper_pair(
        1.0 + w0sq, 1.0 - 22.0 * w0sq + 25.0 * w0sq * w0sq, 0.5
    )
    return EnvelopeExtrema(
        t_max_xL=ExtremumTime(t_max_xl, True),
        t_max_tL=ExtremumTime(t_max_tl, True),
        t_max_tU=t_max_tu,
        t_min_tU=t_min_tu,
        t_max_xU=t_max_xu,
        t_min_xU=t_min_xu,
    )


def omega_av_saddle(x: float, t: float, src: SourceSpec) -> tuple[float, float, float]:
    """Instantaneous frequency of the two-saddle field and its envelopes.

    Returns (value, upper, lower); the lower envelope equals omega0 (density
    maxima rotate at the carrier frequency), the upper t^2/(omega0 eta^2).
    """
    _require_inside_cone(x, t)
    src.require_tunneling()
    w0 = src.omega0
    eta = math.sqrt(t * t - x * x)
    num = w0 * (-2.0 * t * t * eta + x * x * math.cos(2.0 * eta))
    den = eta * (
        -t * t - w0 * w0 * eta * eta + (-t * t + w0 * w0 * eta * eta) * math.sin(2.0 * eta)
    )
    if abs(den) < 1e-12:
        raise ZeroDivisionError(f"omega_av denominator vanishes at x={x}, t={t}")
    return num / den, t * t / (w0 * eta * eta), w0
