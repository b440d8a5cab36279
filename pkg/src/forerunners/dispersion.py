"""Dispersion relations, branch conventions and characteristic scales.

Both wave equations share the same stationary problem but differ in the
time domain: the relativistic branch has omega^2 = 1 + k^2, the
nonrelativistic one omega = 1 + k^2/2 (cutoff at omega = 1 in both).
Below cutoff the wavenumber is i*kappa with kappa > 0, which fixes the
decaying evanescent branch.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "Dispersion",
    "SourceSpec",
    "ScalesReport",
    "wavenumber",
    "kappa0",
    "traversal_time",
    "scales",
    "to_dimensionless",
    "from_dimensionless",
]


class Dispersion(Enum):
    RELATIVISTIC = "relativistic"
    NONRELATIVISTIC = "nonrelativistic"


@dataclass(frozen=True)
class SourceSpec:
    """Sharp-onset boundary source exp(-i omega0 t) * Theta(t)."""

    omega0: float

    def require_tunneling(self) -> None:
        if not 0.0 < self.omega0 < 1.0:
            raise ValueError(
                f"carrier frequency must lie below cutoff, 0 < omega0 < 1, got {self.omega0}"
            )


@dataclass(frozen=True)
class ScalesReport:
    """Characteristic scales at position x: kappa0, traversal time, 1/kappa0."""

    kappa0: float
    tau: float
    penetration_length: float


def wavenumber(omega: float, d: Dispersion) -> complex:
    """k(omega) on the outgoing/decaying branch; Im k >= 0 always."""
    if not math.isfinite(omega):
        raise ValueError(f"omega must be finite, got {omega}")
    if d is Dispersion.RELATIVISTIC:
        if abs(omega) >= 1.0:
            # Sign chosen so exp(ikx - i omega t) is outgoing for both signs
            # of omega (needed by the +/- saddle pair).
            return complex(math.copysign(math.sqrt(omega * omega - 1.0), omega), 0.0)
        return complex(0.0, math.sqrt(1.0 - omega * omega))
    if omega >= 1.0:
        return complex(math.sqrt(2.0 * (omega - 1.0)), 0.0)
    return complex(0.0, math.sqrt(2.0 * (1.0 - omega)))


def kappa0(src: SourceSpec, d: Dispersion) -> float:
    """Evanescent decay rate of the stationary wave at the carrier frequency."""
    src.require_tunneling()
    if d is Dispersion.RELATIVISTIC:
        return math.sqrt(1.0 - src.omega0 * src.omega0)
    return math.sqrt(2.0 * (1.0 - src.omega0))


def traversal_time(x: float, src: SourceSpec, d: Dispersion) -> float:
    """Semiclassical traversal time tau = x / kappa0."""
    if x <= 0.0:
        raise ValueError(f"x must be positive, got {x}")
    return x / kappa0(src, d)


def scales(x: float, src: SourceSpec, d: Dispersion) -> ScalesReport:
    k0 = kappa0(src, d)
    return ScalesReport(kappa0=k0, tau=x / k0, penetration_length=1.0 / k0)


def _require_positive(**params: float) -> None:
    for name, value in params.items():
        if not (value > 0.0 and math.isfinite(value)):
            raise ValueError(f"parameter {name} must be positive and finite, got {value}")


def to_dimensionless(kind: str, X: float, T: float, params: dict) -> tuple[float, float]:
    """Map dimensional (X, T) to the dimensionless (x, t) of the wave equations.

    kind="klein_gordon_particle" uses {m0, c, hbar}: x = X m0 c / hbar,
    t = T m0 c^2 / hbar.  kind="waveguide" uses {lambda, c} with the waveguide
    eigenvalue lambda: x = X lambda, t = T lambda c.
    """
    if kind == "klein_gordon_particle":
        m0, c, hbar = params["m0"], params["c"], params["hbar"]
        _require_positive(m0=m0, c=c, hbar=hbar)
        return X * m0 * c / hbar, T * m0 * c * c / hbar
    if kind == "waveguide":
        lam, c = params["lambda"], params["c"]
        _require_positive(lam=lam, c=c)
        return X * lam, T * lam * c
    raise ValueError(f"unknown conversion kind {kind!r}")


def from_dimensionless(kind: str, x: float, t: float, params: dict) -> tuple[float, float]:
    """Inverse of :func:`to_dimensionless`; round-trips to 1e-14 relative."""
    if kind == "klein_gordon_particle":
        m0, c, hbar = params["m0"], params["c"], params["hbar"]
        _require_positive(m0=m0, c=c, hbar=hbar)
        return x * hbar / (m0 * c), t * hbar / (m0 * c * c)
    if kind == "waveguide":
        lam, c = params["lambda"], params["c"]
        _require_positive(lam=lam, c=c)
        return x / lam, t / (lam * c)
    raise ValueError(f"unknown conversion kind {kind!r}")
