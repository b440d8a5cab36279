"""Independent time-domain reference solvers for both wave equations.

The relativistic equation psi_tt = psi_xx - psi is advanced by the explicit
three-level leapfrog stencil

    psi^{n+1}_j = 2 psi^n_j - psi^{n-1}_j
                  + (dt/dx)^2 (psi^n_{j+1} - 2 psi^n_j + psi^n_{j-1})
                  - dt^2 psi^n_j,

with the left boundary pinned to the sharp-onset source (Theta(0) = 1, no
smoothing) and the right boundary never reached inside the causal window
(domain_length >= t_max, signal speed <= 1).

The Schroedinger equation i psi_t = -1/2 psi_xx + psi uses the trapezoidal
(Crank-Nicolson) one-step scheme, unconditionally stable, with a Dirichlet
far wall and a runtime tail monitor.  The sharp onset radiates a power-law
spatial tail at unbounded speed, so the monitor threshold is configurable;
the 1e-6 default is only meaningful for sources switched on smoothly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import solve_banded

from .dispersion import SourceSpec
from .errors import ConfigurationError, TailContaminationError
from .exact_solutions import SeriesSettings, psi_nonrel_grid, psi_rel_grid

__all__ = ["GridSpec", "ProbeTrace", "evolve_kg", "evolve_schrodinger", "convergence_report"]


@dataclass(frozen=True)
class GridSpec:
    """Grid and run parameters shared by both solvers.

    dt = courant * dx for either scheme (the implicit solver is stable for
    any dt; accuracy alone sets it).  For the relativistic solver the CFL
    bound is courant <= 1.
    """

    dx: float
    courant: float = 0.5
    domain_length: float = 0.0  # 0 -> solver-specific default
    t_max: float = 10.0
    probes: tuple = ()
    tail_tol: float = 1e-6
    nan_check_every: int = 200

    def __post_init__(self):
        if self.dx <= 0.0:
            raise ConfigurationError(f"dx must be positive, got {self.dx}")
        if not 0.0 < self.courant <= 1.0:
            raise ConfigurationError(
                f"courant must lie in (0, 1], got {self.courant}"
            )
        if self.t_max <= 0.0:
            raise ConfigurationError(f"t_max must be positive, got {self.t_max}")

    @property
    def dt(self) -> float:
        return self.courant * self.dx


@dataclass(frozen=True)
class ProbeTrace:
    x: float
    times: np.ndarray
    amplitudes: np.ndarray

    @property
    def densities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def _probe_indices(grid: GridSpec, length: float) -> list[int]:
    n_cells = int(round(length / grid.dx))
    idx = []
    for p in grid.probes:
        if not 0.0 < p < length:
            raise ConfigurationError(
                f"probe at x={p} outside the open domain (0, {length})"
            )
        idx.append(int(round(p / grid.dx)))
    if not idx:
        raise ConfigurationError("at least one probe position is required")
    if max(idx) >= n_cells:
        raise ConfigurationError("probe coincides with the far boundary")
    return idx


def evolve_kg(src: SourceSpec, grid: GridSpec) -> list[ProbeTrace]:
    """Leapfrog integration of the relativistic equation; exact causal truncation."""
    src.require_tunneling()
    length = grid.domain_length if grid.domain_length > 0.0 else grid.t_max + 2.0 * grid.dx
    if length < grid.t_max:
        raise ConfigurationError(
            f"domain_length {length} < t_max {grid.t_max}: reflections could "
            "reach a probe inside the causal window"
        )
    dx, dt = grid.dx, grid.dt
    idx = _probe_indices(grid, length)
    n = int(round(length / dx)) + 1
    steps = int(round(grid.t_max / dt))
    r2 = (dt / dx) ** 2
    mass = dt * dt

    prev = np.zeros(n, dtype=np.complex128)
    curr = np.zeros(n, dtype=np.complex128)
    curr[0] = 1.0  # Theta(0) = 1
    traces = np.empty((len(idx), steps + 1), dtype=np.complex128)
    traces[:, 0] = curr[idx]
    for s in range(1, steps + 1):
        nxt = np.empty_like(curr)
        nxt[1:-1] = (
            2.0 * curr[1:-1]
            - prev[1:-1]
            + r2 * (curr[2:] - 2.0 * curr[1:-1] + curr[:-2])
            - mass * curr[1:-1]
        )
        nxt[0] = np.exp(-1j * src.omega0 * (s * dt))
        nxt[-1] = 0.0
        prev, curr = curr, nxt
        traces[:, s] = curr[idx]
        if s % grid.nan_check_every == 0 and not np.isfinite(curr.view(np.float64)).all():
            raise FloatingPointError(f"non-finite field at step {s} (t={s * dt:.6g})")
    times = np.arange(steps + 1) * dt
    return [ProbeTrace(x=i * dx, times=times, amplitudes=traces[k]) for k, i in enumerate(idx)]


def default_schrodinger_length(grid: GridSpec) -> float:
    """x_probe + 6 sqrt(t_max) + 20; see note on the tail monitor above."""
    return max(grid.probes) + 6.0 * math.sqrt(grid.t_max) + 20.0


def evolve_schrodinger(src: SourceSpec, grid: GridSpec) -> list[ProbeTrace]:
    """Trapezoidal (Crank-Nicolson) integration of the Schroedinger equation."""
    src.require_tunneling()
    length = grid.domain_length if grid.domain_length > 0.0 else default_schrodinger_length(grid)
    dx, dt = grid.dx, grid.dt
    idx = _probe_indices(grid, length)
    n = int(round(length / dx)) + 1
    steps = int(round(grid.t_max / dt))

    # (I + i dt H / 2) psi^{n+1} = (I - i dt H / 2) psi^n, H = -1/2 d_xx + 1
    a = 0.5j * dt
    diag_lhs = 1.0 + a * (1.0 + 1.0 / dx**2)
    off_lhs = a * (-0.5 / dx**2)
    diag_rhs = 1.0 - a * (1.0 + 1.0 / dx**2)
    off_rhs = -off_lhs
    m = n - 2  # interior unknowns; Dirichlet at both ends
    band = np.zeros((3, m), dtype=np.complex128)
    band[0, 1:] = off_lhs
    band[1, :] = diag_lhs
    band[2, :-1] = off_lhs

    psi = np.zeros(n, dtype=np.complex128)
    psi[0] = 1.0  # Theta(0) = 1
    j_tail = int(round(0.9 * (n - 1)))
    traces = np.empty((len(idx), steps + 1), dtype=np.complex128)
    traces[:, 0] = psi[idx]
    for s in range(1, steps + 1):
        rhs = diag_rhs * psi[1:-1] + off_rhs * (psi[2:] + psi[:-2])
        boundary = np.exp(-1j * src.omega0 * (s * dt))
        rhs[0] -= off_lhs * boundary
        psi[1:-1] = solve_banded((1, 1), band, rhs, overwrite_ab=False, overwrite_b=True)
        psi[0] = boundary
        psi[-1] = 0.0
        traces[:, s] = psi[idx]
        if abs(psi[j_tail]) > grid.tail_tol:
            raise TailContaminationError(
                f"|psi| = {abs(psi[j_tail]):.3e} at the 0.9 L monitor point "
                f"(x={j_tail * dx:.3g}) exceeded tail_tol={grid.tail_tol:g} at t={s * dt:.6g}"
            )
        if s % grid.nan_check_every == 0 and not np.isfinite(psi.view(np.float64)).all():
            raise FloatingPointError(f"non-finite field at step {s} (t={s * dt:.6g})")
    times = np.arange(steps + 1) * dt
    return [ProbeTrace(x=i * dx, times=times, amplitudes=traces[k]) for k, i in enumerate(idx)]


@dataclass(frozen=True)
class ConvergenceRow:
    dx: float
    max_error: float
    observed_order: float = float("nan")


def convergence_report(
    solver: str,
    src: SourceSpec,
    base_grid: GridSpec,
    levels: int,
    front_exclusion: float = 0.1,
    settings: SeriesSettings = SeriesSettings(rel_tol=1e-11, n_max=50000),
) -> list[ConvergenceRow]:
    """Max probe error against the matching closed form at successive refinements.

    observed_order is log2 of the error drop between consecutive levels;
    second order is only expected away from the front/onset, so times within
    front_exclusion of the wavefront (relativistic) or of t = 0 are skipped.
    """
    if levels < 2:
        raise ConfigurationError(f"need at least 2 levels, got {levels}")
    if solver not in ("kg", "schrodinger"):
        raise ConfigurationError(f"unknown solver {solver!r}")
    rows = []
    errors = []
    for level in range(levels):
        grid = replace(base_grid, dx=base_grid.dx / 2**level)
        if solver == "kg":
            traces = evolve_kg(src, grid)
        else:
            traces = evolve_schrodinger(src, grid)
        worst = 0.0
        for tr in traces:
            if solver == "kg":
                ref = psi_rel_grid(tr.x, tr.times, src, settings)
                sel = tr.times - tr.x > front_exclusion
            else:
                ref = psi_nonrel_grid(tr.x, tr.times, src)
                sel = tr.times > front_exclusion
            if sel.any():
                worst = max(worst, float(np.abs(tr.amplitudes[sel] - ref[sel]).max()))
        errors.append(worst)
        order = math.log2(errors[-2] / worst) if level > 0 else float("nan")
        rows.append(ConvergenceRow(dx=grid.dx, max_error=worst, observed_order=order))
    return rows
