"""Independent numerical ground truth.

A Crank-Nicolson solver for i*hbar dpsi/dt = (-hbar^2/(2m) d^2/dx^2 - F*x) psi
on a uniform grid with homogeneous Dirichlet ends (the linear potential enters
the tridiagonal diagonal exactly), plus windowed/damped trapezoid quadrature
with Cesaro averaging for oscillatory integrals.  Everything here is kept
independent of the closed-form modules so it can serve as their oracle.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .errors import NonConvergenceError, ResolutionError, WindowError
from .states import PhysParams

__all__ = [
    "GridState",
    "QuadratureSpec",
    "QuadratureResult",
    "crank_nicolson_step",
    "evolve",
    "damped_quadrature",
    "planck_taper",
    "richardson_extrapolate",
]


@dataclass
class GridState:
    """Wavefunction samples on a uniform grid."""

    x_axis: np.ndarray
    psi: np.ndarray
    params: PhysParams

    @property
    def dx(self) -> float:
        return float(self.x_axis[1] - self.x_axis[0])

    def norm_sq(self) -> float:
        """Discrete l2 mass dx * sum |psi|^2 (the invariant of the Cayley step)."""
        return float(np.sum(np.abs(self.psi) ** 2)) * self.dx

    def boundary_fraction(self) -> float:
        """Probability density at the two edge cells relative to the total."""
        total = self.norm_sq()
        if total == 0:
            return 0.0
        edge = (abs(self.psi[0]) ** 2 + abs(self.psi[-1]) ** 2) * self.dx
        return edge / total


def _check_boundary(s: GridState):
    frac = s.boundary_fraction()
    if frac > 1e-3:
        raise WindowError(
            f"crank_nicolson_step: boundary mass fraction {frac:.3e} > 1e-3; "
            "the packet is reflecting off the grid ends")
    if frac > 1e-6:
        warnings.warn(f"crank_nicolson_step: boundary mass fraction {frac:.3e}",
                      RuntimeWarning)


def crank_nicolson_step(s: GridState, dt: float) -> GridState:
    """One implicit-midpoint (Cayley) step via a tridiagonal solve.

    (1 + i*dt*H/(2*hbar)) psi_new = (1 - i*dt*H/(2*hbar)) psi; exactly
    norm-preserving for the Hermitian discrete H.  dt is capped at
    10*m*dx^2/hbar as an accuracy guard (the scheme itself is
    unconditionally stable).
    """
    if dt <= 0:
        raise ResolutionError("crank_nicolson_step: dt must be positive")
    m, F, hbar = s.params.m, s.params.F, s.params.hbar
    dx = s.dx
    if dt > 10 * m * dx**2 / hbar:
        raise ResolutionError(
            f"crank_nicolson_step: dt = {dt:.3e} exceeds the accuracy guard "
            f"10*m*dx^2/hbar = {10 * m * dx**2 / hbar:.3e}")
    _check_boundary(s)

    n = len(s.psi)
    kin = hbar**2 / (2 * m * dx**2)
    diag_H = 2 * kin - F * s.x_axis
    off_H = -kin
    lam = dt / (2 * hbar)

    rhs = s.psi * (1 - 1j * lam * diag_H)
    rhs[:-1] -= 1j * lam * off_H * s.psi[1:]
    rhs[1:] -= 1j * lam * off_H * s.psi[:-1]

    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = 1j * lam * off_H
    ab[1, :] = 1 + 1j * lam * diag_H
    ab[2, :-1] = 1j * lam * off_H
    psi_new = solve_banded((1, 1), ab, rhs)
    return GridState(x_axis=s.x_axis, psi=psi_new, params=s.params)


def evolve(s: GridState, t: float, dt: float) -> GridState:
    """Evolve to time t >= 0 in ceil(t/dt) steps; the last step is fractional."""
    if t < 0:
        raise ResolutionError("evolve: t must be >= 0")
    if t == 0:
        return GridState(x_axis=s.x_axis, psi=s.psi.copy(), params=s.params)
    n_steps = max(1, int(np.ceil(t / dt - 1e-12)))
    out = s
    for _ in range(n_steps - 1):
        out = crank_nicolson_step(out, dt)
    return crank_nicolson_step(out, t - (n_steps - 1) * dt)


# ---------------------------------------------------------------------------
# regularized quadrature
# ---------------------------------------------------------------------------

def planck_taper(n: int, fraction: float, sides: str = "both") -> np.ndarray:
    """Smooth C-infinity window, flat in the middle, tapering over the given
    fraction of the selected end(s) ("both", "left" or "right")."""
    if not (0 < fraction <= 0.5):
        raise ResolutionError("planck_taper: fraction must lie in (0, 0.5]")
    if sides not in ("both", "left", "right"):
        raise ResolutionError(f"planck_taper: unknown sides {sides!r}")
    w = np.ones(n)
    z = np.linspace(0.0, 1.0, n)
    parts = {"both": (True, False), "left": (True,), "right": (False,)}[sides]
    for rising in parts:
        zz = z if rising else 1.0 - z
        mask = (zz > 0) & (zz < fraction)
        expo = fraction / zz[mask] + fraction / (zz[mask] - fraction)
        w[mask] *= 1.0 / (1.0 + np.exp(np.clip(expo, -700, 700)))
        w[zz <= 0] = 0.0
    return w


@dataclass(frozen=True)
class QuadratureSpec:
    """Recipe for regularizing a slowly decaying oscillatory integrand."""

    window: str = "none"  # "none" | "planck_taper"
    taper_fraction: float = 0.2
    taper_sides: str = "both"  # which ends the taper touches
    damping: float = 0.0  # Gaussian damp coefficient eta in exp(-eta x^2)
    cesaro_widths: tuple = ()  # half-widths to average over (0 = full range)
    spread_tol: float | None = None

    def __post_init__(self):
        if self.window not in ("none", "planck_taper"):
            raise ResolutionError(f"QuadratureSpec: unknown window {self.window!r}")
        if self.damping < 0:
            raise ResolutionError("QuadratureSpec: damping must be >= 0")


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    spread: float


def damped_quadrature(x, f, spec: QuadratureSpec) -> QuadratureResult:
    """Trapezoid integral of samples after optional window/damping.

    With cesaro_widths set, the integral is evaluated over each sub-window
    half-width and the results averaged; the max pairwise deviation is
    reported as the spread (raised as NonConvergenceError past spread_tol).
    Identical inputs give bit-identical outputs.
    """
    x = np.asarray(x, dtype=float)
    f = np.asarray(f, dtype=complex)
    if len(x) != len(f):
        raise ResolutionError("damped_quadrature: mismatched sample arrays")
    if spec.damping > 0:
        f = f * np.exp(-spec.damping * x**2)

    widths = spec.cesaro_widths if spec.cesaro_widths else (0.0,)
    values = []
    for w_half in widths:
        if w_half and w_half > 0:
            mask = np.abs(x) <= w_half
            if np.count_nonzero(mask) < 8:
                raise ResolutionError(
                    f"damped_quadrature: width {w_half} keeps fewer than 8 samples")
            xs, fs = x[mask], f[mask]
        else:
            xs, fs = x, f
        if spec.window == "planck_taper":
            fs = fs * planck_taper(len(xs), spec.taper_fraction, spec.taper_sides)
        values.append(complex(np.trapezoid(fs, xs)))

    value = complex(np.mean(values))
    spread = float(max(abs(a - b) for a in values for b in values)) if len(values) > 1 else 0.0
    if spec.spread_tol is not None and spread > spec.spread_tol:
        raise NonConvergenceError(
            f"damped_quadrature: Cesaro spread {spread:.3e} > {spec.spread_tol:.3e}")
    return QuadratureResult(value=value, spread=spread)


def richardson_extrapolate(etas, values):
    """Polynomial (Lagrange) extrapolation of values(eta) to eta = 0."""
    etas = np.asarray(etas, dtype=float)
    values = np.asarray(values, dtype=complex)
    out = 0.0 + 0.0j
    for i in range(len(etas)):
        li = 1.0
        for j in range(len(etas)):
            if j != i:
                li *= -etas[j] / (etas[i] - etas[j])
        out += values[i] * li
    return out
