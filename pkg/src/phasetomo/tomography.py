"""Symplectic tomography: probability densities of X = mu*q + nu*p.

A tomogram slice w(X; mu, nu) is the genuine probability density of the
homodyne-style observable mu*q + nu*p.  It is the Radon transform of the
Wigner function over the lines mu*q + nu*p = X,

    w(X, mu, nu) = (1/(2*pi*hbar)) Int W(q,p) delta(X - mu*q - nu*p) dq dp,

equivalently, for a pure state,

    w(X, mu, nu) = (1/(2*pi*hbar*|nu|))
                   * | Int psi(y) exp(i*mu*y^2/(2*hbar*nu) - i*X*y/(hbar*nu)) dy |^2.

Tomograms are homogeneous of degree -1: w(s*X, s*mu, s*nu) = w(X, mu, nu)/|s|.
Under the uniform-field flow they evolve by characteristics,

    w(X, mu, nu, t) = w0(X - F*nu*t - F*mu*t^2/(2m), mu, nu + mu*t/m),

which solves dw/dt - (mu/m) dw/dnu + F*nu dw/dX = 0 and is consistent with the
phase-space characteristics pushed through the Radon transform.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from scipy.interpolate import CubicSpline
from scipy.signal import czt

from .errors import DomainError, ResolutionError, TruncationError, WindowError
from .phasespace import WignerGrid
from .specfun import airy_phi_values
from .states import ComplexGaussian, PhysParams, StationaryState

__all__ = [
    "TomogramSlice",
    "TomogramField",
    "tomogram_from_wigner",
    "tomogram_field_from_wigner",
    "wigner_from_tomogram",
    "tomogram_from_psi",
    "tomogram_stationary",
    "gaussian_tomogram",
    "tomographic_propagate",
    "tomographic_pde_residual",
]

NU_MIN = 1e-3


@dataclass
class TomogramSlice:
    """Sampled tomogram w(X) at fixed (mu, nu)."""

    mu: float
    nu: float
    X_axis: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.mu == 0 and self.nu == 0:
            raise DomainError("TomogramSlice: (mu, nu) = (0, 0) is not a direction")

    def integral(self) -> float:
        return float(np.trapezoid(self.values, self.X_axis))


@dataclass
class TomogramField:
    """Family of slices along mu = cos(theta), nu = sin(theta)."""

    theta_axis: np.ndarray
    X_axis: np.ndarray
    values: np.ndarray  # shape (n_theta, n_X)


class _BicubicGrid:
    """Prefiltered bicubic B-spline evaluator for a rectangular grid.

    Shares the (one-time) spline prefilter across the many scattered
    evaluations of a slice family.
    """

    def __init__(self, q_axis, p_axis, values):
        self.q0 = float(q_axis[0])
        self.p0 = float(p_axis[0])
        self.dq = float(q_axis[1] - q_axis[0])
        self.dp = float(p_axis[1] - p_axis[0])
        self.coeffs = ndimage.spline_filter(values, order=3, mode="mirror")

    def ev(self, Q, P):
        coords = np.stack([(Q - self.q0) / self.dq, (P - self.p0) / self.dp])
        return ndimage.map_coordinates(self.coeffs, coords, order=3,
                                       prefilter=False, mode="nearest")


def tomogram_from_wigner(W: WignerGrid, mu: float, nu: float, X_axis,
                         hbar: float = 1.0, _interp: _BicubicGrid | None = None
                         ) -> TomogramSlice:
    """Radon slice of a sampled Wigner function by line-integral quadrature.

    Each X integrates W along mu*q + nu*p = X with deterministic trapezoid
    sampling (bicubic interpolation of the grid); raises if a line leaves the
    grid where |W| has not decayed.
    """
    if mu == 0 and nu == 0:
        raise DomainError("tomogram_from_wigner: (mu, nu) = (0, 0)")
    X_axis = np.asarray(X_axis, dtype=float)
    r2 = mu * mu + nu * nu
    r = np.sqrt(r2)
    spline = _interp if _interp is not None else _BicubicGrid(W.q_axis, W.p_axis, W.values)

    # clip each line to the grid box: point(s) = (mu, nu) X/r^2 + s (-nu, mu)/r
    bq = mu * X_axis / r2
    bp = nu * X_axis / r2
    dq_dir, dp_dir = -nu / r, mu / r
    s_lo = np.full_like(X_axis, -np.inf)
    s_hi = np.full_like(X_axis, np.inf)
    for b, d, lo, hi in ((bq, dq_dir, W.q_axis[0], W.q_axis[-1]),
                         (bp, dp_dir, W.p_axis[0], W.p_axis[-1])):
        if abs(d) < 1e-15:
            miss = (b < lo) | (b > hi)
            s_lo = np.where(miss, 0.0, s_lo)
            s_hi = np.where(miss, 0.0, s_hi)
        else:
            c1 = (lo - b) / d
            c2 = (hi - b) / d
            s_lo = np.maximum(s_lo, np.minimum(c1, c2))
            s_hi = np.maximum(np.minimum(s_hi, np.maximum(c1, c2)), s_lo)

    ds = 0.5 * min(W.dq, W.dp)
    n_s = int(np.ceil((np.max(s_hi - s_lo)) / ds)) + 2
    frac = np.linspace(0.0, 1.0, n_s)
    s = s_lo[:, None] + (s_hi - s_lo)[:, None] * frac[None, :]
    Q = bq[:, None] + s * dq_dir
    P = bp[:, None] + s * dp_dir
    vals = spline.ev(Q, P)

    # boundary screening: lines must exit the grid only where W has decayed
    wmax = float(np.max(np.abs(W.values)))
    live = s_hi > s_lo
    if np.any(live):
        edge = max(np.max(np.abs(vals[live, 0])), np.max(np.abs(vals[live, -1])))
        if edge > 1e-6 * wmax:
            raise WindowError(
                f"tomogram_from_wigner: |W| = {edge:.3e} where a line exits the grid")

    values = np.trapezoid(vals, s, axis=1) / (2 * np.pi * hbar * r)
    return TomogramSlice(mu=mu, nu=nu, X_axis=X_axis, values=values)


def tomogram_field_from_wigner(W: WignerGrid, theta_axis, X_axis,
                               hbar: float = 1.0) -> TomogramField:
    """Slice family at directions (cos(theta), sin(theta))."""
    theta_axis = np.asarray(theta_axis, dtype=float)
    X_axis = np.asarray(X_axis, dtype=float)
    interp = _BicubicGrid(W.q_axis, W.p_axis, W.values)
    rows = [tomogram_from_wigner(W, np.cos(th), np.sin(th), X_axis, hbar,
                                 _interp=interp).values
            for th in theta_axis]
    return TomogramField(theta_axis=theta_axis, X_axis=X_axis, values=np.array(rows))


def wigner_from_tomogram(T: TomogramField, q_axis, p_axis, hbar: float = 1.0,
                         holdout: TomogramSlice | None = None,
                         holdout_tol: float = 1e-2) -> WignerGrid:
    """Filtered back-projection inversion of a tomogram field.

    The (X, mu, nu) inversion integral collapses, via homogeneity, to the
    theta-parametrized inverse Radon transform: each slice is ramp-filtered
    (|k| with Hann apodization cut at the X Nyquist) and back-projected:

        W(q,p) = hbar * Int_0^pi [ramp * w_theta](q cos(theta) + p sin(theta)) dtheta.

    If a held-out slice is supplied, the reconstruction is re-projected along
    it and a streak-artifact warning is emitted when the deviation exceeds
    holdout_tol * max|w|.
    """
    q_axis = np.asarray(q_axis, dtype=float)
    p_axis = np.asarray(p_axis, dtype=float)
    X = T.X_axis
    dX = float(X[1] - X[0])
    n = len(X)
    # generous padding: the ramp-filtered profile has 1/X^2 tails whose
    # periodization would otherwise alias back into the window
    n_pad = 1 << int(np.ceil(np.log2(8 * n)))
    k = 2 * np.pi * np.fft.fftfreq(n_pad, dX)
    k_ny = np.pi / dX
    ramp = np.abs(k) * 0.5 * (1 + np.cos(np.pi * np.minimum(np.abs(k) / k_ny, 1.0)))
    spec = np.fft.fft(T.values, n=n_pad, axis=1) * ramp[None, :]
    filtered = np.real(np.fft.ifft(spec, axis=1))[:, :n]

    Q, P = np.meshgrid(q_axis, p_axis, indexing="ij")
    out = np.zeros_like(Q)
    dtheta = float(T.theta_axis[1] - T.theta_axis[0])
    for row, th in zip(filtered, T.theta_axis):
        proj = CubicSpline(X, row, extrapolate=False)
        vals = proj(Q * np.cos(th) + P * np.sin(th))
        out += np.nan_to_num(vals, nan=0.0)
    out *= hbar * dtheta

    W = WignerGrid(q_axis=q_axis, p_axis=p_axis, values=out)
    if holdout is not None:
        re_proj = tomogram_from_wigner(W, holdout.mu, holdout.nu, holdout.X_axis, hbar)
        dev = float(np.max(np.abs(re_proj.values - holdout.values)))
        if dev > holdout_tol * np.max(np.abs(holdout.values)):
            warnings.warn(f"wigner_from_tomogram: held-out slice deviates by {dev:.3e}; "
                          "angular sampling may be too coarse", RuntimeWarning)
    return W


def tomogram_from_psi(psi, x_axis, mu: float, nu: float, X_axis,
                      params: PhysParams) -> TomogramSlice:
    """Tomogram of a pure state by chirp quadrature.

    For nu != 0 evaluates the chirped Fourier integral with a chirp z-transform
    in y; for nu == 0 returns the analytic scaling limit |psi(X/mu)|^2 / |mu|.
    """
    hbar = params.hbar
    X_axis = np.asarray(X_axis, dtype=float)
    x_axis = np.asarray(x_axis, dtype=float)
    psi = np.asarray(psi, dtype=complex)
    if mu == 0 and nu == 0:
        raise DomainError("tomogram_from_psi: (mu, nu) = (0, 0)")
    edge = max(abs(psi[0]), abs(psi[-1]))
    if edge >= 1e-6:
        raise TruncationError(
            f"tomogram_from_psi: |psi| = {edge:.3e} at the grid boundary")

    if nu == 0:
        dens = CubicSpline(x_axis, np.abs(psi) ** 2, extrapolate=False)
        vals = np.nan_to_num(dens(X_axis / mu), nan=0.0) / abs(mu)
        return TomogramSlice(mu=mu, nu=nu, X_axis=X_axis, values=vals)
    if abs(nu) < NU_MIN and mu != 0:
        raise ResolutionError(
            f"tomogram_from_psi: |nu| = {abs(nu):.1e} < {NU_MIN}; the chirp is "
            "unresolvable -- use the nu = 0 scaling branch")

    dy = float(x_axis[1] - x_axis[0])
    kmax = (abs(mu) * np.max(np.abs(x_axis)) + np.max(np.abs(X_axis))) / (hbar * abs(nu))
    if kmax * dy > np.pi / 2:
        raise ResolutionError(
            f"tomogram_from_psi: phase advance {kmax * dy:.2f} rad per sample "
            "(> pi/2); refine the y grid")

    phi = psi * np.exp(1j * mu * x_axis**2 / (2 * hbar * nu))
    dk = (X_axis[1] - X_axis[0]) / (hbar * nu)
    k0 = X_axis[0] / (hbar * nu)
    S = czt(phi, m=len(X_axis), w=np.exp(-1j * dy * dk), a=np.exp(1j * dy * k0))
    S = S * dy * np.exp(-1j * (X_axis / (hbar * nu)) * x_axis[0])
    values = np.abs(S) ** 2 / (2 * np.pi * hbar * abs(nu))
    return TomogramSlice(mu=mu, nu=nu, X_axis=X_axis, values=values)


def tomogram_stationary(X, mu: float, nu: float, s: StationaryState):
    """Closed-form tomogram of the Airy stationary state:

        w_E(X, mu, nu) = (A^2/|mu|) * Phi(eps + alpha*X/mu
                                          - (hbar^2 alpha^4/4) (nu/mu)^2)^2.

    The constant and signs are pinned by the exact nu -> 0 marginal
    |psi_E(X/mu)|^2/|mu| and by completing the cube in the chirp transform of
    the Airy integral representation; the test-suite cross-checks the value
    against direct regularized quadrature.  mu = 0 is outside the domain (the
    momentum distribution of this state is not normalizable).
    """
    if mu == 0:
        raise DomainError("tomogram_stationary: mu = 0 lies outside the closed form")
    hbar = s.params.hbar
    alpha, eps, A = s.alpha, s.epsilon, s.A
    scalar = np.ndim(X) == 0
    X = np.asarray(X, dtype=float)
    arg = eps + alpha * X / mu - (hbar**2 * alpha**4 / 4) * (nu / mu) ** 2
    vals = A**2 / abs(mu) * airy_phi_values(arg) ** 2
    return float(vals.reshape(-1)[0]) if scalar else vals


def gaussian_tomogram(g: ComplexGaussian, mu: float, nu: float, X,
                      params: PhysParams):
    """Exact tomogram of a normalized Gaussian state.

    X = mu*q + nu*p is Gaussian with mean mu*<x> + nu*<p> and variance
    mu^2 var_x + 2 mu nu cov_xp + nu^2 var_p.
    """
    hbar = params.hbar
    mean = mu * g.mean_x() + nu * g.mean_p(hbar)
    var = (mu**2 * g.var_x() + 2 * mu * nu * g.cov_xp(hbar) + nu**2 * g.var_p(hbar))
    X = np.asarray(X, dtype=float)
    return np.exp(-((X - mean) ** 2) / (2 * var)) / np.sqrt(2 * np.pi * var)


def tomographic_propagate(w0, X, mu: float, nu: float, t: float,
                          params: PhysParams):
    """Evolve a tomogram by exact characteristics:
    w(X, mu, nu, t) = w0(X - F*nu*t - F*mu*t^2/(2m), mu, nu + mu*t/m)."""
    m, F = params.m, params.F
    return w0(X - F * nu * t - F * mu * t**2 / (2 * m), mu, nu + mu * t / m)


def tomographic_pde_residual(state: ComplexGaussian, sample_points, t: float,
                             params: PhysParams, h: float = 0.02) -> float:
    """Finite-difference residual of dw/dt - (mu/m) dw/dnu + F*nu dw/dX on the
    exactly evolved Gaussian tomogram, at (X, mu, nu) sample points.

    Derivatives use 5-point central stencils of step h on the closed-form
    evolved tomogram.
    """
    if h <= 0 or h > 0.2:
        raise ResolutionError("tomographic_pde_residual: step h out of range")
    m, F = params.m, params.F

    def w(X, mu, nu, tt):
        return tomographic_propagate(
            lambda X0, mu0, nu0: gaussian_tomogram(state, mu0, nu0, X0, params),
            X, mu, nu, tt, params)

    def d5(fun, v0):
        return (fun(v0 - 2 * h) - 8 * fun(v0 - h) + 8 * fun(v0 + h)
                - fun(v0 + 2 * h)) / (12 * h)

    worst = 0.0
    for X0, mu0, nu0 in np.asarray(sample_points, dtype=float):
        wt = d5(lambda v: w(X0, mu0, nu0, v), t)
        wnu = d5(lambda v: w(X0, mu0, v, t), nu0)
        wX = d5(lambda v: w(v, mu0, nu0, t), X0)
        worst = max(worst, abs(wt - (mu0 / m) * wnu + F * nu0 * wX))
    return float(worst)
