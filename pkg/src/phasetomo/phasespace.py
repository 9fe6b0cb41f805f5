"""Wigner quasiprobability machinery for the uniform-field problem.

Conventions: W(q,p) = Integral rho(q + u/2, q - u/2) exp(-i*p*u/hbar) du, so a
normalized state integrates to 2*pi*hbar over phase space.  For quadratic
Hamiltonians the evolution equation reduces to the classical transport
dW/dt + (p/m) dW/dq + F dW/dp = 0 (force coefficient F: the characteristics
q(t), p(t) of the classical flow solve it exactly, as `liouville_residual`
verifies), and the propagator is a delta kernel concentrated on the classical
trajectory map, implemented here as a grid pullback.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline, RectBivariateSpline
from scipy.signal import czt

from .errors import DomainError, ResolutionError, TruncationError, WindowError
from .propagators import ClassicalPoint, forward_trajectory, integrals_of_motion
from .states import ComplexGaussian, PhysParams, StationaryState, gaussian_eval
from .specfun import airy_phi_values

__all__ = [
    "WignerGrid",
    "GaussianWigner",
    "cross_wigner_transform",
    "wigner_from_psi",
    "gaussian_wigner",
    "evolve_gaussian_wigner",
    "moyal_evolve_points",
    "moyal_propagator_apply",
    "wigner_stationary",
    "correspondence_residual",
    "liouville_residual",
]


@dataclass
class WignerGrid:
    """Sampled quasiprobability on a rectangular (q, p) grid.

    values[i, j] = W(q_axis[i], p_axis[j]).
    """

    q_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray
    imag_residual: float = 0.0
    out_of_domain_mass: float = 0.0

    @property
    def dq(self) -> float:
        return float(self.q_axis[1] - self.q_axis[0])

    @property
    def dp(self) -> float:
        return float(self.p_axis[1] - self.p_axis[0])

    def integral(self) -> float:
        """Trapezoid integral of W over the grid."""
        return float(np.trapezoid(np.trapezoid(self.values, self.p_axis, axis=1),
                                  self.q_axis))


def _uniform_step(axis, name):
    axis = np.asarray(axis, dtype=float)
    if axis.size < 2:
        raise DomainError(f"{name}: need at least 2 points")
    steps = np.diff(axis)
    d = float(steps[0])
    if not np.allclose(steps, d, rtol=1e-9, atol=0.0):
        raise DomainError(f"{name}: axis must be uniform")
    return d


def _sample_shifted(psi, x_axis, targets):
    """psi evaluated at arbitrary points, zero outside the grid.

    Uses exact indexing when every target lies on the grid, cubic spline
    interpolation otherwise.
    """
    x0 = float(x_axis[0])
    dx = _uniform_step(x_axis, "x_axis")
    idx = (targets - x0) / dx
    idx_round = np.rint(idx)
    aligned = np.max(np.abs(idx - idx_round)) < 1e-8
    out = np.zeros(targets.shape, dtype=complex)
    if aligned:
        ii = idx_round.astype(np.int64)
        inside = (ii >= 0) & (ii < len(x_axis))
        out[inside] = psi[ii[inside]]
    else:
        spl = CubicSpline(x_axis, psi, extrapolate=False)
        vals = spl(targets)
        out = np.nan_to_num(vals, nan=0.0)
    return out


def cross_wigner_transform(psi_a, psi_b, x_axis, q_axis, p_axis, hbar: float = 1.0):
    """Cross-Wigner map W[a,b](q,p) = Int psi_a(q+u/2) conj(psi_b(q-u/2)) e^{-ipu/hbar} du.

    Complex-valued in general; equals the Wigner transform of |a><b|.  The
    u-integral is evaluated with a chirp z-transform over a u grid of step
    2*dx, which keeps every sample on the wavefunction grid when q does.
    """
    x_axis = np.asarray(x_axis, dtype=float)
    psi_a = np.asarray(psi_a, dtype=complex)
    psi_b = np.asarray(psi_b, dtype=complex)
    q_axis = np.asarray(q_axis, dtype=float)
    p_axis = np.asarray(p_axis, dtype=float)
    dx = _uniform_step(x_axis, "x_axis")
    dp = _uniform_step(p_axis, "p_axis")

    # restrict the offset range to the joint support of the two states
    mags = np.abs(psi_a) + np.abs(psi_b)
    big = np.nonzero(mags > 1e-15 * np.max(mags))[0]
    half_support = (x_axis[big[-1]] - x_axis[big[0]]) / 2 if big.size else 0.0
    M = int(np.ceil(half_support / dx)) + 2

    j = np.arange(-M, M + 1)
    targets_plus = q_axis[:, None] + dx * j[None, :]   # q + u/2 with u = 2*dx*j
    vals_a = _sample_shifted(psi_a, x_axis, targets_plus)
    vals_b = _sample_shifted(psi_b, x_axis, targets_plus)
    f = vals_a * np.conj(vals_b[:, ::-1])             # f_j = a(q+jdx) * conj(b(q-jdx))

    du = 2 * dx
    w = np.exp(-1j * du * dp / hbar)
    a0 = np.exp(1j * du * p_axis[0] / hbar)
    S = czt(f, m=len(p_axis), w=w, a=a0, axis=-1)
    shift = np.exp(1j * p_axis * (M * du) / hbar)
    return du * S * shift[None, :]


def wigner_from_psi(psi, x_axis, q_axis, p_axis, params: PhysParams) -> WignerGrid:
    """Wigner function of a pure state sampled on a uniform x grid.

    The state must have decayed below 1e-8 at the grid ends; the imaginary
    residue of the transform is recorded on the returned grid.
    """
    psi = np.asarray(psi, dtype=complex)
    edge = max(abs(psi[0]), abs(psi[-1]))
    if edge >= 1e-8:
        raise TruncationError(
            f"wigner_from_psi: |psi| = {edge:.3e} at the grid boundary (>= 1e-8)")
    W = cross_wigner_transform(psi, psi, x_axis, q_axis, p_axis, params.hbar)
    return WignerGrid(
        q_axis=np.asarray(q_axis, dtype=float),
        p_axis=np.asarray(p_axis, dtype=float),
        values=W.real.copy(),
        imag_residual=float(np.max(np.abs(W.imag))),
    )


@dataclass(frozen=True)
class GaussianWigner:
    """Closed-form Gaussian Wigner function
    prefactor * exp(c_qq q^2 + c_qp qp + c_pp p^2 + c_q q + c_p p + c_0)."""

    prefactor: float
    c_qq: float
    c_qp: float
    c_pp: float
    c_q: float = 0.0
    c_p: float = 0.0
    c_0: float = 0.0

    def __post_init__(self):
        if not (self.c_qq < 0 and self.c_qq * self.c_pp - self.c_qp**2 / 4 > 0):
            raise DomainError("GaussianWigner: quadratic form must be negative definite")

    def __call__(self, q, p):
        q = np.asarray(q, dtype=float)
        p = np.asarray(p, dtype=float)
        return self.prefactor * np.exp(
            self.c_qq * q**2 + self.c_qp * q * p + self.c_pp * p**2
            + self.c_q * q + self.c_p * p + self.c_0)

    def grad(self, q, p):
        """(dW/dq, dW/dp) evaluated analytically."""
        w = self(q, p)
        return (w * (2 * self.c_qq * q + self.c_qp * p + self.c_q),
                w * (self.c_qp * q + 2 * self.c_pp * p + self.c_p))

    def integral(self) -> float:
        """Exact phase-space integral of the Gaussian."""
        # int exp(z^T C z + l^T z) = 2*pi/sqrt(det(-2C)) * exp(-l^T C^{-1} l / 4)
        det = 4 * self.c_qq * self.c_pp - self.c_qp**2
        quad = (self.c_pp * self.c_q**2 - self.c_qp * self.c_q * self.c_p
                + self.c_qq * self.c_p**2) / det
        return float(self.prefactor * 2 * np.pi / np.sqrt(det)
                     * np.exp(self.c_0 - quad))


def gaussian_wigner(g: ComplexGaussian, params: PhysParams) -> GaussianWigner:
    """Exact Wigner function of a complex-Gaussian pure state.

    Obtained by carrying out the Gaussian u-integral of the transform in
    closed form.
    """
    hbar = params.hbar
    ar, ai = g.a.real, g.a.imag
    br, bi = g.b.real, g.b.imag
    return GaussianWigner(
        prefactor=abs(g.n) ** 2 * np.sqrt(2 * np.pi / (-ar)),
        c_qq=2 * ar + 2 * ai**2 / ar,
        c_qp=-2 * ai / (ar * hbar),
        c_pp=1 / (2 * ar * hbar**2),
        c_q=2 * br + 2 * ai * bi / ar,
        c_p=-bi / (ar * hbar),
        c_0=bi**2 / (2 * ar),
    )


def evolve_gaussian_wigner(gw: GaussianWigner, t: float, params: PhysParams) -> GaussianWigner:
    """Pull the Gaussian Wigner function back along the classical flow.

    Substitutes (q, p) -> (x0, p0) into the quadratic exponent; this is the
    normative evolved closed form (no separately transcribed exponent).
    """
    m, F = params.m, params.F
    c1 = -t / m            # x0 = q + c1*p + c0
    c0 = F * t**2 / (2 * m)
    d0 = -F * t            # p0 = p + d0
    return GaussianWigner(
        prefactor=gw.prefactor,
        c_qq=gw.c_qq,
        c_qp=2 * gw.c_qq * c1 + gw.c_qp,
        c_pp=gw.c_qq * c1**2 + gw.c_qp * c1 + gw.c_pp,
        c_q=2 * gw.c_qq * c0 + gw.c_qp * d0 + gw.c_q,
        c_p=(2 * gw.c_qq * c0 * c1 + gw.c_qp * (c1 * d0 + c0)
             + 2 * gw.c_pp * d0 + gw.c_q * c1 + gw.c_p),
        c_0=(gw.c_qq * c0**2 + gw.c_qp * c0 * d0 + gw.c_pp * d0**2
             + gw.c_q * c0 + gw.c_p * d0 + gw.c_0),
    )


def moyal_evolve_points(W0, q, p, t: float, params: PhysParams):
    """Evaluate the evolved Wigner function at points: W(q,p,t) = W0(x0, p0)."""
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    x0, p0 = integrals_of_motion(ClassicalPoint(q, p), t, params)
    return W0(x0, p0)


def moyal_propagator_apply(W0: WignerGrid, t: float, params: PhysParams) -> WignerGrid:
    """Apply the delta-kernel phase-space propagator to a sampled grid.

    Implements the pullback output(q,p) = W0(x0(q,p), p0(q,p)) with bicubic
    interpolation; preimage points outside the grid contribute zero and the
    |W0| mass whose forward image leaves the window is reported (error above
    1e-3 of the total).
    """
    if t == 0:
        return WignerGrid(W0.q_axis.copy(), W0.p_axis.copy(), W0.values.copy())
    spline = RectBivariateSpline(W0.q_axis, W0.p_axis, W0.values, kx=3, ky=3)
    Q = W0.q_axis[:, None]
    P = W0.p_axis[None, :]
    x0, p0 = integrals_of_motion(ClassicalPoint(Q, P), t, params)
    inside = ((x0 >= W0.q_axis[0]) & (x0 <= W0.q_axis[-1])
              & (p0 >= W0.p_axis[0]) & (p0 <= W0.p_axis[-1]))
    values = np.zeros_like(W0.values)
    values[inside] = spline.ev(np.broadcast_to(x0, values.shape)[inside],
                               np.broadcast_to(p0, values.shape)[inside])

    # mass accounting: forward-map the input cells, count |W0| leaving the window
    xf, pf = forward_trajectory(ClassicalPoint(Q, P), t, params)
    gone = ((xf < W0.q_axis[0]) | (xf > W0.q_axis[-1])
            | (pf < W0.p_axis[0]) | (pf > W0.p_axis[-1]))
    absW = np.abs(W0.values)
    total = float(np.sum(absW)) * W0.dq * W0.dp
    lost = float(np.sum(absW[np.broadcast_to(gone, absW.shape)])) * W0.dq * W0.dp
    frac = lost / total if total > 0 else 0.0
    if frac > 1e-3:
        raise WindowError(
            f"moyal_propagator_apply: {frac:.3e} of |W| mass leaves the grid window")
    return WignerGrid(W0.q_axis.copy(), W0.p_axis.copy(), values,
                      out_of_domain_mass=lost)


def wigner_stationary(q, p, s: StationaryState):
    """Closed-form Wigner function of the Airy stationary state:

        W_E(q,p) = (2/sqrt(pi)) (m/(F^2 hbar^2))^(1/3)
                   * Phi(4^(1/3) (p^2/(alpha^2 hbar^2) + alpha q + eps))

    The constant is pinned by the position marginal |psi_E(q)|^2 and is
    cross-checked against regularized quadrature of the defining transform in
    the test-suite.
    """
    m, F, hbar = s.params.m, s.params.F, s.params.hbar
    alpha, eps = s.alpha, s.epsilon
    scalar = np.ndim(q) == 0 and np.ndim(p) == 0
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    arg = np.cbrt(4.0) * (p**2 / (alpha**2 * hbar**2) + alpha * q + eps)
    vals = (2 / np.sqrt(np.pi)) * np.cbrt(m / (F**2 * hbar**2)) * airy_phi_values(arg)
    return float(vals.reshape(-1)[0]) if scalar else vals


def _d5(F, axis, h):
    """5-point centered first derivative along axis (interior points only)."""
    def part(lo, hi):
        return F[tuple(slice(lo, hi) if i == axis else slice(None)
                       for i in range(F.ndim))]
    m2, m1 = part(0, -4), part(1, -3)
    p1, p2 = part(3, -1), part(4, None)
    return (m2 - 8 * m1 + 8 * p1 - p2) / (12 * h)


def _trim(F, axis):
    return F[tuple(slice(2, -2) if i == axis else slice(None) for i in range(F.ndim))]


def correspondence_residual(g: ComplexGaussian, params: PhysParams, *,
                            half_width: float = 5.0, n_qp: int = 501) -> float:
    """Verify the four operator correspondence rules on a Gaussian test state.

    Each rule is checked along two routes: (left) apply the operator on the
    density-matrix side and transform; (right) apply the phase-space operator
    (q +- (i hbar/2) d/dp or (1/2) d/dq +- (i/hbar) p) to the transformed W,
    with 5-point finite differences.  A fifth check assembles the uniform-field
    transport equation from the rules and compares it with the direct form
    F * dW/dp.  Returns the max residual relative to max |W|.
    """
    hbar = params.hbar
    cx = g.mean_x()
    sx = np.sqrt(g.var_x())
    if n_qp < 9:
        raise ResolutionError("correspondence_residual: grid too coarse")
    q_axis = np.linspace(cx - half_width, cx + half_width, n_qp)
    p_axis = np.linspace(g.mean_p(hbar) - half_width, g.mean_p(hbar) + half_width, n_qp)
    dq = q_axis[1] - q_axis[0]
    dp = p_axis[1] - p_axis[0]
    # x grid at half the q step so every q sits on it (fast exact sampling)
    dx = dq / 2
    pad = int(np.ceil((10 * sx + 1.0) / dx))
    nx_half = int(round(half_width / dx)) + pad
    x = cx + dx * np.arange(-nx_half, nx_half + 1)

    psi = gaussian_eval(g, x)
    dpsi = (2 * g.a * x + g.b) * psi          # analytic derivative of the Gaussian
    xpsi = x * psi

    def cross(a, b):
        return cross_wigner_transform(a, b, x, q_axis, p_axis, hbar)

    W = cross(psi, psi)
    Wq = _d5(W, 0, dq)
    Wp = _d5(W, 1, dp)
    Qi = q_axis[2:-2, None]
    Pi = p_axis[None, 2:-2]

    def both_trim(F2):
        return _trim(_trim(F2, 0), 1)

    Wi = both_trim(W)
    Wq_i = _trim(Wq, 1)
    Wp_i = _trim(Wp, 0)
    scale = float(np.max(np.abs(Wi)))

    lhs1 = both_trim(cross(xpsi, psi))
    rhs1 = Qi * Wi + (1j * hbar / 2) * Wp_i
    lhs2 = both_trim(cross(psi, xpsi))
    rhs2 = Qi * Wi - (1j * hbar / 2) * Wp_i
    lhs3 = both_trim(cross(dpsi, psi))
    rhs3 = 0.5 * Wq_i + (1j / hbar) * Pi * Wi
    lhs4 = both_trim(cross(psi, dpsi))
    rhs4 = 0.5 * Wq_i - (1j / hbar) * Pi * Wi

    # assembled transport term for V = -F x: (i/hbar)(V(rule1) - V(rule2)) W = F dW/dp
    lhs5 = (1j / hbar) * (-params.F) * (lhs1 - lhs2)
    rhs5 = params.F * Wp_i

    res = max(np.max(np.abs(lhs1 - rhs1)), np.max(np.abs(lhs2 - rhs2)),
              np.max(np.abs(lhs3 - rhs3)), np.max(np.abs(lhs4 - rhs4)),
              np.max(np.abs(lhs5 - rhs5)))
    return float(res / scale)


def liouville_residual(gw0: GaussianWigner, points, params: PhysParams) -> float:
    """Max |dW/dt + (p/m) dW/dq + F dW/dp| at (q, p, t) samples, all derivatives
    analytic, for W(q,p,t) = W0(x0, p0)."""
    m, F = params.m, params.F
    pts = np.asarray(points, dtype=float)
    q, p, t = pts[:, 0], pts[:, 1], pts[:, 2]
    x0, p0 = integrals_of_motion(ClassicalPoint(q, p), t, params)
    gx, gp = gw0.grad(x0, p0)
    Wt = gx * (-p / m + F * t / m) + gp * (-F)
    Wq = gx
    Wp = gx * (-t / m) + gp
    return float(np.max(np.abs(Wt + (p / m) * Wq + F * Wp)))
