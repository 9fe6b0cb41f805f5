"""Self-verification suites behind `phasetomo verify`.

Each check computes a residual and compares it against its pinned tolerance;
seeds are fixed so reports are reproducible bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle, phasespace, propagators, specfun, states, tomography

SUITE_NAMES = ("specfun", "green", "wigner", "tomography")


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def _params():
    return states.PhysParams(m=1.0, F=1.0, hbar=1.0)


# ---------------------------------------------------------------------------

def suite_specfun() -> list[Check]:
    checks = []
    phi0 = math.sqrt(math.pi) * 3 ** (-2 / 3) / math.gamma(2 / 3)
    checks.append(Check("airy_anchor_phi0", abs(specfun.airy_phi(0.0).value - phi0), 1e-10))

    xs = np.linspace(-8.0, 4.0, 241)
    h = 2e-3
    stencil = (-specfun.airy_phi_values(xs - 2 * h)
               + 16 * specfun.airy_phi_values(xs - h)
               - 30 * specfun.airy_phi_values(xs)
               + 16 * specfun.airy_phi_values(xs + h)
               - specfun.airy_phi_values(xs + 2 * h)) / (12 * h * h)
    ode = np.max(np.abs(stencil - xs * specfun.airy_phi_values(xs)))
    checks.append(Check("airy_ode_residual", float(ode), 1e-6))

    xs = np.linspace(0.0, 10.0, 101)
    vals = specfun.airy_phi_values(xs)
    mono = float(np.max(np.diff(vals)))  # <= 0 when strictly decreasing
    checks.append(Check("airy_decay_monotone", max(mono, 0.0), 1e-15))
    checks.append(Check("airy_decay_value_at_10", abs(specfun.airy_phi(10.0).value), 1e-9))

    xo = np.concatenate([np.linspace(8.0, 10.0, 41), -np.linspace(8.0, 10.0, 41)])
    vs, _ = specfun.ai_series(xo)
    va, _ = specfun.ai_asymptotic(xo)
    checks.append(Check("airy_branch_overlap", float(np.max(np.abs(vs - va))), 1e-11))

    rng = np.random.default_rng(20240101)
    xr = rng.uniform(-10.0, 10.0, 50)
    from scipy import special
    bridge = np.max(np.abs(specfun.airy_phi_values(xr)
                           - np.sqrt(np.pi) * special.airy(xr)[0]))
    checks.append(Check("airy_bridge_vs_scipy", float(bridge), 1e-10))
    return checks


def suite_green() -> list[Check]:
    p = _params()
    p_free = states.PhysParams(m=1.0, F=0.0, hbar=1.0)
    checks = []

    x = np.linspace(-3.0, 3.0, 41)
    m, hbar, t = p_free.m, p_free.hbar, 0.7
    free = (np.sqrt(m / (2j * np.pi * hbar * t))
            * np.exp(1j * (m * (x - 0.3) ** 2 / (2 * hbar * t))))
    dev = np.max(np.abs(propagators.green(x, 0.3, t, p_free) - free))
    checks.append(Check("green_free_field_reduction", float(dev), 0.0))

    mods = np.abs(propagators.green(np.linspace(-5, 5, 101), 1.3, 0.3, p))
    dev = np.max(np.abs(mods - np.sqrt(p.m / (2 * np.pi * p.hbar * 0.3))))
    checks.append(Check("green_modulus_invariance", float(dev), 1e-13))

    g0 = states.gaussian_ground(1.0, p)
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        t = rng.uniform(0.05, 5.0)
        tau = rng.uniform(0.01, 0.99) * t
        worst = max(worst, propagators.compose_check(t, tau, g0, p))
    checks.append(Check("green_semigroup", worst, 1e-12))

    worst = 0.0
    for _ in range(10):
        gr = states.ComplexGaussian(
            n=rng.uniform(0.3, 1.2) * np.exp(1j * rng.uniform(0, 2 * np.pi)),
            a=complex(-rng.uniform(0.2, 2.0), rng.uniform(-1.0, 1.0)),
            b=complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)))
        for t in (0.1, 1.0, 5.0):
            gt = propagators.propagate_gaussian(gr, t, p)
            worst = max(worst, abs(gt.norm() - gr.norm()))
    checks.append(Check("green_unitarity", worst, 1e-12))

    worst = 0.0
    for t in (0.1, 1.0):
        for xp in (0.0, 1.0):
            worst = max(worst, propagators.green_pde_residual(
                np.linspace(-2.0, 2.0, 4001), xp, t, p))
    checks.append(Check("green_pde_system", worst, 1e-6))

    # delta limit: kernel against a fixed smooth Gaussian, errors shrink with t
    errs = []
    for t in (0.1, 0.01):
        n = 1 << 17
        xg = np.linspace(-12.0, 12.0, n)
        fg = np.exp(-(xg**2))
        ker = propagators.green(0.3, xg, t, p)
        val = np.trapezoid(ker * fg, xg)
        errs.append(abs(val - np.exp(-0.3**2)))
    checks.append(Check("green_delta_limit_err_t0.01", errs[1], 5e-3))
    checks.append(Check("green_delta_limit_shrinks", errs[1] / errs[0], 1.0))

    # operator means of the integrals of motion stay constant
    g0 = states.gaussian_ground(1.0, p)
    base = None
    worst = 0.0
    for t in (0.0, 0.5, 1.0, 2.0):
        gt = propagators.propagate_gaussian(g0, t, p)
        x0_mean = gt.mean_x() - gt.mean_p(p.hbar) * t / p.m + p.F * t**2 / (2 * p.m)
        p0_mean = gt.mean_p(p.hbar) - p.F * t
        if base is None:
            base = (x0_mean, p0_mean)
        worst = max(worst, abs(x0_mean - base[0]), abs(p0_mean - base[1]))
    checks.append(Check("green_constant_motion_means", worst, 1e-10))

    # Crank-Nicolson oracle agreement
    x = np.linspace(-20.0, 20.0, 4096)
    s0 = oracle.GridState(x, states.gaussian_eval(g0, x), p)
    s1 = oracle.evolve(s0, 1.0, 9e-4)
    ref = states.gaussian_eval(propagators.propagate_gaussian(g0, 1.0, p), x)
    l2 = np.sqrt(np.sum(np.abs(s1.psi - ref) ** 2) * s1.dx)
    checks.append(Check("green_oracle_l2", float(l2), 1e-4))
    return checks


def suite_wigner() -> list[Check]:
    p = _params()
    checks = []
    g = states.gaussian_ground(1.0, p)
    gw = phasespace.gaussian_wigner(g, p)
    checks.append(Check("wigner_gaussian_peak", abs(gw(0.0, 0.0) - 2.0), 1e-12))

    x = np.linspace(-20.0, 20.0, 4096)
    psi = states.gaussian_eval(g, x)
    qa = np.linspace(-5.0, 5.0, 161)
    pa = np.linspace(-5.0, 5.0, 161)
    W = phasespace.wigner_from_psi(psi, x, qa, pa, p)
    Wc = gw(qa[:, None], pa[None, :])
    checks.append(Check("wigner_transform_vs_closed",
                        float(np.max(np.abs(W.values - Wc))), 1e-6))
    checks.append(Check("wigner_imag_residue", W.imag_residual, 1e-10))
    checks.append(Check("wigner_normalization",
                        abs(W.integral() / (2 * np.pi * p.hbar) - 1.0), 1e-6))
    purity = np.trapezoid(np.trapezoid(W.values**2, pa, axis=1), qa) / (2 * np.pi * p.hbar)
    checks.append(Check("wigner_purity", abs(float(purity) - 1.0), 1e-6))

    worst = 0.0
    for t in (0.5, 1.0):
        gt = propagators.propagate_gaussian(g, t, p)
        Wt = phasespace.wigner_from_psi(states.gaussian_eval(gt, x), x, qa, pa, p)
        Wm = phasespace.moyal_evolve_points(gw, qa[:, None], pa[None, :], t, p)
        worst = max(worst, float(np.max(np.abs(Wt.values - Wm))))
    checks.append(Check("wigner_consistency_triangle", worst, 1e-6))

    checks.append(Check("wigner_correspondence_ground",
                        phasespace.correspondence_residual(g, p), 1e-6))
    gd = states.ComplexGaussian(n=g.n, a=g.a, b=0.5)
    checks.append(Check("wigner_correspondence_displaced",
                        phasespace.correspondence_residual(gd, p), 1e-6))

    rng = np.random.default_rng(11)
    pts = np.column_stack([rng.uniform(-3, 3, 100), rng.uniform(-3, 3, 100),
                           rng.uniform(0, 2, 100)])
    checks.append(Check("wigner_liouville_residual",
                        phasespace.liouville_residual(gw, pts, p), 1e-10))

    qa2 = np.linspace(-8.0, 8.0, 321)
    pa2 = np.linspace(-8.0, 8.0, 321)
    W0g = phasespace.WignerGrid(qa2, pa2, gw(qa2[:, None], pa2[None, :]))
    W1 = phasespace.moyal_propagator_apply(W0g, 1.0, p)
    checks.append(Check("wigner_pullback_mass",
                        abs(W1.integral() - W0g.integral()), 1e-6))
    exact = phasespace.moyal_evolve_points(gw, qa2[:, None], pa2[None, :], 1.0, p)
    sl = (slice(40, -40), slice(40, -40))
    checks.append(Check("wigner_pullback_vs_exact",
                        float(np.max(np.abs(W1.values[sl] - exact[sl]))), 1e-6))

    s = states.StationaryState(1.0, p)
    spec = oracle.QuadratureSpec(window="planck_taper", taper_fraction=0.35,
                                 cesaro_widths=(40.0, 50.0, 60.0, 70.0, 80.0))
    u = np.linspace(-80.0, 80.0, 160001)
    worst = 0.0
    for q, pp in ((0.0, 0.5), (0.0, 1.0), (-1.0, 0.5)):
        f = (states.psi_stationary(q + u / 2, s) * states.psi_stationary(q - u / 2, s)
             * np.exp(-1j * pp * u / p.hbar))
        quad = oracle.damped_quadrature(u, f, spec).value.real
        closed = phasespace.wigner_stationary(q, pp, s)
        worst = max(worst, abs(quad - closed) / abs(closed))
    checks.append(Check("wigner_stationary_vs_quadrature", worst, 1e-2))
    return checks


def suite_tomography() -> list[Check]:
    p = _params()
    checks = []
    g = states.gaussian_ground(1.0, p)
    gw = phasespace.gaussian_wigner(g, p)
    qa = np.linspace(-7.0, 7.0, 281)
    pa = np.linspace(-7.0, 7.0, 281)
    W = phasespace.WignerGrid(qa, pa, gw(qa[:, None], pa[None, :]))
    Xa = np.linspace(-6.0, 6.0, 401)

    s10 = tomography.tomogram_from_wigner(W, 1.0, 0.0, Xa, p.hbar)
    ref = np.pi**-0.5 * np.exp(-(Xa**2))
    checks.append(Check("tomo_position_marginal",
                        float(np.max(np.abs(s10.values - ref))), 1e-6))
    checks.append(Check("tomo_slice_normalization", abs(s10.integral() - 1.0), 1e-6))
    checks.append(Check("tomo_nonnegativity",
                        max(0.0, -float(np.min(s10.values))), 1e-8))

    x = np.linspace(-20.0, 20.0, 4096)
    psi = states.gaussian_eval(g, x)
    Wpsi = phasespace.wigner_from_psi(psi, x, qa, pa, p)
    rng = np.random.default_rng(23)
    worst = 0.0
    for _ in range(5):
        th = rng.uniform(0.15, np.pi - 0.15)
        mu, nu = np.cos(th), np.sin(th)
        sp = tomography.tomogram_from_psi(psi, x, mu, nu, Xa, p)
        sw = tomography.tomogram_from_wigner(Wpsi, mu, nu, Xa, p.hbar)
        worst = max(worst, float(np.max(np.abs(sp.values - sw.values))))
    checks.append(Check("tomo_dual_path", worst, 1e-5))

    s_base = tomography.tomogram_from_psi(psi, x, 0.6, 0.8, Xa, p)
    worst = 0.0
    for lam in (0.5, 2.0, -1.0):
        s_scaled = tomography.tomogram_from_psi(psi, x, lam * 0.6, lam * 0.8,
                                                lam * Xa, p)
        worst = max(worst, float(np.max(np.abs(s_scaled.values * abs(lam)
                                               - s_base.values))))
    checks.append(Check("tomo_homogeneity", worst, 1e-6))

    theta = (np.arange(180) + 0.5) * np.pi / 180
    Xf = np.linspace(-6.4, 6.4, 512)
    T = tomography.tomogram_field_from_wigner(W, theta, Xf, p.hbar)
    qr = np.linspace(-4.0, 4.0, 161)
    pr = np.linspace(-4.0, 4.0, 161)
    Wrec = tomography.wigner_from_tomogram(T, qr, pr, p.hbar)
    Wex = gw(qr[:, None], pr[None, :])
    rel = float(np.max(np.abs(Wrec.values - Wex)) / np.max(np.abs(Wex)))
    checks.append(Check("tomo_inverse_radon_ground", rel, 1e-3))

    gwt = phasespace.evolve_gaussian_wigner(gw, 1.0, p)
    qa2 = np.linspace(-9.0, 9.0, 361)
    pa2 = np.linspace(-9.0, 9.0, 361)
    Wt = phasespace.WignerGrid(qa2, pa2, gwt(qa2[:, None], pa2[None, :]))
    T2 = tomography.tomogram_field_from_wigner(Wt, theta, np.linspace(-8.0, 8.0, 512),
                                               p.hbar)
    Wrec2 = tomography.wigner_from_tomogram(T2, qr, pr, p.hbar)
    Wex2 = gwt(qr[:, None], pr[None, :])
    rel = float(np.max(np.abs(Wrec2.values - Wex2)) / np.max(np.abs(Wex2)))
    checks.append(Check("tomo_inverse_radon_evolved", rel, 3e-3))

    def w0(X, mu, nu):
        return tomography.gaussian_tomogram(g, mu, nu, X, p)

    worst = 0.0
    xt = np.linspace(-25.0, 25.0, 8192)
    for t in (0.5, 1.0):
        gt = propagators.propagate_gaussian(g, t, p)
        psit = states.gaussian_eval(gt, xt)
        for mu, nu in ((1.0, 0.0), (0.6, 0.8)):
            Xs = np.linspace(-5.0, 5.0, 201)
            via_char = tomography.tomographic_propagate(w0, Xs, mu, nu, t, p)
            direct = tomography.tomogram_from_psi(psit, xt, mu, nu, Xs, p).values
            worst = max(worst, float(np.max(np.abs(via_char - direct))))
    checks.append(Check("tomo_evolution_dual_path", worst, 1e-5))

    rng = np.random.default_rng(31)
    th = rng.uniform(0, np.pi, 20)
    pts = np.column_stack([rng.uniform(-2, 2, 20), np.cos(th), np.sin(th)])
    checks.append(Check("tomo_pde_residual",
                        tomography.tomographic_pde_residual(g, pts, 0.5, p), 1e-5))

    s = states.StationaryState(1.0, p)
    y = np.linspace(-105.0, 105.0, 300001)
    psiE = states.psi_stationary(y, s)
    spec = oracle.QuadratureSpec(window="planck_taper", taper_fraction=0.35,
                                 cesaro_widths=(60.0, 75.0, 90.0, 105.0))
    worst = 0.0
    for mu, nu in ((1.0, 0.0), (1.0, 1.0)):
        for X in (-1.0, 0.0, 1.0):
            closed = tomography.tomogram_stationary(X, mu, nu, s)
            if nu == 0.0:
                quad = states.psi_stationary(X / mu, s) ** 2 / abs(mu)
            else:
                f = psiE * np.exp(1j * mu / (2 * p.hbar * nu) * y**2
                                  - 1j * X / (p.hbar * nu) * y)
                I = oracle.damped_quadrature(y, f, spec).value
                quad = abs(I) ** 2 / (2 * np.pi * p.hbar * abs(nu))
            worst = max(worst, abs(closed - quad) / abs(closed))
    checks.append(Check("tomo_stationary_vs_chirp_quadrature", worst, 1e-3))

    def wE(X, mu, nu):
        return tomography.tomogram_stationary(X, mu, nu, s)

    # stationarity: the closed form is invariant under the characteristics
    # flow (its argument absorbs the flow exactly via alpha^3 = -2mF/hbar^2)
    worst = 0.0
    for X, mu, nu in ((0.0, 1.0, 0.0), (1.0, 1.0, 0.5), (-1.0, 0.8, -0.4)):
        evolved = tomography.tomographic_propagate(wE, X, mu, nu, 0.7, p)
        stat = tomography.tomogram_stationary(X, mu, nu, s)
        worst = max(worst, abs(evolved - stat) / abs(stat))
    checks.append(Check("tomo_stationarity_flow", worst, 1e-3))
    return checks


SUITES = {
    "specfun": suite_specfun,
    "green": suite_green,
    "wigner": suite_wigner,
    "tomography": suite_tomography,
}


def run_suites(names, tol_override: float | None = None):
    """Run the named suites; returns (all_passed, report dict)."""
    results = {}
    ok = True
    for name in names:
        checks = SUITES[name]()
        if tol_override is not None:
            checks = [Check(c.name, c.residual, tol_override) for c in checks]
        results[name] = [
            {"check": c.name, "residual": c.residual, "tolerance": c.tolerance,
             "passed": bool(c.passed)} for c in checks]
        ok = ok and all(c.passed for c in checks)
    return ok, results
