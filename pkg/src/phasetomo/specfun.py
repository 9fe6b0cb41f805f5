"""High-accuracy evaluation of the Airy-type function Phi(x) = sqrt(pi) * Ai(x).

Phi solves y'' = x*y with Phi(x) = (1/sqrt(pi)) * Integral_0^inf cos(u^3/3 + u*x) du,
i.e. sqrt(pi) times the conventional Airy function Ai.

Evaluation strategy
-------------------
* |x| <= 9:  Maclaurin series Ai(x) = Ai(0)*f(x) + Ai'(0)*g(x), where f and g are
  the two power-series solutions of y'' = x*y.  The series suffers catastrophic
  cancellation on the decaying side (condition ~ exp(2*zeta), zeta = 2/3*x^1.5),
  so all accumulation runs in double-double arithmetic (~31 significant digits).
* x > 9:     exponentially decaying asymptotic expansion.
* x < -9:    oscillatory sine/cosine asymptotic expansion.

The switchover sits at 9.0 because the asymptotic series are divergent: their
optimally truncated error near |x| = 4.5 is ~1e-10, far above the 1e-11 branch
agreement this module guarantees on the overlap window [8, 10].  At |x| >= 8
both branches agree to better than 1e-14 absolute.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["AiryEval", "airy_phi", "airy_phi_values", "airy_phi_second_derivative"]

SQRT_PI = 1.7724538509055160273

# Ai(0) = 3^(-2/3)/Gamma(2/3) and Ai'(0) = -3^(-1/3)/Gamma(1/3), split to
# double-double precision.
_AI0 = (0.3550280538878172, 2.05233632436212e-17)
_AIP0 = (-0.2588194037928068, 2.522243111610832e-17)

_SERIES_CUTOFF = 9.0
_SERIES_MAX_TERMS = 160
_DD_EPS = 1.23e-32  # (2^-53)^2
_SPLIT = 134217729.0  # 2^27 + 1, Dekker splitter


# ---------------------------------------------------------------------------
# double-double primitives (vectorized; error-free transforms)
# ---------------------------------------------------------------------------

def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    c = _SPLIT * a
    ahi = c - (c - a)
    alo = a - ahi
    c = _SPLIT * b
    bhi = c - (c - b)
    blo = b - bhi
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def _dd_add(x, y):
    s, e = _two_sum(x[0], y[0])
    e = e + x[1] + y[1]
    return _two_sum(s, e)


def _dd_mul(x, y):
    p, e = _two_prod(x[0], y[0])
    e = e + x[0] * y[1] + x[1] * y[0]
    return _two_sum(p, e)


def _dd_div_scalar(x, d):
    # x (dd array) divided by an exact double scalar d
    q1 = x[0] / d
    p, e = _two_prod(q1, d)
    r_hi, r_e = _two_sum(x[0], -p)
    r = r_hi + (r_e + x[1] - e)
    q2 = r / d
    return _two_sum(q1, q2)


# ---------------------------------------------------------------------------
# branch evaluators
# ---------------------------------------------------------------------------

def ai_series(x):
    """Maclaurin-series Ai(x) with double-double accumulation.

    Valid everywhere in principle; accuracy degrades past |x| ~ 12 where the
    cancellation exceeds the double-double word length.  Returns (value, err)
    arrays where err is a bound on the accumulation error.
    """
    x = np.asarray(x, dtype=float)
    x3 = _dd_mul(_dd_mul((x, np.zeros_like(x)), (x, np.zeros_like(x))),
                 (x, np.zeros_like(x)))

    # f-series: term_{k+1} = term_k * x^3 / ((3k+2)(3k+3)), term_0 = 1
    term = (np.ones_like(x), np.zeros_like(x))
    s_f = term
    max_f = np.ones_like(x)
    for k in range(_SERIES_MAX_TERMS):
        term = _dd_div_scalar(_dd_mul(term, x3), float((3 * k + 2) * (3 * k + 3)))
        s_f = _dd_add(s_f, term)
        np.maximum(max_f, np.abs(term[0]), out=max_f)
        if np.all(np.abs(term[0]) <= 1e-38 * max_f):
            break

    # g-series: term_{k+1} = term_k * x^3 / ((3k+3)(3k+4)), term_0 = x
    term = (x.copy(), np.zeros_like(x))
    s_g = term
    max_g = np.abs(x)
    for k in range(_SERIES_MAX_TERMS):
        term = _dd_div_scalar(_dd_mul(term, x3), float((3 * k + 3) * (3 * k + 4)))
        s_g = _dd_add(s_g, term)
        np.maximum(max_g, np.abs(term[0]), out=max_g)
        if np.all(np.abs(term[0]) <= 1e-38 * (max_g + 1e-300)):
            break

    out = _dd_add(_dd_mul(_AI0, s_f), _dd_mul(_AIP0, s_g))
    value = out[0] + out[1]
    err = (max_f + max_g) * _DD_EPS * 4.0 + np.abs(value) * 4e-16
    return value, err


def _asym_u(n):
    u = np.empty(n)
    u[0] = 1.0
    for k in range(n - 1):
        u[k + 1] = u[k] * (6 * k + 5) * (6 * k + 1) / (72.0 * (k + 1))
    return u


_U = _asym_u(44)


def ai_asymptotic(x):
    """Asymptotic Ai(x) for |x| >~ 8, optimally truncated.

    Returns (value, err) where err includes the first omitted term.
    """
    x = np.asarray(x, dtype=float)
    value = np.empty_like(x)
    err = np.empty_like(x)

    pos = x > 0
    if np.any(pos):
        xp = x[pos]
        zeta = (2.0 / 3.0) * xp ** 1.5
        s = np.zeros_like(xp)
        prev = np.full_like(xp, np.inf)
        alive = np.ones_like(xp, dtype=bool)
        zpow = np.ones_like(xp)
        omitted = np.zeros_like(xp)
        sign = 1.0
        for k in range(len(_U)):
            term = _U[k] * zpow
            stop = term > prev
            newly = alive & stop
            omitted[newly] = term[newly]
            alive &= ~stop
            s[alive] += sign * term[alive]
            prev = term
            zpow = zpow / zeta
            sign = -sign
        omitted[alive] = np.abs(_U[-1] * zpow[alive] * zeta[alive])
        pref = np.exp(-zeta) / (2.0 * np.sqrt(np.pi) * xp ** 0.25)
        value[pos] = pref * s
        err[pos] = pref * (omitted + np.abs(s) * 4e-16)

    neg = ~pos
    if np.any(neg):
        y = -x[neg]
        zeta = (2.0 / 3.0) * y ** 1.5
        P = np.zeros_like(y)
        Q = np.zeros_like(y)
        prev = np.full_like(y, np.inf)
        alive = np.ones_like(y, dtype=bool)
        zpow = np.ones_like(y)
        omitted = np.zeros_like(y)
        for k in range(len(_U) // 2):
            tp = _U[2 * k] * zpow
            tq = _U[2 * k + 1] * zpow / zeta
            stop = tp > prev
            newly = alive & stop
            omitted[newly] = tp[newly]
            alive &= ~stop
            sgn = -1.0 if k % 2 else 1.0
            P[alive] += sgn * tp[alive]
            Q[alive] += sgn * tq[alive]
            prev = tp
            zpow = zpow / (zeta * zeta)
        omitted[alive] = np.abs(_U[-2] * zpow[alive] * zeta[alive] ** 2)
        pref = 1.0 / (np.sqrt(np.pi) * y ** 0.25)
        phase = zeta - np.pi / 4.0
        value[neg] = pref * (np.cos(phase) * P + np.sin(phase) * Q)
        err[neg] = pref * (omitted + (np.abs(P) + np.abs(Q)) * 4e-16)

    return value, err


def _ai(x):
    """Branch dispatcher: (value, abs-error) arrays for Ai(x)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(x)):
        raise DomainError("airy_phi: argument must be finite")
    shape = x.shape
    x = x.ravel()
    value = np.empty_like(x)
    err = np.empty_like(x)
    core = np.abs(x) <= _SERIES_CUTOFF
    if np.any(core):
        value[core], err[core] = ai_series(x[core])
    tail = ~core
    if np.any(tail):
        value[tail], err[tail] = ai_asymptotic(x[tail])
    return value.reshape(shape), err.reshape(shape)


# ---------------------------------------------------------------------------
# public surface
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AiryEval:
    """Value of Phi at a point together with an absolute error estimate."""

    value: float
    abs_error_estimate: float


def airy_phi(x: float) -> AiryEval:
    """Evaluate Phi(x) = sqrt(pi) * Ai(x).

    Absolute error <= 1e-10 for |x| <= 20 (in practice ~1e-15).
    """
    v, e = _ai(np.asarray([float(x)]))
    return AiryEval(value=float(v[0]) * SQRT_PI, abs_error_estimate=float(e[0]) * SQRT_PI)


def airy_phi_values(x) -> np.ndarray:
    """Vectorized Phi over an array of abscissas (values only)."""
    v, _ = _ai(np.asarray(x, dtype=float))
    return v * SQRT_PI


def airy_phi_second_derivative(x: float) -> float:
    """Phi''(x), obtained from the defining ODE Phi'' = x * Phi."""
    return float(x) * airy_phi(x).value
