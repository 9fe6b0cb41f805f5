"""States of a charge in a uniform field: Airy stationary states and complex Gaussians.

The Hamiltonian throughout is H = p^2/(2m) - F*x.  Stationary states at energy E
are shifted Airy profiles psi_E(x) = A * Phi(alpha*x + eps); Gaussian pure states
are kept in the exact parametrization n * exp(a*x^2 + b*x), which is closed under
propagation by the quadratic-Hamiltonian kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, DomainError
from .specfun import airy_phi_values

__all__ = [
    "PhysParams",
    "StationaryState",
    "ComplexGaussian",
    "psi_stationary",
    "gaussian_ground",
    "gaussian_eval",
    "complex_gaussian_integral",
]


@dataclass(frozen=True)
class PhysParams:
    """Mass m > 0, field strength F >= 0 and Planck constant hbar > 0."""

    m: float = 1.0
    F: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.m > 0 and np.isfinite(self.m)):
            raise DomainError("PhysParams: mass must be positive and finite")
        if not (self.hbar > 0 and np.isfinite(self.hbar)):
            raise DomainError("PhysParams: hbar must be positive and finite")
        if not (self.F >= 0 and np.isfinite(self.F)):
            raise DomainError("PhysParams: field strength must be >= 0 and finite")


@dataclass(frozen=True)
class StationaryState:
    """Energy eigenstate of the linear potential, psi_E(x) = A*Phi(alpha*x + eps).

    A     = (2m)^(1/3) / (pi^(1/2) F^(1/6) hbar^(2/3))   (delta-normalization in E)
    alpha = -(2 m F / hbar^2)^(1/3) < 0
    eps   = alpha * E / F
    """

    energy: float
    params: PhysParams

    def __post_init__(self):
        if self.params.F <= 0:
            raise DomainError("StationaryState requires F > 0")
        if not np.isfinite(self.energy):
            raise DomainError("StationaryState: energy must be finite")

    @property
    def A(self) -> float:
        m, F, hbar = self.params.m, self.params.F, self.params.hbar
        return (2 * m) ** (1 / 3) / (np.pi ** 0.5 * F ** (1 / 6) * hbar ** (2 / 3))

    @property
    def alpha(self) -> float:
        m, F, hbar = self.params.m, self.params.F, self.params.hbar
        return -((2 * m * F / hbar**2) ** (1 / 3))

    @property
    def epsilon(self) -> float:
        return self.alpha * self.energy / self.params.F


@dataclass(frozen=True)
class ComplexGaussian:
    """Pure state n * exp(a*x^2 + b*x) with Re(a) < 0."""

    n: complex
    a: complex
    b: complex = 0.0

    def __post_init__(self):
        if not (self.a.real < 0):
            raise DomainError("ComplexGaussian requires Re(a) < 0")

    def norm(self) -> float:
        """Squared L2 norm, integral of |psi|^2."""
        ar, br = self.a.real, self.b.real
        return abs(self.n) ** 2 * np.sqrt(np.pi / (-2 * ar)) * np.exp(br**2 / (-2 * ar))

    def mean_x(self) -> float:
        return -self.b.real / (2 * self.a.real)

    def var_x(self) -> float:
        return -1.0 / (4 * self.a.real)

    def mean_p(self, hbar: float = 1.0) -> float:
        # <p> = -i*hbar <2a x + b> over |psi|^2; real part survives
        return hbar * (2 * self.a.imag * self.mean_x() + self.b.imag)

    def cov_xp(self, hbar: float = 1.0) -> float:
        """Symmetrized covariance <{x,p}>/2 - <x><p>."""
        ar, ai = self.a.real, self.a.imag
        return -hbar * ai / (2 * ar)

    def var_p(self, hbar: float = 1.0) -> float:
        ar, ai = self.a.real, self.a.imag
        return -(hbar**2) * (ar**2 + ai**2) / ar


def psi_stationary(x, s: StationaryState):
    """Evaluate psi_E(x) = A * Phi(alpha*x + eps); real-valued."""
    vals = s.A * airy_phi_values(np.asarray(x, dtype=float) * s.alpha + s.epsilon)
    return float(vals[0]) if np.isscalar(x) else vals


def gaussian_ground(omega: float, params: PhysParams) -> ComplexGaussian:
    """Ground state of an auxiliary spring of frequency omega:
    psi_0(x) = (m*omega/(pi*hbar))^(1/4) * exp(-m*omega*x^2/(2*hbar)); unit norm."""
    if not (omega > 0 and np.isfinite(omega)):
        raise DomainError("gaussian_ground requires omega > 0")
    m, hbar = params.m, params.hbar
    return ComplexGaussian(
        n=(m * omega / (np.pi * hbar)) ** 0.25,
        a=-m * omega / (2 * hbar),
        b=0.0,
    )


def gaussian_eval(g: ComplexGaussian, x):
    """Pointwise value n * exp(a*x^2 + b*x); accepts scalars or arrays."""
    x = np.asarray(x)
    return g.n * np.exp(g.a * x**2 + g.b * x)


def complex_gaussian_integral(a: complex, b: complex) -> complex:
    """Closed form of Integral exp(a*x^2 + b*x) dx over the real line.

    Equals sqrt(pi/(-a)) * exp(-b^2/(4a)) with the principal square-root branch
    (continuous from the normalizable half-plane Re(a) < 0).  Pure-imaginary a
    is admitted in the Fresnel sense.
    """
    a = complex(a)
    b = complex(b)
    if a == 0:
        raise DivergenceError("complex_gaussian_integral: a = 0 diverges")
    if a.real > 0:
        raise DivergenceError("complex_gaussian_integral: Re(a) > 0 diverges")
    return np.sqrt(np.pi / (-a)) * np.exp(-b * b / (4 * a))
