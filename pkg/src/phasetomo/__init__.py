"""Wavefunction, phase-space and tomographic dynamics of a charge in a uniform field.

Three equivalent descriptions of the same quantum motion, cross-validated
numerically: the position-space kernel (closed Gaussian form), the Wigner
quasiprobability with its characteristics flow, and the symplectic tomogram
with its Radon-transform link to both.
"""

from .errors import (
    DeltaLimitError,
    DivergenceError,
    DomainError,
    NonConvergenceError,
    PhaseTomoError,
    ResolutionError,
    SingularTimeError,
    TruncationError,
    WindowError,
)
from .specfun import AiryEval, airy_phi, airy_phi_second_derivative, airy_phi_values
from .states import (
    ComplexGaussian,
    PhysParams,
    StationaryState,
    complex_gaussian_integral,
    gaussian_eval,
    gaussian_ground,
    psi_stationary,
)
from .propagators import (
    ClassicalPoint,
    GreenKernel,
    compose_check,
    forward_trajectory,
    green,
    green_pde_residual,
    integrals_of_motion,
    propagate_gaussian,
)
from .phasespace import (
    GaussianWigner,
    WignerGrid,
    correspondence_residual,
    cross_wigner_transform,
    evolve_gaussian_wigner,
    gaussian_wigner,
    liouville_residual,
    moyal_evolve_points,
    moyal_propagator_apply,
    wigner_from_psi,
    wigner_stationary,
)
from .tomography import (
    TomogramField,
    TomogramSlice,
    gaussian_tomogram,
    tomogram_field_from_wigner,
    tomogram_from_psi,
    tomogram_from_wigner,
    tomogram_stationary,
    tomographic_pde_residual,
    tomographic_propagate,
    wigner_from_tomogram,
)
from .oracle import (
    GridState,
    QuadratureResult,
    QuadratureSpec,
    crank_nicolson_step,
    damped_quadrature,
    evolve,
    planck_taper,
    richardson_extrapolate,
)

__version__ = "0.1.0"
