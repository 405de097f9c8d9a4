"""Desk-scale verification toolkit for Lebesgue-type inequalities of
Fourier sums on classes of generalized Poisson integrals.

Core pieces: certified evaluation of the slowly decaying kernel tail,
localization of its 2n zeros per period, piecewise L1 norms with the
principal-log / residual decomposition, best uniform trigonometric
approximation by exchange, the spectral/convolution deviation routes,
and the plateau-ramp extremal construction that attains the bound.
"""

from ._backend import backend_name
from .approx import AlternationCertificate, best_trig_approx, verify_alternation
from .errors import (
    DegenerateBrackets,
    DeltaTooLarge,
    DomainError,
    ExchangeStall,
    LeblabError,
    NoSignChange,
    PhaseNotMonotone,
    PrecisionLoss,
    QuadratureStall,
    ToleranceUnreachable,
)
from .extremal import (
    ClassMajorant,
    ExtremalFunction,
    build_phi_delta,
    choose_delta,
    class_supremum,
    compute_Rn_delta,
    verify_equality_case,
)
from .kernel import (
    TailKernel,
    dirichlet,
    estimate_Mn,
    eval_envelope_phase,
    eval_tail_kernel,
    make_tail_kernel,
    psi,
    tail_sum,
)
from .norms import (
    NormReport,
    dense_grid_l1_oracle,
    integral_Is,
    l1_norm_tail_kernel,
    lebesgue_constant,
    theta_defect,
)
from .params import (
    KernelParams,
    ThresholdSet,
    threshold_n0,
    threshold_n1,
    threshold_nstar,
    threshold_set,
    validate_params,
)
from .sequences import MonotonicityCertificate, check_abs_monotone, finite_difference
from .sweep import SweepSpec, run_sweep
from .transform import PoissonPair, convolve_quadrature, deviation_rho, poisson_integral
from .trigpoly import TrigPolynomial, partial_sum
from .zeros import (
    BracketList,
    ZeroSet,
    corollary_brackets,
    locate_zeros,
    locate_zeros_bracketed,
    locate_zeros_grid,
    locate_zeros_phase,
    verify_sign_alternation,
)

__version__ = "0.1.0"
