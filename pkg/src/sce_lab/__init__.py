"""Self-consistent expansion laboratory.

Arbitrary-precision evaluation of the self-consistent expansion (SCE)
for classical anharmonic-oscillator partition functions and the Airy
function, its analytic convergence bounds, and benchmark comparisons
against superasymptotics, Borel tail resummation, Pade approximants,
first-level hyperasymptotics and the Lanczos tau method.
"""

from .airy import (AirySCEParams, RootAmbiguityError, RootTrack, StokesSector, airy_cubic_roots,
                   airy_sce, airy_sce_tilde, c3_over_m, collision_M, select_root, stokes_profile)
from .fitting import DegenerateGridError, FitModel, fit_convergence
from .general_q import (GeneralQParams, K_of_M, Q1_general, Q2_general, RadialParams, c_q,
                        critical_alpha, error_bound_general, large_r_asymptotics, optimal_alpha,
                        sce_partition_general, sce_partition_radial, solve_G_general,
                        tangent_point_v0, xi_many_body)
from .precision import (BigComplex, BigReal, MIN_DIGITS, PrecisionError, PrecisionPolicy,
                        working_precision)
from .quartic import (MomentSchedule, PropositionVerdict, QuarticSCEParams, SCEEvaluation, Well,
                      alpha_critical_quartic, alpha_star_quartic, appendix_alpha_critical,
                      appendix_alpha_star, coefficient_peak_indices, dw_critical_order,
                      error_bound_quartic, g_selfconsistent, g_selfconsistent_dw, lnQ_limits,
                      proposition_case_check, rate_bound_A, sce_coefficient,
                      sce_partition_quartic)
from .rivals import (HyperLevel1Result, PadeDegeneracyError, Problem, SeriesCoefficients,
                     SuperasymptoticResult, borel_tail, chebyshev_shifted_coefficients,
                     hyper_error_predict, hyper_level1, lanczos_tau, lanczos_tau_coefficients,
                     pade, pade_fraction, pt_coefficients, singulant, superasymptotic)
from .special import (SpecialFunctionDomainError, airy_reference, bessel_I, bessel_K,
                      exact_Z_double_well, exact_Z_quartic, exp_integral_E1, gamma_fn,
                      quadrature_Z)

__version__ = "0.1.0"
