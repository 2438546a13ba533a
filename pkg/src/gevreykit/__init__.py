"""Gevrey asymptotic expansions: exact Stirling/Bernoulli coefficients,
remainder bounds and optimal truncation, Borel-Laplace summation, and the
geometry of uniqueness classes in sectors."""

from .borel_laplace import (BorelCoefficients, BorelSummation, HalfStrip, PadeApproximant,
                            RayTransformConfig, borel_inverse, borel_sum, borel_transform,
                            laplace_integral, nevanlinna_check, pade_continue, radius_estimate,
                            ray_transform, ray_transform_bound)
from .errors import (DegenerateApproximantError, DegenerateSequenceError, DomainError,
                     RayObstructedError)
from .gevrey_engine import (Counterexample, EstimateReport, EstimateRow, GevreyExpansion,
                            Truncation, counterexample, optimal_truncation, partial_sum,
                            remainder_bound, superasymptotic_bound, verify_gevrey)
from .quadrature import QuadratureConfig, integrate_damped
from .sector_geom import (ADeltaProfile, HalfPlane, LogLogResult, MDeltaProfile, Sector,
                          TSectorPair, Verdict, a_delta_condition, c_inequality_constant,
                          c_inequality_holds, carleman_loglog, criticality, halfplane_contains,
                          havin_shift, log_integral_divergence, opening, t_regions)
from .series_core import (CoefficientSequence, bernoulli_asymptotic, bernoulli_numbers,
                          binet_taylor_coeffs, gevrey_order_estimate, series_reciprocal,
                          stirling_coeffs)
from .stirling_binet import (BinetConfig, K_of_z, StirlingOptimum, WidenedSectorCheck, binet_F,
                             binet_F_mp, binet_P, log_gamma, optimal_error_stirling,
                             stirling_bound_scan, stirling_expansion, stirling_sum,
                             stirling_term_bound, verify_estimates_st, verify_widened_sector,
                             widened_sector_rate)

__version__ = "0.1.0"
