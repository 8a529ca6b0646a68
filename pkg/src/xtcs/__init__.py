"""Rationally extended truncated Calogero-Sutherland model.

Analytic side: exceptional (X1/Xm) Laguerre polynomials, the extended
radial potentials they solve, eigenfunctions, and the unchanged spectrum
E_n = omega (2n + alpha + 1).  Verification side: a finite-difference
radial eigensolver, differential-equation residuals, quadrature
orthogonality, and a many-body local-energy oracle, all independent of the
closed forms they check.
"""

__version__ = "0.1.0"

from .errors import (AttractiveCouplingWarning, QuadratureError, ResolutionError,
                     ValidationError)
from .laguerre import (OdeCoefficients, laguerre, laguerre_derivative,
                       ode_coefficients, resolve_r_denominator, x1_laguerre,
                       xm_denominator, xm_laguerre, xm_ode_residual)
from .model import (Configuration, DerivedParams, ExtConstants, ModelParams,
                    derived_params, energy_level, ext_constants, v_eff_radial,
                    v_interaction, v_new, v_new_x1_two_term)
from .quadrature import QuadratureSpec
from .solver import RadialGrid, richardson, solver_grid, sturm_count
from .wavefunctions import (count_nodes, default_node_grid, default_quadrature,
                            jastrow, manybody_groundstate, norm,
                            radial_eigenfunction, radial_inner_product)
from .verify import (ConvergenceStudy, SpectrumReport, VerificationReport,
                     consistency_suite, convergence_orders, eigenvector_overlap,
                     isospectrality_check, level_count_below, numeric_spectrum,
                     ode_residual, ode_residual_diagnosis, orthogonality_matrix,
                     spectrum_csv_rows)
from .manybody import ConstancyStats, constancy_scan, local_energy, sample_configurations

__all__ = [
    "__version__",
    "AttractiveCouplingWarning", "QuadratureError", "ResolutionError", "ValidationError",
    "laguerre", "laguerre_derivative", "x1_laguerre", "xm_laguerre", "xm_denominator",
    "OdeCoefficients", "ode_coefficients", "xm_ode_residual", "resolve_r_denominator",
    "ModelParams", "Configuration", "ExtConstants", "DerivedParams",
    "derived_params", "energy_level", "v_interaction", "v_new", "v_new_x1_two_term",
    "ext_constants", "v_eff_radial",
    "QuadratureSpec", "RadialGrid", "solver_grid", "sturm_count", "richardson",
    "radial_eigenfunction", "jastrow", "manybody_groundstate", "norm",
    "radial_inner_product", "count_nodes", "default_node_grid", "default_quadrature",
    "SpectrumReport", "VerificationReport", "ConvergenceStudy",
    "numeric_spectrum", "isospectrality_check", "orthogonality_matrix",
    "consistency_suite", "convergence_orders", "ode_residual", "ode_residual_diagnosis",
    "level_count_below", "eigenvector_overlap", "spectrum_csv_rows",
    "ConstancyStats", "constancy_scan", "local_energy", "sample_configurations",
]
