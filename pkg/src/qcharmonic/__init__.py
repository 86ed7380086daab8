"""
Truncated power series, harmonic shearing, and sharp coefficient bounds for
K-quasiconformal harmonic maps of the unit disk.

Modules
-------
series      truncated complex power series
harmonic    ``f = h + conj(g)``, dilatation, affine and rotation transforms
shear       shear construction and the extremal maps built with it
catalog     named maps with closed-form coefficients and values
bounds      closed-form bounds, lemma polynomials, monotonicity scans
geometry    slit endpoint, boundary traces, area
harness     seeded random trials and attainment tables
cli         ``qcharm`` command line
"""

from .bounds import A, B, BoundFamily, BoundTable, C_n, D_n, E_n, F_n, a, b, k0_of_k, k_of_k0
from .catalog import CatalogId, coefficients, evaluate_closed, parse_catalog_id
from .errors import QCHarmonicError
from .geometry import M, TraceResult, area, hyperbola_trace, min_boundary_modulus, slit_check
from .harmonic import DilatationSpec, HarmonicMap, affine_combine, dilatation
from .harness import Family, TrialConfig, ViolationReport, attainment_report, default_suite, run_trials
from .series import TruncatedSeries
from .shear import ShearMode, ShearProblem, construct_P, construct_P_alpha, construct_P_k, shear

__version__ = "0.1.0"

__all__ = [
    "A", "B", "a", "b", "C_n", "D_n", "E_n", "F_n", "k0_of_k", "k_of_k0",
    "BoundFamily", "BoundTable",
    "CatalogId", "coefficients", "evaluate_closed", "parse_catalog_id",
    "QCHarmonicError",
    "M", "TraceResult", "area", "hyperbola_trace", "min_boundary_modulus", "slit_check",
    "DilatationSpec", "HarmonicMap", "affine_combine", "dilatation",
    "Family", "TrialConfig", "ViolationReport", "attainment_report", "default_suite", "run_trials",
    "TruncatedSeries",
    "ShearMode", "ShearProblem", "construct_P", "construct_P_alpha", "construct_P_k", "shear",
]
