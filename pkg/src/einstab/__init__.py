"""
einstab: curvature criteria for the stability of compact Einstein manifolds.

Curvature tensors are dense ``(n, n, n, n)`` float arrays in an orthonormal
frame.  Model manifolds live in :mod:`einstab.catalog`, the criteria in
:mod:`einstab.stability` and :mod:`einstab.kahler`, Euler characteristics in
:mod:`einstab.gauss_bonnet`.
"""

__version__ = "0.1.0"

from .catalog import (ManifoldModel, make_cpn, make_custom, make_product,
                      make_space_form, rescale, unit_volume, validate)
from .errors import ConventionError, ConvergenceError, CurvatureError, EinstabError, InputError, NumericError
from .gauss_bonnet import GaussBonnetReport
from .stability import evaluate_all
from .verdict import CriterionReport, StabilityReport, Verdict

__all__ = [
    "__version__", "ManifoldModel", "make_cpn", "make_custom", "make_product",
    "make_space_form", "rescale", "unit_volume", "validate", "ConventionError",
    "ConvergenceError", "CurvatureError", "EinstabError", "InputError", "NumericError",
    "GaussBonnetReport", "evaluate_all", "CriterionReport",
    "StabilityReport", "Verdict",
]
