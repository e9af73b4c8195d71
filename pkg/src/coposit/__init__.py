"""Copositivity of low-order symmetric tensors: closed-form tests and a simplex oracle."""

from .analysis import RunReport, decide, run_check
from .identities import InequalityId, equality_locus_check, expanded_equals_compact, residual
from .matrix import baston_pm1, copositive_2x2, copositive_3x3
from .oracle import OracleReport, SimplexPoint, certify_strict_on_grid, min_on_simplex, oracle_verdict, semi_positivity_witness
from .quartic2d import (
    Cubic2Coeffs,
    Quartic2Coeffs,
    copositive_cubic_2d,
    copositive_pm1_2d,
    copositive_quartic_2d,
    copositive_quartic_2d_normalized,
    discriminant_delta_prime,
    sufficient_2d,
)
from .quartic3d import (
    CopPattern,
    StrictPattern,
    copositive_pm1,
    enumerate_family,
    strict_copositive_pm1,
    sufficient_cop_general,
    sufficient_strict_general,
)
from .tensor import SymMatrix, SymTensor, SymTensor4, TensorError, build, build_matrix, dominates, evaluate, gradient_form, normalize_diagonal
from .verdict import Decision, Verdict

__version__ = "0.1.0"
