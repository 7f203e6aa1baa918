"""Thresholds, gap expansions and verification drivers."""

from .drivers import CLAIMS, sweep_csv, verify_gap_formula, verify_theorem
from .gaps import (
    GapExpansion,
    check_lem_gap_hypotheses,
    gap_terms_phi,
    gap_terms_stab,
    n3_normalize,
    verify_nonmonotone_phi_bound,
)
from .report import VerificationReport
from .thresholds import (
    gap_formula_rhs,
    threshold_eps,
    threshold_eps_lemma,
    threshold_gamma,
    threshold_gamma_prime,
)

__all__ = [
    "CLAIMS",
    "GapExpansion",
    "VerificationReport",
    "check_lem_gap_hypotheses",
    "gap_formula_rhs",
    "gap_terms_phi",
    "gap_terms_stab",
    "n3_normalize",
    "sweep_csv",
    "threshold_eps",
    "threshold_eps_lemma",
    "threshold_gamma",
    "threshold_gamma_prime",
    "verify_gap_formula",
    "verify_nonmonotone_phi_bound",
    "verify_theorem",
]
