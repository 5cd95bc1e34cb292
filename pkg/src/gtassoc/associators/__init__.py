"""Associator candidates, their checkers and solvers, and the GT-type groups
acting on them."""
from .candidates import (CyclotomicCandidate, DrinfeldCandidate, EllipticCandidate,
                         GTElement, GTEllElement, GTGammaElement, format_candidate,
                         format_gt, parse_candidate, parse_gt)
from .cyclotomic import (check_cyclotomic, gtgamma_act, gtgamma_compose, solve_cyclotomic)
from .drinfeld import (SolverError, check_drinfeld, gt_act, gt_compose, rescale,
                       solve_drinfeld, verify_gt)
from .elliptic import check_elliptic, gtell_act, gtell_compose, solve_elliptic
from .report import EquationResult, Report

__all__ = [
    "CyclotomicCandidate", "DrinfeldCandidate", "EllipticCandidate", "GTElement", "GTEllElement",
    "GTGammaElement", "format_candidate", "format_gt", "parse_candidate", "parse_gt",
    "check_cyclotomic", "gtgamma_act", "gtgamma_compose", "solve_cyclotomic",
    "SolverError", "check_drinfeld", "gt_act", "gt_compose", "rescale", "solve_drinfeld", "verify_gt",
    "check_elliptic", "gtell_act", "gtell_compose", "solve_elliptic", "EquationResult", "Report",
]
