"""Exact computation of Hodge spectra, Hodge ideals and jumping-ideal
spectra of isolated hypersurface singularities."""

from .groebner import INFINITE, Ideal, MonomialOrder, local_colength_at_origin, normal_form
from .hodge_wh import sp_tau_wh, verify_main_theorem
from .milnor import milnor_number, tjurina_number
from .newton import newton_boundary, nondegeneracy_check, question_checks, sp_tau_mu_nd
from .poly import Polynomial, WeightSystem, infer_weights, parse_polynomial
from .series import FracLaurent, spectrum_formula

__version__ = "0.1.0"

__all__ = [
    "INFINITE",
    "FracLaurent",
    "Ideal",
    "MonomialOrder",
    "Polynomial",
    "WeightSystem",
    "infer_weights",
    "local_colength_at_origin",
    "milnor_number",
    "newton_boundary",
    "nondegeneracy_check",
    "normal_form",
    "parse_polynomial",
    "question_checks",
    "sp_tau_mu_nd",
    "sp_tau_wh",
    "spectrum_formula",
    "tjurina_number",
    "verify_main_theorem",
]
