"""Representation type of finite-dimensional local algebras over finite fields.

Presentations are closed to multiplication tables, modules are matrix
representations, and minimal resolutions, Auslander-Reiten translates and
family scans feed certificates whose evidence can be recomputed.
"""
from .algebra import (AlgebraTable, Presentation, canonical_key, change_generators,
                      close_presentation, group_algebra, quotient_by_ideal, regular_module)
from .errors import ReptypeError
from .field import FieldSpec, parse_field
from .frobenius import ar_translate_dtr, ar_translate_omega, find_frobenius_form, twist
from .module import (ModuleRep, direct_sum, hom_space, is_indecomposable, is_isomorphic,
                     trivial_module)
from .repcert import (Certificate, certify_factor_rule, certify_wild_lemma, certify_wild_theorem,
                      corpus_algebra, family_member, scan_family, verify_trail)
from .resolution import complexity_estimate, minimal_resolution, periodicity

__version__ = "0.1.0"

__all__ = [
    "AlgebraTable", "Certificate", "FieldSpec", "ModuleRep", "Presentation", "ReptypeError",
    "ar_translate_dtr", "ar_translate_omega", "canonical_key", "certify_factor_rule",
    "certify_wild_lemma", "certify_wild_theorem", "change_generators", "close_presentation",
    "complexity_estimate", "corpus_algebra", "direct_sum", "family_member", "find_frobenius_form",
    "group_algebra", "hom_space", "is_indecomposable", "is_isomorphic", "minimal_resolution",
    "parse_field", "periodicity", "quotient_by_ideal", "regular_module", "scan_family",
    "trivial_module", "twist", "verify_trail",
]
