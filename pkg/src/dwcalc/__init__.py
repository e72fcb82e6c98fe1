"""Exact Dijkgraaf-Witten invariants of Seifert 3-manifolds for finite groups."""

from .cocycles import ThreeCocycle, coboundary, omega_l, restriction_level, trivial_cocycle
from .cyclotomic import Cyclotomic, RootOfUnity
from .groups import FiniteGroup, abelian, cyclic, dihedral, parse_group_spec, symmetric
from .homoracle import BudgetExceeded, count_homs, dw_untwisted
from .seifert import (
    DWResult,
    SeifertData,
    dw_formula,
    dw_prime_closed_form,
    eta,
    gauss_sum,
    parse_seifert,
)
from .tqd import EVector, TQDCharacter, character_family

# ``kappa`` is deliberately not re-exported: it would shadow the submodule.

__all__ = [
    "BudgetExceeded",
    "Cyclotomic",
    "DWResult",
    "EVector",
    "FiniteGroup",
    "RootOfUnity",
    "SeifertData",
    "TQDCharacter",
    "ThreeCocycle",
    "abelian",
    "character_family",
    "coboundary",
    "count_homs",
    "cyclic",
    "dihedral",
    "dw_formula",
    "dw_prime_closed_form",
    "dw_untwisted",
    "eta",
    "gauss_sum",
    "omega_l",
    "parse_group_spec",
    "parse_seifert",
    "restriction_level",
    "symmetric",
    "trivial_cocycle",
]
