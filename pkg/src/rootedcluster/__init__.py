"""Exact arithmetic for rooted cluster algebras of ice quivers."""

from .laurent import LaurentPoly, NotDivisible, exact_div, is_laurent
from .quiver import IceQuiver, find_isomorphism, load_quiver
from .quiver import mutate as mutate_quiver
from .seed import LaurentViolation, NotAdmissible, Seed, apply_sequence, initial_seed, load_seed
from .seed import mutate as mutate_seed
from .subalgebra import components, count_complete_pairs, enumerate_complete_pairs, freeze, glue

__all__ = [
    "IceQuiver",
    "LaurentPoly",
    "LaurentViolation",
    "NotAdmissible",
    "NotDivisible",
    "Seed",
    "apply_sequence",
    "components",
    "count_complete_pairs",
    "enumerate_complete_pairs",
    "exact_div",
    "find_isomorphism",
    "freeze",
    "glue",
    "initial_seed",
    "is_laurent",
    "load_quiver",
    "load_seed",
    "mutate_quiver",
    "mutate_seed",
]
