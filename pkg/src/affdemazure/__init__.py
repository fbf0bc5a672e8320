"""Exact Demazure characters for affine Kac-Moody algebras."""

from .branching import (IrrDecomposition, decompose, dual_weight, freudenthal_character,
                        weyl_dimension)
from .cartan import AlgebraLabel, CartanData, affine_of, build_cartan, parse_label
from .charring import Character, from_terms, lift, monomial, unit
from .demazure import (apply_simple, apply_word, demazure_character, finite_weyl_character,
                       translation_character)
from .weylgroup import (ExtAffineElement, ReducedWord, detect_sigma, length, longest_word,
                        peel_reduced_word, translation_element)

__all__ = [
    "AlgebraLabel", "CartanData", "Character", "ExtAffineElement", "IrrDecomposition",
    "ReducedWord", "affine_of", "apply_simple", "apply_word", "build_cartan", "decompose",
    "demazure_character", "detect_sigma", "dual_weight", "finite_weyl_character",
    "freudenthal_character", "from_terms", "length", "lift", "longest_word", "monomial",
    "parse_label", "peel_reduced_word", "translation_character", "translation_element", "unit",
    "weyl_dimension",
]
