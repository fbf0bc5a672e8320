"""Demazure operators and the Demazure character formula.

``D_i`` acts term by term through the root-string expansion of the isobaric
divided difference::

    c = <lambda, alpha_i^vee> >= 0   ->  e^lambda + e^{lambda - alpha_i} + ... + e^{s_i lambda}
    c = -1                           ->  0
    c <= -2                          ->  -(e^{lambda + alpha_i} + ... + e^{s_i lambda - alpha_i})

Because ``alpha_0`` is stored as a gcm column, the affine node needs no
special treatment.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .cartan import CartanData, Weight
from .charring import BITS, MASK, OFFSET, Character, monomial, pack_delta
from .weylgroup import (ExtAffineElement, ReducedWord, longest_word, peel_reduced_word,
                        translation, translation_element)


@lru_cache(maxsize=None)
def _root_delta(cd: CartanData, i: int) -> int:
    return pack_delta(cd.simple_root(i))


def apply_simple(x: Character, i: int) -> Character:
    cd = x.cartan
    if not 0 <= i < cd.size:
        raise IndexError(f"node {i} out of range for {cd.name}")
    a = _root_delta(cd, i)
    shift = BITS * i
    out: dict[int, int] = defaultdict(int)
    for k, m in x.terms.items():
        c = ((k >> shift) & MASK) - OFFSET
        if c >= 0:
            for j in range(c + 1):
                out[k - j * a] += m
        elif c <= -2:
            for j in range(1, -c):
                out[k + j * a] -= m
    return Character(cd, out)


def apply_twist(x: Character, perm: Sequence[int]) -> Character:
    return x.twist(perm)


def apply_letters(x: Character, letters: Sequence[int]) -> Character:
    """``D_{i_1} ... D_{i_r} x`` (rightmost letter acts first)."""
    for i in reversed(letters):
        x = apply_simple(x, i)
    return x


def apply_word(x: Character, w: ReducedWord) -> Character:
    """``D_{w sigma}``: twist by the tail, then the letters right to left."""
    return apply_letters(x.twist(w.tail), w.letters)


@dataclass(frozen=True)
class DemazureWord:
    word: ReducedWord
    highest_weight: Weight

    def __post_init__(self):
        if any(c < 0 for c in self.highest_weight):
            raise ValueError(f"{self.highest_weight} is not dominant")

    def character(self, cd: CartanData) -> Character:
        return apply_word(monomial(cd, self.highest_weight), self.word)


def _check_dominant(weight: Sequence[int], what: str = "weight"):
    if any(c < 0 for c in weight):
        raise ValueError(f"{what} {tuple(weight)} is not dominant")


def element_character(g: ExtAffineElement, highest: Sequence[int]) -> Character:
    """``D_g(e^Lambda)`` for a dominant ``Lambda``."""
    _check_dominant(highest)
    return apply_word(monomial(g.cartan, highest), peel_reduced_word(g))


def demazure_character(cd: CartanData, coweight: Sequence[int], highest: Sequence[int]) -> Character:
    """Character of ``V_{t_{-nu(coweight)}}(highest)`` for untwisted affine data."""
    _check_dominant(coweight, "coweight")
    return element_character(translation_element(cd, coweight), highest)


def translation_character(cd: CartanData, mu: Sequence[int], highest: Sequence[int],
                          basepoint: int = 0) -> Character:
    """``D_{t_{-mu}}(e^Lambda)`` for a finite weight ``mu`` at ``basepoint``.

    This is the form used for twisted data, where ``mu`` ranges over the
    translation lattice directly rather than through ``nu``.
    """
    return element_character(translation(cd, tuple(-x for x in mu), basepoint), highest)


@lru_cache(maxsize=None)
def _weyl_character(cd: CartanData, weight: Weight) -> Character:
    return apply_word(monomial(cd, weight), longest_word(cd))


def finite_weyl_character(cd: CartanData, weight: Sequence[int]) -> Character:
    """Irreducible character ``char V(weight)`` computed as ``D_{w_0}(e^weight)``."""
    if cd.is_affine:
        raise ValueError("finite_weyl_character needs finite data")
    weight = tuple(weight)
    if len(weight) != cd.size:
        raise ValueError(f"weight {weight} has wrong length for {cd.name}")
    _check_dominant(weight)
    return _weyl_character(cd, weight)
