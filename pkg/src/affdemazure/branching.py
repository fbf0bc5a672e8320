"""Finite-type branching: irreducible decomposition, Freudenthal, duals, dimensions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from .cartan import CartanData, Weight
from .charring import Character, from_terms, pack, unpack
from .demazure import finite_weyl_character
from .weylgroup import longest_word


class NotAModuleCharacter(ValueError):
    """The character is not a nonnegative combination of irreducibles."""


def _require_finite(cd: CartanData):
    if cd.is_affine:
        raise ValueError(f"{cd.name} is affine; pass finite data")


def is_dominant(weight: Sequence[int]) -> bool:
    return all(c >= 0 for c in weight)


def root_coordinates(cd: CartanData, weight: Sequence[int]) -> tuple[Fraction, ...]:
    """Coordinates of a weight on the simple roots (exact rationals)."""
    inv = cd.inverse_cartan
    n = cd.size
    return tuple(sum(inv[j][i] * weight[i] for i in range(n)) for j in range(n))


def height(cd: CartanData, weight: Sequence[int]) -> Fraction:
    return sum(root_coordinates(cd, weight), Fraction(0))


def inner(cd: CartanData, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
    """Invariant form normalized so long roots have squared length 2."""
    d = cd.symmetrizer
    return sum((r * d[j] * lam[j] for j, r in enumerate(root_coordinates(cd, mu))), Fraction(0))


@lru_cache(maxsize=None)
def _scaled_gram(cd: CartanData) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """``(D, G)`` with ``G[i][j] = D * (omega_i, omega_j)`` integral."""
    n = cd.size
    exact = [[inner(cd, cd.fundamental(i), cd.fundamental(j)) for j in range(n)] for i in range(n)]
    scale = 1
    for row in exact:
        for x in row:
            scale = scale * x.denominator // gcd(scale, x.denominator)
    return scale, tuple(tuple(int(x * scale) for x in row) for row in exact)


def _scaled_inner(gram, lam, mu) -> int:
    return sum(lam[i] * sum(g * m for g, m in zip(row, mu)) for i, row in enumerate(gram) if lam[i])


def dominant_conjugate(cd: CartanData, weight: Sequence[int]) -> Weight:
    w = tuple(weight)
    while True:
        neg = next((i for i, c in enumerate(w) if c < 0), None)
        if neg is None:
            return w
        w = cd.reflect(w, neg)


def weyl_orbit(cd: CartanData, weight: Sequence[int]) -> set[Weight]:
    start = dominant_conjugate(cd, weight)
    seen = {start}
    stack = [start]
    while stack:
        w = stack.pop()
        for i in range(cd.size):
            # descending from the dominant element reaches the whole orbit
            if w[i] > 0:
                v = cd.reflect(w, i)
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return seen


def weyl_dimension(cd: CartanData, weight: Sequence[int]) -> int:
    _require_finite(cd)
    if not is_dominant(weight):
        raise ValueError(f"{tuple(weight)} is not dominant")
    num, den = 1, 1
    for beta in cd.positive_roots:
        cv = cd.coroot(beta)
        num *= sum(c * (x + 1) for c, x in zip(cv, weight))
        den *= sum(cv)
    if num % den:
        raise ArithmeticError("Weyl dimension is not an integer")
    return num // den


def dual_weight(cd: CartanData, weight: Sequence[int]) -> Weight:
    """Highest weight of the dual module, ``-w_0(weight)``."""
    _require_finite(cd)
    w = tuple(weight)
    for i in reversed(longest_word(cd).letters):
        w = cd.reflect(w, i)
    return tuple(-c for c in w)


def dominant_weights_below(cd: CartanData, weight: Sequence[int]) -> list[Weight]:
    """Dominant weights ``mu <= weight``; every such ``mu`` is reachable through a
    chain of dominant weights differing by positive roots."""
    roots = [cd.root_as_weight(b) for b in cd.positive_roots]
    start = tuple(weight)
    seen = {start}
    stack = [start]
    while stack:
        w = stack.pop()
        for r in roots:
            v = tuple(a - b for a, b in zip(w, r))
            if is_dominant(v) and v not in seen:
                seen.add(v)
                stack.append(v)
    return sorted(seen, key=lambda v: (-height(cd, v), v))


@lru_cache(maxsize=None)
def _freudenthal(cd: CartanData, weight: Weight) -> dict[Weight, int]:
    scale, gram = _scaled_gram(cd)
    rho = (1,) * cd.size
    lr = tuple(a + b for a, b in zip(weight, rho))
    top = _scaled_inner(gram, lr, lr)
    roots = [(cd.root_as_weight(b)) for b in cd.positive_roots]
    mult: dict[Weight, int] = {}
    for mu in dominant_weights_below(cd, weight):
        if mu == weight:
            mult[mu] = 1
            continue
        total = 0
        for r in roots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, r))
                m = mult.get(dominant_conjugate(cd, nu), 0)
                if m == 0:
                    break
                total += m * _scaled_inner(gram, nu, r)
                k += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        denom = top - _scaled_inner(gram, mr, mr)
        # both sides carry the same scale factor, which cancels
        value, remainder = divmod(2 * total, denom)
        if remainder:
            raise ArithmeticError(f"non-integral multiplicity at {mu}")
        if value:
            mult[mu] = value
    return mult


def freudenthal_character(cd: CartanData, weight: Sequence[int]) -> Character:
    """Irreducible character via Freudenthal's recursion (independent of Demazure)."""
    _require_finite(cd)
    weight = tuple(weight)
    if not is_dominant(weight):
        raise ValueError(f"{weight} is not dominant")
    terms = []
    for mu, m in _freudenthal(cd, weight).items():
        terms.extend((v, m) for v in weyl_orbit(cd, mu))
    return from_terms(cd, terms)


@dataclass(frozen=True)
class IrrDecomposition:
    """Multiset of highest weights, stored as sorted ``(weight, mult)`` pairs."""

    cartan: CartanData
    parts: tuple[tuple[Weight, int], ...]

    @classmethod
    def from_counter(cls, cd: CartanData, counts) -> "IrrDecomposition":
        counts = Counter({tuple(w): m for w, m in dict(counts).items() if m})
        if any(m < 0 for m in counts.values()):
            raise ValueError("multiplicities must be positive")
        return cls(cd, tuple(sorted(counts.items())))

    def as_counter(self) -> Counter:
        return Counter(dict(self.parts))

    def multiplicity(self, weight: Sequence[int]) -> int:
        return dict(self.parts).get(tuple(weight), 0)

    def dimension(self) -> int:
        return sum(m * weyl_dimension(self.cartan, w) for w, m in self.parts)

    def dims(self) -> list[int]:
        return [weyl_dimension(self.cartan, w) for w, _ in self.parts]

    def character(self) -> Character:
        out = Character(self.cartan)
        for w, m in self.parts:
            out = out + finite_weyl_character(self.cartan, w).scale(m)
        return out

    def __eq__(self, other):
        if not isinstance(other, IrrDecomposition):
            return NotImplemented
        return self.cartan == other.cartan and self.parts == other.parts

    def __hash__(self):
        return hash((self.cartan.name, self.parts))

    def to_json_obj(self) -> dict:
        return {"parts": [{"weight": list(w), "mult": m, "dim": weyl_dimension(self.cartan, w)}
                          for w, m in self.parts]}


def decompose(x: Character) -> IrrDecomposition:
    """Strip highest weights greedily until nothing is left."""
    cd = x.cartan
    _require_finite(cd)
    n = cd.size
    rest = dict(x.terms)
    found: Counter = Counter()
    while rest:
        if any(v < 0 for v in rest.values()):
            bad = next(unpack(k, n) for k, v in rest.items() if v < 0)
            raise NotAModuleCharacter(f"not a module character: coefficient of {bad} is negative")
        dominant = [unpack(k, n) for k in rest if is_dominant(unpack(k, n))]
        if not dominant:
            raise NotAModuleCharacter("not a module character: remainder has no dominant weight")
        top = max(dominant, key=lambda w: (height(cd, w), w))
        m = rest[pack(top)]
        found[top] += m
        for k, v in finite_weyl_character(cd, top).terms.items():
            left = rest.get(k, 0) - m * v
            if left:
                rest[k] = left
            else:
                rest.pop(k, None)
    return IrrDecomposition.from_counter(cd, found)
