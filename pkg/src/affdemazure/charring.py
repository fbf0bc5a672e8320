"""Sparse integer-coefficient sums of exponentials ``e^Lambda`` (mod delta).

A weight is packed into one Python int: coordinate ``i`` occupies bits
``[32 i, 32 i + 32)`` with an offset of ``2**31``.  Adding weights is then
integer addition (minus one copy of the packed zero vector), which keeps the
Demazure inner loops free of tuple allocation.
"""

from __future__ import annotations

import json
from collections import defaultdict
from typing import Iterable, Mapping, Sequence

from .cartan import CartanData, Weight

BITS = 32
OFFSET = 1 << (BITS - 1)
MASK = (1 << BITS) - 1


class AlgebraMismatch(ValueError):
    pass


class MixedLevels(ValueError):
    pass


def zero_key(n: int) -> int:
    return sum(OFFSET << (BITS * i) for i in range(n))


def pack(weight: Sequence[int]) -> int:
    key = 0
    for i, c in enumerate(weight):
        if not -OFFSET <= c < OFFSET:
            raise OverflowError(f"coordinate {c} does not fit the packed representation")
        key |= (c + OFFSET) << (BITS * i)
    return key


def pack_delta(vector: Sequence[int]) -> int:
    """Signed packed difference: ``pack(w + v) == pack(w) + pack_delta(v)``."""
    return sum(c << (BITS * i) for i, c in enumerate(vector))


def unpack(key: int, n: int) -> Weight:
    return tuple(((key >> (BITS * i)) & MASK) - OFFSET for i in range(n))


def coordinate(key: int, i: int) -> int:
    return ((key >> (BITS * i)) & MASK) - OFFSET


class Character:
    """Element of the group ring of the weight lattice of ``cartan`` (mod delta).

    ``terms`` maps packed weights to nonzero integer multiplicities.  Use
    :func:`from_terms` or :func:`monomial` to build one from weight tuples.
    """

    __slots__ = ("cartan", "terms", "_zero")

    def __init__(self, cartan: CartanData, terms: Mapping[int, int] | None = None):
        self.cartan = cartan
        self._zero = zero_key(cartan.size)
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    # ------------------------------------------------------------- access
    @property
    def size(self) -> int:
        return self.cartan.size

    def items(self) -> list[tuple[Weight, int]]:
        """``(weight, multiplicity)`` pairs sorted lexicographically."""
        n = self.size
        return sorted((unpack(k, n), v) for k, v in self.terms.items())

    def as_dict(self) -> dict[Weight, int]:
        return dict(self.items())

    def coefficient(self, weight: Sequence[int]) -> int:
        return self.terms.get(pack(weight), 0)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def mass(self) -> int:
        """Sum of coefficients (the dimension for a module character)."""
        return sum(self.terms.values())

    def levels(self) -> set[int]:
        return {self.cartan.level(w) for w, _ in self.items()}

    @property
    def level(self) -> int:
        lv = self.levels()
        if len(lv) > 1:
            raise MixedLevels(f"character mixes levels {sorted(lv)}")
        return lv.pop() if lv else 0

    # --------------------------------------------------------------- ring
    def _check(self, other: "Character"):
        if other.cartan != self.cartan:
            raise AlgebraMismatch(f"{self.cartan.name} vs {other.cartan.name}")

    def __add__(self, other: "Character") -> "Character":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Character(self.cartan, out)

    def __neg__(self) -> "Character":
        return Character(self.cartan, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def scale(self, c: int) -> "Character":
        return Character(self.cartan, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        z = self._zero
        out: dict[int, int] = defaultdict(int)
        for kb, vb in b.items():
            shift = kb - z
            for ka, va in a.items():
                out[ka + shift] += va * vb
        return Character(self.cartan, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Character":
        if e < 0:
            raise ValueError("negative powers are not in the ring")
        result = unit(self.cartan)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, weight: Sequence[int]) -> "Character":
        """Multiply by the monomial ``e^weight``."""
        d = pack_delta(weight)
        return Character(self.cartan, {k + d: v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self.cartan == other.cartan and self.terms == other.terms

    def __hash__(self):
        return hash((self.cartan.name, frozenset(self.terms.items())))

    def __repr__(self):
        body = " + ".join(f"{v}*e^{w}" for w, v in self.items()[:6])
        more = " + ..." if len(self) > 6 else ""
        return f"Character[{self.cartan.name}]({body}{more})"

    # --------------------------------------------------------- symmetries
    def twist(self, perm: Sequence[int]) -> "Character":
        """``e^Lambda -> e^{sigma(Lambda)}`` where ``sigma`` sends node ``i`` to ``perm[i]``."""
        perm = tuple(perm)
        n = self.size
        if not self.cartan.is_automorphism(perm):
            raise ValueError(f"{perm} is not an automorphism of {self.cartan.name}")
        if perm == tuple(range(n)):
            return self
        out = {}
        for k, v in self.terms.items():
            w = unpack(k, n)
            image = [0] * n
            for i, c in enumerate(w):
                image[perm[i]] = c
            out[pack(image)] = v
        return Character(self.cartan, out)

    def reflect(self, i: int) -> "Character":
        n = self.size
        return Character(self.cartan, {pack(self.cartan.reflect(unpack(k, n), i)): v
                                       for k, v in self.terms.items()})

    def project_to_finite(self, basepoint: int = 0) -> tuple[int, "Character"]:
        """Split a homogeneous character as ``e^{k Lambda_b}`` times a finite character."""
        cd = self.cartan
        if not cd.is_affine:
            raise ValueError("project_to_finite needs an affine character")
        level = self.level
        fin = cd.delete_node(basepoint)
        out = {}
        for w, v in self.items():
            out[pack(cd.finite_part(w, basepoint))] = v
        if len(out) != len(self):
            raise ValueError("finite projection is not injective at a fixed level")
        return level, Character(fin, out)

    # ----------------------------------------------------- serialization
    def to_json_obj(self, level: int | None = None) -> dict:
        if level is None:
            level = self.level if self.cartan.is_affine else 0
        terms = self.items()
        if self.cartan.is_affine:
            terms = sorted((w[1:], v) for w, v in terms)
        return {"algebra": self.cartan.name, "level": level,
                "terms": [{"weight": list(w), "mult": v} for w, v in terms]}

    def to_json(self, level: int | None = None) -> str:
        return json.dumps(self.to_json_obj(level), separators=(",", ":"))

    def to_tsv(self, level: int | None = None) -> str:
        obj = self.to_json_obj(level)
        rows = ["weight\tmult"]
        rows += [",".join(map(str, t["weight"])) + f"\t{t['mult']}" for t in obj["terms"]]
        return "\n".join(rows)


def from_terms(cd: CartanData, terms: Mapping[Sequence[int], int] | Iterable[tuple]) -> Character:
    if isinstance(terms, Mapping):
        terms = terms.items()
    out: dict[int, int] = defaultdict(int)
    for w, v in terms:
        if len(w) != cd.size:
            raise ValueError(f"weight {tuple(w)} has wrong length for {cd.name}")
        out[pack(w)] += v
    return Character(cd, out)


def monomial(cd: CartanData, weight: Sequence[int]) -> Character:
    return from_terms(cd, [(tuple(weight), 1)])


def unit(cd: CartanData) -> Character:
    return monomial(cd, (0,) * cd.size)


def zero(cd: CartanData) -> Character:
    return Character(cd)


def lift(cd: CartanData, finite: Character, level: int = 0, basepoint: int = 0) -> Character:
    """``e^{level * Lambda_b}`` times the level-0 embedding of a finite character."""
    if not cd.is_affine:
        raise ValueError("lift needs affine data")
    base = pack_delta(cd.fundamental(basepoint, level))
    out = {}
    for w, v in finite.items():
        out[pack(cd.embed_finite(w, basepoint)) + base] = v
    return Character(cd, out)
