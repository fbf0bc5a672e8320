"""Extended affine Weyl group: elements, action, reduced words.

Every element acts linearly on the mod-delta weight lattice, and that action
is faithful, so composition is carried out on integer matrices and converted
back to the normal form ``w * t_mu`` when needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .cartan import CartanData, Weight


class PeelError(RuntimeError):
    """The residual of a descent walk is not a diagram automorphism."""


def _identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


@dataclass(frozen=True)
class ReducedWord:
    """``s_{letters[0]} ... s_{letters[-1]} sigma`` with ``sigma`` a node permutation."""

    letters: tuple[int, ...]
    tail: tuple[int, ...]

    def __len__(self):
        return len(self.letters)

    @property
    def tail_is_identity(self) -> bool:
        return self.tail == _identity_perm(len(self.tail))

    def __add__(self, other: "ReducedWord") -> "ReducedWord":
        """Concatenation; only defined when ``self`` has trivial tail."""
        if not self.tail_is_identity:
            raise ValueError("cannot concatenate after a non-trivial tail")
        return ReducedWord(self.letters + other.letters, other.tail)

    def to_json(self) -> dict:
        return {"letters": list(self.letters),
                "sigma": "id" if self.tail_is_identity else list(self.tail)}


def word(cd: CartanData, letters: Sequence[int]) -> ReducedWord:
    return ReducedWord(tuple(letters), _identity_perm(cd.size))


# ----------------------------------------------------------------- matrices
def reflection_matrix(cd: CartanData, i: int) -> np.ndarray:
    n = cd.size
    M = np.eye(n, dtype=np.int64)
    M[:, i] -= np.array(cd.simple_root(i), dtype=np.int64)
    return M


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    n = len(perm)
    M = np.zeros((n, n), dtype=np.int64)
    for i, p in enumerate(perm):
        M[p, i] = 1
    return M


def translation_matrix(cd: CartanData, mu: Sequence[int], basepoint: int = 0) -> np.ndarray:
    """``Lambda -> Lambda + level(Lambda) * mu`` with ``mu`` a finite weight."""
    shift = np.array(cd.embed_finite(mu, basepoint), dtype=np.int64)
    return np.eye(cd.size, dtype=np.int64) + np.outer(shift, np.array(cd.comarks, dtype=np.int64))


def word_matrix(cd: CartanData, letters: Sequence[int]) -> np.ndarray:
    M = np.eye(cd.size, dtype=np.int64)
    for i in letters:
        M = M @ reflection_matrix(cd, i)
    return M


def root_reflection_matrix(cd: CartanData, beta: Sequence[int], nodes: Sequence[int]) -> np.ndarray:
    """Reflection in a real root supported on ``nodes`` (given in those nodes' coordinates)."""
    sub = cd.subdiagram(nodes) if cd.is_affine or len(nodes) != cd.size else cd
    coroot = sub.coroot(beta)
    n = cd.size
    root_w = [0] * n
    for b, j in zip(beta, sorted(nodes)):
        for k in range(n):
            root_w[k] += b * cd.gcm[k][j]
    covec = [0] * n
    for c, j in zip(coroot, sorted(nodes)):
        covec[j] = c
    return np.eye(n, dtype=np.int64) - np.outer(np.array(root_w, dtype=np.int64),
                                                 np.array(covec, dtype=np.int64))


# ------------------------------------------------------------------ elements
@dataclass(frozen=True)
class ExtAffineElement:
    """``w * t_mu * sigma``: apply the automorphism, then translate, then reflect.

    ``finite_word`` lists finite node indices (a word for ``w``), ``translation``
    is ``mu`` in fundamental-weight coordinates of the finite diagram at
    ``basepoint``, ``automorphism`` is the node permutation of ``sigma``.
    """

    cartan: CartanData
    finite_word: tuple[int, ...] = ()
    translation: tuple[int, ...] | None = None
    automorphism: tuple[int, ...] | None = None
    basepoint: int = 0

    def __post_init__(self):
        cd = self.cartan
        if self.translation is None:
            object.__setattr__(self, "translation", (0,) * cd.rank)
        if self.automorphism is None:
            object.__setattr__(self, "automorphism", _identity_perm(cd.size))
        if any(i == self.basepoint or not 0 <= i < cd.size for i in self.finite_word):
            raise ValueError(f"finite word {self.finite_word} uses a non-finite node")
        if len(self.translation) != cd.rank:
            raise ValueError("translation has wrong length")
        if not cd.is_automorphism(self.automorphism):
            raise ValueError(f"{self.automorphism} is not a diagram automorphism of {cd.name}")

    @cached_property
    def matrix(self) -> np.ndarray:
        cd = self.cartan
        M = word_matrix(cd, self.finite_word)
        if any(self.translation):
            M = M @ translation_matrix(cd, self.translation, self.basepoint)
        if self.automorphism != _identity_perm(cd.size):
            M = M @ permutation_matrix(self.automorphism)
        return M

    def act(self, lam: Sequence[int]) -> Weight:
        return tuple(int(x) for x in self.matrix @ np.array(lam, dtype=np.int64))

    __call__ = act

    def __matmul__(self, other: "ExtAffineElement") -> "ExtAffineElement":
        """Composition ``self o other`` (``other`` acts first)."""
        if other.cartan != self.cartan:
            raise ValueError("elements belong to different algebras")
        return from_matrix(self.cartan, self.matrix @ other.matrix, self.basepoint)

    def inverse(self) -> "ExtAffineElement":
        inv = np.rint(np.linalg.inv(self.matrix.astype(float))).astype(np.int64)
        if not (inv @ self.matrix == np.eye(self.cartan.size, dtype=np.int64)).all():
            raise ArithmeticError("matrix inverse is not integral")
        return from_matrix(self.cartan, inv, self.basepoint)

    def __eq__(self, other):
        if not isinstance(other, ExtAffineElement):
            return NotImplemented
        return self.cartan == other.cartan and (self.matrix == other.matrix).all()

    def __hash__(self):
        return hash((self.cartan.name, self.matrix.tobytes()))


def act(g: ExtAffineElement, lam: Sequence[int]) -> Weight:
    return g.act(lam)


def _finite_descent(cd: CartanData, M: np.ndarray, nodes: Sequence[int]) -> list[int]:
    """Reduced word ``[i_1..i_k]`` with ``M = s_{i_1}...s_{i_k}`` on ``nodes``'s weights."""
    rho = [1 if i in nodes else 0 for i in range(cd.size)]
    if cd.is_affine and len(nodes) == cd.rank:
        # a level-0 multiple of rho, so that translations fix it
        b = next(i for i in range(cd.size) if i not in nodes)
        rho = [cd.comarks[b] * x for x in rho]
        rho[b] = -sum(a * c for a, c in zip(cd.comarks, rho)) // cd.comarks[b]
    p = M @ np.array(rho, dtype=np.int64)
    letters = []
    while True:
        neg = [i for i in nodes if p[i] < 0]
        if not neg:
            break
        i = neg[0]
        p = p - p[i] * np.array(cd.simple_root(i), dtype=np.int64)
        letters.append(i)
    return letters


def from_matrix(cd: CartanData, M: np.ndarray, basepoint: int = 0) -> ExtAffineElement:
    """Normal form ``w * t_mu`` of the element acting by ``M``."""
    nodes = [i for i in range(cd.size) if i != basepoint]
    letters = _finite_descent(cd, M, nodes)
    base = np.array(cd.fundamental(basepoint), dtype=np.int64)
    w_mu = M @ base - base
    # w^{-1} = s_{i_k} ... s_{i_1}
    v = w_mu
    for i in letters:
        v = reflection_matrix(cd, i) @ v
    mu = cd.finite_part(tuple(int(x) for x in v), basepoint)
    g = ExtAffineElement(cd, tuple(letters), mu, basepoint=basepoint)
    if not (g.matrix == M).all():
        raise ValueError("matrix is not an element of the extended affine Weyl group")
    return g


def identity(cd: CartanData) -> ExtAffineElement:
    return ExtAffineElement(cd)


def simple_reflection(cd: CartanData, i: int) -> ExtAffineElement:
    return from_matrix(cd, reflection_matrix(cd, i))


def translation(cd: CartanData, mu: Sequence[int], basepoint: int = 0) -> ExtAffineElement:
    """Pure translation ``t_mu`` by a finite weight ``mu`` (no lattice check)."""
    return ExtAffineElement(cd, (), tuple(mu), basepoint=basepoint)


def translation_element(cd: CartanData, coweight: Sequence[int]) -> ExtAffineElement:
    """``t_{-nu(coweight)}`` for a dominant coweight of an untwisted algebra."""
    if any(c < 0 for c in coweight):
        raise ValueError(f"coweight {tuple(coweight)} is not dominant")
    mu = cd.nu(coweight)
    return translation(cd, tuple(-x for x in mu))


def detect_sigma(g: ExtAffineElement | np.ndarray, cd: CartanData | None = None) -> tuple[int, ...]:
    """Node permutation ``pi`` with ``g(Lambda_i) = Lambda_{pi(i)}`` for a chamber stabilizer."""
    if isinstance(g, ExtAffineElement):
        cd, M = g.cartan, g.matrix
    else:
        M = g
    p = M @ np.ones(cd.size, dtype=np.int64)
    if (p <= 0).any():
        raise PeelError("element does not stabilize the fundamental chamber")
    perm = []
    for j in range(cd.size):
        col = M[:, j]
        hits = np.flatnonzero(col)
        if len(hits) != 1 or col[hits[0]] != 1:
            raise PeelError(f"residual does not permute fundamental weights: {M.tolist()}")
        perm.append(int(hits[0]))
    perm = tuple(perm)
    if not cd.is_automorphism(perm):
        raise PeelError(f"residual permutation {perm} is not a diagram automorphism")
    return perm


def peel_reduced_word(g: ExtAffineElement) -> ReducedWord:
    """Descent walk of ``g(rho_hat)`` back into the fundamental chamber.

    Emits the smallest negative coordinate each step; the letters and the
    residual automorphism satisfy ``g = s_{i_1} ... s_{i_l} sigma``.
    """
    cd = g.cartan
    M = g.matrix.copy()
    p = M @ np.ones(cd.size, dtype=np.int64)
    letters = []
    while True:
        if (p == 0).any():
            raise PeelError("tracked point hit a wall")
        neg = np.flatnonzero(p < 0)
        if len(neg) == 0:
            break
        i = int(neg[0])
        R = reflection_matrix(cd, i)
        p = R @ p
        M = R @ M
        letters.append(i)
    return ReducedWord(tuple(letters), detect_sigma(M, cd))


def length(g: ExtAffineElement) -> int:
    return len(peel_reduced_word(g))


def element_of_word(cd: CartanData, w: ReducedWord) -> ExtAffineElement:
    M = word_matrix(cd, w.letters) @ permutation_matrix(w.tail)
    return from_matrix(cd, M)


@lru_cache(maxsize=None)
def longest_word(cd: CartanData, nodes: tuple[int, ...] | None = None) -> ReducedWord:
    """Reduced word of the longest element of the parabolic subgroup on ``nodes``.

    Defaults to all finite nodes (all nodes but 0 for affine data).
    """
    if nodes is None:
        nodes = tuple(range(1, cd.size)) if cd.is_affine else tuple(range(cd.size))
    nodes = tuple(sorted(nodes))
    p = [1 if i in nodes else 0 for i in range(cd.size)]
    seq = []
    while True:
        pos = [i for i in nodes if p[i] > 0]
        if not pos:
            break
        i = pos[0]
        p = list(cd.reflect(p, i))
        seq.append(i)
    # s_{seq[-1]} ... s_{seq[0]} sends rho_S to -rho_S
    return ReducedWord(tuple(reversed(seq)), _identity_perm(cd.size))


def reflection_word(cd: CartanData, beta: Sequence[int], nodes: Sequence[int] | None = None) -> ReducedWord:
    """Reduced word for the reflection in a finite root ``beta``."""
    if nodes is None:
        nodes = tuple(range(1, cd.size)) if cd.is_affine else tuple(range(cd.size))
    M = root_reflection_matrix(cd, beta, nodes)
    return ReducedWord(tuple(_finite_descent(cd, M, nodes)), _identity_perm(cd.size))


def finite_word_of(cd: CartanData, M: np.ndarray, nodes: Sequence[int] | None = None) -> ReducedWord:
    if nodes is None:
        nodes = tuple(range(1, cd.size)) if cd.is_affine else tuple(range(cd.size))
    letters = _finite_descent(cd, M, nodes)
    if not (word_matrix(cd, letters) == M).all():
        raise ValueError("matrix is not an element of the parabolic subgroup")
    return ReducedWord(tuple(letters), _identity_perm(cd.size))
