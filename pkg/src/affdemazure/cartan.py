"""Root data for finite and affine (untwisted and twisted) Cartan matrices.

Conventions
-----------
``gcm[i][j] = <alpha_i^vee, alpha_j>``.  Weights are integer tuples of
pairings ``c_i = <Lambda, alpha_i^vee>``, i.e. coordinates in the basis of
fundamental weights.  For an affine datum this basis is automatically a
representation modulo ``delta`` because ``delta`` pairs to zero with every
simple coroot.  The simple root ``alpha_j`` is column ``j`` of the gcm.

Finite types use Bourbaki numbering (nodes ``1..n`` stored at indices
``0..n-1``).  Affine data put the extra node at index 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import permutations
from math import gcd
from typing import Sequence

Weight = tuple[int, ...]

FAMILIES = "ABCDEFG"

_LABEL_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*(?:\^\s*\(?\s*(\d)\s*\)?)?\s*$")


class LabelError(ValueError):
    """Raised for an illegal (family, rank, twist) combination."""


@dataclass(frozen=True, order=True)
class AlgebraLabel:
    family: str
    rank: int
    twist: int = 0

    def __post_init__(self):
        f, n, r = self.family, self.rank, self.twist
        if f not in FAMILIES or len(f) != 1:
            raise LabelError(f"unknown family {f!r}")
        if r not in (0, 1, 2, 3):
            raise LabelError(f"twist must be 0, 1, 2 or 3, got {r}")
        if r == 3:
            if (f, n) != ("D", 4):
                raise LabelError("twist 3 exists only for D4")
            return
        if r == 2:
            ok = (f == "A" and n >= 2) or (f == "D" and n >= 3) or (f, n) == ("E", 6)
            if not ok:
                raise LabelError(f"no twisted affine algebra {f}{n}^2")
            return
        minimal = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}[f]
        if n < minimal:
            raise LabelError(f"{f}{n} is not a valid finite type")
        if f == "E" and n > 8 or f == "F" and n != 4 or f == "G" and n != 2:
            raise LabelError(f"{f}{n} is not a valid finite type")

    def __str__(self):
        return f"{self.family}{self.rank}" + (f"^{self.twist}" if self.twist else "")

    @property
    def is_affine(self) -> bool:
        return self.twist > 0

    @property
    def finite_label(self) -> "AlgebraLabel":
        """Label of the diagram left after deleting node 0."""
        f, n, r = self.family, self.rank, self.twist
        if r <= 1:
            return AlgebraLabel(f, n, 0)
        if r == 3:
            return AlgebraLabel("G", 2, 0)
        if f == "A":
            return AlgebraLabel("C", (n + 1) // 2, 0) if n > 2 else AlgebraLabel("A", 1, 0)
        if f == "D":
            return AlgebraLabel("B", n - 1, 0)
        return AlgebraLabel("F", 4, 0)


def parse_label(text: str | AlgebraLabel) -> AlgebraLabel:
    """Parse ``"A3"``, ``"C2^1"``, ``"A4^2"``, ``"D4^3"`` (``^(2)`` also accepted)."""
    if isinstance(text, AlgebraLabel):
        return text
    m = _LABEL_RE.match(text)
    if not m:
        raise LabelError(f"cannot parse algebra label {text!r}")
    return AlgebraLabel(m.group(1).upper(), int(m.group(2)), int(m.group(3) or 0))


def finite_gcm(family: str, n: int) -> list[list[int]]:
    """Bourbaki-numbered Cartan matrix of a finite type."""
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        A[i - 1][j - 1] = aij
        A[j - 1][i - 1] = aji

    if family in "ABC":
        for i in range(1, n - 1):
            bond(i, i + 1)
        if n >= 2:
            if family == "A":
                bond(n - 1, n)
            elif family == "B":
                bond(n - 1, n, -1, -2)
            else:
                bond(n - 1, n, -2, -1)
    elif family == "D":
        for i in range(1, n - 1):
            bond(i, i + 1)
        bond(n - 2, n)
    elif family == "E":
        bond(1, 3)
        bond(2, 4)
        for i in range(3, n):
            bond(i, i + 1)
    elif family == "F":
        bond(1, 2)
        bond(2, 3, -1, -2)
        bond(3, 4)
    elif family == "G":
        bond(1, 2, -3, -1)
    return A


def symmetrizer(gcm: Sequence[Sequence[int]]) -> tuple[Fraction, ...]:
    """Positive ``d_i`` with ``d_i a_ij = d_j a_ji``; the largest ``d`` in each
    connected component equals 1 (long roots have squared length 2)."""
    n = len(gcm)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp, stack = [start], [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and gcm[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * gcm[i][j] / gcm[j][i]
                    comp.append(j)
                    stack.append(j)
        top = max(d[i] for i in comp)
        for i in comp:
            d[i] /= top
    return tuple(d)


def positive_roots(gcm: Sequence[Sequence[int]]) -> tuple[Weight, ...]:
    """Positive roots (simple-root coordinates) of a finite-type gcm, sorted by height.

    Uses root strings: for a root ``beta`` and simple ``alpha_i``, ``beta + alpha_i`` is
    a root iff ``p - <beta, alpha_i^vee> > 0`` where ``p`` is how far the string
    extends downwards.
    """
    n = len(gcm)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                pairing = sum(gcm[i][j] * beta[j] for j in range(n))
                p = 0
                lower = list(beta)
                while True:
                    lower[i] -= 1
                    if tuple(lower) in roots:
                        p += 1
                    else:
                        break
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
        if len(roots) > 10_000:
            raise ValueError("gcm is not of finite type")
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


def _null_vector(mat: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Primitive positive integer vector spanning the (1-dim) kernel of ``mat``."""
    n = len(mat[0])
    rows = [[Fraction(x) for x in row] for row in mat]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((k for k in range(r, len(rows)) if rows[k][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise ValueError("expected a one-dimensional kernel")
    vec = [Fraction(0)] * n
    vec[free[0]] = Fraction(1)
    for row, col in zip(rows, pivots):
        vec[col] = -row[free[0]]
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise ValueError("null vector is not positive; gcm is not affine")
    return tuple(ints)


def _root_coroot(gcm, d, beta: Sequence[int]) -> tuple[Fraction, ...]:
    """Coroot coordinates of ``beta^vee`` for a root given in simple-root coordinates."""
    n = len(gcm)
    norm = sum(beta[i] * beta[j] * d[i] * gcm[i][j] for i in range(n) for j in range(n))
    return tuple(beta[i] * d[i] * 2 / norm for i in range(n))


def _affine_gcm(Y: list[list[int]], beta: Weight, a0: int) -> list[list[int]]:
    """Extend a finite gcm by a node with ``alpha_0 = (delta - beta) / a0``."""
    n = len(Y)
    d = symmetrizer(Y)
    beta_vee = _root_coroot(Y, d, beta)
    A = [[0] * (n + 1) for _ in range(n + 1)]
    A[0][0] = 2
    for i in range(n):
        for j in range(n):
            A[i + 1][j + 1] = Y[i][j]
    for j in range(n):
        val = -a0 * sum(beta_vee[i] * Y[i][j] for i in range(n))
        A[0][j + 1] = _as_int(val)
    for i in range(n):
        val = Fraction(-sum(Y[i][j] * beta[j] for j in range(n)), a0)
        A[i + 1][0] = _as_int(val)
    return A


def _as_int(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ValueError(f"expected an integer, got {x}")
    return int(x)


def _highest_short_root(Y) -> Weight:
    d = symmetrizer(Y)
    roots = positive_roots(Y)
    short = min(d)
    best = None
    for r in roots:
        norm = sum(r[i] * r[j] * d[i] * Y[i][j] for i in range(len(Y)) for j in range(len(Y)))
        if norm == 2 * short:
            best = r
    return best


def _twisted_gcm(label: AlgebraLabel) -> list[list[int]]:
    """Twisted affine gcm, numbered as in Kac's tables Aff 2 / Aff 3."""
    f, n, r = label.family, label.rank, label.twist
    if r == 3:
        Y = finite_gcm("G", 2)
        return _affine_gcm(Y, _highest_short_root(Y), 1)
    if f == "A" and n % 2 == 0:
        Y = finite_gcm("C", n // 2) if n > 2 else finite_gcm("A", 1)
        theta_long = positive_roots(Y)[-1]
        return _affine_gcm(Y, theta_long, 2)
    if f == "A":
        Y = finite_gcm("C", (n + 1) // 2)
    elif f == "D":
        Y = finite_gcm("B", n - 1)
    else:
        # E6^(2): the F4 nodes are numbered from the end adjacent to node 0
        B = finite_gcm("F", 4)
        Y = [[B[3 - i][3 - j] for j in range(4)] for i in range(4)]
    return _affine_gcm(Y, _highest_short_root(Y), 1)


@dataclass(frozen=True)
class CartanData:
    """Numerical datum of one finite or affine generalized Cartan matrix.

    For affine data, ``marks``/``comarks`` run over all nodes ``0..n`` and the
    finite-node vectors (``nu_ratios``, ``theta_*``, ``dual_marks``) refer to the
    diagram left after deleting node 0.  For finite data ``marks`` and
    ``comarks`` are the coordinates of the highest root and of its coroot.
    """

    name: str
    gcm: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    dual_marks: tuple[int, ...]
    nu_ratios: tuple
    theta_root_coords: tuple[int, ...]
    theta_covector: tuple[int, ...]
    delta_coords: tuple[int, ...] | None
    label: AlgebraLabel | None = field(default=None, compare=False)
    node_names: tuple[int, ...] | None = field(default=None, compare=False)

    # ------------------------------------------------------------------ basics
    @property
    def size(self) -> int:
        """Number of nodes (n+1 for affine data)."""
        return len(self.gcm)

    @property
    def is_affine(self) -> bool:
        return self.delta_coords is not None

    @property
    def rank(self) -> int:
        return self.size - 1 if self.is_affine else self.size

    def __str__(self):
        return self.name

    def simple_root(self, j: int) -> Weight:
        return tuple(self.gcm[i][j] for i in range(self.size))

    @cached_property
    def symmetrizer(self) -> tuple[Fraction, ...]:
        return symmetrizer(self.gcm)

    @cached_property
    def inverse_cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        """Inverse of the (finite) gcm: column ``j`` is ``omega_j`` in root coordinates."""
        if self.is_affine:
            raise ValueError("affine gcm is singular")
        n = self.size
        M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self.gcm)]
        for col in range(n):
            piv = next(k for k in range(col, n) if M[k][col] != 0)
            M[col], M[piv] = M[piv], M[col]
            inv = 1 / M[col][col]
            M[col] = [x * inv for x in M[col]]
            for k in range(n):
                if k != col and M[k][col] != 0:
                    f = M[k][col]
                    M[k] = [a - f * b for a, b in zip(M[k], M[col])]
        return tuple(tuple(row[n:]) for row in M)

    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        if self.is_affine:
            raise ValueError("affine root systems are infinite")
        return positive_roots(self.gcm)

    def coroot(self, beta: Sequence[int]) -> tuple[int, ...]:
        """Coroot coordinates of the root ``beta`` (simple-root coordinates)."""
        return tuple(_as_int(x) for x in _root_coroot(self.gcm, self.symmetrizer, beta))

    def root_as_weight(self, beta: Sequence[int]) -> Weight:
        n = self.size
        return tuple(sum(self.gcm[i][j] * beta[j] for j in range(n)) for i in range(n))

    # ---------------------------------------------------------------- weights
    def level(self, lam: Sequence[int]) -> int:
        """``<Lambda, K>``; zero for every finite datum."""
        if not self.is_affine:
            return 0
        return sum(a * c for a, c in zip(self.comarks, lam))

    def pairing(self, lam: Sequence[int], i: int) -> int:
        if not 0 <= i < self.size:
            raise IndexError(f"node {i} out of range for {self.name}")
        if len(lam) != self.size:
            raise ValueError(f"weight {tuple(lam)} has wrong length for {self.name}")
        return lam[i]

    def embed_finite(self, lam: Sequence[int], basepoint: int = 0) -> Weight:
        """Level-0 lift of a weight of the diagram with ``basepoint`` deleted."""
        if not self.is_affine:
            raise ValueError("embed_finite needs affine data")
        if len(lam) != self.rank:
            raise ValueError(f"finite weight {tuple(lam)} has wrong length")
        out = list(lam[:basepoint]) + [0] + list(lam[basepoint:])
        rest = sum(a * c for a, c in zip(self.comarks, out))
        if rest % self.comarks[basepoint]:
            raise ValueError("weight has no integral level-0 lift at this basepoint")
        out[basepoint] = -rest // self.comarks[basepoint]
        return tuple(out)

    def finite_part(self, lam: Sequence[int], basepoint: int = 0) -> Weight:
        return tuple(c for i, c in enumerate(lam) if i != basepoint)

    def fundamental(self, i: int, times: int = 1) -> Weight:
        return tuple(times if j == i else 0 for j in range(self.size))

    def reflect(self, lam: Sequence[int], i: int) -> Weight:
        c = lam[i]
        if c == 0:
            return tuple(lam)
        return tuple(x - c * self.gcm[k][i] for k, x in enumerate(lam))

    def nu(self, coweight: Sequence[int]) -> Weight:
        """``nu(omega_i^vee) = (a_i / a_i^vee) omega_i``, applied coordinate-wise."""
        ratios = self.nu_ratios
        if any(Fraction(r).denominator != 1 for r in ratios):
            raise ValueError(f"nu is not integral for {self.name}; pass weights directly")
        if len(coweight) != len(ratios):
            raise ValueError("coweight has wrong length")
        return tuple(int(r) * c for r, c in zip(ratios, coweight))

    @cached_property
    def rho_hat(self) -> Weight:
        return (1,) * self.size

    # -------------------------------------------------------------- subdiagrams
    def subdiagram(self, nodes: Sequence[int]) -> "CartanData":
        """Finite datum on the given nodes (must be of finite type)."""
        nodes = tuple(sorted(nodes))
        sub = [[self.gcm[i][j] for j in nodes] for i in nodes]
        names = tuple(self.node_names[i] if self.node_names else i for i in nodes)
        return _finite_data(f"{self.name}[{','.join(map(str, names))}]", sub, None, names)

    @cached_property
    def finite(self) -> "CartanData":
        """Finite datum obtained by deleting node 0 (affine data only)."""
        if not self.is_affine:
            return self
        if self.label is not None:
            base = build_cartan(self.label.finite_label)
            sub = [[self.gcm[i][j] for j in range(1, self.size)] for i in range(1, self.size)]
            if [list(r) for r in base.gcm] == sub:
                return base
        # E6^(2) numbers its F4 nodes in reverse
        return self.subdiagram(range(1, self.size))

    def delete_node(self, k: int) -> "CartanData":
        if k == 0:
            return self.finite
        return self.subdiagram([i for i in range(self.size) if i != k])

    def is_special_vertex(self, k: int) -> bool:
        """``delta - a_k alpha_k`` is a positive root of the diagram without ``k``."""
        if not self.is_affine:
            raise ValueError("special vertices are defined for affine data")
        if k == 0:
            return True
        rest = [i for i in range(self.size) if i != k]
        target = tuple(self.marks[i] for i in rest)
        try:
            roots = positive_roots([[self.gcm[i][j] for j in rest] for i in rest])
        except ValueError:
            return False
        return target in set(roots)

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        """All node permutations ``pi`` with ``gcm[pi(i)][pi(j)] == gcm[i][j]``."""
        n = self.size
        out = []
        for perm in permutations(range(n)):
            if all(self.gcm[perm[i]][perm[j]] == self.gcm[i][j] for i in range(n) for j in range(n)):
                out.append(perm)
        return tuple(out)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        n = self.size
        if sorted(perm) != list(range(n)):
            return False
        return all(self.gcm[perm[i]][perm[j]] == self.gcm[i][j] for i in range(n) for j in range(n))

    def is_minuscule_coweight(self, i: int) -> bool:
        """``omega_i^vee`` minuscule iff ``a_i = 1`` (finite node index ``i`` >= 1)."""
        return self.theta_root_coords[i - 1] == 1

    def is_minuscule_weight(self, i: int) -> bool:
        return self.dual_marks[i - 1] == 1


def _finite_data(name, gcm, label, node_names=None) -> CartanData:
    gcm = tuple(tuple(r) for r in gcm)
    n = len(gcm)
    d = symmetrizer(gcm)
    roots = positive_roots(gcm)
    # the connected case is the only one with a meaningful highest root
    theta = roots[-1]
    theta_vee = tuple(_as_int(x) for x in _root_coroot(gcm, d, theta))
    transpose = [[gcm[j][i] for j in range(n)] for i in range(n)]
    dual = positive_roots(transpose)[-1]
    ratios = tuple(_as_int(Fraction(a, b)) if a % b == 0 else Fraction(a, b)
                   for a, b in zip(theta, theta_vee))
    covector = tuple(sum(theta_vee[i] * gcm[i][j] for i in range(n)) for j in range(n))
    return CartanData(name=name, gcm=gcm, marks=theta, comarks=theta_vee, dual_marks=dual,
                      nu_ratios=ratios, theta_root_coords=theta, theta_covector=covector,
                      delta_coords=None, label=label, node_names=node_names)


@lru_cache(maxsize=None)
def _build(label: AlgebraLabel) -> CartanData:
    f, n, r = label.family, label.rank, label.twist
    if r == 0:
        return _finite_data(str(label), finite_gcm(f, n), label, tuple(range(1, n + 1)))
    fin = _build(AlgebraLabel(f, n, 0)) if r == 1 else None
    if r == 1:
        Y = [list(row) for row in fin.gcm]
        gcm = _affine_gcm(Y, fin.theta_root_coords, 1)
    else:
        gcm = _twisted_gcm(label)
    marks = _null_vector(gcm)
    comarks = _null_vector([[gcm[j][i] for j in range(len(gcm))] for i in range(len(gcm))])
    sub = [[gcm[i][j] for j in range(1, len(gcm))] for i in range(1, len(gcm))]
    finite = _finite_data("", sub, None)
    ratios = tuple(_as_int(Fraction(a, b)) if a % b == 0 else Fraction(a, b)
                   for a, b in zip(marks[1:], comarks[1:]))
    covector = tuple(sum(comarks[i] * gcm[i][j] for i in range(1, len(gcm)))
                     for j in range(1, len(gcm)))
    return CartanData(name=str(label), gcm=tuple(tuple(x) for x in gcm), marks=marks,
                      comarks=comarks, dual_marks=finite.dual_marks, nu_ratios=ratios,
                      theta_root_coords=tuple(marks[1:]), theta_covector=covector,
                      delta_coords=marks, label=label, node_names=tuple(range(len(gcm))))


def build_cartan(label: str | AlgebraLabel) -> CartanData:
    """Cartan datum for a label such as ``"C2"``, ``"C2^1"`` or ``"A4^2"``."""
    return _build(parse_label(label))


def affine_of(label: str | AlgebraLabel | CartanData) -> CartanData:
    """Affine datum for a label; finite labels map to their untwisted extension."""
    if isinstance(label, CartanData):
        if label.is_affine:
            return label
        if label.label is None:
            raise ValueError(f"{label.name} has no affine extension")
        label = label.label
    lab = parse_label(label)
    if lab.twist == 0:
        lab = AlgebraLabel(lab.family, lab.rank, 1)
    return build_cartan(lab)
