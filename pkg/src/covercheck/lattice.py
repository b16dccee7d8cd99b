"""Exact quadratic lattices over the rationals.

A :class:`Lattice` is a symmetric Gram matrix with one label per basis
vector.  All arithmetic uses :class:`fractions.Fraction`, so every
definiteness verdict is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import (
    AmbientMismatch,
    B2TooSmall,
    EmptyInput,
    IndexOutOfRange,
    InvalidParam,
    LabelMismatch,
    MissingParam,
    NonIntegral,
    NonSymmetric,
    UnknownName,
)

Matrix = tuple[tuple[Fraction, ...], ...]


def _as_fraction_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


@dataclass(frozen=True)
class Lattice:
    gram: Matrix
    labels: tuple[str, ...]
    source: str = field(default="user", compare=False)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def pair(self, u: Sequence, v: Sequence) -> Fraction:
        """Bilinear pairing of two coefficient vectors."""
        total = Fraction(0)
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = self.gram[i]
            total += ui * sum((row[j] * vj for j, vj in enumerate(v) if vj), Fraction(0))
        return total

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.gram for x in row)

    def __repr__(self) -> str:
        return f"Lattice(rank={self.rank}, labels={list(self.labels)})"


@dataclass(frozen=True)
class DivisorClass:
    coeffs: tuple[Fraction, ...]
    ambient: Lattice

    def __post_init__(self):
        if len(self.coeffs) != self.ambient.rank:
            raise AmbientMismatch(
                f"class has {len(self.coeffs)} coefficients, lattice has rank {self.ambient.rank}"
            )

    @classmethod
    def of(cls, ambient: Lattice, coeffs: Iterable) -> "DivisorClass":
        return cls(tuple(Fraction(c) for c in coeffs), ambient)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _same_ambient(self, other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.ambient)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        _same_ambient(self, other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.ambient)

    def scale(self, c) -> "DivisorClass":
        c = Fraction(c)
        return DivisorClass(tuple(c * a for a in self.coeffs), self.ambient)

    def pair(self, other: "DivisorClass") -> Fraction:
        _same_ambient(self, other)
        return self.ambient.pair(self.coeffs, other.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        return "DivisorClass(" + ", ".join(str(c) for c in self.coeffs) + ")"


def _same_ambient(a: DivisorClass, b: DivisorClass) -> None:
    if a.ambient is not b.ambient and a.ambient != b.ambient:
        raise AmbientMismatch("classes live over different lattices")


@dataclass(frozen=True)
class Signature:
    n_plus: int
    n_zero: int
    n_minus: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_zero, self.n_minus)


# -- construction -----------------------------------------------------------


def lattice_from_gram(gram, labels, source: str = "user") -> Lattice:
    g = _as_fraction_matrix(gram)
    n = len(g)
    if any(len(row) != n for row in g):
        raise NonSymmetric("Gram matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if g[i][j] != g[j][i]:
                raise NonSymmetric(f"gram[{i}][{j}] = {g[i][j]} but gram[{j}][{i}] = {g[j][i]}")
    labels = tuple(str(s) for s in labels)
    if len(labels) != n:
        raise LabelMismatch(f"{len(labels)} labels for rank {n}")
    if len(set(labels)) != n:
        raise LabelMismatch("labels are not distinct")
    return Lattice(g, labels, source)


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    n, m = a.rank, b.rank
    zero = Fraction(0)
    rows = [row + (zero,) * m for row in a.gram]
    rows += [(zero,) * n + row for row in b.gram]
    labels = list(a.labels)
    taken = set(labels)
    for lab in b.labels:
        new, k = lab, 1
        while new in taken:
            new = f"{lab}_{k}"
            k += 1
        taken.add(new)
        labels.append(new)
    src = a.source if b.rank == 0 else b.source if a.rank == 0 else f"{a.source} + {b.source}"
    return Lattice(tuple(rows), tuple(labels), src)


def _e8_negative() -> list[list[int]]:
    # Bourbaki numbering: chain 1-3-4-5-6-7-8, node 2 attached to node 4.
    edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]
    g = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return g


def _sum_all(*parts: Lattice) -> Lattice:
    out = lattice_from_gram([], [])
    for p in parts:
        out = direct_sum(out, p)
    return out


CATALOG = {
    "U": "hyperbolic plane [[0,1],[1,0]]",
    "E8neg": "E8 root lattice with negated form (negative Cartan matrix)",
    "rank1": "rank-one lattice <k>",
    "K3": "U^3 + E8(-1)^2, the K3 lattice",
    "K3n": "U^3 + E8(-1)^2 + <-2(n-1)>, BBF lattice of K3^[n]-type (n >= 2)",
    "Kumn": "U^3 + <-2(n+1)>, BBF lattice of generalized Kummer type (n >= 1)",
}


def standard_lattice(name: str, param: Optional[int] = None) -> Lattice:
    """Return a catalog lattice; ``CATALOG`` lists the keys."""
    if name not in CATALOG:
        raise UnknownName(f"unknown lattice {name!r}; known: {', '.join(CATALOG)}")
    src = CATALOG[name]
    if name == "U":
        return lattice_from_gram([[0, 1], [1, 0]], ["e", "f"], src)
    if name == "E8neg":
        return lattice_from_gram(_e8_negative(), [f"a{i}" for i in range(1, 9)], src)
    if name == "K3":
        u = standard_lattice("U")
        e8 = standard_lattice("E8neg")
        return Lattice(_sum_all(u, u, u, e8, e8).gram, _k3_labels(), src)
    if param is None:
        raise MissingParam(f"lattice {name!r} needs a parameter")
    param = int(param)
    if name == "rank1":
        if param == 0:
            raise InvalidParam("<k> needs k nonzero")
        return lattice_from_gram([[param]], ["v"], src)
    if name == "K3n":
        if param < 2:
            raise InvalidParam("K3n needs n >= 2")
        k3 = standard_lattice("K3")
        return Lattice(direct_sum(k3, lattice_from_gram([[-2 * (param - 1)]], ["delta"])).gram,
                       _k3_labels() + ("delta",), src)
    # Kumn
    if param < 1:
        raise InvalidParam("Kumn needs n >= 1")
    u = standard_lattice("U")
    lat = _sum_all(u, u, u, lattice_from_gram([[-2 * (param + 1)]], ["delta"]))
    return Lattice(lat.gram, ("e1", "f1", "e2", "f2", "e3", "f3", "delta"), src)


def _k3_labels() -> tuple[str, ...]:
    return (
        tuple(f"{c}{i}" for i in (1, 2, 3) for c in "ef")
        + tuple(f"a{i}" for i in range(1, 9))
        + tuple(f"b{i}" for i in range(1, 9))
    )


# -- inertia ----------------------------------------------------------------


def gram_signature(gram) -> Signature:
    """Inertia of a symmetric rational matrix by congruence diagonalization.

    Nonzero diagonal entries are used as pivots.  When every remaining
    diagonal entry vanishes but some off-diagonal entry g does not, the
    hyperbolic block [[0, g], [g, 0]] is split off and counts as (1, 0, 1).
    """
    a = [[Fraction(x) for x in row] for row in gram]
    active = list(range(len(a)))
    plus = minus = 0
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is not None:
            d = a[piv][piv]
            if d > 0:
                plus += 1
            else:
                minus += 1
            active.remove(piv)
            prow = a[piv]
            for r in active:
                f = a[r][piv] / d
                if f:
                    row = a[r]
                    for c in active:
                        row[c] -= f * prow[c]
            continue
        pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        g = a[i][j]
        active.remove(i)
        active.remove(j)
        plus += 1
        minus += 1
        # Schur complement of [[0, g], [g, 0]]; its inverse is [[0, 1/g], [1/g, 0]].
        ai, aj = a[i], a[j]
        for r in active:
            ri, rj = a[r][i], a[r][j]
            if not (ri or rj):
                continue
            row = a[r]
            for c in active:
                row[c] -= (ri * aj[c] + rj * ai[c]) / g
    return Signature(plus, len(active), minus)


def signature(l: Lattice) -> Signature:
    return gram_signature(l.gram)


def is_negative_definite(l: Lattice, subset: Sequence[int]) -> bool:
    subset = list(subset)
    if len(set(subset)) != len(subset):
        raise IndexOutOfRange("subset indices are not distinct")
    for i in subset:
        if not 0 <= i < l.rank:
            raise IndexOutOfRange(f"index {i} outside 0..{l.rank - 1}")
    sub = [[l.gram[i][j] for j in subset] for i in subset]
    return gram_is_negative_definite(sub)


def gram_is_negative_definite(gram) -> bool:
    sig = gram_signature(gram)
    return sig.n_plus == 0 and sig.n_zero == 0


def class_gram(classes: Sequence[DivisorClass]) -> list[list[Fraction]]:
    return [[c.pair(d) for d in classes] for c in classes]


def q_exceptional(l: Lattice, classes: Sequence[DivisorClass]) -> bool:
    """True when the Gram matrix of ``classes`` under the form is negative definite."""
    if not classes:
        raise EmptyInput("no classes given")
    for c in classes:
        if c.ambient != l:
            raise AmbientMismatch("class is not over the given lattice")
    return gram_is_negative_definite(class_gram(classes))


def branch_component_bound(b2: int) -> int:
    """Largest rank of a negative-definite sublattice in signature (3, b2 - 3)."""
    if b2 < 3:
        raise B2TooSmall(f"b2 = {b2} < 3")
    return b2 - 3


# -- integer kernels --------------------------------------------------------


def _to_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NonIntegral(f"{what} has non-integral entry {x}")
    return x.numerator


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Z-basis of {v in Z^ncols : A v = 0}, in Hermite normal form.

    Works on the augmented matrix [A^T | I] with unimodular row operations;
    rows whose A^T part becomes zero span the kernel.  The kernel of an
    integer matrix is saturated in Z^ncols, so the basis is primitive.
    """
    k = len(rows)
    aug = [[rows[r][i] for r in range(k)] + [1 if j == i else 0 for j in range(ncols)]
           for i in range(ncols)]
    top = 0
    for col in range(k):
        top = _eliminate_column(aug, top, col)
    kernel = [row[k:] for row in aug[top:]]
    return hermite_rows(kernel)


def _eliminate_column(m: list[list[int]], top: int, col: int) -> int:
    """Euclid on column ``col`` over rows ``top..``; returns the next free row."""
    while True:
        nz = [r for r in range(top, len(m)) if m[r][col] != 0]
        if not nz:
            return top
        p = min(nz, key=lambda r: abs(m[r][col]))
        m[top], m[p] = m[p], m[top]
        if len(nz) == 1:
            return top + 1
        pv = m[top][col]
        for r in range(top + 1, len(m)):
            q = m[r][col] // pv
            if q:
                m[r] = [x - q * y for x, y in zip(m[r], m[top])]


def hermite_rows(basis: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of a full-row-rank integer matrix."""
    m = [list(r) for r in basis]
    if not m:
        return []
    top = 0
    for col in range(len(m[0])):
        if top == len(m):
            break
        new_top = _eliminate_column(m, top, col)
        if new_top == top:
            continue
        if m[top][col] < 0:
            m[top] = [-x for x in m[top]]
        pv = m[top][col]
        for r in range(top):
            q = m[r][col] // pv
            if q:
                m[r] = [x - q * y for x, y in zip(m[r], m[top])]
        top = new_top
    return m[:top]


def primitive_orthogonal_complement(l: Lattice, classes: Sequence[DivisorClass]) -> list[list[int]]:
    """Basis of the primitive sublattice orthogonal to ``classes``."""
    for c in classes:
        if c.ambient != l:
            raise AmbientMismatch("class is not over the given lattice")
    gram = [[_to_int(x, "Gram matrix") for x in row] for row in l.gram]
    vecs = [[_to_int(x, "class") for x in c.coeffs] for c in classes]
    n = l.rank
    # q(v, c) = sum_i v_i (G c)_i
    rows = [[sum(gram[i][j] * c[j] for j in range(n)) for i in range(n)] for c in vecs]
    basis = integer_kernel(rows, n)
    for v in basis:
        assert gcd(*v) == 1
    return basis


def rational_rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rank + 1, len(m)):
            f = m[r][col] / m[rank][col]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def is_saturated(basis: Sequence[Sequence[int]]) -> bool:
    """True when the integer row span equals its rational span inside Z^n,
    i.e. the maximal minors of ``basis`` have gcd 1."""
    if not basis:
        return True
    k = len(basis)
    if rational_rank(basis) < k:
        return False
    # unimodular column operations bring basis to [L | 0]; gcd of minors = |det L|
    cols = [[basis[r][c] for r in range(k)] for c in range(len(basis[0]))]
    top = 0
    for row in range(k):
        top = _eliminate_column(cols, top, row)
    det = 1
    for i in range(k):
        det *= cols[i][i]
    return abs(det) == 1
