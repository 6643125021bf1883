"""Exact linear algebra over Q (Fractions) plus Z-lattices of rational vectors.

Vectors are tuples of Fractions; matrices are lists of row vectors.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .fgab import _right_kernel, _solve_combination


def frac_vec(v: Iterable) -> tuple:
    return tuple(Fraction(x) for x in v)


def rref(rows: Iterable[Sequence], ncols: int):
    """Reduced row echelon form: ``(nonzero_rows, pivot_columns)``."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return [tuple(x) for x in a[:r]], tuple(pivots)


def rank(rows: Iterable[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[0])


def nullspace(rows: Iterable[Sequence], ncols: int) -> list:
    """Basis of {x : rows @ x = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


class Subspace:
    """A subspace of Q^dim kept in reduced echelon form (hence canonical)."""

    __slots__ = ("dim", "basis", "pivots")

    def __init__(self, vectors: Iterable[Sequence], dim: int):
        self.dim = dim
        self.basis, self.pivots = rref(list(vectors), dim)

    @classmethod
    def whole(cls, dim: int) -> Subspace:
        return cls([tuple(int(i == j) for j in range(dim)) for i in range(dim)], dim)

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.dim == other.dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(rank={self.rank}, dim={self.dim})"

    def reduce(self, v: Sequence) -> tuple:
        v = [Fraction(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_space(self, other: Subspace) -> bool:
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v: Sequence):
        """Coefficients of v in the echelon basis, or None if v is outside."""
        if not self.contains(v):
            return None
        return tuple(Fraction(v[p]) for p in self.pivots)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace(self.basis + other.basis, self.dim)

    def intersect(self, other: Subspace) -> Subspace:
        # x in both iff x = sum a_i u_i = sum b_j w_j
        u, w = self.basis, other.basis
        if not u or not w:
            return Subspace([], self.dim)
        cols = [list(x) for x in u] + [[-y for y in x] for x in w]
        system = [[c[i] for c in cols] for i in range(self.dim)]
        sols = nullspace(system, len(cols))
        vecs = [tuple(sum(s[k] * u[k][i] for k in range(len(u))) for i in range(self.dim))
                for s in sols]
        return Subspace(vecs, self.dim)


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int):
    """One rational solution x of rows @ x = rhs, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x)


def matvec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    bt = list(zip(*b)) if b else []
    ncols = len(b[0]) if b else 0
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] if bt else [0] * ncols
            for row in a]


def common_denominator(values: Iterable) -> int:
    d = 1
    for x in values:
        d = math.lcm(d, Fraction(x).denominator)
    return d


def integral(v: Sequence) -> tuple:
    """Scale a rational vector to a primitive-free integer vector (same line)."""
    d = common_denominator(v)
    return tuple(int(Fraction(x) * d) for x in v)


def lattice_relations(vectors: Sequence[Sequence], dim: int) -> list:
    """Integer basis of {c : sum c_i vectors_i = 0}."""
    if not vectors:
        return []
    d = common_denominator(x for v in vectors for x in v)
    scaled = [[int(Fraction(v[i]) * d) for v in vectors] for i in range(dim)]
    return _right_kernel(scaled, len(vectors))


def lattice_contains(generators: Sequence[Sequence], v: Sequence) -> bool:
    """Is v in the Z-span of the given rational vectors?"""
    d = common_denominator([x for g in generators for x in g] + list(v))
    gens = [tuple(int(Fraction(x) * d) for x in g) for g in generators]
    target = tuple(int(Fraction(x) * d) for x in v)
    return _solve_combination(gens, target) is not None
