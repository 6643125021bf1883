"""Finitely generated abelian groups, their subgroups and homomorphisms.

A group is presented as Z^n modulo the column span of an integer relation
matrix.  A subgroup is stored through its generators, but two subgroups are
equal exactly when the Hermite bases of their full preimage lattices in Z^n
agree.  Every computation is exact (Python integers).
"""
from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

INFINITE = math.inf

Vector = tuple  # tuple[int, ...]


class AmbientMismatch(ValueError):
    """Operands live in different groups."""


class IllDefinedHom(ValueError):
    """A matrix does not send relators to relators."""


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count needed for an empty row list")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: int) -> IntMatrix:
        columns = [tuple(int(x) for x in c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise ValueError("column length does not match row count")
        return cls(rows, len(columns),
                   tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> IntMatrix:
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_columns([self.row(i) for i in range(self.rows)], self.cols)

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if other.rows != self.rows:
            raise ValueError("row counts differ")
        return IntMatrix.from_columns(self.columns() + other.columns(), self.rows)

    def apply(self, v: Sequence[int]) -> tuple:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return IntMatrix.from_columns([self.apply(c) for c in other.columns()], self.rows)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows)
                   for j in range(self.cols) if i != j)

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r}, {self.rows}x{self.cols})"


def determinant(m: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    a = m.to_rows()
    n = m.rows
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _xgcd(a: int, b: int) -> tuple:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms


def _hnf(rows: list, ncols: int, transform: bool = False):
    """Row-style Hermite normal form.

    Returns ``(h, u, pivots)`` where ``h`` holds the nonzero rows of the
    normal form, ``pivots`` their pivot columns and, when ``transform`` is
    set, ``u`` is unimodular with ``u @ rows`` equal to ``h`` followed by
    zero rows.  The rows of ``u`` past ``len(h)`` span the left kernel.
    """
    a = [list(r) for r in rows]
    m = len(a)
    u = [[int(i == j) for j in range(m)] for i in range(m)] if transform else None
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            b = a[i][c]
            if b == 0:
                continue
            p = a[r][c]
            if p == 0:
                a[r], a[i] = a[i], a[r]
                if transform:
                    u[r], u[i] = u[i], u[r]
                continue
            if b % p == 0:
                q = b // p
                a[i] = [y - q * x for x, y in zip(a[r], a[i])]
                if transform:
                    u[i] = [y - q * x for x, y in zip(u[r], u[i])]
                continue
            g, x, y = _xgcd(p, b)
            s, t = -b // g, p // g
            ar, ai = a[r], a[i]
            a[r] = [x * v + y * w for v, w in zip(ar, ai)]
            a[i] = [s * v + t * w for v, w in zip(ar, ai)]
            if transform:
                ur, ui = u[r], u[i]
                u[r] = [x * v + y * w for v, w in zip(ur, ui)]
                u[i] = [s * v + t * w for v, w in zip(ur, ui)]
        p = a[r][c]
        if p == 0:
            continue
        if p < 0:
            a[r] = [-v for v in a[r]]
            if transform:
                u[r] = [-v for v in u[r]]
            p = -p
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [y - q * x for x, y in zip(a[r], a[i])]
                if transform:
                    u[i] = [y - q * x for x, y in zip(u[r], u[i])]
        pivots.append(c)
        r += 1
    return [tuple(v) for v in a[:r]], u, tuple(pivots)


def _reduce(v: Sequence[int], basis: Sequence[tuple], pivots: Sequence[int]):
    """Reduce ``v`` against a Hermite basis; return (remainder, coefficients)."""
    v = list(v)
    coeffs = []
    for row, c in zip(basis, pivots):
        q = v[c] // row[c]
        coeffs.append(q)
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return tuple(v), coeffs


def _right_kernel(rows: list, ncols: int) -> list:
    """Integer basis of {x : rows @ x = 0}."""
    if ncols == 0:
        return []
    transposed = [[r[j] for r in rows] for j in range(ncols)]
    h, u, _ = _hnf(transposed, len(rows), transform=True)
    return [tuple(v) for v in u[len(h):]]


def smith_normal_form(m: IntMatrix):
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` in Smith form.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with non-negative
    entries, each dividing the next (zeros last).
    """
    u, d, v, _ = _snf(m)
    return u, d, v


def _snf(m: IntMatrix):
    """Smith form plus the inverse of the row transform.

    Row and column Hermite reductions alternate until the matrix is diagonal;
    Hermite forms keep entries reduced, so the transforms stay small.  The
    divisor chain is then fixed with 2x2 gcd steps.
    """
    nr, nc = m.rows, m.cols
    a = m.to_rows()
    u = _identity_rows(nr)
    v = _identity_rows(nc)
    rows_turn = True
    while not _is_diagonal(a):
        if rows_turn:
            h, t, _ = _hnf(a, nc, transform=True)
            a = [list(r) for r in h] + [[0] * nc for _ in range(nr - len(h))]
            u = _mul(t, u)
        else:
            h, t, _ = _hnf(_transpose(a, nc), nr, transform=True)
            at = [list(r) for r in h] + [[0] * nr for _ in range(nc - len(h))]
            a = _transpose(at, nr)
            v = _mul(v, _transpose(t, nc))
        rows_turn = not rows_turn

    k = min(nr, nc)
    d = [a[i][i] for i in range(k)]
    order = sorted(range(k), key=lambda i: (d[i] == 0, i))
    if order != list(range(k)):
        perm_r = order + list(range(k, nr))
        perm_c = order + list(range(k, nc))
        u = [u[i] for i in perm_r]
        v = [[row[j] for j in perm_c] for row in v]
        d = [d[i] for i in order]
    for i in range(k):
        for j in range(i + 1, k):
            x, y = d[i], d[j]
            if x == 0 or y % x == 0:
                continue
            g, s, t = _xgcd(x, y)
            # [[s, t], [-y/g, x/g]] diag(x, y) [[1, -t*y/g], [1, s*x/g]] = diag(g, x*y/g)
            ui, uj = u[i], u[j]
            u[i] = [s * p + t * q for p, q in zip(ui, uj)]
            u[j] = [(-y // g) * p + (x // g) * q for p, q in zip(ui, uj)]
            for row in v:
                ci, cj = row[i], row[j]
                row[i] = ci + cj
                row[j] = (-t * y // g) * ci + (s * x // g) * cj
            d[i], d[j] = g, x * y // g
    for i in range(k):
        if d[i] < 0:
            d[i] = -d[i]
            u[i] = [-p for p in u[i]]
    diag = [[d[i] if i == j and i < k else 0 for j in range(nc)] for i in range(nr)]
    to = lambda rows, c: IntMatrix.from_rows(rows, c)  # noqa: E731
    return to(u, nr), to(diag, nc), to(v, nc), to(_unimodular_inverse(u), nr)


def _identity_rows(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _is_diagonal(a: list) -> bool:
    return all(x == 0 for i, row in enumerate(a) for j, x in enumerate(row) if i != j)


def _transpose(a: list, ncols: int) -> list:
    return [[row[j] for row in a] for j in range(ncols)]


def _mul(a: list, b: list) -> list:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(x * b[k][j] for k, x in enumerate(row) if x) for j in range(cols)] for row in a]


def _unimodular_inverse(u: list) -> list:
    """Exact inverse of a unimodular integer matrix (Gauss-Jordan over Q)."""
    n = len(u)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(u)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c])
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = [[x.numerator for x in row[n:]] for row in a]
    assert all(x.denominator == 1 for row in a for x in row[n:]), "matrix is not unimodular"
    return out


# ---------------------------------------------------------------------------
# groups


class FGGroup:
    """Z^ambient_rank modulo the column span of ``relations``."""

    __slots__ = ("ambient_rank", "relations", "__dict__")

    def __init__(self, ambient_rank: int, relations: IntMatrix | None = None):
        if relations is None:
            relations = IntMatrix.zeros(ambient_rank, 0)
        if relations.rows != ambient_rank:
            raise ValueError(
                f"relation matrix has {relations.rows} rows, expected {ambient_rank}")
        self.ambient_rank = ambient_rank
        self.relations = relations

    @classmethod
    def free(cls, n: int) -> FGGroup:
        return cls(n)

    @classmethod
    def from_divisors(cls, *divisors: int) -> FGGroup:
        """Direct sum of cyclic groups Z/d (d = 0 gives Z)."""
        n = len(divisors)
        cols = [tuple(d * int(i == j) for i in range(n)) for j, d in enumerate(divisors) if d]
        return cls(n, IntMatrix.from_columns(cols, n))

    @classmethod
    def from_relations(cls, ambient_rank: int, relators: Iterable[Sequence[int]]) -> FGGroup:
        return cls(ambient_rank, IntMatrix.from_columns(list(relators), ambient_rank))

    def __repr__(self) -> str:
        return f"FGGroup({self.describe()}, ambient_rank={self.ambient_rank})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FGGroup):
            return NotImplemented
        return (self.ambient_rank == other.ambient_rank
                and self.relation_basis == other.relation_basis)

    def __hash__(self) -> int:
        return hash((self.ambient_rank, self.relation_basis))

    # -- relation lattice
    @cached_property
    def _relation_hnf(self):
        h, _, piv = _hnf(self.relations.columns(), self.ambient_rank)
        return tuple(h), piv

    @property
    def relation_basis(self) -> tuple:
        return self._relation_hnf[0]

    @property
    def relation_rank(self) -> int:
        return len(self.relation_basis)

    # -- Smith data
    @cached_property
    def _smith(self):
        basis = self.relation_basis
        n = self.ambient_rank
        u, d, _, uinv = _snf(IntMatrix.from_columns(basis, n))
        r = len(basis)
        return u, [d[i, i] for i in range(r)], uinv

    @cached_property
    def invariants(self) -> tuple:
        """``(free_rank, divisors)`` with divisors > 1 forming a chain."""
        _, diag, _ = self._smith
        return self.ambient_rank - len(diag), tuple(x for x in diag if x != 1)

    @property
    def free_rank(self) -> int:
        return self.invariants[0]

    @property
    def divisors(self) -> tuple:
        return self.invariants[1]

    @property
    def order(self):
        if self.free_rank:
            return INFINITE
        return math.prod(self.divisors)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_torsion_free(self) -> bool:
        return not self.divisors

    @property
    def exponent(self):
        if self.free_rank:
            return 0
        return self.divisors[-1] if self.divisors else 1

    @cached_property
    def free_projection(self) -> IntMatrix:
        """Integer matrix of G -> G/torsion(G) = Z^free_rank."""
        u, diag, _ = self._smith
        r = len(diag)
        return IntMatrix.from_rows([u.row(i) for i in range(r, self.ambient_rank)],
                                   self.ambient_rank)

    @cached_property
    def free_lift(self) -> IntMatrix:
        """A section Z^free_rank -> Z^ambient_rank of the free projection."""
        _, diag, uinv = self._smith
        r = len(diag)
        return IntMatrix.from_columns([uinv.col(j) for j in range(r, self.ambient_rank)],
                                      self.ambient_rank)

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.divisors]
        return " + ".join(parts) if parts else "0"

    # -- elements
    def check_element(self, x: Sequence[int]) -> tuple:
        x = tuple(int(v) for v in x)
        if len(x) != self.ambient_rank:
            raise AmbientMismatch(
                f"element of length {len(x)} in a group of ambient rank {self.ambient_rank}")
        return x

    def reduce(self, x: Sequence[int]) -> tuple:
        """Canonical representative of x modulo the relations."""
        basis, piv = self._relation_hnf
        return _reduce(self.check_element(x), basis, piv)[0]

    def is_zero(self, x: Sequence[int]) -> bool:
        return not any(self.reduce(x))

    def equal(self, x: Sequence[int], y: Sequence[int]) -> bool:
        return self.is_zero(tuple(a - b for a, b in zip(x, y)))

    def basis_vector(self, i: int) -> tuple:
        return tuple(int(i == j) for j in range(self.ambient_rank))

    def zero_element(self) -> tuple:
        return (0,) * self.ambient_rank

    def whole(self) -> Subgroup:
        return Subgroup(self, IntMatrix.identity(self.ambient_rank))

    def zero(self) -> Subgroup:
        return Subgroup(self, IntMatrix.zeros(self.ambient_rank, 0))

    def subgroup(self, generators: Iterable[Sequence[int]]) -> Subgroup:
        return Subgroup(self, IntMatrix.from_columns(
            [self.check_element(g) for g in generators], self.ambient_rank))

    def direct_sum(self, other: FGGroup) -> FGGroup:
        n, m = self.ambient_rank, other.ambient_rank
        cols = [c + (0,) * m for c in self.relations.columns()]
        cols += [(0,) * n + c for c in other.relations.columns()]
        return FGGroup(n + m, IntMatrix.from_columns(cols, n + m))


# ---------------------------------------------------------------------------
# subgroups


class Subgroup:
    """The subgroup of ``ambient`` generated by the columns of ``generators``."""

    __slots__ = ("ambient", "generators", "__dict__")

    def __init__(self, ambient: FGGroup, generators: IntMatrix):
        if generators.rows != ambient.ambient_rank:
            raise AmbientMismatch("generator length does not match the ambient rank")
        self.ambient = ambient
        self.generators = generators

    @cached_property
    def _lattice(self):
        vecs = list(self.generators.columns()) + list(self.ambient.relation_basis)
        h, _, piv = _hnf(vecs, self.ambient.ambient_rank)
        return tuple(h), piv

    @property
    def lattice_basis(self) -> tuple:
        """Hermite basis of the preimage of this subgroup in Z^n."""
        return self._lattice[0]

    @property
    def rank(self) -> int:
        return len(self.lattice_basis) - self.ambient.relation_rank

    def gens(self) -> list:
        return self.generators.columns()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient == other.ambient and self.lattice_basis == other.lattice_basis

    def __hash__(self) -> int:
        return hash((self.ambient, self.lattice_basis))

    def __repr__(self) -> str:
        return f"Subgroup({[list(g) for g in self.canonical().gens()]}, rank={self.rank})"

    def canonical(self) -> Subgroup:
        """Same subgroup with reduced generators (lattice rows outside the relations)."""
        g = self.ambient
        gens = [v for v in self.lattice_basis if not g.is_zero(v)]
        return Subgroup(g, IntMatrix.from_columns(gens, g.ambient_rank))

    def contains(self, x: Sequence[int]) -> bool:
        basis, piv = self._lattice
        return not any(_reduce(self.ambient.check_element(x), basis, piv)[0])

    def contains_subgroup(self, other: Subgroup) -> bool:
        _same_ambient(self, other)
        return all(self.contains(v) for v in other.lattice_basis)

    def coefficients(self, x: Sequence[int]):
        """Integers c with sum c_j gen_j == x modulo relations, or None."""
        gens = self.gens()
        rel = list(self.ambient.relation_basis)
        c = _solve_combination(gens + rel, self.ambient.check_element(x))
        return None if c is None else tuple(c[:len(gens)])

    @property
    def order(self):
        if self.rank:
            return INFINITE
        return relative_index(self, self.ambient.zero())

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def as_group(self):
        """Present the subgroup as an abstract group on its generators.

        Returns ``(group, inclusion)``; the group has one generator per
        generator column and the inclusion is a GroupHom into ``ambient``.
        """
        gens = self.gens()
        k = len(gens)
        rel = list(self.ambient.relation_basis)
        kernel = _right_kernel(_columns_to_rows(gens + rel, self.ambient.ambient_rank), k + len(rel))
        relators = [v[:k] for v in kernel]
        grp = FGGroup(k, IntMatrix.from_columns(relators, k))
        return grp, GroupHom(grp, self.ambient, self.generators)


def _columns_to_rows(columns: list, nrows: int) -> list:
    return [[c[i] for c in columns] for i in range(nrows)]


def _solve_combination(vectors: list, target: tuple):
    """Integer coefficients c with sum c_i vectors_i == target, or None."""
    n = len(target)
    if not vectors:
        return [] if not any(target) else None
    h, u, piv = _hnf(vectors, n, transform=True)
    rem, w = _reduce(target, h, piv)
    if any(rem):
        return None
    m = len(vectors)
    return [sum(w[k] * u[k][j] for k in range(len(h))) for j in range(m)]


def _same_ambient(*subgroups: Subgroup):
    first = subgroups[0].ambient
    for s in subgroups[1:]:
        if s.ambient != first:
            raise AmbientMismatch("subgroups of different groups")


def _lattice_subgroup(g: FGGroup, vectors: Iterable[Sequence[int]]) -> Subgroup:
    return Subgroup(g, IntMatrix.from_columns(list(vectors), g.ambient_rank)).canonical()


def is_member(x: Sequence[int], h: Subgroup) -> bool:
    return h.contains(x)


def relative_index(k: Subgroup, h: Subgroup):
    """|K : H| for H contained in K; INFINITE when the ranks differ."""
    _same_ambient(k, h)
    if not k.contains_subgroup(h):
        raise ValueError("relative_index needs H contained in K")
    hb, kb = h.lattice_basis, k.lattice_basis
    if len(hb) != len(kb):
        return INFINITE
    kpiv = k._lattice[1]
    coords = [_reduce(v, kb, kpiv)[1] for v in hb]
    return abs(determinant(IntMatrix.from_rows(coords, len(kb)))) if kb else 1


def index(g: FGGroup, h: Subgroup):
    """|G : H|, or INFINITE."""
    if h.ambient != g:
        raise AmbientMismatch("subgroup of a different group")
    return relative_index(g.whole(), h)


def subgroup_sum(h: Subgroup, k: Subgroup) -> Subgroup:
    _same_ambient(h, k)
    return _lattice_subgroup(h.ambient, h.lattice_basis + k.lattice_basis)


def intersect(h: Subgroup, k: Subgroup) -> Subgroup:
    _same_ambient(h, k)
    a, b = list(h.lattice_basis), list(k.lattice_basis)
    n = h.ambient.ambient_rank
    if not a or not b:
        return h.ambient.zero()
    stacked, u, _ = _hnf(a + b, n, transform=True)
    vecs = []
    for row in u[len(stacked):]:
        coeff = row[:len(a)]
        vecs.append(tuple(sum(c * v[i] for c, v in zip(coeff, a)) for i in range(n)))
    return _lattice_subgroup(h.ambient, vecs)


def saturation(h: Subgroup) -> Subgroup:
    """Preimage of the torsion of G/H: the largest subgroup containing H with finite index."""
    n = h.ambient.ambient_rank
    basis = [list(v) for v in h.lattice_basis]
    perp = _right_kernel(basis, n) if basis else [h.ambient.basis_vector(i) for i in range(n)]
    sat = _right_kernel([list(v) for v in perp], n) if perp else \
        [h.ambient.basis_vector(i) for i in range(n)]
    return _lattice_subgroup(h.ambient, sat)


def torsion(g: FGGroup) -> Subgroup:
    return saturation(g.zero())


# ---------------------------------------------------------------------------
# homomorphisms


class GroupHom:
    """Homomorphism given by the images (columns) of the source generators."""

    __slots__ = ("source", "target", "matrix", "__dict__")

    def __init__(self, source: FGGroup, target: FGGroup, matrix: IntMatrix, check: bool = True):
        if matrix.rows != target.ambient_rank or matrix.cols != source.ambient_rank:
            raise ValueError(
                f"matrix is {matrix.rows}x{matrix.cols}, expected "
                f"{target.ambient_rank}x{source.ambient_rank}")
        self.source, self.target, self.matrix = source, target, matrix
        if check:
            for rel in source.relations.columns():
                if not target.is_zero(matrix.apply(rel)):
                    raise IllDefinedHom(f"relator {list(rel)} is not sent to zero")

    def __call__(self, x: Sequence[int]) -> tuple:
        return self.matrix.apply(self.source.check_element(x))

    def __repr__(self) -> str:
        return f"GroupHom({self.matrix.to_rows()})"

    def compose(self, first: GroupHom) -> GroupHom:
        """self after first."""
        if first.target != self.source:
            raise AmbientMismatch("composition of non-composable maps")
        return GroupHom(first.source, self.target, self.matrix @ first.matrix, check=False)

    def solve(self, y: Sequence[int]):
        """Some x with f(x) == y modulo relations, or None (deterministic)."""
        y = self.target.check_element(y)
        cols = self.matrix.columns()
        c = _solve_combination(cols + list(self.target.relation_basis), y)
        if c is None:
            return None
        return self.source.reduce(c[:len(cols)])

    @cached_property
    def rational_matrix(self) -> IntMatrix:
        """Induced integer map source/torsion -> target/torsion."""
        return self.target.free_projection @ self.matrix @ self.source.free_lift

    def is_injective(self) -> bool:
        return kernel(self) == self.source.zero()

    def is_surjective(self) -> bool:
        return image(self) == self.target.whole()


def image(f: GroupHom) -> Subgroup:
    return _lattice_subgroup(f.target, f.matrix.columns())


def image_of(f: GroupHom, h: Subgroup) -> Subgroup:
    if h.ambient != f.source:
        raise AmbientMismatch("subgroup is not in the source")
    return _lattice_subgroup(f.target, [f.matrix.apply(v) for v in h.gens()])


def preimage(f: GroupHom, w: Subgroup) -> Subgroup:
    if w.ambient != f.target:
        raise AmbientMismatch("subgroup is not in the target")
    n = f.source.ambient_rank
    if n == 0:
        return f.source.zero()
    basis = list(w.lattice_basis)
    block = [list(f.matrix.row(i)) + [-b[i] for b in basis] for i in range(f.target.ambient_rank)]
    sols = _right_kernel(block, n + len(basis))
    return _lattice_subgroup(f.source, [v[:n] for v in sols])


def kernel(f: GroupHom) -> Subgroup:
    return preimage(f, f.target.zero())


@dataclass(frozen=True)
class QuotientMap:
    """G -> G/H with a fresh, Smith-reduced presentation of G/H.

    ``lift`` sends each generator of the quotient to a representative in G;
    it is a set-theoretic section, not a homomorphism.
    """
    group: FGGroup
    projection: GroupHom
    lift: IntMatrix


def quotient_map(g: FGGroup, h: Subgroup) -> QuotientMap:
    if h.ambient != g:
        raise AmbientMismatch("subgroup of a different group")
    n = g.ambient_rank
    basis = h.lattice_basis
    u, d, _, uinv = _snf(IntMatrix.from_columns(basis, n))
    r = len(basis)
    keep = [i for i in range(r) if d[i, i] != 1] + list(range(r, n))
    k = len(keep)
    rels = [tuple(d[i, i] * int(j == pos) for j in range(k))
            for pos, i in enumerate(keep) if i < r]
    q = FGGroup(k, IntMatrix.from_columns(rels, k))
    proj = GroupHom(g, q, IntMatrix.from_rows([u.row(i) for i in keep], n), check=False)
    lift = IntMatrix.from_columns([uinv.col(i) for i in keep], n)
    return QuotientMap(q, proj, lift)


def quotient(g: FGGroup, h: Subgroup) -> FGGroup:
    return quotient_map(g, h).group
