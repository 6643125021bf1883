"""Partial homomorphisms and their classes modulo finite image.

A partial homomorphism is defined on a finite-index subgroup of its source.
Two of them are equivalent when their difference has finite image on the
common domain.  For finitely generated groups that happens exactly when they
induce the same rational map source⊗Q -> (target/torsion)⊗Q, so a class is
stored as that rational matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .fgab import (INFINITE, AmbientMismatch, FGGroup, IntMatrix, Subgroup, index, intersect,
                   torsion)


class InfiniteIndexDomain(ValueError):
    pass


class IllDefined(ValueError):
    def __init__(self, message: str, relation: tuple = ()):
        super().__init__(message)
        self.relation = relation


class ShapeMismatch(ValueError):
    pass


class PartialHom:
    """A homomorphism on ``domain`` (finite index in ``source``) into ``target``.

    ``values[j]`` is the image of the j-th generator of ``domain``.
    """

    __slots__ = ("source", "target", "domain", "values", "domain_index")

    def __init__(self, domain: Subgroup, values: Sequence[Sequence[int]], target: FGGroup,
                 check: bool = True):
        self.source = domain.ambient
        self.target = target
        self.domain = domain
        self.values = tuple(target.check_element(v) for v in values)
        if len(self.values) != domain.generators.cols:
            raise ShapeMismatch("need one value per domain generator")
        self.domain_index = index(self.source, domain)
        if self.domain_index == INFINITE:
            raise InfiniteIndexDomain("domain does not have finite index in the source")
        if check:
            grp, _ = domain.as_group()
            for rel in grp.relations.columns():
                img = self._combine(rel)
                if not target.is_zero(img):
                    raise IllDefined(
                        f"relation {list(rel)} among domain generators maps to {list(img)}",
                        tuple(rel))

    def __repr__(self) -> str:
        return (f"PartialHom(domain={[list(g) for g in self.domain.gens()]}, "
                f"values={[list(v) for v in self.values]})")

    def _combine(self, coeffs: Sequence[int]) -> tuple:
        out = [0] * self.target.ambient_rank
        for c, v in zip(coeffs, self.values):
            if c:
                for k, x in enumerate(v):
                    out[k] += c * x
        return tuple(out)

    def __call__(self, x: Sequence[int]) -> tuple:
        c = self.domain.coefficients(x)
        if c is None:
            raise ValueError(f"{list(x)} is not in the domain")
        return self.target.reduce(self._combine(c))

    def image(self) -> Subgroup:
        return self.target.subgroup(self.values).canonical()

    def restrict(self, sub: Subgroup) -> PartialHom:
        if not self.domain.contains_subgroup(sub):
            raise ValueError("restriction to a subgroup outside the domain")
        return PartialHom(sub, [self(x) for x in sub.gens()], self.target)


def make(domain: Subgroup, values, target: FGGroup) -> PartialHom:
    """Validated partial homomorphism; ``values`` is a list of target vectors or an
    IntMatrix whose columns are the images of the domain generators."""
    if isinstance(values, IntMatrix):
        values = values.columns()
    return PartialHom(domain, values, target)


def zero_map(source: FGGroup, target: FGGroup) -> PartialHom:
    w = source.whole()
    return PartialHom(w, [target.zero_element()] * source.ambient_rank, target)


def total(source: FGGroup, target: FGGroup, matrix: IntMatrix) -> PartialHom:
    """An ordinary homomorphism viewed as a partial one."""
    return PartialHom(source.whole(), matrix.columns(), target)


def _check_shapes(f: PartialHom, f1: PartialHom):
    if f.source != f1.source or f.target != f1.target:
        raise ShapeMismatch("partial homomorphisms between different groups")


def add(f: PartialHom, f1: PartialHom) -> PartialHom:
    _check_shapes(f, f1)
    dom = intersect(f.domain, f1.domain).canonical()
    vals = [tuple(a + b for a, b in zip(f(x), f1(x))) for x in dom.gens()]
    return PartialHom(dom, vals, f.target, check=False)


def negate(f: PartialHom) -> PartialHom:
    return PartialHom(f.domain, [tuple(-a for a in v) for v in f.values], f.target, check=False)


def subtract(f: PartialHom, f1: PartialHom) -> PartialHom:
    return add(f, negate(f1))


def equivalent(f: PartialHom, f1: PartialHom) -> bool:
    """The difference has finite image on the common domain."""
    return subtract(f, f1).image().rank == 0


# ---------------------------------------------------------------------------
# classes


@dataclass(frozen=True)
class PHomClass:
    """Rational matrix Q with proj(f(x)) = Q proj(x) for x in the domain;
    rows index the free part of the target, columns that of the source."""
    source: FGGroup
    target: FGGroup
    matrix: tuple

    @property
    def shape(self) -> tuple:
        return self.target.free_rank, self.source.free_rank

    def is_zero(self) -> bool:
        return not any(x for row in self.matrix for x in row)

    def flat(self) -> tuple:
        return tuple(x for row in self.matrix for x in row)

    def __repr__(self) -> str:
        rows = [[str(x) for x in row] for row in self.matrix]
        return f"PHomClass({rows})"


def _as_class(source: FGGroup, target: FGGroup, rows) -> PHomClass:
    return PHomClass(source, target, tuple(tuple(Fraction(x) for x in r) for r in rows))


def class_from_matrix(source: FGGroup, target: FGGroup, rows) -> PHomClass:
    rows = [list(r) for r in rows]
    if len(rows) != target.free_rank or any(len(r) != source.free_rank for r in rows):
        raise ShapeMismatch(f"class matrix must be {target.free_rank}x{source.free_rank}")
    return _as_class(source, target, rows)


def class_from_flat(source: FGGroup, target: FGGroup, flat: Sequence) -> PHomClass:
    fa, fg = target.free_rank, source.free_rank
    return _as_class(source, target, [flat[i * fg:(i + 1) * fg] for i in range(fa)])


def class_of(f: PartialHom) -> PHomClass:
    g, a = f.source, f.target
    fg = g.free_rank
    xs = [g.free_projection.apply(x) for x in f.domain.gens()]
    ys = [a.free_projection.apply(y) for y in f.values]
    rows = []
    for i in range(a.free_rank):
        q = linalg.solve(xs, [y[i] for y in ys], fg)
        if q is None:  # cannot happen for a valid partial homomorphism
            raise IllDefined("values are not rationally consistent")
        rows.append(q)
    return _as_class(g, a, rows)


def class_zero(source: FGGroup, target: FGGroup) -> PHomClass:
    return _as_class(source, target, [[0] * source.free_rank for _ in range(target.free_rank)])


def class_add(c: PHomClass, c1: PHomClass) -> PHomClass:
    if (c.source, c.target) != (c1.source, c1.target):
        raise ShapeMismatch("classes between different groups")
    return _as_class(c.source, c.target,
                     [[x + y for x, y in zip(r, r1)] for r, r1 in zip(c.matrix, c1.matrix)])


def class_neg(c: PHomClass) -> PHomClass:
    return _as_class(c.source, c.target, [[-x for x in r] for r in c.matrix])


def class_scale(k, c: PHomClass) -> PHomClass:
    return _as_class(c.source, c.target, [[k * x for x in r] for r in c.matrix])


def realize(c: PHomClass) -> PartialHom:
    """A partial homomorphism of class c on N·(free part) + torsion, N clearing denominators."""
    g, a = c.source, c.target
    n = linalg.common_denominator(c.flat())
    lifts = g.free_lift.columns()
    gens, vals = [], []
    for u, l in enumerate(lifts):
        gens.append(tuple(n * x for x in l))
        col = [int(n * c.matrix[i][u]) for i in range(a.free_rank)]
        vals.append(a.free_lift.apply(col) if col else a.zero_element())
    for t in torsion(g).gens():
        gens.append(t)
        vals.append(a.zero_element())
    dom = Subgroup(g, IntMatrix.from_columns(gens, g.ambient_rank))
    return PartialHom(dom, vals, a)


def evaluate(c: PHomClass, x: Sequence) -> tuple:
    """Q · proj(x), a rational vector in the free part of the target."""
    v = c.source.free_projection.apply(x)
    return linalg.matvec(c.matrix, v)


def compose_after(hom, c: PHomClass) -> PHomClass:
    """Class of hom∘f for a GroupHom out of the target."""
    if hom.source != c.target:
        raise AmbientMismatch("map does not start at the class target")
    return _as_class(c.source, hom.target,
                     _product(hom.rational_matrix.to_rows(), c.matrix, c.source.free_rank))


def precompose(c: PHomClass, hom) -> PHomClass:
    """Class of f∘hom for a GroupHom into the source."""
    if hom.target != c.source:
        raise AmbientMismatch("map does not end at the class source")
    return _as_class(hom.source, c.target,
                     _product(c.matrix, hom.rational_matrix.to_rows(), hom.source.free_rank))


def _product(a, b, ncols: int) -> list:
    return [[sum(row[k] * b[k][j] for k in range(len(row))) for j in range(ncols)] for row in a]


def differential(module, a: Sequence[int]) -> PartialHom:
    """d(a): g -> g·a on the whole ring."""
    a = module.carrier.check_element(a)
    g = module.ring.carrier
    vals = [module.act(g.basis_vector(i), a) for i in range(g.ambient_rank)]
    return PartialHom(g.whole(), vals, module.carrier, check=False)
