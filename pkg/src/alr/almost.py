"""Almost containment and the almost centralisers built on it.

Everything here is decided on rational spans: for finitely generated groups
H/(H ∩ K) is finite exactly when H and K span compatible rational spaces.
All centraliser-type outputs are saturated subgroups.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .fgab import INFINITE, AmbientMismatch, Subgroup, intersect, preimage, relative_index
from .liering import (LieModule, LieRing, NotASubring, adjoint_module, is_rationally_nilpotent, is_subring,
                      quotient_module, rational_preimage, subring)


@dataclass(frozen=True)
class AlmostVerdict:
    holds: bool
    intersection: Subgroup | None = None
    index: int | float | None = None
    counterexample: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def _rspan(h: Subgroup) -> linalg.Subspace:
    g = h.ambient
    return linalg.Subspace([g.free_projection.apply(v) for v in h.gens()], g.free_rank)


def almost_contained(h: Subgroup, k: Subgroup) -> AlmostVerdict:
    """H ⪅ K: H ∩ K has finite index in H."""
    if h.ambient != k.ambient:
        raise AmbientMismatch("subgroups of different groups")
    sk = _rspan(k)
    proj = h.ambient.free_projection
    for v in h.gens():
        if not sk.contains(proj.apply(v)):
            return AlmostVerdict(False, counterexample=tuple(v))
    both = intersect(h, k)
    return AlmostVerdict(True, both, relative_index(h, both))


def commensurable(h: Subgroup, k: Subgroup) -> bool:
    if h.ambient != k.ambient:
        raise AmbientMismatch("subgroups of different groups")
    return _rspan(h) == _rspan(k)


def uniform_bound(family: Sequence[Subgroup]):
    """Largest |H_i : H_i ∩ H_j| over the family, INFINITE if some pair is incommensurable."""
    if not family:
        raise ValueError("empty family")
    best = 1
    for a in family:
        for b in family:
            if not commensurable(a, b):
                return INFINITE
            best = max(best, relative_index(a, intersect(a, b)))
    return best


def _image_condition(mats: Sequence, source: linalg.Subspace, target: linalg.Subspace):
    """Linear conditions on x (coordinates over the mats) so that (sum x_u mats_u) maps
    every source basis vector into target.  Returns rows of the constraint matrix."""
    # a complement functional basis: vectors annihilating target
    ann = linalg.nullspace(target.basis, target.dim) if target.basis else [
        tuple(int(i == j) for j in range(target.dim)) for i in range(target.dim)]
    rows = []
    for s in source.basis:
        images = [linalg.matvec(m, s) for m in mats]
        for a in ann:
            rows.append([sum(x * y for x, y in zip(a, im)) for im in images])
    return rows


def almost_centraliser_ring(module: LieModule, b: Subgroup, a: Subgroup) -> Subgroup:
    """C̃_𝔤(B/A) = {g : g·B ⪅ A}."""
    if b.ambient != module.carrier or a.ambient != module.carrier:
        raise AmbientMismatch("subgroups must live in the module carrier")
    f = module.ring.rational_dim
    rows = _image_condition(module.rational_matrices, module.rational_span(b),
                            module.rational_span(a))
    sol = linalg.Subspace(linalg.nullspace(rows, f), f) if rows else linalg.Subspace.whole(f)
    return rational_preimage(module.ring.carrier, sol).canonical()


def almost_centraliser_module(module: LieModule, h: Subgroup, a: Subgroup) -> Subgroup:
    """C̃_V(H/A) = {v : H·v ⪅ A}."""
    if h.ambient != module.ring.carrier or a.ambient != module.carrier:
        raise AmbientMismatch("H must live in the ring and A in the module")
    proj = module.ring.carrier.free_projection
    target = module.rational_span(a)
    ann = linalg.nullspace(target.basis, target.dim) if target.basis else [
        tuple(int(i == j) for j in range(target.dim)) for i in range(target.dim)]
    rows = []
    for x in h.gens():
        m = module.rational_rho(proj.apply(x))
        for w in ann:
            rows.append([sum(w[i] * m[i][j] for i in range(len(w))) for j in range(target.dim)])
    dim = module.rational_dim
    sol = linalg.Subspace(linalg.nullspace(rows, dim), dim) if rows else linalg.Subspace.whole(dim)
    return rational_preimage(module.carrier, sol).canonical()


def almost_normaliser(ring: LieRing, h: Subgroup) -> Subgroup:
    """Ñ_𝔤(H) = {g : [g, H] ⪅ H}."""
    if h.ambient != ring.carrier:
        raise AmbientMismatch("subgroup of a different group")
    f = ring.rational_dim
    span = ring.rational_span(h)
    basis = [tuple(int(i == j) for i in range(f)) for j in range(f)]
    mats = [ring.rational_ad(u) for u in basis]
    rows = _image_condition(mats, span, span)
    sol = linalg.Subspace(linalg.nullspace(rows, f), f) if rows else linalg.Subspace.whole(f)
    return rational_preimage(ring.carrier, sol).canonical()


def almost_stabiliser(module: LieModule, w: Subgroup) -> Subgroup:
    """{g : g·W ⪅ W}."""
    return almost_centraliser_ring(module, w, w)


def almost_center(ring: LieRing) -> Subgroup:
    return almost_centraliser_ring(adjoint_module(ring), ring.whole(), ring.zero())


@dataclass(frozen=True)
class AlmostChain:
    terms: tuple
    stabilized_at: int | None

    @property
    def ranks(self) -> tuple:
        return tuple(_rspan(t).rank for t in self.terms)


def iterated_almost_centraliser(module: LieModule, n: int | None = None) -> AlmostChain:
    """C̃¹ ⊆ C̃² ⊆ ... where C̃^{i+1}/C̃^i is C̃ of the quotient module A/C̃^i.

    Stops at the first i with C̃^i = C̃^{i+1} (reported as ``stabilized_at``)
    or after n terms.  The chain always stabilizes within rank(A) + 1 steps.
    """
    g = module.ring
    limit = n if n is not None else module.carrier.free_rank + 1
    terms = [almost_centraliser_module(module, g.whole(), module.carrier.zero())]
    while True:
        q = quotient_module(module, terms[-1])
        top = almost_centraliser_module(q.module, g.whole(), q.module.carrier.zero())
        nxt = preimage(q.projection, top).canonical()
        if nxt == terms[-1]:
            return AlmostChain(tuple(terms), len(terms))
        if len(terms) >= limit:
            return AlmostChain(tuple(terms), None)
        terms.append(nxt)


def is_almost_cartan(ring: LieRing, h: Subgroup) -> bool:
    if not is_subring(ring, h):
        raise NotASubring("almost Cartan test needs a subring")
    if not is_rationally_nilpotent(subring(ring, h).ring):
        return False
    n = almost_normaliser(ring, h)
    return relative_index(n, intersect(n, h)) != INFINITE
