"""Named example rings and modules, and generators of test instances."""
from __future__ import annotations

import random
from typing import Sequence

from .fgab import FGGroup, Subgroup, subgroup_sum, torsion
from .liering import LieModule, LieRing, adjoint_module, direct_sum, quotient_module


def _carrier(n: int, modulus: int = 0) -> FGGroup:
    return FGGroup.from_divisors(*([modulus] * n)) if modulus else FGGroup.free(n)


def heisenberg(modulus: int = 0) -> LieRing:
    """h₃: [e1, e2] = e3."""
    return LieRing.from_sparse(_carrier(3, modulus), [(0, 1, (0, 0, 1))])


def filiform4(modulus: int = 0) -> LieRing:
    """Rank-4 ring of strictly upper-triangular type: [x, y1] = y2, [x, y2] = y3."""
    return LieRing.from_sparse(_carrier(4, modulus), [(0, 1, (0, 0, 1, 0)), (0, 2, (0, 0, 0, 1))])


def upper_triangular2(modulus: int = 0) -> LieRing:
    """Upper-triangular 2x2 matrices: [h, e] = 2e, [z, *] = 0 on (h, e, z)."""
    return LieRing.from_sparse(_carrier(3, modulus), [(0, 1, (0, 2, 0))])


def affine_line() -> LieRing:
    """⟨a, b | [a, b] = 2b⟩, not nilpotent."""
    return LieRing.from_sparse(FGGroup.free(2), [(0, 1, (0, 2))])


def sl2(modulus: int = 0) -> LieRing:
    """[e, f] = h, [h, e] = 2e, [h, f] = -2f on (e, f, h)."""
    return LieRing.from_sparse(_carrier(3, modulus),
                               [(0, 1, (0, 0, 1)), (2, 0, (2, 0, 0)), (2, 1, (0, -2, 0))])


def abelian(n: int, modulus: int = 0) -> LieRing:
    return LieRing.abelian(_carrier(n, modulus))


def heisenberg_mixed() -> LieRing:
    """h₃ on Z/9 + Z/9 + Z/3 (243 elements)."""
    return LieRing.from_sparse(FGGroup.from_divisors(9, 9, 3), [(0, 1, (0, 0, 1))])


def rotation_module() -> LieModule:
    """Z acting on Z² by [[0, 1], [-1, 0]]."""
    return LieModule.from_matrices(abelian(1), FGGroup.free(2), [[[0, 1], [-1, 0]]])


def commuting_pair_module() -> LieModule:
    """Z² acting on Z² by the commuting invertible matrices J and I + J."""
    return LieModule.from_matrices(abelian(2), FGGroup.free(2),
                                   [[[0, 1], [-1, 0]], [[1, 1], [-1, 1]]])


def nilpotent_matrix_module(n: int = 2) -> LieModule:
    """Z acting on Z^n by a single nilpotent Jordan block (1 above the diagonal)."""
    mat = [[int(j == i + 1) for j in range(n)] for i in range(n)]
    return LieModule.from_matrices(abelian(1), FGGroup.free(n), [mat])


def scalar_module(k: int = 2) -> LieModule:
    """Z acting on Z by multiplication by k."""
    return LieModule.from_matrices(abelian(1), FGGroup.free(1), [[[k]]])


def trivial_module(ring: LieRing, carrier: FGGroup) -> LieModule:
    return LieModule.trivial(ring, carrier)


def generated_submodule(module: LieModule, vectors: Sequence[Sequence[int]]) -> Subgroup:
    """Smallest submodule containing the given vectors."""
    g = module.ring.carrier
    w = module.carrier.subgroup(vectors).canonical()
    while True:
        more = [module.act(g.basis_vector(i), v) for i in range(g.ambient_rank) for v in w.gens()]
        nxt = subgroup_sum(w, module.carrier.subgroup(more)).canonical() if more else w
        if nxt == w:
            return w
        w = nxt


def _poly(mat: list, coeffs: Sequence[int]) -> list:
    n = len(mat)
    out = [[0] * n for _ in range(n)]
    power = [[int(i == j) for j in range(n)] for i in range(n)]
    for c in coeffs:
        out = [[o + c * p for o, p in zip(ro, rp)] for ro, rp in zip(out, power)]
        power = [[sum(power[i][k] * mat[k][j] for k in range(n)) for j in range(n)]
                 for i in range(n)]
    return out


def commuting_action_module(rng: random.Random, k: int, m: int) -> LieModule:
    """Z^k acting on Z^m by integer polynomials in one random matrix."""
    base = [[rng.randint(-2, 2) for _ in range(m)] for _ in range(m)]
    mats = [_poly(base, [rng.randint(-1, 1) for _ in range(3)]) for _ in range(k)]
    return LieModule.from_matrices(abelian(k), FGGroup.free(m), mats)


def nilpotent_rings() -> list:
    return [("abelian1", abelian(1)), ("abelian2", abelian(2)), ("heisenberg", heisenberg()),
            ("filiform4", filiform4())]


def all_rings() -> list:
    return nilpotent_rings() + [("upper_triangular2", upper_triangular2()),
                                ("affine_line", affine_line()), ("sl2", sl2())]


def finite_rings() -> list:
    """Rings on finite carriers with at most 3^5 elements."""
    return [
        ("heisenberg_mod3", heisenberg(3)),
        ("heisenberg_mod2", heisenberg(2)),
        ("filiform4_mod3", filiform4(3)),
        ("abelian2_mod2", abelian(2, 2)),
        ("abelian2_mod3", abelian(2, 3)),
        ("sl2_mod3", sl2(3)),
        ("upper_triangular2_mod3", upper_triangular2(3)),
        ("heisenberg_mixed", heisenberg_mixed()),
    ]


def catalog_modules() -> list:
    """Named modules over infinite rings, used by the nilpotent and sequence suites."""
    h = heisenberg()
    f = filiform4()
    adj_h = adjoint_module(h)
    center = h.carrier.subgroup([(0, 0, 1)])
    qh = quotient_module(adj_h, center).module
    out = [
        ("rotation", rotation_module()),
        ("commuting_pair", commuting_pair_module()),
        ("nilpotent_matrix2", nilpotent_matrix_module(2)),
        ("nilpotent_matrix3", nilpotent_matrix_module(3)),
        ("scalar2", scalar_module(2)),
        ("heisenberg_adjoint", adj_h),
        ("heisenberg_adjoint_mod_center", qh),
        ("filiform4_adjoint", adjoint_module(f)),
        ("heisenberg_trivial_Z2", LieModule.trivial(h, FGGroup.free(2))),
        ("rotation_plus_trivial", direct_sum(rotation_module(),
                                             LieModule.trivial(abelian(1), FGGroup.free(1)))),
        ("rotation_squared", direct_sum(rotation_module(), rotation_module())),
        ("heisenberg_adjoint_plus_trivial",
         direct_sum(adj_h, LieModule.trivial(h, FGGroup.free(1)))),
        ("nilpotent_with_torsion", LieModule.from_matrices(
            abelian(1), FGGroup.from_relations(3, [(0, 0, 4)]), [[[0, 1, 0], [0, 0, 0], [0, 0, 1]]])),
        ("affine_adjoint", adjoint_module(affine_line())),
        ("sl2_adjoint", adjoint_module(sl2())),
    ]
    return out


def finite_modules() -> list:
    """(ring name, module) pairs with finite module carriers of order at most 10^3."""
    out = []
    for name, ring in all_rings():
        for divs in [(2,), (6,), (2, 4), (3, 3, 3)]:
            out.append((name, LieModule.trivial(ring, FGGroup.from_divisors(*divs))))
        adj = adjoint_module(ring)
        for p in (2, 3):
            g = ring.carrier
            sub = g.subgroup([tuple(p * x for x in g.basis_vector(i)) for i in range(g.ambient_rank)])
            out.append((name, quotient_module(adj, sub).module))
    for name, module in catalog_modules():
        a = module.carrier
        sub = a.subgroup([tuple(5 * x for x in a.basis_vector(i)) for i in range(a.ambient_rank)])
        if module.is_submodule(sub):
            q = quotient_module(module, sub).module
            if q.carrier.order <= 1000:
                out.append((name, q))
    for name, ring in finite_rings():
        out.append((name, adjoint_module(ring)))
    return out


def six_term_instances(seed: int = 0, random_count: int = 24) -> list:
    """(name, module, submodule) triples; submodules are invariant subgroups."""
    out = []
    for name, module in catalog_modules():
        a = module.carrier
        n = a.ambient_rank
        cands = [[]] + [[a.basis_vector(i)] for i in range(n)]
        cands.append([tuple(2 * x for x in a.basis_vector(i)) for i in range(n)])
        seen = set()
        for gens in cands:
            w = generated_submodule(module, gens) if gens else a.zero()
            if w in seen:
                continue
            seen.add(w)
            out.append((f"{name}/{len(seen)}", module, w))
    named = dict(catalog_modules())
    tm = named["nilpotent_with_torsion"]
    out.append(("nilpotent_with_torsion/torsion", tm, torsion(tm.carrier)))
    rng = random.Random(seed)
    for k in range(random_count):
        m = commuting_action_module(rng, rng.randint(1, 2), rng.randint(2, 3))
        v = [rng.randint(-2, 2) for _ in range(m.dim)]
        if not any(v):
            v[0] = 1
        out.append((f"random{k}", m, generated_submodule(m, [tuple(v)])))
    return out


def nested_submodules(module: LieModule) -> list:
    """Pairs V ≤ U of submodules generated by basis vectors and their doubles."""
    a = module.carrier
    subs = [a.zero(), a.whole()]
    for i in range(a.ambient_rank):
        subs.append(generated_submodule(module, [a.basis_vector(i)]))
        subs.append(generated_submodule(module, [tuple(2 * x for x in a.basis_vector(i))]))
    uniq = []
    for s in subs:
        if s not in uniq:
            uniq.append(s)
    return [(u, v) for u in uniq for v in uniq if u.contains_subgroup(v)]
