import random

import pytest

from alr import catalog, linalg
from alr.cohom import h0, h1, inner_class
from alr.fgab import FGGroup, GroupHom, IntMatrix, torsion
from alr.liering import LieModule, adjoint_module, direct_sum, is_ideal, quotient_ring
from alr.phom import class_add, class_of, class_zero, compose_after, make
from alr.seq import (HypothesisViolated, InvalidSequence, ModuleMap, NotEquivariant, NotInH0,
                     ShortExactSeq, cartan_supplement, connecting_delta1, delta1_choice_difference,
                     delta1_partial, finite_index_isogeny, finite_quotient_embedding, five_term,
                     induced_maps, inf_map, quo_almost_central, res_image_central, res_injective,
                     res_map, six_term, verify_exactness)

Z, Z2 = FGGroup.free(1), FGGroup.free(2)


def shift_module():
    return LieModule.from_matrices(catalog.abelian(1), Z2, [[[0, 1], [0, 0]]])


def shift_sequence():
    m = shift_module()
    return ShortExactSeq.from_submodule(m, Z2.subgroup([(1, 0)]))


def test_module_map_equivariance():
    m = shift_module()
    with pytest.raises(NotEquivariant):
        ModuleMap(m, m, GroupHom(Z2, Z2, IntMatrix.from_rows([[0, 1], [1, 0]])))


def test_invalid_sequences_rejected():
    m = LieModule.trivial(catalog.abelian(1), Z)
    double = ModuleMap(m, m, GroupHom(Z, Z, IntMatrix.from_rows([[2]])))
    ident = ModuleMap(m, m, GroupHom(Z, Z, IntMatrix.identity(1)))
    with pytest.raises(InvalidSequence):
        ShortExactSeq(ident, double)


def test_induced_maps_on_slope_classes():
    triv = LieModule.trivial(catalog.abelian(1), Z)
    s = ShortExactSeq.from_submodule(triv, Z.subgroup([(2,)]))
    maps = induced_maps(s)
    c = class_of(make(Z.whole(), [(1,)], s.sub.carrier))
    img = maps.i1(c)
    assert img.matrix[0][0] == 2            # slope 1 in 2Z is slope 2 in Z: a bijection on Q
    assert s.quo.carrier.order == 2
    assert maps.p1(img).shape == (0, 1)


def test_identity_induces_identities():
    m = adjoint_module(catalog.heisenberg())
    s = ShortExactSeq.from_submodule(m, m.carrier.whole())
    maps = induced_maps(s)
    for c in six_term(s).der_sub.basis:
        assert maps.i1(c).flat() == c.flat()
    assert maps.i0((1, 2, 3)) == (1, 2, 3)


def test_section_splits_p1():
    a1 = catalog.rotation_module()
    a2 = LieModule.trivial(catalog.abelian(1), Z)
    mid = direct_sum(a1, a2)
    s = ShortExactSeq.from_submodule(mid, mid.carrier.subgroup([(1, 0, 0), (0, 1, 0)]))
    sec = GroupHom(s.quo.carrier, mid.carrier,
                   IntMatrix.from_columns([s.p.hom.solve(s.quo.carrier.basis_vector(k))
                                           for k in range(s.quo.dim)], mid.dim))
    assert ModuleMap(s.quo, mid, sec)
    for c in six_term(s).der_quo.basis:
        assert compose_after(s.p.hom, compose_after(sec, c)) == c


def test_delta1_on_shift_module():
    s = shift_sequence()
    a2 = s.p.hom((0, 1))
    c = connecting_delta1(s, a2)
    f, a = delta1_partial(s, a2)
    assert c.matrix == ((1,),)
    assert not c.is_zero()
    # d((0,1))(g) = (g, 0) pulls back to g -> g
    assert f(f.domain.gens()[0]) == tuple(f.domain.gens()[0])


def test_delta1_trivial_cases():
    triv = LieModule.trivial(catalog.heisenberg(), FGGroup.free(2))
    s = ShortExactSeq.from_submodule(triv, triv.carrier.subgroup([(1, 0)]))
    for g in h0(s.quo)[0].gens():
        assert connecting_delta1(s, g).is_zero()
    s = shift_sequence()
    assert connecting_delta1(s, s.quo.carrier.zero_element()).is_zero()


def test_delta1_requires_h0():
    m = catalog.rotation_module()
    s = ShortExactSeq.from_submodule(m, m.carrier.subgroup([(2, 0), (0, 2)]))
    assert h0(s.quo)[0] == s.quo.carrier.whole()     # finite quotient
    rot_sum = direct_sum(catalog.rotation_module(), catalog.rotation_module())
    s = ShortExactSeq.from_submodule(rot_sum, rot_sum.carrier.subgroup([(1, 0, 0, 0),
                                                                         (0, 1, 0, 0)]))
    with pytest.raises(NotInH0):
        connecting_delta1(s, s.p.hom((0, 0, 1, 0)))


def test_six_term_examples():
    t = six_term(shift_sequence())
    report = verify_exactness(t)
    assert report.ok and len(report.junctions) == 5
    ker = next(j for j in report.junctions if j.name == "H0(A'')")
    assert ker.witness["ker_delta1"] == [] and ker.witness["im_p0"] == []
    split = direct_sum(catalog.rotation_module(), LieModule.trivial(catalog.abelian(1), Z))
    s = ShortExactSeq.from_submodule(split, split.carrier.subgroup([(1, 0, 0), (0, 1, 0)]))
    t = six_term(s)
    assert verify_exactness(t).ok
    assert all(c.is_zero() for _, c in t.delta_images)
    adj = adjoint_module(catalog.heisenberg())
    t = six_term(ShortExactSeq.from_submodule(adj, adj.carrier.subgroup([(0, 0, 1)])))
    assert verify_exactness(t).ok


def preimage_choices(s, a2, rng, count):
    base = s.p.hom.solve(a2)
    out = []
    for _ in range(count):
        b = [rng.randint(-20, 20) for _ in range(s.sub.dim)]
        out.append(tuple(x + y for x, y in zip(base, s.i.hom(b))))
    return base, out


@pytest.mark.parametrize("name,module,w", catalog.six_term_instances(seed=1, random_count=6))
def test_six_term_catalog(name, module, w):
    s = ShortExactSeq.from_submodule(module, w)
    t = six_term(s)
    assert verify_exactness(t).ok, name
    rng = random.Random(name)
    for g, c in t.delta_images:
        base, others = preimage_choices(s, g, rng, 3)
        for a in others:
            assert delta1_choice_difference(s, g, base, a)


def test_delta1_additive_and_equivariant():
    m = catalog.nilpotent_matrix_module(3)
    s = ShortExactSeq.from_submodule(m, m.carrier.subgroup([(1, 0, 0)]))
    gens = h0(s.quo)[0].gens()
    lattice = [inner_class(s.sub, s.sub.carrier.basis_vector(k)).flat() for k in range(s.sub.dim)]
    for x in gens:
        for y in gens:
            xy = tuple(a + b for a, b in zip(x, y))
            lhs = connecting_delta1(s, xy)
            rhs = class_add(connecting_delta1(s, x), connecting_delta1(s, y))
            diff = [a - b for a, b in zip(lhs.flat(), rhs.flat())]
            assert linalg.lattice_contains(lattice, diff)
    g = m.ring.carrier.basis_vector(0)
    for x in gens:
        gx = s.quo.act(g, x)
        assert h0(s.quo)[0].contains(gx)


def test_inf_res_examples():
    rot = catalog.rotation_module()
    h = rot.ring.carrier.subgroup([(2,)])
    res = res_map(rot, h)
    for c in six_term(ShortExactSeq.from_submodule(rot, rot.carrier.whole())).der_mid.basis:
        assert [[2 * x for x in row] for row in c.matrix] == [list(r) for r in res(c).matrix]
    hs = catalog.heisenberg()
    ideal = hs.carrier.subgroup([(0, 0, 1)])
    qr = quotient_ring(hs, ideal)
    aq = LieModule.trivial(qr.ring, Z)
    inf = inf_map(hs, ideal, aq)
    cq = class_of(make(qr.ring.whole(), [(1,)] * qr.ring.rank, Z))
    big = inf(cq)
    back = res_map(inf.module, ideal)(big)
    assert back.is_zero()
    assert inf(class_zero(qr.ring.carrier, Z)).is_zero()


def test_five_term_examples():
    rot = catalog.rotation_module()
    g = rot.ring
    for h in (g.whole(), g.zero(), g.carrier.subgroup([(2,)])):
        assert five_term(rot, h).ok
    rep = five_term(rot, g.carrier.subgroup([(2,)]))
    assert rep.dims["im_inf"] == rep.dims["t"]
    rep = five_term(rot, g.zero())
    assert rep.dims["ker_res"] == rep.dims["r"]
    with pytest.raises(HypothesisViolated):
        five_term(adjoint_module(catalog.heisenberg()), catalog.heisenberg().whole())


def test_consequence_checks():
    for name, module in catalog.catalog_modules():
        a = module.carrier
        twice = a.subgroup([tuple(2 * x for x in a.basis_vector(k)) for k in range(a.ambient_rank)])
        res = finite_index_isogeny(module, twice)
        assert res.verdict == "PASS", name
        assert res.details["h1_sub"]["r"] == res.details["h1"]["r"]
    tm = dict(catalog.catalog_modules())["nilpotent_with_torsion"]
    res = finite_quotient_embedding(tm, torsion(tm.carrier))
    assert res.verdict == "PASS" and res.details["p1_injective"]
    assert finite_quotient_embedding(tm, tm.carrier.whole()).verdict == "HYPOTHESIS_VIOLATED"
    hs = catalog.heisenberg()
    i = hs.carrier.subgroup([(1, 0, 0), (0, 0, 1)])
    assert is_ideal(hs, i)
    assert cartan_supplement(hs, i, i).verdict == "PASS"


def test_restriction_checks():
    for name, module in catalog.catalog_modules():
        g = module.ring.carrier
        for k in (2, 3):
            h = g.subgroup([tuple(k * x for x in g.basis_vector(i)) for i in range(g.ambient_rank)])
            assert res_injective(module, h).verdict == "PASS", name
        assert res_image_central(module, module.ring.whole()).verdict == "PASS", name
    rot = catalog.rotation_module()
    assert res_injective(rot, rot.ring.zero()).verdict == "HYPOTHESIS_VIOLATED"


def test_quo_almost_central():
    triv = LieModule.trivial(catalog.heisenberg(), Z2)
    h = triv.ring.carrier.subgroup([(0, 0, 1)])
    res = quo_almost_central(triv, h)
    assert res.verdict == "PASS"
    assert h1(triv).rational_dim == res.details["h1_quotient"]["rational_dim"]
    adj = adjoint_module(catalog.heisenberg())
    assert quo_almost_central(adj, adj.ring.whole()).verdict == "HYPOTHESIS_VIOLATED"
