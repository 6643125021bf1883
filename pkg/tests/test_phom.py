from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alr import catalog
from alr.almost import almost_centraliser_module
from alr.fgab import FGGroup, IntMatrix
from alr.liering import LieModule, adjoint_module
from alr.phom import (IllDefined, InfiniteIndexDomain, ShapeMismatch, add,
                      class_add, class_from_matrix, class_neg, class_of, class_scale,
                      class_zero, differential, equivalent, make, negate, realize, subtract,
                      zero_map)

Z, Z2 = FGGroup.free(1), FGGroup.free(2)


def f23():
    return make(Z.subgroup([(2,)]), [(3,)], Z)


def f34():
    return make(Z.subgroup([(3,)]), [(4,)], Z)


def test_make_examples():
    assert f23()((4,)) == (6,)
    with pytest.raises(InfiniteIndexDomain):
        make(Z2.subgroup([(1, 0)]), [(1,)], Z)
    z4, z3 = FGGroup.from_divisors(4), FGGroup.from_divisors(3)
    with pytest.raises(IllDefined) as exc:
        make(z4.whole(), [(1,)], z3)
    assert exc.value.relation in ((4,), (-4,))


def test_make_accepts_matrix_values():
    f = make(Z2.whole(), IntMatrix.from_rows([[1, 2]]), Z)
    assert f((1, 1)) == (3,)


def test_add_examples():
    s = add(f23(), f34())
    assert s.domain == Z.subgroup([(6,)])
    assert s((6,)) == (9 + 8,) == (17,)
    f = f23()
    z = add(f, negate(f))
    assert z.domain == f.domain and z.domain != Z.whole()
    assert all(v == (0,) for v in z.values)
    assert class_of(z).is_zero()
    assert add(f, zero_map(Z, Z)).domain == f.domain
    assert all(add(f, zero_map(Z, Z))(x) == f(x) for x in f.domain.gens())


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        add(f23(), zero_map(Z2, Z))


def test_equivalence_examples():
    assert not equivalent(f23(), f34())
    assert subtract(f23(), f34())((6,)) == (1,)
    f = f23()
    assert equivalent(f, f.restrict(Z.subgroup([(20,)])))
    t = FGGroup.from_divisors(6)
    a = make(Z2.whole(), [(1,), (2,)], t)
    b = make(Z2.subgroup([(2, 0), (0, 1)]), [(5,), (3,)], t)
    assert equivalent(a, b)


def test_class_examples():
    assert class_of(f23()).matrix == ((Fraction(3, 2),),)
    c = class_of(f23())
    assert class_add(c, class_neg(c)) == class_zero(Z, Z)
    t = FGGroup.from_divisors(6)
    assert class_of(make(Z.whole(), [(1,)], t)) == class_zero(Z, t)
    assert class_zero(Z, t).shape == (0, 1)


def test_differential_examples():
    triv = LieModule.trivial(catalog.abelian(2), Z2)
    assert all(v == (0, 0) for v in differential(triv, (3, 4)).values)
    m = LieModule.from_matrices(catalog.abelian(1), Z2, [[[0, 1], [0, 0]]])
    d = differential(m, (0, 1))
    assert d((5,)) == (5, 0)
    adj = adjoint_module(catalog.heisenberg())
    d = differential(adj, (1, 0, 0))
    assert d((0, 1, 0)) == (0, 0, -1)   # e2 . e1 = [e2, e1] = -e3
    assert d((0, 0, 1)) == (0, 0, 0)
    assert adj.act((0, 1, 0), (1, 0, 0)) == (0, 0, -1)


@pytest.mark.parametrize("name,module", catalog.catalog_modules())
def test_kernel_of_d_is_h0(name, module):
    a = module.carrier
    h0 = almost_centraliser_module(module, module.ring.whole(), a.zero())
    for k in range(a.ambient_rank):
        x = a.basis_vector(k)
        assert (differential(module, x).image().rank == 0) == h0.contains(x)
    for x in h0.gens():
        assert differential(module, x).image().rank == 0


# -- randomized partial homomorphisms


def phom_strategy(rank_g: int, rank_a: int, torsion: int):
    src = FGGroup.free(rank_g)
    tgt = FGGroup.from_relations(rank_a, [[torsion] + [0] * (rank_a - 1)]) if torsion else \
        FGGroup.free(rank_a)
    scales = st.lists(st.integers(1, 4), min_size=rank_g, max_size=rank_g)
    vals = st.lists(st.lists(st.integers(-5, 5), min_size=rank_a, max_size=rank_a),
                    min_size=rank_g, max_size=rank_g)
    shear = st.integers(-2, 2)

    def build(args):
        sc, vs, sh = args
        gens = []
        for i, s in enumerate(sc):
            v = [0] * rank_g
            v[i] = s
            if i + 1 < rank_g:
                v[i + 1] = sh
            gens.append(tuple(v))
        return make(src.subgroup(gens), [tuple(v) for v in vs], tgt)

    return st.tuples(scales, vals, shear).map(build)


triples = st.tuples(st.integers(1, 3), st.integers(1, 3), st.sampled_from([0, 0, 4])).flatmap(
    lambda s: st.tuples(phom_strategy(*s), phom_strategy(*s), phom_strategy(*s)))


@given(triples)
def test_class_group_laws(fs):
    f, g, h = fs
    cf, cg, ch = class_of(f), class_of(g), class_of(h)
    zero = class_zero(f.source, f.target)
    assert class_add(class_add(cf, cg), ch) == class_add(cf, class_add(cg, ch))
    assert class_add(cf, cg) == class_add(cg, cf)
    assert class_add(cf, zero) == cf
    assert class_add(cf, class_neg(cf)) == zero
    assert class_of(add(f, g)) == class_add(cf, cg)
    assert class_of(negate(f)) == class_neg(cf)
    assert equivalent(f, g) == (cf == cg)
    assert equivalent(f, f) and equivalent(g, f) == equivalent(f, g)
    if equivalent(f, g) and equivalent(g, h):
        assert equivalent(f, h)
    assert class_of(f.restrict(f.domain.ambient.subgroup(
        [tuple(3 * x for x in v) for v in f.domain.gens()]))) == cf


@given(st.lists(st.lists(st.builds(Fraction, st.integers(-30, 30), st.integers(1, 6)),
                         min_size=3, max_size=3), min_size=2, max_size=2))
def test_realize_any_rational_matrix(rows):
    src, tgt = FGGroup.free(3), FGGroup.from_relations(3, [(0, 0, 5)])
    c = class_from_matrix(src, tgt, rows)
    f = realize(c)
    assert class_of(f) == c
    assert class_of(realize(class_scale(2, c))) == class_add(c, c)
