import itertools
import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from alr.fgab import (INFINITE, AmbientMismatch, FGGroup, GroupHom, IllDefinedHom, IntMatrix,
                      image, index, intersect, is_member, kernel, preimage, quotient_map,
                      relative_index, saturation, smith_normal_form, subgroup_sum, torsion)
from alr.oracle import FiniteGroupTable


def det(m: IntMatrix) -> int:
    return int(sympy.Matrix(m.to_rows()).det()) if m.rows else 1


def diag(m: IntMatrix) -> list:
    return [m[i, i] for i in range(min(m.rows, m.cols))]


def sympy_divisors(rows) -> list:
    d = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    return sorted((abs(int(d[i, i])) for i in range(min(d.shape))), key=lambda x: (x == 0, x))


def check_snf(m: IntMatrix):
    u, d, v = smith_normal_form(m)
    assert (u @ m @ v) == d
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    assert all(d[i, j] == 0 for i in range(d.rows) for j in range(d.cols) if i != j)
    ds = diag(d)
    assert all(x >= 0 for x in ds)
    for a, b in zip(ds, ds[1:]):
        assert (b % a == 0) if a else b == 0
    return ds


# -- smith normal form


def test_snf_diag_2_3():
    assert check_snf(IntMatrix.from_rows([[2, 0], [0, 3]])) == [1, 6]


def test_snf_identity():
    assert check_snf(IntMatrix.identity(3)) == [1, 1, 1]


def test_snf_rank_one_matrix():
    ds = check_snf(IntMatrix.from_rows([[4, 6], [6, 9]]))
    assert ds == sympy_divisors([[4, 6], [6, 9]]) == [1, 0]


def test_snf_empty_and_zero():
    assert check_snf(IntMatrix.zeros(0, 0)) == []
    assert check_snf(IntMatrix.zeros(2, 3)) == [0, 0]


matrices = st.integers(1, 8).flatmap(lambda r: st.integers(1, 8).flatmap(
    lambda c: st.lists(st.lists(st.integers(-50, 50), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


@given(matrices)
def test_snf_matches_independent_smith_form(rows):
    m = IntMatrix.from_rows(rows)
    assert check_snf(m) == sympy_divisors(rows)


# -- index


def test_index_examples():
    z = FGGroup.free(1)
    assert index(z, z.subgroup([(2,)])) == 2
    z2 = FGGroup.free(2)
    assert index(z2, z2.subgroup([(1, 0)])) == INFINITE
    assert index(z2, z2.subgroup([(2, 0), (0, 3)])) == 6


def test_index_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        index(FGGroup.free(2), FGGroup.free(3).whole())


def test_index_in_torsion_group_matches_enumeration():
    g = FGGroup.from_divisors(4, 6)
    h = g.subgroup([(2, 3)])
    table = FiniteGroupTable(g, (), 1000)
    assert index(g, h) == len(table.elements) // len(table.span(h.gens()))


def test_zero_group_operations_total():
    z = FGGroup.free(0)
    assert z.order == 1 and z.describe() == "0"
    assert index(z, z.zero()) == 1
    assert saturation(z.zero()) == z.whole()
    assert quotient_map(z, z.zero()).group.order == 1


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3))
def test_index_multiplicativity(a, b):
    g = FGGroup.free(3)
    h = g.subgroup(IntMatrix.from_rows(a).columns())
    k_gens = [IntMatrix.from_rows(a).apply(col) for col in IntMatrix.from_rows(b).columns()]
    k = g.subgroup(k_gens)
    assert h.contains_subgroup(k)
    if index(g, k) != INFINITE:
        assert index(g, k) == index(g, h) * relative_index(h, k)
        assert index(g, k) == abs(det(IntMatrix.from_rows(a))) * abs(det(IntMatrix.from_rows(b)))


# -- saturation


def test_saturation_examples():
    z = FGGroup.free(1)
    assert saturation(z.subgroup([(2,)])) == z.whole()
    z2 = FGGroup.free(2)
    assert saturation(z2.subgroup([(2, 0)])) == z2.subgroup([(1, 0)])
    assert saturation(z2.zero()) == z2.zero()


def test_saturation_by_quotient_order():
    # (1, 0) has order 2 modulo span{(2, 0)}
    z2 = FGGroup.free(2)
    q = quotient_map(z2, z2.subgroup([(2, 0)]))
    img = q.projection((1, 0))
    assert not q.group.is_zero(img) and q.group.is_zero(tuple(2 * x for x in img))


vectors3 = st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), max_size=3)


@given(vectors3)
def test_saturation_properties(gens):
    g = FGGroup.from_relations(3, [(0, 0, 6)])
    h = g.subgroup(gens)
    s = saturation(h)
    assert saturation(s) == s
    assert s.contains_subgroup(h)
    assert relative_index(s, h) != INFINITE
    assert s.rank == h.rank


# -- lattice operations


def test_lattice_examples():
    z = FGGroup.free(1)
    assert intersect(z.subgroup([(2,)]), z.subgroup([(3,)])) == z.subgroup([(6,)])
    f = GroupHom(FGGroup.free(2), z, IntMatrix.from_rows([[1, 1]]))
    assert kernel(f) == FGGroup.free(2).subgroup([(1, -1)])
    z2 = FGGroup.free(2)
    q = quotient_map(z2, z2.subgroup([(2, 0), (0, 2)])).group
    assert q.divisors == (2, 2)
    table = FiniteGroupTable(q, (), 100)
    assert len(table.elements) == 4
    assert all(table.scale(2, x) == table.reduce(q.zero_element()) for x in table.elements)


def test_subgroup_equality_is_span_equality():
    z2 = FGGroup.free(2)
    assert z2.subgroup([(1, 1), (0, 2)]) == z2.subgroup([(1, -1), (2, 0), (1, 1)])
    assert z2.subgroup([(1, 0)]) != z2.subgroup([(2, 0)])


def test_torsion_and_members():
    g = FGGroup.from_relations(3, [(2, 0, 0), (0, 0, 0)])
    t = torsion(g)
    assert t == g.subgroup([(1, 0, 0)])
    assert is_member((3, 0, 0), t) and not is_member((0, 1, 0), t)
    assert g.invariants == (2, (2,))


def test_ill_defined_hom_rejected():
    with pytest.raises(IllDefinedHom):
        GroupHom(FGGroup.from_divisors(2), FGGroup.free(1), IntMatrix.from_rows([[1]]))
    GroupHom(FGGroup.from_divisors(2), FGGroup.from_divisors(4), IntMatrix.from_rows([[2]]))


@given(vectors3, vectors3)
def test_absorption(a, b):
    g = FGGroup.from_relations(3, [(4, 0, 0)])
    h, k = g.subgroup(a), g.subgroup(b)
    assert intersect(h, subgroup_sum(h, k)) == h
    assert subgroup_sum(h, intersect(h, k)) == h


homs = st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=2, max_size=2)


@given(homs, vectors3)
def test_kernel_image_preimage(rows, wgens):
    src, tgt = FGGroup.free(3), FGGroup.from_relations(2, [(0, 5)])
    f = GroupHom(src, tgt, IntMatrix.from_rows(rows))
    im = image(f)
    assert all(im.contains(f(src.basis_vector(i))) for i in range(3))
    assert preimage(f, im) == src.whole()
    ker = kernel(f)
    assert all(tgt.is_zero(f(x)) for x in ker.gens())
    w = tgt.subgroup([v[:2] for v in wgens])
    pre = preimage(f, w)
    assert all(w.contains(f(x)) for x in pre.gens())
    assert pre.contains_subgroup(ker)


def test_quotient_orders_by_enumeration():
    for divs, gens in [((4, 6), [(2, 0)]), ((3, 3, 3), [(1, 1, 1)]), ((8,), [(4,)])]:
        g = FGGroup.from_divisors(*divs)
        h = g.subgroup(gens)
        q = quotient_map(g, h)
        table = FiniteGroupTable(g, (), 1000)
        assert q.group.order == len(table.elements) // len(table.span(gens))
        assert kernel(q.projection) == h


def test_divisor_chain_canonical():
    for divs in itertools.product([0, 1, 2, 3, 4, 6], repeat=3):
        g = FGGroup.from_divisors(*divs)
        free, ds = g.invariants
        assert free == divs.count(0)
        assert all(b % a == 0 for a, b in zip(ds, ds[1:]))
        assert math.prod(ds) == math.prod(d for d in divs if d)
