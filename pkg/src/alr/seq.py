"""Short exact sequences of modules and the exact sequences they induce.

H̃⁰ nodes are subgroups and are compared integrally.  H̃¹ nodes are
Der / Λ with Der a rational space of classes and Λ the lattice of inner
classes; exactness there is checked on rational spans (Der ⊇ Λ⊗Q), except
where a statement is genuinely integral (the kernel of δ₁).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .almost import (almost_centraliser_module, almost_centraliser_ring, almost_center,
                     almost_normaliser, is_almost_cartan)
from .cohom import (DerivationBasis, act_on_class, derivation_domain, derivation_space, h0, h1,
                    inner_class)
from .fgab import (INFINITE, GroupHom, Subgroup, image, image_of, index, intersect,
                   kernel, subgroup_sum, torsion)
from .liering import (LieModule, LieRing, NotAnIdeal, QuotientRing, is_ideal, is_subring,
                      quotient_module, quotient_ring, restrict_module, submodule, subring)
from .phom import (PartialHom, PHomClass, class_of, compose_after,
                   differential, precompose, realize)


class NotEquivariant(ValueError):
    pass


class InvalidSequence(ValueError):
    pass


class NotInH0(ValueError):
    pass


class NoPreimage(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


@dataclass(frozen=True)
class ModuleMap:
    source: LieModule
    target: LieModule
    hom: GroupHom

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise NotEquivariant("modules over different rings")
        if self.hom.source != self.source.carrier or self.hom.target != self.target.carrier:
            raise NotEquivariant("homomorphism does not match the module carriers")
        g = self.source.ring.carrier
        for i in range(g.ambient_rank):
            e = g.basis_vector(i)
            for k in range(self.source.dim):
                a = self.source.carrier.basis_vector(k)
                lhs = self.hom(self.source.act(e, a))
                rhs = self.target.act(e, self.hom(a))
                if not self.target.carrier.equal(lhs, rhs):
                    raise NotEquivariant(f"fails at ring generator {i}, module generator {k}")


@dataclass(frozen=True)
class ShortExactSeq:
    i: ModuleMap
    p: ModuleMap

    def __post_init__(self):
        if self.i.target is not self.p.source and self.i.target.carrier != self.p.source.carrier:
            raise InvalidSequence("i and p are not composable")
        if not self.i.hom.is_injective():
            raise InvalidSequence("i is not injective")
        if not self.p.hom.is_surjective():
            raise InvalidSequence("p is not surjective")
        if image(self.i.hom) != kernel(self.p.hom):
            raise InvalidSequence("im i differs from ker p")

    @property
    def sub(self) -> LieModule:
        return self.i.source

    @property
    def mid(self) -> LieModule:
        return self.i.target

    @property
    def quo(self) -> LieModule:
        return self.p.target

    @classmethod
    def from_submodule(cls, module: LieModule, w: Subgroup) -> ShortExactSeq:
        sd = submodule(module, w)
        qd = quotient_module(module, w)
        return cls(ModuleMap(sd.module, module, sd.inclusion),
                   ModuleMap(module, qd.module, qd.projection))


# ---------------------------------------------------------------------------
# induced maps


@dataclass(frozen=True)
class InducedMaps:
    i0: Callable
    p0: Callable
    i1: Callable
    p1: Callable


def induced_maps(s: ShortExactSeq) -> InducedMaps:
    return InducedMaps(
        i0=lambda a: s.i.hom(a),
        p0=lambda a: s.p.hom(a),
        i1=lambda c: compose_after(s.i.hom, c),
        p1=lambda c: compose_after(s.p.hom, c),
    )


def delta1_partial(s: ShortExactSeq, a2: Sequence[int], a: Sequence[int] | None = None) -> tuple:
    """The partial homomorphism f_{a''}: g ↦ i⁻¹(g·a) on C_𝔤(a''), with a a preimage of a''.

    Returns (f, a).
    """
    quo, mid = s.quo, s.mid
    a2 = quo.carrier.check_element(a2)
    c2, _ = h0(quo)
    if not c2.contains(a2):
        raise NotInH0(f"{list(a2)} is not in the almost centraliser of the quotient")
    if a is None:
        a = s.p.hom.solve(a2)
        if a is None:
            raise NoPreimage(f"{list(a2)} has no preimage")
    elif not quo.carrier.equal(s.p.hom(a), a2):
        raise NoPreimage("supplied element is not a preimage")
    dom = kernel(quo.orbit_map(a2)).canonical()
    vals = []
    for g in dom.gens():
        b = s.i.hom.solve(mid.act(g, a))
        if b is None:
            raise NoPreimage("g·a is not in the image of i")
        vals.append(b)
    return PartialHom(dom, vals, s.sub.carrier), tuple(a)


def connecting_delta1(s: ShortExactSeq, a2: Sequence[int]) -> PHomClass:
    f, a = delta1_partial(s, a2)
    c = class_of(f)
    # pulled back through i, the class must be that of d(a)
    if compose_after(s.i.hom, c) != class_of(differential(s.mid, a)):
        raise AssertionError("connecting class disagrees with the rational pullback of d(a)")
    return c


def delta1_choice_difference(s: ShortExactSeq, a2: Sequence[int], a: Sequence[int],
                             b: Sequence[int]) -> bool:
    """Two preimage choices give classes differing by an inner class of A'."""
    fa, _ = delta1_partial(s, a2, a)
    fb, _ = delta1_partial(s, a2, b)
    diff = [x - y for x, y in zip(class_of(fa).flat(), class_of(fb).flat())]
    return linalg.lattice_contains(_inner_lattice(s.sub), diff)


def _inner_lattice(module: LieModule) -> list:
    return [inner_class(module, module.carrier.basis_vector(k)).flat()
            for k in range(module.dim)]


# ---------------------------------------------------------------------------
# the six-term sequence


@dataclass(frozen=True)
class Junction:
    name: str
    exact: bool
    kind: str
    witness: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ExactnessReport:
    junctions: tuple

    @property
    def ok(self) -> bool:
        return all(j.exact for j in self.junctions)


@dataclass(frozen=True)
class SixTerm:
    seq: ShortExactSeq
    h0_sub: Subgroup
    h0_mid: Subgroup
    h0_quo: Subgroup
    der_sub: DerivationBasis
    der_mid: DerivationBasis
    der_quo: DerivationBasis
    delta_images: tuple   # (generator of h0_quo, class in H̃¹(A'))

    def i1(self, c: PHomClass) -> PHomClass:
        return compose_after(self.seq.i.hom, c)

    def p1(self, c: PHomClass) -> PHomClass:
        return compose_after(self.seq.p.hom, c)

    def delta1(self, a2) -> PHomClass:
        return connecting_delta1(self.seq, a2)

    def h1(self) -> tuple:
        return tuple(h1(m) for m in (self.seq.sub, self.seq.mid, self.seq.quo))


def six_term(s: ShortExactSeq) -> SixTerm:
    c_sub, c_mid, c_quo = h0(s.sub)[0], h0(s.mid)[0], h0(s.quo)[0]
    deltas = tuple((tuple(g), connecting_delta1(s, g)) for g in c_quo.gens())
    return SixTerm(s, c_sub, c_mid, c_quo, derivation_space(s.sub), derivation_space(s.mid),
                   derivation_space(s.quo), deltas)


def _combos_into(basis: Sequence[Sequence], images: Sequence[Sequence],
                 target: linalg.Subspace, dim: int) -> linalg.Subspace:
    """Span of Σ x_k basis_k over all x with Σ x_k images_k in target."""
    ann = linalg.nullspace(target.basis, target.dim)
    rows = [[sum(a * v for a, v in zip(w, img)) for img in images] for w in ann]
    sols = linalg.nullspace(rows, len(basis)) if rows else [
        tuple(int(i == j) for j in range(len(basis))) for i in range(len(basis))]
    vecs = [tuple(sum(x[k] * basis[k][c] for k in range(len(basis))) for c in range(dim))
            for x in sols]
    return linalg.Subspace(vecs, dim)


def verify_exactness(t: SixTerm) -> ExactnessReport:
    s = t.seq
    out = []

    ker_i0 = intersect(kernel(s.i.hom), t.h0_sub)
    out.append(Junction("H0(A')", ker_i0.rank == 0 and ker_i0 == s.sub.carrier.zero(), "integral",
                        {"ker_i0": [list(v) for v in ker_i0.canonical().gens()]}))

    im_i0 = image_of(s.i.hom, t.h0_sub)
    ker_p0 = intersect(t.h0_mid, kernel(s.p.hom))
    out.append(Junction("H0(A)", im_i0 == ker_p0, "integral",
                        {"im_i0": [list(v) for v in im_i0.canonical().gens()],
                         "ker_p0": [list(v) for v in ker_p0.canonical().gens()]}))

    im_p0 = image_of(s.p.hom, t.h0_mid)
    ker_d = kernel_of_delta1(t)
    out.append(Junction("H0(A'')", im_p0 == ker_d, "integral",
                        {"im_p0": [list(v) for v in im_p0.canonical().gens()],
                         "ker_delta1": [list(v) for v in ker_d.canonical().gens()]}))

    n_sub = s.sub.ring.rational_dim * s.sub.rational_dim
    n_mid = s.mid.ring.rational_dim * s.mid.rational_dim
    inner_sub, inner_mid, inner_quo = (t.der_sub.inner_space(), t.der_mid.inner_space(),
                                       t.der_quo.inner_space())
    im_d = linalg.Subspace([c.flat() for _, c in t.delta_images], n_sub) + inner_sub
    basis_sub = [c.flat() for c in t.der_sub.basis]
    ker_i1 = _combos_into(basis_sub, [t.i1(c).flat() for c in t.der_sub.basis],
                          inner_mid, n_sub) + inner_sub
    out.append(Junction("H1(A')", im_d == ker_i1, "rational",
                        {"im_delta1_rank": im_d.rank, "ker_i1_rank": ker_i1.rank}))

    im_i1 = linalg.Subspace([t.i1(c).flat() for c in t.der_sub.basis], n_mid) + inner_mid
    basis_mid = [c.flat() for c in t.der_mid.basis]
    ker_p1 = _combos_into(basis_mid, [t.p1(c).flat() for c in t.der_mid.basis],
                          inner_quo, n_mid) + inner_mid
    out.append(Junction("H1(A)", im_i1 == ker_p1, "rational",
                        {"im_i1_rank": im_i1.rank, "ker_p1_rank": ker_p1.rank}))
    return ExactnessReport(tuple(out))


def kernel_of_delta1(t: SixTerm) -> Subgroup:
    """{a'' in H̃⁰(A'') : δ₁(a'') lies in the inner lattice of A'} (integral)."""
    quo = t.seq.quo
    gens = [g for g, _ in t.delta_images]
    vals = [c.flat() for _, c in t.delta_images]
    if not gens:
        return quo.carrier.zero()
    lattice = _inner_lattice(t.seq.sub)
    dim = len(vals[0])
    if dim == 0:
        return quo.carrier.subgroup(gens).canonical()
    rels = linalg.lattice_relations(vals + [tuple(-x for x in v) for v in lattice], dim)
    k = len(gens)
    elems = [tuple(sum(r[j] * gens[j][c] for j in range(k)) for c in range(quo.dim)) for r in rels]
    return quo.carrier.subgroup(elems).canonical()


# ---------------------------------------------------------------------------
# inflation and restriction


@dataclass(frozen=True)
class Inflation:
    quotient: QuotientRing
    module_q: LieModule       # module over the quotient ring
    module: LieModule         # the same group viewed over the big ring

    def __call__(self, c: PHomClass) -> PHomClass:
        return precompose(c, self.quotient.projection)


def inf_map(ring: LieRing, ideal: Subgroup, module_q: LieModule) -> Inflation:
    """Inflation H̃¹(𝔤/𝔥, A) -> H̃¹(𝔤, A) for a module of the quotient ring."""
    if not is_ideal(ring, ideal):
        raise NotAnIdeal("inflation needs an ideal")
    qr = quotient_ring(ring, ideal)
    if module_q.ring != qr.ring:
        raise ValueError("module is not over the quotient ring")
    g = ring.carrier
    action = [[module_q.act(qr.projection(g.basis_vector(i)), module_q.carrier.basis_vector(k))
               for k in range(module_q.dim)] for i in range(g.ambient_rank)]
    return Inflation(qr, module_q, LieModule(ring, module_q.carrier, action))


@dataclass(frozen=True)
class Restriction:
    sub: object               # SubringData
    module: LieModule         # restricted module

    def __call__(self, c: PHomClass) -> PHomClass:
        return precompose(c, self.sub.inclusion)


def res_map(module: LieModule, h: Subgroup) -> Restriction:
    sub = subring(module.ring, h)
    return Restriction(sub, restrict_module(module, sub))


def _flat_space(classes: Sequence[PHomClass], dim: int) -> linalg.Subspace:
    return linalg.Subspace([c.flat() for c in classes], dim)


@dataclass(frozen=True)
class FiveTermReport:
    ideal: Subgroup
    h1_ideal: Subgroup
    fixed: Subgroup
    inf_injective: bool
    exact_middle: bool
    dims: dict

    @property
    def ok(self) -> bool:
        return self.inf_injective and self.exact_middle


def _free_module(module: LieModule) -> tuple:
    """module/torsion, with the projection."""
    qd = quotient_module(module, torsion(module.carrier))
    return qd.module, qd.projection


def five_term(module: LieModule, h: Subgroup) -> FiveTermReport:
    """0 -> H̃¹(𝔤/𝔥₁, C̃_A(𝔥)) -> H̃¹(𝔤, A) -> H̃¹(𝔥, A), checked rationally.

    C̃_A(𝔥) is used modulo its torsion, on which 𝔥₁ acts trivially.
    """
    ring = module.ring
    if not is_ideal(ring, h):
        raise NotAnIdeal("five-term sequence needs an ideal")
    c0, _ = h0(module)
    if c0 != module.carrier.zero():
        raise HypothesisViolated("the almost centraliser of the ring in A is not trivial")
    fixed = almost_centraliser_module(module, h, module.carrier.zero())
    h1_ideal = intersect(h, almost_centraliser_ring(module, fixed, module.carrier.zero())).canonical()
    if not is_ideal(ring, h1_ideal):
        raise AssertionError("h1 is not an ideal")
    sd = submodule(module, fixed)
    cfree, cproj = _free_module(sd.module)
    qr = quotient_ring(ring, h1_ideal)
    lifts = qr.lift.columns()
    action = [[cfree.act(l, cfree.carrier.basis_vector(k)) for k in range(cfree.dim)] for l in lifts]
    cq = LieModule(qr.ring, cfree.carrier, action)

    # rational embedding of C/torsion into A
    emb = _rational_embedding(sd.inclusion, cproj, module.rational_dim)
    pi = qr.projection.rational_matrix.to_rows()

    fc, fq = cfree.rational_dim, qr.ring.rational_dim

    def inf_prime(c: PHomClass) -> tuple:
        m = _product(_product(emb, c.matrix, fq), pi, ring.rational_dim)
        return tuple(Fraction(x) for row in m for x in row)

    der_q = derivation_space(cq)
    der = derivation_space(module)
    n = module.rational_dim * ring.rational_dim
    inner = der.inner_space()
    basis_q = [c.flat() for c in der_q.basis]
    nq = fc * fq
    pre_inner = _combos_into(basis_q, [inf_prime(c) for c in der_q.basis], inner, nq)
    injective = der_q.inner_space().contains_space(pre_inner)

    res = res_map(module, h)
    der_h_inner = derivation_space(res.module).inner_space()
    basis = [c.flat() for c in der.basis]
    ker_res = _combos_into(basis, [res(c).flat() for c in der.basis], der_h_inner, n) + inner
    im_inf = linalg.Subspace([inf_prime(c) for c in der_q.basis], n) + inner
    dims = {"r_quotient": der_q.r, "t_quotient": der_q.t, "r": der.r, "t": der.t,
            "ker_res": ker_res.rank, "im_inf": im_inf.rank}
    return FiveTermReport(h, h1_ideal, fixed, injective, im_inf == ker_res, dims)


def _rational_embedding(inclusion: GroupHom, proj: GroupHom, rows: int) -> list:
    """Rational matrix of (C/torsion) -> A given C -> A and C -> C/torsion."""
    inc = inclusion.rational_matrix.to_rows()
    p = proj.rational_matrix.to_rows()
    return _product(inc, _inverse(p), len(p)) if inc else [[] for _ in range(rows)]


def _inverse(m: Sequence[Sequence]) -> list:
    n = len(m)
    cols = [linalg.solve(m, [int(i == j) for i in range(n)], n) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# consequence checks


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    hypotheses: bool
    details: dict = field(default_factory=dict)
    note: str = ""

    @property
    def verdict(self) -> str:
        if not self.hypotheses:
            return "HYPOTHESIS_VIOLATED"
        return "PASS" if self.passed else "FAIL"


def _h1_dict(d) -> dict:
    return d.as_dict()


def finite_index_isogeny(module: LieModule, a1: Subgroup) -> CheckResult:
    """For a finite-index submodule A₁, H̃¹(𝔤, A₁) and H̃¹(𝔤, A) are isogenous."""
    name = "finite_index_isogeny"
    if not module.is_submodule(a1) or index(module.carrier, a1) == INFINITE:
        return CheckResult(name, False, False, note="A1 must be a finite-index submodule")
    s = ShortExactSeq.from_submodule(module, a1)
    t = six_term(s)
    d1, d = h1(s.sub), h1(module)
    n = module.rational_dim * module.ring.rational_dim
    img = linalg.Subspace([t.i1(c).flat() for c in t.der_sub.basis], n)
    iso = img == t.der_mid.space() and len(t.der_sub.basis) == img.rank
    r0 = (h0(s.sub)[0].rank, h0(module)[0].rank)
    passed = (d1.r, d1.t) == (d.r, d.t) and iso and r0[0] == r0[1]
    return CheckResult(name, passed, True, {"h1_sub": _h1_dict(d1), "h1": _h1_dict(d),
                                            "i1_rational_iso": iso, "h0_ranks": list(r0)})


def finite_quotient_embedding(module: LieModule, a2: Subgroup) -> CheckResult:
    """For a finite submodule A₂, p¹: H̃¹(𝔤, A) -> H̃¹(𝔤, A/A₂) is injective."""
    name = "finite_quotient_embedding"
    if not module.is_submodule(a2) or a2.rank != 0:
        return CheckResult(name, False, False, note="A2 must be a finite submodule")
    s = ShortExactSeq.from_submodule(module, a2)
    t = six_term(s)
    n = module.rational_dim * module.ring.rational_dim
    basis = [c.flat() for c in t.der_mid.basis]
    ker_p1 = _combos_into(basis, [t.p1(c).flat() for c in t.der_mid.basis],
                          t.der_quo.inner_space(), n) + t.der_mid.inner_space()
    injective = ker_p1 == t.der_mid.inner_space()
    # integrally: the inner lattice of A maps onto that of A/A₂
    lat_mid = [t.p1(c).flat() for c in t.der_mid.inner_generators]
    lat_quo = [c.flat() for c in t.der_quo.inner_generators]
    lattice_ok = all(linalg.lattice_contains(lat_mid, v) for v in lat_quo)
    return CheckResult(name, injective and lattice_ok, True,
                       {"h1": _h1_dict(h1(module)), "h1_quotient": _h1_dict(h1(s.quo)),
                        "p1_injective": injective, "inner_lattices_match": lattice_ok})


def quo_almost_central(module: LieModule, h: Subgroup) -> CheckResult:
    """𝔥 ≤ C̃_𝔤(A) ∩ Z̃(𝔤): H̃¹(𝔤/𝔥, A) and H̃¹(𝔤, A) are isogenous.

    A is taken modulo torsion, where 𝔥 acts trivially; Z̃(𝔤) is the almost
    centraliser of the adjoint module over 0.
    """
    name = "quo_almost_central"
    ring = module.ring
    cent = almost_centraliser_ring(module, module.carrier.whole(), module.carrier.zero())
    zt = almost_center(ring)
    if not (cent.contains_subgroup(h) and zt.contains_subgroup(h) and is_ideal(ring, h)):
        return CheckResult(name, False, False,
                           note="h must be an ideal inside the almost centraliser of A and the almost centre")
    afree, _ = _free_module(module)
    qr = quotient_ring(ring, h)
    action = [[afree.act(l, afree.carrier.basis_vector(k)) for k in range(afree.dim)]
              for l in qr.lift.columns()]
    aq = LieModule(qr.ring, afree.carrier, action)
    inf = inf_map(ring, h, aq)
    der_q, der = derivation_space(aq), derivation_space(inf.module)
    n = afree.rational_dim * ring.rational_dim
    nq = afree.rational_dim * qr.ring.rational_dim
    basis_q = [c.flat() for c in der_q.basis]
    images = [inf(c).flat() for c in der_q.basis]
    pre = _combos_into(basis_q, images, der.inner_space(), nq)
    injective = der_q.inner_space().contains_space(pre)
    surjective = linalg.Subspace(images, n) + der.inner_space() == der.space()
    dq, d = h1(aq), h1(module)
    return CheckResult(name, injective and surjective and dq.rational_dim == d.rational_dim, True,
                       {"h1_quotient": _h1_dict(dq), "h1": _h1_dict(d),
                        "inf_injective": injective, "inf_surjective": surjective},
                       note="Z̃(𝔤) read as the almost centre of the adjoint module")


def res_injective(module: LieModule, h: Subgroup) -> CheckResult:
    """For a finite-index subring 𝔥, res: H̃¹(𝔤, A) -> H̃¹(𝔥, A) is injective."""
    name = "res_injective"
    if not is_subring(module.ring, h) or index(module.ring.carrier, h) == INFINITE:
        return CheckResult(name, False, False, note="h must be a finite-index subring")
    res = res_map(module, h)
    der = derivation_space(module)
    der_h = derivation_space(res.module)
    n = module.rational_dim * module.ring.rational_dim
    basis = [c.flat() for c in der.basis]
    ker = _combos_into(basis, [res(c).flat() for c in der.basis], der_h.inner_space(), n)
    injective = der.inner_space().contains_space(ker)
    return CheckResult(name, injective, True,
                       {"h1": _h1_dict(h1(module)), "h1_sub": _h1_dict(h1(res.module)),
                        "kernel_rank_mod_inner": ker.rank - ker.intersect(der.inner_space()).rank})


def res_image_central(module: LieModule, h: Subgroup) -> CheckResult:
    """g·res(f) is inner, for every g in Ñ_𝔤(𝔥) ∩ D^f, with f realizing a basis class."""
    name = "res_image_central"
    ring = module.ring
    if not is_subring(ring, h):
        return CheckResult(name, False, False, note="h must be a subring")
    res = res_map(module, h)
    sub = res.sub
    norm = almost_normaliser(ring, sub.subgroup)
    lattice = [res(inner_class(module, module.carrier.basis_vector(k))).flat()
               for k in range(module.dim)]
    jrat = sub.inclusion.rational_matrix.to_rows()
    hf = sub.ring.rational_dim
    failures, tested = [], 0
    for c in derivation_space(module).basis:
        f = realize(c)
        dom = intersect(norm, derivation_domain(f, module))
        for g in dom.canonical().gens():
            tested += 1
            acted = act_on_class(g, c, module)      # the class of g·f on 𝔤
            restricted = [tuple(x) for x in _product(acted.matrix, jrat, hf)]
            flat = tuple(x for row in restricted for x in row)
            expected = res(class_of(differential(module, f(g)))).flat()
            if not (linalg.lattice_contains(lattice, flat) and flat == expected):
                failures.append({"g": list(g), "class": [str(x) for x in flat]})
    return CheckResult(name, not failures, True, {"tested": tested, "failures": failures})


def _product(a, b, ncols: int) -> list:
    return [[sum(row[k] * b[k][j] for k in range(len(row))) for j in range(ncols)] for row in a]


def cartan_supplement(ring: LieRing, ideal: Subgroup, c: Subgroup) -> CheckResult:
    """For an ideal 𝔦 and an almost Cartan subring 𝔠 of 𝔦: 𝔤 ∼ 𝔦 + Ñ_𝔤(𝔠)."""
    name = "cartan_supplement"
    if not is_ideal(ring, ideal) or not ideal.contains_subgroup(c):
        return CheckResult(name, False, False, note="need an ideal containing c")
    sub = subring(ring, ideal)
    c_in = sub.ring.carrier.subgroup([sub.subgroup.coefficients(x) for x in c.gens()])
    try:
        cartan = is_almost_cartan(sub.ring, c_in)
    except ValueError:
        cartan = False
    if not cartan:
        return CheckResult(name, False, False, note="c is not almost Cartan in the ideal")
    total = subgroup_sum(ideal, almost_normaliser(ring, c))
    span = ring.rational_span(total)
    ok = span.rank == ring.rational_dim
    return CheckResult(name, ok, True, {"span_rank": span.rank, "rank": ring.rational_dim,
                                        "index": index(ring.carrier, total)})
