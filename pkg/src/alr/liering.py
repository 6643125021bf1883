"""Lie rings and Lie ring modules given by structure constants.

A Lie ring is a finitely generated abelian group (the carrier) together with
the brackets of its generators; a module is a second group with the action
of every ring generator on every module generator.  Both are validated when
constructed.  This module also holds the classical (non-almost) structure
theory: lower central series, iterated centres, centralisers, normalisers,
Cartan subrings, subrings, quotients, submodules and quotient modules.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .fgab import (FGGroup, GroupHom, IntMatrix, Subgroup, AmbientMismatch,
                   intersect, preimage, quotient_map)


class InvalidLieRing(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__(report.summary())
        self.report = report


class InvalidModule(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__(report.summary())
        self.report = report


class NotAnIdeal(ValueError):
    pass


class NotASubring(ValueError):
    pass


@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    passed: bool
    witness: tuple = ()
    value: tuple = ()


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> str:
        if self.ok:
            return "all axioms hold"
        return "; ".join(f"{c.axiom} fails at {c.witness} (value {list(c.value)})"
                         for c in self.failures())


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _scale(k, x):
    return tuple(k * a for a in x)


def _bilinear(table, x, y, dim):
    out = [0] * dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if yj:
                c = xi * yj
                for k, v in enumerate(table[i][j]):
                    if v:
                        out[k] += c * v
    return tuple(out)


# ---------------------------------------------------------------------------
# rings


def _check_ring(carrier: FGGroup, bracket) -> ValidationReport:
    n = carrier.ambient_rank
    e = [carrier.basis_vector(i) for i in range(n)]
    br = lambda x, y: _bilinear(bracket, x, y, n)  # noqa: E731
    zero = carrier.is_zero
    checks = []

    alt = [(i,) for i in range(n) if not zero(bracket[i][i])]
    checks.append(AxiomCheck("alternating", not alt, alt[0] if alt else (),
                             bracket[alt[0][0]][alt[0][0]] if alt else ()))

    anti = next(((i, j) for i in range(n) for j in range(i + 1, n)
                 if not zero(_add(bracket[i][j], bracket[j][i]))), None)
    checks.append(AxiomCheck("antisymmetry", anti is None, anti or (),
                             _add(bracket[anti[0]][anti[1]], bracket[anti[1]][anti[0]])
                             if anti else ()))

    jac, jval = None, ()
    for i in range(n):
        for j in range(n):
            for k in range(n):
                s = _add(_add(br(e[i], br(e[j], e[k])), br(e[j], br(e[k], e[i]))),
                         br(e[k], br(e[i], e[j])))
                if not zero(s):
                    jac, jval = (i, j, k), s
                    break
            if jac:
                break
        if jac:
            break
    checks.append(AxiomCheck("jacobi", jac is None, jac or (), jval))

    wd, wval = None, ()
    for r, rel in enumerate(carrier.relations.columns()):
        for j in range(n):
            v = br(rel, e[j])
            if not zero(v):
                wd, wval = (r, j), v
                break
        if wd:
            break
    checks.append(AxiomCheck("well_defined", wd is None, wd or (), wval))
    return ValidationReport(tuple(checks))


def _normalize_table(table, n, m):
    out = []
    for i in range(n):
        row = []
        for j in range(len(table[i])):
            v = tuple(int(x) for x in table[i][j])
            if len(v) != m:
                raise ValueError(f"entry ({i},{j}) has length {len(v)}, expected {m}")
            row.append(v)
        out.append(tuple(row))
    return tuple(out)


class LieRing:
    """Lie ring on ``carrier``; ``bracket[i][j]`` is [e_i, e_j] in carrier coordinates."""

    __slots__ = ("carrier", "bracket", "__dict__")

    def __init__(self, carrier: FGGroup, bracket, check: bool = True):
        n = carrier.ambient_rank
        if len(bracket) != n or any(len(row) != n for row in bracket):
            raise ValueError(f"bracket table must be {n}x{n}")
        self.carrier = carrier
        self.bracket = _normalize_table(bracket, n, n)
        if check:
            report = _check_ring(carrier, self.bracket)
            if not report.ok:
                raise InvalidLieRing(report)

    @classmethod
    def from_sparse(cls, carrier: FGGroup, entries: Iterable, check: bool = True) -> LieRing:
        """Build from ``(i, j, value)`` triples; [e_j, e_i] = -value unless given."""
        n = carrier.ambient_rank
        table = [[None] * n for _ in range(n)]
        for i, j, v in entries:
            table[i][j] = tuple(v)
        for i in range(n):
            for j in range(n):
                if table[i][j] is None:
                    table[i][j] = (_scale(-1, table[j][i]) if table[j][i] is not None
                                   else (0,) * n)
        return cls(carrier, table, check=check)

    @classmethod
    def abelian(cls, carrier: FGGroup) -> LieRing:
        n = carrier.ambient_rank
        return cls(carrier, [[(0,) * n] * n for _ in range(n)])

    @property
    def rank(self) -> int:
        return self.carrier.ambient_rank

    def __repr__(self) -> str:
        return f"LieRing({self.carrier.describe()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieRing) or self.carrier != other.carrier:
            return False
        z = self.carrier.is_zero
        n = self.rank
        return all(z(tuple(a - b for a, b in zip(self.bracket[i][j], other.bracket[i][j])))
                   for i in range(n) for j in range(n))

    def __hash__(self) -> int:
        return hash(self.carrier)

    def br(self, x: Sequence[int], y: Sequence[int]) -> tuple:
        return _bilinear(self.bracket, x, y, self.rank)

    def ad(self, x: Sequence[int]) -> GroupHom:
        g = self.carrier
        cols = [self.br(x, g.basis_vector(j)) for j in range(self.rank)]
        return GroupHom(g, g, IntMatrix.from_columns(cols, self.rank), check=False)

    def whole(self) -> Subgroup:
        return self.carrier.whole()

    def zero(self) -> Subgroup:
        return self.carrier.zero()

    def bracket_subgroup(self, h: Subgroup, k: Subgroup) -> Subgroup:
        """[H, K]: the subgroup generated by brackets of generators."""
        vecs = [self.br(x, y) for x in h.gens() for y in k.gens()]
        return self.carrier.subgroup(vecs).canonical()

    # -- rationalization: torsion is an ideal, so the bracket descends to Z^free_rank
    @cached_property
    def rational_dim(self) -> int:
        return self.carrier.free_rank

    @cached_property
    def rational_bracket(self) -> tuple:
        g = self.carrier
        f = g.free_rank
        lifts = g.free_lift.columns()
        return tuple(tuple(g.free_projection.apply(self.br(lifts[u], lifts[v]))
                           for v in range(f)) for u in range(f))

    def rational_br(self, x: Sequence, y: Sequence) -> tuple:
        return _bilinear(self.rational_bracket, x, y, self.rational_dim)

    def rational_ad(self, x: Sequence) -> list:
        """Matrix (rows) of ad_x on the rationalization."""
        f = self.rational_dim
        cols = [self.rational_br(x, tuple(int(i == j) for i in range(f))) for j in range(f)]
        return [[c[i] for c in cols] for i in range(f)]

    def rational_span(self, h: Subgroup) -> linalg.Subspace:
        if h.ambient != self.carrier:
            raise AmbientMismatch("subgroup of a different group")
        proj = self.carrier.free_projection
        return linalg.Subspace([proj.apply(v) for v in h.gens()], self.rational_dim)


def validate_lie_ring(ring_or_carrier, bracket=None) -> ValidationReport:
    """Check the Lie ring axioms; pass a LieRing or a carrier and a bracket table."""
    if isinstance(ring_or_carrier, LieRing):
        return _check_ring(ring_or_carrier.carrier, ring_or_carrier.bracket)
    carrier = ring_or_carrier
    n = carrier.ambient_rank
    return _check_ring(carrier, _normalize_table(bracket, n, n))


def rational_preimage(g: FGGroup, space: linalg.Subspace) -> Subgroup:
    """All elements of g whose image in g/torsion lies in ``space`` (saturated)."""
    f = g.free_rank
    free = FGGroup.free(f)
    lattice = free.subgroup([linalg.integral(v) for v in space.basis])
    from .fgab import saturation
    proj = GroupHom(g, free, g.free_projection, check=False)
    return preimage(proj, saturation(lattice))


# ---------------------------------------------------------------------------
# modules


def _check_module(ring: LieRing, carrier: FGGroup, action) -> ValidationReport:
    n, m = ring.rank, carrier.ambient_rank
    zero = carrier.is_zero
    rho = [IntMatrix.from_columns(action[i], m) for i in range(n)]

    def act(x, v):
        out = (0,) * m
        for i, xi in enumerate(x):
            if xi:
                out = _add(out, _scale(xi, rho[i].apply(v)))
        return out

    checks = []
    rep, rval = None, ()
    for i in range(n):
        for j in range(n):
            bij = ring.bracket[i][j]
            for k in range(m):
                v = carrier.basis_vector(k)
                lhs = _add(rho[i].apply(rho[j].apply(v)), _scale(-1, rho[j].apply(rho[i].apply(v))))
                s = _add(lhs, _scale(-1, act(bij, v)))
                if not zero(s):
                    rep, rval = (i, j, k), s
                    break
            if rep:
                break
        if rep:
            break
    checks.append(AxiomCheck("representation", rep is None, rep or (), rval))

    wd, wval = None, ()
    for r, rel in enumerate(carrier.relations.columns()):
        for i in range(n):
            v = rho[i].apply(rel)
            if not zero(v):
                wd, wval = (i, r), v
                break
        if wd:
            break
    checks.append(AxiomCheck("module_relations", wd is None, wd or (), wval))

    rr, rrval = None, ()
    for r, rel in enumerate(ring.carrier.relations.columns()):
        for k in range(m):
            v = act(rel, carrier.basis_vector(k))
            if not zero(v):
                rr, rrval = (r, k), v
                break
        if rr:
            break
    checks.append(AxiomCheck("ring_relations", rr is None, rr or (), rrval))
    return ValidationReport(tuple(checks))


class LieModule:
    """``action[i][k]`` is e_i . v_k in module-carrier coordinates."""

    __slots__ = ("ring", "carrier", "action", "__dict__")

    def __init__(self, ring: LieRing, carrier: FGGroup, action, check: bool = True):
        n, m = ring.rank, carrier.ambient_rank
        if len(action) != n or any(len(row) != m for row in action):
            raise ValueError(f"action table must be {n}x{m}")
        self.ring = ring
        self.carrier = carrier
        self.action = _normalize_table(action, n, m)
        if check:
            report = _check_module(ring, carrier, self.action)
            if not report.ok:
                raise InvalidModule(report)

    @classmethod
    def from_matrices(cls, ring: LieRing, carrier: FGGroup, matrices: Sequence,
                      check: bool = True) -> LieModule:
        """Each ring generator acts by the given m x m integer matrix (rows)."""
        m = carrier.ambient_rank
        action = [[tuple(mat[r][k] for r in range(m)) for k in range(m)] for mat in matrices]
        return cls(ring, carrier, action, check=check)

    @classmethod
    def trivial(cls, ring: LieRing, carrier: FGGroup) -> LieModule:
        m = carrier.ambient_rank
        return cls(ring, carrier, [[(0,) * m] * m for _ in range(ring.rank)])

    def __repr__(self) -> str:
        return f"LieModule({self.ring.carrier.describe()} on {self.carrier.describe()})"

    @property
    def dim(self) -> int:
        return self.carrier.ambient_rank

    @cached_property
    def matrices(self) -> tuple:
        return tuple(IntMatrix.from_columns(row, self.dim) for row in self.action)

    def rho(self, x: Sequence[int]) -> IntMatrix:
        m = self.dim
        acc = [0] * (m * m)
        for i, xi in enumerate(x):
            if xi:
                for k, v in enumerate(self.matrices[i].entries):
                    acc[k] += xi * v
        return IntMatrix(m, m, tuple(acc))

    def act(self, x: Sequence[int], v: Sequence[int]) -> tuple:
        out = [0] * self.dim
        for i, xi in enumerate(x):
            if xi:
                for k, val in enumerate(self.matrices[i].apply(v)):
                    out[k] += xi * val
        return tuple(out)

    def act_on(self, x: Sequence[int]) -> GroupHom:
        return GroupHom(self.carrier, self.carrier, self.rho(x), check=False)

    def orbit_map(self, v: Sequence[int]) -> GroupHom:
        """g -> g . v as a homomorphism from the ring carrier."""
        g = self.ring.carrier
        cols = [self.act(g.basis_vector(i), v) for i in range(self.ring.rank)]
        return GroupHom(g, self.carrier, IntMatrix.from_columns(cols, self.dim), check=False)

    # -- rationalization
    @cached_property
    def rational_dim(self) -> int:
        return self.carrier.free_rank

    @cached_property
    def rational_matrices(self) -> tuple:
        """Action of each free basis vector of the ring on Z^free_rank(A), as rows."""
        a = self.carrier
        lifts = self.ring.carrier.free_lift.columns()
        out = []
        for u in lifts:
            m = a.free_projection @ self.rho(u) @ a.free_lift
            out.append(tuple(tuple(m.row(i)) for i in range(m.rows)))
        return tuple(out)

    def rational_rho(self, x: Sequence) -> list:
        f = self.rational_dim
        acc = [[0] * f for _ in range(f)]
        for u, xu in enumerate(x):
            if xu:
                mat = self.rational_matrices[u]
                for i in range(f):
                    for j in range(f):
                        acc[i][j] += xu * mat[i][j]
        return acc

    def rational_span(self, w: Subgroup) -> linalg.Subspace:
        if w.ambient != self.carrier:
            raise AmbientMismatch("subgroup of a different group")
        proj = self.carrier.free_projection
        return linalg.Subspace([proj.apply(v) for v in w.gens()], self.rational_dim)

    def is_submodule(self, w: Subgroup) -> bool:
        return all(w.contains(self.act(self.ring.carrier.basis_vector(i), v))
                   for i in range(self.ring.rank) for v in w.gens())


def validate_module(ring: LieRing, carrier: FGGroup, action) -> ValidationReport:
    return _check_module(ring, carrier, _normalize_table(action, ring.rank, carrier.ambient_rank))


def adjoint_module(ring: LieRing) -> LieModule:
    if not isinstance(ring, LieRing):
        raise TypeError("adjoint_module needs a LieRing")
    report = validate_lie_ring(ring)
    if not report.ok:
        raise InvalidLieRing(report)
    # the representation condition is Jacobi, already checked
    return LieModule(ring, ring.carrier, ring.bracket, check=False)


# ---------------------------------------------------------------------------
# ideals, subrings, quotients


def is_subring(ring: LieRing, h: Subgroup) -> bool:
    gens = h.gens()
    return all(h.contains(ring.br(x, y)) for x in gens for y in gens)


def is_ideal(ring: LieRing, h: Subgroup) -> bool:
    g = ring.carrier
    return all(h.contains(ring.br(g.basis_vector(i), y))
               for i in range(ring.rank) for y in h.gens())


@dataclass(frozen=True)
class QuotientRing:
    ring: LieRing
    projection: GroupHom
    lift: IntMatrix


def quotient_ring(ring: LieRing, ideal: Subgroup) -> QuotientRing:
    if not is_ideal(ring, ideal):
        raise NotAnIdeal("quotient_ring needs an ideal")
    qm = quotient_map(ring.carrier, ideal)
    lifts = qm.lift.columns()
    k = qm.group.ambient_rank
    table = [[qm.group.reduce(qm.projection(ring.br(lifts[a], lifts[b]))) for b in range(k)]
             for a in range(k)]
    return QuotientRing(LieRing(qm.group, table), qm.projection, qm.lift)


@dataclass(frozen=True)
class SubringData:
    """A subring presented on its own generators, with the inclusion map."""
    ring: LieRing
    inclusion: GroupHom
    subgroup: Subgroup


def subring(ring: LieRing, h: Subgroup) -> SubringData:
    if h.ambient != ring.carrier:
        raise AmbientMismatch("subgroup of a different group")
    if not is_subring(ring, h):
        raise NotASubring("subgroup is not closed under the bracket")
    h = h.canonical()
    grp, incl = h.as_group()
    gens = h.gens()
    table = [[tuple(h.coefficients(ring.br(x, y))) for y in gens] for x in gens]
    return SubringData(LieRing(grp, table), incl, h)


def restrict_module(module: LieModule, sub: SubringData) -> LieModule:
    """The module viewed over a subring."""
    action = [[module.act(x, module.carrier.basis_vector(k)) for k in range(module.dim)]
              for x in sub.inclusion.matrix.columns()]
    return LieModule(sub.ring, module.carrier, action, check=False)


@dataclass(frozen=True)
class SubmoduleData:
    module: LieModule
    inclusion: GroupHom
    subgroup: Subgroup


class NotASubmodule(ValueError):
    pass


def submodule(module: LieModule, w: Subgroup) -> SubmoduleData:
    if not module.is_submodule(w):
        raise NotASubmodule("subgroup is not invariant under the action")
    w = w.canonical()
    grp, incl = w.as_group()
    g = module.ring.carrier
    action = [[tuple(w.coefficients(module.act(g.basis_vector(i), v))) for v in w.gens()]
              for i in range(module.ring.rank)]
    return SubmoduleData(LieModule(module.ring, grp, action), incl, w)


@dataclass(frozen=True)
class QuotientModuleData:
    module: LieModule
    projection: GroupHom
    lift: IntMatrix


def quotient_module(module: LieModule, w: Subgroup) -> QuotientModuleData:
    if not module.is_submodule(w):
        raise NotASubmodule("subgroup is not invariant under the action")
    qm = quotient_map(module.carrier, w)
    g = module.ring.carrier
    lifts = qm.lift.columns()
    action = [[qm.group.reduce(qm.projection(module.act(g.basis_vector(i), l))) for l in lifts]
              for i in range(module.ring.rank)]
    return QuotientModuleData(LieModule(module.ring, qm.group, action), qm.projection, qm.lift)


def quotient_ring_module(qr: QuotientRing, module: LieModule) -> LieModule:
    """A module of ``ring`` on which the ideal acts trivially, viewed over the quotient ring."""
    lifts = qr.lift.columns()
    action = [[module.act(l, module.carrier.basis_vector(k)) for k in range(module.dim)]
              for l in lifts]
    return LieModule(qr.ring, module.carrier, action)


def direct_sum(m1: LieModule, m2: LieModule) -> LieModule:
    if m1.ring != m2.ring:
        raise AmbientMismatch("modules over different rings")
    a, b = m1.dim, m2.dim
    action = [[v + (0,) * b for v in r1] + [(0,) * a + v for v in r2]
              for r1, r2 in zip(m1.action, m2.action)]
    return LieModule(m1.ring, m1.carrier.direct_sum(m2.carrier), action, check=False)


# ---------------------------------------------------------------------------
# classical structure theory


def centraliser_over(ring: LieRing, x: Subgroup, h: Subgroup) -> Subgroup:
    """{g : [x, g] in H for every generator x of X}."""
    if x.ambient != ring.carrier or h.ambient != ring.carrier:
        raise AmbientMismatch("subgroups of a different group")
    out = ring.whole()
    for v in x.gens():
        out = intersect(out, preimage(ring.ad(v), h))
    return out.canonical()


def center(ring: LieRing) -> Subgroup:
    return centraliser_over(ring, ring.whole(), ring.zero())


def iterated_center(ring: LieRing, n: int) -> Subgroup:
    z = ring.zero()
    for _ in range(n):
        nxt = centraliser_over(ring, ring.whole(), z)
        assert is_ideal(ring, nxt), "iterated centre is not an ideal"
        if nxt == z:
            break
        z = nxt
    return z


def normaliser(ring: LieRing, h: Subgroup) -> Subgroup:
    out = ring.whole()
    for v in h.gens():
        out = intersect(out, preimage(ring.ad(v), h))
    return out.canonical()


NILPOTENT = "NILPOTENT"
NOT_NILPOTENT = "NOT_NILPOTENT"


@dataclass(frozen=True)
class SeriesReport:
    terms: tuple
    stabilized: bool
    verdict: str
    nilpotency_class: int | None = None
    rational_ranks: tuple = field(default=())

    @property
    def nilpotent(self) -> bool:
        return self.verdict == NILPOTENT


def _rational_lcs(ring: LieRing) -> list:
    f = ring.rational_dim
    basis = [tuple(int(i == j) for j in range(f)) for i in range(f)]
    terms = [linalg.Subspace.whole(f)]
    while True:
        cur = terms[-1]
        nxt = linalg.Subspace([ring.rational_br(u, v) for u in basis for v in cur.basis], f)
        if nxt == cur:
            return terms
        terms.append(nxt)


def is_rationally_nilpotent(ring: LieRing) -> bool:
    return _rational_lcs(ring)[-1].rank == 0


def lower_central_series(ring: LieRing) -> SeriesReport:
    """Lower central series with a two-phase nilpotency decision.

    The rational series stabilizes within rank steps.  A nonzero limit means
    the ring is not nilpotent; a zero limit means the integral term at that
    stage is finite, and the integral series is continued inside it.
    """
    rational = _rational_lcs(ring)
    ranks = tuple(t.rank for t in rational)
    whole = ring.whole()
    terms = [whole]
    for _ in range(len(rational)):
        terms.append(ring.bracket_subgroup(whole, terms[-1]))
        if terms[-1] == terms[-2]:
            terms.pop()
            break
    stabilized = len(terms) <= len(rational)
    if rational[-1].rank > 0:
        return SeriesReport(tuple(terms), stabilized, NOT_NILPOTENT, None, ranks)
    while not stabilized:
        nxt = ring.bracket_subgroup(whole, terms[-1])
        if nxt == terms[-1]:
            stabilized = True
        else:
            terms.append(nxt)
    if terms[-1] == ring.zero():
        return SeriesReport(tuple(terms), True, NILPOTENT, len(terms) - 1, ranks)
    return SeriesReport(tuple(terms), True, NOT_NILPOTENT, None, ranks)


def is_cartan(ring: LieRing, h: Subgroup) -> bool:
    if not is_subring(ring, h):
        raise NotASubring("Cartan test needs a subring")
    sub = subring(ring, h)
    return lower_central_series(sub.ring).nilpotent and normaliser(ring, h) == h


def characteristic(ring: LieRing):
    """p if p kills the ring, 0 if torsion-free, None for anything else."""
    free, divisors = ring.carrier.invariants
    if not divisors:
        return 0
    if free:
        return None
    p = divisors[0]
    if all(d == p for d in divisors) and _is_prime(p):
        return p
    return None


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True
