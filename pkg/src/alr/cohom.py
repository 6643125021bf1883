"""Almost cohomology in degrees 0 and 1, and a classical cochain comparator.

Classes of partial homomorphisms 𝔤 -> A are rational matrices (see ``phom``),
so the almost derivations form the rational solution space Der of

    D c̄(u, v) = ρ̄(u) D e_v - ρ̄(v) D e_u      for basis vectors u < v,

where c̄ and ρ̄ are the bracket and the action on the free parts.  H̃¹ is
described by r = dim Der and t = rank of the inner classes d(a).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .almost import almost_centraliser_module
from .fgab import FGGroup, GroupHom, IntMatrix, Subgroup, image_of, intersect, kernel, preimage, quotient_map
from .liering import LieModule, rational_preimage
from .phom import (PartialHom, PHomClass, ShapeMismatch, class_from_flat, class_of,
                   _as_class)


def h0(module: LieModule) -> tuple:
    """(C̃_A(𝔤), whether it is finite)."""
    c = almost_centraliser_module(module, module.ring.whole(), module.carrier.zero())
    return c, c.rank == 0


# ---------------------------------------------------------------------------
# almost derivations


def _check_shape(f: PartialHom, module: LieModule):
    if f.source != module.ring.carrier or f.target != module.carrier:
        raise ShapeMismatch("partial homomorphism does not go from the ring to the module")


def _unit(k: int, n: int) -> tuple:
    return tuple(int(i == k) for i in range(n))


def defect(module: LieModule, q, x: Sequence, y: Sequence) -> tuple:
    """Rational defect Q c̄(x, y) - ρ̄(x) Q y + ρ̄(y) Q x for free-coordinate vectors x, y."""
    ring = module.ring
    lhs = linalg.matvec(q, ring.rational_br(x, y))
    qx, qy = linalg.matvec(q, x), linalg.matvec(q, y)
    gx = linalg.matvec(module.rational_rho(x), qy)
    gy = linalg.matvec(module.rational_rho(y), qx)
    return tuple(a - b + c for a, b, c in zip(lhs, gx, gy))


def class_is_derivation(module: LieModule, c: PHomClass) -> bool:
    f = module.ring.rational_dim
    return all(not any(defect(module, c.matrix, _unit(u, f), _unit(v, f)))
               for u in range(f) for v in range(u + 1, f))


def is_almost_derivation(f: PartialHom, module: LieModule) -> bool:
    _check_shape(f, module)
    return class_is_derivation(module, class_of(f))


def derivation_witness(f: PartialHom, module: LieModule, g: Sequence[int]) -> Subgroup:
    """D^f_g: the g' in Dom(f) with [g, g'] in Dom(f) where the derivation identity holds."""
    _check_shape(f, module)
    if not f.domain.contains(g):
        raise ValueError("g must lie in the domain")
    ring = module.ring
    h = intersect(f.domain, preimage(ring.ad(g), f.domain)).canonical()
    grp, incl = h.as_group()
    fg = f(g)
    cols = []
    for x in h.gens():
        v = f(ring.br(g, x))
        w = module.act(g, f(x))
        z = module.act(x, fg)
        cols.append(tuple(a - b + c for a, b, c in zip(v, w, z)))
    phi = GroupHom(grp, module.carrier, IntMatrix.from_columns(cols, module.dim), check=False)
    return image_of(incl, kernel(phi)).canonical()


def derivation_domain(f: PartialHom, module: LieModule) -> Subgroup:
    """D^f: elements g of Dom(f) whose witness D^f_g has finite index."""
    _check_shape(f, module)
    ring = module.ring
    fr = ring.rational_dim
    q = class_of(f).matrix
    # g ↦ defect(g, e_v) is linear in g; collect its coefficient rows
    rows = []
    for v in range(fr):
        cols = [defect(module, q, _unit(u, fr), _unit(v, fr)) for u in range(fr)]
        rows.extend([[c[k] for c in cols] for k in range(module.rational_dim)])
    space = linalg.Subspace(linalg.nullspace(rows, fr), fr)
    return intersect(f.domain, rational_preimage(ring.carrier, space)).canonical()


@dataclass(frozen=True)
class DerivationBasis:
    basis: tuple
    inner_generators: tuple
    source: FGGroup
    target: FGGroup

    @property
    def r(self) -> int:
        return len(self.basis)

    @property
    def t(self) -> int:
        return linalg.rank([c.flat() for c in self.inner_generators],
                           self.source.free_rank * self.target.free_rank)

    def space(self) -> linalg.Subspace:
        return linalg.Subspace([c.flat() for c in self.basis], self._n)

    def inner_space(self) -> linalg.Subspace:
        return linalg.Subspace([c.flat() for c in self.inner_generators], self._n)

    @property
    def _n(self) -> int:
        return self.source.free_rank * self.target.free_rank


def derivation_system(module: LieModule) -> list:
    """Rows of the linear system on flattened D (row-major, D[k][w] at k*fg + w)."""
    ring = module.ring
    fg, fa = ring.rational_dim, module.rational_dim
    mats = module.rational_matrices
    rows = []
    for u in range(fg):
        for v in range(u + 1, fg):
            cuv = ring.rational_bracket[u][v]
            for k in range(fa):
                row = [0] * (fa * fg)
                for w in range(fg):
                    row[k * fg + w] += cuv[w]
                for l in range(fa):
                    row[l * fg + v] -= mats[u][k][l]
                    row[l * fg + u] += mats[v][k][l]
                if any(row):
                    rows.append(row)
    return rows


def inner_class(module: LieModule, a: Sequence[int]) -> PHomClass:
    """Class of d(a), computed on the free parts: column u is ρ̄(u) ā."""
    g, m = module.ring.carrier, module.carrier
    abar = m.free_projection.apply(a)
    cols = [linalg.matvec(mat, abar) for mat in module.rational_matrices]
    rows = [[c[k] for c in cols] for k in range(m.free_rank)]
    return _as_class(g, m, rows)


def derivation_space(module: LieModule) -> DerivationBasis:
    g, m = module.ring.carrier, module.carrier
    n = g.free_rank * m.free_rank
    basis = linalg.nullspace(derivation_system(module), n) if n else []
    inner = [inner_class(module, m.basis_vector(k)) for k in range(m.ambient_rank)]
    return DerivationBasis(tuple(class_from_flat(g, m, b) for b in basis), tuple(inner), g, m)


TRIVIAL = "TRIVIAL"
RATIONALLY_TRIVIAL = "RATIONALLY_TRIVIAL"
POSITIVE = "POSITIVE"


@dataclass(frozen=True)
class H1Descriptor:
    """H̃¹ ≅ (r-dimensional rational space) / (lattice spanned by d(A), of rank t)."""
    r: int
    t: int

    @property
    def rational_dim(self) -> int:
        return self.r - self.t

    @property
    def verdict(self) -> str:
        if self.r == 0:
            return TRIVIAL
        if self.r == self.t:
            return RATIONALLY_TRIVIAL
        return POSITIVE

    def label(self) -> str:
        v = self.verdict
        return f"POSITIVE({self.rational_dim})" if v == POSITIVE else v

    def as_dict(self) -> dict:
        return {"r": self.r, "t": self.t, "rational_dim": self.rational_dim,
                "verdict": self.verdict, "label": self.label()}


def h1(module: LieModule) -> H1Descriptor:
    d = derivation_space(module)
    return H1Descriptor(d.r, d.t)


def act_on_class(g: Sequence[int], c: PHomClass, module: LieModule) -> PHomClass:
    """Class of (g·f)(g') = g·f(g') - f([g, g']), i.e. ρ̄(g)Q - Q ad̄(g)."""
    ring = module.ring
    gb = ring.carrier.free_projection.apply(g)
    rho = module.rational_rho(gb)
    ad = ring.rational_ad(gb)
    q = c.matrix
    fa, fg = module.rational_dim, ring.rational_dim
    rows = [[sum(rho[i][k] * q[k][j] for k in range(fa)) - sum(q[i][k] * ad[k][j] for k in range(fg))
             for j in range(fg)] for i in range(fa)]
    return _as_class(c.source, c.target, rows)


def act_on_partial(g: Sequence[int], f: PartialHom, module: LieModule) -> PartialHom:
    """g·f on Dom(f) ∩ ad_g⁻¹(Dom(f))."""
    _check_shape(f, module)
    ring = module.ring
    dom = intersect(f.domain, preimage(ring.ad(g), f.domain)).canonical()
    vals = []
    for x in dom.gens():
        a = module.act(g, f(x))
        b = f(ring.br(g, x))
        vals.append(tuple(p - q for p, q in zip(a, b)))
    return PartialHom(dom, vals, module.carrier, check=False)


# ---------------------------------------------------------------------------
# classical Chevalley–Eilenberg comparator over Q or F_p


class UnsupportedCoefficients(ValueError):
    pass


@dataclass(frozen=True)
class LinearData:
    """Structure constants of 𝔤 and its action on A over a field (p = 0 for Q)."""
    p: int
    bracket: tuple     # bracket[a][b] = coordinates of [x_a, x_b]
    action: tuple      # action[a] = matrix (rows) of x_a on A

    @property
    def n(self) -> int:
        return len(self.bracket)

    @property
    def m(self) -> int:
        return len(self.action[0]) if self.action else 0

    def norm(self, x):
        return x % self.p if self.p else Fraction(x)


def linear_data(module: LieModule, p: int = 0) -> LinearData:
    """Rationalization (p = 0) or reduction mod p of the ring and the module."""
    ring = module.ring
    if p == 0:
        br = tuple(tuple(tuple(Fraction(x) for x in v) for v in row)
                   for row in ring.rational_bracket)
        act = tuple(tuple(tuple(Fraction(x) for x in r) for r in mat)
                    for mat in module.rational_matrices)
        return LinearData(0, br, act)
    g, a = ring.carrier, module.carrier
    qg = quotient_map(g, g.subgroup([tuple(p * x for x in g.basis_vector(i))
                                     for i in range(g.ambient_rank)]))
    qa = quotient_map(a, a.subgroup([tuple(p * x for x in a.basis_vector(i))
                                     for i in range(a.ambient_rank)]))
    lg, la = qg.lift.columns(), qa.lift.columns()
    br = tuple(tuple(tuple(x % p for x in qg.projection(ring.br(x1, x2))) for x2 in lg)
               for x1 in lg)
    act = []
    for x in lg:
        cols = [tuple(v % p for v in qa.projection(module.act(x, y))) for y in la]
        act.append(tuple(tuple(c[i] for c in cols) for i in range(len(la))))
    return LinearData(p, br, tuple(act))


def _coefficient_field(module: LieModule, field):
    if field in (None, 0, "Q"):
        return 0
    p = int(field)
    from .liering import _is_prime
    if not _is_prime(p):
        raise UnsupportedCoefficients(f"{p} is not prime")
    return p


def cochain_basis(n: int, i: int) -> list:
    return list(itertools.combinations(range(n), i))


def _evaluate(data: LinearData, f: dict, args: Sequence) -> list:
    """f on a tuple of coordinate vectors, by multilinearity and alternation."""
    m = data.m
    out = [data.norm(0)] * m
    i = len(args)
    if i == 0:
        return list(f[()])
    supports = [[(k, c) for k, c in enumerate(v) if c] for v in args]
    for choice in itertools.product(*supports):
        idx = [k for k, _ in choice]
        if len(set(idx)) < i:
            continue
        coef = 1
        for _, c in choice:
            coef *= c
        order = sorted(range(i), key=lambda s: idx[s])
        sign = _perm_sign(order)
        val = f[tuple(sorted(idx))]
        for k in range(m):
            out[k] = data.norm(out[k] + sign * coef * val[k])
    return out


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for s in range(len(perm)):
        if not seen[s]:
            j, length = s, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def cochain_d(data: LinearData, i: int, f: dict) -> dict:
    """d^i f on basis tuples, following the displayed formula

        Σ_{s<t} (-1)^{s+t-1} f([g_s, g_t], ..ĝ_s..ĝ_t..) + Σ_j (-1)^j g_j f(..ĝ_j..)

    with 1-based positions s, t, j.
    """
    n, m = data.n, data.m
    unit = [tuple(int(a == b) for b in range(n)) for a in range(n)]
    out = {}
    for combo in cochain_basis(n, i + 1):
        gs = [unit[a] for a in combo]
        acc = [data.norm(0)] * m
        for s in range(i + 1):
            for t in range(s + 1, i + 1):
                bst = data.bracket[combo[s]][combo[t]]
                rest = [gs[k] for k in range(i + 1) if k not in (s, t)]
                val = _evaluate(data, f, [bst] + rest)
                sign = (-1) ** ((s + 1) + (t + 1) - 1)
                acc = [data.norm(x + sign * y) for x, y in zip(acc, val)]
        for j in range(i + 1):
            rest = [gs[k] for k in range(i + 1) if k != j]
            val = _evaluate(data, f, rest)
            mat = data.action[combo[j]]
            gv = [sum(mat[r][c] * val[c] for c in range(m)) for r in range(m)]
            sign = (-1) ** (j + 1)
            acc = [data.norm(x + sign * y) for x, y in zip(acc, gv)]
        out[combo] = tuple(acc)
    return out


def classical_cochain_d(module: LieModule, i: int, f: dict, field=None) -> dict:
    """Apply d^i (i = 0, 1, 2) to an alternating cochain given on sorted index tuples."""
    if i not in (0, 1, 2):
        raise ValueError("degree must be 0, 1 or 2")
    data = linear_data(module, _coefficient_field(module, field))
    return cochain_d(data, i, f)


def _differential_matrix(data: LinearData, i: int) -> list:
    """Matrix of d^i in the bases (cochain basis tuple, module coordinate)."""
    src = cochain_basis(data.n, i)
    dst = cochain_basis(data.n, i + 1)
    m = data.m
    cols = []
    for combo in src:
        for k in range(m):
            f = {c: tuple(data.norm(int(c == combo and q == k)) for q in range(m)) for c in src}
            img = cochain_d(data, i, f)
            cols.append([img[c][q] for c in dst for q in range(m)])
    nrows = len(dst) * m
    return [[col[r] for col in cols] for r in range(nrows)]


def _rank(rows: list, ncols: int, p: int) -> int:
    if p == 0:
        return linalg.rank(rows, ncols)
    return _rank_mod_p(rows, ncols, p)


def _rank_mod_p(rows: list, ncols: int, p: int) -> int:
    a = [[x % p for x in r] for r in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


def classical_h(module: LieModule, i: int, field=None) -> int:
    """dim H^i = dim ker d^i - dim im d^{i-1} over Q (default) or F_p."""
    if i not in (0, 1, 2):
        raise ValueError("degree must be 0, 1 or 2")
    p = _coefficient_field(module, field)
    data = linear_data(module, p)
    n, m = data.n, data.m
    dim_ci = len(cochain_basis(n, i)) * m
    rk = _rank(_differential_matrix(data, i), dim_ci, p) if dim_ci else 0
    prev = 0
    if i > 0:
        dim_prev = len(cochain_basis(n, i - 1)) * m
        prev = _rank(_differential_matrix(data, i - 1), dim_prev, p) if dim_prev else 0
    return dim_ci - rk - prev
