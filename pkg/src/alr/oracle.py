"""Independent cross-checks: brute-force enumeration on finite rings, a
fraction-free rational kernel, derivations of finite fields, and a random
falsification sampler.

Nothing here calls the normal-form or elimination code of the main solver;
objects are read only through their raw presentations (generator counts,
relator columns, bracket and action tables).
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_BOUND = 10_000


class SizeBoundExceeded(ValueError):
    pass


class ReduciblePolynomial(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer echelon (naive, with coefficient tracking)


class IntEchelon:
    """Row echelon basis of the Z-span of some integer vectors.

    Every stored row remembers how it is built from the input vectors, so a
    member can be written as an integer combination of them.
    """

    def __init__(self, vectors: Iterable[Sequence[int]], dim: int):
        self.dim = dim
        vecs = [list(v) for v in vectors]
        self.count = len(vecs)
        rows = [(v, [int(i == k) for i in range(self.count)]) for k, v in enumerate(vecs)]
        self.rows = []     # (vector, combination, pivot column)
        for col in range(dim):
            live = [r for r in rows if r[0][col] != 0]
            rest = [r for r in rows if r[0][col] == 0]
            while len(live) > 1:
                live.sort(key=lambda r: abs(r[0][col]))
                small = live[0]
                nxt = [small]
                for v, c in live[1:]:
                    q = v[col] // small[0][col]
                    v2 = [a - q * b for a, b in zip(v, small[0])]
                    c2 = [a - q * b for a, b in zip(c, small[1])]
                    if v2[col]:
                        nxt.append((v2, c2))
                    else:
                        rest.append((v2, c2))
                live = nxt
            if live:
                v, c = live[0]
                if v[col] < 0:
                    v, c = [-a for a in v], [-a for a in c]
                self.rows.append((v, c, col))
            rows = [r for r in rest if any(r[0])]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list:
        return [(col, v[col]) for v, _, col in self.rows]

    def reduce(self, x: Sequence[int]):
        """(remainder, combination); remainder is zero iff x is in the span."""
        x = list(x)
        comb = [0] * self.count
        for v, c, col in self.rows:
            if x[col]:
                q = x[col] // v[col]
                x = [a - q * b for a, b in zip(x, v)]
                comb = [a + q * b for a, b in zip(comb, c)]
        return x, comb

    def contains(self, x: Sequence[int]) -> bool:
        return not any(self.reduce(x)[0])

    def combination(self, x: Sequence[int]):
        rem, comb = self.reduce(x)
        return None if any(rem) else comb


def _relators(group) -> list:
    return [tuple(c) for c in group.relations.columns()]


# ---------------------------------------------------------------------------
# fraction-free rational kernel


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _ff_echelon(rows: Sequence[Sequence[int]], ncols: int):
    """Fraction-free echelon form; returns (rows, pivot columns)."""
    a = [list(r) for r in rows if any(r)]
    piv, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(len(a)):
            if i == r:
                continue
            for j in range(ncols):
                if j != c:
                    a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j])
            a[i][c] = 0
        for i, row in enumerate(a):
            g = math.gcd(*row)
            if g > 1:
                a[i] = [x // g for x in row]
        piv.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], piv


def _to_int_rows(rows) -> list:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = den * getattr(x, "denominator", 1) // math.gcd(den, getattr(x, "denominator", 1))
        out.append([int(x * den) for x in row])
    return out


def independent_solve(rows: Sequence[Sequence], ncols: int) -> list:
    """Integer basis of the rational kernel of ``rows``, one vector per free column."""
    red, piv = _ff_echelon(_to_int_rows(rows), ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        # x_f = L, x_p = -row[f] * L / row[p] with L a common multiple of pivots
        lcm = 1
        for row, p in zip(red, piv):
            lcm = lcm * abs(row[p]) // math.gcd(lcm, abs(row[p]))
        v = [0] * ncols
        v[f] = lcm
        for row, p in zip(red, piv):
            v[p] = -row[f] * lcm // row[p]
        g = 0
        for x in v:
            g = math.gcd(g, x)
        basis.append([x // g for x in v] if g else v)
    return basis


def independent_rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(_ff_echelon(_to_int_rows(rows), ncols)[1])


def _check_identity_presented(group):
    if any(any(c) for c in group.relations.columns()):
        raise ValueError("oracle derivation system needs a free carrier")


def derivation_system(module) -> list:
    """Rows of D c(i,j) = e_i·D e_j - e_j·D e_i for free carriers, read from raw tables."""
    ring = module.ring
    _check_identity_presented(ring.carrier)
    _check_identity_presented(module.carrier)
    n, m = ring.carrier.ambient_rank, module.carrier.ambient_rank
    act = module.action   # act[i][k] = e_i · v_k

    def rho(i, k, l):     # entry (k, l) of the matrix of e_i
        return act[i][l][k]

    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            c = ring.bracket[i][j]
            for k in range(m):
                row = [0] * (m * n)
                for w in range(n):
                    row[k * n + w] += c[w]
                for l in range(m):
                    row[l * n + j] -= rho(i, k, l)
                    row[l * n + i] += rho(j, k, l)
                rows.append(row)
    return rows


def inner_vectors(module) -> list:
    n, m = module.ring.carrier.ambient_rank, module.carrier.ambient_rank
    out = []
    for a in range(m):
        out.append([module.action[w][a][k] for k in range(m) for w in range(n)])
    return out


def derivation_numbers(module) -> tuple:
    """(nullity r, inner rank t) for a module over a free ring on a free carrier."""
    n, m = module.ring.carrier.ambient_rank, module.carrier.ambient_rank
    r = len(independent_solve(derivation_system(module), n * m))
    t = independent_rank(inner_vectors(module), n * m)
    return r, t


# ---------------------------------------------------------------------------
# finite enumeration


class FiniteGroupTable:
    """Coset representatives of Z^n / R, for R of full rank."""

    def __init__(self, group, extra: Iterable[Sequence[int]] = (), bound: int = DEFAULT_BOUND):
        self.n = group.ambient_rank
        rels = _relators(group) + [tuple(v) for v in extra]
        self.lattice = IntEchelon(rels, self.n)
        if self.lattice.rank < self.n:
            raise SizeBoundExceeded("carrier is infinite")
        self.moduli = {col: d for col, d in self.lattice.pivots()}
        size = 1
        for d in self.moduli.values():
            size *= d
        if size > bound:
            raise SizeBoundExceeded(f"carrier has {size} elements, bound is {bound}")
        self.size = size
        ranges = [range(self.moduli[c]) for c in range(self.n)]
        self.elements = [tuple(x) for x in itertools.product(*ranges)]
        self.index = {x: k for k, x in enumerate(self.elements)}

    def reduce(self, x: Sequence[int]) -> tuple:
        x = list(x)
        for v, _, col in self.lattice.rows:
            q = x[col] // v[col]
            if q:
                x = [a - q * b for a, b in zip(x, v)]
        return tuple(x)

    def add(self, x, y) -> tuple:
        return self.reduce([a + b for a, b in zip(x, y)])

    def scale(self, k: int, x) -> tuple:
        return self.reduce([k * a for a in x])

    def span(self, gens: Iterable[Sequence[int]]) -> frozenset:
        gens = [self.reduce(g) for g in gens]
        zero = tuple([0] * self.n)
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def basis(self) -> list:
        return [tuple(int(i == j) for j in range(self.n)) for i in range(self.n)]


class FiniteRingTable:
    """A Lie ring with finite carrier, enumerated; brackets computed from the raw table."""

    def __init__(self, ring, bound: int = DEFAULT_BOUND, extra: Iterable[Sequence[int]] = ()):
        self.ring = ring
        self.group = FiniteGroupTable(ring.carrier, extra, bound)
        self.n = self.group.n
        self._br = {}

    @property
    def elements(self) -> list:
        return self.group.elements

    def bracket(self, x, y) -> tuple:
        key = (x, y)
        if key not in self._br:
            out = [0] * self.n
            for i, a in enumerate(x):
                if a:
                    for j, b in enumerate(y):
                        if b:
                            for k, c in enumerate(self.ring.bracket[i][j]):
                                out[k] += a * b * c
            self._br[key] = self.group.reduce(out)
        return self._br[key]

    def addition_table(self) -> list:
        el = self.elements
        return [[self.group.index[self.group.add(x, y)] for y in el] for x in el]

    def bracket_table(self) -> list:
        el = self.elements
        return [[self.group.index[self.bracket(x, y)] for y in el] for x in el]

    def center(self) -> frozenset:
        zero = tuple([0] * self.n)
        return frozenset(g for g in self.elements
                         if all(self.bracket(g, h) == zero for h in self.elements))

    def centraliser(self, x_gens, h_gens) -> frozenset:
        hset = self.group.span(h_gens)
        xs = [self.group.reduce(x) for x in x_gens]
        return frozenset(g for g in self.elements if all(self.bracket(x, g) in hset for x in xs))

    def normaliser(self, h_gens) -> frozenset:
        hset = self.group.span(h_gens)
        return frozenset(g for g in self.elements if all(self.bracket(g, h) in hset for h in hset))

    def lower_central_series(self) -> list:
        terms = [frozenset(self.elements)]
        while True:
            brs = {self.bracket(x, t) for x in self.elements for t in terms[-1]}
            nxt = self.group.span(brs)
            if nxt == terms[-1]:
                return terms
            terms.append(nxt)

    def nilpotency_class(self):
        """Steps to reach zero, or None if the series stalls above zero."""
        terms = self.lower_central_series()
        return len(terms) - 1 if len(terms[-1]) == 1 else None


def enumerate_and_check(ring, query: str, *args, bound: int = DEFAULT_BOUND):
    """Brute-force answer to CENTER, CENTRALISER(X, H), NORMALISER(H), NILPOTENT
    or CLASSICAL_H(module, i, p) on a finite carrier."""
    q = query.upper()
    if q == "CLASSICAL_H":
        module, i, p = args
        return classical_h_enumerated(module, i, p, bound=bound)
    table = FiniteRingTable(ring, bound)
    if q == "CENTER":
        return table.center()
    if q == "CENTRALISER":
        return table.centraliser(*args)
    if q == "NORMALISER":
        return table.normaliser(*args)
    if q == "NILPOTENT":
        return table.nilpotency_class()
    raise ValueError(f"unknown query {query}")


def _p_multiples(n: int, p: int) -> list:
    return [tuple(p * int(i == j) for j in range(n)) for i in range(n)]


def _mod_p_rank(rows, ncols: int, p: int) -> int:
    a = [[x % p for x in r] for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], p - 2, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def classical_h_enumerated(module, i: int, p: int, bound: int = DEFAULT_BOUND,
                           cocycle_bound: int = 200_000) -> int:
    """dim over F_p of H^0 or H^1 of 𝔤/p𝔤 acting on A/pA, by counting.

    H^0 is counted element by element.  For H^1 the cocycles are enumerated
    when there are at most ``cocycle_bound`` candidate value tuples; beyond
    that their number is taken from a mod-p rank of the cocycle equations.
    """
    ring = module.ring
    g = FiniteGroupTable(ring.carrier, _p_multiples(ring.carrier.ambient_rank, p), bound)
    a = FiniteGroupTable(module.carrier, _p_multiples(module.carrier.ambient_rank, p), bound)
    n, m = g.n, a.n

    def act(x, v):
        out = [0] * m
        for s, xs in enumerate(x):
            if xs:
                for k, vk in enumerate(v):
                    if vk:
                        for t, c in enumerate(module.action[s][k]):
                            out[t] += xs * vk * c
        return a.reduce(out)

    def br(x, y):
        out = [0] * n
        for s, xs in enumerate(x):
            for t, yt in enumerate(y):
                if xs and yt:
                    for k, c in enumerate(ring.bracket[s][t]):
                        out[k] += xs * yt * c
        return g.reduce(out)

    gens = g.basis()
    if i == 0:
        fixed = [v for v in a.elements if all(not any(act(e, v)) for e in gens)]
        return round(math.log(len(fixed), p))
    if i != 1:
        raise ValueError("only degrees 0 and 1 are enumerated")

    rels = _relators(ring.carrier)

    def value(f, x):
        out = [0] * m
        for s, xs in enumerate(x):
            if xs:
                for k, c in enumerate(f[s]):
                    out[k] += xs * c
        return a.reduce(out)

    def is_cocycle(f):
        for r in rels:
            if any(value(f, r)):
                return False
        for s in range(n):
            for t in range(s + 1, n):
                lhs = value(f, br(gens[s], gens[t]))
                rhs = a.add(act(gens[s], f[t]), a.scale(-1, act(gens[t], f[s])))
                if lhs != rhs:
                    return False
        return True

    coboundaries = {tuple(act(e, v) for e in gens) for v in a.elements}
    if a.size ** n <= cocycle_bound:
        z1 = sum(1 for f in itertools.product(a.elements, repeat=n) if is_cocycle(f))
        return round(math.log(z1 // len(coboundaries), p))
    # too many candidates: count cocycles as p^(nullity) of their linear equations
    rows = []
    unit = [tuple(int(s == k) for k in range(m)) for s in range(m)]
    nvars = n * m
    for r in rels:
        for k in range(m):
            row = [0] * nvars
            for s, rs in enumerate(r):
                row[s * m + k] += rs
            rows.append(row)
    for s in range(n):
        for t in range(s + 1, n):
            c = br(gens[s], gens[t])
            for k in range(m):
                row = [0] * nvars
                for w, cw in enumerate(c):
                    row[w * m + k] += cw
                for l in range(m):
                    row[t * m + l] -= act(gens[s], unit[l])[k]
                    row[s * m + l] += act(gens[t], unit[l])[k]
                rows.append(row)
    z1_dim = nvars - _mod_p_rank(rows, nvars, p)
    return z1_dim - round(math.log(len(coboundaries), p))


# ---------------------------------------------------------------------------
# derivations of finite fields


def _poly_mod(a: list, b: list, p: int) -> list:
    """Remainder of a by monic b over F_p (coefficient lists, low degree first)."""
    a = [x % p for x in a]
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1]
        shift = len(a) - 1 - db
        for k, bk in enumerate(b):
            a[shift + k] = (a[shift + k] - c * bk) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Monic poly (low degree first) has no monic factor of degree 1..deg/2."""
    n = len(poly) - 1
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _poly_mod(list(poly), list(tail) + [1], p):
                return False
    return True


def find_irreducible(p: int, n: int) -> list:
    for tail in itertools.product(range(p), repeat=n):
        poly = list(tail) + [1]
        if poly[0] != 0 or n == 1:
            if is_irreducible(poly, p):
                return poly
    raise ValueError("no irreducible polynomial found")


def field_derivations(p: int, n: int, poly: Sequence[int] | None = None,
                      bound: int = 1 << 12) -> int:
    """Dimension over F_p of the derivations of F_{p^n} = F_p[x]/(poly)."""
    if p ** n > bound:
        raise SizeBoundExceeded(f"{p}^{n} exceeds {bound}")
    if poly is None:
        poly = find_irreducible(p, n)
    elif len(poly) != n + 1 or poly[-1] % p != 1 or not is_irreducible(poly, p):
        raise ReduciblePolynomial(f"{list(poly)} is not a monic irreducible of degree {n}")

    def coords(k: int) -> list:
        r = _poly_mod([0] * k + [1], list(poly), p)
        return r + [0] * (n - len(r))

    # structure constants b_i b_j = x^{i+j} and left multiplication matrices
    prod = [[coords(i + j) for j in range(n)] for i in range(n)]
    # unknown sigma: sigma(b_k)_l at index k*n + l
    rows = []
    for i in range(n):
        for j in range(n):
            for out in range(n):
                row = [0] * (n * n)
                for k, c in enumerate(prod[i][j]):
                    row[k * n + out] += c
                for l in range(n):
                    row[j * n + l] -= prod[i][l][out]
                    row[i * n + l] -= prod[j][l][out]
                rows.append(row)
    return n * n - _mod_p_rank(rows, n * n, p)


# ---------------------------------------------------------------------------
# falsification sampling


ALMOST_CONTAINED = "ALMOST_CONTAINED"
COMMENSURABLE = "COMMENSURABLE"
EQUIVALENT_PHOM = "EQUIVALENT_PHOM"
COEFF_BOUND = 1000


@dataclass(frozen=True)
class SamplerReport:
    claim: str
    predicted: bool
    trials: int
    seed: int
    consistent: bool
    counterexamples: tuple = field(default=())

    def as_dict(self) -> dict:
        return {"claim": self.claim, "predicted": self.predicted, "trials": self.trials,
                "seed": self.seed, "consistent": self.consistent,
                "counterexamples": [list(c) for c in self.counterexamples]}


def _sample(rng: random.Random, gens: Sequence[Sequence[int]], dim: int) -> tuple:
    out = [0] * dim
    for g in gens:
        c = rng.randint(-COEFF_BOUND, COEFF_BOUND)
        for k, x in enumerate(g):
            out[k] += c * x
    return tuple(out)


def _rationally_in(vectors: Sequence[Sequence[int]], x: Sequence[int], dim: int) -> bool:
    base = independent_rank(vectors, dim) if vectors else 0
    return independent_rank(list(vectors) + [x], dim) == base


def _index_in_ambient(group, sub_gens) -> int:
    ech = IntEchelon(list(sub_gens) + _relators(group), group.ambient_rank)
    out = 1
    for _, d in ech.pivots():
        out *= d
    return out


def _containment_multiplier(h_gens, k_gens, group):
    """|H + K : K| when finite (computed on preimages in Z^n), else None.

    Equal-rank echelon forms share their pivot columns, so the index is the
    ratio of the pivot products.
    """
    rels = _relators(group)
    small = IntEchelon(list(k_gens) + rels, group.ambient_rank)
    big = IntEchelon(list(h_gens) + list(k_gens) + rels, group.ambient_rank)
    if small.rank != big.rank:
        return None
    num = den = 1
    for (_, d1), (_, d2) in zip(small.pivots(), big.pivots()):
        num, den = num * d1, den * d2
    return num // den


def _contained_failures(h_gens, k_gens, group, predicted: bool, index, trials: int,
                        rng: random.Random) -> list:
    """Samples contradicting a predicted verdict for H ⪅ K."""
    dim = group.ambient_rank
    rels = _relators(group)
    if predicted:
        mult = index if index is not None else _containment_multiplier(h_gens, k_gens, group)
        if mult is None or mult == math.inf:
            return [("no finite multiplier",)]
        k_lat = IntEchelon(list(k_gens) + rels, dim)
        bad = []
        for _ in range(trials):
            h = _sample(rng, h_gens, dim)
            if not k_lat.contains([mult * x for x in h]):
                bad.append(h)
        return bad
    span = [tuple(v) for v in k_gens] + rels
    for _ in range(trials):
        if not _rationally_in(span, _sample(rng, h_gens, dim), dim):
            return []
    return [("no escaping sample",)]


def falsification_sampler(claim: str, trials: int, seed: int, left, right,
                          predicted: bool, index=None) -> SamplerReport:
    """Test a predicted verdict on random elements.

    ALMOST_CONTAINED and COMMENSURABLE take two Subgroups.  A positive
    containment prediction H ⪅ K is refuted by a sample h with m·h ∉ K, where
    m is the claimed index |H : H ∩ K| if given, else |H + K : K|.  A negative
    one is confirmed by a sample with no nonzero multiple in K.
    EQUIVALENT_PHOM takes two PartialHoms and evaluates both on multiples of
    random elements that land in both domains: the difference must be torsion
    (positive) or somewhere non-torsion (negative).
    """
    rng = random.Random(seed)
    if claim == ALMOST_CONTAINED:
        bad = _contained_failures(left.gens(), right.gens(), left.ambient, predicted, index,
                                  trials, rng)
    elif claim == COMMENSURABLE:
        one = _contained_failures(left.gens(), right.gens(), left.ambient, predicted, None,
                                  trials, rng)
        two = _contained_failures(right.gens(), left.gens(), left.ambient, predicted, None,
                                  trials, rng)
        bad = one + two if predicted else (one if one and two else [])
    elif claim == EQUIVALENT_PHOM:
        bad = _phom_failures(left, right, predicted, trials, rng)
    else:
        raise ValueError(f"unknown claim {claim}")
    return SamplerReport(claim, predicted, trials, seed, not bad, tuple(tuple(b) for b in bad))


def _phom_failures(f, f1, predicted: bool, trials: int, rng: random.Random) -> list:
    src, tgt = f.source, f.target
    n = src.ambient_rank
    m = _index_in_ambient(src, f.domain.gens()) * _index_in_ambient(src, f1.domain.gens())
    e = IntEchelon(f.domain.gens() + _relators(src), n)
    e1 = IntEchelon(f1.domain.gens() + _relators(src), n)
    k, k1 = len(f.domain.gens()), len(f1.domain.gens())
    trels = _relators(tgt)
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    bad, found_free = [], False
    for _ in range(trials):
        x = [m * a for a in _sample(rng, unit, n)]
        c, c1 = e.combination(x), e1.combination(x)
        if c is None or c1 is None:
            bad.append(tuple(x))
            continue
        y = _apply(f.values, c[:k], tgt.ambient_rank)
        y1 = _apply(f1.values, c1[:k1], tgt.ambient_rank)
        diff = [a - b for a, b in zip(y, y1)]
        if not _rationally_in(trels, diff, tgt.ambient_rank):
            found_free = True
            if predicted:
                bad.append(tuple(x))
    if not predicted and not found_free:
        bad.append(("no non-torsion difference",))
    return bad


def _apply(values, coeffs, dim: int) -> list:
    out = [0] * dim
    for c, v in zip(coeffs, values):
        for k, x in enumerate(v):
            out[k] += c * x
    return out
