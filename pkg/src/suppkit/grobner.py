"""Groebner bases for ideals and submodules of free modules over k[x].

Vectors are dicts ``{(exp, pos): coeff}`` ordered term-over-position with
the ring's monomial order (lower positions win ties).  Every basis element
may carry a *tag* vector that is updated in parallel during reduction;
tags give cofactors, quotients and Schreyer syzygies.
"""

from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotCertifiable, NotMonomial, RingMismatch
from .polys import Poly, PolyRing
from .rings import Ring

# ---------------------------------------------------------------------------
# low-level vector kernel
# ---------------------------------------------------------------------------


class _Ctx:
    __slots__ = ("ring", "F", "p", "mkey", "tkey", "zero", "one")

    def __init__(self, ring: PolyRing):
        self.ring = ring.free
        self.F = ring.base
        self.p = getattr(ring.base, "p", None)
        mkey = ring.mkey
        self.mkey = mkey
        self.tkey = lambda t: (mkey(t[0]), -t[1])
        self.zero = self.F.zero
        self.one = self.F.one

    def inv(self, c):
        return pow(c, -1, self.p) if self.p else 1 / Fraction(c)

    def lead(self, v):
        return max(v, key=self.tkey)

    def add_mul(self, v, w, c, mono):
        """In place ``v += c * x^mono * w``."""
        p = self.p
        for (e, pos), a in w.items():
            k = (tuple([x + y for x, y in zip(e, mono)]), pos)
            s = v.get(k, 0) + c * a
            if p:
                s %= p
            if s:
                v[k] = s
            else:
                v.pop(k, None)

    def scale(self, v, c):
        p = self.p
        if p:
            return {k: a * c % p for k, a in v.items()}
        return {k: a * c for k, a in v.items()}


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


class _Elem:
    __slots__ = ("vec", "tag", "lead", "idx")

    def __init__(self, vec, tag, lead, idx):
        self.vec, self.tag, self.lead, self.idx = vec, tag, lead, idx


def _reduce(ctx: _Ctx, v, tag, basis, full=True):
    """Reduce ``v`` by ``basis`` (monic elements).  Returns ``(r, tag)``.

    The tag is updated so that ``tag_out = tag_in - sum q_k tag_k`` where
    ``v = r + sum q_k g_k``.
    """
    v = dict(v)
    tag = dict(tag) if tag is not None else None
    rem = {}
    tkey = ctx.tkey
    p = ctx.p
    while v:
        t = max(v, key=tkey)
        c = v[t]
        e, pos = t
        hit = None
        for g in basis:
            ge, gp = g.lead
            if gp == pos and _divides(ge, e):
                hit = g
                break
        if hit is None:
            if not full:
                rem.update(v)
                break
            rem[t] = c
            del v[t]
            continue
        mono = _sub_exp(e, hit.lead[0])
        q = (-c) % p if p else -c
        ctx.add_mul(v, hit.vec, q, mono)
        if tag is not None and hit.tag is not None:
            ctx.add_mul(tag, hit.tag, q, mono)
    return rem, tag


def _make_monic(ctx, v, tag):
    c = v[ctx.lead(v)]
    if c == 1:
        return v, tag
    ci = ctx.inv(c)
    return ctx.scale(v, ci), (ctx.scale(tag, ci) if tag is not None else None)


def _buchberger(ctx: _Ctx, vecs, tags=None):
    """Reduced Groebner basis of the span of ``vecs`` (list of _Elem)."""
    tkey = ctx.tkey
    basis: list[_Elem] = []
    pending = set()
    heap = []
    counter = itertools.count()
    rank_one = all(pos == 0 for v in vecs for (_, pos) in v)

    def add(v, tag):
        v, tag = _reduce(ctx, v, tag, basis)
        if not v:
            return
        v, tag = _make_monic(ctx, v, tag)
        lead = ctx.lead(v)
        j = len(basis)
        basis.append(_Elem(v, tag, lead, j))
        for g in basis[:-1]:
            if g.lead[1] != lead[1]:
                continue
            if rank_one and all(a == 0 or b == 0 for a, b in zip(g.lead[0], lead[0])):
                continue
            L = _lcm(g.lead[0], lead[0])
            pending.add((g.idx, j))
            heapq.heappush(heap, (tkey((L, lead[1])), next(counter), g.idx, j))

    for k, v in enumerate(vecs):
        add(v, tags[k] if tags is not None else None)
        while heap:
            _, _, i, j = heapq.heappop(heap)
            if (i, j) not in pending:
                continue
            pending.discard((i, j))
            gi, gj = basis[i], basis[j]
            L = _lcm(gi.lead[0], gj.lead[0])
            pos = gi.lead[1]
            skip = False
            for g in basis:
                k2 = g.idx
                if k2 in (i, j) or g.lead[1] != pos or not _divides(g.lead[0], L):
                    continue
                if (min(i, k2), max(i, k2)) not in pending and (min(j, k2), max(j, k2)) not in pending:
                    skip = True
                    break
            if skip:
                continue
            s = {}
            ctx.add_mul(s, gi.vec, 1, _sub_exp(L, gi.lead[0]))
            p = ctx.p
            ctx.add_mul(s, gj.vec, p - 1 if p else -1, _sub_exp(L, gj.lead[0]))
            stag = None
            if gi.tag is not None:
                stag = {}
                ctx.add_mul(stag, gi.tag, 1, _sub_exp(L, gi.lead[0]))
                ctx.add_mul(stag, gj.tag, p - 1 if p else -1, _sub_exp(L, gj.lead[0]))
            add(s, stag)
    return _interreduce(ctx, basis)


def _interreduce(ctx, basis):
    keep = []
    for g in basis:
        redundant = False
        for h in basis:
            if h is g or h.lead[1] != g.lead[1] or not _divides(h.lead[0], g.lead[0]):
                continue
            if h.lead[0] != g.lead[0] or h.idx < g.idx:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for g in keep:
        others = [h for h in keep if h is not g]
        v, tag = _reduce(ctx, g.vec, g.tag, others)
        v, tag = _make_monic(ctx, v, tag)
        out.append(_Elem(v, tag, ctx.lead(v), 0))
    out.sort(key=lambda g: ctx.tkey(g.lead), reverse=True)
    for i, g in enumerate(out):
        g.idx = i
    return out


# ---------------------------------------------------------------------------
# conversions
# ---------------------------------------------------------------------------


def _poly_vec(p: Poly, pos=0):
    return {(e, pos): c for e, c in p.terms.items()}


def _col_vec(entries):
    v = {}
    for pos, p in enumerate(entries):
        for e, c in p.terms.items():
            v[(e, pos)] = c
    return v


def _vec_to_list(R: PolyRing, v, rank):
    terms = [dict() for _ in range(rank)]
    for (e, pos), c in v.items():
        terms[pos][e] = c
    return [R.from_terms(t) for t in terms]


def _basis_tag(ctx, k):
    return {(ctx.ring.zero_exp, k): ctx.one}


# ---------------------------------------------------------------------------
# polynomial-level entry points (used by PolyRing for its relations)
# ---------------------------------------------------------------------------


def reduced_gb_polys(ring: PolyRing, polys) -> list:
    P = ring.free
    ctx = _Ctx(P)
    vecs = [_poly_vec(p) for p in polys if p.terms]
    G = _buchberger(ctx, vecs)
    return [Poly(P, {e: c for (e, _), c in g.vec.items()}) for g in G]


def poly_normal_form(ring: PolyRing, terms: dict, gb) -> dict:
    ctx = _Ctx(ring)
    basis = [_Elem(_poly_vec(g), None, ctx.lead(_poly_vec(g)), i) for i, g in enumerate(gb)]
    r, _ = _reduce(ctx, {(e, 0): c for e, c in terms.items()}, None, basis)
    return {e: c for (e, _), c in r.items()}


# ---------------------------------------------------------------------------
# module Groebner bases, syzygies, membership
# ---------------------------------------------------------------------------


@dataclass
class ModuleGB:
    """Reduced Groebner basis of the column span of ``cols`` in ``R^rank``.

    ``elems[i].tag`` expresses basis element ``i`` in terms of the input
    generators (when tracking was requested).
    """

    ring: PolyRing
    rank: int
    ngens: int
    elems: list
    ctx: _Ctx = field(repr=False)

    def reduce(self, v, tracked=False):
        tag = {} if tracked else None
        return _reduce(self.ctx, v, tag, self.elems)

    def contains(self, v) -> bool:
        return not self.reduce(v)[0]

    def vectors(self):
        return [_vec_to_list(self.ring, g.vec, self.rank) for g in self.elems]


_GB_CACHE: dict = {}
_GB_CACHE_MAX = 4096


def module_gb(R: PolyRing, cols, rank: int, track: bool = True) -> ModuleGB:
    """Groebner basis over the free ring of R for the given column vectors.

    ``cols`` are lists of R-elements (their normal-form lifts are used).
    """
    P = R.free
    key = (P.tag, rank, track, tuple(tuple(frozenset(x.terms.items()) for x in c) for c in cols))
    hit = _GB_CACHE.get(key)
    if hit is not None:
        return hit
    ctx = _Ctx(P)
    vecs = [_col_vec(c) for c in cols]
    tags = [_basis_tag(ctx, k) for k in range(len(vecs))] if track else None
    elems = _buchberger(ctx, vecs, tags)
    gb = ModuleGB(P, rank, len(vecs), elems, ctx)
    if len(_GB_CACHE) > _GB_CACHE_MAX:
        _GB_CACHE.clear()
    _GB_CACHE[key] = gb
    return gb


def _relation_cols(R: PolyRing, rank: int):
    out = []
    for h in R.relation_gb:
        for k in range(rank):
            col = [R.free.zero] * rank
            col[k] = h
            out.append(col)
    return out


def _syzygy_vectors(P: PolyRing, cols, rank):
    """Generators of ``{a : sum a_k cols_k = 0}`` over the free ring ``P``.

    Schreyer's construction on a tracked reduced basis, then pulled back
    to the original generators.
    """
    m = len(cols)
    if m == 0:
        return []
    gb = module_gb(P, cols, rank, track=True)
    ctx, G = gb.ctx, gb.elems
    s = len(G)
    pm1 = ctx.p - 1 if ctx.p else -1
    zero_exp = P.zero_exp
    # syzygies among the basis elements, in R^s
    syz_g = []
    for j in range(s):
        gj = G[j]
        cand = []
        for i in range(j):
            gi = G[i]
            if gi.lead[1] != gj.lead[1]:
                continue
            L = _lcm(gi.lead[0], gj.lead[0])
            cand.append((_sub_exp(L, gj.lead[0]), i, L))
        kept = []
        for mono, i, L in cand:
            dominated = False
            for mono2, i2, _ in cand:
                if i2 == i:
                    continue
                if _divides(mono2, mono) and (mono2 != mono or i2 < i):
                    dominated = True
                    break
            if not dominated:
                kept.append((mono, i, L))
        for mono, i, L in kept:
            gi = G[i]
            svec, stag = {}, {}
            mi = _sub_exp(L, gi.lead[0])
            ctx.add_mul(svec, gi.vec, 1, mi)
            ctx.add_mul(svec, gj.vec, pm1, mono)
            stag[(mi, i)] = ctx.one
            stag[(mono, j)] = pm1 if ctx.p else -1
            basis = [_Elem(g.vec, _basis_tag(ctx, g.idx), g.lead, g.idx) for g in G]
            r, stag = _reduce(ctx, svec, stag, basis)
            assert not r, "S-vector failed to reduce to zero"
            syz_g.append(stag)
    # T: basis element i in terms of inputs; S: inputs in terms of basis
    T = [g.tag for g in G]
    basis = [_Elem(g.vec, _basis_tag(ctx, g.idx), g.lead, g.idx) for g in G]
    out = []
    for sg in syz_g:
        v = {}
        for (e, i), c in sg.items():
            ctx.add_mul(v, T[i], c, e)
        if v:
            out.append(v)
    for k, c in enumerate(cols):
        r, Sk = _reduce(ctx, _col_vec(c), {}, basis)
        assert not r
        # column k of (I - T S): e_k + sum_i (tag_i) * T_i, with tag = -S_k
        v = {(zero_exp, k): ctx.one}
        for (e, i), a in Sk.items():
            ctx.add_mul(v, T[i], a, e)
        if v:
            out.append(v)
    return out


def _normalize_vec(R, vec):
    """Scale so the first nonzero entry has leading coefficient one."""
    for x in vec:
        if x.terms:
            lc = x.lead_coeff()
            if lc != R.base.one:
                inv = R.base.inv(lc)
                return [R.scale(y, inv) for y in vec]
            return vec
    return vec


def syzygies(vectors, ring: PolyRing | None = None) -> list:
    """Kernel generators of ``R^m -> R^r`` sending ``e_k`` to ``vectors[k]``.

    Vectors are lists of ring elements (a bare element counts as a vector
    of length one).  Over a quotient ring the defining relations are taken
    into account.
    """
    vectors = [v if isinstance(v, (list, tuple)) else [v] for v in vectors]
    if ring is None:
        ring = next(x.ring for v in vectors for x in v)
    vectors = [[ring.coerce(x) for x in v] for v in vectors]
    m = len(vectors)
    rank = len(vectors[0]) if vectors else 0
    if not isinstance(ring, PolyRing):
        from .exactla import ExactMatrix, kernel

        return kernel(ExactMatrix.from_columns(ring, vectors, rank))
    return _kernel_cols(ring, vectors, rank, m)


def _kernel_cols(R: PolyRing, cols, rank, m):
    P = R.free
    allcols = [[R.lift(x) for x in c] for c in cols] + _relation_cols(R, rank)
    raw = _syzygy_vectors(P, allcols, rank)
    out = []
    seen = set()
    for v in raw:
        proj = {k: c for k, c in v.items() if k[1] < m}
        if not proj:
            continue
        vec = _normalize_vec(R, _vec_to_list(R, proj, m))
        if all(not x.terms for x in vec):
            continue
        key = tuple(frozenset(x.terms.items()) for x in vec)
        if key in seen:
            continue
        seen.add(key)
        out.append(vec)
    return out


def matrix_kernel(A) -> list:
    R = A.ring
    return _kernel_cols(R, A.columns(), A.nrows, A.ncols)


def matrix_solve(A, b):
    """Some ``x`` with ``A x = b`` over ``R`` (relations respected)."""
    R = A.ring
    b = [R.coerce(v) for v in b]
    if A.nrows == 0:
        return [R.zero] * A.ncols
    cols = [[R.lift(x) for x in c] for c in A.columns()] + _relation_cols(R, A.nrows)
    if not cols:
        return [] if all(not v.terms for v in b) else None
    gb = module_gb(R.free, cols, A.nrows, track=True)
    r, tag = gb.reduce(_col_vec([R.lift(v) for v in b]), tracked=True)
    if r:
        return None
    # b = sum q_k g_k and the tag is -sum q_k (cofactor of g_k)
    ctx = gb.ctx
    proj = {k: ((-c) % ctx.p if ctx.p else -c) for k, c in tag.items() if k[1] < A.ncols}
    return _vec_to_list(R, proj, A.ncols)


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


class Ideal:
    """Finitely generated ideal of a polynomial ring (or of ZZ)."""

    def __init__(self, ring: Ring, gens):
        self.ring = ring
        gens = [ring.coerce(g) for g in gens]
        self.gens = [g for g in gens if not ring.is_zero(g)]
        self._gb = None

    # ZZ ideals are principal; keep their generator as the gcd
    @property
    def is_integer(self) -> bool:
        return not isinstance(self.ring, PolyRing)

    def _z_gen(self) -> int:
        import math

        g = 0
        for x in self.gens:
            g = math.gcd(g, int(x))
        return g

    def lifted_gens(self) -> list:
        """Generators of the preimage in the free polynomial ring."""
        R = self.ring
        return [R.lift(g) for g in self.gens] + list(R.relation_gb)

    def groebner_basis(self) -> list:
        if self._gb is None:
            self._gb = groebner_basis(self)
        return self._gb

    def _full_gb(self):
        R = self.ring
        return reduced_gb_polys(R.free, self.lifted_gens())

    def contains(self, f) -> bool:
        R = self.ring
        f = R.coerce(f)
        if self.is_integer:
            g = self._z_gen()
            return f == 0 if g == 0 else f % g == 0
        if not f.terms:
            return True
        gb = self._full_gb()
        return not poly_normal_form(R.free, R.lift(f).terms, gb)

    def is_subset(self, other: "Ideal") -> bool:
        _same_ring(self, other)
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.is_subset(other) and other.is_subset(self)

    def __hash__(self):
        return hash(self.ring)

    @property
    def is_unit(self) -> bool:
        return self.contains(self.ring.one)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    def format(self) -> str:
        if self.is_integer:
            return f"({self._z_gen()})"
        return "(" + ", ".join(self.ring.format(g) for g in self.groebner_basis()) + ")" if self.gens else "(0)"

    def __repr__(self):
        return f"Ideal{self.format()}"

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)


def _same_ring(I, J):
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")


def groebner_basis(I: Ideal) -> list:
    """Reduced Groebner basis of ``I`` (modulo the ring's relations)."""
    R = I.ring
    if I.is_integer:
        g = I._z_gen()
        return [g] if g else []
    full = reduced_gb_polys(R.free, I.lifted_gens())
    rel_leads = [r.lead_exp() for r in R.relation_gb]
    out = []
    for g in full:
        le = g.lead_exp()
        if any(_divides(r, le) for r in rel_leads):
            continue
        out.append(R.coerce(g))
    return out


def ideal_sum(I, J):
    _same_ring(I, J)
    return Ideal(I.ring, I.gens + J.gens)


def ideal_product(I, J):
    _same_ring(I, J)
    R = I.ring
    return Ideal(R, [R.mul(a, b) for a in I.gens for b in J.gens])


def ideal_intersection(I, J):
    _same_ring(I, J)
    R = I.ring
    if I.is_integer:
        import math

        a, b = I._z_gen(), J._z_gen()
        return Ideal(R, [a * b // math.gcd(a, b)] if a and b else [])
    S = R.free.extend(("_t",), order="elim1")
    t = S.var(0)

    def up(p):
        return S.from_terms({(0,) + e: c for e, c in p.terms.items()})

    gens = [S.mul(t, up(f)) for f in I.lifted_gens()]
    gens += [S.mul(S.sub(S.one, t), up(g)) for g in J.lifted_gens()]
    gb = reduced_gb_polys(S, gens)
    out = []
    for g in gb:
        if all(e[0] == 0 for e in g.terms):
            out.append(R.from_terms({e[1:]: c for e, c in g.terms.items()}))
    return Ideal(R, out)


def ideal_quotient(I, J):
    """``(I : J) = {r : r J ⊆ I}``."""
    _same_ring(I, J)
    R = I.ring
    if I.is_integer:
        import math

        a, b = I._z_gen(), J._z_gen()
        if b == 0:
            return Ideal(R, [1])
        return Ideal(R, [a // math.gcd(a, b)])
    result = Ideal(R, [R.one])
    for g in J.gens:
        result = ideal_intersection(result, _quotient_element(I, g))
    return result


def _quotient_element(I, g):
    R = I.ring
    cols = [[g]] + [[f] for f in I.gens]
    syz = _kernel_cols(R, cols, 1, len(cols))
    return Ideal(R, [v[0] for v in syz])


def ideal_arith(op: str, I: Ideal, J: Ideal) -> Ideal:
    ops = {
        "sum": ideal_sum,
        "product": ideal_product,
        "intersection": ideal_intersection,
        "quotient": ideal_quotient,
    }
    if op not in ops:
        raise ValueError(f"unknown ideal operation {op!r}")
    return ops[op](I, J)


def saturation(I: Ideal, J: Ideal) -> Ideal:
    """``(I : J^inf)``; stops at the first repeated quotient."""
    cur = I
    while True:
        nxt = ideal_quotient(cur, J)
        if nxt.is_subset(cur):
            return cur
        cur = nxt


def radical_membership(f, I: Ideal) -> bool:
    """Is ``f`` in the radical of ``I``?  Decided by ``1 in I + (1 - t f)``."""
    R = I.ring
    f = R.coerce(f)
    if I.is_integer:
        m = I._z_gen()
        if m == 0:
            return f == 0
        return pow(int(f), max(1, abs(m).bit_length()), abs(m)) == 0 if abs(m) > 1 else True
    S = R.free.extend(("_t",))
    t = S.var(0)

    def up(p):
        return S.from_terms({(0,) + e: c for e, c in p.terms.items()})

    gens = [up(g) for g in I.lifted_gens()] + [S.sub(S.one, S.mul(t, up(R.lift(f))))]
    gb = reduced_gb_polys(S, gens)
    return any(g.is_constant() and g.terms for g in gb)


def radical_contains(I: Ideal, J: Ideal) -> bool:
    """``J ⊆ √I``."""
    return all(radical_membership(g, I) for g in J.gens)


# ---------------------------------------------------------------------------
# annihilators and monomial primes
# ---------------------------------------------------------------------------


def annihilator(M) -> Ideal:
    """Annihilator of the finitely presented module ``coker(M.presentation)``."""
    R = M.ring
    g = M.ngens
    P = M.presentation
    if g == 0:
        return Ideal(R, [R.one])
    if not isinstance(R, PolyRing):
        from .exactla import smith_normal_form

        if R.is_field:
            return Ideal(R, [] if M.ngens - _rank(P) > 0 else [R.one])
        S = smith_normal_form(P)
        diag = list(S.diagonal) + [R.zero] * (g - len(S.diagonal))
        if any(R.is_zero(d) for d in diag[:g]):
            return Ideal(R, [])
        return Ideal(R, [abs(int(diag[g - 1]))])
    result = None
    cols = P.columns()
    for j in range(g):
        e = [R.zero] * g
        e[j] = R.one
        syz = _kernel_cols(R, [e] + cols, g, 1 + len(cols))
        Ij = Ideal(R, [v[0] for v in syz])
        result = Ij if result is None else ideal_intersection(result, Ij)
    return result


def _rank(P):
    from .exactla import rank

    return rank(P)


@dataclass
class PrimeIdeal:
    """A prime ideal together with the reason we know it is prime."""

    ideal: Ideal
    is_maximal: bool
    certificate: str

    CERTIFICATES = ("monomial-prime", "principal-irreducible", "maximal-verified", "user-asserted")

    @property
    def ring(self):
        return self.ideal.ring

    @property
    def gens(self):
        return self.ideal.gens

    def format(self) -> str:
        return self.ideal.format()

    def __repr__(self):
        return f"PrimeIdeal{self.format()}[{self.certificate}]"

    def monomial_variables(self):
        """Indices of the variables generating a monomial prime."""
        if self.certificate != "monomial-prime":
            return None
        return _variable_subset(self.ideal)

    def residue_field(self) -> "ResidueAlgebra":
        if not self.is_maximal:
            raise NotCertifiable(f"{self.format()} is not certified maximal")
        return ResidueAlgebra(self.ideal)

    @classmethod
    def certify(cls, ideal: Ideal, assert_prime: bool = False, assert_maximal: bool = False):
        """Attach a primality certificate or raise NotCertifiable."""
        R = ideal.ring
        if ideal.is_integer:
            import sympy

            g = abs(ideal._z_gen())
            if g == 0:
                return cls(ideal, False, "principal-irreducible")
            if sympy.isprime(g):
                return cls(ideal, True, "principal-irreducible")
            raise NotCertifiable(f"({g}) is not prime")
        S = _variable_subset(ideal)
        if S is not None and all(_in_var_ideal(h, S) for h in R.relation_gb):
            return cls(ideal, len(S) == R.n, "monomial-prime")
        if len(ideal.gens) == 1 and not R.has_relations and _irreducible(ideal.gens[0]):
            return cls(ideal, R.n == 1, "principal-irreducible")
        if _verify_maximal(ideal):
            return cls(ideal, True, "maximal-verified")
        if assert_prime or assert_maximal:
            return cls(ideal, assert_maximal, "user-asserted")
        raise NotCertifiable(f"cannot certify {ideal.format()} as prime")


def _variable_subset(ideal: Ideal):
    gb = groebner_basis(ideal)
    S = []
    for g in gb:
        if len(g.terms) != 1:
            return None
        (e, c), = g.terms.items()
        if sum(e) != 1:
            return None
        S.append(e.index(1))
    return tuple(sorted(S))


def _in_var_ideal(h, S):
    return all(any(e[i] for i in S) for e in h.terms)


def _irreducible(f: Poly) -> bool:
    import sympy

    R = f.ring
    if f.is_constant():
        return False
    syms = sympy.symbols(list(R.names)) if R.n > 1 else [sympy.Symbol(R.names[0])]
    expr = 0
    for e, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for s, k in zip(syms, e):
            term *= s**k
        expr += term
    kw = {"modulus": R.base.p} if getattr(R.base, "p", None) else {}
    _, factors = sympy.factor_list(expr, *syms, **kw)
    return len(factors) == 1 and factors[0][1] == 1


class ResidueAlgebra:
    """The finite-dimensional algebra ``R/I`` for a zero-dimensional ideal.

    Elements are coordinate vectors over the standard monomials of the
    Groebner basis; ``mult_matrix`` gives the regular representation.
    """

    def __init__(self, ideal: Ideal):
        R = ideal.ring
        self.ring = R
        self.ideal = ideal
        P = R.free
        self.gb = reduced_gb_polys(P, ideal.lifted_gens())
        leads = [g.lead_exp() for g in self.gb]
        if any(not any(e) for e in leads):
            self.basis = []
            return
        bounds = []
        for i in range(R.n):
            pure = [e[i] for e in leads if e[i] and sum(e) == e[i]]
            if not pure:
                raise NotCertifiable(f"{ideal.format()} is not zero-dimensional")
            bounds.append(min(pure))
        basis = [e for e in itertools.product(*(range(b) for b in bounds)) if not any(_divides(l, e) for l in leads)]
        basis.sort(key=P.mkey)
        self.basis = basis
        self.index = {e: i for i, e in enumerate(basis)}
        self._cache = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, f) -> list:
        P = self.ring.free
        f = self.ring.coerce(f)
        nf = poly_normal_form(P, self.ring.lift(f).terms, self.gb)
        v = [self.ring.base.zero] * self.dim
        for e, c in nf.items():
            v[self.index[e]] = c
        return v

    def mult_matrix(self, f):
        """Matrix of multiplication by ``f`` on the standard monomial basis."""
        from .exactla import ExactMatrix

        f = self.ring.coerce(f)
        key = frozenset(f.terms.items())
        if key not in self._cache:
            P = self.ring.free
            cols = []
            for e in self.basis:
                cols.append(self.coords(P.mul(P.monomial(e), self.ring.lift(f))))
            self._cache[key] = ExactMatrix.from_columns(self.ring.base, cols, self.dim)
        return self._cache[key]


def _verify_maximal(ideal: Ideal) -> bool:
    R = ideal.ring
    try:
        A = ResidueAlgebra(ideal)
    except NotCertifiable:
        return False
    d = A.dim
    if d == 0:
        return False
    if d == 1:
        return True
    from .exactla import ExactMatrix, rank_kernel

    rng = random.Random(20140722)
    F = R.base
    for _ in range(5):
        coeffs = [rng.randint(1, 97) for _ in range(R.n)]
        ell = R.zero
        for c, v in zip(coeffs, R.gens()):
            ell = R.add(ell, R.scale(v, c))
        powers = [A.coords(R.one)]
        cur = R.one
        for _k in range(d):
            cur = R.mul(cur, ell)
            powers.append(A.coords(cur))
        M = ExactMatrix.from_columns(F, powers, d)
        _, ker = rank_kernel(M)
        if not ker:
            continue
        # minimal polynomial = kernel vector with the smallest top degree
        best = min(ker, key=lambda v: max(i for i, c in enumerate(v) if not F.is_zero(c)))
        top = max(i for i, c in enumerate(best) if not F.is_zero(best[i]))
        if top != d:
            continue
        U = PolyRing(F, ("_z",))
        mp = U.from_terms({(i,): c for i, c in enumerate(best)})
        return _irreducible(mp)
    return False


def minimal_primes_monomial(I: Ideal) -> list:
    """Minimal primes of a monomial ideal, as variable-subset primes."""
    R = I.ring
    gens = list(I.gens)
    rel = list(getattr(R, "relation_gb", []))
    if not all(g.is_monomial() for g in gens) or not all(len(h.terms) == 1 for h in rel):
        raise NotMonomial("minimal primes need monomial generators")
    supports = [frozenset(i for i, a in enumerate(next(iter(g.terms))) if a) for g in gens]
    supports += [frozenset(i for i, a in enumerate(next(iter(h.terms))) if a) for h in rel]
    if any(not s for s in supports):
        return []
    covers = set()

    def search(chosen: frozenset, k: int):
        while k < len(supports) and supports[k] & chosen:
            k += 1
        if k == len(supports):
            covers.add(chosen)
            return
        for v in sorted(supports[k]):
            search(chosen | {v}, k + 1)

    search(frozenset(), 0)
    minimal = [c for c in covers if not any(o < c for o in covers)]
    minimal.sort(key=lambda c: (len(c), sorted(c)))
    out = []
    for c in minimal:
        ideal = Ideal(R, [R.var(i) for i in sorted(c)])
        out.append(PrimeIdeal(ideal, len(c) == R.n, "monomial-prime"))
    return out
