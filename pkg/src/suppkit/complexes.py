"""Bounded chain complexes, homologically indexed.

A term is ``R^n`` or, when ``relations[i]`` is given, the finitely
presented module ``R^n / im(relations[i])``.  Differentials go
``d(i) : X_i -> X_{i-1}`` and must carry relations into relations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import NotAComplex, NotTabulated, RingMismatch
from .exactla import ExactMatrix, block_diag, hstack, vstack
from .modules import FpModule, Minimized, submodule_quotient


def _zeros(R, m, n):
    return ExactMatrix.zeros(R, m, n)


class ChainComplex:
    def __init__(self, ring, ranks: dict, diffs: dict | None = None, relations: dict | None = None, check: bool = True):
        self.ring = ring
        self.ranks = {int(i): int(n) for i, n in ranks.items() if n}
        self.diffs = {}
        self.relations = {}
        for i, D in (diffs or {}).items():
            if D.ring != ring:
                raise RingMismatch(f"differential {i} lives over {D.ring}")
            if D.shape != (self.rank(i - 1), self.rank(i)):
                raise NotAComplex(f"differential {i} has shape {D.shape}, expected {(self.rank(i - 1), self.rank(i))}")
            if self.rank(i) and self.rank(i - 1) and not D.is_zero():
                self.diffs[int(i)] = D
        for i, P in (relations or {}).items():
            if P.nrows != self.rank(i):
                raise NotAComplex(f"relations in degree {i} have {P.nrows} rows, expected {self.rank(i)}")
            if P.ncols and self.rank(i) and not P.is_zero():
                self.relations[int(i)] = P
        if check:
            self.validate()

    # access ---------------------------------------------------------------------
    def rank(self, i) -> int:
        return self.ranks.get(i, 0)

    def d(self, i) -> ExactMatrix:
        D = self.diffs.get(i)
        return D if D is not None else _zeros(self.ring, self.rank(i - 1), self.rank(i))

    def rel(self, i) -> ExactMatrix:
        P = self.relations.get(i)
        return P if P is not None else _zeros(self.ring, self.rank(i), 0)

    @property
    def degrees(self) -> list:
        return sorted(self.ranks)

    @property
    def lo(self):
        return min(self.ranks) if self.ranks else None

    @property
    def hi(self):
        return max(self.ranks) if self.ranks else None

    @property
    def is_free(self) -> bool:
        return not self.relations

    def term(self, i) -> FpModule:
        return FpModule(self.ring, self.rank(i), self.rel(i))

    def __repr__(self):
        parts = []
        for i in sorted(self.ranks, reverse=True):
            tag = f"R^{self.rank(i)}" if i not in self.relations else f"R^{self.rank(i)}/~"
            parts.append(f"{i}:{tag}")
        return f"ChainComplex({self.ring}; {', '.join(parts)})"

    def _in_relations(self, i, vec) -> bool:
        if not any(not self.ring.is_zero(v) for v in vec):
            return True
        P = self.relations.get(i)
        if P is None:
            return False
        return self.ring.solve(P, vec) is not None

    def validate(self):
        for i in self.degrees:
            if self.rank(i - 1) == 0 or self.rank(i - 2) == 0:
                pass
            else:
                DD = self.d(i - 1) @ self.d(i)
                if not DD.is_zero():
                    if not all(self._in_relations(i - 2, c) for c in DD.columns()):
                        raise NotAComplex(f"d({i - 1}) * d({i}) is not zero")
            P = self.relations.get(i)
            if P is not None and self.rank(i - 1):
                img = self.d(i) @ P
                if not all(self._in_relations(i - 1, c) for c in img.columns()):
                    raise NotAComplex(f"d({i}) does not preserve the relations in degree {i}")
        return True

    # constructors ---------------------------------------------------------------
    @classmethod
    def from_module(cls, M: FpModule, degree: int = 0) -> "ChainComplex":
        rel = {degree: M.presentation} if M.nrels else {}
        return cls(M.ring, {degree: M.ngens}, {}, rel, check=False)

    @classmethod
    def unit(cls, ring, degree: int = 0) -> "ChainComplex":
        return cls(ring, {degree: 1}, check=False)

    @classmethod
    def zero(cls, ring) -> "ChainComplex":
        return cls(ring, {}, check=False)

    def with_ring(self, ring, convert) -> "ChainComplex":
        return ChainComplex(
            ring,
            dict(self.ranks),
            {i: D.map_entries(ring, convert) for i, D in self.diffs.items()},
            {i: P.map_entries(ring, convert) for i, P in self.relations.items()},
            check=False,
        )

    # homology -------------------------------------------------------------------
    def homology_data(self, i) -> "HomologyData":
        key = ("H", i)
        cache = self.__dict__.setdefault("_cache", {})
        if key not in cache:
            cache[key] = _homology_data(self, i)
        return cache[key]

    def homology(self, i) -> FpModule:
        return self.homology_data(i).module

    def homology_all(self) -> dict:
        return {i: self.homology(i) for i in self.degrees}


@dataclass
class HomologyData:
    """``H_i = span(cycles) / (boundaries + relations)``, with a minimized
    presentation whose generators are ``cycles @ minimized.to_old``."""

    degree: int
    cycles: ExactMatrix
    boundaries: ExactMatrix
    raw: FpModule
    minimized: Minimized

    @property
    def module(self) -> FpModule:
        return self.minimized.module

    @property
    def generators(self) -> ExactMatrix:
        return self.cycles @ self.minimized.to_old

    def coordinates(self, vec):
        """Coordinates of a cycle in the minimized generators (None if not a cycle)."""
        R = self.cycles.ring
        A = hstack(R, [self.cycles, self.boundaries], self.cycles.nrows)
        x = R.solve(A, vec)
        if x is None:
            return None
        return self.minimized.to_new.apply(x[: self.cycles.ncols])


def _homology_data(F: ChainComplex, i) -> HomologyData:
    R = F.ring
    n = F.rank(i)
    D = F.d(i)
    if F.rank(i - 1) == 0 or D.is_zero():
        Z = ExactMatrix.identity(R, n)
    else:
        m = D.ncols
        ker = R.kernel(hstack(R, [D, F.rel(i - 1)], D.nrows))
        cols = [v[:m] for v in ker if any(not R.is_zero(x) for x in v[:m])]
        Z = ExactMatrix.from_columns(R, cols, n)
    B = hstack(R, [F.d(i + 1), F.rel(i)], n)
    raw = submodule_quotient(Z, B) if Z.ncols else FpModule(R, 0)
    return HomologyData(i, Z, B, raw, raw.minimize())


# ---------------------------------------------------------------------------
# chain maps
# ---------------------------------------------------------------------------


class ChainMap:
    """Components ``f_i : source_i -> target_i`` (target rank x source rank)."""

    def __init__(self, source: ChainComplex, target: ChainComplex, components: dict, check: bool = True):
        if source.ring != target.ring:
            raise RingMismatch("chain map between complexes over different rings")
        self.source = source
        self.target = target
        self.ring = source.ring
        self.components = {}
        for i, f in components.items():
            if f.shape != (target.rank(i), source.rank(i)):
                raise NotAComplex(f"component {i} has shape {f.shape}")
            if source.rank(i) and target.rank(i):
                self.components[i] = f
        if check:
            self.validate()

    def f(self, i) -> ExactMatrix:
        M = self.components.get(i)
        return M if M is not None else _zeros(self.ring, self.target.rank(i), self.source.rank(i))

    def validate(self):
        S, T = self.source, self.target
        for i in sorted(set(S.degrees) | set(T.degrees)):
            lhs = T.d(i) @ self.f(i)
            rhs = self.f(i - 1) @ S.d(i)
            diff = lhs - rhs
            if not diff.is_zero() and not all(T._in_relations(i - 1, c) for c in diff.columns()):
                raise NotAComplex(f"chain map does not commute with differentials in degree {i}")
            P = S.relations.get(i)
            if P is not None:
                img = self.f(i) @ P
                if not all(T._in_relations(i, c) for c in img.columns()):
                    raise NotAComplex(f"chain map does not preserve relations in degree {i}")
        return True

    @classmethod
    def identity(cls, X: ChainComplex) -> "ChainMap":
        return cls(X, X, {i: ExactMatrix.identity(X.ring, X.rank(i)) for i in X.degrees}, check=False)

    def compose(self, g: "ChainMap") -> "ChainMap":
        """``self ∘ g``."""
        degs = set(g.source.degrees)
        return ChainMap(g.source, self.target, {i: self.f(i) @ g.f(i) for i in degs}, check=False)

    def induced_on_homology(self, i) -> ExactMatrix:
        """Matrix of H_i(f) between the minimized homology presentations."""
        hs = self.source.homology_data(i)
        ht = self.target.homology_data(i)
        R = self.ring
        gens = hs.generators
        cols = []
        for k in range(gens.ncols):
            w = self.f(i).apply(gens.column(k))
            c = ht.coordinates(w)
            if c is None:
                raise NotAComplex(f"image of a cycle is not a cycle in degree {i}")
            cols.append(c)
        return ExactMatrix.from_columns(R, cols, ht.module.ngens)

    def is_iso_in_degree(self, i) -> bool:
        hs = self.source.homology_data(i).module
        ht = self.target.homology_data(i).module
        if hs.ngens == 0 and ht.ngens == 0:
            return True
        R = self.ring
        C = self.induced_on_homology(i)
        A = hstack(R, [C, ht.presentation], ht.ngens)
        if not FpModule(R, ht.ngens, A).is_zero():
            return False
        z = hs.ngens
        for v in R.kernel(A):
            if not hs.contains_column(v[:z]) and any(not R.is_zero(x) for x in v[:z]):
                return False
        return True

    def is_quasi_isomorphism(self) -> bool:
        degs = sorted(set(self.source.degrees) | set(self.target.degrees))
        return all(self.is_iso_in_degree(i) for i in degs)


# ---------------------------------------------------------------------------
# Koszul and Cech complexes
# ---------------------------------------------------------------------------


def koszul_complex(xs, ring) -> ChainComplex:
    """Koszul complex on ``xs``; degree-k basis = k-subsets in lex order."""
    xs = [ring.coerce(x) for x in xs]
    n = len(xs)
    subsets = {k: list(itertools.combinations(range(n), k)) for k in range(n + 1)}
    index = {k: {s: j for j, s in enumerate(subsets[k])} for k in subsets}
    diffs = {}
    for k in range(1, n + 1):
        D = _zeros(ring, comb(n, k - 1), comb(n, k))
        for j, s in enumerate(subsets[k]):
            for pos, t in enumerate(s):
                face = s[:pos] + s[pos + 1:]
                v = xs[t] if pos % 2 == 0 else ring.neg(xs[t])
                D.rows[index[k - 1][face]][j] = v
        diffs[k] = D
    return ChainComplex(ring, {k: comb(n, k) for k in range(n + 1)}, diffs, check=False)


class LocalizedChainComplex:
    """``Č(xs) ⊗ coefficients``: terms are copies of the coefficient complex
    localized at the products of subsets of ``xs``.

    Localizations are never materialized; the object is consumed through
    fiber computations and the one-element homology rule.
    """

    def __init__(self, ring, elements, coefficients: ChainComplex | None = None):
        self.ring = ring
        self.elements = [ring.coerce(x) for x in elements]
        self.coefficients = coefficients if coefficients is not None else ChainComplex.unit(ring)

    @property
    def n(self) -> int:
        return len(self.elements)

    def tags(self, degree: int) -> list:
        """Subset tags of the Čech factor sitting in homological degree ``degree``."""
        k = -degree
        if k < 0 or k > self.n:
            return []
        return list(itertools.combinations(range(self.n), k))

    def terms(self) -> dict:
        """Total degree -> list of (subset tag, coefficient degree, rank)."""
        out = {}
        for k in range(self.n + 1):
            for s in itertools.combinations(range(self.n), k):
                for j in self.coefficients.degrees:
                    out.setdefault(j - k, []).append((s, j, self.coefficients.rank(j)))
        return out

    def tag_element(self, s):
        R = self.ring
        out = R.one
        for i in s:
            out = R.mul(out, self.elements[i])
        return out

    @staticmethod
    def sign(s, j) -> int:
        return -1 if sum(1 for t in s if t < j) % 2 else 1

    def __repr__(self):
        return f"LocalizedChainComplex({self.ring}; {[self.ring.format(x) for x in self.elements]})"


def cech_complex(xs, ring) -> LocalizedChainComplex:
    return LocalizedChainComplex(ring, xs)


# ---------------------------------------------------------------------------
# tensor, Hom, shift, cone, truncation, sums
# ---------------------------------------------------------------------------


def _tensor_blocks(F, G, n):
    """Block list for degree n of F ⊗ G, highest F-degree first."""
    return [(p, n - p) for p in sorted(F.degrees, reverse=True) if G.rank(n - p)]


def tensor_complexes(F, G):
    """Total tensor product with ∂(a⊗b) = ∂a⊗b + (-1)^|a| a⊗∂b."""
    if isinstance(F, LocalizedChainComplex):
        return LocalizedChainComplex(F.ring, F.elements, tensor_complexes(F.coefficients, G))
    if isinstance(G, LocalizedChainComplex):
        return LocalizedChainComplex(G.ring, G.elements, tensor_complexes(F, G.coefficients))
    if F.ring != G.ring:
        raise RingMismatch(f"{F.ring} vs {G.ring}")
    R = F.ring
    if not F.degrees or not G.degrees:
        return ChainComplex.zero(R)
    degs = range(F.lo + G.lo, F.hi + G.hi + 1)
    blocks = {n: _tensor_blocks(F, G, n) for n in degs}
    offsets = {}
    ranks = {}
    for n, bl in blocks.items():
        off = 0
        for p, q in bl:
            offsets[(p, q)] = off
            off += F.rank(p) * G.rank(q)
        ranks[n] = off
    diffs = {}
    for n in degs:
        if not ranks.get(n) or not ranks.get(n - 1):
            continue
        D = _zeros(R, ranks[n - 1], ranks[n])
        for p, q in blocks[n]:
            col0 = offsets[(p, q)]
            if F.rank(p - 1) and (p - 1, q) in offsets:
                _place(D, offsets[(p - 1, q)], col0, F.d(p).kron(ExactMatrix.identity(R, G.rank(q))))
            if G.rank(q - 1) and (p, q - 1) in offsets:
                blk = ExactMatrix.identity(R, F.rank(p)).kron(G.d(q))
                if p % 2:
                    blk = -blk
                _place(D, offsets[(p, q - 1)], col0, blk)
        diffs[n] = D
    relations = {}
    if F.relations or G.relations:
        for n, bl in blocks.items():
            parts = []
            for p, q in bl:
                a, b = F.rank(p), G.rank(q)
                pieces = []
                if p in F.relations:
                    pieces.append(F.relations[p].kron(ExactMatrix.identity(R, b)))
                if q in G.relations:
                    pieces.append(ExactMatrix.identity(R, a).kron(G.relations[q]))
                if pieces:
                    parts.append((offsets[(p, q)], hstack(R, pieces, a * b)))
            if parts:
                total = sum(P.ncols for _, P in parts)
                M = _zeros(R, ranks[n], total)
                c = 0
                for off, P in parts:
                    _place(M, off, c, P)
                    c += P.ncols
                relations[n] = M
    return ChainComplex(R, ranks, diffs, relations, check=False)


def _place(D, r0, c0, B):
    for i, row in enumerate(B.rows):
        target = D.rows[r0 + i]
        for j, v in enumerate(row):
            target[c0 + j] = v
    D._nnz = None


def hom_complexes(F: ChainComplex, G: ChainComplex) -> ChainComplex:
    """Hom complex; degree k = ∏_p Hom(F_p, G_{p+k}) with column-major
    vectorization and ∂g = ∂_G∘g - (-1)^k g∘∂_F.  ``F`` must be free."""
    if F.ring != G.ring:
        raise RingMismatch(f"{F.ring} vs {G.ring}")
    if not F.is_free:
        raise NotAComplex("the first argument of Hom must have free terms")
    R = F.ring
    if not F.degrees or not G.degrees:
        return ChainComplex.zero(R)
    degs = range(G.lo - F.hi, G.hi - F.lo + 1)
    blocks = {k: [(p, p + k) for p in F.degrees if G.rank(p + k)] for k in degs}
    offsets, ranks = {}, {}
    for k, bl in blocks.items():
        off = 0
        for p, q in bl:
            offsets[(k, p)] = off
            off += F.rank(p) * G.rank(q)
        ranks[k] = off
    diffs = {}
    for k in degs:
        if not ranks.get(k) or not ranks.get(k - 1):
            continue
        D = _zeros(R, ranks[k - 1], ranks[k])
        for p, q in blocks[k]:
            a = F.rank(p)
            col0 = offsets[(k, p)]
            # ∂_G ∘ g lands in Hom(F_p, G_{q-1}), block (k-1, p)
            if (k - 1, p) in offsets and G.rank(q - 1):
                _place(D, offsets[(k - 1, p)], col0, ExactMatrix.identity(R, a).kron(G.d(q)))
            # g ∘ ∂_F lands in Hom(F_{p+1}, G_q), block (k-1, p+1)
            if (k - 1, p + 1) in offsets and F.rank(p + 1):
                blk = F.d(p + 1).T.kron(ExactMatrix.identity(R, G.rank(q)))
                if k % 2 == 0:
                    blk = -blk
                _place(D, offsets[(k - 1, p + 1)], col0, blk)
        diffs[k] = D
    relations = {}
    if G.relations:
        for k, bl in blocks.items():
            mats = []
            offs = []
            for p, q in bl:
                if q in G.relations:
                    offs.append(offsets[(k, p)])
                    mats.append(ExactMatrix.identity(R, F.rank(p)).kron(G.relations[q]))
            if mats:
                M = _zeros(R, ranks[k], sum(m.ncols for m in mats))
                c = 0
                for off, P in zip(offs, mats):
                    _place(M, off, c, P)
                    c += P.ncols
                relations[k] = M
    return ChainComplex(R, ranks, diffs, relations, check=False)


def _block_offsets(blocks):
    offsets, ranks = {}, {}
    for n, bl in blocks.items():
        off = 0
        for key, size in bl:
            offsets[(n, key)] = off
            off += size
        ranks[n] = off
    return offsets, ranks


def tensor_map(F: ChainComplex, f: ChainMap) -> ChainMap:
    """``F ⊗ f : F ⊗ X -> F ⊗ Y`` for a chain map ``f : X -> Y``."""
    X, Y = f.source, f.target
    S, T = tensor_complexes(F, X), tensor_complexes(F, Y)
    R = f.ring
    if not S.degrees or not T.degrees:
        return ChainMap(S, T, {}, check=False)
    degs = set(S.degrees) & set(T.degrees)
    sb = {n: [(pq, F.rank(pq[0]) * X.rank(pq[1])) for pq in _tensor_blocks(F, X, n)] for n in degs}
    tb = {n: [(pq, F.rank(pq[0]) * Y.rank(pq[1])) for pq in _tensor_blocks(F, Y, n)] for n in degs}
    so, _ = _block_offsets(sb)
    to, _ = _block_offsets(tb)
    comps = {}
    for n in degs:
        M = _zeros(R, T.rank(n), S.rank(n))
        for (p, q), _ in sb[n]:
            if (n, (p, q)) in to and f.f(q).nrows and f.f(q).ncols:
                _place(M, to[(n, (p, q))], so[(n, (p, q))], ExactMatrix.identity(R, F.rank(p)).kron(f.f(q)))
        comps[n] = M
    return ChainMap(S, T, comps, check=False)


def hom_map(F: ChainComplex, f: ChainMap) -> ChainMap:
    """``Hom(F, f) : Hom(F, X) -> Hom(F, Y)`` (post-composition)."""
    X, Y = f.source, f.target
    S, T = hom_complexes(F, X), hom_complexes(F, Y)
    R = f.ring
    if not S.degrees or not T.degrees:
        return ChainMap(S, T, {}, check=False)
    degs = set(S.degrees) & set(T.degrees)
    sb = {k: [(p, F.rank(p) * X.rank(p + k)) for p in F.degrees if X.rank(p + k)] for k in degs}
    tb = {k: [(p, F.rank(p) * Y.rank(p + k)) for p in F.degrees if Y.rank(p + k)] for k in degs}
    so, _ = _block_offsets(sb)
    to, _ = _block_offsets(tb)
    comps = {}
    for k in degs:
        M = _zeros(R, T.rank(k), S.rank(k))
        for p, _ in sb[k]:
            if (k, p) in to:
                _place(M, to[(k, p)], so[(k, p)], ExactMatrix.identity(R, F.rank(p)).kron(f.f(p + k)))
        comps[k] = M
    return ChainMap(S, T, comps, check=False)


def shift(F: ChainComplex, s: int) -> ChainComplex:
    """Σ^s F: (Σ^s F)_i = F_{i-s}, differentials multiplied by (-1)^s."""
    if s == 0:
        return F
    sign = -1 if s % 2 else 1
    diffs = {i + s: (D if sign > 0 else -D) for i, D in F.diffs.items()}
    return ChainComplex(
        F.ring,
        {i + s: n for i, n in F.ranks.items()},
        diffs,
        {i + s: P for i, P in F.relations.items()},
        check=False,
    )


def cone(f: ChainMap) -> ChainComplex:
    """Cone of ``f : Y -> Z``: degree i is Z_i ⊕ Y_{i-1}, ∂ = [[∂_Z, f],[0, -∂_Y]]."""
    Y, Z = f.source, f.target
    R = f.ring
    degs = set(Z.degrees) | {i + 1 for i in Y.degrees}
    ranks = {i: Z.rank(i) + Y.rank(i - 1) for i in degs}
    diffs = {}
    for i in degs:
        if not ranks.get(i - 1):
            continue
        top = hstack(R, [Z.d(i), f.f(i - 1)], Z.rank(i - 1))
        bot = hstack(R, [_zeros(R, Y.rank(i - 2), Z.rank(i)), -Y.d(i - 1)], Y.rank(i - 2))
        diffs[i] = vstack(R, [top, bot], ranks[i])
    relations = {}
    for i in degs:
        if i in Z.relations or (i - 1) in Y.relations:
            relations[i] = block_diag(R, [Z.rel(i), Y.rel(i - 1)])
    return ChainComplex(R, ranks, diffs, relations, check=False)


def direct_sum(F: ChainComplex, G: ChainComplex) -> ChainComplex:
    R = F.ring
    degs = set(F.degrees) | set(G.degrees)
    ranks = {i: F.rank(i) + G.rank(i) for i in degs}
    diffs = {i: block_diag(R, [F.d(i), G.d(i)]) for i in degs}
    relations = {
        i: block_diag(R, [F.rel(i), G.rel(i)]) for i in degs if i in F.relations or i in G.relations
    }
    return ChainComplex(R, ranks, diffs, relations, check=False)


def truncate_soft_above(F: ChainComplex, s: int) -> ChainComplex:
    """Keeps H_i for i < s and kills H_i for i >= s.

    Degree s-1 becomes F_{s-1} / im ∂_s; everything above is dropped.
    """
    R = F.ring
    ranks = {i: n for i, n in F.ranks.items() if i <= s - 1}
    diffs = {i: D for i, D in F.diffs.items() if i <= s - 1}
    relations = {i: P for i, P in F.relations.items() if i < s - 1}
    if F.rank(s - 1):
        top = hstack(R, [F.rel(s - 1), F.d(s)], F.rank(s - 1))
        if top.ncols:
            relations[s - 1] = top
    return ChainComplex(R, ranks, diffs, relations, check=False)


# ---------------------------------------------------------------------------
# pruning of free complexes
# ---------------------------------------------------------------------------


def prune(F: ChainComplex, maps=()):
    """Cancel constant-unit entries of the differentials of a free complex.

    Returns the smaller complex and the given chain maps ``F -> C``
    precomposed with the inclusion of the smaller complex.
    """
    from .modules import _is_const_unit

    if not F.is_free:
        return F, list(maps)
    R = F.ring
    ranks = dict(F.ranks)
    D = {i: [list(r) for r in F.d(i).rows] for i in F.degrees}
    maps = list(maps)
    comps = [{i: [list(r) for r in m.f(i).rows] for i in F.degrees} for m in maps]
    changed = True
    while changed:
        changed = False
        for i in sorted(D):
            M = D[i]
            hit = None
            for a, row in enumerate(M):
                for b, v in enumerate(row):
                    if _is_const_unit(R, v):
                        hit = (a, b)
                        break
                if hit:
                    break
            if hit is None:
                continue
            a, b = hit
            u_inv = R.unit_inverse(M[a][b])
            ncol = ranks.get(i, 0)
            # coefficients of the inclusion: column c picks up -u^{-1} M[a][c] e_b
            coef = [R.neg(R.mul(u_inv, M[a][c])) for c in range(ncol)]
            newM = []
            for r, row in enumerate(M):
                if r == a:
                    continue
                mb = row[b]
                if R.is_zero(mb):
                    newM.append([row[c] for c in range(ncol) if c != b])
                else:
                    newM.append([R.add(row[c], R.mul(mb, coef[c])) for c in range(ncol) if c != b])
            D[i] = newM
            if i + 1 in D:
                del D[i + 1][b]
            if i - 1 in D:
                D[i - 1] = [[v for c, v in enumerate(row) if c != a] for row in D[i - 1]]
            for comp in comps:
                if i in comp:
                    comp[i] = [
                        [R.add(row[c], R.mul(row[b], coef[c])) if not R.is_zero(row[b]) else row[c] for c in range(ncol) if c != b]
                        for row in comp[i]
                    ]
                if i - 1 in comp:
                    comp[i - 1] = [[v for c, v in enumerate(row) if c != a] for row in comp[i - 1]]
            ranks[i] -= 1
            ranks[i - 1] -= 1
            changed = True
            break
    diffs = {}
    for i, M in D.items():
        if ranks.get(i) and ranks.get(i - 1):
            diffs[i] = ExactMatrix._raw(R, M, ranks[i - 1], ranks[i])
    G = ChainComplex(R, ranks, diffs, check=False)
    new_maps = []
    for m, comp in zip(maps, comps):
        parts = {}
        for i in G.degrees:
            rows = comp.get(i)
            if rows is None:
                continue
            parts[i] = ExactMatrix._raw(R, rows, m.target.rank(i), ranks[i])
        new_maps.append(ChainMap(G, m.target, parts, check=False))
    return G, new_maps


# ---------------------------------------------------------------------------
# homological extent
# ---------------------------------------------------------------------------


class _Exact:
    """Marker returned by :func:`inf_sup_amp` for complexes with no homology."""

    def __repr__(self):
        return "EXACT"

    def __iter__(self):
        return iter((None, None, None))


EXACT = _Exact()


def nonzero_homology_degrees(F: ChainComplex) -> list:
    return [i for i in F.degrees if not F.homology(i).is_zero()]


def inf_sup_amp(F):
    """``(inf, sup, amp)`` of the nonzero homology, or ``EXACT``."""
    if isinstance(F, LocalizedChainComplex):
        degs = _localized_nonzero_degrees(F)
    elif isinstance(F, FpModule):
        degs = [] if F.is_zero() else [0]
    else:
        degs = nonzero_homology_degrees(F)
    if not degs:
        return EXACT
    return (min(degs), max(degs), max(degs) - min(degs))


def _localized_nonzero_degrees(L: LocalizedChainComplex) -> list:
    """Nonzero homology of Č(x) ⊗ X for a single element x.

    From the long exact sequence, H_n ≠ 0 iff Γ_x(H_n X) ≠ 0 or the
    cokernel of N -> N_x is nonzero for N = H_{n+1} X, which for finitely
    generated N happens iff N ≠ Γ_x(N) + xN.
    """
    if L.n == 0:
        return nonzero_homology_degrees(L.coefficients)
    if L.n > 1:
        raise NotTabulated("homology of Čech complexes on two or more elements is not materialized")
    from .derived import torsion_submodule
    from .grobner import Ideal

    R = L.ring
    X = L.coefficients
    a = Ideal(R, [L.elements[0]])
    H = {i: X.homology(i) for i in X.degrees}
    out = []
    for n in range(X.lo - 1, X.hi + 1):
        hit = False
        if n in H and not H[n].is_zero():
            hit = not torsion_submodule(a, H[n]).module.is_zero()
        N = H.get(n + 1)
        if not hit and N is not None and not N.is_zero():
            tors = torsion_submodule(a, N)
            xI = ExactMatrix(R, [[L.elements[0] if i == j else R.zero for j in range(N.ngens)] for i in range(N.ngens)])
            Q = FpModule(R, N.ngens, hstack(R, [N.presentation, tors.inclusion, xI], N.ngens))
            hit = not Q.is_zero()
        if hit:
            out.append(n)
    return out
