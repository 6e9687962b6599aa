"""Derived functors on finitely presented complexes.

Everything is computed from finite free resolutions: a module is resolved by
iterated syzygies, a complex with presented terms by attaching free
generators that kill the cycles of the mapping cone of the augmentation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    ChainComplex,
    ChainMap,
    LocalizedChainComplex,
    cech_complex,
    hom_complexes,
    prune,
    tensor_complexes,
)
from .errors import NotMaximal
from .exactla import ExactMatrix, hstack, rank
from .grobner import Ideal, PrimeIdeal
from .modules import FpModule, submodule_quotient

GUARD = 2


def as_complex(X) -> ChainComplex:
    if isinstance(X, FpModule):
        return ChainComplex.from_module(X)
    return X


@dataclass
class ResolutionBundle:
    target: object
    resolution: ChainComplex
    augmentation: ChainMap
    length: int


def free_resolution(X, length: int) -> ResolutionBundle:
    """Free complex ``F`` with a map to ``X`` inducing isomorphisms on
    homology below the top computed degree ``lo(X) + length``."""
    C = as_complex(X)
    if not C.degrees:
        return ResolutionBundle(X, C, ChainMap.identity(C), 0)
    if C.is_free:
        return ResolutionBundle(X, C, ChainMap.identity(C), length)
    top = C.lo + length
    if len(C.degrees) == 1 and isinstance(X, FpModule):
        F, eps = _resolve_module(X, C, length)
    else:
        F, eps = _resolve_complex(C, top)
    return ResolutionBundle(X, F, eps, length)


def _resolve_module(M: FpModule, C: ChainComplex, length: int):
    R = M.ring
    mm = M.minimize()
    P = mm.module.presentation
    g = mm.module.ngens
    ranks = {0: g}
    diffs = {}
    cols = [c for c in P.columns() if any(not R.is_zero(v) for v in c)]
    prev_rank = g
    for k in range(1, length + 1):
        if not cols:
            break
        D = ExactMatrix.from_columns(R, cols, prev_rank)
        diffs[k] = D
        ranks[k] = len(cols)
        prev_rank = len(cols)
        if k == length:
            break
        cols = R.kernel(D)
    F = ChainComplex(R, ranks, diffs, check=False)
    eps = ChainMap(F, C, {0: mm.to_old}, check=False)
    F, (eps,) = prune(F, [eps])
    return F, eps


def _resolve_complex(C: ChainComplex, top: int):
    """Cone-cycle resolution of a complex with presented terms."""
    R = C.ring
    ranks, diffs, eps = {}, {}, {}
    for i in range(C.lo, top + 1):
        nf = ranks.get(i - 1, 0)
        nc = C.rank(i)
        if nf + nc == 0:
            continue
        # cycles (f, c) of the cone in degree i
        nF2 = ranks.get(i - 2, 0)
        nC1 = C.rank(i - 1)
        P1 = C.rel(i - 1)
        width = nf + nc + P1.ncols
        rows = []
        if nF2:
            dF = diffs.get(i - 1, ExactMatrix.zeros(R, nF2, nf))
            for r in range(nF2):
                rows.append(list(dF.rows[r]) + [R.zero] * (nc + P1.ncols))
        if nC1:
            e1 = eps.get(i - 1, ExactMatrix.zeros(R, nC1, nf))
            dC = C.d(i)
            for r in range(nC1):
                rows.append(list(e1.rows[r]) + list(dC.rows[r]) + list(P1.rows[r]))
        if rows:
            A = ExactMatrix(R, rows, len(rows), width)
            ker = R.kernel(A)
            zcols = [v[: nf + nc] for v in ker if any(not R.is_zero(x) for x in v[: nf + nc])]
        else:
            zcols = [[R.one if j == k else R.zero for j in range(nf + nc)] for k in range(nf + nc)]
        if not zcols:
            continue
        Z = ExactMatrix.from_columns(R, zcols, nf + nc)
        # boundaries coming from C_{i+1} and the relations of C_i
        bC = hstack(R, [C.d(i + 1), C.rel(i)], nc)
        B = ExactMatrix(R, [[R.zero] * bC.ncols for _ in range(nf)] + [list(r) for r in bC.rows], nf + nc, bC.ncols)
        H = submodule_quotient(Z, B)
        mm = H.minimize()
        gens = Z @ mm.to_old
        if gens.ncols == 0:
            continue
        ranks[i] = gens.ncols
        if nf:
            diffs[i] = -gens.submatrix(range(nf), range(gens.ncols))
        if nc:
            eps[i] = gens.submatrix(range(nf, nf + nc), range(gens.ncols))
    F = ChainComplex(R, ranks, diffs, check=False)
    aug = ChainMap(F, C, eps, check=False)
    F, (aug,) = prune(F, [aug])
    return F, aug


def _tensor_top(window_hi, Y: ChainComplex) -> int:
    return window_hi - (Y.lo if Y.degrees else 0) + 1 + GUARD


def derived_tensor_complex(X, Y, window, resolve: str = "auto") -> ChainComplex:
    """A complex whose homology in ``window`` is that of ``X ⊗^L Y``."""
    Xc, Yc = as_complex(X), as_complex(Y)
    lo, hi = window
    if resolve == "auto":
        if Xc.is_free or Yc.is_free:
            return tensor_complexes(Xc, Yc)
        resolve = "first"
    if resolve == "first":
        F = free_resolution(Xc, max(0, _tensor_top(hi, Yc) - (Xc.lo or 0))).resolution
        return tensor_complexes(F, Yc)
    G = free_resolution(Yc, max(0, _tensor_top(hi, Xc) - (Yc.lo or 0))).resolution
    return tensor_complexes(Xc, G)


def derived_tensor(X, Y, window, resolve: str = "auto") -> dict:
    """Homology of ``X ⊗^L Y`` in the degree window ``(lo, hi)``."""
    T = derived_tensor_complex(X, Y, window, resolve)
    return {n: T.homology(n) for n in range(window[0], window[1] + 1)}


def derived_hom_complex(X, Y, window) -> ChainComplex:
    Xc, Yc = as_complex(X), as_complex(Y)
    lo, _ = window
    if Xc.is_free:
        F = Xc
    else:
        ymax = Yc.hi if Yc.degrees else 0
        top = ymax - lo + 1 + GUARD
        F = free_resolution(Xc, max(0, top - (Xc.lo or 0))).resolution
    return hom_complexes(F, Yc)


def derived_hom(X, Y, window) -> dict:
    """Homology of ``RHom(X, Y)`` in ``(lo, hi)``; Ext^i sits in degree -i."""
    H = derived_hom_complex(X, Y, window)
    return {n: H.homology(n) for n in range(window[0], window[1] + 1)}


def tor(M, N, upto: int) -> dict:
    return derived_tensor(M, N, (0, upto))


def ext(M, N, upto: int) -> dict:
    H = derived_hom(M, N, (-upto, 0))
    return {i: H[-i] for i in range(upto + 1)}


# ---------------------------------------------------------------------------
# torsion
# ---------------------------------------------------------------------------


@dataclass
class TorsionSubmodule:
    module: FpModule
    inclusion: ExactMatrix
    ambient: FpModule


def _colon(N: ExactMatrix, f, g: int):
    """``{v in R^g : f v in span N}`` as a generator matrix."""
    R = N.ring
    fI = ExactMatrix(R, [[f if i == j else R.zero for j in range(g)] for i in range(g)], g, g)
    ker = R.kernel(hstack(R, [fI, N], g))
    cols = [v[:g] for v in ker if any(not R.is_zero(x) for x in v[:g])]
    return ExactMatrix.from_columns(R, cols, g)


def _intersect(U: ExactMatrix, V: ExactMatrix):
    R = U.ring
    g = U.nrows
    ker = R.kernel(hstack(R, [U, -V], g))
    cols = [U.apply(v[: U.ncols]) for v in ker]
    cols = [c for c in cols if any(not R.is_zero(x) for x in c)]
    return ExactMatrix.from_columns(R, cols, g)


def _span_contains(A: ExactMatrix, B: ExactMatrix) -> bool:
    R = A.ring
    return all(R.solve(A, c) is not None for c in B.columns() if any(not R.is_zero(x) for x in c))


def torsion_submodule(a: Ideal, M: FpModule) -> TorsionSubmodule:
    """``Γ_a(M)`` as a presented module with its inclusion into ``M``."""
    R = M.ring
    g = M.ngens
    N = M.presentation
    if g == 0:
        return TorsionSubmodule(M, ExactMatrix.zeros(R, 0, 0), M)
    gens = list(a.gens)
    if not gens:
        z = FpModule(R, 0)
        return TorsionSubmodule(z, ExactMatrix.zeros(R, g, 0), M)
    while True:
        nxt = None
        for f in gens:
            Q = _colon(N, f, g)
            nxt = Q if nxt is None else _intersect(nxt, Q)
        if _span_contains(N, nxt):
            break
        N = nxt
    sub = submodule_quotient(N, M.presentation)
    mm = sub.minimize()
    incl = N @ mm.to_old
    return TorsionSubmodule(mm.module, incl, M)


# ---------------------------------------------------------------------------
# local cohomology fibers at maximal ideals
# ---------------------------------------------------------------------------


def _base_complex(F: ChainComplex, A) -> ChainComplex:
    """``F ⊗ R/m`` written over the base field through the regular
    representation of the residue field ``A``."""
    k = F.ring.base
    d = A.dim
    ranks = {i: d * n for i, n in F.ranks.items()}
    diffs = {}
    for i, D in F.diffs.items():
        rows = [[k.zero] * (d * D.ncols) for _ in range(d * D.nrows)]
        for r, row in enumerate(D.rows):
            for c, v in enumerate(row):
                if F.ring.is_zero(v):
                    continue
                Mv = A.mult_matrix(v)
                for a in range(d):
                    for b in range(d):
                        rows[r * d + a][c * d + b] = Mv.rows[a][b]
        diffs[i] = ExactMatrix._raw(k, rows, d * D.nrows, d * D.ncols)
    return ChainComplex(k, ranks, diffs, check=False)


def _field_betti(F: ChainComplex, lo, hi) -> dict:
    rk = {i: rank(F.d(i)) for i in range(lo, hi + 2)}
    return {i: F.rank(i) - rk[i] - rk[i + 1] for i in range(lo, hi + 1)}


def local_cohomology_fiber(m: PrimeIdeal, a: Ideal, X, window) -> dict:
    """Dimensions over κ(m) of ``H_*(κ(m) ⊗^L RΓ_a X)`` in ``window``.

    A Čech term localized at ``s`` survives the base change iff ``s ∉ m``,
    and then it is just a copy of ``κ(m) ⊗ F``.
    """
    if not isinstance(m, PrimeIdeal) or not m.is_maximal:
        raise NotMaximal("local cohomology fibers need a certified maximal ideal")
    R = m.ring
    lo, hi = window
    Xc = as_complex(X)
    A = m.residue_field()
    d = A.dim
    n = len(a.gens)
    if not Xc.degrees:
        return {i: 0 for i in range(lo, hi + 1)}
    if Xc.is_free:
        F = Xc
    else:
        F = free_resolution(Xc, max(0, hi + n + 1 + GUARD - Xc.lo)).resolution
    Fk = _base_complex(F, A)
    cech = cech_complex(a.gens, R)
    k = R.base
    alive = {}
    for s in range(n + 1):
        alive[-s] = [S for S in cech.tags(-s) if not m.ideal.contains(cech.tag_element(S))]
    ranks = {deg: len(ts) for deg, ts in alive.items()}
    diffs = {}
    for deg in range(0, -n, -1):
        src, dst = alive[deg], alive.get(deg - 1, [])
        if not src or not dst:
            continue
        index = {S: r for r, S in enumerate(dst)}
        rows = [[k.zero] * len(src) for _ in dst]
        for c, S in enumerate(src):
            for j in range(n):
                if j in S:
                    continue
                T = tuple(sorted(S + (j,)))
                if T in index:
                    rows[index[T]][c] = k.from_int(LocalizedChainComplex.sign(S, j))
        diffs[deg] = ExactMatrix._raw(k, rows, len(dst), len(src))
    C = ChainComplex(k, ranks, diffs, check=False)
    T = tensor_complexes(C, Fk)
    if not T.degrees:
        return {i: 0 for i in range(lo, hi + 1)}
    dims = _field_betti(T, lo, hi)
    return {i: dims[i] // d for i in range(lo, hi + 1)}


# ---------------------------------------------------------------------------
# derived completion of finitely generated complexes
# ---------------------------------------------------------------------------


@dataclass
class CompletionTagged:
    """A homology module standing for its ``a``-adic completion."""

    module: FpModule
    ideal: Ideal

    def is_zero(self) -> bool:
        return self.module.is_zero()

    def is_finitely_generated(self) -> bool:
        return True

    def format(self) -> str:
        return f"completion at {self.ideal.format()} of {self.module.format_invariants()}"


def derived_completion_fg(a: Ideal, X) -> dict:
    Xc = as_complex(X)
    return {i: CompletionTagged(Xc.homology(i), a) for i in Xc.degrees}
