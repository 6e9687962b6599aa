"""Small support, co-support at maximal ideals and Bass numbers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .complexes import ChainComplex, ChainMap, cone, direct_sum, koszul_complex, tensor_complexes
from .derived import as_complex, derived_hom, derived_hom_complex, derived_tensor_complex, local_cohomology_fiber
from .errors import NotCertifiable, NotMaximal, NotTabulated, RingMismatch
from .exactla import ExactMatrix, rank
from .grobner import (
    Ideal,
    PrimeIdeal,
    annihilator,
    ideal_intersection,
    ideal_product,
    ideal_sum,
    minimal_primes_monomial,
    radical_contains,
)
from .modules import FpModule
from .polys import PolyRing


@dataclass
class SupportSet:
    """The Zariski-closed set ``V(defining_ideal)``."""

    defining_ideal: Ideal
    note: str = ""

    @property
    def ring(self):
        return self.defining_ideal.ring

    def contains(self, p: PrimeIdeal) -> bool:
        return self.defining_ideal.is_subset(p.ideal)

    def is_empty(self) -> bool:
        return self.defining_ideal.is_unit

    def is_subset(self, other: "SupportSet") -> bool:
        """``V(I) ⊆ V(J)`` iff ``J ⊆ √I``."""
        return radical_contains(self.defining_ideal, other.defining_ideal)

    def union(self, other: "SupportSet") -> "SupportSet":
        return SupportSet(ideal_product(self.defining_ideal, other.defining_ideal), "union")

    def intersection(self, other: "SupportSet") -> "SupportSet":
        return SupportSet(ideal_sum(self.defining_ideal, other.defining_ideal), "intersection")

    def format(self) -> str:
        return f"V{self.defining_ideal.format()}"


def closed_set_equal(A: SupportSet, B: SupportSet) -> bool:
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    return A.is_subset(B) and B.is_subset(A)


@dataclass
class MembershipVerdict:
    prime: PrimeIdeal
    member: str  # "yes", "no" or "undetected"
    witness: dict = field(default_factory=dict)

    @property
    def is_member(self) -> bool:
        return self.member == "yes"

    def format(self) -> str:
        extra = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"{self.member}" + (f" ({extra})" if extra else "")


def _ann_intersection(modules, R, note=""):
    ideal = Ideal(R, [R.one])
    used = []
    for i, H in modules:
        if H.is_zero():
            continue
        ideal = ideal_intersection(ideal, annihilator(H))
        used.append(i)
    return SupportSet(ideal, note or f"annihilators of degrees {used}")


def supp_fg(X) -> SupportSet:
    """Support of a complex with finitely generated homology."""
    Xc = as_complex(X)
    return _ann_intersection([(i, Xc.homology(i)) for i in Xc.degrees], Xc.ring)


def supp_of_window(C: ChainComplex, window) -> SupportSet:
    return _ann_intersection([(i, C.homology(i)) for i in range(window[0], window[1] + 1)], C.ring)


def _require_certified(p):
    if not isinstance(p, PrimeIdeal) or p.certificate not in PrimeIdeal.CERTIFICATES:
        raise NotCertifiable("membership tests need a certified prime")


def supp_membership(p: PrimeIdeal, X) -> MembershipVerdict:
    """Is ``p`` in the small support of ``X``?

    Tensors with the Koszul complex on the generators of ``p`` and asks
    whether some homology module survives localization at ``p``.
    """
    _require_certified(p)
    Xc = as_complex(X)
    R = Xc.ring
    if not Xc.degrees:
        return MembershipVerdict(p, "no", {"reason": "zero complex"})
    K = koszul_complex(p.ideal.gens, R)
    T = tensor_complexes(K, Xc)
    for i in T.degrees:
        H = T.homology(i)
        if H.is_zero():
            continue
        if annihilator(H).is_subset(p.ideal):
            return MembershipVerdict(p, "yes", {"degree": i, "homology": H.format_invariants()})
    return MembershipVerdict(p, "no", {})


def _is_regular(R) -> bool:
    return not isinstance(R, PolyRing) or not R.has_relations


def _krull_dim(R) -> int:
    if isinstance(R, PolyRing):
        return R.n
    return 0 if R.is_field else 1


def default_bound(X) -> int:
    Xc = as_complex(X)
    amp = (Xc.hi - Xc.lo) if Xc.degrees else 0
    return _krull_dim(Xc.ring) + amp + 2


def cosupp_membership_maximal(m: PrimeIdeal, X, bound: int | None = None) -> MembershipVerdict:
    """Is the maximal ideal ``m`` in the co-support of ``X``?

    Scans ``Ext^i(R/m, X)`` for ``0 <= i <= bound`` (shifted by the extent of
    ``X``).  Over a regular ring a bound of dimension plus amplitude settles
    the question; otherwise a negative answer is only up to the bound.
    """
    if not isinstance(m, PrimeIdeal) or not m.is_maximal:
        raise NotMaximal("co-support membership is computed at certified maximal ideals")
    Xc = as_complex(X)
    R = Xc.ring
    if bound is None:
        bound = default_bound(Xc)
    if not Xc.degrees:
        return MembershipVerdict(m, "no", {"reason": "zero complex"})
    k = FpModule.cyclic(R, m.ideal.gens)
    lo = Xc.lo - bound
    H = derived_hom_complex(k, Xc, (lo, Xc.hi))
    for j in range(Xc.hi, lo - 1, -1):
        E = H.homology(j)
        if not E.is_zero():
            return MembershipVerdict(m, "yes", {"ext_degree": -j, "module": E.format_invariants()})
    amp = Xc.hi - Xc.lo
    if _is_regular(R) and bound >= _krull_dim(R) + amp:
        return MembershipVerdict(m, "no", {"bound": bound, "certified": "regular ring"})
    return MembershipVerdict(m, "undetected", {"bound": bound})


def cosupp_membership(p: PrimeIdeal, X, bound: int | None = None) -> MembershipVerdict:
    if p.is_maximal:
        return cosupp_membership_maximal(p, X, bound)
    raise NotTabulated("co-support at non-maximal primes of a polynomial ring is not computed")


def cosupport_set(X):
    """Co-support as a set is only available in the DVR calculus."""
    raise NotTabulated("the co-support of a complex over a polynomial ring is not computed as a set")


def rhom_from_fraction_field(R):
    """Whether RHom(Frac R, R) vanishes is not decided here."""
    raise NotTabulated("RHom out of the fraction field is not representable by finite data")


def dualizing_cosupport(R):
    raise NotTabulated("co-support of a dualizing complex is only tabulated for the DVR calculus")


def cosupport_one_dimensional(R):
    raise NotTabulated("co-support over non-local one-dimensional domains needs Ext out of the fraction field")


# ---------------------------------------------------------------------------
# Bass numbers
# ---------------------------------------------------------------------------


def _fraction_free_rank(rows, R) -> int:
    """Rank over the fraction field of a domain by cross-multiplied elimination."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not R.is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            a = rows[i][c]
            if R.is_zero(a):
                continue
            rows[i] = [R.sub(R.mul(p, x), R.mul(a, y)) for x, y in zip(rows[i], rows[r])]
            g = _content_gcd(rows[i], R)
            if g is not None:
                rows[i] = g
        r += 1
        if r == len(rows):
            break
    return r


def _content_gcd(row, R):
    """Divide a row by a common monomial factor to slow coefficient growth."""
    nz = [v for v in row if not R.is_zero(v)]
    if not nz:
        return None
    common = None
    for v in nz:
        for e in v.terms:
            common = e if common is None else tuple(min(a, b) for a, b in zip(common, e))
    if not any(common):
        return None
    return [R.from_terms({tuple(a - b for a, b in zip(e, common)): c for e, c in v.terms.items()}) for v in row]


def _rank_mod_prime(P: ExactMatrix, p: PrimeIdeal) -> int:
    R = P.ring
    if p.certificate == "monomial-prime":
        S = set(p.monomial_variables())
        F = R.free

        def kill(v):
            return F.from_terms({e: c for e, c in R.lift(v).terms.items() if not any(e[i] for i in S)})

        rows = [[kill(v) for v in row] for row in P.rows]
        return _fraction_free_rank(rows, F)
    if p.is_maximal:
        A = p.residue_field()
        d = A.dim
        k = R.base
        big = [[k.zero] * (d * P.ncols) for _ in range(d * P.nrows)]
        for r, row in enumerate(P.rows):
            for c, v in enumerate(row):
                if R.is_zero(v):
                    continue
                Mv = A.mult_matrix(v)
                for a in range(d):
                    for b in range(d):
                        big[r * d + a][c * d + b] = Mv.rows[a][b]
        return rank(ExactMatrix._raw(k, big, d * P.nrows, d * P.ncols)) // d
    raise NotCertifiable("Bass numbers need a monomial prime or a maximal ideal")


def bass_numbers(p: PrimeIdeal, M, window) -> dict:
    """``μ^i(p, M)`` for ``i`` in ``window`` from the generic rank of
    ``Ext^i(R/p, M)`` over ``R/p``."""
    if p.certificate != "monomial-prime" and not p.is_maximal:
        raise NotCertifiable("Bass numbers need a monomial prime or a maximal ideal")
    R = p.ring
    lo, hi = window
    Rp = FpModule.cyclic(R, p.ideal.gens) if p.ideal.gens else FpModule.free(R, 1)
    E = derived_hom(Rp, M, (-hi, -lo))
    out = {}
    for i in range(lo, hi + 1):
        H = E[-i]
        if H.ngens == 0:
            out[i] = 0
            continue
        out[i] = H.ngens - _rank_mod_prime(H.presentation, p)
    return out


# ---------------------------------------------------------------------------
# maximal-ideal panels
# ---------------------------------------------------------------------------


def grid_maximal_ideals(R: PolyRing, box) -> list:
    """``(x_1 - a_1, ..., x_n - a_n)`` for points of the box, followed by
    the ideal of all variables when it is not already a grid point."""
    out = []
    for point in itertools.product(*box):
        ideal = Ideal(R, [R.sub(v, R.coerce(a)) for v, a in zip(R.gens(), point)])
        out.append(PrimeIdeal(ideal, True, "maximal-verified"))
    if not any(all(a == 0 for a in pt) for pt in itertools.product(*box)):
        out.append(PrimeIdeal(Ideal(R, R.gens()), True, "monomial-prime"))
    return out


def local_cohomology_support_panel(a: Ideal, panel, window=None) -> list:
    """For each panel ideal m: (m, fiber nonzero?, a ⊆ m?)."""
    R = a.ring
    n = len(a.gens)
    if window is None:
        window = (-n, 0)
    rows = []
    for m in panel:
        dims = local_cohomology_fiber(m, a, FpModule.free(R, 1), window)
        rows.append((m, any(dims.values()), a.is_subset(m.ideal)))
    return rows


# ---------------------------------------------------------------------------
# identity checks on a corpus
# ---------------------------------------------------------------------------


@dataclass
class IdentityResult:
    identity: str
    case: str
    passed: bool
    detail: str = ""


def _regular_window_tensor(X, Y):
    n = _krull_dim(X.ring)
    return (X.lo + Y.lo, X.hi + Y.hi + n)


def _regular_window_hom(M, X):
    n = _krull_dim(X.ring)
    return (X.lo - M.hi - n, X.hi - M.lo)


def check_tensor_support(X, Y) -> tuple:
    X, Y = as_complex(X), as_complex(Y)
    if not X.degrees or not Y.degrees:
        return True, "zero input"
    w = _regular_window_tensor(X, Y)
    T = derived_tensor_complex(X, Y, w)
    lhs = supp_of_window(T, w)
    rhs = supp_fg(X).intersection(supp_fg(Y))
    ok = closed_set_equal(lhs, rhs)
    return ok, f"{lhs.format()} vs {rhs.format()}"


def check_rhom_support(M, X) -> tuple:
    M, X = as_complex(M), as_complex(X)
    if not M.degrees or not X.degrees:
        return True, "zero input"
    w = _regular_window_hom(M, X)
    H = derived_hom_complex(M, X, w)
    lhs = supp_of_window(H, w)
    rhs = supp_fg(M).intersection(supp_fg(X))
    ok = closed_set_equal(lhs, rhs)
    return ok, f"{lhs.format()} vs {rhs.format()}"


def check_cone_subadditivity(f: ChainMap) -> tuple:
    C = cone(f)
    sX, sY, sC = supp_fg(f.source), supp_fg(f.target), supp_fg(C)
    ok = (
        sC.is_subset(sX.union(sY))
        and sY.is_subset(sX.union(sC))
        and sX.is_subset(sY.union(sC))
    )
    return ok, f"cone {sC.format()}, source {sX.format()}, target {sY.format()}"


def check_sum_support(X, Y) -> tuple:
    X, Y = as_complex(X), as_complex(Y)
    lhs = supp_fg(direct_sum(X, Y))
    rhs = supp_fg(X).union(supp_fg(Y))
    return closed_set_equal(lhs, rhs), f"{lhs.format()} vs {rhs.format()}"


def _minimal_primes_of_set(S: SupportSet):
    if S.is_empty():
        return []
    gb = S.defining_ideal.groebner_basis()
    return minimal_primes_monomial(Ideal(S.ring, gb))


def check_minimal_primes(X) -> tuple:
    """Minimal primes of the small support (Koszul membership tests) versus
    those of the large support (union of annihilator varieties)."""
    X = as_complex(X)
    R = X.ring
    big = []
    for i in X.degrees:
        H = X.homology(i)
        if not H.is_zero():
            big.extend(_minimal_primes_of_set(SupportSet(annihilator(H))))
    keys = {tuple(p.monomial_variables()) for p in big}
    minimal_big = sorted(k for k in keys if not any(set(o) < set(k) for o in keys))
    small = _minimal_primes_of_set(supp_fg(X))
    minimal_small = sorted(tuple(p.monomial_variables()) for p in small)
    ok = minimal_big == minimal_small
    if ok:
        for p in small:
            if not supp_membership(p, X).is_member:
                return False, f"{p.format()} minimal but not detected by the Koszul test"
    names = lambda ks: ["(" + ",".join(R.names[i] for i in k) + ")" for k in ks]
    return ok, f"{names(minimal_small)} vs {names(minimal_big)}"


def check_local_cohomology(a: Ideal, panel) -> tuple:
    rows = local_cohomology_support_panel(a, panel)
    bad = [m.format() for m, nz, contained in rows if nz != contained]
    return not bad, ("mismatch at " + ", ".join(bad)) if bad else f"{len(rows)} panel points"


def verify_support_identities(cases, panel=None) -> list:
    """Run the support identities on a list of corpus cases.

    Each case is a dict with keys ``name``, ``X``, ``Y``, ``M``, ``map`` and
    ``a``; missing keys skip the corresponding identity.
    """
    out = []
    for case in cases:
        name = case["name"]
        X = case.get("X")
        if X is not None and case.get("Y") is not None:
            ok, d = check_tensor_support(X, case["Y"])
            out.append(IdentityResult("tensor-support", name, ok, d))
        if X is not None and case.get("M") is not None:
            ok, d = check_rhom_support(case["M"], X)
            out.append(IdentityResult("rhom-support", name, ok, d))
        if case.get("map") is not None:
            ok, d = check_cone_subadditivity(case["map"])
            out.append(IdentityResult("cone-subadditivity", name, ok, d))
        if X is not None and case.get("monomial", False):
            ok, d = check_minimal_primes(X)
            out.append(IdentityResult("minimal-primes", name, ok, d))
        if case.get("a") is not None and panel is not None:
            ok, d = check_local_cohomology(case["a"], panel)
            out.append(IdentityResult("local-cohomology-support", name, ok, d))
    return out
