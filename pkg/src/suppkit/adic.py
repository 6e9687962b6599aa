"""Adic finiteness, monomial prime filtrations and detecting
quasi-isomorphisms after applying Koszul, quotient or RHom functors."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import dvrcalc
from .complexes import ChainMap, hom_map, koszul_complex, tensor_complexes, tensor_map
from .derived import (
    GUARD,
    as_complex,
    derived_completion_fg,
    derived_hom,
    derived_tensor,
    free_resolution,
    local_cohomology_fiber,
)
from .dvrcalc import DvrObject
from .errors import ConditionDisagreement, IncompleteAmbient, NotMonomial, PreconditionFailed
from .exactla import ExactMatrix, hstack
from .grobner import Ideal, PrimeIdeal
from .modules import FpModule, submodule_quotient
from .polys import PolyRing
from .support import (
    SupportSet,
    _krull_dim,
    closed_set_equal,
    grid_maximal_ideals,
    supp_fg,
    supp_membership,
    supp_of_window,
)

CONDITIONS = ("koszul", "quotient", "rhom-quotient", "completion")


@dataclass
class AdicVerdict:
    subject: object
    ideal: object
    verdict: bool
    condition_results: dict
    support_ok: bool
    bound: int | None = None
    notes: list = field(default_factory=list)

    def format(self) -> str:
        conds = ", ".join(
            f"{k}={'n/a' if v is None else ('yes' if v else 'no')}" for k, v in self.condition_results.items()
        )
        b = "" if self.bound is None else f", bound {self.bound}"
        return f"{'adically finite' if self.verdict else 'not adically finite'} ({conds}, support={'yes' if self.support_ok else 'no'}{b})"


def _agree(results: dict, subject) -> bool:
    values = {v for v in results.values() if v is not None}
    if len(values) > 1:
        raise ConditionDisagreement(f"finiteness conditions disagree on {subject!r}: {results}")
    return values.pop() if values else True


def _dvr_verdict(X: DvrObject, a: str) -> AdicVerdict:
    fg = dvrcalc.is_finitely_generated
    K = dvrcalc.koszul_object(a, X.complete)
    Ra = dvrcalc.quotient_object(a, X.complete)
    results = {
        "koszul": fg(dvrcalc.dvr_tensor(K, X)),
        "quotient": fg(dvrcalc.dvr_tensor(Ra, X)),
        "rhom-quotient": fg(dvrcalc.dvr_rhom(Ra, X)),
    }
    notes = []
    try:
        results["completion"] = fg(dvrcalc.dvr_lambda(X, a))
    except IncompleteAmbient:
        results["completion"] = None
        notes.append("completion condition skipped: ambient ring not complete")
    cond = _agree(results, X)
    closed = {"0", "m"} if a == "0" else {"m"}
    support_ok = dvrcalc.dvr_supp(X) <= closed
    verdict = cond and support_ok
    if verdict != dvrcalc.dvr_adically_finite(X, a):
        raise ConditionDisagreement(f"closed-form verdict disagrees for {X.format()} at {a}")
    return AdicVerdict(X, a, verdict, results, support_ok, None, notes)


def _all_presented(H: dict) -> bool:
    return all(isinstance(M, FpModule) for M in H.values())


def is_adically_finite(X, a, bound: int | None = None) -> AdicVerdict:
    """Decide ``a``-adic finiteness and cross-check the equivalent conditions.

    For DVR objects ``a`` is ``"0"`` or ``"m"``.  For presented complexes the
    homology in every condition is finitely generated by construction; the
    conditions are still computed in the window ``bound`` degrees past the
    extent of ``X`` and the Koszul support is compared with
    ``supp X ∩ V(a)``.
    """
    if isinstance(X, DvrObject):
        dvrcalc._check_ideal(a)
        return _dvr_verdict(X, a)
    Xc = as_complex(X)
    R = Xc.ring
    if bound is None:
        bound = _krull_dim(R) + 2
    if not Xc.degrees:
        results = {c: True for c in CONDITIONS}
        return AdicVerdict(X, a, True, results, True, bound, ["zero complex"])
    K = koszul_complex(a.gens, R)
    KX = tensor_complexes(K, Xc)
    Ra = FpModule.cyclic(R, a.gens)
    wt = (Xc.lo, Xc.hi + bound)
    wh = (Xc.lo - bound, Xc.hi)
    results = {
        "koszul": _all_presented(KX.homology_all()),
        "quotient": _all_presented(derived_tensor(Ra, Xc, wt)),
        "rhom-quotient": _all_presented(derived_hom(Ra, Xc, wh)),
        "completion": all(c.is_finitely_generated() for c in derived_completion_fg(a, Xc).values()),
    }
    notes = ["completion condition via the finitely generated shortcut"]
    cond = _agree(results, X)
    sX = supp_fg(Xc)
    sa = SupportSet(a)
    support_ok = sX.is_subset(sa)
    # supp(K ⊗ X) = supp X ∩ V(a)
    kw = (KX.lo, KX.hi) if KX.degrees else (0, 0)
    if not closed_set_equal(supp_of_window(KX, kw), sX.intersection(sa)):
        raise ConditionDisagreement("support of the Koszul complex on X is not supp X ∩ V(a)")
    return AdicVerdict(X, a, cond and support_ok, results, support_ok, bound, notes)


# ---------------------------------------------------------------------------
# prime filtrations of monomial modules
# ---------------------------------------------------------------------------


@dataclass
class PrimeFiltration:
    """``0 = N_0 ⊆ ... ⊆ N_t = M``; ``steps[i]`` holds generators of
    ``N_{i+1}`` as columns in ``R^g`` and ``labels[i]`` is the prime with
    ``N_{i+1}/N_i ≅ R/p``."""

    module: FpModule
    steps: list
    labels: list

    def format(self) -> str:
        return ", ".join(f"R/{p.format()}" for p in self.labels)


def _divides(u, w) -> bool:
    return all(a <= b for a, b in zip(u, w))


def _minimalize(gens) -> list:
    gens = sorted(set(gens), key=lambda e: (sum(e), tuple(-x for x in e)))
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def _colon_monomial(gens, u) -> list:
    return _minimalize(tuple(max(0, a - b) for a, b in zip(g, u)) for g in gens)


def _is_variable(e) -> bool:
    return sum(e) == 1


def _cyclic_filtration(gens, n):
    """Successive ``(u, variables)`` with ``((I + (earlier u)) : u)`` prime."""
    out = []
    current = _minimalize(gens)
    zero = (0,) * n
    while not any(g == zero for g in current):
        u = zero
        while True:
            col = _colon_monomial(current, u)
            w = next((g for g in col if not _is_variable(g)), None)
            if w is None:
                break
            x = max(i for i, a in enumerate(w) if a)
            u = tuple(a + b - (1 if i == x else 0) for i, (a, b) in enumerate(zip(u, w)))
        out.append((u, tuple(sorted(g.index(1) for g in col))))
        current = _minimalize(current + [u])
    return out


def _monomial_exponent(R, f):
    if not f.is_monomial():
        raise NotMonomial(f"{R.format(f)} is not a monomial")
    return next(iter(f.terms))


def prime_filtration(M: FpModule) -> PrimeFiltration:
    """Prime filtration of a direct sum of cyclic monomial modules."""
    R = M.ring
    if not isinstance(R, PolyRing):
        raise NotMonomial("prime filtrations need a polynomial ring")
    if not all(h.is_monomial() for h in R.relation_gb):
        raise NotMonomial("ring relations must be monomials")
    g = M.ngens
    per_row = {i: [] for i in range(g)}
    for col in M.presentation.columns():
        nz = [(i, v) for i, v in enumerate(col) if not R.is_zero(v)]
        if not nz:
            continue
        if len(nz) != 1:
            raise NotMonomial("each relation must involve a single generator")
        i, v = nz[0]
        per_row[i].append(_monomial_exponent(R, R.lift(v)))
    relations = [next(iter(h.terms)) for h in R.relation_gb]
    steps, labels = [], []
    span = []
    for i in range(g):
        for u, S in _cyclic_filtration(per_row[i] + relations, R.n):
            vec = [R.zero] * g
            vec[i] = R.from_terms({u: R.base.one})
            span = span + [vec]
            steps.append(ExactMatrix.from_columns(R, span, g))
            labels.append(PrimeIdeal.certify(Ideal(R, [R.gens()[j] for j in S])))
    filt = PrimeFiltration(M, steps, labels)
    _verify_filtration(filt)
    return filt


def _verify_filtration(F: PrimeFiltration):
    """Present each successive quotient independently and compare it with
    its label; also check every label contains the annihilator of M."""
    from .grobner import annihilator

    M = F.module
    R = M.ring
    g = M.ngens
    ann = annihilator(M)
    prev = M.presentation
    for N, p in zip(F.steps, F.labels):
        new = ExactMatrix.from_columns(R, [N.column(N.ncols - 1)], g)
        Q = submodule_quotient(new, prev)
        got = Ideal(R, [c[0] for c in Q.presentation.columns()])
        if not got == p.ideal:
            raise PreconditionFailed(f"filtration quotient is R/{got.format()}, expected R/{p.format()}")
        if not ann.is_subset(p.ideal):
            raise PreconditionFailed(f"{p.format()} is not in the support")
        prev = hstack(R, [prev, new], g)
    if not M.is_zero() and F.steps and not FpModule(R, g, prev).is_zero():
        raise PreconditionFailed("filtration does not exhaust the module")


# ---------------------------------------------------------------------------
# detecting quasi-isomorphisms
# ---------------------------------------------------------------------------


@dataclass
class DetectionReport:
    mode: str
    source_qis: bool
    functored_qis: bool
    hypothesis_holds: bool
    window: tuple | None = None

    @property
    def agree(self) -> bool:
        return self.source_qis == self.functored_qis

    @property
    def status(self) -> str:
        if self.agree:
            return "agree"
        return "violation" if self.hypothesis_holds else "expected-counterexample"

    def format(self) -> str:
        yn = lambda b: "yes" if b else "no"
        return (
            f"map qis: {yn(self.source_qis)}; {self.mode} image qis: {yn(self.functored_qis)}; "
            f"support hypothesis: {yn(self.hypothesis_holds)}; {self.status}"
        )


def _qis_in_window(g: ChainMap, window) -> bool:
    lo, hi = window
    degs = set(g.source.degrees) | set(g.target.degrees)
    return all(g.is_iso_in_degree(i) for i in sorted(degs) if lo <= i <= hi)


def detect_iso_via_functor(f: ChainMap, a: Ideal, mode: str = "koszul", bound: int | None = None) -> DetectionReport:
    """Compare ``f`` being a quasi-isomorphism with its image under
    ``K(a) ⊗ -``, ``R/a ⊗^L -`` or ``RHom(R/a, -)`` being one."""
    R = f.ring
    X, Y = f.source, f.target
    sa = SupportSet(a)
    hyp = supp_fg(X).is_subset(sa) and supp_fg(Y).is_subset(sa)
    src = f.is_quasi_isomorphism()
    degs = set(X.degrees) | set(Y.degrees)
    lo, hi = (min(degs), max(degs)) if degs else (0, 0)
    if bound is None:
        bound = _krull_dim(R) + 2
    window = None
    if mode == "koszul":
        img = tensor_map(koszul_complex(a.gens, R), f).is_quasi_isomorphism()
    elif mode == "quotient":
        window = (lo, hi + bound)
        length = window[1] - lo + 1 + GUARD
        F = free_resolution(FpModule.cyclic(R, a.gens), length).resolution
        img = _qis_in_window(tensor_map(F, f), window)
    elif mode == "rhom-quotient":
        window = (lo - bound, hi)
        length = hi - window[0] + 1 + GUARD
        F = free_resolution(FpModule.cyclic(R, a.gens), length).resolution
        img = _qis_in_window(hom_map(F, f), window)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return DetectionReport(mode, src, img, hyp, window)


# ---------------------------------------------------------------------------
# torsion preserves adic finiteness
# ---------------------------------------------------------------------------


@dataclass
class GammaReport:
    passed: bool
    detail: str
    rows: list = field(default_factory=list)


def _dvr_contained(a: str, b: str) -> bool:
    return a == "0" or b == "m"


def gamma_preserves_adic_finiteness_check(X, a, b, panel=None) -> GammaReport:
    """Check that ``RΓ_b X`` is ``b``-adically finite when ``X`` is
    ``a``-adically finite and ``a ⊆ b``.

    Polynomial case: at each panel maximal ideal the fiber of ``RΓ_b X``
    must be nonzero exactly when the point lies in ``supp X ∩ V(b)``.
    """
    if isinstance(X, DvrObject):
        if not _dvr_contained(a, b):
            raise PreconditionFailed(f"ideal {a} is not contained in {b}")
        if not is_adically_finite(X, a).verdict:
            raise PreconditionFailed(f"{X.format()} is not {a}-adically finite")
        G = dvrcalc.dvr_gamma(X, b)
        v = is_adically_finite(G, b)
        return GammaReport(v.verdict, f"RΓ X = {G.format()}: {v.format()}")
    if not a.is_subset(b):
        raise PreconditionFailed(f"{a.format()} is not contained in {b.format()}")
    if not is_adically_finite(X, a).verdict:
        raise PreconditionFailed("input is not adically finite for the smaller ideal")
    Xc = as_complex(X)
    R = Xc.ring
    if panel is None:
        panel = grid_maximal_ideals(R, [(0, 1, 2)] * R.n)
    n = len(b.gens)
    window = (Xc.lo - n, Xc.hi) if Xc.degrees else (0, 0)
    rows = []
    bad = []
    for m in panel:
        dims = local_cohomology_fiber(m, b, Xc, window)
        nonzero = any(dims.values())
        expected = b.is_subset(m.ideal) and supp_membership(m, Xc).is_member
        rows.append((m, nonzero, expected))
        if nonzero != expected:
            bad.append(m.format())
    detail = f"{len(rows)} panel points" if not bad else "mismatch at " + ", ".join(bad)
    return GammaReport(not bad, detail, rows)
