"""Verification suites: seeded corpora run through the identity checks.

Every suite is a list of cases plus a function checking one case, so that
cases can be farmed out to worker processes (``SUPPKIT_WORKERS``) and the
results reassembled in case order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import corpus, dvrcalc
from .adic import detect_iso_via_functor, is_adically_finite
from .complexes import ChainComplex, ChainMap, hom_complexes, koszul_complex, shift, tensor_complexes
from .derived import derived_tensor
from .errors import ConditionDisagreement
from .exactla import homology_invariants, rank
from .grobner import Ideal
from .modules import FpModule
from .polys import PolyRing
from .rings import QQ, PrimeField
from .support import check_local_cohomology, grid_maximal_ideals, verify_support_identities


@dataclass
class CheckRow:
    case: str
    check: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    seed: int
    count: int
    rows: list = field(default_factory=list)
    violation: bool = False

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def format(self) -> str:
        lines = [f"suite {self.suite} seed {self.seed} count {self.count}"]
        for r in self.rows:
            lines.append(f"  {'PASS' if r.passed else 'FAIL'}  {r.case}  {r.check}  {r.detail}")
        n = sum(r.passed for r in self.rows)
        lines.append(f"  {n}/{len(self.rows)} passed")
        return "\n".join(lines)


def qq_xy() -> PolyRing:
    return PolyRing(QQ, ("x", "y"))


def standard_panel(R) -> list:
    """Twelve maximal ideals: the points of {0,1,2} x {0,1,2,3}."""
    return grid_maximal_ideals(R, [(0, 1, 2), (0, 1, 2, 3)])


# ---------------------------------------------------------------------------
# individual suites; each returns a list of CheckRow for case ``index``
# ---------------------------------------------------------------------------


def _support_case(seed, count, index):
    case = corpus.support_identity_cases(seed, count)[index]
    return [CheckRow(r.case, r.identity, r.passed, r.detail) for r in verify_support_identities([case])]


def _lc_case(seed, count, index):
    R = qq_xy()
    x, y = R.gens()
    ideals = [("(x)", [x]), ("(x,y)", [x, y]), ("(xy)", [R.mul(x, y)])]
    name, gens = ideals[index]
    ok, detail = check_local_cohomology(Ideal(R, gens), standard_panel(R))
    return [CheckRow(name, "local-cohomology-support", ok, detail)]


def _koszul_sequences(R):
    x, y = R.gens()
    return [[x], [x, y], [R.mul(x, y), R.mul(y, y)], [R.add(x, y)]]


def koszul_self_duality(xs, X: ChainComplex) -> tuple:
    """Homology of ``Hom(K, X)`` against ``Σ^{-n}(K ⊗ X)``, degree by degree."""
    R = X.ring
    K = koszul_complex(xs, R)
    H = hom_complexes(K, X)
    T = shift(tensor_complexes(K, X), -len(xs))
    degs = sorted(set(H.degrees) | set(T.degrees))
    bad = []
    for i in degs:
        a, b = H.homology(i), T.homology(i)
        if a.is_zero() != b.is_zero() or (not a.is_zero() and a.signature() != b.signature()):
            bad.append(i)
    return not bad, ("degrees " + ", ".join(map(str, bad))) if bad else f"degrees {degs[0]}..{degs[-1]}" if degs else "zero"


def _duality_case(seed, count, index):
    R = qq_xy()
    X = corpus.presented_complexes(seed, count, R)[index]
    seqs = _koszul_sequences(R)
    xs = seqs[index % len(seqs)]
    ok, detail = koszul_self_duality(xs, X)
    label = "(" + ", ".join(R.format(f) for f in xs) + ")"
    return [CheckRow(f"case-{index:02d}", f"koszul-duality {label}", ok, detail)]


def _adic_ideals(R):
    x, y = R.gens()
    return [Ideal(R, [x]), Ideal(R, [x, y]), Ideal(R, [R.mul(x, y)]), Ideal(R, [])]


def _adic_case(seed, count, index):
    R = qq_xy()
    if index >= count:
        # DVR basis objects for both ideals
        objs = dvrcalc.basis_objects(True) + dvrcalc.basis_objects(False)
        rows = []
        for X in objs:
            for a in ("0", "m"):
                v = is_adically_finite(X, a)
                amb = "" if X.complete else " (incomplete)"
                rows.append(CheckRow(f"dvr {X.format()}{amb}", f"adic {a}", True, v.format()))
        return rows
    X = corpus.presented_complexes(seed, count, R)[index]
    ideals = _adic_ideals(R)
    a = ideals[index % len(ideals)]
    v = is_adically_finite(X, a)
    return [CheckRow(f"case-{index:02d}", f"adic {a.format()}", True, v.format())]


def _morphism_case(seed, count, index):
    R = PolyRing(QQ, ("x",)) if index >= count else qq_xy()
    if index >= count:
        x = R.var(0)
        X = ChainComplex.from_module(FpModule.cyclic(R, [R.sub(x, R.one)]))
        f = ChainMap(X, ChainComplex.zero(R), {})
        rep = detect_iso_via_functor(f, Ideal(R, [x]), "koszul")
        return [CheckRow("R/(x-1) -> 0", "koszul", rep.status == "expected-counterexample", rep.format())]
    x, y = R.gens()
    ideals = [Ideal(R, [x]), Ideal(R, [x, y])]
    a = ideals[index % 2]
    f = corpus.torsion_maps(seed, count, a)[index]
    rep = detect_iso_via_functor(f, a, "koszul")
    ok = rep.hypothesis_holds and rep.agree
    return [CheckRow(f"map-{index:02d}", f"koszul {a.format()}", ok, rep.format())]


def _field_rank_dims(C: ChainComplex, ring) -> dict:
    conv = {i: D.map_entries(ring, ring.coerce) for i, D in C.diffs.items()}
    rk = {i: rank(D) for i, D in conv.items()}
    return {i: C.rank(i) - rk.get(i, 0) - rk.get(i + 1, 0) for i in C.degrees}


def snf_vs_field_rank(C: ChainComplex) -> tuple:
    """Universal coefficients: dim H_i(C ⊗ F_p) = free_i + t_p(i) + t_p(i-1)."""
    inv = {i: homology_invariants(C.d(i + 1), C.d(i)) for i in C.degrees}
    bad = []
    for field_ring, p in [(QQ, None), (PrimeField(2), 2), (PrimeField(3), 3), (PrimeField(5), 5)]:
        dims = _field_rank_dims(C, field_ring)
        for i in C.degrees:
            expected = inv[i].free_rank
            if p is not None:
                expected += sum(1 for t in inv[i].torsion if t % p == 0)
                if i - 1 in inv:
                    expected += sum(1 for t in inv[i - 1].torsion if t % p == 0)
            if dims[i] != expected:
                bad.append(f"H_{i} over {field_ring.tag}")
    desc = "; ".join(f"H_{i}={inv[i].format()}" for i in C.degrees)
    return not bad, ("mismatch " + ", ".join(bad)) if bad else desc


def tor_balance(M, N, upto: int = 2) -> tuple:
    a = derived_tensor(M, N, (0, upto), resolve="first")
    b = derived_tensor(M, N, (0, upto), resolve="second")
    bad = [i for i in a if a[i].signature() != b[i].signature()]
    desc = "; ".join(f"Tor_{i}={a[i].format_invariants()}" for i in a)
    return not bad, desc if not bad else f"degrees {bad} differ"


def _oracle_case(seed, count, index):
    C = corpus.integer_complexes(seed, count)[index]
    ok1, d1 = snf_vs_field_rank(C)
    M, N = corpus.integer_module_pairs(seed, count)[index]
    ok2, d2 = tor_balance(M, N)
    return [
        CheckRow(f"complex-{index:02d}", "snf-vs-field-rank", ok1, d1),
        CheckRow(f"pair-{index:02d}", "tor-balance", ok2, d2),
    ]


def _dvr_case(seed, count, index):
    complete = index == 0
    failures = dvrcalc.validate_tables(complete)
    label = "complete" if complete else "incomplete"
    return [CheckRow(label, "dvr-tables", not failures, "; ".join(failures) or "tables re-derived")]


# suite name -> (case function, number of cases for a given count)
SUITES = {
    "support-identities": (_support_case, lambda c: c, 25),
    "local-cohomology": (_lc_case, lambda c: 3, 3),
    "koszul-duality": (_duality_case, lambda c: c, 20),
    "adic-equivalence": (_adic_case, lambda c: c + 1, 20),
    "morphism-detection": (_morphism_case, lambda c: c + 1, 15),
    "oracle-crosscheck": (_oracle_case, lambda c: c, 20),
    "dvr-tables": (_dvr_case, lambda c: 2, 2),
}


def _worker(args):
    name, seed, count, index = args
    fn = SUITES[name][0]
    try:
        return fn(seed, count, index), False
    except ConditionDisagreement as exc:
        return [CheckRow(f"case-{index:02d}", "condition-agreement", False, str(exc))], True


def workers_from_env() -> int:
    try:
        return max(1, int(os.environ.get("SUPPKIT_WORKERS", "1")))
    except ValueError:
        return 1


def run_suite(name: str, seed: int = 42, count: int | None = None, workers: int | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}")
    _, ncases, default = SUITES[name]
    if count is None:
        count = default
    jobs = [(name, seed, count, i) for i in range(ncases(count))]
    workers = workers or workers_from_env()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(_worker, jobs))
    else:
        outputs = [_worker(j) for j in jobs]
    result = SuiteResult(name, seed, count)
    for rows, violated in outputs:
        result.rows.extend(rows)
        result.violation = result.violation or violated
    return result
