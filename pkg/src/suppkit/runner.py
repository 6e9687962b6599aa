"""Executing session commands into ordered key/value reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import dvrcalc
from .adic import detect_iso_via_functor, is_adically_finite, prime_filtration
from .derived import as_complex, derived_hom, derived_tensor, local_cohomology_fiber, torsion_submodule
from .dvrcalc import DvrObject
from .errors import ConditionDisagreement, NotCertifiable, SuppkitError
from .session import SessionDocument, Statement
from .support import bass_numbers, cosupp_membership, cosupport_set, supp_fg, supp_membership
from .verify import run_suite

# exit codes
OK, USAGE, COMPUTATION, VERIFICATION, VIOLATION = 0, 1, 2, 3, 4


@dataclass
class Report:
    command: str
    pairs: list = field(default_factory=list)
    status: int = OK
    text: str | None = None

    def add(self, key, value):
        self.pairs.append((key, _str(value)))

    def format_text(self) -> str:
        lines = [f"> {self.command}"]
        if self.text is not None:
            lines.append(self.text)
        else:
            lines += [f"  {k}: {v}" for k, v in self.pairs]
        return "\n".join(lines)

    def structured(self) -> dict:
        out = {"command": self.command, "status": str(self.status)}
        for k, v in self.pairs:
            out[k] = v
        return out


def _str(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _need_prime(p):
    if isinstance(p, tuple) and p and p[0] == "uncertified":
        raise NotCertifiable(f"cannot certify {p[1].format()} as prime")
    return p


def _cmd_supp(rep, d, opts):
    v = d["obj"]
    if isinstance(v, DvrObject):
        rep.add("supp", dvrcalc.format_prime_set(dvrcalc.dvr_supp(v)))
    else:
        rep.add("supp", supp_fg(v).format())


def _cmd_cosupp(rep, d, opts):
    v = d["obj"]
    if isinstance(v, DvrObject):
        rep.add("cosupp", dvrcalc.format_prime_set(dvrcalc.dvr_cosupp(v)))
    else:
        cosupport_set(v)


def _cmd_homology(rep, d, opts):
    v = d["obj"]
    if isinstance(v, DvrObject):
        rep.add("object", v.format())
        return
    C = as_complex(v)
    for i in sorted(C.degrees, reverse=True):
        rep.add(f"H_{i}", C.homology(i).format_invariants())


def _dvr_member(p, X, co: bool) -> str:
    sets = dvrcalc.dvr_cosupp(X) if co else dvrcalc.dvr_supp(X)
    return "yes" if p in sets else "no"


def _cmd_supp_member(rep, d, opts):
    p, v = d["prime"], d["obj"]
    if isinstance(v, DvrObject):
        rep.add("member", _dvr_member(p, v, False))
        return
    verdict = supp_membership(_need_prime(p), v)
    rep.add("member", verdict.member)
    for k, x in verdict.witness.items():
        rep.add(k, x)


def _cmd_cosupp_member(rep, d, opts):
    p, v = d["prime"], d["obj"]
    if isinstance(v, DvrObject):
        rep.add("member", _dvr_member(p, v, True))
        return
    bound = d.get("bound") if d.get("bound") is not None else opts.get("bound")
    verdict = cosupp_membership(_need_prime(p), v, bound)
    rep.add("member", verdict.member)
    for k, x in verdict.witness.items():
        rep.add(k, x)


def _cmd_tor(rep, d, opts):
    lo, hi = d["window"]
    H = derived_tensor(d["first"], d["second"], (lo, hi))
    for i in range(lo, hi + 1):
        rep.add(f"Tor_{i}", H[i].format_invariants())


def _cmd_ext(rep, d, opts):
    lo, hi = d["window"]
    H = derived_hom(d["first"], d["second"], (-hi, -lo))
    for i in range(lo, hi + 1):
        rep.add(f"Ext^{i}", H[-i].format_invariants())


def _cmd_adic(rep, d, opts):
    bound = d.get("bound") if d.get("bound") is not None else opts.get("bound")
    v = is_adically_finite(d["obj"], d["ideal"], bound)
    rep.add("verdict", v.verdict)
    for k, x in v.condition_results.items():
        rep.add(k, "n/a" if x is None else x)
    rep.add("support", v.support_ok)
    if v.bound is not None:
        rep.add("bound", v.bound)


def _cmd_dvr_eval(rep, d, opts):
    env = opts["dvr_env"]
    value = dvrcalc.eval_dvr_tree(d["tree"], env, opts["dvr_complete"])
    if isinstance(value, set):
        rep.add("value", dvrcalc.format_prime_set(value))
    elif isinstance(value, bool):
        rep.add("value", value)
    else:
        rep.add("value", value.format())


def _cmd_lc_fiber(rep, d, opts):
    dims = local_cohomology_fiber(_need_prime(d["prime"]), d["ideal"], d["obj"], d["window"])
    for i in sorted(dims, reverse=True):
        rep.add(f"dim_{i}", dims[i])


def _cmd_bass(rep, d, opts):
    lo, hi = d["window"]
    mu = bass_numbers(_need_prime(d["prime"]), d["obj"], (lo, hi))
    for i in sorted(mu):
        rep.add(f"mu^{i}", mu[i])


def _cmd_gamma(rep, d, opts):
    v = d["obj"]
    if isinstance(v, DvrObject):
        rep.add("value", dvrcalc.dvr_gamma(v).format())
        return
    T = torsion_submodule(d["ideal"], v)
    rep.add("torsion", T.module.format_invariants())
    R = v.ring
    rep.add("inclusion", "[" + ", ".join("[" + ", ".join(R.format(x) for x in r) + "]" for r in T.inclusion.rows) + "]")


def _cmd_filtration(rep, d, opts):
    F = prime_filtration(d["obj"])
    for k, p in enumerate(F.labels):
        rep.add(f"quotient_{k + 1}", f"R/{p.format()}")


def _cmd_detect(rep, d, opts):
    r = detect_iso_via_functor(d["map"], d["ideal"], d["mode"])
    rep.add("map_qis", r.source_qis)
    rep.add(f"{d['mode']}_qis", r.functored_qis)
    rep.add("support_hypothesis", r.hypothesis_holds)
    rep.add("status", r.status)
    if r.status == "violation":
        rep.status = VIOLATION


def _cmd_verify(rep, d, opts):
    seed = d["seed"] if d["seed"] is not None else opts.get("seed", 42)
    result = run_suite(d["suite"], seed, d["count"], opts.get("workers"))
    rep.text = result.format()
    for r in result.rows:
        rep.add(f"{r.case}/{r.check}", "pass" if r.passed else "fail")
    rep.add("passed", sum(r.passed for r in result.rows))
    rep.add("total", len(result.rows))
    if result.violation:
        rep.status = VIOLATION
    elif not result.all_passed:
        rep.status = VERIFICATION


def _cmd_gb(rep, d, opts):
    I = d["ideal"]
    R = I.ring
    rep.add("basis", "(" + ", ".join(R.format(g) for g in I.groebner_basis()) + ")")


HANDLERS = {
    "supp": _cmd_supp,
    "cosupp": _cmd_cosupp,
    "homology": _cmd_homology,
    "supp-member": _cmd_supp_member,
    "cosupp-member": _cmd_cosupp_member,
    "tor": _cmd_tor,
    "ext": _cmd_ext,
    "adic": _cmd_adic,
    "dvr-eval": _cmd_dvr_eval,
    "lc-fiber": _cmd_lc_fiber,
    "bass": _cmd_bass,
    "gamma": _cmd_gamma,
    "filtration": _cmd_filtration,
    "detect": _cmd_detect,
    "verify": _cmd_verify,
    "gb": _cmd_gb,
}


def run_command(doc: SessionDocument, stmt: Statement, opts: dict | None = None) -> Report:
    opts = dict(opts or {})
    opts.setdefault("dvr_env", {k: v for k, (kind, v) in doc.env.items() if kind == "dvr"})
    opts.setdefault("dvr_complete", doc.dvr_complete)
    rep = Report(stmt.canonical.rstrip(";"))
    try:
        HANDLERS[stmt.data["command"]](rep, stmt.data, opts)
    except ConditionDisagreement as exc:
        rep.pairs = [("error", f"ConditionDisagreement: {exc}")]
        rep.text = None
        rep.status = VIOLATION
    except SuppkitError as exc:
        rep.pairs = [("error", f"{type(exc).__name__}: {exc}")]
        rep.text = None
        rep.status = COMPUTATION
    return rep


def run_session(doc: SessionDocument, opts: dict | None = None) -> list:
    return [run_command(doc, s, opts) for s in doc.commands]


def format_reports(reports, fmt: str = "text") -> str:
    if not reports:
        return ""
    if fmt == "structured":
        return json.dumps([r.structured() for r in reports], indent=1, ensure_ascii=False) + "\n"
    return "".join(r.format_text() + "\n" for r in reports)


def exit_status(reports) -> int:
    return max((r.status for r in reports), default=OK)
