from __future__ import annotations

import json

from hypothesis import given, settings
from hypothesis import strategies as st

from suppkit.cli import main
from suppkit.errors import SemanticError, SessionSyntaxError
from suppkit.runner import format_reports, run_session
from suppkit.session import parse_session

import pytest

SAMPLE = """\
# a small session
ring QQ[x, y] grevlex;
ideal a = (x^2, x*y);
module M = coker [[x, 0], [0, y]];
complex X = { 1: [[x]], 0: [] };
complex K = koszul(x, y);
supp M;
supp-member (x, y) M;
tor M M window 0 2;
adic X (x);
homology K;
"""


def _run(text, fmt="text", opts=None):
    doc = parse_session(text)
    return format_reports(run_session(doc, opts or {}), fmt), doc


def _cli(tmp_path, text, *args, capsys=None):
    f = tmp_path / "s.sup"
    f.write_text(text, encoding="utf-8")
    code = main(["run", str(f), *args])
    return code


def test_membership_end_to_end():
    out, _ = _run("ring QQ[x] grevlex; ideal a = (x); supp-member (x) R;")
    assert "member: yes" in out


def test_empty_document():
    out, doc = _run("")
    assert out == "" and doc.statements == []
    out, doc = _run("# only a comment\n")
    assert out == ""


def test_d_squared_violation():
    with pytest.raises(SemanticError):
        parse_session("ring QQ[x];\ncomplex X = { 0: [[x]], 1: [[x]] };")


def test_rank_mismatch():
    with pytest.raises(SemanticError):
        parse_session("ring QQ[x];\ncomplex X = { 1: [[x]], 2: [[x, x]] };")


def test_syntax_error_position():
    with pytest.raises(SessionSyntaxError) as err:
        parse_session("ring QQ[x];\nideal a = (x +);\n")
    assert err.value.line == 2 and err.value.column > 1


def test_unknown_name():
    with pytest.raises(SemanticError):
        parse_session("ring QQ[x];\nsupp N;")


def test_tor_over_integers():
    out, _ = _run("ring ZZ;\nmodule A = cyclic (4);\nmodule B = cyclic (6);\ntor A B window 0 1;")
    assert "Tor_0: ZZ/(2)" in out and "Tor_1: ZZ/(2)" in out


def test_dvr_eval():
    out, _ = _run("dvr-eval tensor(E, E);")
    assert out == "> dvr-eval tensor(E, E)\n  value: shift(1, E)\n"
    out, _ = _run("dvr A = sum(E, shift(1, T(2)));\ndvr-eval cosupp(A);\nsupp A;")
    assert "value: {0, m}" in out and "supp: {m}" in out


def test_incomplete_dvr_ambient():
    out, _ = _run("dvr-ambient incomplete;\ndvr-eval cosupp(R);\ndvr-eval lambda(E);")
    assert "value: {0, m}" in out and "IncompleteAmbient" in out


def test_round_trip_on_sample():
    _, doc = _run(SAMPLE)
    printed = doc.format()
    assert parse_session(printed).format() == printed
    assert "complex X = {1: [[x]], 0: []};" in printed


def test_structured_output_is_flat_strings():
    out, _ = _run(SAMPLE, "structured")
    data = json.loads(out)
    assert [d["command"] for d in data][:2] == ["supp M", "supp-member (x, y) M"]
    for d in data:
        assert list(d)[:2] == ["command", "status"]
        assert all(isinstance(v, str) for v in d.values())
    assert data[0]["supp"] == "V(x*y)"


def test_reports_are_deterministic():
    text = SAMPLE + "verify oracle-crosscheck seed 7 count 3;\n"
    a, _ = _run(text)
    b, _ = _run(text)
    assert a == b


def test_cli_exit_codes(tmp_path, capsys):
    assert _cli(tmp_path, "ring QQ[x]; ideal a = (x); supp-member (x) R;") == 0
    assert "member: yes" in capsys.readouterr().out
    assert _cli(tmp_path, "ring QQ[x]; ideal a = (x") == 1
    assert _cli(tmp_path, "ring QQ[x, y]; module M = cyclic (x); cosupp M;") == 2
    assert _cli(tmp_path, "ring QQ[x, y]; module M = cyclic (x); cosupp-member (x) M;") == 2
    assert _cli(tmp_path, "verify dvr-tables;") == 0
    assert main(["run", str(tmp_path / "missing.sup")]) == 1
    assert main(["bogus"]) == 1


def test_cli_verify(capsys):
    assert main(["verify", "dvr-tables"]) == 0
    out = capsys.readouterr().out
    assert "2/2 passed" in out
    assert main(["verify", "oracle-crosscheck", "--count", "2", "--format", "structured"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data[0]["passed"] == data[0]["total"] == "4"


def test_cli_print_canonical(tmp_path, capsys):
    assert _cli(tmp_path, SAMPLE, "--print-canonical") == 0
    printed = capsys.readouterr().out
    assert printed == parse_session(SAMPLE).format()


def test_detect_violation_maps_to_exit_four(monkeypatch, tmp_path):
    from suppkit import runner
    from suppkit.adic import DetectionReport

    def fake(f, a, mode):
        return DetectionReport(mode, False, True, True, (0, 1))

    monkeypatch.setattr(runner, "detect_iso_via_functor", fake)
    text = "ring QQ[x]; module M = cyclic (x); map f : M -> M = {0: [[1]]}; detect f (x);"
    assert _cli(tmp_path, text) == 4


def test_verify_failure_maps_to_exit_three(monkeypatch, tmp_path):
    from suppkit import runner
    from suppkit.verify import CheckRow, SuiteResult

    monkeypatch.setattr(
        runner, "run_suite", lambda *a, **k: SuiteResult("x", 1, 1, [CheckRow("c", "k", False)])
    )
    assert _cli(tmp_path, "verify dvr-tables;") == 3


# -- round trip over generated documents ------------------------------------------

_var = st.sampled_from(["x", "y"])
_mono = st.builds(lambda c, v, e: f"{c}*{v}^{e}", st.integers(1, 5), _var, st.integers(1, 3))
_poly = st.lists(_mono, min_size=1, max_size=3).map(lambda ts: " + ".join(ts))
_ideal = st.lists(_poly, min_size=1, max_size=3).map(lambda ps: "(" + ", ".join(ps) + ")")
_dvr = st.recursive(
    st.sampled_from(["R", "Q", "E", "T(2)", "0"]),
    lambda inner: st.one_of(
        st.builds(lambda s, a: f"shift({s}, {a})", st.integers(-2, 2), inner),
        st.builds(lambda a, b: f"tensor({a}, {b})", inner, inner),
        st.builds(lambda a, b: f"sum({a}, {b})", inner, inner),
        st.builds(lambda a: f"gamma({a})", inner),
    ),
    max_leaves=4,
)


@settings(max_examples=50, deadline=None)
@given(st.lists(_ideal, max_size=4), st.lists(_dvr, max_size=3), st.booleans())
def test_print_parse_print_is_stable(ideals, dvrs, lex):
    lines = [f"ring QQ[x, y] {'lex' if lex else 'grevlex'};"]
    lines += [f"ideal a{i} = {I};" for i, I in enumerate(ideals)]
    lines += [f"module M{i} = cyclic {I};" for i, I in enumerate(ideals)]
    lines += [f"dvr D{i} = {d};" for i, d in enumerate(dvrs)]
    lines += [f"supp M{i};" for i in range(len(ideals))]
    lines += [f"dvr-eval supp({d});" for d in dvrs]
    printed = parse_session("\n".join(lines)).format()
    assert parse_session(printed).format() == printed
