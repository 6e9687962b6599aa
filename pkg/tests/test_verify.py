from __future__ import annotations

from suppkit import corpus
from suppkit.exactla import ExactMatrix
from suppkit.rings import ZZ
from suppkit.verify import SUITES, run_suite, snf_vs_field_rank, standard_panel, qq_xy, workers_from_env

import pytest


def test_corpora_are_seeded():
    a = corpus.support_identity_cases(3, 4)
    b = corpus.support_identity_cases(3, 4)
    assert [c["name"] for c in a] == [c["name"] for c in b]
    assert all(ca["X"].ranks == cb["X"].ranks for ca, cb in zip(a, b))
    assert [C.ranks for C in corpus.integer_complexes(5, 6)] == [C.ranks for C in corpus.integer_complexes(5, 6)]


def test_unimodular_pairs_are_inverse():
    import random

    A, Ainv = corpus._unimodular(4, random.Random(1))
    assert (A @ Ainv).rows == ExactMatrix.identity(ZZ, 4).rows


def test_universal_coefficients_on_a_known_complex():
    from suppkit.complexes import ChainComplex

    C = ChainComplex(ZZ, {0: 1, 1: 1, 2: 1}, {1: ExactMatrix(ZZ, [[6]])})
    ok, detail = snf_vs_field_rank(C)
    assert ok and "H_0=ZZ/(6)" in detail


def test_panel_has_twelve_points():
    assert len(standard_panel(qq_xy())) == 12


@pytest.mark.parametrize("name", sorted(SUITES))
def test_small_suites_pass(name):
    res = run_suite(name, seed=11, count=2)
    assert res.rows and res.all_passed and not res.violation
    assert res.format().splitlines()[0] == f"suite {name} seed 11 count 2"


def test_parallel_matches_serial():
    a = run_suite("oracle-crosscheck", seed=5, count=4, workers=1)
    b = run_suite("oracle-crosscheck", seed=5, count=4, workers=2)
    assert a.format() == b.format()


def test_workers_env(monkeypatch):
    monkeypatch.setenv("SUPPKIT_WORKERS", "3")
    assert workers_from_env() == 3
    monkeypatch.setenv("SUPPKIT_WORKERS", "junk")
    assert workers_from_env() == 1


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
