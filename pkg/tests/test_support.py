from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from suppkit import corpus
from suppkit.complexes import ChainComplex, direct_sum, koszul_complex
from suppkit.errors import NotCertifiable, NotMaximal, NotTabulated
from suppkit.grobner import Ideal, PrimeIdeal, radical_contains
from suppkit.modules import FpModule
from suppkit.polys import PolyRing
from suppkit.rings import QQ
from suppkit.support import (
    SupportSet,
    bass_numbers,
    check_local_cohomology,
    closed_set_equal,
    cosupp_membership,
    cosupp_membership_maximal,
    cosupport_one_dimensional,
    dualizing_cosupport,
    grid_maximal_ideals,
    rhom_from_fraction_field,
    supp_fg,
    supp_membership,
    verify_support_identities,
)

import pytest

R = PolyRing(QQ, ("x", "y"))
x, y = R.gens()
R1 = PolyRing(QQ, ("x",))
t = R1.var(0)


def _prime(ring, *gens):
    return PrimeIdeal.certify(Ideal(ring, [ring.parse(g) for g in gens]))


def _V(*gens):
    return SupportSet(Ideal(R, [R.parse(g) for g in gens]))


def test_supp_fg_examples():
    assert closed_set_equal(supp_fg(FpModule.cyclic(R, [R.mul(x, y)])), _V("x*y"))
    assert closed_set_equal(supp_fg(koszul_complex([x, y], R)), _V("x", "y"))
    assert supp_fg(ChainComplex.zero(R)).is_empty()


def test_supp_membership_examples():
    assert supp_membership(_prime(R, "x", "y"), FpModule.cyclic(R, [x])).member == "yes"
    assert supp_membership(_prime(R1, "x - 1"), FpModule.cyclic(R1, [t])).member == "no"
    assert supp_membership(_prime(R, "y"), ChainComplex.zero(R)).member == "no"


def test_cosupp_membership_maximal_examples():
    m = _prime(R1, "x")
    assert cosupp_membership_maximal(m, FpModule.free(R1, 1)).member == "yes"
    assert cosupp_membership_maximal(m, FpModule.cyclic(R1, [R1.sub(t, R1.one)])).member == "no"
    mm = _prime(R, "x", "y")
    assert cosupp_membership_maximal(mm, FpModule.cyclic(R, [R.mul(x, x), y])).member == "yes"
    with pytest.raises(NotMaximal):
        cosupp_membership_maximal(_prime(R, "x"), FpModule.free(R, 1))


def test_closed_set_equal_examples():
    assert closed_set_equal(_V("x^2"), _V("x"))
    assert not closed_set_equal(_V("x"), _V("y"))
    assert closed_set_equal(_V("x^2*y", "x*y^2"), _V("x*y"))


def test_bass_number_examples():
    one = FpModule.free(R1, 1)
    zero_prime = PrimeIdeal.certify(Ideal(R1, []))
    assert bass_numbers(zero_prime, one, (0, 2)) == {0: 1, 1: 0, 2: 0}
    assert bass_numbers(_prime(R1, "x"), one, (0, 2)) == {0: 0, 1: 1, 2: 0}
    assert bass_numbers(_prime(R, "x", "y"), FpModule.cyclic(R, [x, y]), (0, 0)) == {0: 1}
    assert set(bass_numbers(_prime(R, "y"), FpModule.cyclic(R, [x]), (0, 2)).values()) == {0}


def test_identity_examples():
    X = ChainComplex.from_module(FpModule.cyclic(R, [x]))
    Y = ChainComplex.from_module(FpModule.cyclic(R, [y]))
    unit = ChainComplex.unit(R)
    rows = verify_support_identities([{"name": "a", "X": X, "Y": Y}, {"name": "b", "X": unit, "M": unit}])
    assert [r.passed for r in rows] == [True, True]
    panel = [_prime(R1, "x"), _prime(R1, "x - 1")]
    assert check_local_cohomology(Ideal(R1, [t]), panel)[0]


def test_refusals():
    with pytest.raises(NotTabulated):
        cosupp_membership(_prime(R, "x"), FpModule.free(R, 1))
    with pytest.raises(NotTabulated):
        rhom_from_fraction_field(R)
    with pytest.raises(NotTabulated):
        dualizing_cosupport(R)
    with pytest.raises(NotTabulated):
        cosupport_one_dimensional(R1)
    with pytest.raises(NotCertifiable):
        supp_membership(Ideal(R, [x]), FpModule.free(R, 1))


def test_grid_panel():
    panel = grid_maximal_ideals(R, [(0, 1, 2), (0, 1, 2, 3)])
    assert len(panel) == 12 and all(p.is_maximal for p in panel)


# -- properties ---------------------------------------------------------------

PANEL = grid_maximal_ideals(R, [(0, 1), (0, 1)]) + [_prime(R, "x"), _prime(R, "y"), _prime(R, "x - y")]


def _case(seed):
    rng = random.Random(seed)
    return corpus.random_complex(R, rng, monomial=rng.random() < 0.5)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_membership_agrees_with_defining_ideal(seed):
    X = _case(seed)
    S = supp_fg(X)
    for p in PANEL:
        assert (supp_membership(p, X).member == "yes") == S.contains(p)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6))
def test_supp_and_cosupp_agree_at_maximal_ideals(seed):
    X = _case(seed)
    for m in PANEL[:4]:
        assert supp_membership(m, X).member == cosupp_membership_maximal(m, X).member


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_support_of_direct_sum_is_union(a, b):
    X, Y = _case(a), _case(b)
    assert closed_set_equal(supp_fg(direct_sum(X, Y)), supp_fg(X).union(supp_fg(Y)))


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6))
def test_bass_numbers_detect_support(seed):
    rng = random.Random(seed)
    M = corpus.random_cyclic(R, rng, monomial=True)
    for p in [_prime(R, "x"), _prime(R, "y"), _prime(R, "x", "y")]:
        mu = bass_numbers(p, M, (0, 2))
        assert any(mu.values()) == supp_fg(M).contains(p)


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 10**6))
def test_support_identity_corpus(seed):
    assert all(r.passed for r in verify_support_identities(corpus.support_identity_cases(seed, 2)))


def test_radical_containment_is_transitive_on_panel():
    assert radical_contains(Ideal(R, [x]), Ideal(R, [R.mul(x, x)]))
