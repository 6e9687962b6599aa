from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from suppkit import corpus
from suppkit.adic import (
    detect_iso_via_functor,
    gamma_preserves_adic_finiteness_check,
    is_adically_finite,
    prime_filtration,
)
from suppkit.complexes import ChainComplex, ChainMap, cone, direct_sum, koszul_complex, shift
from suppkit.dvrcalc import E, R as DR, T, basis_objects
from suppkit.errors import NotMonomial, PreconditionFailed
from suppkit.exactla import ExactMatrix
from suppkit.grobner import Ideal
from suppkit.modules import FpModule
from suppkit.polys import PolyRing
from suppkit.rings import QQ
from suppkit.support import closed_set_equal, supp_fg, SupportSet

import pytest

R = PolyRing(QQ, ("x", "y"))
x, y = R.gens()
R1 = PolyRing(QQ, ("x",))
t = R1.var(0)


def _cyc(ring, *gens):
    return ChainComplex.from_module(FpModule.cyclic(ring, [ring.parse(g) for g in gens]))


def test_dvr_verdicts():
    v = is_adically_finite(E(), "m")
    assert v.verdict and all(c in (True, None) for c in v.condition_results.values())
    assert not is_adically_finite(E(), "0").verdict
    assert is_adically_finite(DR() + T(3), "0").verdict


def test_polynomial_verdicts():
    a = Ideal(R1, [t])
    v = is_adically_finite(_cyc(R1, "x"), a)
    assert v.verdict and v.support_ok
    w = is_adically_finite(ChainComplex.unit(R1), a)
    assert not w.verdict and not w.support_ok
    assert all(c in (True, None) for c in w.condition_results.values())
    assert w.bound == 3


def test_verdicts_on_full_dvr_basis_agree():
    for complete in (True, False):
        for X in basis_objects(complete):
            for a in ("0", "m"):
                is_adically_finite(X, a)  # raises on disagreement


def test_prime_filtration_examples():
    M = FpModule.cyclic(R, [R.mul(x, y)])
    assert prime_filtration(M).format() == "R/(y), R/(x)"
    assert prime_filtration(FpModule.cyclic(R, [x])).format() == "R/(x)"
    assert prime_filtration(FpModule.cyclic(R1, [R1.mul(t, t)])).format() == "R/(x), R/(x)"
    with pytest.raises(NotMonomial):
        prime_filtration(FpModule.cyclic(R, [R.add(x, y)]))


def test_detection_examples():
    K = koszul_complex([t], R1)
    a = Ideal(R1, [t])
    assert detect_iso_via_functor(ChainMap.identity(K), a).status == "agree"
    proj = ChainMap(_cyc(R1, "x^2"), _cyc(R1, "x"), {0: ExactMatrix.identity(R1, 1)})
    rep = detect_iso_via_functor(proj, a)
    assert rep.status == "agree" and not rep.source_qis and not rep.functored_qis
    bad = ChainMap(_cyc(R1, "x - 1"), ChainComplex.zero(R1), {})
    rep = detect_iso_via_functor(bad, a)
    assert rep.status == "expected-counterexample" and rep.functored_qis and not rep.source_qis


@pytest.mark.parametrize("mode", ["quotient", "rhom-quotient"])
def test_detection_modes(mode):
    a = Ideal(R1, [t])
    proj = ChainMap(_cyc(R1, "x^2"), _cyc(R1, "x"), {0: ExactMatrix.identity(R1, 1)})
    assert detect_iso_via_functor(proj, a, mode).status == "agree"
    iso = ChainMap(_cyc(R1, "x^2"), _cyc(R1, "x^2"), {0: ExactMatrix(R1, [[3]])})
    rep = detect_iso_via_functor(iso, a, mode)
    assert rep.status == "agree" and rep.source_qis


def test_gamma_check_examples():
    assert gamma_preserves_adic_finiteness_check(T(2), "m", "m").passed
    assert gamma_preserves_adic_finiteness_check(DR(), "0", "m").passed
    a = Ideal(R1, [t])
    assert gamma_preserves_adic_finiteness_check(_cyc(R1, "x"), a, a).passed
    with pytest.raises(PreconditionFailed):
        gamma_preserves_adic_finiteness_check(T(2), "m", "0")


# -- properties ---------------------------------------------------------------


def _complex(seed, monomial=None):
    rng = random.Random(seed)
    return corpus.random_complex(R, rng, monomial=rng.random() < 0.5 if monomial is None else monomial)


_IDEALS = [[x], [x, y], [R.mul(x, y)], []]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 3))
def test_conditions_agree_on_presented_complexes(seed, k):
    # a ConditionDisagreement would propagate out of the call
    v = is_adically_finite(_complex(seed), Ideal(R, _IDEALS[k]))
    assert v.verdict == v.support_ok


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(-2, 2))
def test_adic_finiteness_is_thick(a, b, s):
    I = Ideal(R, [x])
    X, Y = _complex(a), _complex(b)
    fx = is_adically_finite(X, I).verdict
    fy = is_adically_finite(Y, I).verdict
    assert is_adically_finite(shift(X, s), I).verdict == fx
    assert is_adically_finite(direct_sum(X, Y), I).verdict == (fx and fy)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_cone_of_maps_between_finite_objects_is_finite(seed):
    a = Ideal(R, [x, y])
    f = corpus.torsion_maps(seed, 3, a)[seed % 3]
    assert is_adically_finite(f.source, a).verdict and is_adically_finite(f.target, a).verdict
    assert is_adically_finite(cone(f), a).verdict


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_filtration_labels_determine_support(seed):
    rng = random.Random(seed)
    M = corpus.random_cyclic(R, rng, monomial=True)
    F = prime_filtration(M)
    labels = F.labels
    if not labels:
        assert M.is_zero()
        return
    prod = Ideal(R, [R.one])
    from suppkit.grobner import ideal_product

    for p in labels:
        prod = ideal_product(prod, p.ideal)
    assert closed_set_equal(SupportSet(prod), supp_fg(M))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_detection_agrees_on_torsion_maps(seed):
    a = Ideal(R, [x])
    f = corpus.torsion_maps(seed, 3, a)[seed % 3]
    rep = detect_iso_via_functor(f, a)
    assert rep.hypothesis_holds and rep.status == "agree"
