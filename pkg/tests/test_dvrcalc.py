from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from suppkit import dvrcalc
from suppkit.dvrcalc import (
    E,
    Q,
    R,
    T,
    DvrObject,
    Summand,
    basis_objects,
    dvr_adically_finite,
    dvr_cosupp,
    dvr_gamma,
    dvr_lambda,
    dvr_rhom,
    dvr_supp,
    dvr_tensor,
    format_dvr_tree,
    parse_dvr,
    parse_dvr_tree,
    validate_tables,
)
from suppkit.errors import AmbientMismatch, IncompleteAmbient, SessionSyntaxError, UnsupportedIdeal

import pytest


def test_tensor_examples():
    assert dvr_tensor(E(), E()) == E(1)
    assert dvr_tensor(E(), Q()).is_zero()
    assert dvr_tensor(T(2), T(3)) == T(2) + T(2, 1)


def test_rhom_examples():
    assert dvr_rhom(E(), E()) == R()
    assert dvr_rhom(E(), R()) == R(-1)
    assert dvr_rhom(dvr_rhom(E(), E()), R()) == R()
    assert dvr_rhom(E(), Q()).is_zero()


def test_worked_example_chain():
    # the four final values and the two failures of evaluation maps
    assert dvr_tensor(dvr_rhom(E(), E()), E()) == E()
    assert dvr_rhom(E(), dvr_tensor(E(), E())) == R(1)
    assert dvr_tensor(E(), dvr_rhom(E(), R())) == E(-1)
    assert dvr_rhom(dvr_rhom(E(), E()), R()) == R()
    assert E() != R(1) and E(-1) != R()


def test_torsion_and_completion():
    assert dvr_gamma(R()) == E(-1)
    assert dvr_gamma(E()) == E()
    assert dvr_lambda(R()) == R()
    assert dvr_lambda(E()) == R(1)
    assert dvr_lambda(Q()).is_zero()
    assert dvr_gamma(Q()).is_zero()
    assert dvr_gamma(T(3), "0") == T(3)


def test_supports():
    assert dvr_supp(E()) == {"m"} and dvr_cosupp(E()) == {"0", "m"}
    assert dvr_cosupp(R()) == {"m"}
    assert dvr_cosupp(R(complete=False)) == {"0", "m"}
    assert dvr_supp(DvrObject.zero()) == set()


def test_adic_finiteness():
    assert dvr_adically_finite(E(), "m")
    assert not dvr_adically_finite(E(), "0")
    assert dvr_adically_finite(R() + T(3), "0")
    with pytest.raises(UnsupportedIdeal):
        dvr_adically_finite(E(), "p")


def test_incomplete_ambient_blocks_completion_entries():
    with pytest.raises(IncompleteAmbient):
        dvr_rhom(E(complete=False), E(complete=False))
    assert dvr_rhom(E(complete=False), T(2, complete=False)) == dvr_rhom(E(), T(2)).__class__(
        dvr_rhom(E(), T(2)).summands, False
    )
    with pytest.raises(AmbientMismatch):
        dvr_tensor(E(), E(complete=False))


def test_validation_passes_for_both_ambients():
    assert validate_tables(True) == []
    assert validate_tables(False) == []


def test_expression_parsing_and_printing():
    A = parse_dvr("sum(E, shift(1, T(2)))")
    assert A == E() + T(2, 1)
    assert A.format() == "sum(E, shift(1, T(2)))"
    assert parse_dvr("tensor(E, E)").format() == "shift(1, E)"
    assert parse_dvr("0").is_zero()
    env = {"A": A}
    assert parse_dvr("rhom(A, A)", env) == dvr_rhom(A, A)
    tree = parse_dvr_tree("lambda( rhom(E,  R) )")
    assert format_dvr_tree(tree) == "lambda(rhom(E, R))"
    with pytest.raises(SessionSyntaxError) as err:
        parse_dvr_tree("tensor(E,", 3, 5)
    assert err.value.line == 3


# -- properties over random formal objects --------------------------------------

_summand = st.one_of(
    st.builds(lambda k, s: Summand(k, 0, s), st.sampled_from(["R", "Q", "E"]), st.integers(-2, 2)),
    st.builds(lambda n, s: Summand("T", n, s), st.integers(1, 4), st.integers(-2, 2)),
)
_obj = st.lists(_summand, max_size=3).map(DvrObject)


@settings(max_examples=100, deadline=None)
@given(_obj, _obj)
def test_tensor_support_is_intersection(A, B):
    assert dvr_supp(dvr_tensor(A, B)) == dvr_supp(A) & dvr_supp(B)


@settings(max_examples=100, deadline=None)
@given(_obj, _obj)
def test_rhom_cosupport_formula(A, B):
    assert dvr_cosupp(dvr_rhom(A, B)) == dvr_supp(A) & dvr_cosupp(B)


@settings(max_examples=100, deadline=None)
@given(_obj, _obj, _obj)
def test_additivity(A, B, C):
    assert dvr_tensor(A, B + C) == dvr_tensor(A, B) + dvr_tensor(A, C)
    assert dvr_rhom(A + B, C) == dvr_rhom(A, C) + dvr_rhom(B, C)


@settings(max_examples=100, deadline=None)
@given(_obj, _obj, st.integers(-3, 3))
def test_shift_compatibility(A, B, s):
    assert dvr_tensor(A.shift(s), B) == dvr_tensor(A, B).shift(s)
    assert dvr_rhom(A.shift(s), B) == dvr_rhom(A, B).shift(-s)
    assert dvr_rhom(A, B.shift(s)) == dvr_rhom(A, B).shift(s)


@settings(max_examples=100, deadline=None)
@given(_obj)
def test_torsion_and_completion_supports(A):
    assert dvr_supp(dvr_gamma(A)) == dvr_supp(A) & {"m"}
    assert dvr_cosupp(dvr_lambda(A)) == dvr_cosupp(A) & {"m"}
    assert dvr_cosupp(dvr_rhom(A, E())) == dvr_supp(A)


@settings(max_examples=100, deadline=None)
@given(_obj)
def test_tensor_and_rhom_with_ring(A):
    assert dvr_tensor(R(), A) == A
    assert dvr_rhom(R(), A) == A


@settings(max_examples=100, deadline=None)
@given(_obj, st.sampled_from(basis_objects()))
def test_rhom_from_adically_finite_vanishes_iff_disjoint_support(X, M):
    if not dvr_adically_finite(M, "m"):
        return
    assert dvr_rhom(M, X).is_zero() == (not (dvr_supp(M) & dvr_supp(X)))


@settings(max_examples=60, deadline=None)
@given(_obj)
def test_format_round_trip(A):
    assert parse_dvr(A.format()) == A


def test_self_dual_object_has_closed_point_support():
    # RHom(A, A) = R together with m-adic finiteness forces supp A = {m}
    for A in basis_objects():
        if dvrcalc.dvr_rhom(A, A) == R() and dvr_adically_finite(A, "m"):
            assert dvr_supp(A) == {"m"}
