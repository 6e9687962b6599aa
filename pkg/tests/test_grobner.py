from __future__ import annotations

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from suppkit.errors import NotCertifiable, NotMonomial
from suppkit.grobner import (
    Ideal,
    PrimeIdeal,
    annihilator,
    groebner_basis,
    ideal_arith,
    minimal_primes_monomial,
    radical_contains,
    radical_membership,
    saturation,
    syzygies,
)
from suppkit.modules import FpModule
from suppkit.exactla import ExactMatrix
from suppkit.polys import PolyRing
from suppkit.rings import QQ, PrimeField

import pytest

R = PolyRing(QQ, ("x", "y"))
x, y = R.gens()
P = R.parse


def _fmt(polys):
    return sorted(R.format(g) for g in polys)


def _ideal(*texts):
    return Ideal(R, [P(t) for t in texts])


def test_parse_and_canonical_print():
    f = P("3*x^2*y - 1/2 + y^3 - x^2*y")
    assert R.format(f) == "2*x^2*y + y^3 - 1/2"
    assert R.format(P(R.format(f))) == R.format(f)


def test_lex_order_printing():
    L = PolyRing(QQ, ("x", "y"), "lex")
    assert L.format(L.parse("y^3 + x")) == "x + y^3"


def test_quotient_ring_normal_forms():
    S = PolyRing(QQ, ("x", "y"), "grevlex", [P("x^2")])
    assert S.is_zero(S.parse("x^3 + x^2*y"))


def test_gb_examples():
    assert _fmt(groebner_basis(_ideal("x^2", "x*y"))) == ["x*y", "x^2"]
    assert _fmt(groebner_basis(_ideal("x + y", "x - y"))) == ["x", "y"]
    assert _fmt(groebner_basis(_ideal("1"))) == ["1"]


def test_ideal_arith_examples():
    assert _fmt(ideal_arith("sum", _ideal("x"), _ideal("y")).gens) == ["x", "y"]
    assert _fmt(groebner_basis(ideal_arith("intersection", _ideal("x"), _ideal("y")))) == ["x*y"]
    assert _fmt(groebner_basis(ideal_arith("quotient", _ideal("x*y"), _ideal("x")))) == ["y"]
    assert _fmt(groebner_basis(ideal_arith("product", _ideal("x"), _ideal("x", "y")))) == ["x*y", "x^2"]


def test_saturation():
    assert _fmt(groebner_basis(saturation(_ideal("x^2*y"), _ideal("x")))) == ["y"]


def test_radical_membership_examples():
    assert radical_membership(x, _ideal("x^2"))
    assert not radical_membership(y, _ideal("x^2"))
    assert radical_membership(R.mul(x, y), _ideal("x^2*y", "x*y^2"))
    assert radical_contains(_ideal("x*y"), _ideal("x^2*y", "x*y^2"))


def test_syzygy_examples():
    (s,) = syzygies([x, y], R)
    assert R.is_zero(R.add(R.mul(s[0], x), R.mul(s[1], y)))
    assert _fmt(s) == sorted([R.format(y), R.format(R.neg(x))]) or _fmt(s) == sorted(["-y", "x"])
    assert syzygies([R.one], R) == []
    (t,) = syzygies([x, x], R)
    assert R.is_zero(R.add(t[0], t[1])) and not R.is_zero(t[0]) and t[0].is_constant()


def test_annihilator_of_sum():
    M = FpModule.coker(ExactMatrix(R, [[x, 0], [0, y]]))
    assert _fmt(groebner_basis(annihilator(M))) == ["x*y"]


def test_minimal_primes_monomial():
    def mp(*t):
        return [p.format() for p in minimal_primes_monomial(_ideal(*t))]

    assert mp("x*y") == ["(x)", "(y)"]
    assert mp("x^2", "x*y") == ["(x)"]
    assert mp("x", "y") == ["(x, y)"]
    with pytest.raises(NotMonomial):
        mp("x + y")


def test_prime_certificates():
    assert PrimeIdeal.certify(_ideal("x")).certificate == "monomial-prime"
    assert PrimeIdeal.certify(_ideal("x", "y")).is_maximal
    assert PrimeIdeal.certify(_ideal("x^2 + y^2 + 1")).certificate == "principal-irreducible"
    m = PrimeIdeal.certify(_ideal("x - 1", "y - 2"))
    assert m.certificate == "maximal-verified" and m.is_maximal
    with pytest.raises(NotCertifiable):
        PrimeIdeal.certify(_ideal("x*y"))
    assert PrimeIdeal.certify(_ideal("x*y"), assert_prime=True).certificate == "user-asserted"


# -- randomized cross-check against sympy's Buchberger implementation --------

_mono = st.tuples(st.integers(0, 3), st.integers(0, 3))
_poly = st.dictionaries(_mono, st.integers(-3, 3).filter(bool), min_size=1, max_size=3)


def _to_ours(d):
    return R.from_terms({e: QQ.coerce(c) for e, c in d.items()})


def _to_sympy(d):
    sx, sy = sympy.symbols("x y")
    return sum(c * sx**a * sy**b for (a, b), c in d.items())


@settings(max_examples=40, deadline=None)
@given(st.lists(_poly, min_size=1, max_size=3))
def test_reduced_gb_matches_sympy(polys):
    sx, sy = sympy.symbols("x y")
    ours = groebner_basis(Ideal(R, [_to_ours(d) for d in polys]))
    G = sympy.groebner([_to_sympy(d) for d in polys], sx, sy, order="grevlex", domain=sympy.QQ)
    theirs = {sympy.expand(g) for g in G.exprs}
    mine = {sympy.expand(sympy.sympify(R.format(g).replace("^", "**"))) for g in ours}
    assert mine == theirs


@settings(max_examples=40, deadline=None)
@given(st.lists(_poly, min_size=1, max_size=3))
def test_generators_reduce_to_zero(polys):
    I = Ideal(R, [_to_ours(d) for d in polys])
    assert all(I.contains(g) for g in I.gens)


@settings(max_examples=30, deadline=None)
@given(_poly, st.integers(1, 3))
def test_power_lies_in_radical(d, k):
    f = _to_ours(d)
    g = f
    for _ in range(k - 1):
        g = R.mul(g, f)
    assert radical_membership(f, Ideal(R, [g]))


def test_prime_field_arithmetic():
    F = PrimeField(7)
    S = PolyRing(F, ("x",))
    assert S.format(S.parse("8*x + 9")) == "x + 2"
