from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from suppkit import corpus
from suppkit.complexes import koszul_complex
from suppkit.derived import (
    derived_completion_fg,
    derived_hom,
    derived_tensor,
    ext,
    free_resolution,
    local_cohomology_fiber,
    tor,
    torsion_submodule,
)
from suppkit.errors import NotMaximal
from suppkit.grobner import Ideal, PrimeIdeal
from suppkit.modules import FpModule
from suppkit.polys import PolyRing
from suppkit.rings import QQ, ZZ
from suppkit.verify import tor_balance

import pytest

R = PolyRing(QQ, ("x", "y"))
x, y = R.gens()
R1 = PolyRing(QQ, ("x",))
t = R1.var(0)


def _zmod(n):
    return FpModule.cyclic(ZZ, [n])


def _inv(H):
    return {i: M.format_invariants() for i, M in H.items()}


def test_resolution_of_principal_quotient():
    F = free_resolution(FpModule.cyclic(R1, [t]), 3).resolution
    assert F.ranks == {0: 1, 1: 1}
    assert R1.format(F.d(1).rows[0][0]) == "x"


def test_resolution_of_residue_field_is_koszul():
    F = free_resolution(FpModule.cyclic(R, [x, y]), 2).resolution
    assert F.ranks == {0: 1, 1: 2, 2: 1}
    K = koszul_complex([x, y], R)
    assert {i: F.homology(i).signature() for i in F.degrees} == {i: K.homology(i).signature() for i in K.degrees}


def test_resolution_of_free_module():
    F = free_resolution(FpModule.free(R, 2), 2).resolution
    assert F.ranks == {0: 2} and not F.diffs


def test_tor_over_integers():
    assert _inv(tor(_zmod(4), _zmod(6), 1)) == {0: "ZZ/(2)", 1: "ZZ/(2)"}


def test_tor_zero_is_tensor_of_quotients():
    I, J = [R.mul(x, x), y], [R.mul(x, y), R.add(x, y)]
    H = tor(FpModule.cyclic(R, I), FpModule.cyclic(R, J), 0)
    assert H[0].signature() == FpModule.cyclic(R, I + J).signature()


def test_tensor_with_ring_is_identity():
    M = FpModule.cyclic(R, [R.mul(x, y)])
    H = derived_tensor(FpModule.free(R, 1), M, (0, 2))
    assert H[0].signature() == M.signature() and H[1].is_zero() and H[2].is_zero()


def test_ext_examples():
    M = FpModule.cyclic(R, [R.mul(x, y), R.add(y, R.one)])
    assert ext(FpModule.free(R, 1), M, 0)[0].signature() == M.signature()
    assert _inv(ext(_zmod(2), FpModule.free(ZZ, 1), 1)) == {0: "0", 1: "ZZ/(2)"}


def _k_power(d):
    out = FpModule.zero(R)
    for _ in range(d):
        out = out.direct_sum(FpModule.cyclic(R, [x, y]))
    return out


def test_ext_residue_field_dimensions():
    k = FpModule.cyclic(R, [x, y])
    E = ext(k, k, 2)
    assert [E[i].signature() for i in range(3)] == [_k_power(d).signature() for d in (1, 2, 1)]


def test_torsion_submodule_examples():
    a = Ideal(R1, [t])
    M = FpModule.cyclic(R1, [R1.mul(t, t)])
    assert torsion_submodule(a, M).module.signature() == M.signature()
    assert torsion_submodule(a, FpModule.free(R1, 1)).module.is_zero()
    N = FpModule.cyclic(R, [R.mul(R.mul(x, x), y)])
    T = torsion_submodule(Ideal(R, [x]), N)
    # (y)/(x^2 y) is cyclic with annihilator x^2
    assert T.module.signature() == FpModule.cyclic(R, [R.mul(x, x)]).signature()
    assert [[R.format(v) for v in r] for r in T.inclusion.rows] == [["y"]]


def test_local_cohomology_fiber_examples():
    a = Ideal(R1, [t])
    m0 = PrimeIdeal.certify(Ideal(R1, [t]))
    m1 = PrimeIdeal.certify(Ideal(R1, [R1.sub(t, R1.one)]))
    one = FpModule.free(R1, 1)
    assert local_cohomology_fiber(m0, a, one, (-2, 1)) == {-2: 0, -1: 0, 0: 1, 1: 0}
    assert set(local_cohomology_fiber(m1, a, one, (-2, 1)).values()) == {0}
    with pytest.raises(NotMaximal):
        local_cohomology_fiber(PrimeIdeal.certify(Ideal(R, [x])), Ideal(R, [x]), FpModule.free(R, 1), (0, 0))


def test_completion_shortcut():
    a = Ideal(R1, [t])
    H = derived_completion_fg(a, FpModule.cyclic(R1, [t]))
    assert H[0].module.signature() == FpModule.cyclic(R1, [t]).signature()
    assert not derived_completion_fg(a, FpModule.free(R1, 1))[0].is_zero()
    z = derived_completion_fg(Ideal(R1, []), FpModule.free(R1, 1))[0]
    assert z.ideal.is_zero and z.is_finitely_generated()


# -- properties ---------------------------------------------------------------


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_tor_balance_over_integers(seed):
    M, N = corpus.integer_module_pairs(seed, 1)[0]
    assert tor_balance(M, N)[0]


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_tor_balance_over_polynomials(seed):
    rng = random.Random(seed)
    M = corpus.random_cyclic(R, rng, monomial=True)
    N = corpus.random_cyclic(R, rng, monomial=rng.random() < 0.5)
    assert tor_balance(M, N, upto=1)[0]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_torsion_is_idempotent(seed):
    rng = random.Random(seed)
    M = corpus.random_cyclic(R, rng, monomial=rng.random() < 0.5)
    a = Ideal(R, [[x], [y], [x, y], [R.mul(x, y)]][seed % 4])
    T = torsion_submodule(a, M).module
    assert torsion_submodule(a, T).module.signature() == T.signature()


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.sampled_from(["x", "y", "x*y", "x, y", "x - 1"]))
def test_local_cohomology_fiber_detects_containment(a0, b0, gens):
    a = Ideal(R, [R.parse(g) for g in gens.split(",")])
    m = PrimeIdeal.certify(Ideal(R, [R.sub(x, R.from_int(a0)), R.sub(y, R.from_int(b0))]))
    dims = local_cohomology_fiber(m, a, FpModule.free(R, 1), (-2, 0))
    assert any(dims.values()) == a.is_subset(m.ideal)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_hom_tensor_adjunction_on_integers(seed):
    # Hom(M ⊗ N, Q/Z)-free check: H_0 RHom(M ⊗^L N, Z) vs RHom(M, RHom(N, Z)) on finite groups
    M, N = corpus.integer_module_pairs(seed, 1)[0]
    Z = FpModule.free(ZZ, 1)
    from suppkit.derived import derived_hom_complex, derived_tensor_complex

    left = derived_hom(derived_tensor_complex(M, N, (-3, 3)), Z, (-2, 0))
    right = derived_hom(M, derived_hom_complex(N, Z, (-3, 3)), (-2, 0))
    assert {i: left[i].signature() for i in left} == {i: right[i].signature() for i in right}
