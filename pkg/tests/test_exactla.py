from __future__ import annotations

import itertools
import math
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from suppkit.exactla import ExactMatrix, homology_invariants, rank, rank_kernel, smith_normal_form
from suppkit.polys import PolyRing
from suppkit.rings import QQ, ZZ, PrimeField


def _mat(ring, rows):
    return ExactMatrix(ring, rows)


def _determinantal_divisors(rows):
    """d_k = gcd of all k x k minors; the invariant factors are d_k / d_{k-1}."""
    m, n = len(rows), len(rows[0])
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for r in itertools.combinations(range(m), k):
            for c in itertools.combinations(range(n), k):
                g = math.gcd(g, int(sympy.Matrix([[rows[i][j] for j in c] for i in r]).det()))
        if g == 0:
            out += [0] * (min(m, n) - k + 1)
            break
        out.append(g // prev)
        prev = g
    return out


def test_snf_diag_2_3():
    assert smith_normal_form(_mat(ZZ, [[2, 0], [0, 3]])).diagonal == [1, 6]


def test_snf_zero():
    assert smith_normal_form(ExactMatrix.zeros(ZZ, 2, 2)).diagonal == [0, 0]


def test_snf_2468():
    assert smith_normal_form(_mat(ZZ, [[2, 4], [6, 8]])).diagonal == [2, 4]


def test_snf_transforms_reproduce_diagonal():
    A = _mat(ZZ, [[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    S = smith_normal_form(A)
    assert (S.U @ A @ S.V).rows == S.D.rows
    assert S.diagonal == [2, 6, 12]


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda m: st.integers(1, 3).flatmap(
            lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )
)
def test_snf_matches_determinantal_divisors(rows):
    S = smith_normal_form(_mat(ZZ, rows))
    assert [abs(d) for d in S.diagonal] == _determinantal_divisors(rows)
    nz = [d for d in S.diagonal if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_rank_kernel_identity():
    r, basis = rank_kernel(ExactMatrix.identity(QQ, 3))
    assert r == 3 and basis == []


def test_rank_kernel_f2():
    F2 = PrimeField(2)
    r, basis = rank_kernel(_mat(F2, [[1, 1], [1, 1]]))
    assert r == 1
    assert basis == [[1, 1]]


def test_rank_kernel_empty_rows():
    r, basis = rank_kernel(ExactMatrix.zeros(QQ, 0, 3))
    assert r == 0 and len(basis) == 3


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_nullity_and_kernel_over_qq(rows):
    A = _mat(QQ, [[Fraction(v) for v in r] for r in rows])
    r, basis = rank_kernel(A)
    assert r == sympy.Matrix(rows).rank()
    assert r + len(basis) == A.ncols
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in A.rows)


def test_homology_doubling():
    inv = homology_invariants(_mat(ZZ, [[2]]), ExactMatrix.zeros(ZZ, 0, 1))
    assert inv.free_rank == 0 and inv.torsion == (2,)


def test_homology_free_rank_two():
    inv = homology_invariants(ExactMatrix.zeros(ZZ, 2, 0), ExactMatrix.zeros(ZZ, 0, 2))
    assert inv.free_rank == 2 and inv.torsion == ()


def test_homology_over_univariate_polynomials():
    R = PolyRing(QQ, ("x",))
    x = R.var(0)
    inv = homology_invariants(ExactMatrix(R, [[x]]), ExactMatrix.zeros(R, 0, 1))
    assert inv.free_rank == 0
    assert [R.format(t) for t in inv.torsion] == ["x"]


def test_rank_over_zz_and_fp_agree_with_sympy():
    rows = [[2, 4], [6, 8], [1, 1]]
    assert rank(_mat(ZZ, rows)) == 2
    assert rank(_mat(PrimeField(2), rows)) == 1
