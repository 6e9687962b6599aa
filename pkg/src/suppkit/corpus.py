"""Seeded random inputs for the verification suites."""

from __future__ import annotations

import random

from .complexes import ChainComplex, ChainMap
from .exactla import ExactMatrix
from .grobner import Ideal
from .modules import FpModule
from .polys import PolyRing
from .rings import QQ, ZZ, PrimeField


def standard_rings() -> list:
    return [PolyRing(PrimeField(32003), ("x", "y")), PolyRing(QQ, ("x", "y"))]


def _monomial(R, rng, max_deg=2, allow_one=False):
    while True:
        e = tuple(rng.randint(0, max_deg) for _ in range(R.n))
        if sum(e) or allow_one:
            return R.from_terms({e: R.base.one})


def _binomial(R, rng, max_deg=2):
    a = _monomial(R, rng, max_deg)
    while True:
        b = _monomial(R, rng, max_deg, allow_one=True)
        if b != a:
            break
    c = R.base.from_int(rng.choice([1, -1, 2]))
    return R.sub(a, R.scale(b, c))


def _entry(R, rng, monomial: bool, zero_prob=0.3):
    r = rng.random()
    if r < zero_prob:
        return R.zero
    if monomial or r < 0.75:
        return _monomial(R, rng)
    return _binomial(R, rng)


def random_cyclic(R, rng, monomial: bool) -> FpModule:
    k = rng.randint(1, 3)
    gens = [(_monomial(R, rng) if monomial or rng.random() < 0.6 else _binomial(R, rng)) for _ in range(k)]
    return FpModule.cyclic(R, gens)


def random_complex(R, rng, monomial: bool = False) -> ChainComplex:
    """One of: a cyclic module, a two-term free complex, or a three-term
    complex ``R -> R^2 -> R`` built from a Koszul pattern; the bottom degree
    is 0 or 1."""
    shape = rng.choice(["cyclic", "two-term", "koszul"])
    lo = rng.randint(0, 1)
    if shape == "cyclic":
        C = ChainComplex.from_module(random_cyclic(R, rng, monomial), lo)
    elif shape == "two-term":
        b = 1 if monomial else rng.randint(1, 2)
        a = rng.randint(1, 2)
        D = ExactMatrix(R, [[_entry(R, rng, monomial) for _ in range(a)] for _ in range(b)], b, a)
        if D.is_zero():
            D.rows[0][0] = _monomial(R, rng)
        C = ChainComplex(R, {lo: b, lo + 1: a}, {lo + 1: D})
    else:
        f = _monomial(R, rng) if monomial else _entry(R, rng, False, 0.0)
        g = _monomial(R, rng) if monomial else _entry(R, rng, False, 0.0)
        h = _monomial(R, rng, 1, allow_one=True)
        d1 = ExactMatrix(R, [[f, g]], 1, 2)
        d2 = ExactMatrix(R, [[R.mul(h, g)], [R.neg(R.mul(h, f))]], 2, 1)
        C = ChainComplex(R, {lo: 1, lo + 1: 2, lo + 2: 1}, {lo + 1: d1, lo + 2: d2})
    return C


def random_module_map(R, rng, monomial: bool):
    """Multiplication by a monomial ``h : R/I -> R/J`` with ``hI ⊆ J``."""
    M = random_cyclic(R, rng, monomial)
    I = M.presentation.rows[0]
    h = _monomial(R, rng, 1, allow_one=True)
    extra = [_monomial(R, rng)] if rng.random() < 0.5 else []
    J = [R.mul(h, g) for g in I] + extra
    X = ChainComplex.from_module(M)
    Y = ChainComplex.from_module(FpModule.cyclic(R, J))
    return ChainMap(X, Y, {0: ExactMatrix(R, [[h]], 1, 1)})


def support_identity_cases(seed: int, count: int) -> list:
    """Cases alternating over ``F_32003[x,y]`` and ``QQ[x,y]``."""
    rng = random.Random(seed)
    rings = standard_rings()
    cases = []
    for k in range(count):
        R = rings[k % len(rings)]
        monomial = rng.random() < 0.5
        X = random_complex(R, rng, monomial)
        Y = random_complex(R, rng, monomial)
        M = ChainComplex.from_module(random_cyclic(R, rng, monomial))
        cases.append(
            {
                "name": f"case-{k:02d}-{'Fp' if k % 2 == 0 else 'QQ'}",
                "X": X,
                "Y": Y,
                "M": M,
                "map": random_module_map(R, rng, monomial),
                "monomial": monomial,
            }
        )
    return cases


def presented_complexes(seed: int, count: int, ring=None) -> list:
    rng = random.Random(seed)
    R = ring or PolyRing(QQ, ("x", "y"))
    return [random_complex(R, rng, rng.random() < 0.5) for _ in range(count)]


def _torsion_cyclic(R, rng, a: Ideal) -> list:
    """Generators of an ideal containing a power of every generator of a."""
    gens = [R.mul(g, g) if rng.random() < 0.5 else g for g in a.gens]
    gens = [R.mul(g, _monomial(R, rng, 1, allow_one=True)) if rng.random() < 0.3 else g for g in gens]
    if rng.random() < 0.5:
        gens.append(_monomial(R, rng))
    # keep a power of each generator so that the support stays in V(a)
    gens += [R.mul(R.mul(g, g), g) for g in a.gens]
    return gens


def torsion_maps(seed: int, count: int, a: Ideal) -> list:
    """Chain maps between modules supported in ``V(a)``; a mix of
    isomorphisms (units, identities) and non-isomorphisms."""
    rng = random.Random(seed)
    R = a.ring
    out = []
    for k in range(count):
        I = _torsion_cyclic(R, rng, a)
        X = ChainComplex.from_module(FpModule.cyclic(R, I))
        kind = k % 3
        if kind == 0:
            c = R.from_terms({(0,) * R.n: R.base.from_int(rng.choice([1, 2, 3]))})
            out.append(ChainMap(X, X, {0: ExactMatrix(R, [[c]], 1, 1)}))
        elif kind == 1:
            extra = _monomial(R, rng)
            Y = ChainComplex.from_module(FpModule.cyclic(R, I + [extra]))
            out.append(ChainMap(X, Y, {0: ExactMatrix.identity(R, 1)}))
        else:
            h = _monomial(R, rng, 1)
            Y = ChainComplex.from_module(FpModule.cyclic(R, I + [R.mul(h, g) for g in I]))
            out.append(ChainMap(X, Y, {0: ExactMatrix(R, [[h]], 1, 1)}))
    return out


# ---------------------------------------------------------------------------
# integer complexes
# ---------------------------------------------------------------------------


def _unimodular(n: int, rng) -> tuple:
    """A random unimodular integer matrix and its inverse."""
    A = ExactMatrix.identity(ZZ, n)
    Ainv = ExactMatrix.identity(ZZ, n)
    for _ in range(2 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        E = ExactMatrix.identity(ZZ, n)
        E.rows[i][j] = c
        Einv = ExactMatrix.identity(ZZ, n)
        Einv.rows[i][j] = -c
        A = E @ A
        Ainv = Ainv @ Einv
    return A, Ainv


def integer_complex(rng) -> ChainComplex:
    """Direct sum of elementary complexes ``Z --n--> Z`` and free terms in
    degrees 0..2, conjugated by random unimodular changes of basis."""
    pieces = []
    for _ in range(rng.randint(2, 5)):
        deg = rng.randint(0, 2)
        if deg < 2 and rng.random() < 0.7:
            pieces.append((deg, rng.choice([0, 1, 2, 3, 4, 6, 12])))
        else:
            pieces.append((deg, None))
    ranks = {d: 0 for d in range(3)}
    slots = []
    for deg, n in pieces:
        lo_idx = ranks[deg]
        ranks[deg] += 1
        hi_idx = None
        if n is not None:
            hi_idx = ranks[deg + 1]
            ranks[deg + 1] += 1
        slots.append((deg, n, lo_idx, hi_idx))
    diffs = {i: ExactMatrix.zeros(ZZ, ranks[i - 1], ranks[i]) for i in (1, 2)}
    for deg, n, lo_idx, hi_idx in slots:
        if n is not None:
            diffs[deg + 1].rows[lo_idx][hi_idx] = n
    changes = {i: _unimodular(ranks[i], rng) for i in ranks}
    new = {i: changes[i - 1][0] @ diffs[i] @ changes[i][1] for i in (1, 2)}
    return ChainComplex(ZZ, ranks, new)


def integer_complexes(seed: int, count: int) -> list:
    rng = random.Random(seed)
    return [integer_complex(rng) for _ in range(count)]


def integer_module(rng) -> FpModule:
    """A finitely generated abelian group with small invariant factors,
    presented after a random unimodular change of basis."""
    g = rng.randint(1, 2)
    D = ExactMatrix.zeros(ZZ, g, g)
    for i in range(g):
        D.rows[i][i] = rng.choice([0, 2, 3, 4, 6, 12])
    U, _ = _unimodular(g, rng)
    _, V = _unimodular(g, rng)
    return FpModule.coker(U @ D @ V)


def integer_module_pairs(seed: int, count: int) -> list:
    rng = random.Random(seed)
    return [(integer_module(rng), integer_module(rng)) for _ in range(count)]
