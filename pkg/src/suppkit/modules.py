"""Finitely presented modules ``coker(P : R^r -> R^g)``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactla import ExactMatrix, hstack, rank, smith_normal_form
from .polys import PolyRing


def _is_const_unit(R, a) -> bool:
    if isinstance(R, PolyRing):
        return bool(a.terms) and a.is_constant()
    return R.is_unit(a)


@dataclass
class Minimized:
    """A smaller presentation with mutually inverse generator maps.

    ``to_old`` (g_old x g_new) sends new generators to old ones and
    ``to_new`` (g_new x g_old) sends old generators to new ones.
    """

    module: "FpModule"
    to_old: ExactMatrix
    to_new: ExactMatrix


class FpModule:
    """``R^g`` modulo the column span of ``presentation`` (a g x r matrix)."""

    def __init__(self, ring, ngens: int, presentation: ExactMatrix | None = None):
        self.ring = ring
        self.ngens = ngens
        if presentation is None:
            presentation = ExactMatrix.zeros(ring, ngens, 0)
        if presentation.nrows != ngens:
            raise ValueError("presentation must have one row per generator")
        self.presentation = presentation
        self._zero = None
        self._sig = None

    # constructors -----------------------------------------------------------
    @classmethod
    def free(cls, ring, n: int) -> "FpModule":
        return cls(ring, n)

    @classmethod
    def cyclic(cls, ring, gens) -> "FpModule":
        """``R / (gens)``."""
        gens = [ring.coerce(g) for g in gens]
        return cls(ring, 1, ExactMatrix(ring, [gens], 1, len(gens)))

    @classmethod
    def coker(cls, P: ExactMatrix) -> "FpModule":
        return cls(P.ring, P.nrows, P)

    @classmethod
    def zero(cls, ring) -> "FpModule":
        return cls(ring, 0)

    def __repr__(self):
        return f"FpModule({self.ring}, coker {self.presentation.format()})"

    # structure ----------------------------------------------------------------
    @property
    def nrels(self) -> int:
        return self.presentation.ncols

    def direct_sum(self, other: "FpModule") -> "FpModule":
        from .exactla import block_diag

        return FpModule(self.ring, self.ngens + other.ngens, block_diag(self.ring, [self.presentation, other.presentation]))

    def contains_column(self, vec) -> bool:
        """Is ``vec`` (in R^g) inside the relation submodule?"""
        return self.ring.solve(self.presentation, vec) is not None

    def is_zero(self) -> bool:
        if self._zero is None:
            R = self.ring
            if self.ngens == 0:
                self._zero = True
            elif R.is_field:
                self._zero = rank(self.presentation) == self.ngens
            elif getattr(R, "is_euclidean", False):
                S = smith_normal_form(self.presentation)
                self._zero = S.rank == self.ngens and all(R.is_unit(d) for d in S.diagonal[: self.ngens])
            else:
                m = self.minimize().module
                if m.ngens == 0:
                    self._zero = True
                else:
                    P = m.presentation
                    self._zero = all(
                        R.solve(P, [R.one if i == j else R.zero for i in range(m.ngens)]) is not None
                        for j in range(m.ngens)
                    )
        return self._zero

    def minimize(self) -> Minimized:
        """Drop generators that a relation with a constant unit entry expresses
        through the others, and drop zero relations."""
        R = self.ring
        g = self.ngens
        P = [list(r) for r in self.presentation.rows]
        ncols = self.presentation.ncols
        alive_rows = list(range(g))
        alive_cols = [j for j in range(ncols) if any(not R.is_zero(P[i][j]) for i in range(g))]
        # to_new columns: image of each old generator as a dict over alive rows
        images = {i: {i: R.one} for i in range(g)}
        while True:
            hit = None
            for j in alive_cols:
                for i in alive_rows:
                    if _is_const_unit(R, P[i][j]):
                        hit = (i, j)
                        break
                if hit:
                    break
            if hit is None:
                break
            i, j = hit
            u_inv = R.unit_inverse(P[i][j])
            others = [k for k in alive_rows if k != i]
            # e_i = -u^{-1} sum_{k != i} P[k][j] e_k
            coeffs = {k: R.neg(R.mul(u_inv, P[k][j])) for k in others if not R.is_zero(P[k][j])}
            for src, img in images.items():
                if i in img:
                    c = img.pop(i)
                    for k, a in coeffs.items():
                        v = R.add(img.get(k, R.zero), R.mul(c, a))
                        if R.is_zero(v):
                            img.pop(k, None)
                        else:
                            img[k] = v
            row_i = P[i]
            for k in others:
                f = P[k][j]
                if R.is_zero(f):
                    continue
                fu = R.mul(f, u_inv)
                for col in alive_cols:
                    if col != j and not R.is_zero(row_i[col]):
                        P[k][col] = R.sub(P[k][col], R.mul(fu, row_i[col]))
            alive_rows = others
            alive_cols = [c for c in alive_cols if c != j and any(not R.is_zero(P[k][c]) for k in alive_rows)]
        new_index = {old: n for n, old in enumerate(alive_rows)}
        gn = len(alive_rows)
        newP = ExactMatrix(R, [[P[i][j] for j in alive_cols] for i in alive_rows], gn, len(alive_cols))
        to_old = ExactMatrix.zeros(R, g, gn)
        for n, old in enumerate(alive_rows):
            to_old.rows[old][n] = R.one
        to_new = ExactMatrix.zeros(R, gn, g)
        for src, img in images.items():
            for k, c in img.items():
                to_new.rows[new_index[k]][src] = c
        return Minimized(FpModule(R, gn, newP), to_old, to_new)

    def minimal(self) -> "FpModule":
        return self.minimize().module

    # invariants ---------------------------------------------------------------
    def signature(self):
        """A presentation-independent invariant used to compare modules.

        Fields: the dimension.  Euclidean domains: free rank and torsion
        factors.  Polynomial rings: the reduced Groebner bases of all
        Fitting ideals.
        """
        if self._sig is not None:
            return self._sig
        R = self.ring
        if R.is_field:
            sig = ("dim", self.ngens - rank(self.presentation))
        elif getattr(R, "is_euclidean", False):
            S = smith_normal_form(self.presentation)
            d = list(S.diagonal[: self.ngens]) + [R.zero] * max(0, self.ngens - len(S.diagonal))
            free = sum(1 for x in d if R.is_zero(x))
            tors = tuple(R.format(x) for x in d if not R.is_zero(x) and not R.is_unit(x))
            sig = ("pid", free, tors)
        else:
            m = self.minimal()
            fits = [tuple(R.format(g) for g in fi.groebner_basis()) for fi in fitting_ideals(m)]
            # Fitting ideals past the generator count are the unit ideal
            while fits and fits[-1] == (R.format(R.one),):
                fits.pop()
            sig = ("fitting",) + tuple(fits)
        self._sig = sig
        return sig

    def format_invariants(self) -> str:
        sig = self.signature()
        if sig[0] == "dim":
            return "0" if sig[1] == 0 else f"{self.ring.tag}^{sig[1]}"
        if sig[0] == "pid":
            name = self.ring.tag.split(" ")[0]
            parts = []
            if sig[1]:
                parts.append(name if sig[1] == 1 else f"{name}^{sig[1]}")
            parts += [f"{name}/({t})" for t in sig[2]]
            return " + ".join(parts) if parts else "0"
        if self.is_zero():
            return "0"
        m = self.minimal()
        return f"coker {m.presentation.format()}" if m.nrels else f"R^{m.ngens}"


def minors(P: ExactMatrix, size: int) -> list:
    """All ``size x size`` minors of ``P`` (nonzero ones only)."""
    R = P.ring
    if size == 0:
        return [R.one]
    if size > min(P.nrows, P.ncols):
        return []
    memo = {}

    def det(rows, cols):
        key = (rows, cols)
        if key in memo:
            return memo[key]
        if len(rows) == 1:
            v = P.rows[rows[0]][cols[0]]
        else:
            v = R.zero
            r0, rest = rows[0], rows[1:]
            for k, c in enumerate(cols):
                a = P.rows[r0][c]
                if R.is_zero(a):
                    continue
                sub = det(rest, cols[:k] + cols[k + 1:])
                if R.is_zero(sub):
                    continue
                t = R.mul(a, sub)
                v = R.add(v, t) if k % 2 == 0 else R.sub(v, t)
        memo[key] = v
        return v

    out = []
    for rows in itertools.combinations(range(P.nrows), size):
        for cols in itertools.combinations(range(P.ncols), size):
            d = det(rows, cols)
            if not R.is_zero(d):
                out.append(d)
    return out


def fitting_ideals(M: FpModule) -> list:
    """``Fitt_0 ⊆ Fitt_1 ⊆ ... ⊆ Fitt_g = (1)`` (the last one omitted)."""
    from .grobner import Ideal

    P = M.presentation
    g = M.ngens
    return [Ideal(M.ring, minors(P, g - k)) for k in range(g)]


def submodule_quotient(U: ExactMatrix, V: ExactMatrix) -> FpModule:
    """Module generated by the columns of U modulo (span V ∩ span U)."""
    R = U.ring
    z = U.ncols
    ker = R.kernel(hstack(R, [U, V], U.nrows))
    rels = [v[:z] for v in ker]
    return FpModule(R, z, ExactMatrix.from_columns(R, rels, z))
