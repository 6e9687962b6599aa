"""Exact linear algebra: matrices over the scalar and polynomial rings,
row reduction over fields and Smith normal form over Euclidean domains."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotAComplex, RingMismatch, UnsupportedRing

SPARSE_DENSITY = 0.25


class ExactMatrix:
    """Dense ``nrows x ncols`` matrix whose entries live in ``ring``.

    ``storage`` reports ``"sparse"`` when the fraction of nonzero entries is
    below ``SPARSE_DENSITY``; products then skip zero entries.
    """

    __slots__ = ("ring", "rows", "nrows", "ncols", "_nnz")

    def __init__(self, ring, rows, nrows: int | None = None, ncols: int | None = None):
        rows = [[ring.coerce(v) for v in row] for row in rows]
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows) if nrows is None else nrows
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        self.ncols = ncols
        if len(rows) != self.nrows or any(len(r) != ncols for r in rows):
            raise ValueError("ragged or mis-sized matrix")
        self._nnz = None

    @classmethod
    def _raw(cls, ring, rows, nrows, ncols):
        m = cls.__new__(cls)
        m.ring, m.rows, m.nrows, m.ncols, m._nnz = ring, rows, nrows, ncols, None
        return m

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero
        return cls._raw(ring, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, ring, n):
        m = cls.zeros(ring, n, n)
        for i in range(n):
            m.rows[i][i] = ring.one
        return m

    @classmethod
    def from_columns(cls, ring, cols, nrows):
        rows = [[c[i] for c in cols] for i in range(nrows)]
        return cls(ring, rows, nrows, len(cols))

    # basic access -----------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def copy(self):
        return ExactMatrix._raw(self.ring, [list(r) for r in self.rows], self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        if self._nnz is None:
            z = self.ring.is_zero
            self._nnz = sum(1 for r in self.rows for v in r if not z(v))
        return self._nnz

    @property
    def storage(self) -> str:
        size = self.nrows * self.ncols
        return "sparse" if size and self.nnz / size < SPARSE_DENSITY else "dense"

    def sparse_entries(self) -> dict:
        z = self.ring.is_zero
        return {(i, j): v for i, r in enumerate(self.rows) for j, v in enumerate(r) if not z(v)}

    def is_zero(self) -> bool:
        return self.nnz == 0

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape or self.ring != other.ring:
            return False
        eq = self.ring.eq
        return all(eq(a, b) for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash((self.shape, self.ring))

    def __repr__(self):
        return f"ExactMatrix({self.ring}, {self.format()})"

    def format(self) -> str:
        f = self.ring.format
        return "[" + ",".join("[" + ",".join(f(v) for v in r) + "]" for r in self.rows) + "]"

    # algebra ----------------------------------------------------------------
    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        add = self.ring.add
        rows = [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return ExactMatrix._raw(self.ring, rows, self.nrows, self.ncols)

    def __neg__(self):
        neg = self.ring.neg
        return ExactMatrix._raw(self.ring, [[neg(a) for a in r] for r in self.rows], self.nrows, self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        mul = self.ring.mul
        return ExactMatrix._raw(self.ring, [[mul(c, a) for a in r] for r in self.rows], self.nrows, self.ncols)

    def __matmul__(self, other):
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        R = self.ring
        add, mul, isz = R.add, R.mul, R.is_zero
        z = R.zero
        orows = other.rows
        out = []
        for r in self.rows:
            acc = [z] * other.ncols
            for k, a in enumerate(r):
                if isz(a):
                    continue
                for j, b in enumerate(orows[k]):
                    if not isz(b):
                        acc[j] = add(acc[j], mul(a, b))
            out.append(acc)
        return ExactMatrix._raw(R, out, self.nrows, other.ncols)

    def apply(self, vec):
        """Matrix times a column vector given as a list."""
        R = self.ring
        add, mul, isz = R.add, R.mul, R.is_zero
        out = []
        for r in self.rows:
            acc = R.zero
            for a, b in zip(r, vec):
                if not isz(a) and not isz(b):
                    acc = add(acc, mul(a, b))
            out.append(acc)
        return out

    @property
    def T(self):
        rows = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return ExactMatrix._raw(self.ring, rows, self.ncols, self.nrows)

    def submatrix(self, rows, cols):
        rows, cols = list(rows), list(cols)
        return ExactMatrix._raw(
            self.ring, [[self.rows[i][j] for j in cols] for i in rows], len(rows), len(cols)
        )

    def map_entries(self, ring, fn):
        return ExactMatrix(ring, [[fn(v) for v in r] for r in self.rows], self.nrows, self.ncols)

    def kron(self, other):
        self._check(other)
        mul = self.ring.mul
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append([mul(a, b) for a in r for b in s])
        return ExactMatrix._raw(
            self.ring, rows, self.nrows * other.nrows, self.ncols * other.ncols
        )


def hstack(ring, mats, nrows=None):
    mats = list(mats)
    if nrows is None:
        nrows = mats[0].nrows if mats else 0
    rows = [[] for _ in range(nrows)]
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("hstack row mismatch")
        for i in range(nrows):
            rows[i].extend(m.rows[i])
    return ExactMatrix._raw(ring, rows, nrows, sum(m.ncols for m in mats))


def vstack(ring, mats, ncols=None):
    mats = list(mats)
    if ncols is None:
        ncols = mats[0].ncols if mats else 0
    rows = []
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("vstack column mismatch")
        rows.extend(list(r) for r in m.rows)
    return ExactMatrix._raw(ring, rows, len(rows), ncols)


def block_diag(ring, mats):
    mats = list(mats)
    n = sum(m.ncols for m in mats)
    out = []
    off = 0
    for m in mats:
        for r in m.rows:
            out.append([ring.zero] * off + list(r) + [ring.zero] * (n - off - m.ncols))
        off += m.ncols
    return ExactMatrix._raw(ring, out, len(out), n)


# ---------------------------------------------------------------------------
# fields: reduced row echelon form
# ---------------------------------------------------------------------------


def rref(A: ExactMatrix):
    """Return ``(R, pivots)`` with ``R`` the reduced row echelon form."""
    F = A.ring
    if not F.is_field:
        raise UnsupportedRing(f"row reduction needs a field, got {F}")
    rows = [list(r) for r in A.rows]
    pivots = []
    r = 0
    isz, mul, sub, inv = F.is_zero, F.mul, F.sub, F.inv
    for c in range(A.ncols):
        p = next((i for i in range(r, len(rows)) if not isz(rows[i][c])), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        s = inv(rows[r][c])
        rows[r] = [mul(s, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not isz(rows[i][c]):
                f = rows[i][c]
                rows[i] = [sub(a, mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return ExactMatrix._raw(F, rows, A.nrows, A.ncols), pivots


def rank_kernel(A: ExactMatrix):
    """Rank of ``A`` and a reduced echelon basis of its null space."""
    F = A.ring
    R, pivots = rref(A)
    free = [c for c in range(A.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [F.zero] * A.ncols
        v[f] = F.one
        for i, p in enumerate(pivots):
            v[p] = F.neg(R.rows[i][f])
        basis.append(v)
    return len(pivots), basis


def rank(A: ExactMatrix) -> int:
    if A.ring.is_field:
        return len(rref(A)[1])
    return sum(1 for d in smith_normal_form(A).diagonal if not A.ring.is_zero(d))


# ---------------------------------------------------------------------------
# Euclidean domains: Smith normal form
# ---------------------------------------------------------------------------


@dataclass
class SmithForm:
    U: ExactMatrix
    D: ExactMatrix
    V: ExactMatrix
    diagonal: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        isz = self.D.ring.is_zero
        return sum(1 for d in self.diagonal if not isz(d))


def _check_euclidean(R):
    if not getattr(R, "is_euclidean", False):
        raise UnsupportedRing(f"Smith normal form needs a Euclidean domain, got {R}")


def smith_normal_form(A: ExactMatrix) -> SmithForm:
    """``U A V = D`` with ``D`` diagonal and each factor dividing the next.

    The pivot is always the entry of smallest Euclidean size in the active
    block (ties broken by lowest row, then column).  Factors are normalized
    to be positive over ZZ and monic over k[x].
    """
    R = A.ring
    _check_euclidean(R)
    m, n = A.shape
    D = [list(r) for r in A.rows]
    U = [list(r) for r in ExactMatrix.identity(R, m).rows]
    V = [list(r) for r in ExactMatrix.identity(R, n).rows]
    isz, size = R.is_zero, R.euclid_size
    sub, mul, add = R.sub, R.mul, R.add

    def row_op(M, i, k, q):  # row_i -= q * row_k
        M[i] = [sub(a, mul(q, b)) for a, b in zip(M[i], M[k])]

    def col_op(M, j, k, q):  # col_j -= q * col_k
        for r in M:
            r[j] = sub(r[j], mul(q, r[k]))

    def swap_cols(M, a, b):
        for r in M:
            r[a], r[b] = r[b], r[a]

    diag = []
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = D[i][j]
                    if not isz(v):
                        s = size(v)
                        if best is None or s < best[0]:
                            best = (s, i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                D[t], D[i] = D[i], D[t]
                U[t], U[i] = U[i], U[t]
            if j != t:
                swap_cols(D, t, j)
                swap_cols(V, t, j)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if not isz(D[i][t]):
                    q, r = R.divmod(D[i][t], p)
                    row_op(D, i, t, q)
                    row_op(U, i, t, q)
                    if not isz(r):
                        clean = False
            for j in range(t + 1, n):
                if not isz(D[t][j]):
                    q, r = R.divmod(D[t][j], p)
                    col_op(D, j, t, q)
                    col_op(V, j, t, q)
                    if not isz(r):
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if not isz(D[i][j]) and not isz(R.divmod(D[i][j], p)[1]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            D[t] = [add(a, b) for a, b in zip(D[t], D[bad])]
            U[t] = [add(a, b) for a, b in zip(U[t], U[bad])]
        if best is None:
            break
        u = R.normal_unit(D[t][t])
        if not R.eq(u, R.one):
            ui = R.unit_inverse(u)
            D[t] = [mul(ui, a) for a in D[t]]
            U[t] = [mul(ui, a) for a in U[t]]
        diag.append(D[t][t])
    while len(diag) < min(m, n):
        diag.append(R.zero)
    return SmithForm(
        U=ExactMatrix._raw(R, U, m, m),
        D=ExactMatrix._raw(R, D, m, n),
        V=ExactMatrix._raw(R, V, n, n),
        diagonal=diag,
    )


# ---------------------------------------------------------------------------
# kernels and linear systems over fields and ZZ
# ---------------------------------------------------------------------------


def kernel(A: ExactMatrix) -> list:
    """Generators (as lists) of ``{v : A v = 0}``."""
    R = A.ring
    if R.is_field:
        return rank_kernel(A)[1]
    _check_euclidean(R)
    S = smith_normal_form(A)
    return [S.V.column(j) for j in range(S.rank, A.ncols)]


def solve(A: ExactMatrix, b) -> list | None:
    """Some ``x`` with ``A x = b``, or ``None``."""
    R = A.ring
    b = [R.coerce(v) for v in b]
    if A.ncols == 0:
        return [] if all(R.is_zero(v) for v in b) else None
    if R.is_field:
        aug = hstack(R, [A, ExactMatrix(R, [[v] for v in b], A.nrows, 1)])
        E, pivots = rref(aug)
        if A.ncols in pivots:
            return None
        x = [R.zero] * A.ncols
        for i, p in enumerate(pivots):
            x[p] = E.rows[i][A.ncols]
        return x
    _check_euclidean(R)
    S = smith_normal_form(A)
    c = S.U.apply(b)
    y = [R.zero] * A.ncols
    for i, v in enumerate(c):
        if i < S.rank:
            q, r = R.divmod(v, S.diagonal[i])
            if not R.is_zero(r):
                return None
            y[i] = q
        elif not R.is_zero(v):
            return None
    return S.V.apply(y)


# ---------------------------------------------------------------------------
# homology of a pair of composable maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyInvariants:
    """Free rank plus torsion factors (over a field: only the dimension)."""

    ring: object
    free_rank: int
    torsion: tuple = ()

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def format(self) -> str:
        if self.is_zero:
            return "0"
        name = self.ring.tag.split(" ")[0]
        parts = []
        if self.free_rank:
            parts.append(name if self.free_rank == 1 else f"{name}^{self.free_rank}")
        for d in self.torsion:
            parts.append(f"{name}/({self.ring.format(d)})")
        return " + ".join(parts)

    def __str__(self):
        return self.format()


def homology_invariants(d_in: ExactMatrix, d_out: ExactMatrix) -> HomologyInvariants:
    """Invariants of ``ker(d_out) / im(d_in)``."""
    R = d_in.ring
    if d_out.ring != R:
        raise RingMismatch(f"{d_out.ring} vs {R}")
    if d_out.ncols != d_in.nrows:
        raise NotAComplex(f"cannot compose {d_out.shape} after {d_in.shape}")
    if d_out.nrows and d_in.ncols and not (d_out @ d_in).is_zero():
        raise NotAComplex("consecutive differentials do not compose to zero")
    n = d_in.nrows
    if R.is_field:
        return HomologyInvariants(R, n - rank(d_out) - rank(d_in))
    _check_euclidean(R)
    S = smith_normal_form(d_in)
    torsion = tuple(d for d in S.diagonal if not R.is_zero(d) and not R.is_unit(d))
    return HomologyInvariants(R, n - rank(d_out) - S.rank, torsion)
