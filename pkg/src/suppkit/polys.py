"""Multivariate polynomials over QQ or GF(p), optionally modulo relations.

A polynomial is a dict from exponent tuples to nonzero coefficients wrapped
in :class:`Poly`.  Elements of a quotient ring ``k[x]/I`` are always kept in
normal form with respect to a fixed Groebner basis of ``I``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .errors import RingMismatch, SessionSyntaxError, UnsupportedRing
from .rings import QQ, Ring


def _grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def make_order_key(order: str, nvars: int):
    """Sort key on exponent tuples: larger key means larger monomial."""
    if order == "grevlex":
        return lru_cache(maxsize=None)(_grevlex_key)
    if order == "lex":
        return lambda exp: exp
    if order.startswith("elim"):
        k = int(order[4:])

        @lru_cache(maxsize=None)
        def key(exp):
            return (_grevlex_key(exp[:k]), _grevlex_key(exp[k:]))

        return key
    raise UnsupportedRing(f"unknown monomial order {order!r}")


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: "PolyRing", terms: dict):
        self.ring = ring
        self.terms = terms

    # arithmetic through the ring ------------------------------------------
    def _lift(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other
        return self.ring.coerce(other)

    def __add__(self, other):
        return self.ring.add(self, self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.ring.sub(self, self._lift(other))

    def __rsub__(self, other):
        return self.ring.sub(self._lift(other), self)

    def __mul__(self, other):
        return self.ring.mul(self, self._lift(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self.ring.neg(self)

    def __pow__(self, n: int):
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.coerce(other).terms
        except (TypeError, ValueError, UnsupportedRing):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return self.ring.format(self)

    __str__ = __repr__

    # structure --------------------------------------------------------------
    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {self.ring.zero_exp}

    def constant_value(self):
        return self.terms.get(self.ring.zero_exp, self.ring.base.zero)

    def lead_exp(self):
        return max(self.terms, key=self.ring.mkey)

    def lead_coeff(self):
        return self.terms[self.lead_exp()]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables_used(self) -> set:
        return {i for e in self.terms for i, a in enumerate(e) if a}


class PolyRing(Ring):
    """``base[names] / (relations)`` with a fixed monomial order."""

    def __init__(self, base: Ring, names, order: str = "grevlex", relations=()):
        if not base.is_field:
            raise UnsupportedRing("polynomial coefficients must lie in QQ or GF(p)")
        names = tuple(names)
        if len(set(names)) != len(names):
            raise UnsupportedRing("variable names must be distinct")
        self.base = base
        self.names = names
        self.n = len(names)
        self.order = order
        self.mkey = make_order_key(order, self.n)
        self.zero_exp = (0,) * self.n
        self._rel_input = tuple(relations)
        self.free = self if not relations else PolyRing(base, names, order)
        self._rel_gb = None
        self._cache = {}
        rel_text = ""
        if relations:
            rel_text = "/(" + ", ".join(self.free.format(self.free.coerce(r)) for r in relations) + ")"
        self.tag = f"{base.tag}[{','.join(names)}]{rel_text} {order}"

    # construction helpers ---------------------------------------------------
    @property
    def has_relations(self) -> bool:
        return bool(self._rel_input)

    @property
    def relation_gb(self) -> list:
        """Reduced Groebner basis of the defining ideal, as free-ring polys."""
        if self._rel_gb is None:
            if not self._rel_input:
                self._rel_gb = []
            else:
                from .grobner import reduced_gb_polys

                rels = [self.free.coerce(r) for r in self._rel_input]
                self._rel_gb = reduced_gb_polys(self.free, rels)
        return self._rel_gb

    def quotient(self, relations) -> "PolyRing":
        rels = [self.free.coerce(self.lift(self.coerce(r))) for r in relations]
        return PolyRing(self.base, self.names, self.order, list(self.relation_gb) + rels)

    def extend(self, new_names, order: str | None = None) -> "PolyRing":
        """Free ring with ``new_names`` prepended (relations dropped)."""
        return PolyRing(self.base, tuple(new_names) + self.names, order or self.order)

    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def var(self, i):
        if isinstance(i, str):
            i = self.names.index(i)
        exp = tuple(1 if j == i else 0 for j in range(self.n))
        return self.normal(Poly(self, {exp: self.base.one}))

    def monomial(self, exp, coeff=None):
        c = self.base.one if coeff is None else self.base.coerce(coeff)
        return self.normal(Poly(self, {tuple(exp): c} if not self.base.is_zero(c) else {}))

    def from_terms(self, terms: dict) -> Poly:
        return self.normal(Poly(self, {e: c for e, c in terms.items() if not self.base.is_zero(c)}))

    # ring interface ---------------------------------------------------------
    def from_int(self, n):
        c = self.base.from_int(n)
        return Poly(self, {self.zero_exp: c} if not self.base.is_zero(c) else {})

    def coerce(self, x):
        if isinstance(x, Poly):
            if x.ring == self:
                return x
            if x.ring.names == self.names and x.ring.base == self.base:
                return self.normal(Poly(self, dict(x.terms)))
            raise RingMismatch(f"cannot map {x.ring} into {self}")
        if isinstance(x, str):
            return self.parse(x)
        c = self.base.coerce(x)
        return Poly(self, {self.zero_exp: c} if not self.base.is_zero(c) else {})

    def lift(self, p: Poly) -> Poly:
        """The normal-form representative as an element of the free ring."""
        return Poly(self.free, p.terms)

    def normal(self, p: Poly) -> Poly:
        if not self._rel_input:
            return p
        gb = self.relation_gb
        if not gb:
            return p
        from .grobner import poly_normal_form

        return Poly(self, poly_normal_form(self.free, p.terms, gb))

    def add(self, a, b):
        base = self.base
        t = dict(a.terms)
        for e, c in b.terms.items():
            s = base.add(t.get(e, base.zero), c)
            if base.is_zero(s):
                t.pop(e, None)
            else:
                t[e] = s
        return Poly(self, t)

    def neg(self, a):
        return Poly(self, {e: self.base.neg(c) for e, c in a.terms.items()})

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        base = self.base
        t = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = base.add(t.get(e, base.zero), base.mul(c1, c2))
                if base.is_zero(s):
                    t.pop(e, None)
                else:
                    t[e] = s
        return self.normal(Poly(self, t))

    def scale(self, a, c):
        c = self.base.coerce(c)
        if self.base.is_zero(c):
            return self.zero
        return Poly(self, {e: self.base.mul(v, c) for e, v in a.terms.items()})

    def is_zero(self, a):
        return not a.terms

    def eq(self, a, b):
        return a.terms == b.terms

    def is_unit(self, a):
        if not a.terms:
            return False
        if a.is_constant():
            return True
        if not self._rel_input:
            return False
        return self.unit_inverse(a) is not None

    def unit_inverse(self, a):
        if a.is_constant():
            return self.coerce(self.base.inv(a.constant_value()))
        key = ("inv", a)
        if key not in self._cache:
            from .exactla import ExactMatrix

            sol = self.solve(ExactMatrix(self, [[a]]), [self.one])
            self._cache[key] = None if sol is None else sol[0]
        return self._cache[key]

    def inv(self, a):
        u = self.unit_inverse(a)
        if u is None:
            raise ZeroDivisionError(f"{self.format(a)} is not a unit")
        return u

    def kernel(self, A):
        from .grobner import matrix_kernel

        return matrix_kernel(A)

    def solve(self, A, b):
        from .grobner import matrix_solve

        return matrix_solve(A, b)

    # Euclidean structure (univariate, no relations) ------------------------
    @property
    def is_euclidean(self):
        return self.n == 1 and not self._rel_input

    def euclid_size(self, a):
        return a.total_degree() if a.terms else -1

    def divmod(self, a, b):
        if not self.is_euclidean:
            raise UnsupportedRing("division with remainder needs a univariate polynomial ring")
        base = self.base
        db = b.total_degree()
        lb = b.terms[(db,)]
        q, r = {}, dict(a.terms)
        while r:
            dr = max(e[0] for e in r)
            if dr < db:
                break
            c = base.mul(r[(dr,)], base.inv(lb))
            q[(dr - db,)] = c
            for (e,), cb in b.terms.items():
                k = (e + dr - db,)
                s = base.sub(r.get(k, base.zero), base.mul(c, cb))
                if base.is_zero(s):
                    r.pop(k, None)
                else:
                    r[k] = s
        return Poly(self, q), Poly(self, r)

    def normal_unit(self, a):
        if not a.terms:
            return self.one
        return self.coerce(a.lead_coeff())

    # printing and parsing -------------------------------------------------
    def format_coeff(self, c) -> str:
        return self.base.format(c)

    def format(self, a) -> str:
        if not a.terms:
            return "0"
        exps = sorted(a.terms, key=self.mkey, reverse=True)
        out = []
        for e in exps:
            c = a.terms[e]
            neg = False
            if self.base == QQ and c < 0:
                neg, c = True, -c
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.names, e) if k
            )
            cs = self.format_coeff(c)
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def parse(self, text: str) -> Poly:
        return _PolyParser(self, text).parse()

    def __getstate__(self):
        state = dict(self.__dict__)
        state["mkey"] = None
        state["_cache"] = {}
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self.mkey = make_order_key(self.order, self.n)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _PolyParser:
    """Recursive descent over ``+ - * / ^`` with integer literals."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks = []
        for m in _TOKEN.finditer(text):
            if m.group(0).strip() == "":
                continue
            col = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
            if m.group(1):
                self.toks.append(("int", int(m.group(1)), col))
            elif m.group(2):
                self.toks.append(("name", m.group(2), col))
            else:
                self.toks.append(("op", m.group(3), col))
        self.i = 0

    def _err(self, msg):
        col = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise SessionSyntaxError(msg, 1, col + 1)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            self._err("empty polynomial")
        value = self.expr()
        if self.i != len(self.toks):
            self._err(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self):
        sign = 1
        while self.peek()[:2] in (("op", "-"), ("op", "+")):
            if self.take()[1] == "-":
                sign = -sign
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.power()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or not rhs.terms:
                    self._err("division only by nonzero constants")
                value = self.ring.scale(value, self.ring.base.inv(rhs.constant_value()))
        return value

    def power(self):
        value = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, n, _ = self.take()
            if kind != "int":
                self.i -= 1
                self._err("exponent must be a nonnegative integer")
            value = value ** n
        return value

    def atom(self):
        kind, val, _ = self.peek()
        if kind == "int":
            self.take()
            return self.ring.coerce(Fraction(val) if self.ring.base == QQ else val)
        if kind == "name":
            if val not in self.ring.names:
                self._err(f"unknown variable {val!r}")
            self.take()
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            self.take()
            value = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self._err("expected ')'")
            self.take()
            return value
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.atom()
        self._err(f"unexpected {val!r}")
