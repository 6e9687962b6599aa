"""Scalar rings: the integers, the rationals and prime fields.

Elements are plain Python values (``int`` for ZZ and GF(p), ``Fraction``
for QQ); the ring object supplies the arithmetic so that matrix and module
code can be written once for every coefficient ring, polynomial rings
included.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedRing


class Ring:
    """Interface shared by every coefficient ring used by the engine."""

    is_field = False
    is_euclidean = False
    tag = "ring"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return self.tag

    # arithmetic -----------------------------------------------------------
    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def unit_inverse(self, a):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    # module engine (matrix kernels, membership) ---------------------------
    def kernel(self, A):
        """Columns generating the kernel of ``A`` acting on column vectors."""
        from . import exactla

        return exactla.kernel(A)

    def solve(self, A, b):
        """Some ``x`` with ``A x = b``, or None if ``b`` is not in the image."""
        from . import exactla

        return exactla.solve(A, b)


class IntegerRing(Ring):
    is_euclidean = True
    tag = "ZZ"

    def from_int(self, n):
        return int(n)

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise UnsupportedRing(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def is_unit(self, a):
        return a in (1, -1)

    def unit_inverse(self, a):
        return a

    # Euclidean structure
    def euclid_size(self, a):
        return abs(a)

    def divmod(self, a, b):
        return divmod(a, b)

    def normal_unit(self, a):
        """The unit ``u`` such that ``a / u`` is the canonical associate."""
        return -1 if a < 0 else 1


class RationalField(Ring):
    is_field = True
    is_euclidean = True
    tag = "QQ"

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, x):
        return Fraction(x)

    def is_unit(self, a):
        return a != 0

    def unit_inverse(self, a):
        return 1 / Fraction(a)

    def inv(self, a):
        return 1 / Fraction(a)

    def euclid_size(self, a):
        return 0 if a == 0 else 1

    def divmod(self, a, b):
        return Fraction(a) / b, Fraction(0)

    def normal_unit(self, a):
        return Fraction(a) if a != 0 else Fraction(1)

    def format(self, a):
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


class PrimeField(Ring):
    is_field = True
    is_euclidean = True

    def __init__(self, p: int):
        import sympy

        if not sympy.isprime(p):
            raise UnsupportedRing(f"{p} is not prime")
        self.p = p
        self.tag = f"Fp({p})"

    def from_int(self, n):
        return int(n) % self.p

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def is_unit(self, a):
        return a % self.p != 0

    def unit_inverse(self, a):
        return pow(a, -1, self.p)

    def inv(self, a):
        return pow(a, -1, self.p)

    def euclid_size(self, a):
        return 0 if a % self.p == 0 else 1

    def divmod(self, a, b):
        return a * pow(b, -1, self.p) % self.p, 0

    def normal_unit(self, a):
        return a % self.p if a % self.p else 1


ZZ = IntegerRing()
QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)
