"""Exact coefficient fields: the rationals and prime fields F_p.

Field elements are plain Python values interpreted by a field object:
`Fraction` over the rationals, `int` in [0, p) over F_p.  Keeping elements
unwrapped makes the elimination kernels fast; containers (polynomials,
matrices, subspaces) carry the field and refuse to mix contexts.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import CharacteristicError, FieldMismatchError, PreconditionError


class Field:
    """Interface shared by the two coefficient fields."""

    char: int

    def coerce(self, x):
        raise NotImplementedError

    def from_fraction(self, q: Fraction):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def factorial(self, k: int):
        """k! as an element of this field."""
        return self.coerce(math.factorial(k))


class RationalField(Field):
    """The field of rational numbers; elements are `Fraction`."""

    char = 0

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise FieldMismatchError(f"{x!r} is not a rational scalar")

    def from_fraction(self, q: Fraction):
        return q

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(RationalField)

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """F_p for a prime p; elements are `int` in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or not _is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        if p.bit_length() > 63:
            raise PreconditionError("modulus must fit in a machine word")
        self.char = p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.char
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        raise FieldMismatchError(f"{x!r} is not an F_{self.char} scalar")

    def from_fraction(self, q: Fraction):
        den = q.denominator % self.char
        if den == 0:
            raise ZeroDivisionError(
                f"denominator of {q} vanishes modulo {self.char}")
        return q.numerator * pow(den, -1, self.char) % self.char

    def add(self, a, b):
        return (a + b) % self.char

    def sub(self, a, b):
        return (a - b) % self.char

    def mul(self, a, b):
        return (a * b) % self.char

    def neg(self, a):
        return -a % self.char

    def inv(self, a):
        a %= self.char
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.char)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash((PrimeField, self.char))

    def __repr__(self):
        return f"GF({self.char})"


def _is_prime(n: int) -> bool:
    if n < 4:
        return n >= 2
    if n % 2 == 0:
        return False
    # deterministic Miller-Rabin, valid for word-sized n
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """The prime field F_p (cached, so equal moduli share one object)."""
    field = _gf_cache.get(p)
    if field is None:
        field = PrimeField(p)
        _gf_cache[p] = field
    return field


def char_guard(field: Field, degree: int) -> None:
    """Reject characteristics p with 0 < p <= degree.

    Working at degree d needs d! invertible, which holds exactly when the
    characteristic is zero or greater than d.
    """
    if field.char != 0 and field.char <= degree:
        raise CharacteristicError(
            f"characteristic {field.char} must be zero or greater than the "
            f"working degree {degree}")


def same_field(a: Field, b: Field) -> Field:
    """Return the common field of two contexts or raise."""
    if a != b:
        raise FieldMismatchError(f"mixed coefficient fields {a!r} and {b!r}")
    return a
