"""Exact coefficient arithmetic over the rationals and word-sized prime fields.

Elements are plain Python values: ``Fraction`` over the rationals, ints in
``[0, p)`` over a prime field.  The :class:`Field` object carries the
operations; nothing here is mutable.
"""

from fractions import Fraction
from math import comb

from .errors import BadParameterError

DEFAULT_PRIME = 32003

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """The rationals (p is None) or the prime field F_p.

    p is validated by a deterministic primality test, and p > 2 is enforced
    engine-wide (characteristic 2 is out of scope).
    """

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is not None:
            if not is_prime(p):
                raise BadParameterError(f"{p} is not prime")
            if p <= 2:
                raise BadParameterError("characteristic 2 is not supported")
        self.p = p

    @property
    def kind(self):
        return "rationals" if self.p is None else "prime-field"

    @classmethod
    def parse(cls, spec):
        """Parse a field spec string: 'q' or 'fp:<p>'."""
        spec = spec.strip().lower()
        if spec in ("q", "qq", "rationals"):
            return cls()
        if spec.startswith("fp:"):
            try:
                p = int(spec[3:])
            except ValueError:
                raise BadParameterError(f"bad field spec {spec!r}") from None
            return cls(p)
        raise BadParameterError(f"bad field spec {spec!r}; expected 'q' or 'fp:<p>'")

    def spec_string(self):
        return "q" if self.p is None else f"fp:{self.p}"

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def from_int(self, a):
        if self.p is None:
            return Fraction(a)
        return a % self.p

    def add(self, a, b):
        if self.p is None:
            return a + b
        return (a + b) % self.p

    def sub(self, a, b):
        if self.p is None:
            return a - b
        return (a - b) % self.p

    def mul(self, a, b):
        if self.p is None:
            return a * b
        return a * b % self.p

    def neg(self, a):
        if self.p is None:
            return -a
        return -a % self.p

    def inv(self, a):
        """Multiplicative inverse; raises ZeroDivisionError on 0."""
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("0 is not invertible")
            return 1 / Fraction(a)
        if a % self.p == 0:
            raise ZeroDivisionError("0 is not invertible")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == 0 if self.p is None else a % self.p == 0

    def eq(self, a, b):
        return self.is_zero(self.sub(a, b))

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


def GF(p):
    return Field(p)


def binomial(n, k):
    """Exact binomial coefficient; 0 for k < 0 or k > n."""
    if n < 0:
        raise BadParameterError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def truncate_nonneg(x):
    """[x] = max{x, 0}."""
    return x if x > 0 else 0
