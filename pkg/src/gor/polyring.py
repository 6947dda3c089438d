"""Standard graded polynomial rings, monomial orders, sparse polynomials.

Monomials are plain exponent tuples.  A Polynomial is a dict from monomial
to nonzero field element, tagged with its ring.  Everything is immutable in
spirit: operations return new objects.
"""

from fractions import Fraction

from .errors import BadParameterError, ParseError, RingMismatchError

MAX_EXPONENT = 4096  # degrees in this engine stay tiny; this is a tripwire


def mono_deg(m):
    return sum(m)


def mono_mul(a, b):
    m = tuple(x + y for x, y in zip(a, b))
    if any(e > MAX_EXPONENT for e in m):
        raise BadParameterError("exponent overflow")
    return m


def mono_div(a, b):
    """a / b, or None if b does not divide a."""
    q = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in q):
        return None
    return q


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def monomials_of_degree(n, d):
    """All exponent tuples of length n and total degree d, deterministic order."""
    if d < 0:
        return []
    out = []

    def rec(prefix, rest, left):
        if rest == 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), rest - 1, left - e)

    rec((), n, d)
    return out


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


class PolyRing:
    """k[x_1,...,x_n] with a fixed monomial order.

    order: "grevlex" (default), "lex", or ("elim", k) which eliminates the
    first k variables (block grevlex on each block).
    """

    def __init__(self, names, field, order="grevlex"):
        names = tuple(names)
        if len(names) < 1:
            raise BadParameterError("need at least one variable")
        if len(set(names)) != len(names):
            raise BadParameterError("variable names must be distinct")
        self.names = names
        self.n = len(names)
        self.field = field
        self.order = order
        self.index = {nm: i for i, nm in enumerate(names)}
        if order == "grevlex":
            self.key = _grevlex_key
        elif order == "lex":
            self.key = lambda m: m
        elif isinstance(order, tuple) and order[0] == "elim":
            k = order[1]
            if not 0 < k < self.n:
                raise BadParameterError("elimination block size out of range")
            self.key = lambda m: (_grevlex_key(m[:k]), _grevlex_key(m[k:]))
        else:
            raise BadParameterError(f"unknown monomial order {order!r}")

    @property
    def one_mono(self):
        return (0,) * self.n

    def gen(self, i):
        m = [0] * self.n
        m[i] = 1
        return Polynomial(self, {tuple(m): self.field.one})

    def gens(self):
        return [self.gen(i) for i in range(self.n)]

    def zero(self):
        return Polynomial(self, {})

    def const(self, a):
        c = self.field.from_int(a) if isinstance(a, int) else a
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {self.one_mono: c})

    def monomial(self, m, c=None):
        c = self.field.one if c is None else c
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {tuple(m): c})

    def mono_str(self, m):
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.names, self.field, str(self.order)))

    def __repr__(self):
        return f"PolyRing({','.join(self.names)}; {self.field!r}; {self.order})"


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms  # mono -> nonzero coeff; caller guarantees no zeros

    def _chk(self, other):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials live in different rings")

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {mono_deg(m) for m in self.terms}
        return len(degs) <= 1

    def lead_monomial(self):
        return max(self.terms, key=self.ring.key)

    def lead_coeff(self):
        return self.terms[self.lead_monomial()]

    def monic(self):
        if not self.terms:
            return self
        F = self.ring.field
        c = F.inv(self.lead_coeff())
        return Polynomial(self.ring, {m: F.mul(c, v) for m, v in self.terms.items()})

    def __add__(self, other):
        self._chk(other)
        F = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = F.add(out[m], c)
                if F.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return Polynomial(self.ring, out)

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._chk(other)
        F = self.ring.field
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = F.mul(c1, c2)
                if m in out:
                    s = F.add(out[m], c)
                    if F.is_zero(s):
                        del out[m]
                    else:
                        out[m] = s
                elif not F.is_zero(c):
                    out[m] = c
        return Polynomial(self.ring, out)

    def scale(self, c):
        F = self.ring.field
        if F.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {m: F.mul(c, v) for m, v in self.terms.items()})

    def mul_mono(self, mono, c=None):
        F = self.ring.field
        c = F.one if c is None else c
        if F.is_zero(c):
            return self.ring.zero()
        return Polynomial(
            self.ring, {mono_mul(m, mono): F.mul(c, v) for m, v in self.terms.items()}
        )

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        p = ring.field.p
        chunks = []
        for m, c in self.sorted_terms():
            if p is not None:
                # balanced representative reads better and round-trips
                cc = c if c <= p // 2 else c - p
            else:
                cc = c
            neg = cc < 0
            cc = -cc if neg else cc
            ms = ring.mono_str(m)
            if ms == "1":
                body = str(cc)
            elif cc == 1:
                body = ms
            else:
                body = f"{cc}*{ms}"
            if not chunks:
                chunks.append(("-" if neg else "") + body)
            else:
                chunks.append(("-" if neg else "+") + body)
        return "".join(chunks)

    def __repr__(self):
        return f"<{self} in {','.join(self.ring.names)}>"


class Ideal:
    """A homogeneous ideal given by generators, with a cached Groebner basis."""

    def __init__(self, ring, generators):
        gens = [g for g in generators if not g.is_zero()]
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator in the wrong ring")
            if not g.is_homogeneous():
                raise BadParameterError(f"generator {g} is not homogeneous")
        self.ring = ring
        self.generators = gens
        self._gb = None

    def __repr__(self):
        return f"Ideal({len(self.generators)} gens in {','.join(self.ring.names)})"


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.pos = 0

    def error(self, msg):
        raise ParseError(msg, position=self.pos)

    def peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def take(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self):
        p = self.expr()
        self._skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")
        return p

    def expr(self):
        c = self.peek()
        if c == "-":
            self.pos += 1
            out = -self.term()
        else:
            if c == "+":
                self.pos += 1
            out = self.term()
        while True:
            c = self.peek()
            if c == "+":
                self.pos += 1
                out = out + self.term()
            elif c == "-":
                self.pos += 1
                out = out - self.term()
            else:
                return out

    def term(self):
        out = self.factor()
        while self.peek() == "*":
            self.pos += 1
            out = out * self.factor()
        return out

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            e = self.integer()
            if e < 0:
                self.error("negative exponent")
            out = self.ring.const(1)
            for _ in range(e):
                out = out * base
            return out
        return base

    def integer(self):
        self._skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            out = self.expr()
            self.take(")")
            return out
        if c == "-":
            self.pos += 1
            return -self.atom()
        if c.isdigit():
            num = self.integer()
            if self.peek() == "/":
                # rational coefficient extension (printing of QQ results)
                self.pos += 1
                den = self.integer()
                if den == 0:
                    self.error("zero denominator")
                F = self.ring.field
                return self.ring.const(1).scale(F.div(F.from_int(num), F.from_int(den)))
            return self.ring.const(num)
        if c.isalpha() or c == "_":
            start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            name = self.text[start : self.pos]
            if name not in self.ring.index:
                self.pos = start
                self.error(f"unknown variable {name!r}")
            return self.ring.gen(self.ring.index[name])
        self.error("expected a term")


def parse(text, ring):
    """Parse a polynomial in the grammar: integers, + - * ^ / ( ), variables."""
    return _Parser(text, ring).parse()
