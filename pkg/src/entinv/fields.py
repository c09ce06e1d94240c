"""Exact coefficient fields: rationals, prime fields GF(p), Gaussian rationals.

Every invariant in this package is a kernel dimension, so coefficient
arithmetic must be exact; floating point is rejected at every boundary.
Rationals are `fractions.Fraction` (already normalized: lowest terms,
positive denominator).  GF(p) residues and Gaussian rationals get small
element classes with overloaded operators so the linear algebra can stay
field-agnostic.

Scalar strings accepted by :meth:`Field.parse`:

    rational           "a" or "a/b"             e.g. "-3", "5/7"
    gf(p)              same forms, reduced mod p (denominator coprime to p)
    gaussian-rational  "a/b", "a/b+c/di", "c/di" (spaces allowed, floats not)
"""

from __future__ import annotations

import re
from fractions import Fraction


class FieldMismatchError(TypeError):
    """Raised when scalars from different fields are combined."""


_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def _parse_fraction(text: str) -> Fraction:
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not an exact rational: {text!r} (floats are rejected)")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


class GFElement:
    """A residue modulo a prime p, with field arithmetic."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> "GFElement":
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other
        if isinstance(other, int):
            return GFElement(other, self.p)
        raise FieldMismatchError(f"cannot mix GF({self.p}) with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        return GFElement(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return GFElement(self.value - o.value, self.p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return GFElement(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.value == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return GFElement(self.value * pow(o.value, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GFElement({self.value}, p={self.p})"


class GaussianRational:
    """An element a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        raise FieldMismatchError(
            f"cannot mix Gaussian rationals with {type(other).__name__}"
        )

    def __add__(self, other):
        o = self._coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            o = self._coerce(other)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


class Field:
    """Common interface of the three supported exact fields."""

    descriptor: str

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def coerce(self, value):
        """Accept an element, an int, or a scalar string; return an element."""
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, value) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<field {self.descriptor}>"


class RationalField(Field):
    descriptor = "rational"

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def coerce(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        raise FieldMismatchError(f"not a rational scalar: {value!r}")

    def parse(self, text: str) -> Fraction:
        return _parse_fraction(text)

    def format(self, value) -> str:
        return str(value)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")


class PrimeField(Field):
    """GF(p) for a prime p < 2**31 (primality checked by trial division)."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2:
            raise ValueError(f"prime field order must be an integer >= 2, got {p!r}")
        if p >= 2**31:
            raise ValueError(f"prime field order too large: {p}")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.descriptor = f"gf({p})"

    def from_int(self, n: int) -> GFElement:
        return GFElement(n, self.p)

    def coerce(self, value) -> GFElement:
        if isinstance(value, GFElement):
            if value.p != self.p:
                raise FieldMismatchError(f"GF({value.p}) element in GF({self.p})")
            return value
        if isinstance(value, int):
            return GFElement(value, self.p)
        if isinstance(value, str):
            return self.parse(value)
        raise FieldMismatchError(f"not a GF({self.p}) scalar: {value!r}")

    def parse(self, text: str) -> GFElement:
        q = _parse_fraction(text)
        if q.denominator % self.p == 0:
            raise ValueError(f"denominator of {text!r} vanishes in GF({self.p})")
        return GFElement(q.numerator * pow(q.denominator, -1, self.p), self.p)

    def format(self, value) -> str:
        return str(value.value)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("gf", self.p))


class GaussianRationalField(Field):
    descriptor = "gaussian-rational"

    def from_int(self, n: int) -> GaussianRational:
        return GaussianRational(n)

    def coerce(self, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        if isinstance(value, str):
            return self.parse(value)
        raise FieldMismatchError(f"not a Gaussian rational scalar: {value!r}")

    def parse(self, text: str) -> GaussianRational:
        s = "".join(text.split())
        if not s:
            raise ValueError("empty scalar string")
        if not s.endswith("i"):
            return GaussianRational(_parse_fraction(s))
        body = s[:-1]
        if not body:
            raise ValueError(f"imaginary part needs an explicit coefficient: {text!r}")
        # Last sign character after position 0 separates real and imaginary parts.
        split = max(body.rfind("+", 1), body.rfind("-", 1))
        if split <= 0:
            return GaussianRational(0, _parse_fraction(body))
        return GaussianRational(
            _parse_fraction(body[:split]), _parse_fraction(body[split:])
        )

    def format(self, value) -> str:
        if value.im == 0:
            return str(value.re)
        if value.re == 0:
            return f"{value.im}i"
        sign = "+" if value.im > 0 else "-"
        return f"{value.re}{sign}{abs(value.im)}i"

    def __eq__(self, other):
        return isinstance(other, GaussianRationalField)

    def __hash__(self):
        return hash("gaussian-rational")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


QQ = RationalField()
QQI = GaussianRationalField()

_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """The prime field GF(p); instances are cached per p."""
    field = _GF_CACHE.get(p)
    if field is None:
        field = PrimeField(p)
        _GF_CACHE[p] = field
    return field


_GF_DESCRIPTOR_RE = re.compile(r"^gf\((\d+)\)$")


def field_from_descriptor(text: str) -> Field:
    """Map a descriptor string ("rational", "gf(p)", "gaussian-rational") to a field."""
    s = text.strip().lower()
    if s == "rational":
        return QQ
    if s == "gaussian-rational":
        return QQI
    m = _GF_DESCRIPTOR_RE.match(s)
    if m:
        return GF(int(m.group(1)))
    raise ValueError(
        f"unknown field descriptor {text!r}; expected 'rational', "
        "'gaussian-rational', or 'gf(p)' with p prime"
    )
