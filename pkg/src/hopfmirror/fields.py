"""Exact coefficient fields: the rationals and prime fields F_p.

All coefficients in this package are exact field elements; there is no
floating point anywhere.  Rational scalars are `fractions.Fraction`
(always in lowest terms, positive denominator).  Prime-field scalars are
`ModP` wrappers around a residue.  A `Field` object knows how to build,
parse and format scalars and how to find roots of unity; tensors carry a
reference to their field so mixed-field arithmetic is rejected early.

Scalars serialize as strings ``"p/q"`` with ``/q`` omitted when the
denominator is 1 (prime-field scalars are just the residue digits).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CapabilityError, ConsistencyError, InputError


class ModP:
    """A residue modulo a prime, supporting field arithmetic operators."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _check(self, other) -> "ModP":
        if not isinstance(other, ModP) or other.p != self.p:
            raise InputError(f"cannot combine F_{self.p} scalar with {other!r}")
        return other

    def __add__(self, other):
        return ModP(self.value + self._check(other).value, self.p)

    def __sub__(self, other):
        return ModP(self.value - self._check(other).value, self.p)

    def __mul__(self, other):
        return ModP(self.value * self._check(other).value, self.p)

    def __truediv__(self, other):
        o = self._check(other)
        if o.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return ModP(self.value * pow(o.value, self.p - 2, self.p), self.p)

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __pow__(self, n: int):
        if n < 0:
            return ModP(1, self.p) / self ** (-n)
        return ModP(pow(self.value, n, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        return isinstance(other, ModP) and other.p == self.p and other.value == self.value

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class RationalField:
    """The field of exact rationals (Fraction-backed)."""

    name = "Q"
    characteristic = 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def parse(self, text: str):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational scalar {text!r}: {exc}") from None

    def format(self, value) -> str:
        return str(value)

    def root_of_unity(self, order: int):
        """A primitive root of unity of the given order, if one exists."""
        if order == 1:
            return Fraction(1)
        if order == 2:
            return Fraction(-1)
        raise CapabilityError(
            f"the rationals contain no primitive {order}-th root of unity; "
            "use a prime-field scalar mode"
        )

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The finite field F_p for a prime p."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.name = f"F_{p}"
        self.characteristic = p

    @property
    def zero(self):
        return ModP(0, self.p)

    @property
    def one(self):
        return ModP(1, self.p)

    def from_int(self, n: int):
        return ModP(n, self.p)

    def parse(self, text: str):
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return ModP(int(num), self.p) / ModP(int(den), self.p)
            return ModP(int(text), self.p)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad F_{self.p} scalar {text!r}: {exc}") from None

    def format(self, value) -> str:
        return str(value.value)

    def _primitive_root(self) -> int:
        factors = _prime_factors(self.p - 1)
        for g in range(2, self.p):
            if all(pow(g, (self.p - 1) // q, self.p) != 1 for q in factors):
                return g
        raise ConsistencyError(f"no primitive root mod {self.p}")  # pragma: no cover

    def root_of_unity(self, order: int):
        if order == 1:
            return self.one
        if (self.p - 1) % order != 0:
            raise CapabilityError(
                f"F_{self.p} contains no primitive {order}-th root of unity "
                f"({order} does not divide {self.p - 1})"
            )
        g = self._primitive_root()
        return ModP(pow(g, (self.p - 1) // order, self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return self.name


Q = RationalField()


def field_from_spec(spec: str):
    """Parse a field spec string: ``"q"`` or ``"fp:<prime>"``."""
    s = spec.strip().lower()
    if s == "q":
        return Q
    if s.startswith("fp:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise InputError(f"bad field spec {spec!r}") from None
        return PrimeField(p)
    raise InputError(f"bad field spec {spec!r} (expected 'q' or 'fp:<prime>')")
