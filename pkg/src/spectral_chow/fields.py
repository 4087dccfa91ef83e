"""Exact base fields: the rationals and prime fields F_p.

Rationals are plain :class:`fractions.Fraction` values. Prime field elements
are :class:`FpElement` instances that interoperate with Python ints, so generic
code may mix ``0``/``1`` literals with field elements freely.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


class FieldError(ValueError):
    """Raised for invalid field descriptors or characteristic violations."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@total_ordering
class FpElement:
    """Residue class modulo a prime, stored as its least nonnegative representative."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image in F_{self.p}")
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> FpElement:
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return FpElement(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FpElement(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o, self.p) * self.inverse()

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FpElement(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, (FpElement, int, Fraction)):
            try:
                o = self._coerce(other)
            except (FieldError, ZeroDivisionError):
                return False
            return (self.v - o) % self.p == 0
        return NotImplemented

    def __lt__(self, other):
        # ordering by representative; only used for canonical sorting
        if isinstance(other, FpElement):
            return self.v < other.v
        if isinstance(other, int):
            return self.v < other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"FpElement({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class RationalField:
    """The field Q."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, FpElement):
            raise FieldError("cannot lift an F_p element to Q")
        return Fraction(x)

    def parse(self, text: str) -> Fraction:
        return Fraction(str(text).strip())

    def format(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def descriptor(self):
        return "Q"

    def elements(self):
        raise FieldError("Q is infinite")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The prime field F_p."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = FpElement(0, p)
        self.one = FpElement(1, p)

    def __call__(self, x) -> FpElement:
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise FieldError(f"mixing F_{self.p} and F_{x.p}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return FpElement(self.zero._coerce(x), self.p)

    def parse(self, text: str) -> FpElement:
        return self(Fraction(str(text).strip()))

    def format(self, x) -> str:
        return str(self(x).v)

    def descriptor(self):
        return {"Fp": self.p}

    def elements(self):
        return (FpElement(v, self.p) for v in range(self.p))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F_{self.p}"


QQ = RationalField()


def field_from_descriptor(desc) -> RationalField | PrimeField:
    """Build a field from ``"Q"``, ``"Fp:<p>"`` or the JSON form ``{"Fp": p}``."""
    if isinstance(desc, dict):
        if set(desc) != {"Fp"}:
            raise FieldError(f"unknown field descriptor {desc!r}")
        return PrimeField(int(desc["Fp"]))
    if isinstance(desc, str):
        s = desc.strip()
        if s in ("Q", "QQ"):
            return QQ
        if s.startswith("Fp:"):
            try:
                return PrimeField(int(s[3:]))
            except ValueError as exc:
                raise FieldError(f"bad field descriptor {desc!r}") from exc
    raise FieldError(f"unknown field descriptor {desc!r}")


def field_of(x):
    """Best-effort recovery of the field a scalar lives in."""
    if isinstance(x, FpElement):
        return PrimeField(x.p)
    return QQ


def require_invertible_up_to(field, n: int) -> None:
    """Reject fields in which one of 1..n is zero (characteristic p <= n)."""
    if field.characteristic and field.characteristic <= n:
        raise FieldError(
            f"characteristic {field.characteristic} must exceed n={n}"
        )
