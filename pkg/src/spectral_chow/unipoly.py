"""Dense univariate polynomials over an exact field, and root extraction."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .fields import QQ, FieldError, FpElement, PrimeField


class Unsplit(ArithmeticError):
    """A polynomial does not split into linear factors over the base field.

    ``factor`` is the monic part without roots in the field; ``roots`` holds
    the (root, multiplicity) pairs extracted before getting stuck.
    """

    def __init__(self, factor: "UniPoly", roots=()):
        self.factor = factor
        self.roots = list(roots)
        super().__init__(f"no further roots in {factor.field!r}: {factor}")


class UniPoly:
    """Polynomial in one variable with coefficients listed by increasing degree."""

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, coeffs, field=QQ, var: str = "s"):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def constant(cls, c, field=QQ, var="s"):
        return cls([c], field, var)

    @classmethod
    def monomial(cls, k: int, c=1, field=QQ, var="s"):
        return cls([0] * k + [c], field, var)

    @classmethod
    def gen(cls, field=QQ, var="s"):
        return cls([0, 1], field, var)

    def _new(self, coeffs):
        return UniPoly(coeffs, self.field, self.var)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def _lift(self, other):
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise FieldError(f"mixing {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, (int, Fraction, FpElement)):
            return self._new([other])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return self._new([])
        out = [self.field.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self._new([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        # only division by a nonzero scalar (or constant polynomial) is exact here
        if isinstance(other, UniPoly):
            if not other.is_constant() or other.is_zero():
                raise ValueError("polynomial division is not exact; use divmod")
            other = other.coeffs[0]
        inv = self.field.one / self.field(other)
        return self._new([c * inv for c in self.coeffs])

    def __divmod__(self, other: UniPoly):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return self._new([]), self
        quot = [self.field.zero] * dq
        inv_lead = self.field.one / other.lead
        db = other.degree
        for k in range(dq - 1, -1, -1):
            c = rem[k + db] * inv_lead
            quot[k] = c
            if c != 0:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] = rem[k + i] - c * b
        return self._new(quot), self._new(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, FpElement)):
            return self.coeffs == self._lift(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, repr(self.field)))

    def __call__(self, x):
        acc = self.field.zero if not isinstance(x, UniPoly) else x._new([])
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        return self / self.lead

    def derivative(self) -> UniPoly:
        return self._new([i * c for i, c in enumerate(self.coeffs)][1:])

    def __repr__(self):
        return f"UniPoly({self}, {self.field!r})"

    def __str__(self):
        return format_poly(self.coeffs, self.field, self.var)


def format_poly(coeffs, field, var="s") -> str:
    """Render coefficients (low to high degree) as e.g. ``3*s^2 - 1/2``."""
    if not coeffs or all(c == 0 for c in coeffs):
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        text = field.format(c)
        neg = text.startswith("-")
        mag = text[1:] if neg else text
        if k == 0:
            term = mag
        else:
            mono = var if k == 1 else f"{var}^{k}"
            term = mono if mag == "1" else f"{mag}*{mono}"
        if not parts:
            parts.append("-" + term if neg else term)
        else:
            parts.append(("- " if neg else "+ ") + term)
    return " ".join(parts)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: UniPoly, b: UniPoly):
    """Return (g, x, y) with x*a + y*b = g and g monic (or zero)."""
    one = a._new([1])
    zero = a._new([])
    r0, r1 = a, b
    x0, x1 = one, zero
    y0, y1 = zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if r0.is_zero():
        return r0, x0, y0
    lead = r0.lead
    return r0 / lead, x0 / lead, y0 / lead


def _divisors(m: int) -> list[int]:
    m = abs(m)
    small, large = [], []
    for f in range(1, isqrt(m) + 1):
        if m % f == 0:
            small.append(f)
            if f * f != m:
                large.append(m // f)
    return small + large[::-1]


def _strip_root(p: UniPoly, r) -> tuple[UniPoly, int]:
    lin = p._new([-r, 1])
    mult = 0
    while p.degree >= 1:
        q, rem = divmod(p, lin)
        if not rem.is_zero():
            break
        p = q
        mult += 1
    return p, mult


def _rational_candidates(p: UniPoly):
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    lead, trail = ints[-1], ints[0]
    cands = set()
    for a in _divisors(trail):
        for b in _divisors(lead):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    return sorted(cands)


def roots_with_multiplicity(p: UniPoly) -> list[tuple[object, int]]:
    """All roots of ``p`` in its base field with multiplicities, sorted by root.

    Over F_p the search is exhaustive. Over Q only rational roots are
    extracted (rational root theorem). If a nonconstant factor without roots
    in the field remains, :class:`Unsplit` is raised carrying it.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no finite root multiset")
    field = p.field
    roots = []
    rest = p.monic()
    rest, m0 = _strip_root(rest, field.zero)
    if m0:
        roots.append((field.zero, m0))
    if rest.degree >= 1:
        if isinstance(field, PrimeField):
            candidates = (x for x in field.elements() if x != 0)
        else:
            candidates = _rational_candidates(rest)
        for r in candidates:
            if rest.degree < 1:
                break
            if rest(r) != 0:
                continue
            rest, m = _strip_root(rest, r)
            roots.append((r, m))
    roots.sort(key=lambda rm: rm[0])
    if rest.degree >= 1:
        raise Unsplit(rest, roots)
    return roots


class PolyRing:
    """The ring k[s]; provides ``zero``/``one`` so matrices can hold polynomial entries."""

    def __init__(self, field=QQ, var: str = "s"):
        self.field = field
        self.var = var
        self.zero = UniPoly([], field, var)
        self.one = UniPoly([1], field, var)

    def __call__(self, x) -> UniPoly:
        if isinstance(x, UniPoly):
            return x
        return UniPoly([x], self.field, self.var)

    def gen(self) -> UniPoly:
        return UniPoly([0, 1], self.field, self.var)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and (other.field, other.var) == (self.field, self.var)

    def __hash__(self):
        return hash(("poly", repr(self.field), self.var))

    def __repr__(self):
        return f"{self.field!r}[{self.var}]"
