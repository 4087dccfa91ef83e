"""Symmetric tensors Sym^i(k^d) in the monomial basis z^e, |e| = i.

Coefficients may be field scalars, or ring elements such as ``UniPoly``
(families over a parameter line) and ``MPoly`` (symbolic point coordinates).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .fields import FieldError, FpElement, QQ
from .mpoly import add_into, convolve, exponents_of_degree


@dataclass(frozen=True, eq=False)
class SymTensor:
    dim: int
    degree: int
    coeffs: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1 or self.degree < 0:
            raise ValueError(f"invalid SymTensor shape dim={self.dim} degree={self.degree}")
        clean = {}
        for e, c in self.coeffs.items():
            e = tuple(e)
            if len(e) != self.dim or sum(e) != self.degree or min(e) < 0:
                raise ValueError(f"exponent {e} does not fit Sym^{self.degree} of dim {self.dim}")
            add_into(clean, e, c)
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def zero(cls, dim: int, degree: int) -> SymTensor:
        return cls(dim, degree, {})

    @classmethod
    def unit(cls, dim: int, one=QQ.one) -> SymTensor:
        return cls(dim, 0, {(0,) * dim: one})

    @classmethod
    def linear(cls, vector: Sequence) -> SymTensor:
        """The degree-1 tensor sum_k v_k z_k."""
        d = len(vector)
        return cls(d, 1, {tuple(int(i == k) for i in range(d)): c for k, c in enumerate(vector)})

    def coeff(self, e, default=0):
        return self.coeffs.get(tuple(e), default)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: SymTensor):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")

    def __add__(self, other: SymTensor) -> SymTensor:
        self._check(other)
        if self.degree != other.degree:
            raise ValueError("cannot add tensors of different degree")
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            add_into(out, e, c)
        return SymTensor(self.dim, self.degree, out)

    def __neg__(self) -> SymTensor:
        return SymTensor(self.dim, self.degree, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: SymTensor) -> SymTensor:
        return self + (-other)

    def scale(self, c) -> SymTensor:
        return SymTensor(self.dim, self.degree, {e: v * c for e, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, SymTensor):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> SymTensor:
        result = SymTensor.unit(self.dim)
        for _ in range(k):
            result = mul(result, self)
        return result

    def __eq__(self, other):
        if not isinstance(other, SymTensor):
            return NotImplemented
        return (self.dim, self.degree) == (other.dim, other.degree) and self.coeffs == other.coeffs

    def map_coeffs(self, f) -> SymTensor:
        return SymTensor(self.dim, self.degree, {e: f(c) for e, c in self.coeffs.items()})

    def dense(self, zero=0) -> list:
        """Coefficients over all exponents of this degree, lexicographically descending."""
        return [self.coeffs.get(e, zero) for e in exponents_of_degree(self.dim, self.degree)]

    def to_json(self, fmt=None) -> list:
        fmt = fmt or format_scalar
        return [[list(e), fmt(c)] for e, c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, dim: int, degree: int, data, field=QQ) -> SymTensor:
        return cls(dim, degree, {tuple(e): field.parse(c) for e, c in data})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            mono = "*".join(f"z{k + 1}" if p == 1 else f"z{k + 1}^{p}" for k, p in enumerate(e) if p)
            cs = format_scalar(c) if isinstance(c, (int, Fraction, FpElement)) else f"({c})"
            parts.append(mono if cs == "1" and mono else (f"{cs}*{mono}" if mono else cs))
        return " + ".join(parts)

    __repr__ = __str__


def format_scalar(c) -> str:
    if isinstance(c, FpElement):
        return str(c.v)
    if isinstance(c, (int, Fraction)):
        c = Fraction(c)
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def mul(s: SymTensor, t: SymTensor) -> SymTensor:
    """Product in Sym(V): degrees add, coefficients convolve."""
    s._check(t)
    return SymTensor(s.dim, s.degree + t.degree, convolve(s.coeffs, t.coeffs))


@dataclass(frozen=True)
class _Coords:
    n: int
    tensors: tuple

    def __post_init__(self):
        ts = tuple(self.tensors)
        object.__setattr__(self, "tensors", ts)
        if len(ts) != self.n:
            raise ValueError(f"expected {self.n} tensors, got {len(ts)}")
        dims = {t.dim for t in ts}
        if len(dims) > 1:
            raise ValueError("tensors of mixed dimension")
        for i, t in enumerate(ts, start=1):
            if t.degree != i:
                raise ValueError(f"tensor {i} has degree {t.degree}")

    @property
    def dim(self) -> int:
        return self.tensors[0].dim

    def __getitem__(self, i: int) -> SymTensor:
        """1-based access: coords[i] is the degree-i tensor."""
        return self.tensors[i - 1]

    def map_coeffs(self, f):
        return type(self)(self.n, tuple(t.map_coeffs(f) for t in self.tensors))

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.dim, "tensors": [t.to_json() for t in self.tensors]}


class ChowCoords(_Coords):
    """(a_1, ..., a_n): elementary symmetric tensors of a point configuration."""

    def signed(self) -> ChowCoords:
        """Apply (-1)^i to a_i; the involution between the two sign conventions."""
        return ChowCoords(self.n, tuple(t if i % 2 == 0 else -t
                                        for i, t in enumerate(self.tensors, start=1)))


class HitchinCoords(_Coords):
    """(b_1, ..., b_n): power-sum (trace) tensors."""


def _expanded_points(points) -> list:
    points = [list(p) for p in points]
    if not points:
        raise ValueError("empty point list")
    d = len(points[0])
    if any(len(p) != d for p in points):
        raise ValueError("points of mixed dimension")
    return points


def elementary_from_points(points) -> ChowCoords:
    """a_i = i-th elementary symmetric tensor of the points, read off prod_j (1 + v_j t)."""
    points = _expanded_points(points)
    n, d = len(points), len(points[0])
    e = [SymTensor.unit(d)] + [SymTensor.zero(d, i) for i in range(1, n + 1)]
    for v in points:
        lin = SymTensor.linear(v)
        for i in range(n, 0, -1):
            e[i] = e[i] + mul(lin, e[i - 1])
    return ChowCoords(n, tuple(e[1:]))


def power_sums_from_points(points) -> HitchinCoords:
    points = _expanded_points(points)
    n, d = len(points), len(points[0])
    lins = [SymTensor.linear(v) for v in points]
    out = []
    pw = list(lins)
    for i in range(1, n + 1):
        acc = SymTensor.zero(d, i)
        for t in pw:
            acc = acc + t
        out.append(acc)
        pw = [mul(p, l) for p, l in zip(pw, lins)]
    return HitchinCoords(n, tuple(out))


def newton_e_to_p(a: ChowCoords) -> HitchinCoords:
    """Power sums from elementary tensors; division-free."""
    n, d = a.n, a.dim
    e = [SymTensor.unit(d)] + list(a.tensors)
    p = [None]
    for i in range(1, n + 1):
        # i*e_i = sum_{r=1}^{i} (-1)^(r-1) e_{i-r} p_r, solved for p_i
        acc = e[i].scale(i)
        for r in range(1, i):
            term = mul(e[i - r], p[r])
            acc = acc - term if r % 2 == 1 else acc + term
        p.append(acc if i % 2 == 1 else -acc)
    return HitchinCoords(n, tuple(p[1:]))


def _characteristic(tensors) -> int:
    for t in tensors:
        for c in t.coeffs.values():
            if isinstance(c, FpElement):
                return c.p
            fld = getattr(c, "field", None)
            if fld is not None:
                return fld.characteristic
    return 0


def newton_p_to_e(b: HitchinCoords) -> ChowCoords:
    """Elementary tensors from power sums; needs 1..n invertible in the field."""
    n, d = b.n, b.dim
    p = _characteristic(b.tensors)
    if p and p <= n:
        raise FieldError(f"characteristic {p} must exceed n={n} to divide by 1..n")
    e = [SymTensor.unit(d)]
    for i in range(1, n + 1):
        acc = SymTensor.zero(d, i)
        for r in range(1, i + 1):
            term = mul(e[i - r], b[r])
            acc = acc + term if r % 2 == 1 else acc - term
        e.append(acc.scale(Fraction(1, i)))
    return ChowCoords(n, tuple(e[1:]))
