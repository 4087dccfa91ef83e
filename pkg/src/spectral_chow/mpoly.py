"""Sparse multivariate polynomials keyed by exponent tuples."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable

from .fields import QQ, FpElement


def add_into(acc: dict, key, c) -> None:
    v = acc.get(key)
    v = c if v is None else v + c
    if v == 0:
        acc.pop(key, None)
    else:
        acc[key] = v


def convolve(a: dict, b: dict) -> dict:
    """Product of two exponent->coefficient maps."""
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            add_into(out, tuple(x + y for x, y in zip(ea, eb)), ca * cb)
    return out


def exponents_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors with the given total degree, lexicographically descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


class MPoly:
    __slots__ = ("nvars", "terms", "field")

    def __init__(self, nvars: int, terms=None, field=QQ):
        self.nvars = nvars
        self.field = field
        self.terms = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            add_into(self.terms, e, field(c))

    @classmethod
    def _raw(cls, nvars, terms, field):
        p = cls.__new__(cls)
        p.nvars, p.terms, p.field = nvars, terms, field
        return p

    @classmethod
    def var(cls, nvars: int, i: int, field=QQ) -> MPoly:
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): field.one}, field)

    @classmethod
    def const(cls, nvars: int, c, field=QQ) -> MPoly:
        c = field(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c != 0 else {}, field)

    def _lift(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction, FpElement)):
            return MPoly.const(self.nvars, other, self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            add_into(out, e, c)
        return MPoly._raw(self.nvars, out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()}, self.field)

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
        if isinstance(other, (int, Fraction, FpElement)):
            c = self.field(other)
            if c == 0:
                return MPoly._raw(self.nvars, {}, self.field)
            return MPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items()}, self.field)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return MPoly._raw(self.nvars, convolve(self.terms, o.terms), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            raise ValueError("division by a polynomial is not supported")
        inv = self.field.one / self.field(other)
        return self * inv

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.nvars, 1, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, MPoly) else other
        if o is NotImplemented:
            return NotImplemented
        return self.nvars == o.nvars and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_parts(self) -> dict[int, MPoly]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: MPoly._raw(self.nvars, t, self.field) for d, t in sorted(parts.items())}

    def permute(self, perm) -> MPoly:
        """Relabel variable i as perm[i]."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * self.nvars
            for i, k in enumerate(e):
                f[perm[i]] += k
            out[tuple(f)] = c
        return MPoly._raw(self.nvars, out, self.field)

    def substitute(self, values):
        """Evaluate with variable i replaced by ``values[i]`` (any ring elements)."""
        powers = [{} for _ in range(self.nvars)]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = values[i] ** k
            return cache[k]

        acc = None
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    f = pw(i, k)
                    term = f if term is None else term * f
            term = c if term is None else term * c
            acc = term if acc is None else acc + term
        return acc if acc is not None else self.field.zero

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: ec[0], reverse=True)

    def format(self, name: Callable[[int], str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            text = self.field.format(c)
            neg = text.startswith("-")
            mag = text[1:] if neg else text
            mono = "*".join(
                name(i) if k == 1 else f"{name(i)}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                term = mag
            elif mag == "1":
                term = mono
            else:
                term = f"{mag}*{mono}"
            if not parts:
                parts.append("-" + term if neg else term)
            else:
                parts.append(("- " if neg else "+ ") + term)
        return " ".join(parts)

    def __repr__(self):
        return f"MPoly({self.format(lambda i: f'v{i}')})"
