"""Chow coordinates of zero-cycles and fibers of the Cayley cover."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .spectra import ZeroCycle
from .symtensor import ChowCoords, SymTensor, elementary_from_points


def iota(a: ZeroCycle) -> ChowCoords:
    """The embedding [v_1, ..., v_n] -> (a_1, ..., a_n)."""
    return elementary_from_points(a.expand())


def iota_injectivity_probe(a1: ZeroCycle, a2: ZeroCycle) -> bool:
    """True when the Chow coordinates tell the two cycles apart (or the cycles coincide)."""
    same = iota(a1) == iota(a2)
    return same if a1 == a2 else not same


def chow2_membership(v, w: SymTensor) -> bool:
    """Membership of (v, w) in Chow_2(A^2) inside A^2 x Sym^2 A^2.

    With w = w1 z1^2 + w2 z1 z2 + w3 z2^2 and v = (x, y) the hypersurface is
    (xy - 2 w2)^2 = (x^2 - 4 w1)(y^2 - 4 w3).
    """
    if w.dim != 2 or w.degree != 2 or len(v) != 2:
        raise ValueError("chow2_membership needs v in k^2 and w in Sym^2 k^2")
    x, y = v
    w1, w2, w3 = w.coeff((2, 0)), w.coeff((1, 1)), w.coeff((0, 2))
    return (x * y - 2 * w2) ** 2 == (x * x - 4 * w1) * (y * y - 4 * w3)


def chow2_equation(x, y, w1, w2, w3):
    """Left minus right side of the Chow_2(A^2) equation; zero exactly on the image."""
    return (x * y - 2 * w2) ** 2 - (x * x - 4 * w1) * (y * y - 4 * w3)


def local_length(m: int, d: int) -> int:
    """dim O/m^m at a smooth point of A^d: monomials of degree < m in d variables."""
    return comb(m - 1 + d, d)


@dataclass(frozen=True)
class CayleyFiber:
    entries: tuple  # (point, multiplicity, local_length)
    total_length: int
    n: int

    @property
    def jumps(self) -> bool:
        """The fiber is longer than the generic degree n: the cover is not flat here."""
        return self.total_length > self.n


def cayley_fiber(a: ZeroCycle) -> CayleyFiber:
    d = a.d
    entries = tuple((p, m, local_length(m, d)) for p, m in a.entries)
    return CayleyFiber(entries, sum(e[2] for e in entries), a.n)


def is_multiplicity_free(a: ZeroCycle) -> bool:
    return all(m == 1 for _, m in a.entries)
