"""Commuting matrix tuples and their spectral data.

A tuple (theta_1, ..., theta_d) of pairwise commuting n x n matrices makes
k^n a module over k[z_1, ..., z_d]. Its spectral datum is the zero-cycle of
joint eigenvalues, each weighted by the dimension of its joint generalized
eigenspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import NamedTuple, Sequence

from .fields import QQ, field_of
from .matrix import Matrix, char_poly, commutator, rank_kernel, solve
from .mpoly import exponents_of_degree
from .rng import Stream
from .symtensor import HitchinCoords, SymTensor
from .unipoly import roots_with_multiplicity


class NotCommuting(ValueError):
    """Two matrices of a tuple fail to commute.

    ``i``/``j`` are 1-based matrix indices; ``row``/``col`` locate a nonzero
    entry of the commutator (0-based) and ``value`` is that entry.
    """

    def __init__(self, i, j, row, col, value):
        self.i, self.j, self.row, self.col, self.value = i, j, row, col, value
        super().__init__(
            f"theta_{i} and theta_{j} do not commute: "
            f"[theta_{i}, theta_{j}][{row}][{col}] = {value}"
        )


class CommutatorWitness(NamedTuple):
    i: int
    j: int
    row: int
    col: int
    value: object


def check_commuting(thetas: Sequence[Matrix]):
    """Return ``(True, None)`` or ``(False, CommutatorWitness)``."""
    if not thetas:
        return True, None
    n = thetas[0].nrows
    for t in thetas:
        if t.shape != (n, n):
            raise ValueError("all matrices must be square of the same size")
    for i in range(len(thetas)):
        for j in range(i + 1, len(thetas)):
            c = commutator(thetas[i], thetas[j])
            for r, row in enumerate(c.rows):
                for k, x in enumerate(row):
                    if x != 0:
                        return False, CommutatorWitness(i + 1, j + 1, r, k, x)
    return True, None


@dataclass(frozen=True)
class MatrixTuple:
    thetas: tuple
    field: object = QQ

    def __post_init__(self):
        thetas = tuple(self.thetas)
        object.__setattr__(self, "thetas", thetas)
        if not thetas:
            raise ValueError("a matrix tuple needs at least one matrix")
        ok, w = check_commuting(thetas)
        if not ok:
            raise NotCommuting(*w)

    @property
    def n(self) -> int:
        return self.thetas[0].nrows

    @property
    def d(self) -> int:
        return len(self.thetas)

    def conjugate(self, p: Matrix) -> MatrixTuple:
        """The tuple P theta_j P^-1."""
        pinv = p.inverse()
        return MatrixTuple(tuple(p @ t @ pinv for t in self.thetas), self.field)

    def linear_combination(self, coeffs) -> Matrix:
        acc = Matrix.zeros(self.n, self.n, self.thetas[0].ring)
        for c, t in zip(coeffs, self.thetas):
            if c != 0:
                acc = acc + t.scale(c)
        return acc


@dataclass(frozen=True)
class ZeroCycle:
    """Distinct points of k^d with positive multiplicities, kept in sorted order."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(sorted(((tuple(p), int(m)) for p, m in self.entries),
                               key=lambda pm: pm[0]))
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("empty zero-cycle")
        d = len(entries[0][0])
        for p, m in entries:
            if len(p) != d:
                raise ValueError("points of mixed dimension")
            if m < 1:
                raise ValueError(f"multiplicity {m} is not positive")
        pts = [p for p, _ in entries]
        if any(a == b for a, b in zip(pts, pts[1:])):
            raise ValueError("repeated point in zero-cycle")

    @classmethod
    def from_points(cls, points) -> ZeroCycle:
        """Collect a list of (possibly repeated) points into a cycle."""
        counts: dict = {}
        for p in points:
            p = tuple(p)
            counts[p] = counts.get(p, 0) + 1
        return cls(tuple(counts.items()))

    @property
    def n(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def d(self) -> int:
        return len(self.entries[0][0])

    def expand(self) -> list:
        return [p for p, m in self.entries for _ in range(m)]

    def to_json(self, fmt) -> dict:
        return {"entries": [{"point": [fmt(x) for x in p], "mult": m} for p, m in self.entries]}


@dataclass(frozen=True)
class LocalModule:
    """The summand at one cycle point: theta_j restricted there, minus point_j * I.

    ``basis`` holds the ambient coordinates of the summand's basis as columns.
    """

    point: tuple
    length: int
    nilpotents: tuple
    basis: Matrix


def _joint_split(mats, basis, j, prefix, n):
    if j == len(mats):
        yield prefix, basis, mats
        return
    k = mats[0].nrows
    ring = mats[0].ring
    for lam, _ in roots_with_multiplicity(char_poly(mats[j])):
        shifted = mats[j] - Matrix.identity(k, ring).scale(lam)
        _, ker = rank_kernel(shifted ** n)
        sub = Matrix.from_columns(ker, k, ring)
        restricted = [solve(sub, m @ sub) for m in mats]
        yield from _joint_split(restricted, basis @ sub, j + 1, prefix + (lam,), n)


def _decompose(t: MatrixTuple):
    n = t.n
    ring = t.thetas[0].ring
    return list(_joint_split(list(t.thetas), Matrix.identity(n, ring), 0, (), n))


def spectral_datum(t: MatrixTuple) -> ZeroCycle:
    """Joint eigenvalues with the dimensions of their joint generalized eigenspaces.

    Raises :class:`~spectral_chow.unipoly.Unsplit` if some characteristic
    polynomial met along the way has no full set of roots in the field.
    """
    return ZeroCycle(tuple((pt, b.ncols) for pt, b, _ in _decompose(t)))


def local_modules(t: MatrixTuple) -> list[LocalModule]:
    out = []
    for pt, basis, mats in _decompose(t):
        m = basis.ncols
        ident = Matrix.identity(m, basis.ring)
        nil = tuple(mat - ident.scale(x) for mat, x in zip(mats, pt))
        out.append(LocalModule(pt, m, nil, basis))
    out.sort(key=lambda lm: lm.point)
    return out


def monomial_products(thetas: Sequence[Matrix], max_degree: int) -> dict:
    """theta^e = prod_j theta_j^{e_j} for every exponent vector with |e| <= max_degree."""
    d = len(thetas)
    n = thetas[0].nrows
    prods = {(0,) * d: Matrix.identity(n, thetas[0].ring)}
    for i in range(1, max_degree + 1):
        for e in exponents_of_degree(d, i):
            k = next(k for k, x in enumerate(e) if x)
            prev = tuple(x - (idx == k) for idx, x in enumerate(e))
            prods[e] = thetas[k] @ prods[prev]
    return prods


def multinomial(e) -> int:
    out = factorial(sum(e))
    for x in e:
        out //= factorial(x)
    return out


def trace_powers(t: MatrixTuple) -> HitchinCoords:
    """b_i = tr(theta^i): the z^e coefficient is multinomial(i; e) * tr(theta^e)."""
    n, d = t.n, t.d
    prods = monomial_products(t.thetas, n)
    tensors = []
    for i in range(1, n + 1):
        coeffs = {e: prods[e].trace() * multinomial(e) for e in exponents_of_degree(d, i)}
        tensors.append(SymTensor(d, i, coeffs))
    return HitchinCoords(n, tuple(tensors))


class CayleyHamiltonResult(NamedTuple):
    ok: bool
    witness: tuple | None


def cayley_hamilton_check(t: MatrixTuple, a: ZeroCycle, trials: int = 20,
                          seed: int = 0, coeff_range: int = 9) -> CayleyHamiltonResult:
    """Check that prod_i (l(theta) - l(x_i) I)^{n_i} vanishes for many linear forms l.

    The forms are the d coordinate forms followed by ``trials`` random ones
    drawn from ``seed``. The witness is the first form whose product is nonzero.
    """
    if a.d != t.d:
        raise ValueError("cycle and tuple live in different dimensions")
    d, n = t.d, t.n
    ring = t.thetas[0].ring
    forms = [tuple(int(i == k) for i in range(d)) for k in range(d)]
    rng = Stream(seed, 0xCA1E)
    for _ in range(trials):
        forms.append(tuple(rng.randint(-coeff_range, coeff_range) for _ in range(d)))
    ident = Matrix.identity(n, ring)
    for form in forms:
        ell = t.linear_combination(form)
        prod = ident
        for pt, m in a.entries:
            val = sum((c * x for c, x in zip(form, pt)), ring.zero)
            prod = prod @ (ell - ident.scale(val)) ** m
        if not prod.is_zero():
            return CayleyHamiltonResult(False, form)
    return CayleyHamiltonResult(True, None)


def jordan_block(m: int, ring=QQ) -> Matrix:
    """The m x m nilpotent with ones on the superdiagonal."""
    return Matrix._raw([[ring.one if j == i + 1 else ring.zero for j in range(m)]
                        for i in range(m)], ring, m)


def cycle_to_tuple(a: ZeroCycle, field=None) -> MatrixTuple:
    """A commuting tuple with spectral datum ``a``.

    Each point x of multiplicity m gets the block theta_j = x_j I (+ N for j = 1),
    N a single nilpotent Jordan block; the tuple is the direct sum of blocks.
    """
    field = field or field_of(a.entries[0][0][0])
    thetas = []
    for j in range(a.d):
        blocks = []
        for pt, m in a.entries:
            b = Matrix.identity(m, field).scale(field(pt[j]))
            if j == 0:
                b = b + jordan_block(m, field)
            blocks.append(b)
        thetas.append(Matrix.block_diag(blocks, field))
    return MatrixTuple(tuple(thetas), field)
