"""Dense matrices over an exact commutative ring.

Entries live in ``ring`` (a field from :mod:`.fields` or a
:class:`~spectral_chow.unipoly.PolyRing`); anything needing division
(``rref``, ``rank_kernel``, ``solve``, ``inverse``) assumes a field.
"""

from __future__ import annotations

from typing import Sequence

from .fields import QQ
from .unipoly import UniPoly


class Matrix:
    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence], ring=QQ, ncols: int | None = None):
        self.ring = ring
        self.rows = tuple(tuple(ring(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if self.rows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged matrix rows")
        else:
            self.ncols = ncols or 0

    @classmethod
    def _raw(cls, rows, ring, ncols=None):
        # rows already coerced; skip per-entry conversion
        m = cls.__new__(cls)
        m.ring = ring
        m.rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m.rows)
        m.ncols = len(m.rows[0]) if m.rows else (ncols or 0)
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int, ring=QQ) -> Matrix:
        return cls._raw([[ring.zero] * ncols for _ in range(nrows)], ring, ncols)

    @classmethod
    def identity(cls, n: int, ring=QQ) -> Matrix:
        return cls._raw(
            [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)], ring, n
        )

    @classmethod
    def diag(cls, values, ring=QQ) -> Matrix:
        values = [ring(v) for v in values]
        n = len(values)
        return cls._raw(
            [[values[i] if i == j else ring.zero for j in range(n)] for i in range(n)], ring, n
        )

    @classmethod
    def from_flat(cls, nrows: int, ncols: int, entries, ring=QQ) -> Matrix:
        entries = list(entries)
        if len(entries) != nrows * ncols:
            raise ValueError(f"expected {nrows * ncols} entries, got {len(entries)}")
        return cls([entries[i * ncols:(i + 1) * ncols] for i in range(nrows)], ring, ncols)

    @classmethod
    def from_columns(cls, cols, nrows: int, ring=QQ) -> Matrix:
        cols = [list(c) for c in cols]
        return cls._raw([[c[i] for c in cols] for i in range(nrows)], ring, len(cols))

    @classmethod
    def block_diag(cls, blocks, ring=QQ) -> Matrix:
        n = sum(b.nrows for b in blocks)
        out = [[ring.zero] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    out[off + i][off + j] = b.rows[i][j]
            off += b.nrows
        return cls._raw(out, ring, n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def flat(self) -> list:
        return [x for r in self.rows for x in r]

    def transpose(self) -> Matrix:
        return Matrix._raw([list(c) for c in zip(*self.rows)], self.ring, self.nrows) \
            if self.nrows else Matrix.zeros(self.ncols, 0, self.ring)

    def map(self, f, ring=None) -> Matrix:
        ring = ring or self.ring
        return Matrix([[f(x) for x in r] for r in self.rows], ring, self.ncols)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix._raw(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ring, self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix._raw(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ring, self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix._raw([[-a for a in r] for r in self.rows], self.ring, self.ncols)

    def scale(self, c) -> Matrix:
        return Matrix._raw([[c * a for a in r] for r in self.rows], self.ring, self.ncols)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.ring.zero
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix._raw(out, self.ring, other.ncols)

    def apply(self, vec) -> list:
        zero = self.ring.zero
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.nrows, self.ring)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self):
        acc = self.ring.zero
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def submatrix(self, rows, cols) -> Matrix:
        return Matrix._raw([[self.rows[i][j] for j in cols] for i in rows], self.ring, len(cols))

    def __repr__(self):
        return f"Matrix({[[str(x) for x in r] for r in self.rows]}, {self.ring!r})"

    # -- field-only operations -------------------------------------------------

    def rref(self):
        """Reduced row echelon form and the pivot column list."""
        a = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            piv = next((i for i in range(r, self.nrows) if a[i][c] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = self.ring.one / a[r][c]
            a[r] = [x * inv for x in a[r]]
            for i in range(self.nrows):
                if i != r and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return Matrix._raw(a, self.ring, self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self):
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        n = self.nrows
        d = self.ring.one
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c] != 0), None)
            if piv is None:
                return self.ring.zero
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                d = -d
            d = d * a[c][c]
            inv = self.ring.one / a[c][c]
            for i in range(c + 1, n):
                if a[i][c] != 0:
                    f = a[i][c] * inv
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return d

    def inverse(self) -> Matrix:
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = Matrix._raw(
            [list(r) + [self.ring.one if i == j else self.ring.zero for j in range(n)]
             for i, r in enumerate(self.rows)], self.ring, 2 * n)
        red, piv = aug.rref()
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw([r[n:] for r in red.rows], self.ring, n)


def rank_kernel(m: Matrix):
    """Rank and a basis of the right null space (vectors as lists)."""
    red, pivots = m.rref()
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [m.ring.zero] * m.ncols
        v[f] = m.ring.one
        for row, p in enumerate(pivots):
            v[p] = -red.rows[row][f]
        basis.append(v)
    return len(pivots), basis


def solve(a: Matrix, b: Matrix) -> Matrix:
    """One solution X of ``a @ X == b`` (free variables set to zero).

    Raises ValueError when the system is inconsistent.
    """
    if a.nrows != b.nrows:
        raise ValueError("row count mismatch")
    aug = Matrix._raw([list(r) + list(s) for r, s in zip(a.rows, b.rows)], a.ring,
                      a.ncols + b.ncols)
    red, pivots = aug.rref()
    if any(p >= a.ncols for p in pivots):
        raise ValueError("inconsistent linear system")
    out = [[a.ring.zero] * b.ncols for _ in range(a.ncols)]
    for row, p in enumerate(pivots):
        out[p] = list(red.rows[row][a.ncols:])
    return Matrix._raw(out, a.ring, b.ncols)


def char_poly_coeffs(m: Matrix) -> list:
    """Coefficients of det(tI - m), highest degree first, by Berkowitz's algorithm.

    Division-free, so it works over any commutative ring (including k[s]).
    """
    if not m.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    ring = m.ring
    a = m.rows
    vect = [ring.one]
    for r in range(m.nrows):
        # leading (r+1)x(r+1) block = [[A_r, C], [R, a_rr]]
        row = list(a[r][:r])
        col = [a[i][r] for i in range(r)]
        toeplitz_col = [ring.one, -a[r][r]]
        cur = col
        for _ in range(r):
            acc = ring.zero
            for x, y in zip(row, cur):
                acc = acc + x * y
            toeplitz_col.append(-acc)
            cur = [sum((a[i][j] * cur[j] for j in range(r)), ring.zero) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = ring.zero
            for j in range(min(i + 1, len(vect))):
                acc = acc + toeplitz_col[i - j] * vect[j]
            new.append(acc)
        vect = new
    return vect


def char_poly(m: Matrix, var: str = "s") -> UniPoly:
    """det(sI - m) as a monic polynomial over the matrix's field."""
    return UniPoly(list(reversed(char_poly_coeffs(m))), m.ring, var)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a
