"""Smith normal form of matrices over the PID k[s]."""

from __future__ import annotations

from typing import NamedTuple

from .matrix import Matrix, char_poly_coeffs
from .unipoly import PolyRing, UniPoly


class SmithForm(NamedTuple):
    U: Matrix
    D: Matrix
    V: Matrix
    U_inv: Matrix

    @property
    def diagonal(self) -> list[UniPoly]:
        return [self.D.rows[i][i] for i in range(min(self.D.shape))]


def smith_form(m: Matrix) -> SmithForm:
    """Smith form with the extra inverse of the row transform.

    Pivots are chosen by minimal degree, ties broken by lowest (row, col).
    Every nonzero diagonal entry is made monic.
    """
    ring = m.ring
    if not isinstance(ring, PolyRing):
        raise TypeError("smith_form expects a matrix over k[s]")
    nr, nc = m.shape
    a = [list(r) for r in m.rows]
    u = [list(r) for r in Matrix.identity(nr, ring).rows]
    uinv = [list(r) for r in Matrix.identity(nr, ring).rows]
    v = [list(r) for r in Matrix.identity(nc, ring).rows]

    def swap_rows(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for row in uinv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]
        for row in uinv:
            row[src] = row[src] - q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in a:
            row[dst] = row[dst] + q * row[src]
        for row in v:
            row[dst] = row[dst] + q * row[src]

    def min_entry(cells):
        best = None
        for (i, j) in cells:
            x = a[i][j]
            if x.is_zero():
                continue
            key = (x.degree, i, j)
            if best is None or key < best:
                best = key
        return best

    for t in range(min(nr, nc)):
        best = min_entry((i, j) for i in range(t, nr) for j in range(t, nc))
        if best is None:
            break
        _, i0, j0 = best
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            for i in range(t + 1, nr):
                if not a[i][t].is_zero():
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
            for j in range(t + 1, nc):
                if not a[t][j].is_zero():
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
            cells = [(i, t) for i in range(t + 1, nr)] + [(t, j) for j in range(t + 1, nc)]
            best = min_entry(cells)
            if best is not None:
                _, i0, j0 = best
                swap_rows(t, i0)
                swap_cols(t, j0)
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if not (a[i][j] % a[t][t]).is_zero()), None)
            if bad is None:
                break
            add_row(t, bad[0], ring.one)
        lead = a[t][t].lead
        if lead != 1:
            inv = ring.field.one / lead
            a[t] = [x * inv for x in a[t]]
            u[t] = [x * inv for x in u[t]]
            for row in uinv:
                row[t] = row[t] * lead

    return SmithForm(
        Matrix._raw(u, ring, nr), Matrix._raw(a, ring, nc),
        Matrix._raw(v, ring, nc), Matrix._raw(uinv, ring, nr),
    )


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U @ m @ V == D, U and V unimodular, D in Smith form."""
    sf = smith_form(m)
    return sf.U, sf.D, sf.V


def poly_det(m: Matrix):
    """Determinant over any commutative ring, via the Berkowitz coefficients."""
    coeffs = char_poly_coeffs(m)
    c = coeffs[-1]
    return -c if m.nrows % 2 else c


def is_unimodular(m: Matrix) -> bool:
    d = poly_det(m)
    return d.degree == 0


def is_smith_form(d: Matrix) -> bool:
    nr, nc = d.shape
    for i in range(nr):
        for j in range(nc):
            if i != j and not d.rows[i][j].is_zero():
                return False
    diag = [d.rows[i][i] for i in range(min(nr, nc))]
    for x in diag:
        if not x.is_zero() and x.lead != 1:
            return False
    for x, y in zip(diag, diag[1:]):
        if x.is_zero():
            if not y.is_zero():
                return False
        elif not (y % x).is_zero():
            return False
    return True
