"""Independent reference computations used to check the library.

Each oracle takes a different route from the code under test: Leibniz
determinants instead of elimination or Berkowitz, subset enumeration instead
of generating-function products, and brute-force monomial counting instead of
binomial formulas. They are slow and only suitable for small inputs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

from spectral_chow.unipoly import UniPoly, poly_gcd


def perm_sign(p) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(rows, one=1, zero=0):
    """Determinant by the permutation expansion (works over any commutative ring)."""
    n = len(rows)
    total = zero
    for p in permutations(range(n)):
        term = one
        for i in range(n):
            term = term * rows[i][p[i]]
        total = total + term if perm_sign(p) > 0 else total - term
    return total


def char_poly_at(rows, c):
    """det(c I - A) for a square list-of-lists over Q."""
    n = len(rows)
    shifted = [[(c if i == j else 0) - Fraction(rows[i][j]) for j in range(n)] for i in range(n)]
    return leibniz_det(shifted, Fraction(1), Fraction(0))


def determinantal_divisors(rows, field, var="s"):
    """Monic gcds of all k x k minors of a matrix over k[s], for k = 1..min(shape).

    The Smith invariant factors are d_k / d_{k-1}.
    """
    nr, nc = len(rows), len(rows[0]) if rows else 0
    zero = UniPoly([], field, var)
    one = UniPoly([1], field, var)
    out = []
    for k in range(1, min(nr, nc) + 1):
        g = zero
        for rs in combinations(range(nr), k):
            for cs in combinations(range(nc), k):
                minor = leibniz_det([[rows[i][j] for j in cs] for i in rs], one, zero)
                g = poly_gcd(g, minor)
        out.append(g)
    return out


def invariant_factors_by_minors(rows, field, var="s"):
    divs = determinantal_divisors(rows, field, var)
    factors, prev = [], UniPoly([1], field, var)
    for dk in divs:
        if dk.is_zero():
            factors.append(dk)
            prev = dk
            continue
        q, r = divmod(dk, prev)
        assert r.is_zero()
        factors.append(q.monic())
        prev = dk
    return factors


def count_monomials_below(m: int, d: int) -> int:
    """Number of monomials in d variables of total degree < m, by enumeration."""
    return sum(1 for e in product(range(m), repeat=d) if sum(e) < m)


def poly_from_linear_forms(forms):
    """Expand a product of linear forms sum_k v_k z_k as {exponent: coeff}."""
    d = len(forms[0]) if forms else 0
    acc = {tuple([0] * d): Fraction(1)}
    for v in forms:
        nxt = {}
        for e, c in acc.items():
            for k, x in enumerate(v):
                if x == 0:
                    continue
                f = list(e)
                f[k] += 1
                f = tuple(f)
                nxt[f] = nxt.get(f, 0) + c * x
        acc = nxt
    return {e: c for e, c in acc.items() if c != 0}


def elementary_by_subsets(points, i):
    """e_i of the linear forms of ``points`` as a sum over i-subsets."""
    total = {}
    for subset in combinations(range(len(points)), i):
        for e, c in poly_from_linear_forms([points[j] for j in subset]).items():
            total[e] = total.get(e, 0) + c
    return {e: c for e, c in total.items() if c != 0}


def power_sum_by_expansion(points, i):
    total = {}
    for p in points:
        for e, c in poly_from_linear_forms([p] * i).items():
            total[e] = total.get(e, 0) + c
    return {e: c for e, c in total.items() if c != 0}


def tensor_dict(t):
    """A SymTensor's nonzero coefficients as a plain dict."""
    return {e: c for e, c in t.coeffs.items() if c != 0}


# -- the rank-two ruled example ------------------------------------------------

def _monomials(max_deg):
    return [(i, j) for i in range(max_deg + 1) for j in range(max_deg + 1 - i)]


def quotient_dimension(gens, max_deg: int) -> int:
    """dim_k of k[t1,t2]/I truncated at total degree max_deg (Macaulay matrix).

    ``gens`` are dicts {(i, j): coeff}. For a zero-dimensional ideal the value
    is stable once max_deg exceeds the regularity.
    """
    monos = _monomials(max_deg)
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for g in gens:
        gdeg = max(i + j for i, j in g)
        for a, b in _monomials(max_deg - gdeg):
            row = [Fraction(0)] * len(monos)
            for (i, j), c in g.items():
                row[index[(i + a, j + b)]] += c
            rows.append(row)
    return len(monos) - fraction_rank(rows)


def fraction_rank(rows) -> int:
    rows = [list(r) for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / pv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def fraction_kernel(rows, ncols):
    """Basis of the right kernel of a Fraction matrix, by plain Gauss-Jordan."""
    rows = [list(r) for r in rows]
    pivots, rank = [], 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][col]
        rows[rank] = [x / pv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][free]
        basis.append(v)
    return basis


def ruled_fiber_dimension(a1: Fraction, a2: Fraction, max_deg: int = 6) -> int:
    """dim_k k[t1,t2]/(t1^2 + a1 t1 + a2, t2 (2 t1 + a1), t2^2) at one parameter value."""
    gens = [
        {(2, 0): Fraction(1), (1, 0): a1, (0, 0): a2},
        {(1, 1): Fraction(2), (0, 1): a1},
        {(0, 2): Fraction(1)},
    ]
    return quotient_dimension([{k: v for k, v in g.items() if v != 0} for g in gens], max_deg)
