"""Multisymmetric invariants and their rewriting in Chow coordinates.

Polynomials in n points of k^d use the variables x_{j,k} (point j, coordinate
k), flattened to index j*d + k. The Chow coordinate A_{i,e} is the coefficient
of z^e in a_i; as a function of the points it is an S_n-invariant of degree i.
Rewriting an invariant P means finding a polynomial Q in the A_{i,e} with
Q(A(x)) = P(x) identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .exprparse import ExpressionError, evaluate
from .fields import QQ
from .matrix import Matrix, rank_kernel
from .mpoly import MPoly, exponents_of_degree
from .symtensor import elementary_from_points


class NotInvariant(ValueError):
    """The polynomial is not symmetric under permuting the points."""


class DegreeBound(ValueError):
    """The invariant's degree exceeds the configured rewriting bound."""


@dataclass(frozen=True, order=True)
class MultiPartition:
    """[mu_1^m_1, ..., mu_e^m_e] with mu_1 > ... > mu_e > 0."""

    pairs: tuple = ()

    def __post_init__(self):
        pairs = tuple((int(mu), int(m)) for mu, m in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        mus = [mu for mu, _ in pairs]
        if any(mu <= 0 for mu in mus) or any(m <= 0 for _, m in pairs):
            raise ValueError("partition degrees and multiplicities must be positive")
        if any(a <= b for a, b in zip(mus, mus[1:])):
            raise ValueError("partition degrees must be strictly decreasing")

    @classmethod
    def from_parts(cls, parts) -> MultiPartition:
        counts: dict[int, int] = {}
        for p in parts:
            if p > 0:
                counts[p] = counts.get(p, 0) + 1
        return cls(tuple(sorted(counts.items(), reverse=True)))

    @property
    def parts(self) -> list[int]:
        return [mu for mu, m in self.pairs for _ in range(m)]

    @property
    def deg(self) -> int:
        return sum(mu * m for mu, m in self.pairs)

    @property
    def length(self) -> int:
        return sum(m for _, m in self.pairs)

    def plus_ones(self, i: int) -> MultiPartition:
        """[nu + 1^i]: add one to each of the i largest parts (padding with zeros)."""
        parts = self.parts + [0] * max(0, i - self.length)
        return MultiPartition.from_parts([p + 1 if k < i else p for k, p in enumerate(parts)])

    def dominates(self, other: MultiPartition) -> bool:
        """Dominance order self >= other (partitions of equal degree only)."""
        if self.deg != other.deg:
            raise ValueError("dominance compares partitions of equal degree")
        a, b = self.parts, other.parts
        k = max(len(a), len(b))
        a = a + [0] * (k - len(a))
        b = b + [0] * (k - len(b))
        sa = sb = 0
        for x, y in zip(a, b):
            sa += x
            sb += y
            if sa < sb:
                return False
        return True

    def __str__(self):
        if not self.pairs:
            return "[]"
        return "[" + ",".join(str(mu) if m == 1 else f"{mu}^{m}" for mu, m in self.pairs) + "]"


def point_var(j: int, k: int, d: int) -> int:
    return j * d + k


def _transposition(n: int, d: int, j: int) -> list[int]:
    perm = list(range(n * d))
    for k in range(d):
        perm[point_var(j, k, d)] = point_var(j + 1, k, d)
        perm[point_var(j + 1, k, d)] = point_var(j, k, d)
    return perm


def _point_perm(n: int, d: int, sigma) -> list[int]:
    return [point_var(sigma[j], k, d) for j in range(n) for k in range(d)]


@dataclass(frozen=True, eq=False)
class MultiSymInvariant:
    n: int
    d: int
    poly: MPoly

    def __post_init__(self):
        if self.poly.nvars != self.n * self.d:
            raise ValueError(f"expected {self.n * self.d} variables, got {self.poly.nvars}")
        for j in range(self.n - 1):
            if self.poly.permute(_transposition(self.n, self.d, j)) != self.poly:
                raise NotInvariant(f"not invariant under swapping points {j + 1} and {j + 2}")

    def __eq__(self, other):
        if not isinstance(other, MultiSymInvariant):
            return NotImplemented
        return (self.n, self.d) == (other.n, other.d) and self.poly == other.poly

    def __add__(self, other):
        return MultiSymInvariant(self.n, self.d, self.poly + other.poly)

    def __mul__(self, other):
        return MultiSymInvariant(self.n, self.d, self.poly * other.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def format(self) -> str:
        return self.poly.format(lambda v: f"x[{v // self.d + 1}][{v % self.d + 1}]")

    __str__ = format


def parse_invariant(text: str, n: int, d: int, field=QQ) -> MultiSymInvariant:
    """Parse an expression over ``x[j][k]`` (1-based point j, coordinate k)."""
    nv = n * d

    def sub(name, idx):
        if name != "x" or len(idx) != 2:
            raise ExpressionError(f"variables are written x[j][k]; got {name}{idx}")
        j, k = idx
        if not (1 <= j <= n and 1 <= k <= d):
            raise ExpressionError(f"x[{j}][{k}] out of range for n={n}, d={d}")
        return MPoly.var(nv, point_var(j - 1, k - 1, d), field)

    poly = evaluate(text, const=lambda c: MPoly.const(nv, c, field), subscript=sub)
    return MultiSymInvariant(n, d, poly)


def monomial_partition(e, n: int, d: int) -> MultiPartition:
    return MultiPartition.from_parts([sum(e[j * d:(j + 1) * d]) for j in range(n)])


def graded_decompose(p: MultiSymInvariant) -> dict[MultiPartition, MultiSymInvariant]:
    """Split P by the orbit [nu] of the per-point degree vector of each monomial."""
    groups: dict[MultiPartition, dict] = {}
    for e, c in p.poly.terms.items():
        groups.setdefault(monomial_partition(e, p.n, p.d), {})[e] = c
    return {
        nu: MultiSymInvariant(p.n, p.d, MPoly(p.poly.nvars, terms, p.poly.field))
        for nu, terms in sorted(groups.items())
    }


def symmetrize(poly: MPoly, n: int, d: int) -> MPoly:
    """Sum of poly over all permutations of the points."""
    acc = MPoly(poly.nvars, {}, poly.field)
    for sigma in permutations(range(n)):
        acc = acc + poly.permute(_point_perm(n, d, sigma))
    return acc


def orbit_sum(e, n: int, d: int, field=QQ) -> MPoly:
    """The monomial-symmetrization: each distinct monomial in the orbit of x^e once."""
    orbit = set()
    for sigma in permutations(range(n)):
        f = [0] * (n * d)
        for j in range(n):
            for k in range(d):
                f[point_var(sigma[j], k, d)] = e[point_var(j, k, d)]
        orbit.add(tuple(f))
    return MPoly(n * d, {f: 1 for f in orbit}, field)


def monomial_symmetrizations(n: int, d: int, max_degree: int, field=QQ) -> list[MultiSymInvariant]:
    """All orbit sums of monomials of degree 1..max_degree, in a fixed order."""
    out = []
    seen = set()
    for deg in range(1, max_degree + 1):
        for e in exponents_of_degree(n * d, deg):
            blocks = tuple(sorted((e[j * d:(j + 1) * d] for j in range(n)), reverse=True))
            if blocks in seen:
                continue
            seen.add(blocks)
            rep = tuple(x for b in blocks for x in b)
            out.append(MultiSymInvariant(n, d, orbit_sum(rep, n, d, field)))
    return out


# -- Chow side -----------------------------------------------------------------

def chow_variables(n: int, d: int) -> list[tuple[int, tuple]]:
    """(i, e) for each coordinate A_{i,e}: i = 1..n, e over Sym^i in descending lex order."""
    return [(i, e) for i in range(1, n + 1) for e in exponents_of_degree(d, i)]


@dataclass(frozen=True, eq=False)
class ChowPolynomial:
    n: int
    d: int
    poly: MPoly

    @property
    def variables(self):
        return chow_variables(self.n, self.d)

    def __eq__(self, other):
        if not isinstance(other, ChowPolynomial):
            return NotImplemented
        return (self.n, self.d) == (other.n, other.d) and self.poly == other.poly

    def format(self) -> str:
        names = [f"a[{i}][{','.join(map(str, e))}]" for i, e in self.variables]
        return self.poly.format(lambda v: names[v])

    __str__ = format


@lru_cache(maxsize=None)
def iota_images(n: int, d: int, field=QQ) -> tuple:
    """A_{i,e} as explicit polynomials in the point coordinates."""
    nv = n * d
    pts = [[MPoly.var(nv, point_var(j, k, d), field) for k in range(d)] for j in range(n)]
    a = elementary_from_points(pts)
    zero = MPoly(nv, {}, field)
    return tuple(a[i].coeff(e, zero) for i, e in chow_variables(n, d))


def compose_with_iota(q: ChowPolynomial, field=QQ) -> MPoly:
    """Q o iota, fully expanded."""
    images = iota_images(q.n, q.d, field)
    out = q.poly.substitute(images)
    if not isinstance(out, MPoly):
        out = MPoly.const(q.n * q.d, out, field)
    return out


def weighted_monomials(weights, total: int) -> list[tuple]:
    """Exponent vectors over variables of the given weights with weighted degree ``total``."""
    out = []

    def rec(idx, left, acc):
        if idx == len(weights):
            if left == 0:
                out.append(tuple(acc))
            return
        w = weights[idx]
        for k in range(left // w, -1, -1):
            acc.append(k)
            rec(idx + 1, left - k * w, acc)
            acc.pop()

    rec(0, total, [])
    return out


def _orbit_key(e, n: int, d: int) -> tuple:
    return tuple(sorted((e[j * d:(j + 1) * d] for j in range(n)), reverse=True))


@dataclass(frozen=True)
class _DegreeSystem:
    columns: tuple  # A-monomial exponent vectors
    rows: dict  # orbit key -> row index
    matrix: Matrix
    reduced: Matrix
    pivots: tuple
    transform: Matrix
    kernel: tuple


@lru_cache(maxsize=None)
def _degree_system(n: int, d: int, degree: int, field=QQ) -> _DegreeSystem:
    variables = chow_variables(n, d)
    images = iota_images(n, d, field)
    weights = [i for i, _ in variables]
    cols = weighted_monomials(weights, degree)
    expansions = []
    for e in cols:
        acc = MPoly.const(n * d, 1, field)
        for v, k in enumerate(e):
            if k:
                acc = acc * images[v] ** k
        expansions.append(acc)
    rows: dict = {}
    for ex in expansions:
        for mono in ex.terms:
            rows.setdefault(_orbit_key(mono, n, d), None)
    rows = {key: r for r, key in enumerate(sorted(rows))}
    data = [[field.zero] * len(cols) for _ in rows]
    for c, ex in enumerate(expansions):
        for mono, coef in ex.terms.items():
            key = _orbit_key(mono, n, d)
            # invariance makes every monomial of an orbit carry the same coefficient
            data[rows[key]][c] = coef
    m = Matrix(data, field, len(cols))
    nr = len(rows)
    aug = Matrix([list(r) + [field.one if i == j else field.zero for j in range(nr)]
                  for i, r in enumerate(data)], field, len(cols) + nr)
    red, pivots = aug.rref()
    pivots = tuple(p for p in pivots if p < len(cols))
    transform = red.submatrix(range(nr), range(len(cols), len(cols) + nr))
    reduced = red.submatrix(range(nr), range(len(cols)))
    _, kernel = rank_kernel(m)
    return _DegreeSystem(tuple(cols), rows, m, reduced, pivots, transform, tuple(map(tuple, kernel)))


def _solve_min_support(x0: list, kernel, max_kernel_dim: int = 3) -> list:
    """Among x0 + span(kernel), a solution with fewest nonzeros.

    Ties go to the lexicographically least support (sorted column indices).
    For kernel dimension above ``max_kernel_dim`` the basic solution x0 is kept.
    """
    k = len(kernel)
    if k == 0 or k > max_kernel_dim:
        return x0
    N = len(x0)

    def key(x):
        supp = tuple(i for i, v in enumerate(x) if v != 0)
        return (len(supp), supp)

    best, best_key = x0, key(x0)
    active = [i for i in range(N) if any(kv[i] != 0 for kv in kernel)]
    for subset in combinations(active, k):
        a = Matrix([[kernel[c][i] for c in range(k)] for i in subset])
        if a.det() == 0:
            continue
        rhs = [-x0[i] for i in subset]
        t = a.inverse().apply(rhs)
        x = [x0[i] + sum((t[c] * kernel[c][i] for c in range(k)), 0) for i in range(N)]
        kx = key(x)
        if kx < best_key:
            best, best_key = x, kx
    return best


def rewrite_in_chow(p: MultiSymInvariant, max_degree: int = 6, verify: bool = True) -> ChowPolynomial:
    """Find Q in the Chow coordinates with Q o iota = P.

    Each homogeneous part of P is matched against all Chow monomials of the
    same weighted degree by exact linear algebra. When relations among the
    Chow monomials leave a choice, the solution with fewest monomials wins.
    """
    field = p.poly.field
    if p.poly.total_degree() > max_degree:
        raise DegreeBound(f"degree {p.poly.total_degree()} exceeds the bound {max_degree}")
    variables = chow_variables(p.n, p.d)
    nv = len(variables)
    terms: dict = {}
    for deg, part in p.poly.homogeneous_parts().items():
        if deg == 0:
            terms[(0,) * nv] = part.terms[(0,) * (p.n * p.d)]
            continue
        system = _degree_system(p.n, p.d, deg, field)
        rhs = [field.zero] * len(system.rows)
        for mono, c in part.terms.items():
            row = system.rows.get(_orbit_key(mono, p.n, p.d))
            if row is None:
                raise RuntimeError(f"monomial outside the span of Chow coordinates in degree {deg}")
            rhs[row] = c
        y = system.transform.apply(rhs)
        rank = len(system.pivots)
        if any(v != 0 for v in y[rank:]):
            raise RuntimeError(f"degree-{deg} part is not a polynomial in the Chow coordinates")
        x0 = [field.zero] * len(system.columns)
        for r, col in enumerate(system.pivots):
            x0[col] = y[r]
        x = _solve_min_support(x0, system.kernel)
        for col, v in enumerate(x):
            if v != 0:
                terms[system.columns[col]] = v
    q = ChowPolynomial(p.n, p.d, MPoly(nv, terms, field))
    if verify and compose_with_iota(q, field) != p.poly:
        raise RuntimeError("rewriting certificate failed: Q o iota != P")
    return q


def nu_component(p: MultiSymInvariant, nu: MultiPartition) -> MultiSymInvariant:
    return graded_decompose(p).get(nu, MultiSymInvariant(p.n, p.d, MPoly(p.poly.nvars, {}, p.poly.field)))


def kappa_product(i: int, nu: MultiPartition, first: MultiSymInvariant,
                  second: MultiSymInvariant) -> dict[MultiPartition, MultiSymInvariant]:
    """The product of an element of Sym^[1^i] with one of Sym^[nu], split by partition."""
    if i > first.n:
        raise ValueError(f"i={i} exceeds n={first.n}")
    for comp, label in ((first, MultiPartition(((1, i),))), (second, nu)):
        parts = set(graded_decompose(comp))
        if parts - {label}:
            raise ValueError(f"factor is not concentrated in {label}")
    return graded_decompose(first * second)


def kappa_leading_term(i: int, nu: MultiPartition, first: MultiSymInvariant,
                       second: MultiSymInvariant) -> MultiSymInvariant:
    """Projection of the product onto the leading partition [nu + 1^i]."""
    comps = kappa_product(i, nu, first, second)
    lead = nu.plus_ones(i)
    zero = MultiSymInvariant(first.n, first.d, MPoly(first.poly.nvars, {}, first.poly.field))
    return comps.get(lead, zero)


def random_component(rng, n: int, d: int, nu: MultiPartition, field=QQ,
                     coeff_range: int = 3) -> MultiSymInvariant:
    """A random element of Sym^[nu]: symmetrize a product of per-point forms of degrees nu."""
    if nu.length > n:
        raise ValueError(f"{nu} has more than n={n} parts")
    nv = n * d
    degs = nu.parts + [0] * (n - nu.length)
    prod = MPoly.const(nv, 1, field)
    for j, deg in enumerate(degs):
        form = MPoly(nv, {}, field)
        for e in exponents_of_degree(d, deg):
            c = rng.randint(-coeff_range, coeff_range)
            if c:
                full = [0] * nv
                full[j * d:(j + 1) * d] = e
                form = form + MPoly(nv, {tuple(full): c}, field)
        prod = prod * form
    return MultiSymInvariant(n, d, symmetrize(prod, n, d))


def elementary_component(rng, n: int, d: int, i: int, field=QQ, coeff_range: int = 3) -> MultiSymInvariant:
    """A random element of Sym^[1^i]: a random linear combination of the A_{i,e}."""
    images = iota_images(n, d, field)
    acc = MPoly(n * d, {}, field)
    for (deg, _), img in zip(chow_variables(n, d), images):
        if deg == i:
            acc = acc + img * Fraction(rng.randint(-coeff_range, coeff_range))
    return MultiSymInvariant(n, d, acc)
