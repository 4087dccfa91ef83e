from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spectral_chow.fields import FieldError, FpElement, PrimeField, QQ, field_from_descriptor
from spectral_chow.matrix import Matrix, char_poly, rank_kernel, solve
from spectral_chow.snf import is_smith_form, is_unimodular, poly_det, smith_form, smith_normal_form
from spectral_chow.unipoly import PolyRing, UniPoly, Unsplit, poly_gcd, roots_with_multiplicity

from oracles import char_poly_at, invariant_factors_by_minors, leibniz_det

R = PolyRing(QQ, "s")
s = R.gen()


def P(*coeffs):
    return UniPoly(list(coeffs), QQ)


# -- fields ---------------------------------------------------------------------

def test_field_descriptors_round_trip():
    assert field_from_descriptor("Q") == QQ
    assert field_from_descriptor({"Fp": 7}) == PrimeField(7)
    assert field_from_descriptor("Fp:11") == PrimeField(11)
    assert PrimeField(5).descriptor() == {"Fp": 5}
    with pytest.raises(FieldError):
        PrimeField(9)
    with pytest.raises(FieldError):
        field_from_descriptor("R")


def test_fp_arithmetic():
    F = PrimeField(7)
    a, b = F(3), F(5)
    assert a + b == F(1)
    assert a * b == F(1)
    assert a / b == F(9)
    assert a.inverse() * a == 1
    assert -a == F(4)
    assert F.parse("-1") == F(6)
    assert F.format(F(-1)) == "6"
    with pytest.raises(ZeroDivisionError):
        F(0).inverse()


@given(st.integers(-50, 50), st.integers(-50, 50), st.sampled_from([2, 3, 5, 7, 13]))
def test_fp_matches_integer_arithmetic_mod_p(x, y, p):
    F = PrimeField(p)
    assert (F(x) * F(y)) == F(x * y)
    assert (F(x) - F(y)) == F(x - y)
    assert isinstance(F(x) + y, FpElement)


def test_rational_field_parse_and_format():
    assert QQ.parse("3/6") == Fraction(1, 2)
    assert QQ.format(Fraction(-4, 2)) == "-2"
    assert QQ.format(Fraction(1, 3)) == "1/3"


# -- polynomials and roots ------------------------------------------------------

def test_roots_examples():
    assert roots_with_multiplicity(P(2, -3, 1)) == [(1, 1), (2, 1)]
    assert roots_with_multiplicity(P(0, 0, 1)) == [(0, 2)]
    with pytest.raises(Unsplit) as exc:
        roots_with_multiplicity(P(-2, 0, 1))
    assert exc.value.factor == P(-2, 0, 1)
    assert str(exc.value.factor) == "s^2 - 2"


def test_unsplit_carries_the_split_part():
    p = P(-2, 0, 1) * P(-3, 1) ** 2
    with pytest.raises(Unsplit) as exc:
        roots_with_multiplicity(p)
    assert list(exc.value.roots) == [(3, 2)]
    assert exc.value.factor.monic() == P(-2, 0, 1)


def test_roots_over_fp_by_search():
    F = PrimeField(5)
    p = UniPoly([F(-2), F(0), F(1)], F)  # s^2 - 2 is irreducible mod 5
    with pytest.raises(Unsplit):
        roots_with_multiplicity(p)
    q = UniPoly([F(-4), F(0), F(1)], F)  # (s - 2)(s + 2)
    assert roots_with_multiplicity(q) == [(F(2), 1), (F(3), 1)]


roots_lists = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=5)


@given(roots_lists, st.integers(0, 2))
def test_roots_multiplicities_sum_to_degree_minus_remainder(roots, extra):
    p = P(1)
    for r in roots:
        p = p * P(-r, 1)
    irreducible = [P(1), P(-2, 0, 1), P(1, 0, 1) * P(-3, 0, 1)][extra]
    p = p * irreducible * 3
    try:
        found = roots_with_multiplicity(p)
        remainder_degree = 0
    except Unsplit as exc:
        found = list(exc.roots)
        remainder_degree = exc.factor.degree
    assert sum(m for _, m in found) == p.degree - remainder_degree
    assert sorted(set(roots)) == [r for r, _ in found]
    for r, m in found:
        assert m == roots.count(r)


def test_divmod_and_gcd():
    a = P(-1, 0, 1)  # s^2 - 1
    b = P(1, 1)
    q, r = divmod(a, b)
    assert q == P(-1, 1) and r.is_zero()
    assert poly_gcd(a * P(2, 1), b * P(2, 1)) == P(2, 1) * P(1, 1)


# -- matrices -------------------------------------------------------------------

def M(rows, ring=QQ):
    return Matrix([[Fraction(x) if ring is QQ else x for x in r] for r in rows], ring)


def test_rank_kernel_examples():
    r, ker = rank_kernel(Matrix.identity(3))
    assert r == 3 and ker == []
    r, ker = rank_kernel(Matrix.zeros(2, 2))
    assert r == 0 and len(ker) == 2
    r, ker = rank_kernel(M([[1, 2], [2, 4]]))
    assert r == 1 and len(ker) == 1
    v = ker[0]
    assert v[0] * 1 == v[1] * -2  # proportional to (-2, 1)
    assert M([[1, 2], [2, 4]]).apply(v) == [0, 0]


def test_solve_and_inconsistent():
    a = M([[1, 1], [1, -1]])
    x = solve(a, M([[3], [1]]))
    assert x == M([[2], [1]])
    with pytest.raises(ValueError):
        solve(M([[1, 1], [1, 1]]), M([[1], [2]]))


def test_char_poly_examples():
    assert char_poly(Matrix.diag([Fraction(1), Fraction(2)])) == P(2, -3, 1)
    assert char_poly(M([[0, 1], [0, 0]])) == P(0, 0, 1)
    assert char_poly(M([[Fraction(7, 3)]])) == P(Fraction(-7, 3), 1)


small = st.integers(-4, 4)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(square), st.integers(-3, 3))
def test_char_poly_agrees_with_leibniz_determinant(rows, c):
    cp = char_poly(M(rows))
    assert cp(Fraction(c)) == char_poly_at(rows, Fraction(c))
    assert cp.degree == len(rows)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n))))
def test_char_poly_is_conjugation_invariant(pair):
    a, p = M(pair[0]), M(pair[1])
    if p.det() == 0:
        p = p + Matrix.identity(p.nrows).scale(Fraction(11))
        if p.det() == 0:
            return
    assert char_poly(p @ a @ p.inverse()) == char_poly(a)


@given(st.integers(1, 4).flatmap(square))
def test_det_agrees_with_leibniz(rows):
    assert M(rows).det() == leibniz_det([[Fraction(x) for x in r] for r in rows], Fraction(1), Fraction(0))


@given(st.integers(1, 4).flatmap(square))
def test_inverse(rows):
    a = M(rows)
    if a.det() == 0:
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a @ a.inverse() == Matrix.identity(a.nrows)


def test_matrix_over_fp():
    F = PrimeField(5)
    a = Matrix([[F(1), F(2)], [F(3), F(4)]], F)
    assert a.det() == F(-2)
    assert a @ a.inverse() == Matrix.identity(2, F)


# -- Smith normal form ----------------------------------------------------------

def test_snf_already_diagonal():
    m = Matrix([[R.one, R.zero], [R.zero, s]], R)
    U, D, V = smith_normal_form(m)
    assert D == m


def test_snf_triangular_example_matches_determinantal_divisors():
    # gcd of entries is s and the determinant is s^2, so the form is diag(s, s)
    m = Matrix([[s, s * s], [R.zero, s]], R)
    U, D, V = smith_normal_form(m)
    assert U @ m @ V == D
    assert [D.rows[0][0], D.rows[1][1]] == [s, s]
    assert [D.rows[0][0], D.rows[1][1]] == invariant_factors_by_minors(m.rows, QQ)


def test_snf_zero_matrix():
    m = Matrix.zeros(2, 3, R)
    U, D, V = smith_normal_form(m)
    assert D == m
    assert U == Matrix.identity(2, R) and V == Matrix.identity(3, R)


poly = st.lists(st.integers(-2, 2), min_size=0, max_size=3).map(lambda c: UniPoly(c, QQ))


@st.composite
def poly_matrices(draw):
    nr = draw(st.integers(1, 3))
    nc = draw(st.integers(1, 3))
    return Matrix([[draw(poly) for _ in range(nc)] for _ in range(nr)], R)


@given(poly_matrices())
def test_snf_properties(m):
    sf = smith_form(m)
    assert sf.U @ m @ sf.V == sf.D
    assert sf.U @ sf.U_inv == Matrix.identity(m.nrows, R)
    assert is_unimodular(sf.U) and is_unimodular(sf.V)
    assert poly_det(sf.U).degree == 0 and poly_det(sf.V).degree == 0
    assert is_smith_form(sf.D)
    diag = sf.diagonal
    for a, b in zip(diag, diag[1:]):
        if not a.is_zero():
            assert (b % a).is_zero()
    assert diag == invariant_factors_by_minors(m.rows, QQ)


def test_snf_is_deterministic():
    m = Matrix([[s + 1, s * s], [s, R.one + s * s * s]], R)
    assert smith_normal_form(m) == smith_normal_form(m)
