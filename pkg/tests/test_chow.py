import random
from fractions import Fraction
from itertools import combinations_with_replacement, product

import pytest
from hypothesis import given, strategies as st

from spectral_chow.chow import (cayley_fiber, chow2_equation, chow2_membership, iota,
                                iota_injectivity_probe, is_multiplicity_free, local_length)
from spectral_chow.generate import random_cycle
from spectral_chow.rng import Stream
from spectral_chow.spectra import ZeroCycle
from spectral_chow.symtensor import SymTensor

from oracles import count_monomials_below, fraction_kernel, tensor_dict

F = Fraction


def cyc(*entries):
    return ZeroCycle(tuple((tuple(F(x) for x in p), m) for p, m in entries))


def w_tensor(w1, w2, w3):
    return SymTensor(2, 2, {(2, 0): F(w1), (1, 1): F(w2), (0, 2): F(w3)})


def test_iota_examples():
    a = iota(cyc(((1, 0), 1), ((0, 1), 1)))
    assert tensor_dict(a[1]) == {(1, 0): 1, (0, 1): 1}
    assert tensor_dict(a[2]) == {(1, 1): 1}
    a = iota(cyc(((0, 0, 0), 3)))
    assert all(t.is_zero() for t in a.tensors)
    v = SymTensor.linear([F(2), F(-1)])
    a = iota(cyc(((2, -1), 3)))
    assert a[1] == v.scale(3) and a[2] == (v * v).scale(3) and a[3] == v * v * v


def test_injectivity_probe_examples():
    a1 = cyc(((1, 0), 1), ((0, 1), 1))
    a2 = cyc(((1, 1), 1), ((0, 0), 1))
    assert iota(a1)[2].coeff((1, 1)) == 1 and iota(a2)[2].coeff((1, 1)) == 0
    assert iota_injectivity_probe(a1, a2)
    assert iota_injectivity_probe(a1, a1)


@given(st.integers(0, 10 ** 6), st.integers(1, 5), st.integers(1, 3))
def test_distinct_cycles_are_distinguished(seed, n, d):
    a = random_cycle(Stream(seed, 1), n, d)
    b = random_cycle(Stream(seed, 2), n, d)
    assert iota_injectivity_probe(a, b)
    assert (iota(a) == iota(b)) == (a == b)


@given(st.integers(0, 10 ** 6), st.integers(1, 5), st.integers(1, 3))
def test_iota_invariant_under_entry_order(seed, n, d):
    a = random_cycle(Stream(seed), n, d)
    reordered = ZeroCycle.from_points(list(reversed(a.expand())))
    assert iota(reordered) == iota(a)


def test_chow2_examples():
    assert chow2_membership((F(1), F(1)), w_tensor(0, 1, 0))
    assert chow2_membership((F(0), F(0)), w_tensor(0, 0, 0))
    assert not chow2_membership((F(0), F(0)), w_tensor(1, 1, 0))
    assert chow2_equation(0, 0, 1, 1, 0) == 4


def test_chow2_rejects_bad_shapes():
    with pytest.raises(ValueError):
        chow2_membership((F(1), F(1), F(1)), w_tensor(0, 0, 0))


def _weighted_monomials():
    """Monomials in x, y (weight 1) and w1, w2, w3 (weight 2) of weight 4."""
    out = []
    for k in range(3):
        for ws in combinations_with_replacement(range(3), k):
            for xs in range(4 - 2 * k + 1):
                out.append((xs, 4 - 2 * k - xs, ws))
    return out


def _eval_monomial(mono, x, y, w):
    xs, ys, ws = mono
    val = F(x) ** xs * F(y) ** ys
    for i in ws:
        val *= w[i]
    return val


def test_convention_fixing_oracle_recovers_the_displayed_equation():
    # fit every weight-4 relation vanishing on iota images of a grid of pairs;
    # the relation space is one-dimensional and spanned by the stated equation
    monos = _weighted_monomials()
    rows = []
    for p, q in product(product(range(-2, 3), repeat=2), repeat=2):
        a = iota(ZeroCycle.from_points([tuple(map(F, p)), tuple(map(F, q))]))
        x, y = a[1].coeff((1, 0)), a[1].coeff((0, 1))
        w = (a[2].coeff((2, 0)), a[2].coeff((1, 1)), a[2].coeff((0, 2)))
        rows.append([_eval_monomial(m, x, y, w) for m in monos])
    (relation,) = fraction_kernel(rows, len(monos))
    rnd = random.Random(0)
    ratios = set()
    for _ in range(40):
        x, y = rnd.randint(-9, 9), rnd.randint(-9, 9)
        w = tuple(F(rnd.randint(-9, 9)) for _ in range(3))
        fitted = sum(c * _eval_monomial(m, x, y, w) for c, m in zip(relation, monos))
        stated = chow2_equation(x, y, *w)
        assert (fitted == 0) == (stated == 0)
        if fitted:
            ratios.add(stated / fitted)
    assert len(ratios) == 1


@given(st.tuples(*[st.integers(-6, 6)] * 4))
def test_chow2_membership_on_images(coords):
    x1, y1, x2, y2 = map(F, coords)
    a = iota(ZeroCycle.from_points([(x1, y1), (x2, y2)]))
    assert chow2_membership((a[1].coeff((1, 0)), a[1].coeff((0, 1))), a[2])


def test_local_length_matches_monomial_count():
    for m in range(1, 6):
        for d in range(1, 5):
            assert local_length(m, d) == count_monomials_below(m, d)


def test_cayley_fiber_examples():
    f = cayley_fiber(cyc(((1, 0), 1), ((0, 1), 1), ((2, 2), 1)))
    assert f.total_length == 3 and not f.jumps
    f = cayley_fiber(cyc(((1, 2), 2)))
    assert f.entries[0][2] == 3 and f.total_length == 3 and f.jumps
    f = cayley_fiber(cyc(((4,), 5)))
    assert f.total_length == 5 and not f.jumps


@given(st.integers(0, 10 ** 6), st.integers(1, 6), st.integers(1, 4))
def test_non_flatness_witness(seed, n, d):
    a = random_cycle(Stream(seed), n, d)
    f = cayley_fiber(a)
    if d == 1:
        assert f.total_length == n and not f.jumps
    elif not is_multiplicity_free(a):
        assert f.total_length > n and f.jumps
    else:
        assert f.total_length == n


def test_multiplicity_free_examples():
    assert is_multiplicity_free(cyc(((1, 0), 1), ((0, 1), 1)))
    assert not is_multiplicity_free(cyc(((0, 0), 2)))
    assert is_multiplicity_free(cyc(((7, 7, 7), 1)))
