"""Acceptance criteria, one test group per criterion, all exact (zero tolerance).

A PASS/FAIL line per criterion is printed in the pytest terminal summary.
"""

import time
from fractions import Fraction
from itertools import combinations_with_replacement, product

import pytest

from spectral_chow.chow import cayley_fiber, chow2_equation, chow2_membership, iota, local_length
from spectral_chow.cli import main
from spectral_chow.exprparse import parse_unipoly
from spectral_chow.families import ModulePresentation, ruled_example, torsion_free_quotient
from spectral_chow.fields import QQ
from spectral_chow.generate import instance_for_trial, random_cycle
from spectral_chow.matrix import Matrix
from spectral_chow.multisym import compose_with_iota, monomial_symmetrizations, rewrite_in_chow
from spectral_chow.rng import Stream
from spectral_chow.spectra import ZeroCycle, cayley_hamilton_check, cycle_to_tuple, spectral_datum, trace_powers
from spectral_chow.symtensor import elementary_from_points, newton_p_to_e
from spectral_chow.unipoly import PolyRing, UniPoly
from spectral_chow.verify import run_verify

from oracles import count_monomials_below

F = Fraction
SEED = 20240601
N_INSTANCES = 500


@pytest.fixture(scope="module")
def instances():
    out = []
    for i in range(N_INSTANCES):
        inst = instance_for_trial(SEED, i, 4, 3)
        out.append((inst, spectral_datum(inst.tuple)))
    return out


# 1 -----------------------------------------------------------------------------

@pytest.mark.acceptance("1. factorization identity on 500 tuples")
def test_factorization_identity(instances):
    start = time.perf_counter()
    assert len(instances) >= 500
    assert all(inst.tuple.n <= 4 and inst.tuple.d <= 3 for inst, _ in instances)
    failures = []
    for k, (inst, z) in enumerate(instances):
        if z != inst.cycle:
            failures.append((k, "datum differs from the constructed spectrum"))
        lhs = newton_p_to_e(trace_powers(inst.tuple))
        rhs = elementary_from_points(z.expand())
        if lhs != rhs:
            failures.append((k, "newton(trace powers) != elementary(datum)"))
    assert failures == []
    assert time.perf_counter() - start < 60


# 2 -----------------------------------------------------------------------------

@pytest.mark.acceptance("2. generalized Cayley-Hamilton on the same 500 tuples")
def test_generalized_cayley_hamilton(instances):
    failures = []
    for k, (inst, z) in enumerate(instances):
        res = cayley_hamilton_check(inst.tuple, z, trials=20, seed=SEED + k)
        if not res.ok:
            failures.append((k, res.witness))
    assert failures == []


# 3 -----------------------------------------------------------------------------

@pytest.mark.acceptance("3. Cayley fiber lengths")
def test_local_lengths_brute_force():
    for m in range(1, 6):
        for d in range(1, 5):
            assert local_length(m, d) == count_monomials_below(m, d), (m, d)


@pytest.mark.acceptance("3. Cayley fiber lengths")
def test_double_point_jumps_in_the_plane():
    fiber = cayley_fiber(ZeroCycle((((F(2), F(-1)), 2),)))
    assert fiber.n == 2 and fiber.total_length == 3 and fiber.jumps


@pytest.mark.acceptance("3. Cayley fiber lengths")
def test_curve_case_never_jumps():
    for seed in range(300):
        rng = Stream(seed)
        a = random_cycle(rng, rng.randint(1, 6), 1)
        fiber = cayley_fiber(a)
        assert fiber.total_length == a.n and not fiber.jumps


# 4 -----------------------------------------------------------------------------

def _chow2_point(a):
    return ((a[1].coeff((1, 0)), a[1].coeff((0, 1))),
            (a[2].coeff((2, 0)), a[2].coeff((1, 1)), a[2].coeff((0, 2))))


@pytest.mark.acceptance("4. Chow_2 hypersurface")
def test_chow2_vanishes_on_grid_images():
    grid = [(F(x), F(y)) for x, y in product(range(-4, 5), repeat=2)]
    pairs = list(combinations_with_replacement(grid, 2))
    assert len(pairs) == 3321
    bad = []
    for p, q in pairs:
        a = iota(ZeroCycle.from_points([p, q]))
        (x, y), w = _chow2_point(a)
        if chow2_equation(x, y, *w) != 0 or not chow2_membership((x, y), a[2]):
            bad.append((p, q))
    assert bad == []


@pytest.mark.acceptance("4. Chow_2 hypersurface")
def test_chow2_rejects_perturbed_points():
    rng = Stream(SEED, 4)
    samples, rejected = 3000, 0
    for _ in range(samples):
        p = (F(rng.randint(-4, 4)), F(rng.randint(-4, 4)))
        q = (F(rng.randint(-4, 4)), F(rng.randint(-4, 4)))
        (x, y), w = _chow2_point(iota(ZeroCycle.from_points([p, q])))
        coords = [x, y, *w]
        while True:
            delta = [rng.randint(-3, 3) for _ in coords]
            if any(delta):
                break
        x, y, w1, w2, w3 = (c + e for c, e in zip(coords, delta))
        if chow2_equation(x, y, w1, w2, w3) != 0:
            rejected += 1
    assert rejected / samples >= 0.99, rejected / samples


# 5 -----------------------------------------------------------------------------

@pytest.mark.acceptance("5. multisymmetric rewriting with certificates")
def test_multisymmetric_rewriting():
    start = time.perf_counter()
    counts = {}
    for n, d in [(2, 1), (2, 2), (3, 2)]:
        invariants = monomial_symmetrizations(n, d, 4)
        for p in invariants:
            q = rewrite_in_chow(p, max_degree=4, verify=True)
            assert (compose_with_iota(q) - p.poly).is_zero()
        counts[(n, d)] = len(invariants)
    assert counts == {(2, 1): 8, (2, 2): 37, (3, 2): 50}
    assert time.perf_counter() - start < 120


# 6 -----------------------------------------------------------------------------

@pytest.mark.acceptance("6. Cohen-Macaulayfication of the ruled example")
def test_ruled_example_values():
    s = PolyRing(QQ).gen()
    ex = ruled_example(parse_unipoly("0", QQ), parse_unipoly("-s", QQ))
    assert ex.report.free_rank == 2
    assert [f.monic() for f in ex.report.invariant_factors] == [s]
    c1, c0 = ex.quotient_char_poly
    assert c1.is_zero() and c0 == -s  # k[s][t]/(t^2 - s)
    profile = dict(ex.fiber_profile([F(c) for c in range(-5, 6)]))
    assert profile[0] == 3
    assert all(v == 2 for c, v in profile.items() if c != 0)


@pytest.mark.acceptance("6. Cohen-Macaulayfication of the ruled example")
def test_quotient_idempotent_on_random_presentations():
    ring = PolyRing(QQ)
    for k in range(200):
        rng = Stream(SEED, 6, k)
        g, r = rng.randint(1, 4), rng.randint(0, 4)
        rows = [[UniPoly([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))], QQ)
                 if rng.randint(0, 3) else ring.zero for _ in range(r)] for _ in range(g)]
        m = ModulePresentation(g, Matrix(rows, ring, r))
        q, report = torsion_free_quotient(m)
        q2, report2 = torsion_free_quotient(q)
        assert report2.invariant_factors == [], k
        assert report2.free_rank == report.free_rank, k


# 7 -----------------------------------------------------------------------------

@pytest.mark.acceptance("7. round trip on 500 cycles")
def test_round_trip():
    failures = []
    for k in range(500):
        rng = Stream(SEED, 7, k)
        a = random_cycle(rng, rng.randint(1, 6), rng.randint(1, 3))
        if spectral_datum(cycle_to_tuple(a)) != a:
            failures.append(k)
    assert failures == []


# 8 -----------------------------------------------------------------------------

@pytest.mark.acceptance("8. deterministic verify reports")
def test_verify_reports_are_byte_identical():
    runs = [run_verify(seed=1, trials=100), run_verify(seed=1, trials=100),
            run_verify(seed=1, trials=100, jobs=4)]
    texts = [r.to_text() for r in runs]
    jsons = [r.to_json() for r in runs]
    assert texts[0] == texts[1] == texts[2]
    assert jsons[0] == jsons[1] == jsons[2]
    assert runs[0].ok


@pytest.mark.acceptance("8. deterministic verify reports")
def test_cli_verify_files_are_byte_identical(tmp_path):
    paths = []
    for k, jobs in enumerate(["1", "1", "3"]):
        out = tmp_path / f"report{k}.txt"
        js = tmp_path / f"report{k}.json"
        assert main(["verify", "--seed", "1", "--trials", "60", "--jobs", jobs,
                     "--out", str(out), "--json", str(js)]) == 0
        paths.append((out.read_bytes(), js.read_bytes()))
    assert paths[0] == paths[1] == paths[2]
