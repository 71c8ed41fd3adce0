import cmath
import itertools
import math
import random

import numpy as np
import pytest

from glasnerkit.core.exceptions import BudgetExceededException, ValidationException
from glasnerkit.schemas.ArithModules.arith import Factorization
from glasnerkit.schemas.ExpSumModules.expsum import ModulusDecomposition, SumSpec
from glasnerkit.services.ArithModules.factorization import factorize
from glasnerkit.services.ArithModules.powerfull import is_power_free, is_power_full
from glasnerkit.services.ExpSumModules.bounds import (
    bound_report,
    check_decomposition,
    content_exp_sum_bound,
    decompose_modulus,
    hua_bound,
    hua_bound_gcd,
    refined_bound,
    refined_bound_gcd,
    weil_bound,
)
from glasnerkit.services.ExpSumModules.expsum import (
    batch_abs_sums,
    eval_crt,
    eval_direct,
    eval_sum,
    q_content,
    reduced_degree,
)
from glasnerkit.services.ExpSumModules import extremal
from glasnerkit.services.ExpSumModules.extremal import extremal_search


def spec(e, q, f):
    return SumSpec(degree_e=e, modulus_q=q, coeffs=tuple(f))


def naive_sum(q, f):
    total = 0j
    for n in range(1, q + 1):
        value = sum(c * n ** (k + 1) for k, c in enumerate(f)) % q
        total += cmath.exp(2j * math.pi * value / q)
    return total


@pytest.mark.parametrize("q", [5, 13, 17, 29])
def test_quadratic_gauss_sums(q):
    assert abs(eval_direct(spec(2, q, (0, 1)))) == pytest.approx(math.sqrt(q), abs=1e-9)


def test_eval_direct_examples():
    value = eval_direct(spec(2, 5, (0, 1)))
    assert value.real == pytest.approx(math.sqrt(5), abs=1e-9)
    assert value.imag == pytest.approx(0.0, abs=1e-9)
    assert abs(eval_direct(spec(2, 7, (0, 0)))) == pytest.approx(7.0)
    assert abs(eval_direct(spec(3, 7, (0, 0, 1)))) == pytest.approx(abs(1 + 6 * math.cos(2 * math.pi / 7)), abs=1e-9)


def test_eval_direct_budget_points_to_crt():
    with pytest.raises(BudgetExceededException) as exc:
        eval_direct(spec(2, 11, (0, 1)), budget=10)
    assert "eval_crt" in exc.value.detail
    assert exc.value.exit_code == 3


def test_eval_crt_examples():
    assert abs(eval_crt(spec(2, 15, (0, 1)), factorize(15))) == pytest.approx(math.sqrt(15), abs=1e-9)
    assert abs(eval_crt(spec(1, 4, (1,)), factorize(4))) == pytest.approx(0.0, abs=1e-9)
    assert abs(eval_crt(spec(2, 35, (0, 1)), factorize(35))) == pytest.approx(math.sqrt(35), abs=1e-9)


def test_crt_twist_factors_the_sum():
    whole = abs(eval_direct(spec(2, 15, (0, 1))))
    parts = abs(eval_direct(spec(2, 3, (0, 2)))) * abs(eval_direct(spec(2, 5, (0, 3))))
    assert whole == pytest.approx(parts, abs=1e-9)


def test_eval_crt_rejects_foreign_factorization():
    with pytest.raises(ValidationException):
        eval_crt(spec(2, 15, (0, 1)), factorize(21))


def test_eval_crt_rejects_composite_bases():
    with pytest.raises(ValidationException):
        eval_crt(spec(2, 15, (0, 1)), Factorization(n=15, factors=[(15, 1)]))


def test_eval_sum_falls_back_to_crt():
    value = eval_sum(spec(2, 35, (0, 1)), budget=10)
    assert abs(value) == pytest.approx(math.sqrt(35), abs=1e-9)


def test_crt_matches_direct_on_mixed_moduli():
    rng = random.Random(1)
    prime_powers = [2, 4, 8, 16, 32, 3, 9, 27, 81, 5, 25, 125, 7, 49, 11, 121, 13, 17, 19, 23]
    checked = 0
    while checked < 200:
        q = 1
        for pp in rng.sample(prime_powers, rng.randint(1, 4)):
            if math.gcd(q, pp) == 1 and q * pp <= 10**5:
                q *= pp
        e = rng.randint(1, 5)
        f = tuple(rng.randint(-10**6, 10**6) for _ in range(e))
        s = spec(e, q, f)
        assert abs(eval_direct(s) - eval_crt(s, factorize(q))) <= 1e-6 * q
        checked += 1


def test_shift_invariance_and_trivial_bound():
    rng = random.Random(2)
    for _ in range(50):
        q = rng.randint(1, 300)
        e = rng.randint(1, 4)
        f = [rng.randint(0, q - 1) for _ in range(e)]
        value = eval_direct(spec(e, q, f))
        shifted = list(f)
        shifted[rng.randrange(e)] += q
        assert eval_direct(spec(e, q, shifted)) == value
        assert abs(value) <= q + 1e-9
    assert abs(eval_direct(spec(3, 12, (12, 24, 0)))) == pytest.approx(12.0)


def test_full_magnitude_needs_a_vanishing_polynomial():
    # n + n^2 = n(n + 1) is always even, though both coefficients are odd
    assert abs(eval_direct(spec(2, 2, (1, 1)))) == pytest.approx(2.0)
    assert abs(eval_direct(spec(2, 7, (1, 1)))) < 7 - 1e-9


def test_q_content_and_reduced_degree():
    assert q_content((6, 10), 4) == 2
    assert q_content((0, 0), 9) == 9
    assert q_content((3, 5), 8) == 1
    assert reduced_degree((1, 0, 7), 7) == 1
    assert reduced_degree((0, 0), 5) == 0
    assert reduced_degree((0, 3), 5) == 2


def coefficient_rows(p, m):
    lower = itertools.product(range(p), repeat=m - 1)
    return np.array([row + (top,) for row in lower for top in range(1, p)], dtype=np.int64)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31])
def test_weil_bound_with_exact_constant(p):
    for m in range(1, min(4, p - 1) + 1):
        values = batch_abs_sums(p, coefficient_rows(p, m))
        if m == 1:
            assert values.max() <= 1e-9
        assert values.max() <= (m - 1) * math.sqrt(p) + 1e-9
        assert weil_bound(p, m) == pytest.approx((m - 1) * math.sqrt(p))


def test_weil_bound_absent_off_primes():
    assert weil_bound(15, 2) is None
    assert weil_bound(7, 7) is None
    assert weil_bound(7, 0) is None


def test_batch_matches_direct():
    rows = np.array([[0, 1], [3, 4], [2, 0], [6, 6]])
    values = batch_abs_sums(9, rows)
    for row, value in zip(rows, values):
        assert value == pytest.approx(abs(naive_sum(9, row.tolist())), abs=1e-9)
    huge = [[3 * 2 ** 70 + 1, 2 ** 64 + 5]]
    assert batch_abs_sums(9, huge)[0] == pytest.approx(abs(naive_sum(9, [c % 9 for c in huge[0]])), abs=1e-9)


def test_decompose_modulus_examples():
    assert decompose_modulus(1653750, 4).as_labels() == {"q2": 98, "q3": 27, "q4": 625}
    assert decompose_modulus(1, 3).as_labels() == {"q2": 1, "q3": 1}
    assert decompose_modulus(360, 3).as_labels() == {"q2": 45, "q3": 8}


def test_decompose_modulus_degree_two_splits_off_cube_full_part():
    dec = decompose_modulus(360, 2)
    assert dec.parts == {2: 45}
    assert dec.cube_full_part == 8
    assert dec.as_labels() == {"q2": 45, "qe": 8}


def test_decompose_modulus_rejects_small_degree():
    with pytest.raises(ValidationException):
        decompose_modulus(10, 1)


def test_misrouted_decomposition_is_rejected():
    wrong = ModulusDecomposition(q=360, e=3, parts={2: 8, 3: 45})
    with pytest.raises(ValidationException) as exc:
        check_decomposition(wrong)
    assert "q_2 = 8" in exc.value.detail
    with pytest.raises(ValueError):
        ModulusDecomposition(q=360, e=3, parts={2: 45, 3: 4})


def test_decomposition_satisfies_power_structure():
    rng = random.Random(3)
    for _ in range(500):
        q = rng.randint(1, 10**9)
        e = rng.randint(2, 6)
        dec = decompose_modulus(q, e)
        labelled = dec.labelled_parts()
        product = 1
        for _, value in labelled:
            product *= value
        assert product == q
        for (_, a), (_, b) in itertools.combinations(labelled, 2):
            assert math.gcd(a, b) == 1
        assert is_power_free(dec.parts[2], 3)
        for i in range(3, e):
            assert is_power_full(dec.parts[i], i) and is_power_free(dec.parts[i], i + 1)
        if e == 2:
            assert is_power_full(dec.cube_full_part, 3)
        else:
            assert is_power_full(dec.parts[e], e)


def test_hua_bound_examples():
    assert hua_bound(64, 2) == pytest.approx(8.0)
    assert hua_bound(1, 5) == 1.0
    assert hua_bound(1000, 3) == pytest.approx(100.0)
    assert hua_bound_gcd(1000, 3, 8) == pytest.approx(200.0)


def test_refined_bound_examples():
    expected = 98 ** 0.5 * 27 ** (2 / 3) * 625 ** 0.75
    assert refined_bound(decompose_modulus(1653750, 4)) == pytest.approx(expected, rel=1e-12)
    assert refined_bound(decompose_modulus(1, 3)) == 1.0
    assert refined_bound(decompose_modulus(30, 3)) == pytest.approx(math.sqrt(30))
    assert hua_bound(30, 3) == pytest.approx(30 ** (2 / 3))


def test_refined_bound_gcd_examples():
    dec = decompose_modulus(360, 3)
    assert refined_bound_gcd(dec, 1) == pytest.approx(refined_bound(dec))
    assert refined_bound_gcd(decompose_modulus(8, 3), 8) == pytest.approx(8.0)
    assert refined_bound_gcd(dec, 2) == pytest.approx(360 * 45 ** -0.5 * 4 ** (-1 / 3))
    assert refined_bound_gcd(dec, 2) == pytest.approx(33.81, abs=0.01)
    with pytest.raises(ValidationException):
        refined_bound_gcd(dec, 7)


def test_content_bound_reduces_to_refined_for_primitive():
    dec = decompose_modulus(1653750, 4)
    assert content_exp_sum_bound(dec, 1) == pytest.approx(refined_bound(dec))
    assert content_exp_sum_bound(dec, 4) == pytest.approx(2 * refined_bound(dec))


def test_refined_never_exceeds_hua():
    for q in range(1, 10**4 + 1):
        for e in range(2, 7):
            refined = refined_bound(decompose_modulus(q, e))
            hua = hua_bound(q, e)
            assert refined <= hua * (1 + 1e-12)
            if e == 2:
                # the cube-free and cube-full parts both carry exponent 1/2
                assert refined == pytest.approx(hua, rel=1e-12)
            else:
                assert math.isclose(refined, hua, rel_tol=1e-9) == is_power_full(q, e)


@pytest.mark.parametrize("p,e", [(2, 3), (3, 3), (5, 4), (2, 6)])
def test_prime_power_moduli_meet_hua(p, e):
    q = p ** e
    assert refined_bound(decompose_modulus(q, e)) == pytest.approx(hua_bound(q, e))


def test_bound_report_for_gauss_sum():
    value, report = bound_report(spec(2, 5, (0, 1)))
    assert report.abs_sum == pytest.approx(math.sqrt(5))
    assert report.hua == pytest.approx(math.sqrt(5))
    assert report.refined == pytest.approx(math.sqrt(5))
    assert report.weil == pytest.approx(math.sqrt(5))
    assert report.content == 1
    assert report.reduced_degree == 2


def test_extremal_examples():
    result = extremal_search(5, 2)
    assert result.max_abs == pytest.approx(math.sqrt(5))
    assert result.argmax == (0, 1)
    assert result.candidates == 24
    assert extremal_search(2, 1).max_abs == pytest.approx(0.0, abs=1e-9)


def test_extremal_matches_brute_force_and_skips_imprimitive():
    best = 0.0
    primitive = 0
    for f in itertools.product(range(9), repeat=2):
        if math.gcd(math.gcd(*f), 9) != 1:
            continue
        primitive += 1
        best = max(best, abs(naive_sum(9, f)))
    result = extremal_search(9, 2)
    assert result.candidates == primitive == 72
    assert result.max_abs == pytest.approx(best, abs=1e-9)
    assert result.report.content == 1


def test_extremal_is_schedule_independent():
    assert extremal_search(12, 3, threads=1) == extremal_search(12, 3, threads=4)
    first = extremal_search(101, 3, mode="random", samples=500, seed=7, threads=1)
    again = extremal_search(101, 3, mode="random", samples=500, seed=7, threads=3)
    assert first == again


def test_extremal_merges_ties_across_chunks(monkeypatch):
    whole = extremal_search(12, 3)
    sampled = extremal_search(101, 3, mode="random", samples=500, seed=7)
    monkeypatch.setattr(extremal, "ROWS_PER_CHUNK", 16)
    for threads in (1, 4):
        assert extremal_search(12, 3, threads=threads) == whole
        assert extremal_search(101, 3, mode="random", samples=500, seed=7, threads=threads) == sampled


def test_extremal_budget():
    with pytest.raises(BudgetExceededException):
        extremal_search(100, 4)
    with pytest.raises(ValidationException):
        extremal_search(5, 2, mode="random")
