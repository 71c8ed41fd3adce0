import random
from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from glasnerkit.core.config import config
from glasnerkit.core.exceptions import BudgetExceededException, ValidationException
from glasnerkit.repositories.GlasnerModules.matrices import MatrixRepository
from glasnerkit.schemas.GlasnerModules.glasner import GlasnerSearchResult, HqHistogram, TraceEntry
from glasnerkit.schemas.GlasnerModules.polymatrix import PolyMatrix
from glasnerkit.schemas.TorusModules.torus import PointSet, TorusPoint, Verdict
from glasnerkit.services.ArithModules.factorization import gcd_vec
from glasnerkit.services.GlasnerModules.functional import MAX_OVER_PAIRS, bad_set_functional, frequency_box
from glasnerkit.services.GlasnerModules.pairs import bvectors_by_denominator, hq_histogram, pair_bvector
from glasnerkit.services.GlasnerModules.polymatrix import (
    canonical_vectors,
    check_nondegenerate,
    content_of_form,
    eval_matrix,
    form_polynomial,
)
from glasnerkit.services.GlasnerModules.search import glasner_search
from glasnerkit.services.TorusModules.torus import translate

LINEAR = PolyMatrix.from_coeffs([[[0, 1]]])
MIXED = PolyMatrix.from_coeffs([[[0, 1], [0, 0, 2]], [[0], [0, 3]]])
MIXED_1D = PolyMatrix.from_coeffs([[[0, 1, 3]]])
# u^t A_1 v and u^t A_2 v never vanish together for nonzero u, v
ROTATION = PolyMatrix.from_coeffs([[[0, 1], [0, 0, -1]], [[0, 0, 1], [0, 1]]])


def rationals(max_den=24):
    return st.integers(1, max_den).flatmap(lambda den: st.integers(0, den - 1).map(lambda num: F(num, den)))


def point_sets(dim, max_k=8, max_den=24):
    rows = st.lists(st.tuples(*[rationals(max_den)] * dim), min_size=1, max_size=max_k, unique=True)
    return rows.map(lambda r: PointSet.from_coords(dim, r))


def line(*xs):
    return PointSet.from_coords(1, [(x,) for x in xs])


def test_eval_matrix():
    assert eval_matrix(MIXED, 2) == [[2, 8], [0, 6]]
    assert eval_matrix(MIXED, 0) == [[0, 0], [0, 0]]
    assert MIXED.degree_e == 2 and MIXED.height_H == 3


def test_matrix_schema_requires_zero_constant_terms():
    with pytest.raises(ValueError):
        PolyMatrix.from_coeffs([[[1, 1]]])
    with pytest.raises(ValueError):
        PolyMatrix(dim=2, entries=LINEAR.entries)


def test_form_polynomial_and_content():
    assert form_polynomial((1, 1), MIXED, (1, 1)).coeffs == (0, 4, 2)
    assert form_polynomial((1, 0), MIXED, (0, 1)).coeffs == (0, 0, 2)
    assert content_of_form((1,), LINEAR, (1,), 12) == 1
    assert content_of_form((1,), PolyMatrix.from_coeffs([[[0, 6]]]), (1,), 12) == 6
    assert content_of_form((1,), PolyMatrix.from_coeffs([[[0, 5, 10]]]), (1,), 25) == 5
    with pytest.raises(ValidationException):
        form_polynomial((1,), MIXED, (1, 1))


entries = st.lists(st.integers(-5, 5), min_size=2, max_size=2).map(lambda c: [0] + c)
small_matrices = st.lists(st.lists(entries, min_size=2, max_size=2), min_size=2, max_size=2)


@given(
    small_matrices,
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    st.integers(2, 50),
)
def test_content_is_bounded_by_coefficient_size(rows, m, b, q):
    a = PolyMatrix.from_coeffs(rows)
    poly = form_polynomial(m, a, b)
    d, height, radius, b_max = 2, max(1, a.height_H), max(1, *map(abs, m)), max(map(abs, b))
    largest = max(abs(c) for c in poly.coeffs)
    assert largest <= d ** 2 * height * radius * b_max
    content = content_of_form(m, a, b, q)
    assert q % content == 0
    if any(c % q for c in poly.coeffs[1:]):
        assert content <= largest
        # (HM)^d envelope, up to the constant d^2 max|b|
        assert content <= d ** 2 * max(1, b_max) * (height * radius) ** d


def test_canonical_vectors_order():
    vecs = canonical_vectors(2, 1).tolist()
    assert vecs == [[0, 1], [1, -1], [1, 0], [1, 1]]
    assert len(canonical_vectors(2, 2)) == 12
    assert len(canonical_vectors(3, 1)) == 13


def test_nondegeneracy_witnesses():
    report = check_nondegenerate(PolyMatrix.from_coeffs([[[0, 1], [0]], [[0], [0]]]), box_B=2)
    assert report.degenerate
    assert (report.witness_u, report.witness_v) == ((0, 1), (0, 1))
    assert report.pairs_checked == 1

    everywhere = PolyMatrix.from_coeffs([[[0, 1], [0, 1]], [[0, 1], [0, 1]]])
    report = check_nondegenerate(everywhere, box_B=2)
    assert (report.witness_u, report.witness_v) == ((0, 1), (1, -1))
    assert report.pairs_checked == 2
    assert form_polynomial(report.witness_u, everywhere, report.witness_v).is_zero()


def test_nondegenerate_matrix_scans_the_whole_box():
    report = check_nondegenerate(ROTATION, box_B=2)
    assert not report.degenerate
    assert report.pairs_checked == 12 * 12
    assert report.constant_terms_zero
    report = check_nondegenerate(LINEAR, box_B=3)
    assert not report.degenerate and report.pairs_checked == 9


def test_zero_matrix_is_degenerate_at_once():
    report = check_nondegenerate(PolyMatrix.from_coeffs([[[0]]]), box_B=2)
    assert (report.witness_u, report.witness_v) == ((1,), (1,))


def test_random_witnesses_are_valid():
    rng = random.Random(5)
    for _ in range(40):
        rows = [[[0] + [rng.choice([0, 0, 1, -1, 2]) for _ in range(2)] for _ in range(2)] for _ in range(2)]
        a = PolyMatrix.from_coeffs(rows)
        report = check_nondegenerate(a, box_B=2)
        if report.degenerate:
            assert form_polynomial(report.witness_u, a, report.witness_v).is_zero()


def test_nondegeneracy_budget_and_box():
    big = PolyMatrix.from_coeffs([[[0, 1] if r == s else [0] for s in range(4)] for r in range(4)])
    with pytest.raises(BudgetExceededException):
        check_nondegenerate(big, box_B=8)
    with pytest.raises(ValidationException):
        check_nondegenerate(LINEAR, box_B=0)


def test_pair_bvector_examples():
    x, y = TorusPoint(coords=(F(1, 3),)), TorusPoint(coords=(F(0),))
    assert pair_bvector(x, y) == (3, (1,))
    assert pair_bvector(y, x) == (3, (2,))
    assert pair_bvector(x, x) == (1, (0,))
    assert pair_bvector(TorusPoint(coords=(F(1, 2), F(1, 4))), TorusPoint(coords=(0, 0))) == (4, (2, 1))


@given(st.tuples(rationals(), rationals()), st.tuples(rationals(), rationals()))
def test_bvector_is_primitive(a, b):
    q, vec = pair_bvector(TorusPoint(coords=a), TorusPoint(coords=b))
    assert gcd_vec(vec, q) == 1
    assert all(0 <= c < q for c in vec)


def test_hq_histogram_examples():
    assert hq_histogram(line(0, F(1, 3))).entries == {1: 2, 3: 2}
    assert hq_histogram(line(F(2, 5))).entries == {1: 1}
    assert hq_histogram(PointSet.from_coords(2, [(0, 0), (F(1, 2), F(1, 4))])).entries == {1: 2, 4: 2}
    with pytest.raises(ValidationException):
        hq_histogram(PointSet(dim=1, points=[]))


def test_histogram_schema_checks_identities():
    with pytest.raises(ValueError):
        HqHistogram(entries={1: 2, 3: 1}, k=2, dim=1)
    with pytest.raises(ValueError):
        HqHistogram(entries={1: 4}, k=1, dim=1)


@pytest.mark.parametrize("dim", [1, 2, 3])
@given(data=st.data())
def test_hq_histogram_identities(dim, data):
    s = data.draw(point_sets(dim, max_k=12, max_den=60))
    hist = hq_histogram(s)
    assert sum(hist.entries.values()) == s.k ** 2
    assert hist.entries.get(1, 0) >= s.k
    for q, h in hist.entries.items():
        assert h <= s.k * q ** s.dim
        assert s.lcm_den % q == 0
    counter = Counter(pair_bvector(x, y)[0] for x in s.points for y in s.points)
    assert hist.entries == dict(counter)


def test_bvectors_by_denominator():
    grouped = bvectors_by_denominator(line(0, F(1, 3), F(2, 3)))
    assert grouped == {1: [(0,)], 3: [(2,), (1,)]}


def test_frequency_box():
    assert frequency_box(1, 2).tolist() == [[-2], [-1], [1], [2]]
    assert frequency_box(2, 1).shape == (8, 2)
    assert frequency_box(3, 0).shape == (0, 3)


def test_functional_singleton():
    report = bad_set_functional(line(F(1, 5)), LINEAR, 0.25)
    assert report.M == 4
    assert report.frequencies == 8
    assert report.lhs_value == 1
    assert report.rhs_value == pytest.approx(48.0)
    assert report.trailing_part == pytest.approx(16.0)


def test_functional_two_points():
    s = line(0, F(1, 3))
    report = bad_set_functional(s, LINEAR, 0.25)
    assert report.rhs_value == pytest.approx(112.0)
    terms = {t.q: t for t in report.terms}
    assert terms[1].contribution == pytest.approx(16.0)
    assert terms[3].contribution == pytest.approx(4.0)
    assert terms[3].b_q == (2,)
    assert terms[3].max_abs_sum == pytest.approx(3.0)
    other = bad_set_functional(s, LINEAR, 0.25, strategy=MAX_OVER_PAIRS)
    assert other.rhs_value == pytest.approx(112.0)
    assert other.terms[1].b_q is None


def test_functional_split_and_degenerate_radius():
    report = bad_set_functional(line(0, F(1, 3)), LINEAR, 0.25, split_R=1)
    assert report.s1 == pytest.approx(16.0)
    assert report.s2 == pytest.approx(4.0)
    empty = bad_set_functional(line(0, F(1, 3)), LINEAR, 2.0)
    assert empty.M == 0
    assert empty.rhs_value == 0.0


def test_functional_reduces_huge_heights_mod_q():
    s = line(0, F(1, 3))
    reference = bad_set_functional(s, LINEAR, 0.25, split_R=1)
    # both heights are 1 mod 3 and overflow int64
    for c in (3 * 2 ** 61 + 1, 3 * 2 ** 70 + 1):
        report = bad_set_functional(s, PolyMatrix.from_coeffs([[[0, c]]]), 0.25, split_R=1)
        assert report.rhs_value == pytest.approx(112.0)
        assert report.s2 == pytest.approx(reference.s2)
        assert [t.max_abs_sum for t in report.terms] == pytest.approx([t.max_abs_sum for t in reference.terms])


def test_functional_grows_as_eps_shrinks():
    for s in (line(F(1, 5)), line(0, F(1, 3)), line(0, F(1, 4), F(1, 2))):
        values = [bad_set_functional(s, MIXED_1D, eps).rhs_value for eps in (1.0, 0.5, 0.25, 0.1)]
        assert values == sorted(values)


def test_functional_argument_checks(monkeypatch):
    s = line(0, F(1, 3))
    with pytest.raises(ValidationException, match="unknown strategy"):
        bad_set_functional(s, LINEAR, 0.25, strategy="best")
    with pytest.raises(ValidationException):
        bad_set_functional(s, MIXED, 0.25)
    with pytest.raises(ValidationException):
        bad_set_functional(s, LINEAR, 0)
    with pytest.raises(ValidationException):
        bad_set_functional(s, LINEAR, 0.25, split_R=0)
    monkeypatch.setattr(config, "ELEMENTARY_BUDGET", 10)
    with pytest.raises(BudgetExceededException):
        bad_set_functional(s, LINEAR, 0.25)


def test_search_finds_minimal_dilation():
    result = glasner_search(LINEAR, line(F(1, 7), F(2, 7), F(3, 7)), 0.22, 7)
    assert result.minimal_n == 2
    assert result.first_dense_n == 2
    assert [(t.n, t.verdict, t.value) for t in result.trace] == [
        (1, Verdict.NOT_DENSE, "5/14"),
        (2, Verdict.DENSE, "3/14"),
    ]


def test_search_examples():
    assert glasner_search(LINEAR, line(0), 0.3, 5).minimal_n is None
    eighths = line(*[F(j, 8) for j in range(8)])
    result = glasner_search(LINEAR, eighths, 1 / 16, 3)
    assert result.minimal_n == 1
    assert len(result.trace) == 1


def test_search_reports_unresolved_dilations():
    s = PointSet.from_coords(2, [(0, 0), (F(1, 2), F(1, 2))])
    diagonal = PolyMatrix.from_coeffs([[[0, 1], [0]], [[0], [0, 1]]])
    result = glasner_search(diagonal, s, 0.5, 3, max_refinements=1)
    assert result.minimal_n is None and result.first_dense_n is None
    assert result.unresolved == [1, 3]
    assert [t.verdict for t in result.trace] == [Verdict.UNKNOWN, Verdict.NOT_DENSE, Verdict.UNKNOWN]


def test_search_is_schedule_independent():
    s = line(F(1, 7), F(2, 7), F(3, 7))
    assert glasner_search(MIXED_1D, s, 0.2, 12, threads=1) == glasner_search(MIXED_1D, s, 0.2, 12, threads=5)


def test_search_is_translation_invariant():
    rng = random.Random(9)
    for _ in range(50):
        den = rng.randint(2, 30)
        s = line(*sorted({F(rng.randrange(den), den) for _ in range(rng.randint(1, 5))}))
        t = (F(rng.randrange(den * 3), den * 3),)
        for a in (LINEAR, MIXED_1D):
            assert glasner_search(a, s, 0.2, 10).minimal_n == glasner_search(a, translate(s, t), 0.2, 10).minimal_n


def test_search_argument_checks():
    with pytest.raises(ValidationException):
        glasner_search(MIXED, line(0), 0.2, 3)
    with pytest.raises(ValidationException):
        glasner_search(LINEAR, line(0), 0.2, 0)


def test_search_result_checks_minimality():
    entries = [
        TraceEntry(n=1, verdict=Verdict.UNKNOWN, value="0.4", support_size=2),
        TraceEntry(n=2, verdict=Verdict.DENSE, value="0.1", support_size=2),
    ]
    with pytest.raises(ValueError):
        GlasnerSearchResult(minimal_n=2, first_dense_n=2, trace=entries, eps=0.2, n_max=2)
    ok = GlasnerSearchResult(minimal_n=None, first_dense_n=2, unresolved=[1], trace=entries, eps=0.2, n_max=2)
    assert ok.first_dense_n == 2


def test_matrix_repository(tmp_path, write_matrix):
    repo = MatrixRepository()
    a = repo.load(write_matrix([[[0, 1], [0, 0, 2]], [[0], [0, 3]]]))
    assert a == MIXED
    assert repo.load(repo.save(a, tmp_path / "copy.json")) == a

    with pytest.raises(ValidationException, match=r"entries\[0\]\[1\]\[0\]: constant term 4 must be 0"):
        repo.load(write_matrix([[[0, 1], [4, 1]], [[0], [0, 1]]], name="const.json"))
    with pytest.raises(ValidationException, match=r"entries\[0\]\[0\]\[1\]: coefficient 1.5 is not an integer"):
        repo.load(write_matrix([[[0, 1.5]]], name="float.json"))
    with pytest.raises(ValidationException, match=r"entries\[1\]: expected 2 polynomials"):
        repo.load(write_matrix([[[0, 1], [0]], [[0]]], name="short.json"))
    with pytest.raises(ValidationException, match="not found"):
        repo.load(tmp_path / "missing.json")
