import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from heckedim.laurent import (LaurentMatrix, LaurentPoly, ZeroEvaluationError, lp_bar, lp_eval,
                              random_laurent_matrix, rank_by_evaluation, rank_fraction_field,
                              rank_with_redraws, rational_rank)
from strategies import coeffs, laurent_polys

z = LaurentPoly.z()
one = LaurentPoly.const(1)


def test_arithmetic():
    assert (one - z) * (one + z) == one - z ** 2
    assert z ** -2 == LaurentPoly.monomial(1, -2)
    assert (z * 2) ** -1 == LaurentPoly.monomial(Fraction(1, 2), -1)
    assert str(one - z) == '1 - z'


def test_negative_power_of_non_unit():
    with pytest.raises(ValueError):
        (one + z) ** -1


def test_eval_and_bar():
    f = LaurentPoly({-1: 1, 0: 2, 2: 3})
    assert lp_eval(f, 2) == Fraction(1, 2) + 2 + 12
    assert lp_bar(f) == LaurentPoly({1: 1, 0: 2, -2: 3})
    with pytest.raises(ZeroEvaluationError):
        lp_eval(f, 0)


@given(laurent_polys, laurent_polys)
def test_bar_is_ring_involution(f, g):
    assert (f * g).bar() == f.bar() * g.bar()
    assert (f + g).bar() == f.bar() + g.bar()
    assert f.bar().bar() == f


@given(laurent_polys, laurent_polys)
def test_eval_is_homomorphism(f, g):
    for point in (Fraction(1), Fraction(-2), Fraction(1, 3)):
        assert (f * g).eval(point) == f.eval(point) * g.eval(point)


@pytest.mark.parametrize('rows, expected', [
    ([[1, z], [z ** -1, one]], 1),
    ([[one - z, 0], [0, one - z ** -1]], 2),
    ([[0, 0], [0, 0]], 0),
    ([[0, one], [0, z]], 1),
    ([[one, z, z ** 2], [z, z ** 2, z ** 3], [one + z, z + z ** 2, z ** 2 + z ** 3]], 1),
    ([[one, z], [z, one]], 2),
])
def test_rank_fraction_field(rows, expected):
    assert rank_fraction_field(LaurentMatrix.from_rows(rows)) == expected


def test_rank_of_empty_matrix():
    assert rank_fraction_field(LaurentMatrix.from_rows([], 3)) == 0


def test_evaluation_oracle_drops_rank_at_roots():
    # det = 1 - z^2 vanishes at +-1
    M = LaurentMatrix.from_rows([[one, z], [z, one]])
    assert rank_by_evaluation(M, [1, -1]) == 1
    assert rank_by_evaluation(M, [1, 2]) == 2
    with pytest.raises(ValueError):
        rank_by_evaluation(M, [])


def test_rank_with_redraws_recovers_from_bad_points():
    M = LaurentMatrix.from_rows([[one, z], [z, one]])
    rng = np.random.default_rng(0)
    exact, best, used = rank_with_redraws(M, rng, ['1', '-1', '2'], points_per_draw=1, draws=3)
    assert exact == best == 2
    assert 1 <= used <= 3


@settings(deadline=None, max_examples=30)
@given(laurent_polys, laurent_polys, laurent_polys, laurent_polys)
def test_evaluation_rank_never_exceeds_exact(a, b, c, d):
    M = LaurentMatrix.from_rows([[a, b], [c, d], [a + c, b + d]])
    exact = rank_fraction_field(M)
    assert exact <= 2
    assert rank_by_evaluation(M, [1, -1, 2, Fraction(1, 3)]) <= exact


def test_random_matrices_agree_with_oracle():
    rng = np.random.default_rng(7)
    pool = ['1', '-1', '2', '-2', '3', '-3', '5', '-5', '7', '-7', '1/2', '-1/2', '1/3', '-1/3']
    for _ in range(10):
        M = random_laurent_matrix(rng, 3, 3, 1)
        exact, best, _ = rank_with_redraws(M, rng, pool)
        assert best <= exact
        # cleared minors have degree <= 8, so some of the 14 pool points is not a root
        assert rank_by_evaluation(M, pool) == exact


def test_rational_rank():
    assert rational_rank([[1, 2], [2, 4]]) == 1
    assert rational_rank(np.array([[Fraction(1, 2), 0], [0, 3]], dtype=object)) == 2
    assert rational_rank(np.empty((0, 2), dtype=object)) == 0


def test_ragged_matrix_rejected():
    with pytest.raises(ValueError):
        LaurentMatrix.from_rows([[one, z], [one]])


def test_transpose_and_evaluate():
    M = LaurentMatrix.from_rows([[one, z], [z ** -1, 0]])
    assert M.transpose()[0, 1] == z ** -1
    assert M.bar()[0, 1] == z ** -1
    assert M.evaluate(2).tolist() == [[1, 2], [Fraction(1, 2), 0]]


def test_rank_with_redraws_refuses_evaluation_rank_above_exact(monkeypatch):
    monkeypatch.setattr('heckedim.laurent.rank_fraction_field', lambda M: 0)
    M = LaurentMatrix.from_rows([[one, z]])
    with pytest.raises(RuntimeError, match='exceeds'):
        rank_with_redraws(M, np.random.default_rng(0), ['1', '2', '3'], points_per_draw=1, draws=3)


@st.composite
def laurent_rows(draw, min_rows=1, max_rows=3, max_cols=3):
    m = draw(st.integers(min_rows, max_rows))
    n = draw(st.integers(1, max_cols))
    return [[draw(laurent_polys) for _ in range(n)] for _ in range(m)]


INVARIANCE_POINTS = [1, -1, 2, Fraction(1, 3)]


def _ranks(rows, n_cols):
    M = LaurentMatrix.from_rows(rows, n_cols)
    return rank_fraction_field(M), rank_by_evaluation(M, INVARIANCE_POINTS)



@settings(deadline=None, max_examples=40)
@given(laurent_rows())
def test_rank_invariant_under_transpose(rows):
    M = LaurentMatrix.from_rows(rows)
    assert rank_fraction_field(M.transpose()) == rank_fraction_field(M)
    assert rank_by_evaluation(M.transpose(), INVARIANCE_POINTS) == rank_by_evaluation(M, INVARIANCE_POINTS)


@settings(deadline=None, max_examples=40)
@given(laurent_rows(), st.data())
def test_rank_invariant_under_row_and_column_permutation(rows, data):
    m, n = len(rows), len(rows[0])
    row_perm = data.draw(st.permutations(range(m)))
    col_perm = data.draw(st.permutations(range(n)))
    permuted = [[rows[i][j] for j in col_perm] for i in row_perm]
    assert _ranks(permuted, n) == _ranks(rows, n)


@settings(deadline=None, max_examples=40)
@given(laurent_rows(), st.data(), coeffs.filter(bool), st.integers(-3, 3))
def test_rank_invariant_under_monomial_row_scaling(rows, data, c, k):
    i = data.draw(st.integers(0, len(rows) - 1))
    unit = LaurentPoly.monomial(c, k)
    scaled = [list(r) for r in rows]
    scaled[i] = [unit * x for x in rows[i]]
    # c z^k is a unit in Q[z, z^-1] and nonzero at every evaluation point
    assert _ranks(scaled, len(rows[0])) == _ranks(rows, len(rows[0]))


@settings(deadline=None, max_examples=40)
@given(laurent_rows(min_rows=2), st.data(), laurent_polys)
def test_rank_invariant_under_adding_a_row_multiple(rows, data, f):
    i, j = data.draw(st.lists(st.integers(0, len(rows) - 1), min_size=2, max_size=2, unique=True))
    sheared = [list(r) for r in rows]
    sheared[j] = [y + f * x for x, y in zip(rows[i], rows[j])]
    assert _ranks(sheared, len(rows[0])) == _ranks(rows, len(rows[0]))


def _sympy_rank(M: LaurentMatrix) -> int:
    """Largest r with a nonzero r x r minor, minors expanded by sympy."""
    zs = sympy.Symbol('z')
    m, n = M.shape
    A = sympy.Matrix(m, n, lambda i, j: sum(sympy.Rational(c.numerator, c.denominator) * zs ** k
                                            for k, c in M[i, j].coeffs.items()))
    for r in range(min(m, n), 0, -1):
        for rows in itertools.combinations(range(m), r):
            for cols in itertools.combinations(range(n), r):
                if sympy.expand(A.extract(list(rows), list(cols)).det(method='berkowitz')) != 0:
                    return r
    return 0


def test_redraw_protocol_matches_sympy_rank():
    rng = np.random.default_rng(11)
    pool = ['1', '-1', '2', '-2', '3', '-3', '5', '-5', '7', '-7', '1/2', '-1/2', '1/3', '-1/3']
    for _ in range(25):
        m, n = (int(x) for x in rng.integers(1, 5, size=2))
        M = random_laurent_matrix(rng, m, n, 1)
        exact, best, used = rank_with_redraws(M, rng, pool, points_per_draw=5, draws=3)
        assert exact == _sympy_rank(M)
        # nonzero cleared minors have degree <= 10, fewer roots than the 14 pool points
        assert best == exact
        assert 1 <= used <= 3
