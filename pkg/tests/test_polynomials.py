import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import sample_points
from meixner.algebra import Polynomial
from meixner.parameters import family_geometric, family_triangular, from_weights
from meixner.polynomials import (
    BadBeta,
    MeixnerSpec,
    classical_meixner,
    degree_matrices,
    duality_check,
    evaluate,
    gauss_2f1,
    generating_coefficients,
    hypergeometric_polynomial,
    tabulate,
    tabulate_dict,
    values_from_generating,
    verify_classical,
    verify_duality,
    verify_representations,
)


# --- independent oracle ----------------------------------------------------

def rising(a, k):
    out = F(1)
    for t in range(k):
        out *= a + t
    return out


def matrices_recursive(n):
    """All d x d nonnegative matrices with column j summing to <= n[j]."""
    d = len(n)
    cells = [(i, j) for j in range(d) for i in range(d)]

    def go(pos, budget, current):
        if pos == len(cells):
            yield tuple(tuple(current[(i, j)] for j in range(d)) for i in range(d))
            return
        i, j = cells[pos]
        for a in range(budget[j] + 1):
            current[(i, j)] = a
            budget[j] -= a
            yield from go(pos + 1, budget, current)
            budget[j] += a

    yield from go(0, list(n), {})


def oracle_value(point, beta, n, x):
    d = point.d
    total = F(0)
    for A in matrices_recursive(n):
        term = F(1)
        for j in range(d):
            term *= rising(-n[j], sum(A[i][j] for i in range(d)))
        for i in range(d):
            term *= rising(-x[i], sum(A[i]))
            for j in range(d):
                term *= (1 - point.U[i + 1][j + 1]) ** A[i][j] / math.factorial(A[i][j])
        total += term / rising(beta, sum(map(sum, A)))
    return total


def oracle_2f1(n, x, beta, z):
    return sum(rising(-n, k) * rising(-x, k) / (rising(beta, k) * math.factorial(k)) * z ** k
               for k in range(n + 1))


# --- tests ------------------------------------------------------------------

@pytest.mark.parametrize("n", [(2, 2), (1, 0, 2), (3,)])
def test_degree_matrix_enumeration(n):
    listed = list(degree_matrices(n))
    assert len(listed) == len(set(listed))
    assert set(listed) == set(matrices_recursive(n))


def test_degree_matrix_count_closed_form():
    # each column of a d x d matrix with sum <= n_j: C(n_j + d, d) choices
    n = (2, 3)
    assert len(list(degree_matrices(n))) == math.comb(4, 2) * math.comb(5, 2)


def test_d1_low_degree_polynomials(spec_d1):
    x = Polynomial.variable(1, 0)
    assert hypergeometric_polynomial(spec_d1, (0,)) == 1
    assert hypergeometric_polynomial(spec_d1, (1,)) == 1 - 2 * x
    assert hypergeometric_polynomial(spec_d1, (2,)) == 2 * x ** 2 - 6 * x + 1


def test_generating_coefficient_example(spec_d1):
    assert generating_coefficients(spec_d1, (1,), 1)[(1,)] == -1
    assert values_from_generating(spec_d1, (1,), 1) == {(0,): 1, (1,): -1}


@pytest.mark.parametrize("beta", [1, F(3, 2), F(-1, 3)])
@pytest.mark.parametrize("point", [family_triangular([F(1, 3), F(1, 4)]),
                                   family_geometric(F(1, 2), 2),
                                   from_weights([F(1, 5), F(1, 7)], [2])])
def test_hypergeometric_matches_oracle_d2(point, beta):
    spec = MeixnerSpec(point, beta)
    for n in [(0, 0), (1, 0), (0, 1), (2, 1), (1, 2)]:
        P = hypergeometric_polynomial(spec, n)
        for x in [(0, 0), (1, 2), (3, 1), (F(1, 2), F(-2, 3))]:
            want = oracle_value(point, spec.beta, n, x)
            assert evaluate(spec, n, x) == want
            assert P(x) == want


def test_hypergeometric_matches_oracle_d3():
    point = family_geometric(F(2, 3), 3)
    spec = MeixnerSpec(point, 2)
    for n in [(1, 1, 0), (0, 1, 1), (2, 0, 1)]:
        for x in [(1, 0, 2), (2, 2, 1)]:
            assert evaluate(spec, n, x) == oracle_value(point, spec.beta, n, x)


def test_degree_of_polynomial_is_total_degree():
    spec = MeixnerSpec(family_triangular([F(1, 3), F(1, 4)]), F(3, 2))
    for n in [(1, 0), (2, 1), (0, 3)]:
        assert hypergeometric_polynomial(spec, n).degree() == sum(n)


@pytest.mark.parametrize("beta", [0, -1, -4, F(-4, 1)])
def test_nonpositive_integer_beta_rejected(gram_d1, beta):
    with pytest.raises(BadBeta):
        MeixnerSpec(gram_d1, beta)


def test_tabulation_matches_direct_evaluation():
    spec = MeixnerSpec(from_weights([F(1, 5), F(1, 7)], [2]), F(3, 2))
    table = tabulate_dict(spec, 3, 3)
    for (n, x), value in table.items():
        assert value == evaluate(spec, n, x)


def test_tabulation_shape_d3():
    spec = MeixnerSpec(family_triangular([F(1, 3), F(1, 4), F(1, 6)]), 2)
    T = tabulate(spec, 2, 1)
    assert T.shape == (3, 3, 3, 2, 2, 2)
    assert T[(1, 2, 0, 1, 0, 1)] == evaluate(spec, (1, 2, 0), (1, 0, 1))


@pytest.mark.parametrize("z", [F(-2), F(1, 3), F(5, 4)])
def test_gauss_series_against_oracle(z):
    for n in range(5):
        for x in range(5):
            assert gauss_2f1(-n, -x, F(3, 2), z) == oracle_2f1(n, x, F(3, 2), z)
    with pytest.raises(ValueError):
        gauss_2f1(F(1, 2), 1, 1, z)


def test_classical_reduction_d1():
    for c1 in [F(1, 3), F(1, 5), F(-1, 2)]:
        point = from_weights([c1])
        for beta in [1, F(3, 2), 2]:
            spec = MeixnerSpec(point, beta)
            for n in range(5):
                for x in range(5):
                    want = oracle_2f1(n, x, spec.beta, 1 - point.U[1][1])
                    assert classical_meixner(spec, n, x) == want
                    assert evaluate(spec, (n,), (x,)) == want
            assert verify_classical(spec, 4, 4).passed


@pytest.mark.parametrize("d", [1, 2])
def test_verification_reports_pass(d):
    for point in sample_points(d)[:3]:
        spec = MeixnerSpec(point, F(3, 2))
        assert verify_representations(spec, 3, 2).passed
        assert verify_duality(spec, 3).passed


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 6), st.sampled_from([1, F(3, 2), 2, F(-1, 2)]),
       st.lists(st.integers(0, 4), min_size=2, max_size=2),
       st.lists(st.integers(0, 4), min_size=2, max_size=2))
def test_duality_property(idx, beta, n, x):
    point = sample_points(2)[idx]
    assert duality_check(MeixnerSpec(point, beta), n, x)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 6), st.lists(st.integers(0, 3), min_size=2, max_size=2))
def test_value_at_origin_is_one(idx, n):
    spec = MeixnerSpec(sample_points(2)[idx], F(5, 3))
    assert evaluate(spec, n, (0, 0)) == 1
