import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multimoments import (
    DimensionError,
    MultinomialParams,
    SimplexError,
    binomial,
    central_moment,
    factorial_moment,
    mean,
    noncentral_moment,
    oracle_moment,
    pmf,
)
from multimoments.oracle import SupportIterator

GRID = [Fraction(0), Fraction(1, 6), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)]


def P(m, *x):
    return MultinomialParams(m, x)


@st.composite
def params_on_grid(draw, max_m=6, max_d=3):
    d = draw(st.integers(1, max_d))
    xs = []
    budget = Fraction(1)
    for _ in range(d):
        v = draw(st.sampled_from([g for g in GRID if g <= budget]))
        xs.append(v)
        budget -= v
    return MultinomialParams(draw(st.integers(0, max_m)), xs)


def exponents(d, max_total=5):
    return st.lists(st.integers(0, 3), min_size=d, max_size=d).filter(lambda p: sum(p) <= max_total)


def test_params_validation():
    with pytest.raises(SimplexError, match="4/3"):
        P(3, "2/3", "2/3")
    with pytest.raises(SimplexError):
        P(3, "-1/3")
    with pytest.raises(TypeError):
        P(3, 0.25)
    with pytest.raises(ValueError):
        P(-1, "1/2")
    with pytest.raises(ValueError):
        MultinomialParams(3, [])
    assert P(4, 1, 0).rest == 0


def test_pmf_examples():
    assert pmf(P(2, "1/2"), (1,)) == Fraction(1, 2)
    assert pmf(P(3, "1/3", "1/3"), (4, 0)) == 0
    params = P(3, "1/4", "1/4")
    assert sum(pmf(params, k) for k in SupportIterator(3, 2)) == 1


def test_dimension_mismatch_is_an_error():
    for fn in (pmf, factorial_moment, noncentral_moment, central_moment):
        with pytest.raises(DimensionError):
            fn(P(3, "1/4"), (1, 1))


def test_factorial_moment_examples():
    assert factorial_moment(P(4, "1/4", "1/4"), (1, 1)) == Fraction(3, 4)
    assert factorial_moment(P(4, "1/4", "1/4"), (0, 0)) == 1
    assert factorial_moment(P(2, "1/4", "1/4"), (2, 1)) == 0


def test_noncentral_examples():
    assert noncentral_moment(P(3, "1/2"), (2,)) == 3
    assert noncentral_moment(P(3, "1/2", "1/4"), (0, 0)) == 1
    assert noncentral_moment(P(5, *["1/8"] * 4), (1, 1, 1, 1)) == Fraction(15, 512)


def test_central_examples():
    assert central_moment(P(10, "1/4"), (2,)) == Fraction(15, 8)
    assert central_moment(P(7, "2/7"), (1,)) == 0
    assert central_moment(P(5, "1/3", "1/3"), (1, 1)) == Fraction(-5, 9)


def test_mean_examples():
    assert mean(P(6, "1/2", "1/3")) == (3, 2)
    assert mean(P(0, "1/2", "1/3")) == (0, 0)
    assert mean(P(7, "2/7")) == (2,)


def test_zero_trials():
    params = P(0, "1/3", "1/2")
    assert noncentral_moment(params, (0, 0)) == 1
    assert central_moment(params, (0, 0)) == 1
    assert noncentral_moment(params, (2, 1)) == 0
    assert central_moment(params, (1, 2)) == 0


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_matches_enumeration(data):
    params = data.draw(params_on_grid())
    p = tuple(data.draw(exponents(params.d, 6)))
    support = list(SupportIterator(params.m, params.d))
    mx = mean(params)

    def expect(g):
        return sum(g(k) * pmf(params, k) for k in support)

    def prod(vals):
        out = 1
        for v in vals:
            out *= v
        return out

    assert noncentral_moment(params, p) == expect(lambda k: prod(ki**pi for ki, pi in zip(k, p)))
    assert central_moment(params, p) == expect(
        lambda k: prod((ki - c) ** pi for ki, c, pi in zip(k, mx, p))
    )


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_central_is_binomial_expansion_of_noncentral(data):
    params = data.draw(params_on_grid(max_m=9))
    p = tuple(data.draw(exponents(params.d, 6)))
    total = Fraction(0)
    for ls in itertools.product(*(range(pi + 1) for pi in p)):
        w = Fraction(1)
        for pi, li, xi in zip(p, ls, params.x):
            w *= binomial(pi, li) * (-params.m * xi) ** (pi - li)
        total += w * noncentral_moment(params, ls)
    assert central_moment(params, p) == total


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_degenerate_coordinate(data):
    params = data.draw(params_on_grid(max_m=8))
    i = data.draw(st.integers(0, params.d - 1))
    x = list(params.x)
    x[i] = Fraction(0)
    p = [0] * params.d
    p[i] = data.draw(st.integers(1, 4))
    assert noncentral_moment(MultinomialParams(params.m, x), p) == 0


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_marginalization(data):
    params = data.draw(params_on_grid(max_m=8, max_d=2))
    p = tuple(data.draw(exponents(params.d, 6)))
    extra = data.draw(st.sampled_from([g for g in GRID if g <= params.rest]))
    bigger = MultinomialParams(params.m, params.x + (extra,))
    assert noncentral_moment(bigger, p + (0,)) == noncentral_moment(params, p)
    assert central_moment(bigger, p + (0,)) == central_moment(params, p)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_permutation_equivariance(data):
    params = data.draw(params_on_grid(max_m=8))
    p = tuple(data.draw(exponents(params.d, 6)))
    perm = data.draw(st.permutations(range(params.d)))
    permuted = MultinomialParams(params.m, [params.x[i] for i in perm])
    q = tuple(p[i] for i in perm)
    assert noncentral_moment(permuted, q) == noncentral_moment(params, p)
    assert central_moment(permuted, q) == central_moment(params, p)


@given(st.integers(1, 40), st.fractions(0, 1))
def test_variance_is_binomial_variance(m, x):
    v = central_moment(MultinomialParams(m, [x]), (2,))
    assert v == m * x * (1 - x)
    assert v >= 0


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_factorial_moment_against_support(data):
    from multimoments.combinatorics import falling_factorial

    params = data.draw(params_on_grid())
    k = tuple(data.draw(exponents(params.d, 7)))
    expected = Fraction(0)
    for point in SupportIterator(params.m, params.d):
        w = 1
        for ki, pi in zip(point, k):
            w *= falling_factorial(ki, pi)
        expected += w * pmf(params, point)
    assert factorial_moment(params, k) == expected


def test_large_order_stays_exact():
    params = P(40, "1/7", "2/9")
    assert central_moment(params, (4, 4)) == oracle_moment(params, (4, 4), "central")
