from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from scatterkit.exact import (B, C, G, ONE, Partition, PolyBCG, TruncSeries, binom_poly,
                              compositions, compositions_positive, falling_binomial,
                              fraction_str, multinomial_mu, parse_fraction, partitions_of,
                              series_exp, series_log, series_pow_binomial, series_pow_frac)

from oracles import poly_mul_naive

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
monos = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
polys = st.dictionaries(monos, small, max_size=5).map(PolyBCG)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == PolyBCG()
    assert p * ONE == p


@given(polys, polys)
def test_divide_exact_roundtrip(p, q):
    if not q:
        return
    assert (p * q).divide_exact(q) == p


def test_divide_exact_remainder_raises():
    with pytest.raises(ArithmeticError):
        (B + 1).divide_exact(C)
    with pytest.raises(ZeroDivisionError):
        B.divide_exact(PolyBCG())


@given(polys, polys, st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_evaluate_is_a_homomorphism(p, q, b, c, g):
    ev = lambda x: x.evaluate(b, c, g)
    assert ev(p * q) == ev(p) * ev(q)
    assert ev(p + q) == ev(p) + ev(q)


@given(polys)
def test_json_roundtrip(p):
    assert PolyBCG.from_json(p.to_json()) == p


def test_binom_poly_values():
    for k in range(6):
        for b in range(8):
            assert binom_poly("b", k).evaluate(b, 0, 0) == comb(b, k)


def test_falling_binomial_negative_and_rational():
    assert falling_binomial(-1, 3) == -1
    assert falling_binomial(Fraction(1, 2), 2) == Fraction(-1, 8)


def test_multinomial_mu():
    # z(z-1)(z-2) / (2! 1!) for parts (2, 2, 1)
    assert multinomial_mu(5, (2, 2, 1)) == Fraction(5 * 4 * 3, 2)


def test_fraction_strings():
    assert fraction_str(Fraction(-3, 6)) == "-1/2"
    assert fraction_str(4) == "4/1"
    assert parse_fraction("7/3") == Fraction(7, 3)


def test_partition_counts_and_order():
    assert [len(partitions_of(n)) for n in range(1, 11)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    with pytest.raises(ValueError):
        Partition((1, 2))
    assert Partition.from_weights([0, 2, 0, 3, 1]) == (3, 2, 1)


def test_compositions():
    assert sorted(compositions_positive(4, 2)) == [(1, 3), (2, 2), (3, 1)]
    assert len(list(compositions(3, 3))) == 10


coeff_lists = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=1, max_size=7)


@given(coeff_lists, coeff_lists)
def test_series_product_matches_naive(a, b):
    N = 6
    s, t = TruncSeries(a, N), TruncSeries(b, N)
    assert list((s * t).coeffs) == poly_mul_naive(a, b, N)


@given(coeff_lists, st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_power_recurrence_matches_binomial_expansion(a, alpha):
    s = TruncSeries([1] + a, 6)
    assert series_pow_frac(s, alpha) == series_pow_binomial(s, alpha)


@given(coeff_lists)
def test_log_exp_inverse(a):
    s = TruncSeries([1] + a, 6)
    assert series_exp(series_log(s)) == s
    assert s * s.inverse() == TruncSeries.one(6)


@given(coeff_lists, st.integers(0, 4))
def test_integer_power(a, n):
    s = TruncSeries([1] + a, 5)
    assert s ** n == series_pow_frac(s, n)


def test_symbolic_power():
    s = TruncSeries([1, 1], 4)
    p = series_pow_frac(s, G)
    for k in range(5):
        assert p[k] == binom_poly("g", k)


def test_mixed_orders_rejected():
    with pytest.raises(ValueError):
        TruncSeries([1, 2], 3) + TruncSeries([1, 2], 4)
    with pytest.raises(ValueError):
        TruncSeries([2, 1], 3).inverse()


def test_scale_and_shift():
    s = TruncSeries([1, 2, 3], 4)
    assert s.scale(2).coeffs == tuple(Fraction(x) for x in (1, 0, 2, 0, 3))
    assert s.shift(1).coeffs == tuple(Fraction(x) for x in (0, 1, 2, 3, 0))
