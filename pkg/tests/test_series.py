from fractions import Fraction

import pytest

from formaldisk import (DEFAULT_CAP, TruncatedSeries, UnivariateSeries,
                        SeriesMatrix, matrix_exp, matrix_trace_power,
                        series_at_matrix, sinh_quotient_series, useries_compose,
                        useries_div, useries_exp, useries_log, useries_sqrt)


def test_constructor_prunes_beyond_cap():
    s = TruncatedSeries(2, 3, {(0, 0): 1, (2, 2): 5, (3, 0): Fraction(1, 2)})
    assert (2, 2) not in s.terms
    assert s.coefficient((3, 0)) == Fraction(1, 2)
    assert s.coefficient((2, 2)) == 0


def test_mul_respects_min_cap():
    a = TruncatedSeries.variable(1, 1, cap=4)
    b = TruncatedSeries.variable(1, 1, cap=2)
    p = a * b
    assert p.cap == 2
    assert p.coefficient((2,)) == 1
    # cap 2 kills the product of two quadratics
    q = (a * a) * (b * b)
    assert q.is_zero()


def test_arithmetic_and_partial():
    t1 = TruncatedSeries.variable(2, 1)
    t2 = TruncatedSeries.variable(2, 2)
    f = (t1 + t2) * (t1 - t2)
    assert f == t1 * t1 - t2 * t2
    # partial lowers the validity cap, so compare raw terms
    assert f.partial(1).terms == {(1, 0): Fraction(2)}
    assert f.partial(2).terms == {(0, 1): Fraction(-2)}
    assert f.partial_multi((1, 1)).is_zero()
    g = t1 * t1 * t2
    assert g.partial_multi((2, 1)).terms == {(0, 0): Fraction(2)}


def test_agrees_with_clamps_to_min_cap():
    a = TruncatedSeries(1, 8, {(0,): 1, (5,): 7})
    b = TruncatedSeries(1, 4, {(0,): 1, (5,): 3})  # (5,) pruned: over cap
    # through=6 exceeds b's validity; comparison clamps to 4 and passes
    assert a.agrees_with(b, 6)
    c = TruncatedSeries(1, 4, {(0,): 1, (3,): 1})
    assert not a.agrees_with(c, 6)


def test_json_roundtrip():
    s = TruncatedSeries(3, 5, {(1, 0, 2): Fraction(-7, 3), (0, 0, 0): 2})
    assert TruncatedSeries.from_json(s.to_json()) == s
    assert TruncatedSeries.from_json(s.to_json()).cap == 5


# ---------------------------------------------------------------------
# univariate layer
# ---------------------------------------------------------------------

def test_exp_log_inverse():
    x = UnivariateSeries([Fraction(0), Fraction(1)] + [Fraction(0)] * 8)
    assert useries_log(useries_exp(x)) == x
    one_plus = UnivariateSeries([Fraction(1), Fraction(1)] + [Fraction(0)] * 8)
    assert useries_exp(useries_log(one_plus)) == one_plus


def test_sqrt_squares_back():
    f = UnivariateSeries([Fraction(1), Fraction(2), Fraction(-1),
                          Fraction(1, 3)] + [Fraction(0)] * 5)
    r = useries_sqrt(f)
    assert (r * r).truncate(f.order) == f


def test_div_multiplies_back():
    num = UnivariateSeries([Fraction(1), Fraction(0), Fraction(5)] + [Fraction(0)] * 4)
    den = UnivariateSeries([Fraction(2), Fraction(-1), Fraction(1, 7)] + [Fraction(0)] * 4)
    q = useries_div(num, den)
    assert (q * den).truncate(num.order) == num


def test_compose_exp_of_log1p():
    n = 8
    zero = [Fraction(0)] * (n - 1)
    # log(1+x) has no constant term, composing exp o log1p gives 1+x
    log1p = UnivariateSeries([Fraction(0)] + [Fraction((-1) ** (k + 1), k)
                                              for k in range(1, n + 1)])
    ex = useries_exp(UnivariateSeries([Fraction(0), Fraction(1)] + zero + [Fraction(0)]))
    got = useries_compose(ex, log1p)
    want = [Fraction(1), Fraction(1)] + [Fraction(0)] * (n - 1)
    assert got.coeffs[: n + 1] == want


def test_derivative_integrate():
    f = UnivariateSeries([Fraction(3), Fraction(1), Fraction(0), Fraction(2)])
    assert f.derivative().integrate().coeffs[1:] == f.coeffs[1:]


@pytest.mark.parametrize("k,value", [
    (0, Fraction(1)),
    (2, Fraction(1, 24)),
    (4, Fraction(1, 1920)),
])
def test_sinh_quotient_coefficients(k, value):
    # (e^{x/2}-e^{-x/2})/x = sum_k x^{2k} / (4^k (2k+1)!)
    s = sinh_quotient_series(6)
    assert s[k] == value
    if k + 1 <= 6:
        assert s[k + 1] == 0


# ---------------------------------------------------------------------
# matrices of series
# ---------------------------------------------------------------------

def _nilpotent_pair(cap=5):
    t1 = TruncatedSeries.variable(2, 1, cap)
    t2 = TruncatedSeries.variable(2, 2, cap)
    return t1, t2


def test_matrix_exp_of_strictly_triangular():
    t1, t2 = _nilpotent_pair()
    z = TruncatedSeries.zero(2, 5)
    n = SeriesMatrix([[z, t1], [z, z]])
    e = matrix_exp(n)
    assert e.entries[0][0] == TruncatedSeries.const(2, 1, 5)
    assert e.entries[0][1] == t1
    assert e.entries[1][0].is_zero()


def test_trace_power_matches_multiplication():
    t1, t2 = _nilpotent_pair()
    m = SeriesMatrix([[t1, t2], [t1 * t2, t2 * t2]])
    assert matrix_trace_power(m, 2) == (m * m).trace()
    assert matrix_trace_power(m, 3) == (m * m * m).trace()


def test_series_at_matrix_geometric():
    # f = 1/(1-x) at a nilpotent matrix equals the finite geometric sum
    t1, t2 = _nilpotent_pair()
    one = UnivariateSeries([Fraction(1)] * 7)
    m = SeriesMatrix([[t1 * t1, t2], [TruncatedSeries.zero(2, 5), t1 * t2]])
    val = series_at_matrix(one, m)
    acc = SeriesMatrix.identity_like(m)
    power = SeriesMatrix.identity_like(m)
    for _ in range(5):
        power = power * m
        acc = acc + power
    assert all(val.entries[i][j] == acc.entries[i][j]
               for i in range(2) for j in range(2))


def test_default_cap_is_eight():
    assert DEFAULT_CAP == 8
    assert TruncatedSeries.variable(1, 1).cap == 8
