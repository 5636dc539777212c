from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cfree.series import (AlphabetMismatch, NcSeries, inverse_map, solve_dilation,
                          solve_dilation_fixed_point, words)

from conftest import series


def S(d, N, **kw):
    return NcSeries(d, N, {tuple(int(c) for c in k[1:]): v for k, v in kw.items()})


def test_add_examples(z):
    one = NcSeries.one(2, 4)
    assert (one + z(1)) + (one + z(2)) == 2 + z(1) + z(2)
    a = S(2, 4, w12=3)
    assert a + NcSeries.zero(2, 4) == a
    assert S(2, 4, w12=1) + S(2, 4, w12=1) == S(2, 4, w12=2)


def test_mul_is_noncommutative(z):
    assert (z(1) * z(2))[(1, 2)] == 1
    assert (z(1) * z(2))[(2, 1)] == 0
    assert z(1) * z(2) != z(2) * z(1)


def test_mul_examples():
    one = NcSeries.one(1, 4)
    x = NcSeries.variable(1, 1, 4)
    assert (one + x) * (one - x) == one - x * x
    a = NcSeries(1, 2, {(1,): 1, (1, 1): 1})
    assert a * (1 + NcSeries.variable(1, 1, 2)) == NcSeries(1, 2, {(1,): 1, (1, 1): 2})


def test_truncation_takes_minimum():
    a = NcSeries(1, 5, {(1,) * 5: 1})
    b = NcSeries(1, 3, {(1,): 2})
    assert (a + b).N == 3
    assert a == NcSeries.zero(1, 3)  # equal up to the common degree


def test_reciprocal_examples():
    x = NcSeries.variable(1, 1, 6)
    assert (1 - x).reciprocal() == NcSeries(1, 6, {(1,) * n: 1 for n in range(7)})
    assert NcSeries.one(2, 3).reciprocal() == NcSeries.one(2, 3)
    r = (1 + NcSeries.variable(1, 2, 2) + NcSeries.variable(2, 2, 2)).reciprocal()
    assert [r[w] for w in words(2, 2)] == [1, -1, -1, 1, 1, 1, 1]


def test_reciprocal_needs_unit_constant():
    with pytest.raises(ZeroDivisionError):
        NcSeries.variable(1, 1, 3).reciprocal()


def test_left_derivative_examples():
    assert NcSeries.monomial((1, 2, 1), 1, 2, 4).left_derivative(1) == NcSeries.monomial((2, 1), 1, 2, 4)
    assert NcSeries.monomial((1, 2), 1, 2, 4).left_derivative(2).is_zero()
    assert NcSeries.variable(1, 2, 4).left_derivative(1) == NcSeries.one(2, 3)
    with pytest.raises(IndexError):
        NcSeries.one(2, 3).left_derivative(3)


def test_substitute_examples(z):
    sq = z(1) * z(1)
    assert sq.substitute([z(1) + z(2), z(2)]) == z(1) * z(1) + z(1) * z(2) + z(2) * z(1) + z(2) * z(2)
    a = S(2, 4, w1=2, w21=-1, w122=Fraction(1, 3))
    assert a.substitute([z(1), z(2)]) == a
    w1, w2 = NcSeries.variable(1, 2, 3), NcSeries.variable(2, 2, 3)
    out = NcSeries.monomial((1, 2), 1, 2, 3).substitute([w1 * (1 + w1), w2])
    assert out == w1 * w2 + w1 * w1 * w2


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        NcSeries.one(1, 3) + NcSeries.one(2, 3)


def test_coefficient_beyond_truncation_is_an_error():
    with pytest.raises(IndexError):
        NcSeries.one(1, 2)[(1, 1, 1)]


def test_letters_are_validated():
    with pytest.raises(ValueError):
        NcSeries(2, 3, {(3,): 1})


@given(series(), series(), series())
def test_mul_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(series(), series(), series())
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(series(unit=True))
def test_reciprocal_involution(a):
    assert a.reciprocal().reciprocal() == a
    assert a * a.reciprocal() == NcSeries.one(2, 4)


@given(series(), series(), series(d=2, N=4, min_degree=1), series(d=2, N=4, min_degree=1))
def test_substitute_is_a_homomorphism(a, b, s1, s2):
    subs = [s1, s2]
    assert (a * b).substitute(subs) == a.substitute(subs) * b.substitute(subs)
    assert (a + b).substitute(subs) == a.substitute(subs) + b.substitute(subs)


@given(series())
def test_left_derivative_reconstruction(a):
    rebuilt = a.const + sum((NcSeries.variable(i, 2, a.N) * a.left_derivative(i) for i in (1, 2)),
                            NcSeries.zero(2, a.N))
    assert rebuilt == a


@given(series(N=4), series(N=4, min_degree=1))
def test_dilation_matches_substitution(r, m):
    # r(g w) with g = 1 + m is the substitution w_i -> g w_i
    g = m + 1
    subs = [g * NcSeries.variable(i, 2, 4) for i in (1, 2)]
    assert r.dilate(g) == r.substitute(subs)


@given(series(N=4, min_degree=1), series(N=4, min_degree=1))
def test_solve_dilation_inverts_dilate(r, m):
    g = m + 1
    assert solve_dilation(r.dilate(g), g) == r


@given(series(N=4, min_degree=1))
def test_fixed_point_solver(r):
    m = solve_dilation_fixed_point(r)
    assert m == r.dilate(m + 1)


def test_inverse_map_recovers_linear_change():
    w1, w2 = NcSeries.variable(1, 2, 4), NcSeries.variable(2, 2, 4)
    F = [w1 + w2 * w2, w2 + Fraction(1, 2) * w1 * w2]
    Z = inverse_map(F)
    comp = [f.substitute(Z) for f in F]
    assert comp[0] == w1 and comp[1] == w2
