from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cfree.cumulants import (CumulantSeries, Functional, boolean_by_partitions, boolean_from_moments,
                             free_by_partitions, free_from_moments, moments_from_boolean,
                             moments_from_boolean_by_partitions, moments_from_free,
                             moments_from_free_by_partitions, pair_moments_from_two_state,
                             two_state_by_partitions, two_state_from_pair)
from cfree.samples import random_functional, random_matrix_state
from cfree.series import AlphabetMismatch, NcSeries
from cfree.transforms import delta_state

from conftest import catalan


def one_var(moments):
    return Functional(NcSeries(1, len(moments) - 1, {(1,) * n: m for n, m in enumerate(moments)}))


def z2(d=1, N=8):
    return NcSeries(d, N, {(i, i): 1 for i in range(1, d + 1)})


BERNOULLI = one_var([1, 0, 1, 0, 1, 0, 1, 0, 1])
SEMICIRCLE = one_var([catalan(n // 2) if n % 2 == 0 else 0 for n in range(9)])


def test_boolean_examples():
    assert boolean_from_moments(BERNOULLI) == z2()
    a = Fraction(3, 2)
    assert boolean_from_moments(delta_state([a], 7)) == NcSeries(1, 7, {(1,): a})
    assert moments_from_boolean(z2()) == BERNOULLI
    assert moments_from_boolean(NcSeries.zero(1, 5)) == delta_state([0], 5)


def test_free_examples():
    assert free_from_moments(SEMICIRCLE) == z2()
    assert free_from_moments(delta_state([-2], 6)) == NcSeries(1, 6, {(1,): -2})
    m = moments_from_free(NcSeries(1, 10, {(1, 1): 1}))
    assert [m[(1,) * n] for n in range(11)] == [catalan(n // 2) if n % 2 == 0 else 0 for n in range(11)]
    two = moments_from_free(z2(2, 4))
    assert two[(1, 2, 2, 1)] == 1 and two[(1, 2, 1, 2)] == 0
    assert moments_from_free(NcSeries.zero(2, 4)) == delta_state([0, 0], 4)


def test_free_low_degree_formulas():
    f = random_functional(7, 1, 3)
    m1, m2, m3 = (f[(1,) * n] for n in (1, 2, 3))
    r = free_from_moments(f)
    assert r[(1,)] == m1
    assert r[(1, 1)] == m2 - m1 ** 2
    assert r[(1, 1, 1)] == m3 - 3 * m1 * m2 + 2 * m1 ** 3


@pytest.mark.parametrize("seed,d", [(0, 1), (1, 2), (2, 3), (3, 2)])
def test_dual_paths(seed, d):
    N = 6 if d < 3 else 5
    phi = random_functional(seed, d, N)
    psi = random_functional(seed + 100, d, N)
    assert boolean_from_moments(phi) == boolean_by_partitions(phi)
    assert free_from_moments(phi) == free_by_partitions(phi)
    assert two_state_from_pair(phi, psi) == two_state_by_partitions(phi, psi)


@pytest.mark.parametrize("seed", range(3))
def test_round_trips(seed):
    phi = random_functional(seed, 2, 6)
    psi = random_functional(seed + 50, 2, 6)
    assert moments_from_boolean(boolean_from_moments(phi)) == phi
    assert moments_from_free(free_from_moments(phi)) == phi
    assert pair_moments_from_two_state(two_state_from_pair(phi, psi), psi) == phi
    assert moments_from_free_by_partitions(free_from_moments(phi)) == phi
    assert moments_from_boolean_by_partitions(boolean_from_moments(phi)) == phi


@pytest.mark.parametrize("seed", range(3))
def test_specializations(seed):
    phi = random_functional(seed, 2, 5)
    assert two_state_from_pair(phi, phi) == free_from_moments(phi)
    assert two_state_from_pair(phi, delta_state([0, 0], 5)) == boolean_from_moments(phi)
    assert pair_moments_from_two_state(free_from_moments(phi), phi) == phi
    assert pair_moments_from_two_state(boolean_from_moments(phi), delta_state([0, 0], 5)) == phi


def test_low_degree_agreement_of_all_kinds():
    phi = random_functional(11, 2, 4)
    psi = random_functional(12, 2, 4)
    for c in (boolean_from_moments(phi), free_from_moments(phi), two_state_from_pair(phi, psi)):
        for i in (1, 2):
            assert c[(i,)] == phi[(i,)]
            for j in (1, 2):
                assert c[(i, j)] == phi[(i, j)] - phi[(i,)] * phi[(j,)]


def test_conditionally_free_product_rule():
    # unmixed two-state cumulants and an unmixed psi make x1 and x2 c-free
    N = 4
    r = NcSeries(2, N, {(1,): 2, (1, 1): 3, (1, 1, 1): -1, (2,): Fraction(1, 2), (2, 2): 1, (2, 2, 2): 5})
    psi = moments_from_free(NcSeries(2, N, {(1,): 1, (1, 1): 2, (2,): -3, (2, 2): Fraction(1, 3), (2, 2, 2): 2}))
    phi = pair_moments_from_two_state(r, psi)
    assert phi[(1, 2)] == phi[(1,)] * phi[(2,)]
    lhs = phi[(1, 2, 1)]
    rhs = phi[(1,)] * phi[(2,)] * phi[(1,)] + (phi[(1, 1)] - phi[(1,)] ** 2) * psi[(2,)]
    assert lhs == rhs


def test_reversal_symmetry_passes_to_cumulants():
    phi = random_matrix_state(4, 2, 5)
    psi = random_matrix_state(5, 2, 5)
    assert phi.is_reversal_symmetric()
    for c in (boolean_from_moments(phi), free_from_moments(phi), two_state_from_pair(phi, psi)):
        assert c.series == c.series.reversed()


def test_errors():
    with pytest.raises(ValueError):
        Functional(NcSeries(1, 3, {(): 2}))
    with pytest.raises(ValueError):
        CumulantSeries("free", NcSeries.one(1, 3))
    with pytest.raises(ValueError):
        CumulantSeries("monotone", NcSeries.zero(1, 3))
    with pytest.raises(AlphabetMismatch):
        two_state_from_pair(random_functional(0, 1, 3), random_functional(0, 2, 3))


@given(st.integers(0, 10_000), st.integers(1, 2))
def test_dual_paths_property(seed, d):
    phi = random_functional(seed, d, 4)
    psi = random_functional(seed + 1, d, 4)
    assert two_state_from_pair(phi, psi) == two_state_by_partitions(phi, psi)
    assert free_from_moments(phi) == free_by_partitions(phi)
