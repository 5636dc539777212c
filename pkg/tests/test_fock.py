from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import catalan
from cfree import fock
from cfree.cumulants import boolean_from_moments, free_from_moments, moments_from_free
from cfree.meixner import meixner_functional, psd_check
from cfree.samples import random_jacobi_state, rng_for
from cfree.series import NcSeries, words
from cfree.transforms import b_map, delta_state, free_convolve, monotone_convolve, phi_map

F = Fraction


def max_diff(a: NcSeries, b: NcSeries) -> float:
    return max((abs(float(a.coeff(w) - b.coeff(w))) for w in words(a.d, min(a.N, b.N))), default=0.0)


def scalar_free(h=0, lam=0, zeta=1):
    return fock.OperatorData("free", [[[F(h)]]], [[F(zeta)]], [F(lam)])


def scalar_boolean(s=0, alpha=0, eps=1):
    return fock.OperatorData("boolean", [[[F(s)]]], [[F(eps)]], [F(alpha)])


def test_operator_data_validation():
    with pytest.raises(fock.ModelError):
        fock.OperatorData("free", [[[1, 0], [0, 1]]], [[1]], [0])
    with pytest.raises(fock.ModelError):
        fock.OperatorData("state", [[[1]]], [[1], [1]])
    with pytest.raises(fock.ModelError):
        fock.OperatorData("monotone", [[[1]]], [[1]])
    data = fock.OperatorData("state", [np.eye(2)], [np.array([1.0, 0.0])])
    assert not data.exact and data.d == 1 and data.dim == 2
    assert scalar_free().exact


def test_boolean_model_examples():
    # orthonormal eps, S = 0: eta(w) = sum w_i^2
    data = fock.OperatorData("boolean", [[[0, 0], [0, 0]]] * 2, [[1, 0], [0, 1]], [0, 0])
    f = fock.data_moments(data, 6)
    assert boolean_from_moments(f).series == NcSeries(2, 6, {(1, 1): 1, (2, 2): 1})
    b = F(3, 2)
    eta = boolean_from_moments(fock.data_moments(scalar_boolean(b), 8)).series
    assert [eta[(1,) * n] for n in range(2, 9)] == [b ** (n - 2) for n in range(2, 9)]


def test_boolean_model_random_dual_path():
    rng = rng_for(5)
    base = fock.random_free_data(rng, 2, 3)
    data = fock.OperatorData("boolean", base.ops, base.vectors, base.scalars)
    f = fock.data_moments(data, 5)
    assert max_diff(boolean_from_moments(f).series, fock.cumulant_series_from_data(data, 5)) < 1e-10


def test_full_model_examples():
    f = fock.data_moments(scalar_free(), 10)
    assert [f[(1,) * n] for n in range(11)] == [catalan(n // 2) if n % 2 == 0 else 0 for n in range(11)]
    b = F(-2, 3)
    f = fock.data_moments(scalar_free(b), 10)
    r = free_from_moments(f).series
    assert [r[(1,) * n] for n in range(2, 11)] == [b ** (n - 2) for n in range(2, 11)]
    assert f == meixner_functional((b, 0), 10)


def test_full_model_random_dual_path():
    data = fock.random_free_data(rng_for(7), 2, 2)
    f = fock.data_moments(data, 5, L=6)
    assert max_diff(free_from_moments(f).series, fock.cumulant_series_from_data(data, 5)) < 1e-10


def test_truncation_guarantee():
    data = fock.exact_data(fock.random_free_data(rng_for(8), 1, 2))
    with pytest.raises(fock.ModelError):
        fock.build_full_model(data, 4, 6)
    with pytest.raises(fock.ModelError):
        fock.vacuum_moments(fock.build_full_model(data, 4), 6)
    exact = moments_from_free(fock.cumulant_series_from_data(data, 6))
    assert fock.data_moments(data, 6, L=6) == exact
    assert fock.data_moments(data, 6, L=7) == exact


@pytest.mark.parametrize("exact", [False, True])
def test_operators_are_symmetric(exact):
    rng = rng_for(9)
    psi, mu = fock.random_state_data(rng, 2, 2), fock.random_free_data(rng, 2, 2)
    if exact:
        psi, mu = fock.exact_data(psi), fock.exact_data(mu)
    t = fock.tensor_eta_model(psi, mu)
    assert t.is_symmetric()
    assert fock.build_full_model(mu, 4).is_symmetric()
    assert fock.build_boolean_model(t).is_symmetric()
    assert fock.build_full_model(fock.as_free_data(t), 3).is_symmetric()


def test_tensor_model_with_zero_h():
    rng = rng_for(10)
    psi = fock.random_state_data(rng, 2, 2)
    mu = fock.random_free_data(rng, 2, 2)
    mu = fock.OperatorData("free", [np.zeros((2, 2))] * 2, mu.vectors, mu.scalars)
    eta = fock.cumulant_series_from_data(fock.tensor_eta_model(psi, mu), 4)
    for i in (1, 2):
        for j in (1, 2):
            assert eta[(i, j)] == F(mu.vectors[i - 1].dot(mu.vectors[j - 1]))


def test_tensor_model_with_zero_k():
    mu = fock.exact_data(fock.random_free_data(rng_for(11), 1, 2))
    psi = fock.OperatorData("state", [[[F(0)]]], [[F(1)]])
    eta = fock.cumulant_series_from_data(fock.tensor_eta_model(psi, mu), 6)
    # psi = delta_0, so eta is the free data itself
    assert eta == fock.cumulant_series_from_data(mu, 6)


@pytest.mark.parametrize("seed", range(3))
def test_tensor_eta_formula(seed):
    rng = rng_for(seed)
    psi = fock.exact_data(fock.random_state_data(rng, 2, 2))
    mu = fock.exact_data(fock.random_free_data(rng, 2, 2))
    N = 5
    eta = fock.cumulant_series_from_data(fock.tensor_eta_model(psi, mu), N)
    m_mu = fock.cumulant_series_from_data(mu, N)
    A = fock.data_moments(psi, N).moments
    z = [NcSeries.variable(i, 2, N) for i in (1, 2)]
    assert eta == A.reciprocal() * m_mu.substitute([A * zi for zi in z])
    rho = moments_from_free(m_mu)
    assert eta == boolean_from_moments(phi_map(rho, fock.data_moments(psi, N))).series


@pytest.mark.parametrize("seed", range(3))
def test_tensor_eta_is_conditionally_positive(seed):
    rng = rng_for(seed)
    eta = fock.cumulant_series_from_data(fock.tensor_eta_model(fock.random_state_data(rng, 2, 2),
                                                               fock.random_free_data(rng, 2, 2)), 6)
    assert psd_check(eta, 3, conditional=True).psd


def test_tensor_dimension_guard():
    rng = rng_for(0)
    with pytest.raises(fock.ModelError):
        fock.tensor_eta_model(fock.random_state_data(rng, 1, 8), fock.random_free_data(rng, 1, 8), max_dim=32)
    with pytest.raises(fock.ModelError):
        fock.tensor_eta_model(fock.random_state_data(rng, 1, 2), fock.random_free_data(rng, 2, 2))


@pytest.mark.parametrize("seed", range(3))
def test_monotone_realization(seed):
    rng = rng_for(seed)
    psi = fock.exact_data(fock.random_state_data(rng, 2, 2))
    phi = fock.exact_data(fock.random_state_data(rng, 2, 2))
    got = fock.data_moments(fock.monotone_realization(psi, phi), 5)
    assert got == monotone_convolve(fock.data_moments(phi, 5), fock.data_moments(psi, 5))


def test_free_sum_space_realizes_free_convolution():
    rng = rng_for(12)
    psi = fock.exact_data(fock.random_state_data(rng, 1, 2))
    mu = fock.exact_data(fock.random_free_data(rng, 1, 1))
    ops, vec = fock.free_sum_space_model(psi, mu, 5)
    model = fock.FockModel("state", None, psi, ops, vacuum=None, vacuum_vector=vec)
    rho = moments_from_free(fock.cumulant_series_from_data(mu, 5))
    assert fock.vacuum_moments(model, 5) == free_convolve(fock.data_moments(psi, 5), rho)


@pytest.mark.parametrize("case", [(1, 1, 1, 6, 7), (1, 2, 2, 5, 6), (2, 2, 1, 5, 6)])
def test_evolution_operator_check(case):
    d, dk, dh, N, L = case
    rng = rng_for(3)
    rep = fock.evolution_operator_check(fock.random_state_data(rng, d, dk), fock.random_free_data(rng, d, dh), N, L, seed=3)
    assert rep.ok(1e-9) and rep.residual < 1e-9
    assert rep.series_a == rep.series_b


def test_evolution_operator_check_exact_mode():
    rng = rng_for(4)
    psi = fock.exact_data(fock.random_state_data(rng, 1, 2))
    mu = fock.exact_data(fock.random_free_data(rng, 1, 1))
    rep = fock.evolution_operator_check(psi, mu, 5, 5)
    assert rep.exact and rep.residual == 0
    assert all(isinstance(v, Fraction) for v in rep.side_a.values())


def test_evolution_trivial_data():
    psi = fock.OperatorData("state", [[[F(0)]]], [[F(1)]])
    rep = fock.evolution_operator_check(psi, scalar_free(), 6, 6)
    assert rep.residual == 0
    # rho = SC(0,1), psi = delta_0: both sides give the semicircle of variance 1 pushed by B
    assert rep.series_a == b_map(phi_map(meixner_functional((0, 0), 6), delta_state([0], 6)), 0, 1)
    with pytest.raises(fock.ModelError):
        fock.evolution_operator_check(psi, scalar_free(), 6, 5)


def test_gns_examples():
    data = fock.gns_from_functional(delta_state([F(5, 2)], 5), 2)
    assert data.dim == 1 and abs(data.ops[0][0, 0] - 2.5) < 1e-12
    bern = meixner_functional((0, -1), 8)
    data = fock.gns_from_functional(bern, 2)
    assert data.dim == 2
    f = fock.data_moments(data, 5)
    assert [float(f[(1,) * n]) for n in range(5)] == pytest.approx([1, 0, 1, 0, 1], abs=1e-12)
    with pytest.raises(fock.ModelError):
        fock.gns_from_functional(bern, 4)
    with pytest.raises(fock.ModelError):
        fock.gns_from_functional(meixner_functional((0, -2), 8), 2)


@given(st.integers(0, 10_000))
def test_gns_round_trip(seed):
    f = random_jacobi_state(seed, 7)
    data = fock.gns_from_functional(f, 3)
    g = fock.data_moments(data, 7)
    scale = max(abs(float(f[(1,) * n])) for n in range(8))
    assert max_diff(f.moments, g.moments) <= 1e-8 * max(scale, 1.0)


def test_gns_conditional_round_trip():
    rng = rng_for(13)
    mu = fock.exact_data(fock.random_free_data(rng, 2, 2))
    eta = fock.cumulant_series_from_data(mu, 5)
    data = fock.gns_from_functional(eta, 2, conditional=True)
    back = fock.cumulant_series_from_data(data, 5)
    assert max_diff(eta, back) < 1e-9


def test_gns_float_fallback(monkeypatch):
    monkeypatch.setattr(fock, "MAX_EXACT_GNS", 0)
    bern = meixner_functional((0, -1), 8)
    data = fock.gns_from_functional(bern, 3)
    assert data.dim == 2
    f = fock.data_moments(data, 7)
    assert max_diff(f.moments, bern.moments.truncate(7)) < 1e-10
    with pytest.raises(fock.ModelError):
        fock.gns_from_functional(meixner_functional((0, -2), 8), 2)
