"""Seeded random functionals for tests and verification suites."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .cumulants import Functional
from .meixner import JacobiParams, moments_from_jacobi
from .series import NcSeries, words


def rng_for(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_rational(rng, num: int = 5, den: int = 4) -> Fraction:
    return Fraction(int(rng.integers(-num, num + 1)), int(rng.integers(1, den + 1)))


def random_functional(seed, d: int, N: int, num: int = 3, den: int = 3) -> Functional:
    """Arbitrary unital functional: every moment an independent small rational (not positive in general)."""
    rng = rng_for(seed)
    s = NcSeries(d, N, {w: random_rational(rng, num, den) for w in words(d, N, 1)}) + 1
    return Functional(s, "random")


def random_series(seed, d: int, N: int, min_degree: int = 1, num: int = 3, den: int = 3) -> NcSeries:
    rng = rng_for(seed)
    return NcSeries(d, N, {w: random_rational(rng, num, den) for w in words(d, N, min_degree)})


def random_jacobi(seed, levels: int, den: int = 4) -> JacobiParams:
    """Jacobi parameters with positive ``gamma``, so the resulting functional is a state."""
    rng = rng_for(seed)
    beta = [random_rational(rng, 2 * den, den) for _ in range(levels)]
    gamma = [Fraction(int(rng.integers(1, 2 * den + 1)), den) for _ in range(levels)]
    return JacobiParams(beta, gamma)


def random_jacobi_state(seed, N: int) -> Functional:
    f = moments_from_jacobi(random_jacobi(seed, N // 2 + 1), N)
    return Functional(f.moments, "jacobi")


def random_matrix_state(seed, d: int, N: int, dim: int = 2, den: int = 2) -> Functional:
    """Vector state ``<e_0, K_u e_0>`` of random symmetric rational matrices (a genuine state)."""
    rng = rng_for(seed)
    mats = []
    for _ in range(d):
        a = [[random_rational(rng, den, den) for _ in range(dim)] for _ in range(dim)]
        mats.append([[a[i][j] + a[j][i] for j in range(dim)] for i in range(dim)])
    vecs = {(): [Fraction(int(i == 0)) for i in range(dim)]}
    out = {}
    for w in words(d, N):
        if w:
            m, prev = mats[w[0] - 1], vecs[w[1:]]
            vecs[w] = [sum(m[i][j] * prev[j] for j in range(dim)) for i in range(dim)]
        out[w] = vecs[w][0]
    return Functional(NcSeries(d, N, out), "matrix")


def random_infinitely_divisible(seed, d: int, N: int) -> Functional:
    """``B[sigma]`` for a random matrix state ``sigma``: free cumulants equal a Boolean cumulant series."""
    from .transforms import bercovici_pata

    return bercovici_pata(random_matrix_state(seed, d, N))

