"""One-variable measures through Jacobi parameters, the free Meixner family,
quadratic-PDE residuals, and positivity checks of moment Gram matrices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .cumulants import Functional, boolean_from_moments, free_from_moments, two_state_from_pair
from .linalg import is_psd_exact
from .series import NcSeries, as_fraction
from .transforms import boolean_convolve, boolean_power, delta_state, free_convolve, free_power

DEFAULT_PSD_EPS = 1e-9


@dataclass(frozen=True)
class JacobiParams:
    """Recursion coefficients ``x P_n = P_{n+1} + beta_n P_n + gamma_n P_{n-1}``.

    ``beta = (beta_0, beta_1, ...)`` and ``gamma = (gamma_1, gamma_2, ...)``.
    A zero ``gamma`` marks finite support; later entries are never read.
    """

    beta: tuple
    gamma: tuple

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(as_fraction(x) for x in self.beta))
        object.__setattr__(self, "gamma", tuple(as_fraction(x) for x in self.gamma))

    @property
    def support_level(self):
        """Index ``k`` of the first ``gamma_k = 0`` (number of atoms), or None."""
        for k, g in enumerate(self.gamma, start=1):
            if g == 0:
                return k
        return None

    def head(self, n_beta: int, n_gamma: int) -> "JacobiParams":
        return JacobiParams(self.beta[:n_beta], self.gamma[:n_gamma])


class InsufficientParameters(ValueError):
    pass


def moments_from_jacobi(j: JacobiParams, N: int) -> Functional:
    """Moments ``m_n = (T^n)_{00}`` for the tridiagonal ``T`` with diagonal
    ``beta``, superdiagonal 1 and subdiagonal ``gamma``."""
    stop = j.support_level
    levels = N // 2 if stop is None else min(N // 2, stop - 1)
    need_beta = min(levels, (N - 1) // 2) + 1 if N >= 1 else 0
    if len(j.beta) < need_beta or len(j.gamma) < min(levels, N // 2):
        raise InsufficientParameters(
            f"degree {N} needs beta_0..beta_{need_beta - 1} and gamma_1..gamma_{levels}")
    size = levels + 1
    beta = list(j.beta[:size]) + [Fraction(0)] * (size - len(j.beta[:size]))
    gamma = list(j.gamma[:levels])
    vec = [Fraction(0)] * size
    vec[0] = Fraction(1)
    moments = [Fraction(1)]
    for _ in range(N):
        new = [Fraction(0)] * size
        for k in range(size):
            # row k of T: gamma_k * v[k-1] + beta_k * v[k] + v[k+1]
            s = beta[k] * vec[k]
            if k > 0:
                s += gamma[k - 1] * vec[k - 1]
            if k + 1 < size:
                s += vec[k + 1]
            new[k] = s
        vec = new
        moments.append(vec[0])
    return Functional(NcSeries(1, N, {(1,) * n: m for n, m in enumerate(moments)}))


def jacobi_from_moments(f: Functional, L: int | None = None) -> JacobiParams:
    """Exact Gram-Schmidt on ``<p, q> = f[p q]`` for the monic orthogonal polynomials.

    Returns every ``beta_n`` (needs degree ``2n+1``) and ``gamma_n`` (degree
    ``2n``) that the truncation determines, capped at ``L`` of each.  Stops at
    the first vanishing norm, recording ``gamma = 0`` there.
    """
    if f.d != 1:
        raise ValueError("Jacobi parameters are defined for one variable")
    m = [f.moments.coeff((1,) * n) for n in range(f.N + 1)]
    N = f.N
    L = N + 1 if L is None else L

    def ip(p, q, shift=0):
        return sum(a * b * m[i + k + shift] for i, a in enumerate(p) for k, b in enumerate(q) if a and b)

    beta, gamma = [], []
    prev, cur = [], [Fraction(1)]
    prev_norm = None
    n = 0
    while True:
        if 2 * n > N:
            break
        norm = ip(cur, cur)
        if n > 0:
            if len(gamma) >= L:
                break
            gamma.append(norm / prev_norm)
            if norm == 0:
                break
        if 2 * n + 1 > N or len(beta) >= L:
            break
        b = ip(cur, cur, shift=1) / norm
        beta.append(b)
        g = gamma[-1] if n > 0 else 0
        nxt = [Fraction(0)] + cur
        for i, c in enumerate(cur):
            nxt[i] -= b * c
        for i, c in enumerate(prev):
            nxt[i] -= g * c
        prev, cur, prev_norm = cur, nxt, norm
        n += 1
    return JacobiParams(tuple(beta), tuple(gamma))


def boolean_shift_jacobi(j: JacobiParams, alpha, t) -> JacobiParams:
    """Parameters of ``delta_alpha bool mu^{bool t}``: only the heads move."""
    alpha, t = as_fraction(alpha), as_fraction(t)
    beta = ((alpha + t * j.beta[0],) + j.beta[1:]) if j.beta else ()
    gamma = ((t * j.gamma[0],) + j.gamma[1:]) if j.gamma else ()
    return JacobiParams(beta, gamma)


# -- free Meixner family -------------------------------------------------------

@dataclass(frozen=True)
class MeixnerParams:
    """``mu_{b,c}`` optionally dressed to mean ``alpha`` and variance ``t``.

    ``dressing='free'`` gives ``mu^{free t} free delta_alpha``;
    ``dressing='boolean'`` gives ``mu^{bool t} bool delta_alpha``.
    """

    b: Fraction
    c: Fraction
    alpha: Fraction = Fraction(0)
    t: Fraction = Fraction(1)
    dressing: str = "free"

    def __post_init__(self):
        for name in ("b", "c", "alpha", "t"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.dressing not in ("free", "boolean"):
            raise ValueError("dressing must be 'free' or 'boolean'")

    @property
    def is_state(self) -> bool:
        return 1 + self.c >= 0


def meixner_jacobi(b, c, levels: int) -> JacobiParams:
    b, c = as_fraction(b), as_fraction(c)
    beta = (Fraction(0),) + (b,) * (levels - 1)
    gamma = (Fraction(1),) + (1 + c,) * (levels - 1)
    return JacobiParams(beta, gamma)


def meixner_functional(p, N: int) -> Functional:
    """Moments of a free Meixner law; ``p`` is a :class:`MeixnerParams` or ``(b, c)``."""
    if not isinstance(p, MeixnerParams):
        p = MeixnerParams(*p)
    f = moments_from_jacobi(meixner_jacobi(p.b, p.c, N // 2 + 1), N)
    if p.alpha or p.t != 1:
        if p.dressing == "free":
            f = free_convolve(free_power(f, p.t), delta_state([p.alpha], N))
        else:
            f = boolean_convolve(boolean_power(f, p.t), delta_state([p.alpha], N))
    label = f"mu[{p.b},{p.c}]" + ("" if p.is_state else " (not a state)")
    return Functional(f.moments, label)


def semicircular(alpha, beta, N: int, d: int = 1) -> Functional:
    """Free product of ``d`` copies of SC(alpha, beta): ``R = sum alpha z_i + beta z_i^2``."""
    from .cumulants import moments_from_free

    alpha, beta = as_fraction(alpha), as_fraction(beta)
    r = NcSeries(d, N, {w: v for i in range(1, d + 1) for w, v in (((i,), alpha), ((i, i), beta))})
    return Functional(moments_from_free(r).moments, f"SC({alpha},{beta})^{d}")


# -- quadratic PDE residuals ---------------------------------------------------

def quadratic_residual(F: NcSeries, B, C, const=1, subtract=None) -> dict:
    """Residuals ``D_i D_j F - const*delta_ij - sum_k B[i][j][k] D_k F - C[i][j] D_i F D_j F``.

    ``subtract`` optionally supplies ``G`` for an extra ``+ D_i G D_j F`` term.
    Returns ``{(i, j): residual series}``.
    """
    d = F.d
    DF = [F.left_derivative(i) for i in range(1, d + 1)]
    DG = [subtract.left_derivative(i) for i in range(1, d + 1)] if subtract is not None else None
    out = {}
    for i, j in product(range(1, d + 1), repeat=2):
        res = DF[i - 1].left_derivative(j)
        if i == j:
            res = res - const
        for k in range(1, d + 1):
            bk = as_fraction(B[i - 1][j - 1][k - 1])
            if bk:
                res = res - DF[k - 1].scale(bk)
        cij = as_fraction(C[i - 1][j - 1])
        if cij:
            res = res - (DF[i - 1] * DF[j - 1]).scale(cij)
        if DG is not None:
            res = res + DG[i - 1] * DF[j - 1]
        out[(i, j)] = res.truncate(F.N - 2)
    return out


def first_failing_degree(residuals: dict):
    """Smallest coefficient degree of ``F`` at which some residual is nonzero, or None."""
    worst = None
    for res in residuals.values():
        for w, v in res.items():
            deg = len(w) + 2
            if worst is None or deg < worst:
                worst = deg
            break
    return worst


@dataclass
class PdeReport:
    eta_residual: dict
    r_residual: dict

    @property
    def eta_failing_degree(self):
        return first_failing_degree(self.eta_residual)

    @property
    def r_failing_degree(self):
        return first_failing_degree(self.r_residual)

    @property
    def ok(self) -> bool:
        return self.eta_failing_degree is None and self.r_failing_degree is None


def meixner_pde_check(f: Functional, b, c, variance=1) -> PdeReport:
    """Free-cumulant and Boolean-cumulant quadratic equations for a free Meixner law.

    One variable takes scalars ``b, c``; several variables take ``B[i][j][k]``
    and ``C[i][j]``.  The free equation uses ``C``, the Boolean one ``1 + C``.
    """
    d = f.d
    if d == 1 and not isinstance(b, (list, tuple)):
        B, C = [[[b]]], [[c]]
    else:
        B, C = b, c
    C = [[as_fraction(x) for x in row] for row in C]
    C1 = [[1 + x for x in row] for row in C]
    eta = boolean_from_moments(f).series
    r = free_from_moments(f).series
    return PdeReport(quadratic_residual(eta, B, C1, variance),
                     quadratic_residual(r, B, C, variance))


def two_state_pde_residual(phi: Functional, psi: Functional, b, c) -> dict:
    """``D^2 R^{phi,psi} - 1 - b D R^{phi,psi} - (1+c)(D R^{phi,psi})^2 + D R^psi D R^{phi,psi}``."""
    r = two_state_from_pair(phi, psi).series
    rpsi = free_from_moments(psi).series
    return quadratic_residual(r, [[[b]]], [[1 + as_fraction(c)]], 1, subtract=rpsi)


def eta_pde_residual(f: Functional, const, b, c) -> dict:
    """One-variable ``D^2 eta - const - b D eta - c (D eta)^2``."""
    eta = boolean_from_moments(f).series
    return quadratic_residual(eta, [[[b]]], [[c]], const)


def meixner_semigroup_state(b, c, s, alpha, t, N: int) -> Functional:
    """``Phi[rho^{free t}, psi^{free t}]`` for ``rho = mu_{b,c}``, ``psi = rho^{free(1+s)} free delta_alpha``."""
    from .transforms import phi_map

    rho = meixner_functional((b, c), N)
    t, s = as_fraction(t), as_fraction(s)
    psi_t = free_convolve(free_power(rho, (1 + s) * t), delta_state([as_fraction(alpha) * t], N))
    return phi_map(free_power(rho, t), psi_t)


def meixner_semigroup_coefficients(b, c, s, alpha, t):
    """``(b(t), c(t))`` with ``D^2 eta = t + b(t) D eta + c(t) (D eta)^2`` along that semigroup.

    At ``t = 1``, ``b(1) = b + alpha`` and ``c(1) = 1 + c + (1 + s)``; the mean
    and variance of ``psi`` are ``alpha`` and ``1 + s``.
    """
    b, c, s, alpha, t = map(as_fraction, (b, c, s, alpha, t))
    b1, c1 = b + alpha, c + 1 + s
    return b1 + (t - 1) * alpha, (c1 + (t - 1) * (1 + s)) / t


# -- positivity ----------------------------------------------------------------

@dataclass
class PsdResult:
    min_eigenvalue: float
    max_eigenvalue: float
    psd: bool
    exact: bool | None = None

    def __bool__(self):
        return self.psd


def gram_words(d: int, k: int, conditional: bool = False) -> list:
    lo = 1 if conditional else 0
    return [w for n in range(lo, k + 1) for w in product(range(1, d + 1), repeat=n)]


def gram_matrix(moments: NcSeries, k: int, conditional: bool = False) -> list:
    """``G[u, v] = f[reverse(u) v]`` over words of degree ``<= k`` (``1..k`` if conditional)."""
    if 2 * k > moments.N:
        raise ValueError(f"Gram level {k} needs moments to degree {2 * k} > {moments.N}")
    ws = gram_words(moments.d, k, conditional)
    return [[moments.coeff(u[::-1] + v) for v in ws] for u in ws]


def psd_from_gram(G, eps: float = DEFAULT_PSD_EPS, exact_fallback: bool = True,
                  exact_limit: int = 120) -> PsdResult:
    A = np.array([[float(x) for x in row] for row in G], dtype=float)
    if A.size == 0:
        return PsdResult(0.0, 0.0, True)
    ev = np.linalg.eigvalsh(A)
    lo, hi = float(ev[0]), float(ev[-1])
    scale = max(abs(hi), abs(lo), 1e-300)
    psd = lo >= -eps * scale
    exact = None
    exact_ok = isinstance(G[0][0], Fraction) or isinstance(G[0][0], int)
    if exact_fallback and exact_ok and abs(lo) <= eps * scale and len(G) <= exact_limit:
        exact = is_psd_exact(G)
        psd = exact
    return PsdResult(lo, hi, psd, exact)


def psd_check(f, k: int, conditional: bool = False, eps: float = DEFAULT_PSD_EPS,
              exact_fallback: bool = True) -> PsdResult:
    """Positivity of the moment Gram matrix at level ``k``.

    Verdict is PSD iff the smallest eigenvalue is at least ``-eps * |lambda|_max``;
    when that eigenvalue sits inside the tolerance band the verdict is
    recomputed exactly over the rationals.
    """
    moments = f.moments if isinstance(f, Functional) else f
    return psd_from_gram(gram_matrix(moments, k, conditional), eps, exact_fallback)


def cpd_one_variable_check(fseq: Sequence, gseq: Sequence, N: int | None = None,
                           eps: float = DEFAULT_PSD_EPS) -> PsdResult:
    """Positivity of the Hankel matrix of the coefficients of ``f(z g(z)) g(z)``."""
    N = min(len(fseq), len(gseq)) - 1 if N is None else N
    f = NcSeries(1, N, {(1,) * n: v for n, v in enumerate(fseq[:N + 1])})
    g = NcSeries(1, N, {(1,) * n: v for n, v in enumerate(gseq[:N + 1])})
    z = NcSeries.variable(1, 1, N)
    h = f.substitute([z * g]) * g
    return psd_check(h, N // 2, eps=eps)


def composite_sequence(fseq: Sequence, gseq: Sequence, N: int) -> list:
    f = NcSeries(1, N, {(1,) * n: v for n, v in enumerate(fseq[:N + 1])})
    g = NcSeries(1, N, {(1,) * n: v for n, v in enumerate(gseq[:N + 1])})
    h = f.substitute([NcSeries.variable(1, 1, N) * g]) * g
    return [h.coeff((1,) * n) for n in range(N + 1)]
