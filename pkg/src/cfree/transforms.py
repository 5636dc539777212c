"""Maps on functionals: convolutions, powers, Phi[rho, psi] and B_{a,t}.

Every map works on arbitrary (not necessarily positive) functionals and is
exact.  Convolution powers take any rational exponent.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .cumulants import (
    CumulantSeries,
    Functional,
    boolean_from_moments,
    free_from_moments,
    moments_from_boolean,
    moments_from_free,
)
from .partitions import nc_prime_table
from .series import AlphabetMismatch, NcSeries, as_fraction, inverse_map


class TransformError(ValueError):
    pass


def _same_d(*fs):
    if len({f.d for f in fs}) > 1:
        raise AlphabetMismatch("functionals over different alphabets")


def _vector(a, d: int) -> list:
    if isinstance(a, (int, Fraction, str)):
        return [as_fraction(a)] * d
    a = [as_fraction(x) for x in a]
    if len(a) != d:
        raise ValueError(f"vector of length {len(a)} for alphabet of size {d}")
    return a


def delta_state(a: Sequence, N: int, d: int | None = None) -> Functional:
    """The multiplicative functional ``P -> P(a_1, ..., a_d)``."""
    d = len(a) if d is None else d
    a = _vector(a, d)

    def moment(w):
        out = Fraction(1)
        for i in w:
            out *= a[i - 1]
        return out

    return Functional.from_moment_function(moment, d, N, name=f"delta{tuple(map(str, a))}")


def linear_series(a, d: int, N: int) -> NcSeries:
    """``sum_i a_i z_i``; both the free and the Boolean cumulants of ``delta_a``."""
    return NcSeries.linear(_vector(a, d), N)


# -- convolutions --------------------------------------------------------------

def free_convolve(a: Functional, b: Functional) -> Functional:
    _same_d(a, b)
    return moments_from_free(free_from_moments(a).series + free_from_moments(b).series)


def boolean_convolve(a: Functional, b: Functional) -> Functional:
    _same_d(a, b)
    return moments_from_boolean(boolean_from_moments(a).series + boolean_from_moments(b).series)


def free_power(a: Functional, t) -> Functional:
    return moments_from_free(free_from_moments(a).series.scale(t))


def boolean_power(a: Functional, t) -> Functional:
    return moments_from_boolean(boolean_from_moments(a).series.scale(t))


def monotone_convolve(tau: Functional, psi: Functional) -> Functional:
    """``1 + M^{tau > psi}(w) = (1 + M^tau((1 + M^psi(w)) w)) (1 + M^psi(w))``."""
    _same_d(tau, psi)
    g = psi.moments
    return Functional(tau.moments.dilate(g) * g)


def bercovici_pata(phi: Functional) -> Functional:
    """Boolean-to-free bijection: the functional whose free cumulants are ``eta^phi``."""
    return moments_from_free(boolean_from_moments(phi).series)


def bercovici_pata_inverse(rho: Functional) -> Functional:
    """Inverse bijection: Boolean cumulants equal to ``R^rho``."""
    return moments_from_boolean(free_from_moments(rho).series)


# -- Phi -----------------------------------------------------------------------

def phi_eta(rho_cumulants: NcSeries, psi: Functional) -> NcSeries:
    """``(1 + M^psi(w))^{-1} R((1 + M^psi(w)) w)`` for a given cumulant series ``R``."""
    g = psi.moments
    return g.reciprocal() * rho_cumulants.dilate(g)


def phi_map(rho: Functional, psi: Functional) -> Functional:
    """``Phi[rho, psi]``: the functional whose two-state cumulants against ``psi`` are ``R^rho``."""
    _same_d(rho, psi)
    return moments_from_boolean(phi_eta(free_from_moments(rho).series, psi))


def phi_one_arg(psi: Functional) -> Functional:
    """``Phi[psi]`` with ``eta(w) = sum_i w_i (1 + M^psi(w)) w_i``."""
    d, N = psi.d, psi.N
    eta = NcSeries.zero(d, N)
    for i in range(1, d + 1):
        zi = NcSeries.variable(i, d, N)
        eta = eta + zi * psi.moments * zi
    return moments_from_boolean(eta)


def phi_free(tau: Functional) -> Functional:
    """``Phi_free[tau]``: free cumulants ``sum_i z_i (1 + M^tau(z)) z_i``."""
    d, N = tau.d, tau.N
    r = NcSeries.zero(d, N)
    for i in range(1, d + 1):
        zi = NcSeries.variable(i, d, N)
        r = r + zi * tau.moments * zi
    return moments_from_free(r)


# -- B_{a,t} -------------------------------------------------------------------

def b_map(rho: Functional, a, t) -> Functional:
    """``B_{a,t}[rho] = ((rho^{free 1+t} free delta_a) bool delta_{-a})^{bool 1/(1+t)}``.

    Computed on cumulant series: free cumulants ``(1+t) R^rho + a.z`` give an
    intermediate functional whose Boolean cumulants, minus ``a.z`` and divided
    by ``1+t``, are the answer's.
    """
    t = as_fraction(t)
    if t == -1:
        raise TransformError("B_{a,t} is undefined at t = -1; use phi_map(rho, delta_a) instead")
    d, N = rho.d, rho.N
    lin = linear_series(a, d, N)
    inner = moments_from_free(free_from_moments(rho).series.scale(1 + t) + lin)
    eta = (boolean_from_moments(inner).series - lin).scale(1 / (1 + t))
    return moments_from_boolean(eta)


def b_map_composite(rho: Functional, a, t) -> Functional:
    """``B_{a,t}`` assembled literally from the four primitive maps; cross-check for :func:`b_map`."""
    t = as_fraction(t)
    if t == -1:
        raise TransformError("B_{a,t} is undefined at t = -1")
    a = _vector(a, rho.d)
    step = free_convolve(free_power(rho, 1 + t), delta_state(a, rho.N))
    step = boolean_convolve(step, delta_state([-x for x in a], rho.N))
    return boolean_power(step, 1 / (1 + t))


def fermi_image(rho: Functional) -> Functional:
    """Boolean-to-Fermi bijection: ``B_{mean(rho), 0}[rho]``."""
    return b_map(rho, rho.mean(), 0)


def b_t_eta_oracle(rho: Functional, a, t, word) -> Fraction:
    """Boolean cumulant of ``B_{a,t}[rho]`` at ``word`` by direct partition summation.

    Sums over ``pi`` in NC'(n) and subsets ``S`` of its singletons: ``S``
    contributes ``prod a``, the remaining blocks contribute ``t^{#-1} prod eta^rho``.
    """
    word = tuple(word)
    n = len(word)
    t = as_fraction(t)
    a = _vector(a, rho.d)
    eta = boolean_from_moments(rho).series
    if n == 1:
        return eta[word]
    total = Fraction(0)
    for blocks in nc_prime_table(n):
        singles = [k for k, b in enumerate(blocks) if len(b) == 1]
        for r in range(len(singles) + 1):
            for S in combinations(singles, r):
                term = t ** (len(blocks) - r - 1)
                for k, b in enumerate(blocks):
                    if k in S:
                        term *= a[word[b[0]] - 1]
                    else:
                        term *= eta[tuple(word[i] for i in b)]
                    if not term:
                        break
                total += term
    return total


def b_a_eta_oracle(rho: Functional, a, word) -> Fraction:
    """Boolean cumulant of ``B_{a,0}[rho]``: sum over ``{1, n} <= L``, ``a`` on positions outside ``L``."""
    word = tuple(word)
    n = len(word)
    a = _vector(a, rho.d)
    eta = boolean_from_moments(rho).series
    if n == 1:
        return eta[word]
    total = Fraction(0)
    middle = range(1, n - 1)
    for r in range(n - 1):
        for inside in combinations(middle, r):
            lam = (0,) + inside + (n - 1,)
            term = eta[tuple(word[i] for i in lam)]
            for i in middle:
                if i not in inside:
                    term *= a[word[i] - 1]
            total += term
    return total


# -- one-variable orthogonal convolution ---------------------------------------

def orthogonal_convolve(tau: Functional, psi: Functional) -> Functional:
    """``tau |- psi = Phi[B[tau], psi]``; defined for one variable only."""
    if tau.d != 1 or psi.d != 1:
        raise TransformError("orthogonal convolution is defined for one variable only")
    return phi_map(b_map(tau, 0, 1), psi)


# -- recovering psi ------------------------------------------------------------

def recover_psi(rho: Functional, phi: Functional) -> Functional:
    """The ``psi`` with ``Phi[rho, psi] = phi``.

    ``(1 + M^psi(w)) w_i`` is the i-th component of ``(D R^rho)^{<-1>}(D eta^phi)``
    once the common constant terms (the means) are removed.  The result is
    determined two degrees below the truncation of the inputs.
    """
    _same_d(rho, phi)
    d = rho.d
    N = min(rho.N, phi.N)
    if N < 2:
        raise TransformError("need truncation degree >= 2 to recover psi")
    r = free_from_moments(rho.truncate(N)).series
    eta = boolean_from_moments(phi.truncate(N)).series
    F, T = [], []
    for i in range(1, d + 1):
        Fi, Ti = r.left_derivative(i), eta.left_derivative(i)
        Fi, Ti = Fi.truncate(N - 1), Ti.truncate(N - 1)
        if Fi.const != Ti.const:
            raise TransformError(f"means differ in coordinate {i}: phi is not Phi[rho, .] of anything")
        F.append(Fi - Fi.const)
        T.append(Ti - Ti.const)
    try:
        Z = inverse_map(F, T)
    except ValueError as exc:
        raise TransformError("covariance block of R^rho (degree 2) is singular; "
                             "psi is underdetermined from degree 0 on") from exc
    moments = {(): Fraction(1)}
    for i, z in enumerate(Z, start=1):
        for w, v in z.items():
            if not w or w[-1] != i:
                if v:
                    raise TransformError(f"component {i} has term {w} not ending in w_{i}")
                continue
            key = w[:-1]
            if key in moments and moments[key] != v:
                raise TransformError(f"inconsistent psi moment at word {key}")
            moments[key] = v
    return Functional(NcSeries(d, N - 2, moments))


# -- identity checks -----------------------------------------------------------

@dataclass
class IdentityReport:
    """Exact coefficient-wise comparison of two functionals."""

    name: str
    lhs: Functional
    rhs: Functional
    difference: NcSeries = field(init=False)
    first_failure: tuple | None = field(init=False)

    def __post_init__(self):
        self.difference = self.lhs.moments - self.rhs.moments
        self.first_failure = self.lhs.moments.first_difference(self.rhs.moments)

    @property
    def ok(self) -> bool:
        return self.first_failure is None


def evolution_check(rho: Functional, psi: Functional, a, t) -> dict:
    """Both sides of the evolution identities, compared exactly.

    ``b``: ``Phi[rho, psi + rho^t + delta_a] = B_{a,t}[Phi[rho, psi]]`` (free ``+``).
    ``a``: ``Phi[rho^t + delta_a, psi] = Phi[rho, psi]^{bool t} bool delta_a``.
    """
    _same_d(rho, psi)
    t = as_fraction(t)
    N = min(rho.N, psi.N)
    rho, psi = rho.truncate(N), psi.truncate(N)
    delta = delta_state(_vector(a, rho.d), N)
    base = phi_map(rho, psi)
    lhs_b = phi_map(rho, free_convolve(free_convolve(psi, free_power(rho, t)), delta))
    rhs_b = b_map(base, a, t)
    lhs_a = phi_map(free_convolve(free_power(rho, t), delta), psi)
    rhs_a = boolean_convolve(boolean_power(base, t), delta)
    return {
        "t": t,
        "a": _vector(a, rho.d),
        "part_b": IdentityReport("Phi[rho, psi + rho^t + delta_a] = B_{a,t}[Phi[rho, psi]]", lhs_b, rhs_b),
        "part_a": IdentityReport("Phi[rho^t + delta_a, psi] = Phi[rho, psi]^t (+) delta_a", lhs_a, rhs_a),
    }


@dataclass(frozen=True)
class MapDescriptor:
    """A named map with exact rational parameters, applied via ``__call__``."""

    kind: str
    t: Fraction | None = None
    a: tuple | None = None

    KINDS = ("free-conv", "boolean-conv", "monotone-conv", "orthogonal-conv", "free-power",
             "boolean-power", "delta", "phi-map", "b-map")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown map kind {self.kind!r}")
        if self.t is not None:
            object.__setattr__(self, "t", as_fraction(self.t))
        if self.a is not None:
            object.__setattr__(self, "a", tuple(as_fraction(x) for x in self.a))

    def __call__(self, *fs: Functional, N: int | None = None) -> Functional:
        k = self.kind
        if k == "free-conv":
            return free_convolve(*fs)
        if k == "boolean-conv":
            return boolean_convolve(*fs)
        if k == "monotone-conv":
            return monotone_convolve(*fs)
        if k == "orthogonal-conv":
            return orthogonal_convolve(*fs)
        if k == "free-power":
            return free_power(fs[0], self.t)
        if k == "boolean-power":
            return boolean_power(fs[0], self.t)
        if k == "delta":
            return delta_state(self.a, N)
        if k == "phi-map":
            return phi_map(*fs)
        return b_map(fs[0], self.a, self.t)
