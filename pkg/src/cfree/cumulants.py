"""Moment/cumulant conversions: Boolean, free and two-state (c-free).

Each conversion has a generating-function implementation built from
:mod:`cfree.series` and an independent partition-sum implementation (the
``*_by_partitions`` functions) that sums over interval or non-crossing
partitions.  The two are kept separate on purpose; tests compare them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from operator import itemgetter

from .partitions import interval_table, nc_table
from .series import AlphabetMismatch, NcSeries, solve_dilation, solve_dilation_fixed_point

KINDS = ("boolean", "free", "two-state")


@dataclass(frozen=True, eq=False)
class Functional:
    """Unital linear functional on non-commutative polynomials, given by its moments.

    ``moments`` holds ``f[x_u]`` for every word ``u`` up to degree ``N``;
    the empty word carries 1.  Positivity is not assumed.
    """

    moments: NcSeries
    name: str = ""

    def __post_init__(self):
        if self.moments.const != 1:
            raise ValueError("a functional must have moment 1 on the empty word")

    @property
    def d(self) -> int:
        return self.moments.d

    @property
    def N(self) -> int:
        return self.moments.N

    @property
    def M(self) -> NcSeries:
        """Moment generating function without the constant term."""
        return self.moments.without_constant()

    def __getitem__(self, word):
        return self.moments[word]

    def __eq__(self, other):
        if not isinstance(other, Functional):
            return NotImplemented
        return self.moments == other.moments

    __hash__ = None

    def truncate(self, N: int) -> "Functional":
        return Functional(self.moments.truncate(N), self.name)

    def mean(self) -> list:
        return [self.moments.coeff((i,)) for i in range(1, self.d + 1)]

    def is_reversal_symmetric(self) -> bool:
        return self.moments == self.moments.reversed()

    @classmethod
    def from_moment_function(cls, fn, d: int, N: int, name: str = "") -> "Functional":
        s = NcSeries.from_function(fn, d, N, min_degree=1)
        return cls(s + 1, name)

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"Functional({label}{self.moments!r})"


@dataclass(frozen=True, eq=False)
class CumulantSeries:
    kind: str
    series: NcSeries

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown cumulant kind {self.kind!r}")
        if self.series.const:
            raise ValueError("cumulant series must have zero constant term")

    @property
    def d(self):
        return self.series.d

    @property
    def N(self):
        return self.series.N

    def __getitem__(self, word):
        return self.series[word]

    def __eq__(self, other):
        if isinstance(other, CumulantSeries):
            return self.series == other.series
        if isinstance(other, NcSeries):
            return self.series == other
        return NotImplemented

    __hash__ = None


def _as_series(r) -> NcSeries:
    return r.series if isinstance(r, CumulantSeries) else r


def _same_alphabet(*fs):
    if len({f.d for f in fs}) > 1:
        raise AlphabetMismatch("functionals over different alphabets")


# -- Boolean -------------------------------------------------------------------

def boolean_from_moments(f: Functional) -> CumulantSeries:
    """``eta = 1 - (1 + M)^{-1}``."""
    eta = 1 - f.moments.reciprocal()
    return CumulantSeries("boolean", eta)


def moments_from_boolean(e) -> Functional:
    eta = _as_series(e)
    if eta.const:
        raise ValueError("Boolean cumulant series must have zero constant term")
    return Functional((1 - eta).reciprocal())


# -- free ----------------------------------------------------------------------

def free_from_moments(f: Functional) -> CumulantSeries:
    """Solve ``M(w) = R((1 + M(w)) w)`` for ``R`` degree by degree."""
    return CumulantSeries("free", solve_dilation(f.M, f.moments))


def moments_from_free(r) -> Functional:
    """Moments from free cumulants by solving ``M = R((1 + M) w)`` for ``M``."""
    return Functional(solve_dilation_fixed_point(_as_series(r)) + 1)


# -- two-state -----------------------------------------------------------------

def two_state_from_pair(phi: Functional, psi: Functional) -> CumulantSeries:
    """``R^{phi,psi}`` from ``(1 + M^psi) eta^phi = R^{phi,psi}((1 + M^psi) w)``."""
    _same_alphabet(phi, psi)
    g = psi.moments
    eta = boolean_from_moments(phi).series
    return CumulantSeries("two-state", solve_dilation(g * eta, g))


def pair_moments_from_two_state(r, psi: Functional) -> Functional:
    """Moments of ``phi`` from ``R^{phi,psi}`` via the non-crossing partition sum.

    Outer blocks carry ``r``, inner blocks carry the free cumulants of ``psi``.
    """
    r = _as_series(r)
    if r.d != psi.d:
        raise AlphabetMismatch("cumulant series and psi over different alphabets")
    if r.const:
        raise ValueError("two-state cumulant series must have zero constant term")
    N = min(r.N, psi.N)
    rpsi = free_from_moments(psi).series
    return Functional(_nc_sum(r.d, N, r, rpsi) + 1)


# -- partition-sum oracles -----------------------------------------------------

def _block_word(w, block):
    return tuple(w[i] for i in block)


def _getter(block):
    if len(block) == 1:
        i = block[0]
        return lambda w: (w[i],)
    return itemgetter(*block)


def _compile(rows):
    """``(blocks, flags)`` rows as ``((getter, flag), ...)`` tuples."""
    return [tuple((_getter(b), flag) for b, flag in zip(blocks, flags)) for blocks, flags in rows]


def _pairs(coeffs: dict) -> dict:
    return {w: (v.numerator, v.denominator) for w, v in coeffs.items()}


def _row_sum(w, rows, tables) -> Fraction:
    """Exact ``sum_rows prod_blocks table[flag][block word]``.

    Terms are multiplied as unreduced integer pairs and grouped by
    denominator, so only one reduction per distinct denominator is needed.
    """
    acc = {}
    for row in rows:
        num = den = 1
        for get, flag in row:
            v = tables[flag].get(get(w))
            if v is None:
                break
            num *= v[0]
            den *= v[1]
        else:
            acc[den] = acc.get(den, 0) + num
    return sum((Fraction(n, d) for d, n in acc.items()), Fraction(0))


def _nc_sum(d, N, outer_series, inner_series) -> NcSeries:
    """``sum_{pi in NC(n)} prod_outer outer[B] prod_inner inner[C]`` for all words."""
    oc = outer_series._c if hasattr(outer_series, "_c") else outer_series
    ic = inner_series._c if hasattr(inner_series, "_c") else inner_series
    tables = {True: _pairs(oc), False: _pairs(ic)}
    out = {}
    for n in range(1, N + 1):
        rows = _compile(nc_table(n))
        for w in product(range(1, d + 1), repeat=n):
            s = _row_sum(w, rows, tables)
            if s:
                out[w] = s
    return NcSeries._raw(d, N, out)


def _solve_partition_sum(f: Functional, table_for, inner=None) -> NcSeries:
    """Cumulants ``c`` from ``f[w] = sum_pi prod_B c_or_inner[B]``, peeling the one-block term.

    ``table_for(n)`` yields ``(blocks, flags)`` rows including the one-block
    partition; blocks flagged True read the unknown cumulants, the others
    read the fixed dict ``inner``.
    """
    d, N = f.d, f.N
    c: dict = {}
    tables = {True: {}, False: _pairs(inner or {})}
    for n in range(1, N + 1):
        rows = _compile(row for row in table_for(n) if len(row[0]) > 1)
        for w in product(range(1, d + 1), repeat=n):
            s = f.moments.coeff(w) - _row_sum(w, rows, tables)
            if s:
                c[w] = s
                tables[True][w] = (s.numerator, s.denominator)
    return NcSeries._raw(d, N, c)


def _all_flagged(rows):
    return [(blocks, (True,) * len(blocks)) for blocks in rows]


def boolean_by_partitions(f: Functional) -> CumulantSeries:
    """Boolean cumulants from the interval-partition expansion of the moments."""
    return CumulantSeries("boolean", _solve_partition_sum(
        f, lambda n: _all_flagged(interval_table(n))))


def free_by_partitions(f: Functional) -> CumulantSeries:
    """Free cumulants from the non-crossing-partition expansion of the moments."""
    return CumulantSeries("free", _solve_partition_sum(
        f, lambda n: _all_flagged(b for b, _ in nc_table(n))))


def two_state_by_partitions(phi: Functional, psi: Functional) -> CumulantSeries:
    """``R^{phi,psi}`` from the defining sum over NC(n) with outer/inner blocks.

    The free cumulants of ``psi`` come from :func:`free_by_partitions`, so this
    path never touches series algebra.
    """
    _same_alphabet(phi, psi)
    N = min(phi.N, psi.N)
    rpsi = free_by_partitions(psi.truncate(N)).series._c
    return CumulantSeries("two-state", _solve_partition_sum(phi.truncate(N), nc_table, rpsi))


def moments_from_free_by_partitions(r) -> Functional:
    r = _as_series(r)
    return Functional(_nc_sum(r.d, r.N, r, r) + 1)


def moments_from_boolean_by_partitions(e) -> Functional:
    eta = _as_series(e)
    out = {}
    for n in range(1, eta.N + 1):
        for w in product(range(1, eta.d + 1), repeat=n):
            s = 0
            for blocks in interval_table(n):
                term = 1
                for b in blocks:
                    v = eta._c.get(_block_word(w, b))
                    if not v:
                        term = 0
                        break
                    term *= v
                s += term
            if s:
                out[w] = s
    return Functional(NcSeries._raw(eta.d, eta.N, out) + 1)
