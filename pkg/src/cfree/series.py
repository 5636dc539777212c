"""Truncated non-commutative power series with exact rational coefficients.

A series in ``d`` non-commuting indeterminates ``z_1, ..., z_d`` is stored as
a sparse mapping from words (tuples of letters in ``1..d``) to ``Fraction``.
Every series carries its truncation degree ``N``; binary operations combine
truncations by ``min`` and equality only looks at the common range.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Word = tuple


class AlphabetMismatch(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def words(d: int, max_degree: int, min_degree: int = 0) -> Iterator[Word]:
    """All words over ``1..d`` ordered by (degree, lexicographic)."""
    letters = range(1, d + 1)
    for n in range(min_degree, max_degree + 1):
        yield from product(letters, repeat=n)


def word_key(w: Word):
    return (len(w), w)


@lru_cache(maxsize=None)
def dilation_terms(n: int) -> tuple:
    """Position sets used to expand ``a(g*w_1, ..., g*w_d)`` at length ``n``.

    Each entry is ``(chosen, gaps)``: ``chosen`` are the positions carrying
    letters of ``a`` (always ending with ``n - 1``) and ``gaps`` the half-open
    ranges between them that carry coefficients of ``g``.  Entries are sorted
    so that the one with every position chosen comes last.
    """
    if n == 0:
        return ((), ())
    out = []
    for k in range(n):
        for head in combinations(range(n - 1), k):
            chosen = head + (n - 1,)
            gaps = []
            prev = -1
            for p in chosen:
                if p - prev > 1:
                    gaps.append((prev + 1, p))
                prev = p
            out.append((chosen, tuple(gaps)))
    return tuple(out)


class NcSeries:
    """Immutable truncated series; zero coefficients are never stored."""

    __slots__ = ("d", "N", "_c")

    def __init__(self, d: int, N: int, coeffs: Mapping | Iterable = ()):
        if d < 1:
            raise ValueError("alphabet size must be positive")
        if N < 0:
            raise ValueError("truncation degree must be non-negative")
        self.d = d
        self.N = N
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c = {}
        for w, v in items:
            w = tuple(w)
            if len(w) > N:
                continue
            for letter in w:
                if not 1 <= letter <= d:
                    raise ValueError(f"letter {letter} outside 1..{d} in word {w}")
            v = as_fraction(v)
            if v:
                c[w] = c.get(w, 0) + v
                if not c[w]:
                    del c[w]
        self._c = c

    @classmethod
    def _raw(cls, d: int, N: int, c: dict) -> "NcSeries":
        s = object.__new__(cls)
        s.d, s.N, s._c = d, N, c
        return s

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, d: int, N: int) -> "NcSeries":
        return cls._raw(d, N, {})

    @classmethod
    def constant(cls, value, d: int, N: int) -> "NcSeries":
        return cls(d, N, {(): value})

    @classmethod
    def one(cls, d: int, N: int) -> "NcSeries":
        return cls.constant(1, d, N)

    @classmethod
    def variable(cls, i: int, d: int, N: int) -> "NcSeries":
        return cls(d, N, {(i,): 1})

    @classmethod
    def monomial(cls, word: Sequence[int], coeff, d: int, N: int) -> "NcSeries":
        return cls(d, N, {tuple(word): coeff})

    @classmethod
    def linear(cls, a: Sequence, N: int) -> "NcSeries":
        """``sum_i a_i z_i``."""
        return cls(len(a), N, {(i + 1,): ai for i, ai in enumerate(a)})

    @classmethod
    def from_function(cls, fn: Callable[[Word], object], d: int, N: int,
                      min_degree: int = 0) -> "NcSeries":
        return cls(d, N, ((w, fn(w)) for w in words(d, N, min_degree)))

    # -- access -------------------------------------------------------------
    def __getitem__(self, w) -> Fraction:
        w = tuple(w)
        if len(w) > self.N:
            raise IndexError(f"word {w} beyond truncation degree {self.N}")
        return self._c.get(w, Fraction(0))

    def coeff(self, w) -> Fraction:
        return self._c.get(tuple(w), Fraction(0))

    def items(self):
        """Nonzero coefficients in canonical (degree, lexicographic) order."""
        return sorted(self._c.items(), key=lambda kv: word_key(kv[0]))

    def support(self):
        return self._c.keys()

    @property
    def const(self) -> Fraction:
        return self._c.get((), Fraction(0))

    def degree_part(self, n: int) -> "NcSeries":
        return NcSeries._raw(self.d, self.N, {w: v for w, v in self._c.items() if len(w) == n})

    def truncate(self, N: int) -> "NcSeries":
        N = min(N, self.N)
        return NcSeries._raw(self.d, N, {w: v for w, v in self._c.items() if len(w) <= N})

    def without_constant(self) -> "NcSeries":
        c = dict(self._c)
        c.pop((), None)
        return NcSeries._raw(self.d, self.N, c)

    def reversed(self) -> "NcSeries":
        return NcSeries._raw(self.d, self.N, {w[::-1]: v for w, v in self._c.items()})

    def is_zero(self) -> bool:
        return not self._c

    # -- comparison ---------------------------------------------------------
    def first_difference(self, other: "NcSeries"):
        """``(word, self[word] - other[word])`` for the first differing word, or None."""
        self._check(other)
        N = min(self.N, other.N)
        keys = {w for w in self._c if len(w) <= N} | {w for w in other._c if len(w) <= N}
        for w in sorted(keys, key=word_key):
            diff = self.coeff(w) - other.coeff(w)
            if diff:
                return w, diff
        return None

    def __eq__(self, other):
        if not isinstance(other, NcSeries):
            return NotImplemented
        if self.d != other.d:
            return False
        return self.first_difference(other) is None

    __hash__ = None

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "NcSeries"):
        if self.d != other.d:
            raise AlphabetMismatch(f"alphabet sizes differ: {self.d} != {other.d}")

    def _coerce(self, other) -> "NcSeries":
        if isinstance(other, NcSeries):
            self._check(other)
            return other
        return NcSeries.constant(other, self.d, self.N)

    def __add__(self, other):
        other = self._coerce(other)
        N = min(self.N, other.N)
        c = {w: v for w, v in self._c.items() if len(w) <= N}
        for w, v in other._c.items():
            if len(w) <= N:
                s = c.get(w, 0) + v
                if s:
                    c[w] = s
                else:
                    c.pop(w, None)
        return NcSeries._raw(self.d, N, c)

    __radd__ = __add__

    def __neg__(self):
        return NcSeries._raw(self.d, self.N, {w: -v for w, v in self._c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k) -> "NcSeries":
        k = as_fraction(k)
        if not k:
            return NcSeries.zero(self.d, self.N)
        return NcSeries._raw(self.d, self.N, {w: k * v for w, v in self._c.items()})

    def __mul__(self, other):
        if not isinstance(other, NcSeries):
            return self.scale(other)
        self._check(other)
        N = min(self.N, other.N)
        by_degree: dict[int, list] = {}
        for w, v in other._c.items():
            if len(w) <= N:
                by_degree.setdefault(len(w), []).append((w, v))
        c: dict = {}
        for u, a in self._c.items():
            room = N - len(u)
            if room < 0:
                continue
            for n in range(room + 1):
                for v, b in by_degree.get(n, ()):
                    w = u + v
                    c[w] = c.get(w, 0) + a * b
        return NcSeries._raw(self.d, N, {w: v for w, v in c.items() if v})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = NcSeries.one(self.d, self.N)
        for _ in range(k):
            out = out * self
        return out

    def reciprocal(self) -> "NcSeries":
        """Two-sided inverse of a series with invertible constant term."""
        a0 = self.const
        if not a0:
            raise ZeroDivisionError("series has zero constant term; no reciprocal")
        inv0 = 1 / a0
        terms = [(u, v) for u, v in self._c.items() if u]
        b = {(): inv0}
        for n in range(1, self.N + 1):
            for w in product(range(1, self.d + 1), repeat=n):
                s = 0
                for u, v in terms:
                    k = len(u)
                    if k <= n and w[:k] == u:
                        bw = b.get(w[k:])
                        if bw:
                            s += v * bw
                if s:
                    b[w] = -inv0 * s
        return NcSeries._raw(self.d, self.N, b)

    def left_derivative(self, i: int) -> "NcSeries":
        """``D_i``: strip a leading ``z_i``, drop words starting otherwise."""
        if not 1 <= i <= self.d:
            raise IndexError(f"variable index {i} outside 1..{self.d}")
        return NcSeries._raw(self.d, self.N,
                             {w[1:]: v for w, v in self._c.items() if w and w[0] == i})

    def substitute(self, subs: Sequence["NcSeries"]) -> "NcSeries":
        """Replace ``z_i`` by ``subs[i-1]``, keeping left-to-right letter order."""
        if len(subs) != self.d:
            raise ValueError(f"need {self.d} substituents, got {len(subs)}")
        d = subs[0].d
        for s in subs:
            if s.d != d:
                raise AlphabetMismatch("substituents live over different alphabets")
            if s.const:
                raise ValueError("substituent with nonzero constant term")
        N = min([self.N] + [s.N for s in subs])
        prefix = {(): NcSeries.one(d, N)}

        def product_of(w):
            p = prefix.get(w)
            if p is None:
                p = prefix[w] = product_of(w[:-1]) * subs[w[-1] - 1]
            return p

        out: dict = {}
        for w, v in self._c.items():
            if len(w) > N:
                continue
            for u, c in product_of(w)._c.items():
                out[u] = out.get(u, 0) + v * c
        return NcSeries._raw(d, N, {w: v for w, v in out.items() if v})

    def dilate(self, g: "NcSeries") -> "NcSeries":
        """``self(g*z_1, ..., g*z_d)`` where ``g`` has constant term 1.

        This is the change of variables ``z_i = (1 + M(w)) w_i`` used by every
        cumulant transform; it is computed coefficient by coefficient.
        """
        self._check(g)
        if g.const != 1:
            raise ValueError("dilation series must have constant term 1")
        N = min(self.N, g.N)
        a, gc = self._c, g._c
        out = {}
        if () in a:
            out[()] = a[()]
        for n in range(1, N + 1):
            terms = dilation_terms(n)
            for w in product(range(1, self.d + 1), repeat=n):
                s = 0
                for chosen, gaps in terms:
                    c = a.get(tuple(w[p] for p in chosen))
                    if not c:
                        continue
                    for lo, hi in gaps:
                        gv = gc.get(w[lo:hi])
                        if not gv:
                            break
                        c *= gv
                    else:
                        s += c
                if s:
                    out[w] = s
        return NcSeries._raw(self.d, N, out)

    # -- display ------------------------------------------------------------
    def __repr__(self):
        if not self._c:
            return f"NcSeries(d={self.d}, N={self.N}, 0)"
        parts = []
        for w, v in self.items():
            mono = "".join(f"z{i}" for i in w) if w else ""
            if not w:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            else:
                parts.append(f"({v})*{mono}")
        return f"NcSeries(d={self.d}, N={self.N}, " + " + ".join(parts) + ")"


def solve_dilation(target: NcSeries, g: NcSeries) -> NcSeries:
    """Find ``r`` with ``r(g*z) = target`` and ``r(0) = target(0)``.

    At length ``n`` the unknown ``r[w]`` enters ``target[w]`` with coefficient
    one (all positions chosen, no gaps), so it is peeled off after subtracting
    the contributions of shorter words of ``r``.
    """
    target._check(g)
    if g.const != 1:
        raise ValueError("dilation series must have constant term 1")
    N = min(target.N, g.N)
    gc = g._c
    r = {}
    if target.const:
        r[()] = target.const
    for n in range(1, N + 1):
        terms = dilation_terms(n)[:-1]
        for w in product(range(1, target.d + 1), repeat=n):
            s = target.coeff(w)
            for chosen, gaps in terms:
                c = r.get(tuple(w[p] for p in chosen))
                if not c:
                    continue
                for lo, hi in gaps:
                    gv = gc.get(w[lo:hi])
                    if not gv:
                        break
                    c *= gv
                else:
                    s -= c
            if s:
                r[w] = s
    return NcSeries._raw(target.d, N, r)


def solve_dilation_fixed_point(r: NcSeries) -> NcSeries:
    """Find ``m`` with zero constant term and ``m = r((1 + m)*z)``.

    The right side at length ``n`` only uses ``m`` on strictly shorter words
    (each gap is shorter than the word), so ``m`` is filled in degree by degree.
    """
    if r.const:
        raise ValueError("series must have zero constant term")
    N, rc = r.N, r._c
    m: dict = {}
    g = {(): Fraction(1)}
    for n in range(1, N + 1):
        terms = dilation_terms(n)
        new = {}
        for w in product(range(1, r.d + 1), repeat=n):
            s = 0
            for chosen, gaps in terms:
                c = rc.get(tuple(w[p] for p in chosen))
                if not c:
                    continue
                for lo, hi in gaps:
                    gv = g.get(w[lo:hi])
                    if not gv:
                        break
                    c *= gv
                else:
                    s += c
            if s:
                new[w] = s
        m.update(new)
        g.update(new)
    return NcSeries._raw(r.d, N, m)


def inverse_map(fs: Sequence[NcSeries], targets: Sequence[NcSeries] | None = None):
    """Solve ``F(Z) = T`` for a d-tuple ``Z`` without constant terms.

    ``fs`` is a d-tuple with zero constant terms whose linear part is an
    invertible matrix.  With ``targets`` omitted this returns the
    compositional inverse ``F^{<-1>}`` (``T = z``).  Degree ``n`` of ``Z``
    is determined by the linear part once the higher-order part of ``F``
    has been evaluated on the degree ``< n`` truncation of ``Z``.
    """
    from .linalg import inverse_matrix

    d = len(fs)
    N = min(f.N for f in fs)
    if targets is None:
        targets = [NcSeries.variable(i, d, N) for i in range(1, d + 1)]
    N = min([N] + [t.N for t in targets])
    for f in list(fs) + list(targets):
        if f.d != d:
            raise AlphabetMismatch("tuple length must equal alphabet size")
        if f.const:
            raise ValueError("series in the tuple must have zero constant term")
    A = [[f.coeff((j,)) for j in range(1, d + 1)] for f in fs]
    Ainv = inverse_matrix(A)
    if Ainv is None:
        raise ValueError("linear part of the map is singular")
    higher = [NcSeries._raw(d, N, {w: v for w, v in f._c.items() if 2 <= len(w) <= N}) for f in fs]
    Z = [NcSeries.zero(d, N) for _ in range(d)]
    for n in range(1, N + 1):
        Zt = [z.truncate(n - 1) if n > 1 else NcSeries.zero(d, 0) for z in Z]
        Zt = [NcSeries._raw(d, n, z._c) for z in Zt]
        hv = [h.truncate(n).substitute(Zt).degree_part(n) for h in higher]
        rhs = [targets[i].degree_part(n) - hv[i] for i in range(d)]
        for i in range(d):
            part = NcSeries.zero(d, N)
            for j in range(d):
                if Ainv[i][j]:
                    part = part + rhs[j].scale(Ainv[i][j])
            Z[i] = Z[i] + NcSeries._raw(d, N, part._c)
    return Z
