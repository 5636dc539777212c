"""Finite-dimensional Fock-space models.

States and cumulant functionals are realized as vacuum expectations of
creation, annihilation and gauge operators on truncated Boolean or full Fock
spaces.  Rational input data gives exact (object-dtype) matrices; float data
gives ``scipy.sparse`` matrices.  Vacuum moments are always handed back as
exact ``Fraction`` values (``Fraction(float)`` is lossless), so they can feed
the series pipeline directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np
import scipy.sparse as sp

from .cumulants import Functional, moments_from_free
from .linalg import orthogonal_basis
from .meixner import DEFAULT_PSD_EPS, gram_words
from .series import NcSeries, words

ROLES = ("state", "boolean", "free")
MAX_EXACT_SIZE = 1500
MAX_FLOAT_SIZE = 200_000
GNS_EPS = 1e-10
MAX_EXACT_GNS = 160  # Gram sizes above this use the float eigen-compression
UNIT_TOL = 1e-9  # GNS-built unit vectors carry eigen-solver rounding


class ModelError(ValueError):
    pass


def _is_exact(a) -> bool:
    return isinstance(a, np.ndarray) and a.dtype == object


def _as_array(m, exact: bool):
    if exact:
        return np.array([[Fraction(x) for x in row] for row in np.atleast_2d(np.asarray(m, dtype=object))],
                        dtype=object)
    return np.atleast_2d(np.asarray(m, dtype=float))


def _as_vector(v, exact: bool):
    if exact:
        return np.array([Fraction(x) for x in np.ravel(np.asarray(v, dtype=object))], dtype=object)
    return np.ravel(np.asarray(v, dtype=float))


@dataclass
class OperatorData:
    """Base-space data ``(dim, vectors, ops, scalars)``.

    ``role='state'``: one unit vector ``xi`` and operators ``K_i``; the state
    is ``<xi, K_u xi>``.  ``role='boolean'``: vectors ``eps_i``, operators
    ``S_i`` and scalars ``alpha_i``.  ``role='free'``: vectors ``zeta_i``,
    operators ``H_i`` and scalars ``lambda_i`` (this also encodes a
    conditionally positive functional).  Entries are all ``Fraction``
    (exact mode) or all float.
    """

    role: str
    ops: list
    vectors: list
    scalars: list = field(default_factory=list)
    exact: bool | None = None

    def __post_init__(self):
        if self.role not in ROLES:
            raise ModelError(f"unknown role {self.role!r}")
        if self.exact is None:
            probe = [np.asarray(m, dtype=object).ravel() for m in self.ops + self.vectors]
            self.exact = all(isinstance(x, (Fraction, int)) for arr in probe for x in arr)
        self.ops = [_as_array(m, self.exact) for m in self.ops]
        self.vectors = [_as_vector(v, self.exact) for v in self.vectors]
        zero = Fraction(0) if self.exact else 0.0
        self.scalars = [(Fraction(s) if self.exact else float(s)) for s in self.scalars] or [zero] * len(self.ops)
        n = self.dim
        for m in self.ops:
            if m.shape != (n, n):
                raise ModelError(f"operator of shape {m.shape} on a {n}-dimensional space")
        for v in self.vectors:
            if v.shape != (n,):
                raise ModelError(f"vector of length {v.shape[0]} in a {n}-dimensional space")
        if self.role == "state":
            if len(self.vectors) != 1:
                raise ModelError("state data carries exactly one distinguished vector")
        elif len(self.vectors) != len(self.ops) or len(self.scalars) != len(self.ops):
            raise ModelError("need one vector and one scalar per variable")

    @property
    def d(self) -> int:
        return len(self.ops)

    @property
    def dim(self) -> int:
        return self.ops[0].shape[0] if self.ops else self.vectors[0].shape[0]

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        return all(_symmetric(m, tol) for m in self.ops)


def _symmetric(m, tol=1e-12) -> bool:
    if sp.issparse(m):
        diff = (m - m.T)
        return diff.nnz == 0 or abs(diff).max() <= tol
    if _is_exact(m):
        return bool((m == m.T).all())
    return bool(np.abs(m - m.T).max(initial=0.0) <= tol)


# -- matrix backend ------------------------------------------------------------

def _eye(n, exact):
    if exact:
        e = np.full((n, n), Fraction(0), dtype=object)
        for i in range(n):
            e[i, i] = Fraction(1)
        return e
    return sp.identity(n, format="csr")


def _kron(a, b, exact):
    if exact:
        return np.kron(a, b)
    return sp.kron(sp.csr_matrix(a), sp.csr_matrix(b), format="csr")


def _check_size(size: int, exact: bool):
    """Refuse oversized models before any block is built."""
    if exact and size > MAX_EXACT_SIZE:
        raise ModelError(f"exact model of size {size} exceeds {MAX_EXACT_SIZE}; use float data")
    if size > MAX_FLOAT_SIZE:
        raise ModelError(f"model of size {size} exceeds {MAX_FLOAT_SIZE}")


def _assemble(level_dims, blocks, exact):
    """Block matrix on ``⊕ levels`` from ``{(row_level, col_level): block}``."""
    offs = np.concatenate([[0], np.cumsum(level_dims)]).astype(int)
    size = int(offs[-1])
    _check_size(size, exact)
    if exact:
        out = np.full((size, size), Fraction(0), dtype=object)
        for (r, c), b in blocks.items():
            out[offs[r]:offs[r + 1], offs[c]:offs[c + 1]] += b
        return out
    rows, cols, vals = [], [], []
    for (r, c), b in blocks.items():
        b = sp.coo_matrix(b)
        rows.append(b.row + offs[r])
        cols.append(b.col + offs[c])
        vals.append(b.data)
    if not rows:
        return sp.csr_matrix((size, size))
    return sp.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                         shape=(size, size))


# -- models --------------------------------------------------------------------

@dataclass
class FockModel:
    kind: str
    depth: int | None
    base: OperatorData
    ops: list
    vacuum: int = 0
    vacuum_vector: object = None

    @property
    def size(self) -> int:
        return self.ops[0].shape[0]

    @property
    def exact(self) -> bool:
        return self.base.exact

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        return all(_symmetric(m, tol) for m in self.ops)


def build_boolean_model(data: OperatorData) -> FockModel:
    """Operators ``a^+_{eps_i} + a^-_{eps_i} + S_i + alpha_i P_Omega`` on ``C Omega ⊕ K``."""
    if data.role == "state":
        raise ModelError("Boolean models take (eps_i, S_i, alpha_i) data")
    ex = data.exact
    ops = []
    for S, eps, alpha in zip(data.ops, data.vectors, data.scalars):
        col = eps.reshape(-1, 1)
        blocks = {(0, 0): _as_array([[alpha]], ex), (1, 0): col, (0, 1): col.T.copy(), (1, 1): S}
        ops.append(_assemble([1, data.dim], blocks, ex))
    return FockModel("boolean", None, data, ops)


def build_full_model(data: OperatorData, L: int, N: int | None = None) -> FockModel:
    """Full Fock space truncated at level ``L``: ``a^+_{zeta_i} + a^-_{zeta_i} + p(H_i) + lambda_i I``.

    Creation out of level ``L`` is dropped.  A word of length ``n`` that starts
    and ends at the vacuum never climbs above level ``n/2``, so moments of
    degree ``<= L`` are exact; ``N > L`` is rejected.
    """
    if data.role == "state":
        raise ModelError("full Fock models take (zeta_i, H_i, lambda_i) data")
    if N is not None and L < N:
        raise ModelError(f"truncation level L={L} is below the moment degree N={N}")
    ex, h = data.exact, data.dim
    dims = [h ** n for n in range(L + 1)]
    _check_size(sum(dims), ex)
    ops = []
    for H, zeta, lam in zip(data.ops, data.vectors, data.scalars):
        blocks = {}
        col = zeta.reshape(-1, 1)
        for n in range(L):
            cr = _kron(col, _eye(dims[n], ex), ex)
            blocks[(n + 1, n)] = cr
            blocks[(n, n + 1)] = cr.T.copy() if ex else cr.T
        for n in range(L + 1):
            diag = _as_array([[lam]], ex) if n == 0 else None
            if n >= 1:
                g = _kron(H, _eye(dims[n - 1], ex), ex)
                diag = g + _scalar_eye(lam, dims[n], ex)
            blocks[(n, n)] = diag
        ops.append(_assemble(dims, blocks, ex))
    return FockModel("full", L, data, ops)


def _scalar_eye(lam, n, exact):
    e = _eye(n, exact)
    return e * lam


def state_model(data: OperatorData) -> FockModel:
    """The plain vector state ``<xi, K_u xi>`` wrapped as a model."""
    if data.role != "state":
        raise ModelError("state models take (xi, K_i) data")
    return FockModel("state", None, data, list(data.ops), vacuum=None, vacuum_vector=data.vectors[0])


def _matvec(m, v):
    return m @ v if not _is_exact(m) else m.dot(v)


def vacuum_moment_values(model: FockModel, N: int) -> dict:
    """``{word: <Omega, X_u Omega>}`` for all words up to degree ``N`` (native number type).

    Uses ``<Omega, X_u X_v Omega> = <X_{rev u} Omega, X_v Omega>`` for symmetric
    operators, so only vectors for words of length ``<= ceil(N/2)`` are built.
    """
    if model.depth is not None and N > model.depth:
        raise ModelError(f"truncation level L={model.depth} is below the moment degree N={N}")
    d = len(model.ops)
    ex = model.exact
    if model.vacuum_vector is not None:
        omega = model.vacuum_vector
    else:
        omega = np.array([Fraction(0)] * model.size, dtype=object) if ex else np.zeros(model.size)
        omega[model.vacuum] = Fraction(1) if ex else 1.0
    half = (N + 1) // 2
    vecs = {(): omega}
    for n in range(1, half + 1):
        for w in product(range(1, d + 1), repeat=n):
            # vector X_{w[0]} X_{w[1]} ... Omega
            vecs[w] = _matvec(model.ops[w[0] - 1], vecs[w[1:]])
    out = {}
    for w in words(d, N):
        k = len(w) // 2
        left, right = w[:k], w[k:]
        out[w] = vecs[left[::-1]].dot(vecs[right])
    return out


def vacuum_moments(model: FockModel, N: int, name: str = "") -> Functional:
    vals = vacuum_moment_values(model, N)
    if abs(float(vals[()]) - 1) > UNIT_TOL:
        raise ModelError(f"distinguished vector has squared norm {float(vals[()])}, not 1")
    vals[()] = Fraction(1)  # float unit vectors are unit only up to rounding
    s = NcSeries(len(model.ops), N, {w: Fraction(v) for w, v in vals.items()})
    return Functional(s, name)


def data_moments(data: OperatorData, N: int, L: int | None = None) -> Functional:
    """State realized by ``data``: vector state, Boolean Fock or full Fock model."""
    if data.role == "state":
        return vacuum_moments(state_model(data), N)
    if data.role == "boolean":
        return vacuum_moments(build_boolean_model(data), N)
    return vacuum_moments(build_full_model(data, N if L is None else L, N), N)


def cumulant_series_from_data(data: OperatorData, N: int) -> NcSeries:
    """``c[x_i] = scalar_i`` and ``c[x_i x_u x_j] = <v_i, A_u v_j>``.

    For Boolean data these are the Boolean cumulants, for free data the free
    cumulants (equivalently the conditionally positive functional).
    """
    if data.role == "state":
        raise ModelError("cumulant series need per-variable vectors")
    d = data.d
    out = {}
    for i in range(1, d + 1):
        out[(i,)] = Fraction(data.scalars[i - 1])
    # act on the right vectors, then pair with the left one
    frontier = {(j,): data.vectors[j - 1] for j in range(1, d + 1)}
    for n in range(2, N + 1):
        for tail, v in frontier.items():
            for i in range(1, d + 1):
                out[(i,) + tail] = Fraction(data.vectors[i - 1].dot(v))
        if n == N:
            break
        frontier = {(k,) + tail: _matvec(data.ops[k - 1], v)
                    for tail, v in frontier.items() for k in range(1, d + 1)}
    return NcSeries(d, N, {w: v for w, v in out.items() if v})


# -- tensor constructions ------------------------------------------------------

def _projection(xi, exact):
    return np.outer(xi, xi) if not exact else np.array(
        [[a * b for b in xi] for a in xi], dtype=object)


def tensor_eta_model(psi: OperatorData, mu: OperatorData, max_dim: int = 4096) -> OperatorData:
    """Data ``(xi ⊗ zeta_i, K_i ⊗ I + P_xi ⊗ H_i, lambda_i)`` on ``K ⊗ H``.

    ``psi`` is state data ``(K, xi, K_i)``; ``mu`` is free data
    ``(H, zeta_i, H_i, lambda_i)``.  The resulting matrix elements give the
    Boolean cumulants of ``Phi[rho, psi]`` where ``rho`` has free cumulants
    read from ``mu``.
    """
    if psi.role != "state" or mu.role == "state":
        raise ModelError("tensor_eta_model takes state data and free data")
    if psi.d != mu.d:
        raise ModelError("alphabet mismatch between the two data sets")
    if psi.dim * mu.dim > max_dim:
        raise ModelError(f"tensor dimension {psi.dim * mu.dim} exceeds {max_dim}")
    ex = psi.exact and mu.exact
    xi = psi.vectors[0]
    P = _projection(xi, ex)
    Ih = _dense_eye(mu.dim, ex)
    ops = [np.kron(K, Ih) + np.kron(P, H) for K, H in zip(psi.ops, mu.ops)]
    vecs = [np.kron(xi, z) for z in mu.vectors]
    return OperatorData("boolean", ops, vecs, list(mu.scalars), exact=ex)


def _dense_eye(n, exact):
    return _eye(n, True) if exact else np.eye(n)


def as_free_data(data: OperatorData) -> OperatorData:
    """Reinterpret per-variable data as full-Fock (free cumulant) data."""
    return OperatorData("free", data.ops, data.vectors, data.scalars, exact=data.exact)


def monotone_realization(psi: OperatorData, phi: OperatorData) -> OperatorData:
    """State data ``(xi ⊗ zeta, K_i ⊗ I + P_xi ⊗ H_i)``; its distribution is ``phi ▷ psi``."""
    if psi.role != "state" or phi.role != "state":
        raise ModelError("monotone realization takes two sets of state data")
    ex = psi.exact and phi.exact
    xi, zeta = psi.vectors[0], phi.vectors[0]
    P = _projection(xi, ex)
    Ih = _dense_eye(phi.dim, ex)
    ops = [np.kron(K, Ih) + np.kron(P, H) for K, H in zip(psi.ops, phi.ops)]
    return OperatorData("state", ops, [np.kron(xi, zeta)], exact=ex)


def free_sum_space_model(psi: OperatorData, mu: OperatorData, L: int):
    """State data on ``K' = ⊕_{n<=L} (K ⊗ H)^{⊗n} ⊗ K`` realizing ``psi ⊞ rho``.

    Each variable acts by ``a^+_{xi⊗zeta_i} ⊗ I + a^-_{xi⊗zeta_i} ⊗ I``, by
    ``K_i`` on the bottom level ``K``, by ``(K_i ⊗ I + P_xi ⊗ H_i) ⊗ I`` on the
    first tensor factor of the higher levels, and by ``lambda_i I``.  The
    distinguished vector is ``xi`` on the bottom level.
    """
    ex = psi.exact and mu.exact
    k, h = psi.dim, mu.dim
    xi = psi.vectors[0]
    P = _projection(xi, ex)
    kh = k * h
    dims = [kh ** n * k for n in range(L + 1)]
    _check_size(sum(dims), ex)
    ops = []
    for K, H, zeta, lam in zip(psi.ops, mu.ops, mu.vectors, mu.scalars):
        T = np.kron(K, _dense_eye(h, ex)) + np.kron(P, H)
        col = np.kron(xi, zeta).reshape(-1, 1)
        blocks = {}
        for n in range(L):
            cr = _kron(col, _eye(dims[n], ex), ex)
            blocks[(n + 1, n)] = cr
            blocks[(n, n + 1)] = cr.T.copy() if ex else cr.T
        for n in range(L + 1):
            core = K if n == 0 else T
            rest = dims[n] // core.shape[0]
            blocks[(n, n)] = _kron(core, _eye(rest, ex), ex) + _scalar_eye(lam, dims[n], ex)
        ops.append(_assemble(dims, blocks, ex))
    size = sum(dims)
    vec = np.array([Fraction(0)] * size, dtype=object) if ex else np.zeros(size)
    vec[:k] = xi
    return ops, vec


def _sparse_state_tensor(ops, vec, mu: OperatorData, exact):
    """Boolean model of ``Phi[rho, psi']`` for state operators given as big matrices."""
    n, h = vec.shape[0], mu.dim
    xi = vec
    mats = []
    for X, H, zeta, lam in zip(ops, mu.ops, mu.vectors, mu.scalars):
        if exact:
            P = _projection(xi, True)
            S = np.kron(X, _dense_eye(h, True)) + np.kron(P, H)
        else:
            xs = sp.csr_matrix(xi.reshape(-1, 1))
            S = sp.kron(X, sp.identity(h), format="csr") + sp.kron(xs @ xs.T, sp.csr_matrix(H), format="csr")
        col = np.kron(xi, zeta).reshape(-1, 1)
        alpha = _as_array([[lam]], exact)
        blocks = {(0, 0): alpha, (1, 0): col, (0, 1): col.T.copy(), (1, 1): S}
        mats.append(_assemble([1, n * h], blocks, exact))
    return mats


@dataclass
class EvolutionReport:
    d: int
    dim_k: int
    dim_h: int
    N: int
    L: int
    exact: bool
    side_a: dict
    side_b: dict
    series_a: Functional
    series_b: Functional
    diff_ab: float
    diff_a_series: float
    diff_b_series: float
    seed: int | None = None

    def ok(self, tol: float = 1e-9) -> bool:
        return max(self.diff_ab, self.diff_a_series, self.diff_b_series) <= tol

    @property
    def residual(self) -> float:
        return max(self.diff_ab, self.diff_a_series, self.diff_b_series)


def _max_diff(a: dict, b) -> float:
    get = b.moments.coeff if isinstance(b, Functional) else b.__getitem__
    return max((abs(float(v) - float(get(w))) if not isinstance(v, Fraction) or not isinstance(get(w), Fraction)
                else float(abs(v - get(w))) for w, v in a.items()), default=0.0)


def evolution_operator_check(psi: OperatorData, mu: OperatorData, N: int, L: int,
                             seed: int | None = None) -> EvolutionReport:
    """Compare two operator models that should both realize ``B[Phi[rho, psi]] = Phi[rho, psi ⊞ rho]``.

    Side A: full Fock space over ``K ⊗ H`` with ``p(K_i ⊗ I + P_xi ⊗ H_i)``.
    Side B: Boolean model of ``Phi[rho, psi']`` where ``psi'`` is the
    realization of ``psi ⊞ rho`` on ``K'`` (see :func:`free_sum_space_model`).
    Both are also compared with the series pipeline run on the exact states
    ``psi`` and ``rho`` induced by the data.
    """
    from .transforms import b_map, free_convolve, phi_map

    if L < N:
        raise ModelError(f"truncation level L={L} is below the moment degree N={N}")
    ex = psi.exact and mu.exact
    kh = psi.dim * mu.dim
    _check_size(sum(kh ** n for n in range(L + 1)), ex)
    _check_size(1 + sum(kh ** n * psi.dim for n in range(L + 1)) * mu.dim, ex)
    tdata = tensor_eta_model(psi, mu)
    side_a = vacuum_moment_values(build_full_model(as_free_data(tdata), L, N), N)

    ops, vec = free_sum_space_model(psi, mu, L)
    big = _sparse_state_tensor(ops, vec, mu, ex)
    side_b = vacuum_moment_values(FockModel("boolean", L, tdata, big), N)

    # exact states induced by the data
    psi_x = _exact_copy(psi)
    mu_x = _exact_copy(mu)
    psi_f = data_moments(psi_x, N)
    rho = moments_from_free(cumulant_series_from_data(mu_x, N))
    phi = phi_map(rho, psi_f)
    series_a = b_map(phi, [0] * psi.d, 1)
    series_b = phi_map(rho, free_convolve(psi_f, rho))
    return EvolutionReport(
        psi.d, psi.dim, mu.dim, N, L, ex, side_a, side_b, series_a, series_b,
        _max_diff(side_a, side_b), _max_diff(side_a, series_a), _max_diff(side_b, series_b), seed)


def _exact_copy(data: OperatorData) -> OperatorData:
    if data.exact:
        return data
    conv = lambda a: np.vectorize(Fraction, otypes=[object])(np.asarray(a, dtype=float))
    return OperatorData(data.role, [conv(m) for m in data.ops], [conv(v) for v in data.vectors],
                        [Fraction(float(s)) for s in data.scalars], exact=True)


# -- GNS -----------------------------------------------------------------------

def gns_from_functional(f, k: int, conditional: bool = False, eps: float = GNS_EPS) -> OperatorData:
    """Compress the GNS representation onto polynomials of degree ``<= k``.

    ``f`` is a :class:`Functional` (or, with ``conditional=True``, an
    ``NcSeries`` for a conditionally positive functional).  Small Gram forms
    are orthogonalized exactly, so the kernel is exact; larger ones fall back
    to an eigen-compression where eigenvalues below ``eps * lambda_max``
    count as kernel.  Matrix elements of multiplication by ``x_i`` need
    moments up to degree ``2k + 1``.

    Without ``conditional`` this returns state data ``(xi, K_i)`` whose vector
    state matches ``f`` on all words of degree ``<= 2k + 1``.  With it, the
    result is free data ``(zeta_i, H_i, lambda_i)`` on the quotient of the
    polynomials without constant term, with ``f[x_i x_u x_j] = <zeta_i, H_u zeta_j>``
    for ``|u| <= 2k - 1``.
    """
    moments = f.moments if isinstance(f, Functional) else f
    d, N = moments.d, moments.N
    if 2 * k + 1 > N:
        raise ModelError(f"GNS level {k} needs moments up to degree {2 * k + 1} > {N}")
    ws = gram_words(d, k, conditional)
    G = [[moments.coeff(u[::-1] + v) for v in ws] for u in ws]
    X = [[[moments.coeff(u[::-1] + (i,) + v) for v in ws] for u in ws] for i in range(1, d + 1)]
    if conditional:
        cols = [[moments.coeff(u[::-1] + (i,)) for u in ws] for i in range(1, d + 1)]
    else:
        cols = [[moments.coeff(u[::-1]) for u in ws]]
    if len(ws) <= MAX_EXACT_GNS:
        C, ops, vecs = _gns_exact(G, X, cols, k)
    else:
        C, ops, vecs = _gns_float(G, X, cols, k, eps)
    if not conditional:
        return OperatorData("state", ops, vecs, exact=False)
    lam = [float(moments.coeff((i,))) for i in range(1, d + 1)]
    return OperatorData("free", ops, vecs, lam, exact=False)


def _gns_exact(G, X, cols, k):
    """Exact orthogonalization; only the final square-root scaling is float."""
    try:
        C, p = orthogonal_basis(G)
    except ValueError as exc:
        raise ModelError(f"Gram form at level {k} is not positive ({exc})") from exc
    s = np.sqrt(np.array([float(x) for x in p]))
    n = len(G)

    def sandwich(A):
        AC = [[sum(A[r][j] * c[j] for j in range(n) if c[j]) for c in C] for r in range(n)]
        return np.array([[float(sum(C[m][r] * AC[r][q] for r in range(n) if C[m][r])) for q in range(len(C))]
                         for m in range(len(C))]) / np.outer(s, s)

    ops = []
    for Xi in X:
        m = sandwich(Xi)
        ops.append((m + m.T) / 2)
    vecs = [np.array([float(sum(c[j] * col[j] for j in range(n) if c[j])) for c in C]) / s for col in cols]
    return C, ops, vecs


def _gns_float(G, X, cols, k, eps):
    """Eigenvalue compression; eigenvalues below ``eps * lambda_max`` count as kernel."""
    Gf = np.array(G, dtype=float)
    ev, V = np.linalg.eigh(Gf)
    top = max(abs(ev[-1]), abs(ev[0]), 1e-300)
    if ev[0] < -DEFAULT_PSD_EPS * top:
        raise ModelError(f"Gram form at level {k} is not positive (min eigenvalue {ev[0]:.3g})")
    keep = ev > eps * top
    C = V[:, keep] / np.sqrt(ev[keep])
    ops = []
    for Xi in X:
        m = C.T @ np.array(Xi, dtype=float) @ C
        ops.append((m + m.T) / 2)
    vecs = [C.T @ np.array(col, dtype=float) for col in cols]
    return C, ops, vecs


# -- random data ---------------------------------------------------------------

def _rand_sym(rng, n, denom):
    a = rng.integers(-denom, denom + 1, size=(n, n)) / denom
    return (a + a.T) / 2


def random_state_data(rng, d: int, dim: int, denom: int = 4) -> OperatorData:
    """Dyadic-rational symmetric ``K_i`` with ``xi = e_0``; floats that are exactly representable."""
    xi = np.zeros(dim)
    xi[0] = 1.0
    return OperatorData("state", [_rand_sym(rng, dim, denom) for _ in range(d)], [xi], exact=False)


def random_free_data(rng, d: int, dim: int, denom: int = 4) -> OperatorData:
    ops = [_rand_sym(rng, dim, denom) for _ in range(d)]
    vecs = [rng.integers(-denom, denom + 1, size=dim) / denom for _ in range(d)]
    lam = list(rng.integers(-denom, denom + 1, size=d) / denom)
    return OperatorData("free", ops, vecs, lam, exact=False)


def exact_data(data: OperatorData) -> OperatorData:
    """Rational copy of float data (lossless)."""
    return _exact_copy(data)
