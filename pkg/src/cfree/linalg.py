"""Exact rational linear algebra on small dense matrices (lists of lists)."""
from __future__ import annotations

from fractions import Fraction


def inverse_matrix(A):
    """Gauss-Jordan inverse over Fractions; None when singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col]), None)
        if pivot is None:
            return None
        M[col], M[pivot] = M[pivot], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def is_psd_exact(G) -> bool:
    """Positive semidefiniteness of a symmetric rational matrix.

    Symmetric elimination: a negative pivot refutes PSD; a zero pivot is
    allowed only if the rest of its row is zero too.
    """
    M = [[Fraction(x) for x in row] for row in G]
    n = len(M)
    for k in range(n):
        p = M[k][k]
        if p < 0:
            return False
        if p == 0:
            if any(M[k][j] for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            if M[i][k]:
                f = M[i][k] / p
                for j in range(k + 1, n):
                    M[i][j] -= f * M[k][j]
    return True


def orthogonal_basis(G):
    """Exact Gram-Schmidt for the form ``G``: ``(coeffs, norms)`` with
    ``coeffs[m]^T G coeffs[n] = norms[m] * delta_mn`` and every norm positive.

    Zero-norm directions are dropped when they lie in the kernel; otherwise the
    form is indefinite and ``ValueError`` is raised, as for a negative norm.
    """
    G = [[Fraction(x) for x in row] for row in G]
    n = len(G)
    coeffs, norms, images = [], [], []
    for k in range(n):
        c = [Fraction(int(i == k)) for i in range(n)]
        g = [G[i][k] for i in range(n)]
        for cm, pm, gm in zip(coeffs, norms, images):
            f = gm[k] / pm
            if f:
                c = [x - f * y for x, y in zip(c, cm)]
                g = [x - f * y for x, y in zip(g, gm)]
        p = sum(x * y for x, y in zip(c, g))
        if p < 0 or (p == 0 and any(g)):
            raise ValueError(f"form is not positive semidefinite at basis index {k}")
        if p > 0:
            coeffs.append(c)
            norms.append(p)
            images.append(g)
    return coeffs, norms
