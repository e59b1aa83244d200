"""Orthonormal polynomial tables over spin projections and the operator basis.

The table f[L][m] (L = 0..2j, m descending) collects orthonormal polynomials
of the discrete projection variable with unit weight,

    sum_m f_L(m) f_L'(m) = delta_LL',

built from the three-term recurrence of discrete Chebyshev polynomials on the
grid {0, ..., 2j}.  Rows are normalized to unit Euclidean norm with the sign
fixed so f_L(+j) > 0, which reproduces the closed forms

    f_0(m) = 1/sqrt(2j+1),    f_1(m) = sqrt(3) m / sqrt(j(j+1)(2j+1)).

The operator basis S_L(frame) applies the same polynomial to the rotated
projection operator; overlaps of two frames obey
Tr(S_L(n) S_L'(n')) = delta_LL' * P_L(n . n') with P_L the Legendre polynomial.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .spin import Frame, Spin, frame_matrix


def coeff_table(spin: Spin) -> np.ndarray:
    """Orthonormal coefficient table, shape (2j+1, 2j+1), f[L][m_index].

    Row L is the degree-L discrete Chebyshev polynomial evaluated on the
    descending projections m = j, j-1, ..., -j and normalized to unit norm.
    """
    n = spin.dim
    x = np.arange(n, dtype=float)
    alpha = (n - 1) / 2.0
    polys = [np.ones(n)]
    if n > 1:
        polys.append(x - alpha)
    for k in range(1, n - 1):
        beta_k = k * k * (n * n - k * k) / (4.0 * (4 * k * k - 1))
        polys.append((x - alpha) * polys[k] - beta_k * polys[k - 1])
    table = np.empty((n, n))
    for L, p in enumerate(polys):
        row = p / np.linalg.norm(p)
        # x = 2j corresponds to m = +j; flip to descending-m ordering
        row = row[::-1]
        if row[0] < 0:
            row = -row
        table[L] = row
    return table


def s_operator(spin: Spin, L: int, frame: Frame) -> np.ndarray:
    """Operator S_L(frame) = V f_L(Jz) V^dag with V the frame unitary.

    f_L(Jz) is diagonal in the descending-m basis, so the operator is the
    degree-L polynomial of the rotated projection operator V Jz V^dag.
    """
    if not (0 <= L <= spin.two_j):
        raise DomainError(f"L={L} outside 0..{spin.two_j}")
    f_row = coeff_table(spin)[L]
    v = frame_matrix(spin, frame)
    return (v * f_row) @ v.conj().T


def s_operator_stack(spin: Spin, frame: Frame) -> np.ndarray:
    """All S_L(frame) for L = 0..2j as one (2j+1, d, d) array."""
    table = coeff_table(spin)
    v = frame_matrix(spin, frame)
    vh = v.conj().T
    return np.einsum("ab,Lb,bc->Lac", v, table, vh, optimize=True)


def legendre(L: int, x):
    """Legendre polynomial P_L(x) by the standard three-term recurrence."""
    if L < 0:
        raise DomainError(f"Legendre degree must be nonnegative, got {L}")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if L == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p = x.copy()
    for k in range(1, L):
        p, p_prev = ((2 * k + 1) * x * p - k * p_prev) / (k + 1), p
    return p if p.ndim else float(p)


def assoc_legendre(L: int, m: int, x):
    """Associated Legendre P_L^m(x) for 0 <= m <= L, without the (-1)^m phase.

    Only zero/nonzero structure and determinant magnitudes are consumed
    downstream, so the Condon-Shortley phase is dropped.
    """
    if not (0 <= m <= L):
        raise DomainError(f"need 0 <= m <= L, got m={m}, L={L}")
    x = np.asarray(x, dtype=float)
    somx2 = np.sqrt(np.maximum(1.0 - x * x, 0.0))
    pmm = np.ones_like(x)
    for k in range(1, m + 1):
        pmm = pmm * (2 * k - 1) * somx2
    if L == m:
        return pmm if pmm.ndim else float(pmm)
    pmmp1 = x * (2 * m + 1) * pmm
    if L == m + 1:
        return pmmp1 if pmmp1.ndim else float(pmmp1)
    for ell in range(m + 2, L + 1):
        pmm, pmmp1 = pmmp1, ((2 * ell - 1) * x * pmmp1 - (ell + m - 1) * pmm) / (
            ell - m
        )
    return pmmp1 if pmmp1.ndim else float(pmmp1)
