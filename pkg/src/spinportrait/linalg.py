"""Small linear-algebra helpers shared by the reconstruction schemes."""

from __future__ import annotations

import math

import numpy as np

SQRT2 = math.sqrt(2.0)


def hermitian_to_vec(a: np.ndarray) -> np.ndarray:
    """Isometric real coordinates of a Hermitian matrix.

    Layout: the d diagonal entries, then sqrt(2) * Re and sqrt(2) * Im of the
    strict upper triangle (row-major).  The Euclidean inner product of two
    coordinate vectors equals Tr(A B), so stacking these rows turns the
    trace pairing probability = Tr(rho U) into an ordinary real matrix-vector
    product.
    """
    a = np.asarray(a, dtype=complex)
    d = a.shape[0]
    iu = np.triu_indices(d, k=1)
    return np.concatenate(
        [np.real(np.diagonal(a)), SQRT2 * np.real(a[iu]), SQRT2 * np.imag(a[iu])]
    )


def vec_to_hermitian(v: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`hermitian_to_vec`."""
    v = np.asarray(v, dtype=float)
    if v.size != dim * dim:
        raise ValueError(f"coordinate vector length {v.size} != {dim * dim}")
    out = np.zeros((dim, dim), dtype=complex)
    out[np.diag_indices(dim)] = v[:dim]
    iu = np.triu_indices(dim, k=1)
    n_off = iu[0].size
    upper = (v[dim : dim + n_off] + 1j * v[dim + n_off :]) / SQRT2
    out[iu] = upper
    out[(iu[1], iu[0])] = upper.conj()
    return out


def numerical_rank(a: np.ndarray, rtol: float = 1e-8) -> int:
    """Rank by singular-value threshold rtol * sigma_max."""
    s = np.linalg.svd(np.asarray(a), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def condition_number(a: np.ndarray) -> float:
    """Ratio of extreme singular values (inf for a rank-deficient matrix)."""
    s = np.linalg.svd(np.asarray(a), compute_uv=False)
    smin = float(s.min())
    if smin == 0.0:
        return math.inf
    return float(s.max()) / smin
