"""Angular-momentum operators, rotations, and density-matrix helpers.

Spin magnitudes are stored as doubled integers (``two_j = 2j``) so that
half-integer bookkeeping stays exact; projections likewise travel as doubled
values ``two_m``.  The matrix basis is ordered by descending projection,
|j, j> first, and every module in the package shares that ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, InvariantError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Spin:
    """Half-integer spin, stored as the doubled integer ``two_j``."""

    two_j: int

    def __post_init__(self):
        if not isinstance(self.two_j, (int, np.integer)):
            raise DomainError(f"two_j must be an integer, got {self.two_j!r}")
        if self.two_j < 0:
            raise DomainError(f"two_j must be nonnegative, got {self.two_j}")

    @property
    def j(self) -> float:
        return self.two_j / 2.0

    @property
    def dim(self) -> int:
        return self.two_j + 1

    def two_m_values(self) -> range:
        """Doubled projections two_j, two_j - 2, ..., -two_j (descending)."""
        return range(self.two_j, -self.two_j - 1, -2)

    def m_values(self) -> np.ndarray:
        """Projections j, j - 1, ..., -j as floats, descending."""
        return np.arange(self.two_j, -self.two_j - 1, -2) / 2.0

    def m_index(self, two_m: int) -> int:
        """Basis index of the projection ``two_m`` (index 0 is m = +j)."""
        if (self.two_j - two_m) % 2 != 0 or abs(two_m) > self.two_j:
            raise DomainError(
                f"projection two_m={two_m} invalid for two_j={self.two_j}"
            )
        return (self.two_j - two_m) // 2


@dataclass(frozen=True)
class Direction:
    """Unit vector n(theta, phi) on the sphere.

    theta is the polar angle in [0, pi]; phi is stored reduced to [0, 2*pi).
    """

    theta: float
    phi: float

    def __post_init__(self):
        theta = float(self.theta)
        if not (-1e-12 <= theta <= math.pi + 1e-12):
            raise DomainError(f"theta must lie in [0, pi], got {theta}")
        object.__setattr__(self, "theta", min(max(theta, 0.0), math.pi))
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)

    @property
    def cartesian(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array(
            [math.cos(self.phi) * st, math.sin(self.phi) * st, math.cos(self.theta)]
        )

    @classmethod
    def from_cartesian(cls, v) -> "Direction":
        v = np.asarray(v, dtype=float)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise DomainError("zero vector has no direction")
        v = v / norm
        return cls(math.acos(min(max(v[2], -1.0), 1.0)), math.atan2(v[1], v[0]))


Frame = Union[Direction, np.ndarray]


def angular_momentum(spin: Spin):
    """Matrices (Jx, Jy, Jz) in the descending-m basis.

    Jz is diagonal with eigenvalues j, j-1, ..., -j; the ladder elements are
    <j,m+1|J+|j,m> = sqrt(j(j+1) - m(m+1)).
    """
    d = spin.dim
    two_j = spin.two_j
    jz = np.diag(spin.m_values()).astype(complex)
    jp = np.zeros((d, d), dtype=complex)
    for idx, two_m in enumerate(spin.two_m_values()):
        if two_m == two_j:
            continue
        # raise m -> m+1 moves one row up in the descending ordering
        jp[idx - 1, idx] = math.sqrt(
            (two_j * (two_j + 2) - two_m * (two_m + 2)) / 4.0
        )
    jm = jp.conj().T
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2.0j
    return jx, jy, jz


def rotation(spin: Spin, n: Direction) -> np.ndarray:
    """Rotation mapping the z-axis onto n.

    R(n) = exp(-i (n_perp . J) theta) with n_perp = (-sin phi, cos phi, 0),
    evaluated through the spectral decomposition of the Hermitian generator.
    R(n) Jz R(n)^dag = J . n, so R|j j> is the highest-weight state along n.
    For theta = pi the result depends on phi (any such rotation maps z to -z).
    """
    jx, jy, _ = angular_momentum(spin)
    gen = -math.sin(n.phi) * jx + math.cos(n.phi) * jy
    vals, vecs = np.linalg.eigh(gen)
    phases = np.exp(-1j * n.theta * vals)
    return (vecs * phases) @ vecs.conj().T


def frame_matrix(spin: Spin, frame: Frame) -> np.ndarray:
    """Unitary matrix of a measurement frame.

    A ``Direction`` yields the SU(2) rotation; a square array is validated as
    a unitary of the right dimension and used as-is.
    """
    if isinstance(frame, Direction):
        return rotation(spin, frame)
    u = np.asarray(frame, dtype=complex)
    if u.shape != (spin.dim, spin.dim):
        raise DomainError(f"frame shape {u.shape} does not match dim {spin.dim}")
    if unitarity_defect(u) > 1e-12:
        raise InvariantError("frame matrix is not unitary to 1e-12")
    return u


def basis_ket(spin: Spin, two_m: int) -> np.ndarray:
    ket = np.zeros(spin.dim, dtype=complex)
    ket[spin.m_index(two_m)] = 1.0
    return ket


def hermiticity_defect(a) -> float:
    a = np.asarray(a)
    return float(np.abs(a - a.conj().T).max()) if a.size else 0.0


def unitarity_defect(u) -> float:
    u = np.asarray(u)
    return float(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max())


def validate_density_matrix(spin: Spin, rho, trace_tol=1e-12, eig_tol=1e-10):
    """Check Hermiticity, unit trace, and positive semidefiniteness.

    Raises InvariantError on violation; returns the matrix as a complex array.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (spin.dim, spin.dim):
        raise DomainError(f"density matrix shape {rho.shape} != dim {spin.dim}")
    if hermiticity_defect(rho) > 1e-12:
        raise InvariantError("density matrix is not Hermitian to 1e-12")
    if abs(np.trace(rho).real - 1.0) > trace_tol or abs(np.trace(rho).imag) > trace_tol:
        raise InvariantError(f"density matrix trace {np.trace(rho)} != 1")
    min_eig = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2.0).min())
    if min_eig < -eig_tol:
        raise InvariantError(f"density matrix has eigenvalue {min_eig} < -{eig_tol}")
    return rho


def random_density_matrix(spin: Spin, rng: np.random.Generator) -> np.ndarray:
    """Random full-rank density matrix, G G^dag normalized to unit trace."""
    d = spin.dim
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
