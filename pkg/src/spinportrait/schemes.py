"""Alternative reconstruction schemes: SU(N) frames and direction grids.

Two routes besides the 4j+1-direction scheme:

* General unitary frames in the full Hilbert space.  2j+2 generic frames make
  the forward map injective (each frame block adds 2j new independent rows
  plus the shared sum rule), and the state is recovered through a
  pseudo-inverse.  Feasibility and conditioning are controlled by the Gram
  matrix of the frame operators S_L(u_k), whose determinant Gamma' lies in
  [0, 1] and bounds the condition number by
  (1 + sqrt(1 - Gamma')) / (1 - sqrt(1 - Gamma')).

* Direction grids measuring only the highest projection m = j along (2j+1)^2
  directions arranged on nested cones,

      phi_qr = 2 pi (r + q Delta) / (2j+1),      0 <= q, r <= 2j,

  inverted by a single matrix solve, with a normalized variant that first
  scales the probability vector to unit sum and restores the trace afterward.
  The single-cone special case (all polar angles equal) needs every associated
  Legendre value P_L^m(cos theta), m <= L <= 2j, to be nonzero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, FeasibilityError
from .linalg import hermitian_to_vec, numerical_rank, vec_to_hermitian
from .orthopoly import assoc_legendre, s_operator_stack
from .portrait import ProbVector, validate_weights
from .spin import Direction, Spin, unitarity_defect
from .su2 import GRAM_DET_FLOOR, DirectionSet, shell_determinants
from .tomography import dequantizer, tomogram


@dataclass(frozen=True)
class UnitaryFrameSet:
    """2j+2 unitary frames of dimension 2j+1, the minimal injective count."""

    spin: Spin
    frames: tuple

    def __init__(self, spin: Spin, frames: Sequence[np.ndarray]):
        object.__setattr__(self, "spin", spin)
        frames = tuple(np.asarray(u, dtype=complex) for u in frames)
        object.__setattr__(self, "frames", frames)
        expected = spin.two_j + 2
        if len(frames) != expected:
            raise DomainError(
                f"need {expected} frames for two_j={spin.two_j}, got {len(frames)}"
            )
        for u in frames:
            if u.shape != (spin.dim, spin.dim):
                raise DomainError(f"frame shape {u.shape} != dim {spin.dim}")
            if unitarity_defect(u) > 1e-12:
                raise DomainError("frame is not unitary to 1e-12")


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR factorization of a Gaussian matrix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_frame_set(spin: Spin, rng: np.random.Generator) -> UnitaryFrameSet:
    return UnitaryFrameSet(
        spin, [haar_unitary(spin.dim, rng) for _ in range(spin.two_j + 2)]
    )


def r_matrix(spin: Spin, frames: Sequence[np.ndarray], weights=None) -> np.ndarray:
    """Forward-map matrix for unitary frames, row (k, m) = p_k * coords(U(m, u_k)).

    Accepts any number of frames so rank experiments can under- and
    over-sample; applying it to the coordinates of rho gives the stacked
    probability vector exactly.
    """
    if isinstance(frames, UnitaryFrameSet):
        frames = frames.frames
    frames = tuple(frames)
    if weights is None:
        weights = np.full(len(frames), 1.0 / len(frames))
    w = validate_weights(weights, len(frames))
    rows = []
    for p_k, u in zip(w, frames):
        for two_m in spin.two_m_values():
            rows.append(p_k * hermitian_to_vec(dequantizer(spin, two_m, u)))
    return np.array(rows)


def sun_gram(ufs: UnitaryFrameSet) -> np.ndarray:
    """Gram matrix of the frame operators S_L(u_k), L = 1..2j, k = 1..2j+2.

    Block (k, k') is the 2j x 2j matrix Tr(S_L(u_k) S_L'(u_k')); diagonal
    blocks are the identity because each frame's operators are orthonormal.
    """
    spin = ufs.spin
    two_j = spin.two_j
    stacks = [s_operator_stack(spin, u)[1:] for u in ufs.frames]
    n = len(ufs.frames)
    g = np.empty((n * two_j, n * two_j))
    for a in range(n):
        for b in range(n):
            block = np.einsum("Lij,Mji->LM", stacks[a], stacks[b], optimize=True)
            g[a * two_j : (a + 1) * two_j, b * two_j : (b + 1) * two_j] = block.real
    return g


def gamma_prime(ufs: UnitaryFrameSet) -> float:
    """Volume of the frame-operator parallelogram, det of the Gram matrix.

    Lies in [0, 1]; zero exactly when reconstruction is impossible.
    """
    return float(np.linalg.det(sun_gram(ufs)))


def mu_bound(gamma: float) -> float:
    """Condition-number bound (1 + sqrt(1 - Gamma')) / (1 - sqrt(1 - Gamma'))."""
    gamma = min(max(gamma, 0.0), 1.0)
    root = math.sqrt(1.0 - gamma)
    if root >= 1.0:
        return math.inf
    return (1.0 + root) / (1.0 - root)


def reconstruct_pinv(p: ProbVector, ufs: UnitaryFrameSet, weights=None) -> np.ndarray:
    """Least-squares inverse of the unitary-frame forward map.

    Solves the overdetermined system through a rank-revealing factorization
    rather than the normal equations, which would square the conditioning.
    """
    spin = ufs.spin
    if p.spin != spin or p.n_rotations != len(ufs.frames):
        raise DomainError("probability vector does not match the frame set")
    r = r_matrix(spin, ufs.frames, weights)
    full = spin.dim * spin.dim
    if numerical_rank(r) < full:
        raise FeasibilityError(
            f"frame forward map has rank {numerical_rank(r)} < {full}"
        )
    coords, *_ = np.linalg.lstsq(r, p.values, rcond=None)
    return vec_to_hermitian(coords, spin.dim)


@dataclass(frozen=True)
class AWGrid:
    """Nested-cone direction grid: 2j+1 distinct polar angles and a twist."""

    spin: Spin
    thetas: tuple
    delta: float

    def __init__(self, spin: Spin, thetas: Sequence[float], delta: float):
        object.__setattr__(self, "spin", spin)
        object.__setattr__(self, "thetas", tuple(float(t) for t in thetas))
        object.__setattr__(self, "delta", float(delta))
        if len(self.thetas) != spin.dim:
            raise DomainError(
                f"need {spin.dim} polar angles, got {len(self.thetas)}"
            )
        if any(not (0.0 < t < math.pi) for t in self.thetas):
            raise DomainError("polar angles must lie strictly inside (0, pi)")
        if len(set(self.thetas)) != len(self.thetas):
            raise DomainError("polar angles must be pairwise distinct")
        if not (0.0 < self.delta <= 1.0 / spin.dim):
            raise DomainError(
                f"twist delta must lie in (0, 1/{spin.dim}], got {self.delta}"
            )


def default_aw_grid(spin: Spin, delta: float | None = None) -> AWGrid:
    """Equispaced polar angles theta_q = pi (q+1) / (2j+2), maximal twist."""
    d = spin.dim
    thetas = [math.pi * (q + 1) / (d + 1) for q in range(d)]
    return AWGrid(spin, thetas, 1.0 / d if delta is None else delta)


def aw_directions(grid: AWGrid) -> list:
    """The (2j+1)^2 grid directions, cone-major (q outer, r inner)."""
    d = grid.spin.dim
    out = []
    for q, theta in enumerate(grid.thetas):
        for r in range(d):
            phi = 2.0 * math.pi * (r + q * grid.delta) / d
            out.append(Direction(theta, phi))
    return out


def aw_m_matrix(spin: Spin, dirs: Sequence[Direction]) -> np.ndarray:
    """Highest-projection map matrix, row k = coords(U(j, n_k))."""
    dirs = tuple(dirs)
    full = spin.dim * spin.dim
    if len(dirs) != full:
        raise DomainError(f"need {full} directions, got {len(dirs)}")
    return np.array(
        [hermitian_to_vec(dequantizer(spin, spin.two_j, n)) for n in dirs]
    )


def aw_forward(spin: Spin, rho: np.ndarray, dirs: Sequence[Direction]) -> np.ndarray:
    """Probabilities of the highest projection m = j along each direction."""
    return np.array([tomogram(spin, rho, spin.two_j, n) for n in dirs])


def aw_reconstruct(
    spin: Spin,
    w: Sequence[float],
    dirs: Sequence[Direction],
    normalized: bool = False,
) -> np.ndarray:
    """Solve the highest-projection system for the state.

    With ``normalized=True`` the input is taken as the unit-sum variant of the
    probability vector and the overall scale is restored by dividing out the
    trace of the solution.
    """
    w = np.asarray(w, dtype=float)
    m = aw_m_matrix(spin, dirs)
    if numerical_rank(m, rtol=1e-10) < m.shape[0]:
        raise FeasibilityError("direction matrix is numerically singular")
    coords = np.linalg.solve(m, w)
    rho = vec_to_hermitian(coords, spin.dim)
    if normalized:
        trace = float(np.trace(rho).real)
        if abs(trace) < 1e-14:
            raise FeasibilityError("normalized inversion has zero trace")
        rho = rho / trace
    return rho


def aw_normalized_forward(
    spin: Spin, rho: np.ndarray, dirs: Sequence[Direction]
) -> np.ndarray:
    """Unit-sum variant of the highest-projection probabilities."""
    w = aw_forward(spin, rho, dirs)
    return w / w.sum()


def newton_young_directions(spin: Spin, theta: float) -> DirectionSet:
    """4j+1 directions on one cone, uniformly spaced in azimuth.

    Requires P_L^m(cos theta) != 0 for all m <= L <= 2j (checked numerically
    to 1e-10); the equator, for example, is rejected for every spin because
    P_1^0(0) = 0.
    """
    theta = float(theta)
    if not (0.0 < theta < math.pi):
        raise DomainError("cone angle must lie strictly inside (0, pi)")
    c = math.cos(theta)
    for L in range(1, spin.two_j + 1):
        for m in range(0, L + 1):
            if abs(assoc_legendre(L, m, c)) <= 1e-10:
                raise FeasibilityError(
                    f"P_{L}^{m}(cos theta) vanishes at theta={theta}; "
                    "the cone cannot be inverted"
                )
    n_u = 2 * spin.two_j + 1
    dirs = [
        Direction(theta, 2.0 * math.pi * k / n_u) for k in range(n_u)
    ]
    ds = DirectionSet(spin, dirs)
    dets = shell_determinants(ds)
    if np.abs(dets).min(initial=1.0) < GRAM_DET_FLOOR:
        raise FeasibilityError(
            f"cone at theta={theta} produced a singular shell "
            f"(smallest |det| {np.abs(dets).min():.3e})"
        )
    return ds
