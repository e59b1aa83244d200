"""The quantum region of the probability simplex.

A point of the simplex is a quantum state exactly when the candidate operator
assembled by the inverse map is a valid density matrix.  The candidate is
Hermitian by construction; besides positive semidefiniteness the point must
reproduce unit trace, which pins the first rotation block's sum to
1/(4j+1) (an arbitrary simplex point need not be any state's symbol).

For spin 1/2 with an orthonormal triad the region is a ball: writing
q = sum_k ((P(+1/2, n_k) - 1/6) / 2)^2, the candidate's smallest eigenvalue is
1/2 - 6 sqrt(q), so the state is quantum iff q <= 1/144, with pure states on
the boundary.  (q equals (|r|/12)^2 for a state with orientation vector r.)
The three closed-form residuals for an arbitrary feasible triad are the
leading minors rho_11, det(rho), rho_22 of the candidate, which together are
equivalent to positive semidefiniteness for 2x2 Hermitian matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigError, DomainError
from .portrait import ProbVector
from .spin import Spin
from .su2 import DirectionSet, apply_quantizer, dual_vectors

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class RegionVerdict:
    """PSD verdict for one simplex point.

    ``margin = min_eigenvalue + tol`` is nonnegative exactly for quantum
    points; points whose candidate operator fails the trace check are never
    quantum regardless of the spectrum.
    """

    is_quantum: bool
    min_eigenvalue: float
    margin: float


def candidate_operator(p, ds: DirectionSet) -> np.ndarray:
    """Hermitian candidate assembled from any layout-ordered simplex point."""
    values = p.values if isinstance(p, ProbVector) else np.asarray(p, dtype=float)
    rho = apply_quantizer(values, ds)
    return (rho + rho.conj().T) / 2.0


def is_quantum(p, ds: DirectionSet, tol: float = DEFAULT_TOL) -> RegionVerdict:
    """Eigenvalue test of the candidate operator.

    The verdict is quantum iff the smallest eigenvalue is >= -tol and the
    candidate has unit trace (within a matching tolerance).
    """
    rho = candidate_operator(p, ds)
    min_eig = float(np.linalg.eigvalsh(rho).min())
    trace_ok = abs(float(np.trace(rho).real) - 1.0) <= max(tol, 1e-9)
    return RegionVerdict(
        is_quantum=bool(trace_ok and min_eig >= -tol),
        min_eigenvalue=min_eig,
        margin=min_eig + tol,
    )


def principal_minors_nonneg(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Sylvester test for positive semidefiniteness: every principal minor >= 0.

    Exponential in the dimension, so only suitable for small matrices; kept as
    an independent cross-check of the eigenvalue test.
    """
    a = np.asarray(a)
    d = a.shape[0]
    for size in range(1, d + 1):
        for rows in combinations(range(d), size):
            idx = np.ix_(rows, rows)
            if np.linalg.det(a[idx]).real < -tol:
                return False
    return True


def is_quantum_sylvester(p, ds: DirectionSet, tol: float = DEFAULT_TOL) -> bool:
    """Alternative verdict through principal minors; agrees with the
    eigenvalue test outside the tolerance band around the boundary."""
    rho = candidate_operator(p, ds)
    trace_ok = abs(float(np.trace(rho).real) - 1.0) <= max(tol, 1e-9)
    return bool(trace_ok and principal_minors_nonneg(rho, tol))


def _require_qubit_triad(ds: DirectionSet):
    if ds.spin.two_j != 1:
        raise DomainError("this criterion is specific to spin 1/2")


def qubit_ball_statistic(p, ds: DirectionSet) -> float:
    """Squared ball radius q = sum_k ((P(+1/2, n_k) - 1/6) / 2)^2.

    Only valid for an orthonormal triad, where q = (|r|/12)^2 with r the
    state's orientation vector, so quantum points satisfy q <= 1/144.
    """
    _require_qubit_triad(ds)
    vectors = ds.unit_vectors()
    gram_defect = np.abs(vectors @ vectors.T - np.eye(3)).max()
    if gram_defect > 1e-10:
        raise DomainError(
            f"triad is not orthonormal (Gram defect {gram_defect:.2e}); "
            "the ball criterion does not apply"
        )
    values = p.values if isinstance(p, ProbVector) else np.asarray(p, dtype=float)
    plus = values[0::2]
    return float(np.sum(((plus - 1.0 / 6.0) / 2.0) ** 2))


def qubit_ball_test(p, ds: DirectionSet, tol: float = DEFAULT_TOL) -> bool:
    """Ball membership q <= 1/144 + tol for an orthonormal triad."""
    return qubit_ball_statistic(p, ds) <= 1.0 / 144.0 + tol


def qubit_region_inequalities(p, ds: DirectionSet) -> np.ndarray:
    """Residuals (rho_11, det rho, rho_22) of the qubit candidate operator.

    Computed from the closed form of the inverse map: with S the first-block
    sum, Delta_k the block differences, and l_k the dual vectors,
    rho = (3/2) S I + 3 sum_k Delta_k (J . l_k).  All three residuals
    nonnegative is equivalent to the eigenvalue verdict for points with unit
    candidate trace.
    """
    _require_qubit_triad(ds)
    values = p.values if isinstance(p, ProbVector) else np.asarray(p, dtype=float)
    if values.shape != (6,):
        raise DomainError(f"expected 6 entries, got shape {values.shape}")
    duals = dual_vectors(ds)
    block_sum = values[0] + values[1]
    deltas = values[0::2] - values[1::2]
    v = deltas @ duals
    half_trace = 1.5 * block_sum
    rho11 = half_trace + 1.5 * v[2]
    rho22 = half_trace - 1.5 * v[2]
    det = half_trace**2 - 2.25 * float(v @ v)
    return np.array([rho11, det, rho22])


@dataclass(frozen=True)
class SliceEntry:
    """One coordinate of a simplex slice: fixed, scanned, or balancing."""

    kind: str  # "const" | "free" | "balance"
    value: float = 0.0
    lo: float = 0.0
    hi: float = 0.0

    @staticmethod
    def const(value: float) -> "SliceEntry":
        return SliceEntry("const", value=float(value))

    @staticmethod
    def free(lo: float, hi: float) -> "SliceEntry":
        return SliceEntry("free", lo=float(lo), hi=float(hi))

    @staticmethod
    def balance() -> "SliceEntry":
        return SliceEntry("balance")


@dataclass(frozen=True)
class SliceSpec:
    """Slice of the simplex with at most three scanned coordinates.

    ``balance`` entries absorb whatever their rotation block needs to reach
    the equal-weight block sum 1/N_u (at most one per block), which is how
    hyperplane cuts such as "every block keeps its total" are expressed.
    """

    entries: tuple

    def __init__(self, entries: Iterable[SliceEntry]):
        object.__setattr__(self, "entries", tuple(entries))


def _slice_layout(spin: Spin, ds: DirectionSet, spec: SliceSpec):
    n_total = ds.n_dirs * spin.dim
    if len(spec.entries) != n_total:
        raise ConfigError(
            f"slice needs {n_total} entries for this set, got {len(spec.entries)}"
        )
    free_idx = [i for i, e in enumerate(spec.entries) if e.kind == "free"]
    if not (1 <= len(free_idx) <= 3):
        raise ConfigError(
            f"slice must leave between 1 and 3 free coordinates, got {len(free_idx)}"
        )
    for block in range(ds.n_dirs):
        entries = spec.entries[block * spin.dim : (block + 1) * spin.dim]
        if sum(1 for e in entries if e.kind == "balance") > 1:
            raise ConfigError(f"block {block} has more than one balance entry")
    unknown = [e.kind for e in spec.entries if e.kind not in ("const", "free", "balance")]
    if unknown:
        raise ConfigError(f"unknown slice entry kinds: {unknown}")
    return free_idx


def _slice_point(spin: Spin, ds: DirectionSet, spec: SliceSpec, coords) -> np.ndarray:
    values = np.empty(ds.n_dirs * spin.dim)
    it = iter(coords)
    for i, entry in enumerate(spec.entries):
        if entry.kind == "const":
            values[i] = entry.value
        elif entry.kind == "free":
            values[i] = next(it)
        else:
            values[i] = 0.0
    target = 1.0 / ds.n_dirs
    for block in range(ds.n_dirs):
        lo = block * spin.dim
        for i in range(lo, lo + spin.dim):
            if spec.entries[i].kind == "balance":
                others = sum(
                    values[j] for j in range(lo, lo + spin.dim) if j != i
                )
                values[i] = target - others
    return values


def sample_region(
    spin: Spin,
    ds: DirectionSet,
    spec: SliceSpec,
    resolution: int,
    tol: float = DEFAULT_TOL,
) -> np.ndarray:
    """Grid scan of a simplex slice.

    Returns rows [coord_1, ..., coord_f, is_quantum, min_eigenvalue] in
    row-major grid order over the free coordinates.  Points leaving the
    simplex (any negative coordinate) are classified as not quantum.
    """
    if resolution < 2:
        raise ConfigError("resolution must be at least 2")
    free_idx = _slice_layout(spin, ds, spec)
    axes = [
        np.linspace(spec.entries[i].lo, spec.entries[i].hi, resolution)
        for i in free_idx
    ]
    grids = np.meshgrid(*axes, indexing="ij")
    flat = np.stack([g.ravel() for g in grids], axis=1)
    points = np.array([_slice_point(spin, ds, spec, coords) for coords in flat])
    flags, min_eigs = classify_points(points, ds, tol)
    return np.column_stack([flat, flags.astype(float), min_eigs])


def classify_points(points: np.ndarray, ds: DirectionSet, tol: float = DEFAULT_TOL):
    """Vectorized verdicts for a batch of layout-ordered simplex points.

    Returns (is_quantum bool array, min eigenvalue array); points leaving the
    simplex or breaking the candidate trace are never quantum, matching the
    scalar :func:`is_quantum` on every row.
    """
    from .su2 import quantizer_stack

    points = np.asarray(points, dtype=float)
    stack = quantizer_stack(ds)
    candidates = np.einsum("nI,Iab->nab", points, stack, optimize=True)
    candidates = (candidates + np.conj(np.swapaxes(candidates, 1, 2))) / 2.0
    min_eigs = np.linalg.eigvalsh(candidates)[:, 0]
    traces = np.einsum("naa->n", candidates).real
    on_simplex = points.min(axis=1) >= -tol
    trace_ok = np.abs(traces - 1.0) <= max(tol, 1e-9)
    flags = on_simplex & trace_ok & (min_eigs >= -tol)
    return flags, min_eigs


def write_region_csv(rows: np.ndarray, n_free: int, fh):
    """CSV dump: coord1,coord2[,coord3],is_quantum,min_eig with 17-digit floats."""
    header = [f"coord{i + 1}" for i in range(n_free)] + ["is_quantum", "min_eig"]
    fh.write(",".join(header) + "\n")
    for row in rows:
        coords = [repr(float(c)) for c in row[:n_free]]
        flag = str(int(row[n_free]))
        fh.write(",".join(coords + [flag, repr(float(row[n_free + 1]))]) + "\n")
