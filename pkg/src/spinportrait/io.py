"""JSON file schemas for states, directions, and probability vectors.

All files are JSON with floats serialized by Python's shortest round-trip
representation, so write-then-read is lossless at full binary precision.
Writes go through a temporary file and an atomic rename.

State file:      {"two_j": int, "re": [...], "im": [...]}, row-major entries.
Directions file: [{"theta": t, "phi": p}, ...].
Probability file: {"two_j": int, "scheme": "su2"|"sun"|"aw",
                   "frames": [...], "weights": [...], "values": [...]}
with direction records for su2/aw frames and {"re": [...], "im": [...]}
row-major unitary records for sun frames.  Values follow the rotation-major,
descending-m layout; for the aw scheme they are the unit-sum variant of the
highest-projection probabilities, one per direction.
"""

from __future__ import annotations

import json
import os
import tempfile
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvariantError
from .portrait import validate_weights
from .spin import Direction, Spin, unitarity_defect, validate_density_matrix

SCHEMES = ("su2", "sun", "aw")


def _atomic_write_text(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dump_json(path: str, payload):
    _atomic_write_text(path, json.dumps(payload, indent=1) + "\n")


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _matrix_from_parts(re, im, dim: int, what: str) -> np.ndarray:
    re = np.asarray(re, dtype=float)
    im = np.asarray(im, dtype=float)
    if re.size != dim * dim or im.size != dim * dim:
        raise DomainError(
            f"{what} needs {dim * dim} re/im entries, got {re.size}/{im.size}"
        )
    return (re + 1j * im).reshape(dim, dim)


def save_state(path: str, spin: Spin, rho: np.ndarray):
    rho = np.asarray(rho, dtype=complex)
    _dump_json(
        path,
        {
            "two_j": spin.two_j,
            "re": [float(x) for x in rho.real.ravel()],
            "im": [float(x) for x in rho.imag.ravel()],
        },
    )


def load_state(path: str, validate: bool = True):
    raw = _load_json(path)
    spin = Spin(int(raw["two_j"]))
    rho = _matrix_from_parts(raw["re"], raw["im"], spin.dim, "state file")
    try:
        validate_density_matrix(spin, rho)
    except (InvariantError, DomainError) as exc:
        if validate:
            raise
        warnings.warn(f"state file failed validation: {exc}")
    return spin, rho


def save_directions(path: str, dirs):
    _dump_json(
        path, [{"theta": float(d.theta), "phi": float(d.phi)} for d in dirs]
    )


def load_directions(path: str):
    raw = _load_json(path)
    if not isinstance(raw, list):
        raise DomainError("directions file must be a JSON list")
    return [Direction(float(rec["theta"]), float(rec["phi"])) for rec in raw]


def save_unitary_frames(path: str, frames):
    _dump_json(
        path,
        [
            {
                "re": [float(x) for x in np.asarray(u).real.ravel()],
                "im": [float(x) for x in np.asarray(u).imag.ravel()],
            }
            for u in frames
        ],
    )


def load_unitary_frames(path: str, dim: int, validate: bool = True):
    raw = _load_json(path)
    if not isinstance(raw, list):
        raise DomainError("frames file must be a JSON list")
    frames = [_matrix_from_parts(rec["re"], rec["im"], dim, "frame") for rec in raw]
    for u in frames:
        if unitarity_defect(u) > 1e-12:
            if validate:
                raise InvariantError("frame matrix is not unitary to 1e-12")
            warnings.warn("frame matrix is not unitary to 1e-12")
    return frames


@dataclass
class ProbFile:
    spin: Spin
    scheme: str
    frames: list
    weights: np.ndarray
    values: np.ndarray


def save_prob(path: str, prob: ProbFile):
    if prob.scheme not in SCHEMES:
        raise DomainError(f"scheme must be one of {SCHEMES}, got {prob.scheme!r}")
    if prob.scheme == "sun":
        frames = [
            {
                "re": [float(x) for x in np.asarray(u).real.ravel()],
                "im": [float(x) for x in np.asarray(u).imag.ravel()],
            }
            for u in prob.frames
        ]
    else:
        frames = [{"theta": float(d.theta), "phi": float(d.phi)} for d in prob.frames]
    _dump_json(
        path,
        {
            "two_j": prob.spin.two_j,
            "scheme": prob.scheme,
            "frames": frames,
            "weights": [float(w) for w in prob.weights],
            "values": [float(v) for v in prob.values],
        },
    )


def load_prob(path: str, validate: bool = True) -> ProbFile:
    raw = _load_json(path)
    spin = Spin(int(raw["two_j"]))
    scheme = raw["scheme"]
    if scheme not in SCHEMES:
        raise DomainError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
    if scheme == "sun":
        frames = [
            _matrix_from_parts(rec["re"], rec["im"], spin.dim, "frame")
            for rec in raw["frames"]
        ]
    else:
        frames = [
            Direction(float(rec["theta"]), float(rec["phi"])) for rec in raw["frames"]
        ]
    weights = np.asarray(raw["weights"], dtype=float)
    values = np.asarray(raw["values"], dtype=float)
    try:
        if scheme == "sun":
            for u in frames:
                if unitarity_defect(u) > 1e-12:
                    raise InvariantError("probability file frame is not unitary")
        validate_weights(weights, len(frames))
        expected = len(frames) if scheme == "aw" else len(frames) * spin.dim
        if values.size != expected:
            raise InvariantError(
                f"probability file has {values.size} values, expected {expected}"
            )
        if values.min(initial=0.0) < -1e-12:
            raise InvariantError(f"negative probability {values.min()}")
        if abs(values.sum() - 1.0) > 1e-11:
            raise InvariantError(f"probabilities sum to {values.sum()}, not 1")
    except (InvariantError, DomainError) as exc:
        if validate:
            raise
        warnings.warn(f"probability file failed validation: {exc}")
    return ProbFile(spin, scheme, frames, weights, values)
