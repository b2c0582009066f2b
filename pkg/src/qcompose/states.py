"""Dense state vectors and the small set of unitaries used by the simulators.

States are plain complex numpy vectors wrapped in a validating dataclass;
everything here is exact dense arithmetic, intended for dimensions up to a
few thousand (the uniform transform additionally has a matrix-free fast
transform so the single-query experiment scales to 2**14).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadDimension,
    DimensionMismatch,
    IndexOutOfRange,
    ZeroVector,
)

NORM_TOL = 1e-10


def _as_complex_vector(raw) -> np.ndarray:
    vec = np.asarray(raw, dtype=np.complex128).reshape(-1).copy()
    if vec.size == 0:
        raise ValueError("state needs at least one amplitude")
    if not np.all(np.isfinite(vec.view(np.float64))):
        raise ValueError("amplitudes must be finite")
    return vec


@dataclass(frozen=True)
class StateVector:
    """An l2-normalized complex vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        vec = _as_complex_vector(self.amplitudes)
        norm = np.linalg.norm(vec)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state vector is not normalized (norm {norm})")
        vec.flags.writeable = False
        object.__setattr__(self, "amplitudes", vec)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class UnitaryMatrix:
    """A square matrix with U @ U.conj().T == identity within 1e-10."""

    entries: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.entries, dtype=np.complex128).copy()
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
            raise ValueError("entries must form a square matrix")
        if not np.all(np.isfinite(mat.view(np.float64))):
            raise ValueError("entries must be finite")
        defect = np.max(np.abs(mat @ mat.conj().T - np.eye(mat.shape[0])))
        if defect > NORM_TOL:
            raise ValueError(f"matrix is not unitary (defect {defect})")
        mat.flags.writeable = False
        object.__setattr__(self, "entries", mat)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def apply(self, state: StateVector) -> StateVector:
        if state.dim != self.dim:
            raise DimensionMismatch(
                f"operator dim {self.dim} != state dim {state.dim}")
        return StateVector(self.entries @ state.amplitudes)


def make_state(raw) -> StateVector:
    """Normalize `raw` to unit l2 norm."""
    vec = _as_complex_vector(raw)
    norm = np.linalg.norm(vec)
    if norm == 0.0:
        raise ZeroVector("cannot normalize the zero vector")
    return StateVector(vec / norm)


def basis_state(dim: int, index: int) -> StateVector:
    """The computational basis vector e_index in `dim` dimensions."""
    if not 0 <= index < dim:
        raise IndexOutOfRange(f"index {index} outside [0, {dim})")
    vec = np.zeros(dim, dtype=np.complex128)
    vec[index] = 1.0
    return StateVector(vec)


def _check_power_of_two(m: int) -> None:
    if not isinstance(m, (int, np.integer)) or m < 2 or m & (m - 1):
        raise BadDimension(f"dimension must be a power of two >= 2, got {m!r}")


def uniform_transform(m: int) -> UnitaryMatrix:
    """The tensor power of (1/sqrt 2)[[1,1],[1,-1]] acting on m = 2**k levels.

    Maps e_0 to the uniform superposition and is its own inverse.
    """
    _check_power_of_two(m)
    h2 = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    mat = np.array([[1.0]])
    while mat.shape[0] < m:
        mat = np.kron(mat, h2)
    return UnitaryMatrix(mat)


def hadamard_transform(state: StateVector) -> StateVector:
    """Apply uniform_transform(state.dim) without materializing the matrix.

    Standard in-place butterfly, O(m log m); agrees with the dense matrix
    to machine precision and keeps the m = 2**14 experiment cheap.
    """
    _check_power_of_two(state.dim)
    a = state.amplitudes.copy()
    half = 1
    while half < a.size:
        a = a.reshape(-1, 2, half)
        a = np.concatenate((a[:, 0, :] + a[:, 1, :], a[:, 0, :] - a[:, 1, :]), axis=1)
        half *= 2
    return StateVector(a.reshape(-1) / math.sqrt(state.dim))


def _bit_signs(bits: str | Sequence[int] | Iterable[int]) -> np.ndarray:
    if isinstance(bits, str):
        values = [int(c) for c in bits] if bits.strip("01") == "" else None
        if values is None:
            raise ValueError("bits must contain only '0' and '1'")
    else:
        values = [int(b) for b in bits]
        if any(b not in (0, 1) for b in values):
            raise ValueError("bits must be 0 or 1")
    return np.where(np.array(values) == 0, 1.0, -1.0)


def apply_phase_oracle(state: StateVector, bits) -> StateVector:
    """Flip the sign of amplitude_i wherever bits_i is 1."""
    signs = _bit_signs(bits)
    if signs.size != state.dim:
        raise DimensionMismatch(
            f"bit string length {signs.size} != state dim {state.dim}")
    return StateVector(state.amplitudes * signs)


def basis_probability(state: StateVector, index: int) -> float:
    """|amplitude_index|^2."""
    if not 0 <= index < state.dim:
        raise IndexOutOfRange(f"index {index} outside [0, {state.dim})")
    return float(abs(state.amplitudes[index]) ** 2)


def l2_distance(a: StateVector, b: StateVector) -> float:
    """Euclidean distance between two states of equal dimension."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"dims differ: {a.dim} vs {b.dim}")
    return float(np.linalg.norm(a.amplitudes - b.amplitudes))
