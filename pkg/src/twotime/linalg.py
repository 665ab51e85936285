"""Dense complex state vectors and operators for small Hilbert spaces.

This is a thin validating layer over numpy ``complex128`` arrays.  All
values are immutable after construction and every function is pure, so
objects can be shared freely between threads.

Conventions fixed here (downstream golden values depend on them):

* qubit basis: index 0 is spin-up, index 1 is spin-down;
* three-box basis: index 0 is box A, 1 is box B, 2 is box C;
* ``tensor(a, b)`` uses Kronecker ordering, mapping the index pair
  ``(i, j)`` to the flat index ``i * b.dim + j`` (the leftmost factor is
  the most significant digit);
* observables are always handed around as explicit projector
  decompositions; no numerical eigensolver is used anywhere.

Tolerances: structural checks (normalization, hermiticity, projector
identities) use ``STRUCTURAL_TOL = 1e-9``; exact algebraic identities are
tested downstream at 1e-12.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

#: Hard cap on Hilbert-space dimension; guards runaway tensor products.
DIM_CAP = 4096

#: Tolerance for structural validation.
STRUCTURAL_TOL = 1e-9


class DimensionMismatchError(ValueError):
    """Operands live in Hilbert spaces of different dimension."""


class DimensionCapError(ValueError):
    """A construction exceeds the supported dimension cap."""


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatchError(f"dimension mismatch: {a} vs {b}")


def _finite_complex_array(data, what: str) -> np.ndarray:
    arr = np.array(data, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} must be finite (no NaN or Inf entries)")
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitude vector of fixed dimension, not necessarily unit norm."""

    amps: np.ndarray

    def __post_init__(self) -> None:
        arr = _finite_complex_array(self.amps, "state amplitudes").reshape(-1)
        if arr.size < 1:
            raise ValueError("a state vector needs at least one amplitude")
        if arr.size > DIM_CAP:
            raise DimensionCapError(f"dimension {arr.size} exceeds cap {DIM_CAP}")
        arr.setflags(write=False)
        object.__setattr__(self, "amps", arr)

    @property
    def dim(self) -> int:
        return self.amps.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tol: float = STRUCTURAL_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def normalized(self) -> StateVector:
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.amps / n)


@dataclass(frozen=True, eq=False)
class Operator:
    """Square complex matrix acting on state vectors of matching dimension."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = _finite_complex_array(self.entries, "operator entries")
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"operator must be a square matrix, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("an operator needs at least one row")
        if arr.shape[0] > DIM_CAP:
            raise DimensionCapError(f"dimension {arr.shape[0]} exceeds cap {DIM_CAP}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def adjoint(self) -> Operator:
        return Operator(self.entries.conj().T)

    def __add__(self, other: Operator) -> Operator:
        if not isinstance(other, Operator):
            return NotImplemented
        _check_dims(self.dim, other.dim)
        return Operator(self.entries + other.entries)

    def __sub__(self, other: Operator) -> Operator:
        if not isinstance(other, Operator):
            return NotImplemented
        _check_dims(self.dim, other.dim)
        return Operator(self.entries - other.entries)

    def __mul__(self, scalar) -> Operator:
        if not isinstance(scalar, (int, float, complex)):
            return NotImplemented
        return Operator(self.entries * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other: Operator) -> Operator:
        if not isinstance(other, Operator):
            return NotImplemented
        _check_dims(self.dim, other.dim)
        return Operator(self.entries @ other.entries)


def basis_state(dim: int, index: int) -> StateVector:
    """Computational basis vector ``|index>`` in ``dim`` dimensions."""
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for dimension {dim}")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(amps)


def identity(dim: int) -> Operator:
    return Operator(np.eye(dim, dtype=np.complex128))


def sigma_x() -> Operator:
    return Operator(np.array([[0, 1], [1, 0]], dtype=np.complex128))


def sigma_y() -> Operator:
    return Operator(np.array([[0, -1j], [1j, 0]], dtype=np.complex128))


def sigma_z() -> Operator:
    return Operator(np.array([[1, 0], [0, -1]], dtype=np.complex128))


def projector_onto(state: StateVector) -> Operator:
    """Rank-1 projector onto the ray of ``state`` (normalized internally)."""
    u = state.normalized().amps
    return Operator(np.outer(u, u.conj()))


def inner(bra: StateVector, ket: StateVector) -> complex:
    """Inner product ``<bra|ket>``, conjugate-linear in the first argument.

    Raises
    ------
    DimensionMismatchError
        If the two vectors have different dimensions.
    """
    _check_dims(bra.dim, ket.dim)
    return complex(np.vdot(bra.amps, ket.amps))


def tensor(first: Union[StateVector, Operator], *rest: Union[StateVector, Operator]):
    """Kronecker product of state vectors, or of operators.

    All factors must be of the same kind.  The result dimension is the
    product of the factor dimensions and must stay within ``DIM_CAP``;
    the basis index of the pair ``(i, j)`` is ``i * dim(b) + j``.
    """
    factors = (first, *rest)
    kind = type(first)
    if kind not in (StateVector, Operator):
        raise TypeError(f"tensor expects StateVector or Operator, got {kind.__name__}")
    if any(type(f) is not kind for f in factors):
        raise TypeError("tensor factors must all be of the same kind")
    total = 1
    for f in factors:
        total *= f.dim
        if total > DIM_CAP:
            raise DimensionCapError(
                f"tensor product dimension exceeds cap {DIM_CAP}"
            )
    if kind is StateVector:
        out = factors[0].amps
        for f in factors[1:]:
            out = np.kron(out, f.amps)
        return StateVector(out)
    out = factors[0].entries
    for f in factors[1:]:
        out = np.kron(out, f.entries)
    return Operator(out)


def apply(operator: Operator, state: StateVector) -> StateVector:
    """Matrix-vector product ``operator @ state``; the result is not renormalized."""
    _check_dims(operator.dim, state.dim)
    return StateVector(operator.entries @ state.amps)


def validate(
    operator: Operator,
    kind: Literal["hermitian", "projector"],
    tol: float = STRUCTURAL_TOL,
) -> bool:
    """Check a structural matrix property entrywise within ``tol``.

    ``"hermitian"`` checks ``M == M†``; ``"projector"`` additionally
    checks idempotency ``M @ M == M``.  Returns a boolean instead of
    raising so callers can probe.
    """
    e = operator.entries
    hermitian = float(np.max(np.abs(e - e.conj().T))) <= tol
    if kind == "hermitian":
        return hermitian
    if kind == "projector":
        return hermitian and float(np.max(np.abs(e @ e - e))) <= tol
    raise ValueError(f"unknown validation kind {kind!r}")
