"""Bosonic ladder operators on truncated Fock spaces.

All higher layers build on this module.  The system has three modes with a
fixed ordering ``[a, b, c]`` (left cavity, mirror, right cavity); composite
states are flattened row-major over that ordering, so the flattened index of
``|n_a, n_b, n_c>`` is ``(n_a * d_b + n_b) * d_c + n_c``.

Matrices are dense complex: at the sizes used here (total dimension below a
few hundred) dense Hermitian eigendecomposition dominates the runtime and
sparse bookkeeping buys nothing.  The matrix representation is kept behind
the :class:`Operator` wrapper so a sparse backend could be swapped in later.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "TruncationError",
    "DimensionMismatchError",
    "ModeDims",
    "Operator",
    "annihilator",
    "creator",
    "number_op",
    "identity",
    "embed",
    "commutator",
    "anticommutator",
    "basis_state",
    "save_operator",
    "load_operator",
]

MODE_NAMES = ("a", "b", "c")

# Version tag of the on-disk operator dump format (dims + row-major entries).
OPERATOR_DUMP_FORMAT = "trimirror-operator-dump-v1"


class TruncationError(ValueError):
    """Raised for invalid Fock-space truncation sizes."""


class DimensionMismatchError(ValueError):
    """Raised when operators or states with different ModeDims are combined."""


@dataclass(frozen=True)
class ModeDims:
    """Per-mode Fock truncation sizes, in the fixed order [a, b, c]."""

    dims: tuple[int, int, int]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != 3:
            raise TruncationError(f"expected 3 mode dimensions, got {len(dims)}")
        if any(d < 2 for d in dims):
            raise TruncationError(f"every mode needs dimension >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def total(self) -> int:
        """Total Hilbert-space dimension (product of the mode dimensions)."""
        d = 1
        for n in self.dims:
            d *= n
        return d

    def __getitem__(self, mode_index: int) -> int:
        return self.dims[mode_index]

    def flatten(self, occupations) -> int:
        """Row-major flattened index of ``|n_a, n_b, n_c>``."""
        self._check_occupations(occupations)
        n_a, n_b, n_c = occupations
        return (n_a * self.dims[1] + n_b) * self.dims[2] + n_c

    def unflatten(self, index: int) -> tuple[int, int, int]:
        """Occupation triple for a flattened index."""
        if not 0 <= index < self.total:
            raise ValueError(f"flattened index {index} out of range for {self.dims}")
        index, n_c = divmod(index, self.dims[2])
        n_a, n_b = divmod(index, self.dims[1])
        return (n_a, n_b, n_c)

    def _check_occupations(self, occupations) -> None:
        if len(occupations) != 3:
            raise ValueError(f"expected 3 occupations, got {occupations!r}")
        for n, d, name in zip(occupations, self.dims, MODE_NAMES):
            if not 0 <= n < d:
                raise ValueError(
                    f"occupation {n} of mode {name} out of range for dimension {d}"
                )


@dataclass
class Operator:
    """Dense complex operator on the truncated three-mode space."""

    matrix: np.ndarray
    dims: ModeDims

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        n = self.dims.total
        if self.matrix.shape != (n, n):
            raise DimensionMismatchError(
                f"matrix shape {self.matrix.shape} does not match total dimension {n}"
            )

    def _check_same_dims(self, other: "Operator") -> None:
        if self.dims != other.dims:
            raise DimensionMismatchError(
                f"operators carry different ModeDims: {self.dims.dims} vs {other.dims.dims}"
            )

    def __add__(self, other):
        if isinstance(other, Operator):
            self._check_same_dims(other)
            return Operator(self.matrix + other.matrix, self.dims)
        return Operator(self.matrix + other * np.eye(self.dims.total), self.dims)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Operator):
            self._check_same_dims(other)
            return Operator(self.matrix - other.matrix, self.dims)
        return Operator(self.matrix - other * np.eye(self.dims.total), self.dims)

    def __rsub__(self, other):
        return (-1.0) * self + other

    def __mul__(self, scalar):
        return Operator(self.matrix * scalar, self.dims)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Operator):
            self._check_same_dims(other)
            return Operator(self.matrix @ other.matrix, self.dims)
        return self.matrix @ other  # operator acting on a state vector

    def dag(self) -> "Operator":
        """Hermitian adjoint."""
        return Operator(self.matrix.conj().T, self.dims)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return np.max(np.abs(self.matrix - self.matrix.conj().T)) <= tol

    def expect(self, psi: np.ndarray) -> complex:
        """Expectation value on a state vector."""
        return complex(np.vdot(psi, self.matrix @ psi))


def annihilator(n: int) -> np.ndarray:
    """Single-mode annihilation operator: M[k, k+1] = sqrt(k+1)."""
    if n < 2:
        raise TruncationError(f"truncation size must be >= 2, got {n}")
    return np.diag(np.sqrt(np.arange(1, n, dtype=float)), k=1).astype(complex)


def creator(n: int) -> np.ndarray:
    """Single-mode creation operator (adjoint of :func:`annihilator`)."""
    return annihilator(n).conj().T


def number_op(n: int) -> np.ndarray:
    """Single-mode number operator."""
    return np.diag(np.arange(n, dtype=float)).astype(complex)


def identity(dims: ModeDims) -> Operator:
    return Operator(np.eye(dims.total, dtype=complex), dims)


def embed(op: np.ndarray, mode_index: int, dims: ModeDims) -> Operator:
    """Embed a single-mode operator into the three-mode space.

    Kronecker product ``I (x) ... (x) op (x) ... (x) I`` in the fixed
    [a, b, c] ordering.
    """
    op = np.asarray(op, dtype=complex)
    if mode_index not in (0, 1, 2):
        raise ValueError(f"mode_index must be 0, 1 or 2, got {mode_index}")
    d = dims[mode_index]
    if op.shape != (d, d):
        raise DimensionMismatchError(
            f"operator shape {op.shape} does not match mode dimension {d}"
        )
    factors = [np.eye(dims[k], dtype=complex) for k in range(3)]
    factors[mode_index] = op
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return Operator(out, dims)


def commutator(A: Operator, B: Operator) -> Operator:
    """[A, B] = AB - BA."""
    A._check_same_dims(B)
    return Operator(A.matrix @ B.matrix - B.matrix @ A.matrix, A.dims)


def anticommutator(A: Operator, B: Operator) -> Operator:
    """{A, B} = AB + BA."""
    A._check_same_dims(B)
    return Operator(A.matrix @ B.matrix + B.matrix @ A.matrix, A.dims)


def basis_state(occupations, dims: ModeDims) -> np.ndarray:
    """Unit vector for the bare Fock state ``|n_a, n_b, n_c>``."""
    psi = np.zeros(dims.total, dtype=complex)
    psi[dims.flatten(occupations)] = 1.0
    return psi


def ladder_triple(dims: ModeDims) -> tuple[Operator, Operator, Operator]:
    """Embedded annihilation operators (a, b, c) for the three modes."""
    return tuple(embed(annihilator(dims[k]), k, dims) for k in range(3))


def save_operator(path, op: Operator) -> None:
    """Dump an operator to disk: format tag, dims, row-major complex entries."""
    np.savez(
        path,
        format=np.array(OPERATOR_DUMP_FORMAT),
        dims=np.array(op.dims.dims, dtype=np.int64),
        matrix=np.ascontiguousarray(op.matrix),
    )


def load_operator(path) -> Operator:
    """Load an operator written by :func:`save_operator`."""
    with np.load(path, allow_pickle=False) as data:
        fmt = str(data["format"])
        if fmt != OPERATOR_DUMP_FORMAT:
            raise ValueError(f"unknown operator dump format: {fmt!r}")
        dims = ModeDims(tuple(int(d) for d in data["dims"]))
        return Operator(data["matrix"], dims)
