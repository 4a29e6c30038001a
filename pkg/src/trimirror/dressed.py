"""Eigenbasis of the full Hamiltonian and dressed ladder operators.

Observables and dissipation channels are defined through dressed operators

    X_o^+ = sum_{j>k} <k| (o + o') |j>  |k><j| ,      X_o^- = (X_o^+)^dagger

built from the mode quadratures in the energy eigenbasis: X^+ lowers energy
by construction, so it acts as the jump operator of mode ``o`` and
``<X^- X^+>`` is the reported (dressed) occupation.  At g = 0 the dressed
operators reduce to the bare ladder operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh

from .fock import ModeDims, Operator, annihilator, embed
from .model import SystemParams, build_full_hamiltonian

__all__ = [
    "DressedBasis",
    "DressedOperatorSet",
    "diagonalize",
    "dressed_lowering",
    "dressed_occupation",
    "build_dressed_operators",
]

# Eigenvalue ties below this width (units of w_b) get the deterministic
# ordering treatment; eigh output inside such clusters is reordered by the
# overlap rule documented in `_order_degenerate`.
DEGENERACY_TOL = 1e-12


@dataclass
class DressedBasis:
    """Ascending spectral decomposition of the full Hamiltonian.

    Eigenvalues ascend up to DEGENERACY_TOL: inside exactly-degenerate
    clusters the deterministic overlap ordering takes precedence over the
    (meaningless) value order.
    """

    eigenvalues: np.ndarray   # (n,) real, ascending
    eigenvectors: np.ndarray  # (n, n) unitary, column j is |j>
    dims: ModeDims

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    def to_eigenbasis(self, op: Operator) -> np.ndarray:
        """Matrix of an operator in the energy eigenbasis."""
        V = self.eigenvectors
        return V.conj().T @ op.matrix @ V

    def state_to_eigenbasis(self, psi: np.ndarray) -> np.ndarray:
        return self.eigenvectors.conj().T @ psi

    def state_from_eigenbasis(self, psi_eig: np.ndarray) -> np.ndarray:
        return self.eigenvectors @ psi_eig


@dataclass
class DressedOperatorSet:
    """Dressed lowering/raising operators for the three modes.

    ``X_plus[o]`` / ``X_minus[o]`` are kept both in the original Fock basis
    (`Operator`) and as plain matrices in the eigenbasis, where X^+ is
    strictly upper triangular.
    """

    basis: DressedBasis
    X_plus: dict[str, Operator]
    X_minus: dict[str, Operator]
    X_plus_eig: dict[str, np.ndarray]

    @property
    def dims(self) -> ModeDims:
        return self.basis.dims


def _order_degenerate(w: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministically order eigenvector columns inside degenerate clusters.

    Ties (|E_i - E_j| < DEGENERACY_TOL) are broken by descending overlap with
    the smallest-index bare Fock state the cluster touches.  The j>k filter
    in the dressed operators depends on this ordering, so it must be stable
    across runs.
    """
    n = w.size
    i = 0
    order = np.arange(n)
    while i < n:
        j = i + 1
        while j < n and w[j] - w[j - 1] < DEGENERACY_TOL:
            j += 1
        if j - i > 1:
            cols = order[i:j]
            block = np.abs(V[:, cols]) ** 2
            touched = np.nonzero(block.sum(axis=1) > 1e-12)[0]
            anchor = int(touched[0]) if touched.size else 0
            sub = np.argsort(-block[anchor, :], kind="stable")
            order[i:j] = cols[sub]
        i = j
    return w[order], V[:, order]


def _fix_phases(V: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive."""
    idx = np.argmax(np.abs(V), axis=0)
    phases = V[idx, np.arange(V.shape[1])]
    phases = np.where(np.abs(phases) > 0, phases / np.abs(phases), 1.0)
    return V / phases[np.newaxis, :]


def diagonalize(H: Operator, hermiticity_tol: float = 1e-10) -> DressedBasis:
    """Full ascending spectral decomposition of a Hermitian operator."""
    dev = np.max(np.abs(H.matrix - H.matrix.conj().T))
    scale = max(1.0, float(np.max(np.abs(H.matrix))))
    if dev > hermiticity_tol * scale:
        raise ValueError(
            f"matrix is not Hermitian: max |H - H^dag| = {dev:.3e} "
            f"(tolerance {hermiticity_tol:.1e} x scale {scale:.3g})"
        )
    Hs = 0.5 * (H.matrix + H.matrix.conj().T)
    w, V = eigh(Hs)
    w, V = _order_degenerate(w, V)
    V = _fix_phases(V)
    return DressedBasis(eigenvalues=w, eigenvectors=V, dims=H.dims)


def dressed_lowering(basis: DressedBasis, mode: str) -> Operator:
    """Dressed lowering operator X^+ of one mode, in the Fock basis.

    Strictly upper triangular in the eigenbasis: only <k|(o+o')|j> elements
    with j > k (strict energy-index ordering, also inside near-degenerate
    clusters) survive.
    """
    mode_index = {"a": 0, "b": 1, "c": 2}[mode]
    dims = basis.dims
    o = embed(annihilator(dims[mode_index]), mode_index, dims)
    quad = o + o.dag()
    Q = basis.to_eigenbasis(quad)
    X_eig = np.triu(Q, k=1)
    V = basis.eigenvectors
    return Operator(V @ X_eig @ V.conj().T, dims)


def dressed_occupation(state, ops: DressedOperatorSet, mode: str, norm_tol: float = 1e-6) -> float:
    """Expectation <X^- X^+> of one mode on a normalized state.

    ``state`` is a vector or density matrix in the Fock basis.
    """
    X = ops.X_plus[mode].matrix
    state = np.asarray(state)
    if state.ndim == 1:
        nrm = np.linalg.norm(state)
        if abs(nrm - 1.0) > norm_tol:
            raise ValueError(f"state vector norm {nrm} deviates from 1 beyond {norm_tol}")
        y = X @ state
        return float(np.real(np.vdot(y, y)))
    tr = np.trace(state)
    if abs(tr - 1.0) > norm_tol:
        raise ValueError(f"density matrix trace {tr} deviates from 1 beyond {norm_tol}")
    return float(np.real(np.trace(X @ state @ X.conj().T)))


@lru_cache(maxsize=8)
def _cached_dressed(params: SystemParams, dims: ModeDims) -> DressedOperatorSet:
    H = build_full_hamiltonian(params, dims)
    basis = diagonalize(H)
    X_plus_eig = {}
    X_plus = {}
    V = basis.eigenvectors
    for mode, k in (("a", 0), ("b", 1), ("c", 2)):
        o = embed(annihilator(dims[k]), k, dims)
        Q = basis.to_eigenbasis(o + o.dag())
        Xe = np.triu(Q, k=1)  # exact zeros on and below the diagonal
        X_plus_eig[mode] = Xe
        X_plus[mode] = Operator(V @ Xe @ V.conj().T, dims)
    X_minus = {m: X_plus[m].dag() for m in ("a", "b", "c")}
    return DressedOperatorSet(basis=basis, X_plus=X_plus, X_minus=X_minus, X_plus_eig=X_plus_eig)


def build_dressed_operators(params: SystemParams, dims: ModeDims) -> DressedOperatorSet:
    """Diagonalize once and build the dressed operator set (cached)."""
    return _cached_dressed(params, dims)
