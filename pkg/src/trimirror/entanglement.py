"""Two-cavity entanglement: partial trace/transpose, logarithmic negativity,
and the detuning (chevron) scan.

Entanglement between the cavities is quantified by the logarithmic
negativity E_N = log2 || rho^(Gamma_A) ||_1 of the mirror-traced two-cavity
state, with the partial transpose taken on cavity a.  The trace norm is
computed by Hermitian eigendecomposition of the partial transpose (exact at
these sizes).

Reduced states are handled as plain arrays plus explicit subsystem
dimensions, which keeps these functions reusable for any bipartition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import DensityMatrix, TimeGrid, evolve_master, evolve_closed
from .fock import ModeDims, basis_state
from .model import SystemParams

__all__ = [
    "DetuningScan",
    "partial_trace",
    "partial_transpose",
    "log_negativity",
    "detuned_rabi_profile",
    "chevron_scan",
    "population_amplitude_scan",
    "detuned_mirror_params",
]


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def partial_trace(rho, dims, keep) -> np.ndarray:
    """Reduced density matrix over the kept subsystems.

    ``dims`` are the subsystem dimensions of ``rho`` (row-major tensor
    ordering), ``keep`` the indices to retain, in their original order.
    """
    keep = tuple(keep)
    if len(keep) == 0:
        raise ValueError("keep must name at least one subsystem")
    if isinstance(dims, ModeDims):
        dims = dims.dims
    dims = tuple(int(d) for d in dims)
    m = _as_matrix(rho)
    n = len(dims)
    if sorted(set(keep)) != sorted(keep) or any(not 0 <= k < n for k in keep):
        raise ValueError(f"invalid keep set {keep} for {n} subsystems")
    tensor = m.reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    for count, i in enumerate(sorted(traced)):
        axis = i - count              # axes shift as we trace
        nleft = n - count
        tensor = np.trace(tensor, axis1=axis, axis2=axis + nleft)
    d_keep = int(np.prod([dims[k] for k in keep]))
    return tensor.reshape(d_keep, d_keep)


def partial_transpose(rho, dims2, subsystem: int) -> np.ndarray:
    """Partial transpose of a two-subsystem density matrix."""
    d1, d2 = (int(d) for d in dims2)
    if subsystem not in (0, 1):
        raise ValueError(f"subsystem must be 0 or 1, got {subsystem}")
    m = _as_matrix(rho).reshape(d1, d2, d1, d2)
    if subsystem == 0:
        m = m.transpose(2, 1, 0, 3)
    else:
        m = m.transpose(0, 3, 2, 1)
    return m.reshape(d1 * d2, d1 * d2)


def log_negativity(rho, dims2, subsystem: int = 0) -> float:
    """log2 of the trace norm of the partial transpose; clamped at 0."""
    pt = partial_transpose(rho, dims2, subsystem)
    pt = 0.5 * (pt + pt.conj().T)
    eigs = np.linalg.eigvalsh(pt)
    trace_norm = float(np.sum(np.abs(eigs)))
    return max(0.0, float(np.log2(trace_norm)))


def detuned_rabi_profile(delta: float, g_eff: float) -> tuple[float, float]:
    """Detuned two-level Rabi frequency and transfer amplitude.

    ``delta`` is the diagonal-energy difference of the two-level block:
    Omega(delta) = sqrt(g_eff^2 + (delta/2)^2),
    A(delta) = g_eff^2 / (g_eff^2 + (delta/2)^2).
    """
    if g_eff <= 0:
        raise ValueError(f"g_eff must be positive, got {g_eff}")
    half = 0.5 * delta
    s = g_eff * g_eff + half * half
    return float(np.sqrt(s)), float(g_eff * g_eff / s)


def detuned_mirror_params(params_base: SystemParams, delta: float) -> SystemParams:
    """Shift the mirror frequency so the two-level detuning equals ``delta``.

    The cavities stay at their resonant value; the phonon-pair state carries
    two mirror quanta, so a mirror shift of delta/2 changes the two-level
    diagonal difference by delta.
    """
    return params_base.replace(omega_b=params_base.omega_b + 0.5 * delta)


@dataclass
class DetuningScan:
    """E_N(t, delta) surface from master-equation runs at scanned detunings."""

    delta_values: np.ndarray
    grid: TimeGrid
    surface: np.ndarray  # (n_points, n_delta), E_N in bits

    def __post_init__(self):
        self.delta_values = np.asarray(self.delta_values, dtype=float)
        self.surface = np.asarray(self.surface, dtype=float)
        expected = (self.grid.n_points, self.delta_values.size)
        if self.surface.shape != expected:
            raise ValueError(f"surface shape {self.surface.shape} != {expected}")
        if self.surface.min() < 0:
            raise ValueError("E_N surface has negative entries")


def chevron_scan(
    params_base: SystemParams,
    delta_values,
    grid: TimeGrid,
    dims: ModeDims,
    initial_state=(0, 2, 0),
    split_dt: float = 0.01,
) -> DetuningScan:
    """E_N of the mirror-traced state vs time and detuning.

    For each detuning the mirror frequency is shifted by delta/2, the master
    equation is integrated from the initial Fock state, the mirror is traced
    out at each output time and E_N is computed with the partial transpose
    on cavity a.
    """
    delta_values = np.asarray(delta_values, dtype=float)
    surface = np.empty((grid.n_points, delta_values.size))
    psi0 = basis_state(initial_state, dims)
    dims_ac = (dims[0], dims[2])
    for j, delta in enumerate(delta_values):
        params = detuned_mirror_params(params_base, float(delta))
        res = evolve_master(psi0, params, dims, grid, method="split",
                            split_dt=split_dt, store_states=True)
        for k, rho in enumerate(res.states):
            rho_ac = partial_trace(rho.matrix, dims.dims, keep=(0, 2))
            surface[k, j] = log_negativity(rho_ac, dims_ac, subsystem=0)
    return DetuningScan(delta_values=delta_values, grid=grid, surface=surface)


def population_amplitude_scan(
    params_base: SystemParams,
    delta_values,
    dims: ModeDims,
    g_eff: float,
    initial_state=(0, 2, 0),
    mode: int = 1,
    periods: float = 1.2,
    n_points: int = 801,
) -> np.ndarray:
    """Fitted population-oscillation amplitude vs detuning (closed system).

    Evolves the bare initial state unitarily at each detuning and extracts
    the transfer amplitude from the depth of the first oscillation of the
    initial mode's occupation: A_fit = (n(0) - min_t n(t)) / n(0).
    """
    delta_values = np.asarray(delta_values, dtype=float)
    psi0 = basis_state(initial_state, dims)
    amps = np.empty(delta_values.size)
    for j, delta in enumerate(delta_values):
        params = detuned_mirror_params(params_base, float(delta))
        omega_rabi, _ = detuned_rabi_profile(float(delta), g_eff)
        t_end = periods * np.pi / omega_rabi
        occ, _ = evolve_closed(psi0, params, dims, TimeGrid(t_end=t_end, n_points=n_points))
        series = occ[mode]
        amps[j] = (series[0] - series.min()) / series[0]
    return amps
