"""Open-system dynamics: Lindblad master equation and quantum trajectories.

Dissipation acts through the dressed lowering operators X_o^+ at rates
gamma_o (zero-temperature loss in the dressed basis):

    drho/dt = -i[H, rho] + sum_o gamma_o ( X_o^+ rho X_o^-
               - 1/2 X_o^- X_o^+ rho - 1/2 rho X_o^- X_o^+ )

Trajectories unravel the same equation: the state evolves under the
non-Hermitian H - (i/2) sum_o gamma_o X_o^- X_o^+, a jump fires when the
squared norm drops below a uniform random threshold r (redrawn after every
jump), the channel is drawn with probability proportional to
gamma_o <X_o^- X_o^+>, and the state is replaced by the normalized
X_o^+ |psi>.

Numerics
--------
Everything works in the eigenbasis of the full Hamiltonian, where H is
diagonal and the X^+ are strictly upper triangular.

* Trajectories: the non-Hermitian generator is time independent, so the
  no-jump flow is propagated exactly by a matrix exponential per output-grid
  step.  Jump times are bracketed by a bisection walk over pre-squared
  dyadic subdivisions of the grid step (exact composition, bracket width
  below JUMP_TIME_TOL), which beats step-size-limited integration by orders
  of magnitude for the slow third-order processes.

* Master equation: the default integrator is a fixed-step Strang splitting:
  the coherent half-steps are exact elementwise phases, the dissipative step
  is a second-order Taylor expansion of its (tiny-norm) generator.  Both
  pieces preserve the trace identically and are completely positive up to
  roundoff, so trace/positivity invariants hold by construction; accuracy is
  set by the splitting error O(dt^2) and is validated against the adaptive
  reference integrator (``method="rk45"``, relative tolerance 1e-8) in the
  test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from .dressed import DressedOperatorSet, build_dressed_operators
from .fock import ModeDims, Operator
from .model import SystemParams

__all__ = [
    "TimeGrid",
    "DensityMatrix",
    "TrajectoryResult",
    "EnsembleResult",
    "MasterResult",
    "lindblad_rhs",
    "evolve_master",
    "evolve_trajectory",
    "average_trajectories",
    "evolve_closed",
    "trajectory_seed",
]

MODES = ("a", "b", "c")

# Width of the jump-time bracket, in units of 1/w_b.
JUMP_TIME_TOL = 1e-6

# Default Strang substep for the master equation, in units of 1/w_b.
DEFAULT_SPLIT_DT = 0.01


@dataclass(frozen=True)
class TimeGrid:
    """Uniform output grid in units of 1/w_b."""

    t_end: float
    n_points: int
    t_start: float = 0.0

    def __post_init__(self):
        if self.t_end <= self.t_start:
            raise ValueError("t_end must exceed t_start")
        if self.n_points < 2:
            raise ValueError("n_points must be at least 2")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.n_points)

    @property
    def dt(self) -> float:
        return (self.t_end - self.t_start) / (self.n_points - 1)


@dataclass
class DensityMatrix:
    """Dense density matrix over the truncated three-mode space."""

    matrix: np.ndarray
    dims: ModeDims

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        n = self.dims.total
        if self.matrix.shape != (n, n):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match dimension {n}")

    @classmethod
    def from_ket(cls, psi: np.ndarray, dims: ModeDims) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=complex)
        return cls(np.outer(psi, psi.conj()), dims)

    def validate(self, herm_tol=1e-10, trace_tol=1e-8, eig_tol=1e-8) -> "DensityMatrix":
        dev = np.max(np.abs(self.matrix - self.matrix.conj().T))
        if dev > herm_tol:
            raise ValueError(f"density matrix not Hermitian: {dev:.3e}")
        tr = np.trace(self.matrix).real
        if abs(tr - 1.0) > trace_tol:
            raise ValueError(f"density matrix trace {tr} deviates from 1")
        w = np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T))
        if w.min() < -eig_tol:
            raise ValueError(f"density matrix has negative eigenvalue {w.min():.3e}")
        return self


@dataclass
class TrajectoryResult:
    """One stochastic realization."""

    grid: TimeGrid
    occupations: np.ndarray          # (3, n_points), dressed <X^- X^+> per mode
    jumps: list                      # [(time, channel)], strictly increasing times
    seed: object
    norm_squared: np.ndarray = None  # (n_points,) squared norm of the unnormalized state
    diagnostics: list = None         # per-jump (r, t_left, t_right, n2_left, n2_right)


@dataclass
class EnsembleResult:
    """Trajectory-averaged occupations."""

    grid: TimeGrid
    mean_occupations: np.ndarray  # (3, n_points)
    n_traj: int
    base_seed: int


@dataclass
class MasterResult:
    """Master-equation occupations plus the final density matrix."""

    grid: TimeGrid
    mean_occupations: np.ndarray  # (3, n_points)
    rho_final: DensityMatrix
    trace_series: np.ndarray      # (n_points,)
    states: list = None           # optional [(DensityMatrix)] at grid points


def lindblad_rhs(rho, H, jump_ops, rates) -> np.ndarray:
    """Right-hand side -i[H,rho] + sum_o gamma_o D[X_o^+] rho (Fock basis)."""
    r = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    h = H.matrix if isinstance(H, Operator) else np.asarray(H, dtype=complex)
    out = -1j * (h @ r - r @ h)
    for op, gamma in zip(jump_ops, rates):
        if gamma == 0.0:
            continue
        X = op.matrix if isinstance(op, Operator) else np.asarray(op, dtype=complex)
        Xr = X @ r
        XdX = X.conj().T @ X
        out += gamma * (Xr @ X.conj().T - 0.5 * (XdX @ r + r @ XdX))
    return out


# ---------------------------------------------------------------------------
# Shared eigenbasis context
# ---------------------------------------------------------------------------

class _EigCtx:
    """Hamiltonian eigenvalues and dressed operators in the eigenbasis."""

    def __init__(self, params: SystemParams, dims: ModeDims):
        self.params = params
        self.dims = dims
        self.ops: DressedOperatorSet = build_dressed_operators(params, dims)
        self.E = self.ops.basis.eigenvalues
        self.V = self.ops.basis.eigenvectors
        self.X = [self.ops.X_plus_eig[m] for m in MODES]
        self.Xd = [np.ascontiguousarray(X.conj().T) for X in self.X]
        self.gammas = params.gammas
        # non-Hermitian no-jump generator and the decay matrix M = sum g X'X
        M = np.zeros((self.E.size, self.E.size), dtype=complex)
        for X, Xd, g in zip(self.X, self.Xd, self.gammas):
            if g:
                M += g * (Xd @ X)
        self.M = M
        self.H_nh = np.diag(self.E.astype(complex)) - 0.5j * M

    def to_eig(self, psi: np.ndarray) -> np.ndarray:
        return self.V.conj().T @ psi

    def from_eig(self, psi: np.ndarray) -> np.ndarray:
        return self.V @ psi

    def occupations_ket(self, psi: np.ndarray) -> np.ndarray:
        """Dressed occupations of a (possibly unnormalized) eigenbasis ket."""
        n2 = np.vdot(psi, psi).real
        out = np.empty(3)
        for i, X in enumerate(self.X):
            y = X @ psi
            out[i] = np.vdot(y, y).real / n2
        return out

    def occupations_rho(self, rho: np.ndarray) -> np.ndarray:
        out = np.empty(3)
        for i, X in enumerate(self.X):
            out[i] = np.einsum("ij,jk,ik->", X, rho, X.conj(), optimize=True).real
        return out


_CTX_CACHE: dict = {}


def _get_ctx(params: SystemParams, dims: ModeDims) -> _EigCtx:
    key = (params, dims)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = _EigCtx(params, dims)
        if len(_CTX_CACHE) > 6:
            _CTX_CACHE.clear()
        _CTX_CACHE[key] = ctx
    return ctx


# ---------------------------------------------------------------------------
# Quantum trajectories
# ---------------------------------------------------------------------------

class _Propagators:
    """No-jump propagators for one grid step and its dyadic subdivisions.

    P[m] advances by dt / 2^m; P[0] is the full grid step.  Built by one
    small-norm Pade exponential at the finest level and repeated squaring,
    so all pieces compose exactly.  The number of levels puts the finest
    tick below JUMP_TIME_TOL.
    """

    def __init__(self, H_nh: np.ndarray, dt: float):
        self.dt = dt
        self.levels = max(1, math.ceil(math.log2(dt / JUMP_TIME_TOL)))
        P = [None] * (self.levels + 1)
        P[self.levels] = expm(-1j * H_nh * (dt / 2 ** self.levels))
        for m in range(self.levels - 1, 0, -1):
            P[m] = P[m + 1] @ P[m + 1]
        # the full step is applied once per output point; computing it
        # directly avoids the error amplification of the squaring cascade
        P[0] = expm(-1j * H_nh * dt)
        self.P = P
        self.ticks = 2 ** self.levels


_PROP_CACHE: dict = {}


def _get_propagators(params: SystemParams, dims: ModeDims, dt: float) -> _Propagators:
    key = (params, dims, dt)
    prop = _PROP_CACHE.get(key)
    if prop is None:
        ctx = _get_ctx(params, dims)
        prop = _Propagators(ctx.H_nh, dt)
        if len(_PROP_CACHE) > 4:
            _PROP_CACHE.clear()
        _PROP_CACHE[key] = prop
    return prop


def trajectory_seed(base_seed: int, index: int) -> tuple[int, int]:
    """Per-trajectory seed: the pure function (base_seed, index) fed to
    numpy's SeedSequence."""
    return (int(base_seed), int(index))


def _prepare_ket(psi0, dims: ModeDims) -> np.ndarray:
    psi = np.asarray(psi0, dtype=complex)
    if psi.shape != (dims.total,):
        raise ValueError(f"state vector shape {psi.shape} does not match dimension {dims.total}")
    nrm = np.linalg.norm(psi)
    if abs(nrm - 1.0) > 1e-6:
        raise ValueError(f"initial state norm {nrm} deviates from 1")
    return psi / nrm


def evolve_trajectory(
    psi0,
    params: SystemParams,
    dims: ModeDims,
    grid: TimeGrid,
    seed,
    collect_diagnostics: bool = False,
) -> TrajectoryResult:
    """One quantum trajectory with seeded jump statistics.

    The random stream consumes draws in a fixed order (threshold r at start
    and after every jump; one channel draw per jump), so identical
    (psi0, params, seed) reproduce bit-identical jump logs.
    """
    ctx = _get_ctx(params, dims)
    prop = _get_propagators(params, dims, grid.dt)
    rng = np.random.default_rng(seed)

    psi = ctx.to_eig(_prepare_ket(psi0, dims))
    times = grid.times
    occ = np.empty((3, grid.n_points))
    norm2 = np.empty(grid.n_points)
    occ[:, 0] = ctx.occupations_ket(psi)
    norm2[0] = 1.0
    jumps: list = []
    diags: list = [] if collect_diagnostics else None

    r = rng.random()
    total_ticks = prop.ticks
    tick_dt = grid.dt / total_ticks

    for k in range(1, grid.n_points):
        t_left = times[k - 1]
        q = 0
        while q < total_ticks:
            # start from the largest dyadic piece that still fits
            span = total_ticks - q
            m = prop.levels - (span.bit_length() - 1)
            while True:
                piece = 2 ** (prop.levels - m)
                psi_try = prop.P[m] @ psi
                n2 = np.vdot(psi_try, psi_try).real
                if n2 >= r:
                    psi = psi_try
                    q += piece
                    break
                if piece == 1:
                    # one-tick bracket: jump inside (q, q+1)
                    n2_left = np.vdot(psi, psi).real
                    t_j = t_left + (q + 0.5) * tick_dt
                    if collect_diagnostics:
                        diags.append(
                            (r, t_left + q * tick_dt, t_left + (q + 1) * tick_dt, n2_left, n2)
                        )
                    psi, channel = _apply_jump(ctx, psi, rng)
                    jumps.append((t_j, channel))
                    r = rng.random()
                    break  # re-enter walk from tick q with the fresh state
                m += 1  # halve the piece, retry from the same state
        occ[:, k] = ctx.occupations_ket(psi)
        norm2[k] = np.vdot(psi, psi).real

    return TrajectoryResult(
        grid=grid,
        occupations=occ,
        jumps=jumps,
        seed=seed,
        norm_squared=norm2,
        diagnostics=diags,
    )


def _apply_jump(ctx: _EigCtx, psi: np.ndarray, rng) -> tuple[np.ndarray, str]:
    if not np.all(np.isfinite(psi)):
        raise RuntimeError("state norm underflow without a detectable jump")
    weights = np.empty(3)
    lowered = []
    for i, (X, g) in enumerate(zip(ctx.X, ctx.gammas)):
        y = X @ psi
        lowered.append(y)
        weights[i] = g * np.vdot(y, y).real
    total = weights.sum()
    if total <= 0.0:
        raise RuntimeError("zero total jump rate at threshold crossing")
    u = rng.random() * total
    idx = int(np.searchsorted(np.cumsum(weights), u, side="right"))
    idx = min(idx, 2)
    y = lowered[idx]
    return y / np.linalg.norm(y), MODES[idx]


# ---------------------------------------------------------------------------
# Trajectory ensembles
# ---------------------------------------------------------------------------

_WORKER_ARGS = None


def _init_worker(psi0, params, dims, grid):
    global _WORKER_ARGS
    # warm the caches once per worker so trajectories share the propagators
    _get_propagators(params, dims, grid.dt)
    _WORKER_ARGS = (psi0, params, dims, grid)


def _run_indexed(args):
    index, base_seed = args
    psi0, params, dims, grid = _WORKER_ARGS
    res = evolve_trajectory(psi0, params, dims, grid, trajectory_seed(base_seed, index))
    return index, res.occupations


def average_trajectories(
    psi0,
    params: SystemParams,
    dims: ModeDims,
    grid: TimeGrid,
    n_traj: int,
    base_seed: int,
    workers: int = 1,
) -> EnsembleResult:
    """Pointwise mean of dressed occupations over seeded trajectories.

    Trajectory ``k`` uses the seed ``trajectory_seed(base_seed, k)``; the
    reduction sums in fixed index order after collection, so serial and
    parallel runs agree bit-for-bit.
    """
    if n_traj < 1:
        raise ValueError("n_traj must be at least 1")
    series = np.empty((n_traj, 3, grid.n_points))
    if workers <= 1:
        for k in range(n_traj):
            res = evolve_trajectory(psi0, params, dims, grid, trajectory_seed(base_seed, k))
            series[k] = res.occupations
    else:
        import multiprocessing as mp

        _get_propagators(params, dims, grid.dt)  # build before forking
        _init_worker(psi0, params, dims, grid)
        ctx = mp.get_context("fork")
        with ctx.Pool(processes=workers) as pool:
            for index, occ in pool.imap_unordered(
                _run_indexed, [(k, base_seed) for k in range(n_traj)], chunksize=16
            ):
                series[index] = occ
    mean = series.mean(axis=0)
    return EnsembleResult(grid=grid, mean_occupations=mean, n_traj=n_traj, base_seed=base_seed)


# ---------------------------------------------------------------------------
# Master equation
# ---------------------------------------------------------------------------

def _prepare_rho(rho0, dims: ModeDims) -> np.ndarray:
    if isinstance(rho0, DensityMatrix):
        return rho0.matrix.copy()
    arr = np.asarray(rho0, dtype=complex)
    if arr.ndim == 1:
        arr = _prepare_ket(arr, dims)
        return np.outer(arr, arr.conj())
    if arr.shape != (dims.total, dims.total):
        raise ValueError(f"density matrix shape {arr.shape} does not match dimension {dims.total}")
    return arr.copy()


def evolve_master(
    rho0,
    params: SystemParams,
    dims: ModeDims,
    grid: TimeGrid,
    method: str = "split",
    split_dt: float = DEFAULT_SPLIT_DT,
    store_states: bool = False,
    rtol: float = 1e-8,
    atol: float = 1e-10,
) -> MasterResult:
    """Integrate the Lindblad equation on the output grid.

    ``method="split"`` is the production integrator (see module docstring);
    ``method="rk45"`` integrates the same right-hand side with an adaptive
    Runge-Kutta at (rtol, atol) and serves as the reference in tests.
    """
    ctx = _get_ctx(params, dims)
    rho = _prepare_rho(rho0, dims)
    if method == "split":
        return _evolve_master_split(ctx, rho, grid, split_dt, store_states)
    if method == "rk45":
        return _evolve_master_rk(ctx, rho, grid, store_states, rtol, atol)
    raise ValueError(f"unknown master-equation method {method!r}")


def _dissipator_eig(ctx: _EigCtx, rho: np.ndarray) -> np.ndarray:
    out = -0.5 * (ctx.M @ rho + rho @ ctx.M)
    for X, Xd, g in zip(ctx.X, ctx.Xd, ctx.gammas):
        if g:
            out += g * (X @ rho @ Xd)
    return out


def _evolve_master_split(ctx, rho_fock, grid, split_dt, store_states):
    V = ctx.V
    rho = V.conj().T @ rho_fock @ V
    times = grid.times
    n_sub = max(1, math.ceil(grid.dt / split_dt))
    h = grid.dt / n_sub
    phase_half = np.exp(-0.5j * h * np.subtract.outer(ctx.E, ctx.E))

    occ = np.empty((3, grid.n_points))
    trace = np.empty(grid.n_points)
    occ[:, 0] = ctx.occupations_rho(rho)
    trace[0] = np.trace(rho).real
    states = [] if store_states else None
    if store_states:
        states.append(rho.copy())

    for k in range(1, grid.n_points):
        for _ in range(n_sub):
            rho *= phase_half
            d1 = _dissipator_eig(ctx, rho)
            d2 = _dissipator_eig(ctx, d1)
            rho += h * d1 + (0.5 * h * h) * d2
            rho *= phase_half
        occ[:, k] = ctx.occupations_rho(rho)
        trace[k] = np.trace(rho).real
        if store_states:
            states.append(rho.copy())

    rho_final = DensityMatrix(V @ rho @ V.conj().T, ctx.dims)
    if store_states:
        states = [DensityMatrix(V @ s @ V.conj().T, ctx.dims) for s in states]
    return MasterResult(grid=grid, mean_occupations=occ, rho_final=rho_final,
                        trace_series=trace, states=states)


def _evolve_master_rk(ctx, rho_fock, grid, store_states, rtol, atol):
    n = ctx.dims.total
    V = ctx.V
    X_fock = [V @ X @ V.conj().T for X in ctx.X]
    H = V @ np.diag(ctx.E.astype(complex)) @ V.conj().T
    M = V @ ctx.M @ V.conj().T

    def rhs(t, y):
        rho = y.view(complex).reshape(n, n)
        out = -1j * (H @ rho - rho @ H) - 0.5 * (M @ rho + rho @ M)
        for X, g in zip(X_fock, ctx.gammas):
            if g:
                out += g * (X @ rho @ X.conj().T)
        return out.ravel().view(float)

    y0 = rho_fock.ravel().view(float).copy()
    sol = solve_ivp(rhs, (grid.t_start, grid.t_end), y0, t_eval=grid.times,
                    method="RK45", rtol=rtol, atol=atol)
    if not sol.success:
        raise RuntimeError(f"master-equation integration failed: {sol.message}")

    occ = np.empty((3, grid.n_points))
    trace = np.empty(grid.n_points)
    states = [] if store_states else None
    for k in range(grid.n_points):
        rho = np.ascontiguousarray(sol.y[:, k]).view(complex).reshape(n, n)
        rho_eig = V.conj().T @ rho @ V
        occ[:, k] = ctx.occupations_rho(rho_eig)
        trace[k] = np.trace(rho).real
        if store_states:
            states.append(DensityMatrix(rho.copy(), ctx.dims))
    rho_final = DensityMatrix(
        np.ascontiguousarray(sol.y[:, -1]).view(complex).reshape(n, n).copy(), ctx.dims
    )
    return MasterResult(grid=grid, mean_occupations=occ, rho_final=rho_final,
                        trace_series=trace, states=states)


# ---------------------------------------------------------------------------
# Closed-system evolution (exact, used by tuning cross-checks and scans)
# ---------------------------------------------------------------------------

def evolve_closed(psi0, params: SystemParams, dims: ModeDims, grid: TimeGrid):
    """Unitary evolution via the eigendecomposition; returns (occupations,
    eigenbasis amplitudes at grid points)."""
    ctx = _get_ctx(params, dims)
    c0 = ctx.to_eig(_prepare_ket(psi0, dims))
    phases = np.exp(-1j * np.outer(ctx.E, grid.times))  # (n, T)
    amps = phases * c0[:, None]
    occ = np.empty((3, grid.n_points))
    for i, X in enumerate(ctx.X):
        Y = X @ amps
        occ[i] = np.sum(np.abs(Y) ** 2, axis=0)
    return occ, amps
