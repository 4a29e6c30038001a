"""trimirror: quantum dynamics of a cavity / vibrating-mirror / cavity system.

Two electromagnetic cavities separated by a two-sided movable mirror,
coupled by radiation pressure.  Depending on the resonance condition the
system exchanges mirror quanta with two-photon or four-photon entangled
cavity states (NOON structure), or emits photon pairs into both cavities at
once.  The package builds the full Hamiltonian on truncated Fock spaces,
verifies the effective low-energy blocks, integrates the Lindblad master
equation and its quantum-trajectory unraveling with dressed jump operators,
and quantifies two-cavity entanglement by logarithmic negativity.
"""

from .fock import (
    DimensionMismatchError,
    ModeDims,
    Operator,
    TruncationError,
    annihilator,
    basis_state,
    commutator,
    creator,
    embed,
    load_operator,
    number_op,
    save_operator,
)
from .model import (
    JanusCoefficients,
    ScenarioKind,
    SingularGeneratorError,
    SystemParams,
    build_full_hamiltonian,
    build_sw_generator,
    effective_hamiltonian_numeric,
    four_photon_block,
    janus_block,
    janus_coefficients,
    janus_params_from_ratio,
    two_photon_block,
)
from .dressed import (
    DressedBasis,
    DressedOperatorSet,
    build_dressed_operators,
    diagonalize,
    dressed_lowering,
    dressed_occupation,
)
from .dynamics import (
    DensityMatrix,
    EnsembleResult,
    MasterResult,
    TimeGrid,
    TrajectoryResult,
    average_trajectories,
    evolve_closed,
    evolve_master,
    evolve_trajectory,
    lindblad_rhs,
    trajectory_seed,
)
from .entanglement import (
    DetuningScan,
    chevron_scan,
    detuned_mirror_params,
    detuned_rabi_profile,
    log_negativity,
    partial_trace,
    partial_transpose,
    population_amplitude_scan,
)
from .tuning import ResonanceResult, analytic_resonance, optimize_resonance

__version__ = "0.1.0"
