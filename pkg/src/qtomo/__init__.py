"""Single-qubit state tomography through a two-player game protocol.

Exact simulation of the appended two-qubit state, strategy unitaries, and
payoff readout; finite-shot Monte Carlo estimation of the Stokes parameters;
density-matrix reconstruction with physicality projection; and a `qtomo` CLI.
"""

from .game import (
    ClosedFormCoefficients,
    GameRun,
    PayoffMatrix,
    Strategy,
    closed_form_coefficients,
    evolve,
    initial_state,
    payoff_closed_form,
    payoff_exact,
    payoff_operator,
    strategy_unitary,
)
from .linalg import (
    DEFAULT_TOL,
    add,
    cmatrix,
    dagger,
    hermitian_eig,
    identity,
    is_density,
    is_hermitian,
    is_unitary,
    kron,
    matmul,
    max_abs,
    scale,
    sub,
    trace,
)
from .states import (
    PAULIS,
    SIGMA0,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    PureQubit,
    StokesVector,
    density_from_stokes,
    fidelity,
    probability_of,
    pure_density,
    stokes_of,
    trace_distance,
)
from .tomography import (
    ALICE_PAYOFF,
    BOB_PAYOFF,
    BlochGeometry,
    ProtocolStep,
    SampleEstimate,
    StepPayoffs,
    TomographyResult,
    bloch_geometry,
    derive_seed,
    estimate_stokes,
    exact_stokes,
    measurement_distribution,
    protocol_steps,
    reconstruct,
    run_tomography,
    sample_payoff,
    split_total_shots,
    step_payoffs,
)

__version__ = "0.1.0"

__all__ = [
    "ALICE_PAYOFF",
    "BOB_PAYOFF",
    "BlochGeometry",
    "ClosedFormCoefficients",
    "DEFAULT_TOL",
    "GameRun",
    "PAULIS",
    "PayoffMatrix",
    "ProtocolStep",
    "PureQubit",
    "SIGMA0",
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "SampleEstimate",
    "StepPayoffs",
    "StokesVector",
    "Strategy",
    "TomographyResult",
    "add",
    "bloch_geometry",
    "closed_form_coefficients",
    "cmatrix",
    "dagger",
    "density_from_stokes",
    "derive_seed",
    "estimate_stokes",
    "evolve",
    "exact_stokes",
    "fidelity",
    "hermitian_eig",
    "identity",
    "initial_state",
    "is_density",
    "is_hermitian",
    "is_unitary",
    "kron",
    "matmul",
    "max_abs",
    "measurement_distribution",
    "payoff_closed_form",
    "payoff_exact",
    "payoff_operator",
    "probability_of",
    "protocol_steps",
    "pure_density",
    "reconstruct",
    "run_tomography",
    "sample_payoff",
    "scale",
    "split_total_shots",
    "step_payoffs",
    "stokes_of",
    "strategy_unitary",
    "sub",
    "trace",
    "trace_distance",
]
