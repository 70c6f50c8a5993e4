"""The three-step tomography protocol, exact and finite-shot.

Each step pins the two players' strategy parameters so that Alice's payoff
equals one Stokes parameter of the unknown qubit; running all three steps
therefore reads the full Bloch vector. Steps are listed in protocol order
(the first measures s2, the second s1, the third s3) and every step carries
an explicit label, so nothing downstream depends on position.

Finite-shot estimation draws computational-basis outcomes from the diagonal
of the final state and averages the +-1 payoff entries of the drawn
outcomes. All randomness flows from one 64-bit master seed through a
splitmix-style derivation, so every result is reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .game import (
    GameRun,
    PayoffMatrix,
    Strategy,
    evolve,
    initial_state,
    payoff_exact,
)
from .linalg import DEFAULT_TOL, is_density
from .states import (
    PureQubit,
    StokesVector,
    density_from_stokes,
    fidelity,
    pure_density,
    trace_distance,
)

HALF_PI = math.pi / 2.0

ALICE_PAYOFF = PayoffMatrix(1.0, -1.0, 1.0, -1.0)
BOB_PAYOFF = PayoffMatrix(-1.0, 1.0, -1.0, 1.0)

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


@dataclass(frozen=True)
class ProtocolStep:
    """One canonical measurement setting; label names the Stokes parameter it reads."""

    label: str
    strategy_a: Strategy
    strategy_b: Strategy
    payoff_a: PayoffMatrix
    payoff_b: PayoffMatrix


@dataclass(frozen=True)
class StepPayoffs:
    """Exact per-step payoffs of both players."""

    label: str
    alice: float
    bob: float


@dataclass(frozen=True)
class SampleEstimate:
    """Finite-shot estimate of a payoff: the mean of m outcomes, each +-1.

    std_error is the population standard deviation of the outcomes divided by
    sqrt(m), which for +-1 outcomes never exceeds 1/sqrt(m).
    """

    value: float
    shots: int
    std_error: float
    seed: int
    step_label: str = ""


@dataclass(frozen=True, eq=False)
class TomographyResult:
    """Output of an estimation run; reconstruction fields stay None until filled."""

    stokes_est: StokesVector
    per_step: tuple[SampleEstimate, ...] | None = None
    rho_hat: np.ndarray | None = None
    projected: bool = False
    fidelity: float | None = None
    trace_dist: float | None = None


@dataclass(frozen=True)
class BlochGeometry:
    """Offsets of the three measurement planes and their intersection point.

    Each plane pins one Bloch coordinate (x = s1, y = s2, z = s3), so any
    order of the three measurements cuts out the same point.
    """

    plane_x: float
    plane_y: float
    plane_z: float
    point: tuple[float, float, float]


_PROTOCOL_STEPS = (
    ProtocolStep("S2", Strategy(HALF_PI, 0.0), Strategy(HALF_PI, HALF_PI), ALICE_PAYOFF, BOB_PAYOFF),
    ProtocolStep("S1", Strategy(HALF_PI, 0.0), Strategy(HALF_PI, 0.0), ALICE_PAYOFF, BOB_PAYOFF),
    ProtocolStep("S3", Strategy(0.0, 0.0), Strategy(0.0, 0.0), ALICE_PAYOFF, BOB_PAYOFF),
)


def protocol_steps() -> tuple[ProtocolStep, ...]:
    """The three canonical steps, in protocol order: S2, then S1, then S3.

    alpha_A is fixed to 0 throughout since payoffs are independent of it.
    """
    return _PROTOCOL_STEPS


def derive_seed(master: int, index: int) -> int:
    """Mix (master seed, index) into an independent 64-bit sub-seed.

    One splitmix64 output step; distinct indices under the same master always
    yield distinct sub-seeds. Used for per-step, per-trial, and per-cell
    seeding so that parallel evaluations never share generator state.
    """
    _check_seed(master)
    if index < 0:
        raise ValueError("index must be non-negative")
    x = (master + (index + 1) * _GOLDEN) & _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


def _check_seed(seed: int) -> None:
    if not 0 <= int(seed) <= _MASK64:
        raise ValueError("seed must be an unsigned 64-bit integer")


def split_total_shots(total: int) -> tuple[int, int, int]:
    """Split one shot budget evenly over the three steps (protocol order).

    The remainder goes to the final (S3) step.
    """
    if total < 3:
        raise ValueError("need at least one shot per step")
    base, rem = divmod(total, 3)
    return (base, base, base + rem)


def step_payoffs(rho: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[StepPayoffs, ...]:
    """Exact payoffs of both players at each canonical step, for a given state."""
    rho_in = initial_state(rho, tol)
    out = []
    for step in protocol_steps():
        run = evolve(rho_in, step.strategy_a, step.strategy_b, tol)
        out.append(
            StepPayoffs(
                label=step.label,
                alice=payoff_exact(run, step.payoff_a),
                bob=payoff_exact(run, step.payoff_b),
            )
        )
    return tuple(out)


def exact_stokes(rho: np.ndarray, tol: float = DEFAULT_TOL) -> StokesVector:
    """Stokes vector read off from Alice's exact payoffs over the three steps."""
    alice = {sp.label: sp.alice for sp in step_payoffs(rho, tol)}
    return StokesVector(1.0, alice["S1"], alice["S2"], alice["S3"])


def measurement_distribution(run: GameRun) -> np.ndarray:
    """Computational-basis outcome probabilities: the clamped diagonal of rho_f."""
    diag = np.diagonal(run.rho_f)
    assert float(np.max(np.abs(diag.imag))) <= DEFAULT_TOL, "density diagonal must be real"
    probs = np.clip(diag.real, 0.0, 1.0)
    assert abs(float(probs.sum()) - 1.0) <= DEFAULT_TOL, "outcome probabilities must sum to 1"
    return probs


def sample_payoff(
    run: GameRun, p: PayoffMatrix, shots: int, seed: int, label: str = ""
) -> SampleEstimate:
    """Monte Carlo payoff estimate from seeded computational-basis draws.

    Outcomes are drawn by inverse CDF over the final-state diagonal; each draw
    scores the payoff entry of its basis state. Entries must be exactly +-1 so
    the mean is an average of +-1 values and the 1/sqrt(m) error bound holds.
    Identical (run, p, shots, seed) reproduce the identical estimate.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    _check_seed(seed)
    entries = np.array(p.entries())
    if not np.all(np.abs(entries) == 1.0):
        raise ValueError("payoff entries must all be +1 or -1 for sampling")
    probs = measurement_distribution(run)
    cdf = np.cumsum(probs / probs.sum())
    rng = np.random.default_rng(seed)
    draws = rng.random(shots)
    idx = np.minimum(np.searchsorted(cdf, draws, side="right"), 3)
    z = entries[idx]
    return SampleEstimate(
        value=float(z.mean()),
        shots=shots,
        std_error=float(z.std() / math.sqrt(shots)),
        seed=int(seed),
        step_label=label,
    )


def estimate_stokes(
    rho: np.ndarray, shots: int, seed: int, tol: float = DEFAULT_TOL
) -> TomographyResult:
    """Sample all three steps with shots each; sub-seed i drives step i.

    Returns estimates only; reconstruction is a separate concern.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    _check_seed(seed)
    rho_in = initial_state(rho, tol)
    estimates = []
    for i, step in enumerate(protocol_steps()):
        run = evolve(rho_in, step.strategy_a, step.strategy_b, tol)
        estimates.append(
            sample_payoff(run, step.payoff_a, shots, derive_seed(seed, i), label=step.label)
        )
    value = {e.step_label: e.value for e in estimates}
    return TomographyResult(
        stokes_est=StokesVector(1.0, value["S1"], value["S2"], value["S3"]),
        per_step=tuple(estimates),
    )


def reconstruct(
    s: StokesVector, project: bool = True, tol: float = DEFAULT_TOL
) -> tuple[np.ndarray, bool]:
    """Rebuild a density matrix from Stokes parameters.

    A Bloch vector outside the unit ball (beyond tol, so exact round trips of
    physical states never trigger this) is rescaled radially onto the sphere
    when project is True, and is an error otherwise. Returns (rho, projected).
    """
    if abs(s.s0 - 1.0) > tol:
        raise ValueError(f"s0 must be 1 for a normalized state, got {s.s0}")
    norm = s.bloch_norm()
    projected = False
    if norm > 1.0 + tol:
        if not project:
            raise ValueError(f"Bloch norm {norm:.6g} outside the unit ball; enable projection")
        s = StokesVector(s.s0, s.s1 / norm, s.s2 / norm, s.s3 / norm)
        projected = True
    return density_from_stokes(s, tol), projected


def run_tomography(
    q: PureQubit, shots: int, seed: int, tol: float = DEFAULT_TOL
) -> TomographyResult:
    """Full pipeline: estimate, reconstruct with projection, score against truth."""
    rho_true = pure_density(q)
    est = estimate_stokes(rho_true, shots, seed, tol)
    rho_hat, projected = reconstruct(est.stokes_est, project=True, tol=tol)
    assert is_density(rho_hat, tol), "projected reconstruction must be a valid state"
    return TomographyResult(
        stokes_est=est.stokes_est,
        per_step=est.per_step,
        rho_hat=rho_hat,
        projected=projected,
        fidelity=fidelity(q, rho_hat, tol),
        trace_dist=trace_distance(rho_true, rho_hat, tol),
    )


def bloch_geometry(q: PureQubit, tol: float = DEFAULT_TOL) -> BlochGeometry:
    """Measurement-plane offsets for a pure state, from the exact payoffs.

    The s3-reading step confines the state to the plane z = s3, the s2 step
    to y = s2, and the s1 step to x = s1; the intersection is the Bloch point.
    """
    s = exact_stokes(pure_density(q), tol)
    return BlochGeometry(plane_x=s.s1, plane_y=s.s2, plane_z=s.s3, point=(s.s1, s.s2, s.s3))
