"""Two-player strategy unitaries, appended-state evolution, and payoffs.

The unknown qubit rides in the second tensor slot: the known ancilla |0><0|
is appended as the first factor, player A's unitary acts on the ancilla and
player B's on the unknown qubit. A payoff is the expectation tr(P rho_f) of
a diagonal payoff operator P in the evolved state, and the same number is
available in closed form as a trigonometric function of the strategy angles
and the state angles. The two routes agree to ~1e-12 and are tested against
each other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    cmatrix,
    dagger,
    dim_of,
    is_density,
    kron,
    matmul,
    trace,
)
from .states import TWO_PI, PureQubit

KET0_PROJECTOR = cmatrix([[1, 0], [0, 0]])


@dataclass(frozen=True)
class Strategy:
    """Player unitary parameters.

    beta in [0, pi] mixes the phase rotation into the flip (out-of-range
    values are an error); alpha is the rotation phase, normalized to
    [0, 2 pi).
    """

    beta: float
    alpha: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.beta) and math.isfinite(self.alpha)):
            raise ValueError("strategy angles must be finite")
        if not 0.0 <= self.beta <= math.pi:
            raise ValueError(f"beta must be in [0, pi], got {self.beta}")
        object.__setattr__(self, "alpha", self.alpha % TWO_PI)


@dataclass(frozen=True)
class PayoffMatrix:
    """Real payoff entries e_ij awarded for the measured outcome |ij>."""

    e00: float
    e01: float
    e10: float
    e11: float

    def __post_init__(self):
        if not all(map(math.isfinite, self.entries())):
            raise ValueError("payoff entries must be finite")

    def entries(self) -> tuple[float, float, float, float]:
        """Entries in basis order |00>, |01>, |10>, |11>."""
        return (self.e00, self.e01, self.e10, self.e11)


@dataclass(frozen=True, eq=False)
class GameRun:
    """One evolution rho_f = (U_A kron U_B) rho_in (U_A kron U_B)^dagger."""

    rho_in: np.ndarray
    strategy_a: Strategy
    strategy_b: Strategy
    rho_f: np.ndarray


@dataclass(frozen=True)
class ClosedFormCoefficients:
    """Trigonometric weights of the closed-form payoff.

    The four quadratic weights partition unity; phi_coef and theta_coef carry
    the interference terms that expose the off-diagonal of the unknown state.
    """

    chi: float
    xi: float
    omega: float
    eta: float
    phi_coef: float
    theta_coef: float


def strategy_unitary(s: Strategy) -> np.ndarray:
    """Materialize the strategy as a 2x2 unitary.

    Columns are U|0> = e^{i alpha} cos(beta/2)|0> - sin(beta/2)|1> and
    U|1> = sin(beta/2)|0> + e^{-i alpha} cos(beta/2)|1>.
    """
    c = math.cos(s.beta / 2.0)
    si = math.sin(s.beta / 2.0)
    ph = cmath.exp(1j * s.alpha)
    return cmatrix([[ph * c, si], [-si, ph.conjugate() * c]])


def initial_state(rho: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Append the ancilla: the 4x4 product state |0><0| kron rho."""
    if dim_of(rho) != 2 or not is_density(rho, tol):
        raise ValueError("expected a valid 2x2 density matrix")
    return kron(KET0_PROJECTOR, rho)


def evolve(rho_in: np.ndarray, sa: Strategy, sb: Strategy, tol: float = DEFAULT_TOL) -> GameRun:
    """Conjugate a 4x4 density matrix by the joint strategy unitary."""
    if dim_of(rho_in) != 4 or not is_density(rho_in, tol):
        raise ValueError("expected a valid 4x4 density matrix")
    u = kron(strategy_unitary(sa), strategy_unitary(sb))
    rho_f = matmul(matmul(u, rho_in), dagger(u))
    assert abs(trace(rho_f) - 1.0) <= tol, "unitary evolution must preserve the trace"
    return GameRun(rho_in=rho_in, strategy_a=sa, strategy_b=sb, rho_f=rho_f)


def payoff_operator(p: PayoffMatrix) -> np.ndarray:
    """The diagonal observable diag(e00, e01, e10, e11)."""
    return cmatrix(np.diag(p.entries()))


def payoff_exact(run: GameRun, p: PayoffMatrix) -> float:
    """Payoff tr(P rho_f); the imaginary residue must vanish numerically."""
    val = trace(matmul(payoff_operator(p), run.rho_f))
    assert abs(val.imag) < DEFAULT_TOL, "payoff of a Hermitian observable must be real"
    return val.real


def closed_form_coefficients(sa: Strategy, sb: Strategy) -> ClosedFormCoefficients:
    ca2 = math.cos(sa.beta / 2.0) ** 2
    sa2 = math.sin(sa.beta / 2.0) ** 2
    cb2 = math.cos(sb.beta / 2.0) ** 2
    sb2 = math.sin(sb.beta / 2.0) ** 2
    sin_bb = math.sin(sb.beta)
    return ClosedFormCoefficients(
        chi=ca2 * cb2,
        xi=ca2 * sb2,
        omega=sa2 * sb2,
        eta=sa2 * cb2,
        phi_coef=0.5 * ca2 * sin_bb,
        theta_coef=0.5 * sa2 * sin_bb,
    )


def payoff_closed_form(p: PayoffMatrix, sa: Strategy, sb: Strategy, q: PureQubit) -> float:
    """Closed-form payoff for a pure input state, bypassing any matrix work.

    Both angular brackets (the cos(alpha_B) one and the sin(alpha_B) one)
    carry the same phi_coef/theta_coef weights; the result is independent of
    alpha_A, which cancels exactly in the expectation.
    """
    co = closed_form_coefficients(sa, sb)
    cos_half_sq = math.cos(q.theta / 2.0) ** 2
    sin_half_sq = math.sin(q.theta / 2.0) ** 2
    sin_theta = math.sin(q.theta)
    edge = (p.e00 - p.e01) * co.phi_coef + (p.e10 - p.e11) * co.theta_coef
    return (
        (p.e00 * co.chi + p.e11 * co.omega + p.e01 * co.xi + p.e10 * co.eta) * cos_half_sq
        + (p.e00 * co.xi + p.e11 * co.eta + p.e01 * co.chi + p.e10 * co.omega) * sin_half_sq
        + edge * math.cos(sb.alpha) * sin_theta * math.cos(q.phi)
        + edge * math.sin(sb.alpha) * sin_theta * math.sin(q.phi)
    )
