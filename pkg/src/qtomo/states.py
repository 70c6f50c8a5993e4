"""Single-qubit state representations and conversions.

A qubit density matrix decomposes over the Pauli basis as
rho = (1/2) sum_i s_i sigma_i with s0 = 1; the real coefficients
(s1, s2, s3) form the Bloch vector, which sits on the unit sphere for pure
states and strictly inside the ball for mixed ones. Pure states carry the
usual polar parameterization |psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    cmatrix,
    dim_of,
    hermitian_eig,
    is_density,
    sub,
)

TWO_PI = 2.0 * math.pi

SIGMA0 = cmatrix([[1, 0], [0, 1]])
SIGMA1 = cmatrix([[0, 1], [1, 0]])
SIGMA2 = cmatrix([[0, -1j], [1j, 0]])
SIGMA3 = cmatrix([[1, 0], [0, -1]])
PAULIS = (SIGMA0, SIGMA1, SIGMA2, SIGMA3)


@dataclass(frozen=True)
class PureQubit:
    """Bloch-sphere angles of a pure state.

    theta must lie in [0, pi] (out-of-range values are an error, not wrapped);
    phi is normalized into [0, 2 pi).
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("angles must be finite")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must be in [0, pi], got {self.theta}")
        object.__setattr__(self, "phi", self.phi % TWO_PI)


@dataclass(frozen=True)
class StokesVector:
    """Pauli-basis coefficients (s0, s1, s2, s3) of a qubit state.

    s0 is 1 for normalized states. Finite-shot estimates may land slightly
    outside the unit ball, so ball membership is checked where a density
    matrix is actually built, not here.
    """

    s0: float
    s1: float
    s2: float
    s3: float

    def __post_init__(self):
        if not all(map(math.isfinite, (self.s0, self.s1, self.s2, self.s3))):
            raise ValueError("Stokes parameters must be finite")

    def bloch_norm(self) -> float:
        return math.sqrt(self.s1 * self.s1 + self.s2 * self.s2 + self.s3 * self.s3)


def _require_density(rho: np.ndarray, dim: int, tol: float) -> None:
    if dim_of(rho) != dim or not is_density(rho, tol):
        raise ValueError(f"expected a valid {dim}x{dim} density matrix")


def _amplitudes(q: PureQubit) -> np.ndarray:
    return np.array(
        [math.cos(q.theta / 2.0), cmath.exp(1j * q.phi) * math.sin(q.theta / 2.0)],
        dtype=np.complex128,
    )


def pure_density(q: PureQubit) -> np.ndarray:
    """Density matrix |psi><psi| of the pure state at (theta, phi)."""
    psi = _amplitudes(q)
    return cmatrix(np.outer(psi, psi.conj()))


def stokes_of(rho: np.ndarray, tol: float = DEFAULT_TOL) -> StokesVector:
    """Stokes parameters s_i = Re tr(sigma_i rho) of a 2x2 density matrix."""
    _require_density(rho, 2, tol)
    values = []
    for sigma in PAULIS:
        t = complex(np.trace(sigma @ rho))
        assert abs(t.imag) < DEFAULT_TOL, "Pauli expectation of a density matrix must be real"
        values.append(t.real)
    return StokesVector(*values)


def density_from_stokes(s: StokesVector, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Rebuild rho = (1/2) sum_i s_i sigma_i; the input must lie in the Bloch ball."""
    if abs(s.s0 - 1.0) > tol:
        raise ValueError(f"s0 must be 1 for a normalized state, got {s.s0}")
    norm = s.bloch_norm()
    if norm > 1.0 + tol:
        raise ValueError(f"Bloch norm {norm:.6g} exceeds 1; project the vector first")
    rho = 0.5 * (s.s0 * SIGMA0 + s.s1 * SIGMA1 + s.s2 * SIGMA2 + s.s3 * SIGMA3)
    return cmatrix(rho)


def probability_of(rho: np.ndarray, i: int, tol: float = DEFAULT_TOL) -> float:
    """Probability tr(|i><i| rho) of measuring basis state |i>, clamped to [0, 1]."""
    n = dim_of(rho)
    _require_density(rho, n, tol)
    if not 0 <= i < n:
        raise IndexError(f"basis index {i} out of range for dimension {n}")
    p = complex(rho[i, i])
    assert -tol <= p.real <= 1.0 + tol and abs(p.imag) <= tol, "diagonal entry not a probability"
    return min(max(p.real, 0.0), 1.0)


def fidelity(q: PureQubit, rho: np.ndarray, tol: float = DEFAULT_TOL) -> float:
    """Overlap <psi| rho |psi> between a pure target and a density matrix."""
    _require_density(rho, 2, tol)
    psi = _amplitudes(q)
    val = complex(np.vdot(psi, rho @ psi))
    assert abs(val.imag) <= tol, "fidelity must be real"
    return min(max(val.real, 0.0), 1.0)


def trace_distance(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> float:
    """Half the absolute-eigenvalue sum of (a - b).

    For qubits this equals half the Euclidean distance between the two Bloch
    vectors.
    """
    _require_density(a, 2, tol)
    _require_density(b, 2, tol)
    w, _ = hermitian_eig(sub(a, b))
    return 0.5 * float(np.sum(np.abs(w)))
