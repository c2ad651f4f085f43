"""Hamiltonian generated by driving the qutrit braiding matrix in time.

The phases evolve as ``phi_k = omega_k t`` at fixed angle ``theta`` and

    H = i hbar (dR/dt) R^H,

which is Hermitian because ``R(t)`` stays unitary.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .matrix_core import max_norm
from .tla import _check_sign, qutrit_matrix
from .yang_baxter import braid_from_generator, exact_sin

HBAR = 1.0


@dataclass(frozen=True)
class DriveParams:
    theta: float
    omega1: float
    omega2: float
    t: float
    epsilon: int = 1

    def __post_init__(self):
        _check_sign(self.epsilon)

    @property
    def hbar(self) -> float:
        return HBAR

    @property
    def phases(self):
        return self.omega1 * self.t, self.omega2 * self.t


@dataclass(frozen=True)
class HamiltonianResult:
    H: np.ndarray
    hermiticity_residual: float
    derivative_method: str = "analytic"


def du_dphi(k: int, phi1: float, phi2: float, epsilon: int) -> np.ndarray:
    """Derivative of the qutrit generator with respect to ``phi_k``.

    Every entry is a monomial ``c q1^p1 q2^p2``, so differentiation only
    multiplies it by ``i p_k``.
    """
    if k == 1:
        weights = lambda p1, p2: 1j * p1
    elif k == 2:
        weights = lambda p1, p2: 1j * p2
    else:
        raise ParameterError(f"k must be 1 or 2, got {k}")
    return qutrit_matrix(phi1, phi2, epsilon, weights=weights)


def braid_at(d: DriveParams, t: float = None) -> np.ndarray:
    """``R(theta, omega1 t, omega2 t)``; ``t`` defaults to ``d.t``."""
    t = d.t if t is None else t
    u = qutrit_matrix(d.omega1 * t, d.omega2 * t, d.epsilon)
    return braid_from_generator(d.theta, u, 3)


def dr_dt(d: DriveParams) -> np.ndarray:
    phi1, phi2 = d.phases
    s = exact_sin(d.theta)
    du = d.omega1 * du_dphi(1, phi1, phi2, d.epsilon) + d.omega2 * du_dphi(2, phi1, phi2, d.epsilon)
    return -(2j * s / math.sqrt(3)) * du


def build_hamiltonian(d: DriveParams) -> HamiltonianResult:
    h = 1j * d.hbar * dr_dt(d) @ braid_at(d).conj().T
    return HamiltonianResult(h, max_norm(h - h.conj().T))


def derivative_consistency(d: DriveParams, h: float) -> float:
    """Gap between the analytic ``dR/dt`` and a central difference with step ``h``."""
    if not h > 0:
        raise ParameterError(f"step must be positive, got {h}")
    fd = (braid_at(d, d.t + h) - braid_at(d, d.t - h)) / (2 * h)
    return max_norm(dr_dt(d) - fd)
