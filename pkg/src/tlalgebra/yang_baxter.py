"""Yang-Baxterization of the Temperley-Lieb generators.

The braiding matrix takes the form ``R(u) = F(u) [I + G(u) U]`` with

    G(u) = 4 i eps beta u / ( sqrt(4-n) (beta^2 u^2 - 2 sqrt(n/(4-n)) i eps beta u + 1) )

which solves the functional equation imposed by the relativistic
Yang-Baxter equation (rapidities compose as ``(u+v)/(1+beta^2 uv)``).
Writing ``G(u) = (exp(-2i theta) - 1)/sqrt(n)`` and ``F = exp(i theta)``
gives the unitary angle form ``R(theta) = exp(i theta) I - (2i sin theta/sqrt(n)) U``.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError
from .matrix_core import embed_site, max_norm
from .tla import TLGenerator, _check_sign, tl2_eight_vertex, tl3_generator

POLE_TOL = 1e-14
RAPIDITY_POLE_TOL = 1e-12


def exact_sin(theta: float) -> float:
    """``sin`` that is exactly zero at floating-point multiples of pi."""
    if math.remainder(theta, math.pi) == 0.0:
        return 0.0
    return math.sin(theta)


@dataclass(frozen=True)
class SpectralPoint:
    u: float
    beta: float = 1.0
    epsilon: int = 1
    n: int = 3

    def __post_init__(self):
        _check_sign(self.epsilon)
        if self.n == 4:
            raise DomainError("G(u) is singular for n = 4")
        if self.n < 1:
            raise DomainError(f"local dimension must be positive, got {self.n}")
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta}")

    @property
    def theta(self) -> float:
        return theta_of_u(self)


def _kappa(n: int) -> complex:
    return cmath.sqrt(n / (4 - n))


def _denominator(p: SpectralPoint) -> complex:
    bu = p.beta * p.u
    return bu * bu - 2 * _kappa(p.n) * 1j * p.epsilon * bu + 1


def g_of_u(p: SpectralPoint) -> complex:
    if p.n == 4:
        raise DomainError("G(u) is singular for n = 4")
    den = _denominator(p)
    if abs(den) < POLE_TOL:
        raise PoleError(f"G(u) has a pole at u = {p.u}")
    return 4j * p.epsilon * p.beta * p.u / (cmath.sqrt(4 - p.n) * den)


def compose_rapidities(u: float, v: float, beta: float = 1.0) -> float:
    """Relativistic addition ``(u + v) / (1 + beta^2 u v)``."""
    den = 1 + beta * beta * u * v
    if abs(den) < RAPIDITY_POLE_TOL:
        raise PoleError(f"rapidity sum has a pole at u={u}, v={v}")
    return (u + v) / den


def g_functional_residual(u: float, v: float, beta: float = 1.0, n: int = 3, epsilon: int = 1,
                          loop: float = None) -> float:
    """|G(u) + G(v) + G(w)[G(u)G(v) - 1] + sqrt(n) G(u)G(v)| with w the rapidity sum.

    ``loop`` replaces the ``sqrt(n)`` coefficient (sensitivity probes only).
    """
    w = compose_rapidities(u, v, beta)
    gu = g_of_u(SpectralPoint(u, beta, epsilon, n))
    gv = g_of_u(SpectralPoint(v, beta, epsilon, n))
    gw = g_of_u(SpectralPoint(w, beta, epsilon, n))
    coeff = math.sqrt(n) if loop is None else loop
    return abs(gu + gv + gw * (gu * gv - 1) + coeff * gu * gv)


def theta_of_u(p: SpectralPoint) -> float:
    """Angle with ``exp(-2i theta) = 1 + sqrt(n) G(u)``, principal branch (-pi/2, pi/2]."""
    if p.n > 4:
        raise DomainError(f"no real angle exists for n = {p.n} > 4")
    den = _denominator(p)
    if abs(den) < POLE_TOL:
        raise PoleError(f"angle map has a pole at u = {p.u}")
    bu = p.beta * p.u
    z = (bu * bu + 2 * _kappa(p.n) * 1j * p.epsilon * bu + 1) / den
    theta = -cmath.phase(z) / 2
    if theta <= -math.pi / 2:
        theta += math.pi
    return theta


def generator_for(n: int, phi1: float, phi2: float, epsilon: int) -> TLGenerator:
    """Eight-vertex generator for ``n = 2`` (``phi1`` is the q phase), qutrit one for ``n = 3``."""
    if n == 2:
        return tl2_eight_vertex(phi1, epsilon)
    if n == 3:
        return tl3_generator(phi1, phi2, epsilon)
    raise DomainError(f"braiding matrices are built for n in (2, 3), got {n}")


def braid_from_generator(theta, u_matrix: np.ndarray, n: int) -> np.ndarray:
    """``exp(i theta) I - (2i sin theta / sqrt(n)) U``; ``theta`` may be complex."""
    if isinstance(theta, complex):
        phase, s = cmath.exp(1j * theta), cmath.sin(theta)
    else:
        s = exact_sin(theta)
        phase = complex(math.cos(theta), s)
    dim = u_matrix.shape[0]
    return phase * np.eye(dim, dtype=np.complex128) - (2j * s / math.sqrt(n)) * u_matrix


@dataclass(frozen=True)
class RMatrix:
    theta: float
    phi1: float
    phi2: float
    epsilon: int
    n: int
    matrix: np.ndarray


def r_matrix(theta: float, phi1: float, phi2: float = 0.0, epsilon: int = 1, n: int = 3) -> RMatrix:
    gen = generator_for(n, phi1, phi2, epsilon)
    m = braid_from_generator(float(theta), gen.matrix, n)
    return RMatrix(float(theta), float(phi1), float(phi2), int(epsilon), n, m)


def ybe_residual(u: float, v: float, beta: float = 1.0, epsilon: int = 1, phi1: float = 0.0,
                 phi2: float = 0.0, n: int = 3, addition: str = "relativistic") -> float:
    """Max-entry gap between the two sides of the three-strand braid relation.

    ``R_1(u) R_2(w) R_1(v)`` against ``R_2(v) R_1(w) R_2(u)``.  With
    ``addition="naive"`` the middle rapidity is ``u + v`` instead of the
    relativistic sum, which is expected to break the relation.
    """
    if addition == "relativistic":
        w = compose_rapidities(u, v, beta)
    elif addition == "naive":
        w = u + v
    else:
        raise ValueError(f"unknown addition rule {addition!r}")
    gen = generator_for(n, phi1, phi2, epsilon)

    def braid(x):
        theta = theta_of_u(SpectralPoint(x, beta, epsilon, n))
        return braid_from_generator(theta, gen.matrix, n)

    ru, rv, rw = braid(u), braid(v), braid(w)
    one = lambda m: embed_site(m, 1, 3, n)
    two = lambda m: embed_site(m, 2, 3, n)
    lhs = one(ru) @ two(rw) @ one(rv)
    rhs = two(rv) @ one(rw) @ two(ru)
    return max_norm(lhs - rhs)


def unitarity_report(r: RMatrix) -> float:
    """``||M M^H - I||_max``."""
    m = r.matrix
    return max_norm(m @ m.conj().T - np.eye(m.shape[0]))
