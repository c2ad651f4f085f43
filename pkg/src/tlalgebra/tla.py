"""Temperley-Lieb generators built from phase-permutation matrix pairs.

A generator is an ``n^2 x n^2`` matrix ``U`` obeying

    U_i U_i = d U_i,   U_i U_{i+-1} U_i = U_i,   U_i U_j = U_j U_i  (|i-j| >= 2)

on a chain, where ``U_i`` acts on sites ``i, i+1``.  Generators of product
form ``U[(a,b),(c,d)] = A[a,b] B[c,d]`` are rank one; summing ``n`` of them
with disjoint supports and rescaling by ``1/sqrt(n)`` gives the loop value
``d = sqrt(n)`` when the pairs satisfy the limiting conditions checked by
:func:`limiting_residual`.
"""
import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ConstraintError, FamilyError, InversionError, ParameterError, SizeError
from .matrix_core import MAX_DIM, as_matrix, embed_site, max_norm

CONSTRUCTION_TOL = 1e-12
CONSTRAINT_TOL = 1e-10


def _check_sign(epsilon) -> int:
    if epsilon not in (1, -1):
        raise ParameterError(f"epsilon must be +1 or -1, got {epsilon!r}")
    return int(epsilon)


def omega_of(epsilon) -> complex:
    """Primitive cube root of unity ``exp(i * epsilon * 2pi/3)``."""
    return cmath.exp(1j * _check_sign(epsilon) * 2 * math.pi / 3)


@dataclass(frozen=True)
class PhasePermMatrix:
    """``n x n`` matrix with one unit-modulus entry per row on an involutive permutation.

    Row ``a`` of family member ``index`` holds its entry in column
    ``(index - 1 - a) mod n``; ``phases[a]`` is that entry.
    """

    n: int
    index: int
    phases: tuple

    @property
    def permutation(self) -> tuple:
        return tuple((self.index - 1 - a) % self.n for a in range(self.n))

    @property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.complex128)
        m[np.arange(self.n), list(self.permutation)] = self.phases
        return m


def build_phase_perm(n: int, i: int, phases: Sequence[complex]) -> PhasePermMatrix:
    if n < 1:
        raise ParameterError(f"dimension must be positive, got {n}")
    if not 1 <= i <= n:
        raise ParameterError(f"family index {i} outside 1..{n}")
    phases = tuple(complex(p) for p in phases)
    if len(phases) != n:
        raise ParameterError(f"need {n} phases, got {len(phases)}")
    for p in phases:
        if abs(abs(p) - 1.0) > CONSTRUCTION_TOL:
            raise ParameterError(f"phase {p} is not unit modulus")
    return PhasePermMatrix(n, i, phases)


def entrywise_inverse(a: PhasePermMatrix) -> PhasePermMatrix:
    return PhasePermMatrix(a.n, a.index, tuple(1.0 / p for p in a.phases))


@dataclass(frozen=True)
class TLGenerator:
    """A two-site generator ``matrix`` with loop value ``d``.

    ``d`` is a float whenever it is real; product generators built from
    general complex matrices can carry a complex loop value.

    ``params`` is the parameter record: ``{"q_phase", "epsilon"}`` for the
    eight-vertex solution, ``{"phi1", "phi2", "epsilon"}`` for the qutrit one,
    empty for generators assembled from raw matrices.
    """

    n: int
    d: complex
    matrix: np.ndarray
    params: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.n * self.n


def _loop_value(z) -> complex:
    z = complex(z)
    return z.real if abs(z.imag) <= 1e-14 * max(1.0, abs(z)) else z


def _rank_one(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # U[(a,b),(c,d)] = A[a,b] * B[c,d]
    return np.outer(a.ravel(), b.ravel())


def kulish_generator(a) -> TLGenerator:
    """Generator ``U[(a,b),(c,d)] = A[a,b] (A^-1)[c,d]`` with ``d = Tr(A^T A^-1)``."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise InversionError(f"matrix must be square, got {a.shape}")
    if not np.isfinite(np.linalg.cond(a)) or np.linalg.cond(a) > 1e12:
        raise InversionError("matrix is singular or numerically ill-conditioned")
    inv = np.linalg.inv(a)
    d = np.trace(a.T @ inv)
    return TLGenerator(a.shape[0], _loop_value(d), _rank_one(a, inv))


def product_residual(a, b) -> float:
    """Deviation of ``(BA)^T (AB)`` and ``(AB)(BA)^T`` from the identity."""
    a, b = as_matrix(a), as_matrix(b)
    ab, ba = a @ b, b @ a
    eye = np.eye(a.shape[0])
    return max(max_norm(ba.T @ ab - eye), max_norm(ab @ ba.T - eye))


def product_generator(a, b, tol: float = CONSTRAINT_TOL) -> TLGenerator:
    """Generator ``U[(a,b),(c,d)] = A[a,b] B[c,d]`` with ``d = Tr(B^T A)``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ParameterError(f"A and B must be square of equal size, got {a.shape}, {b.shape}")
    res = product_residual(a, b)
    if res >= tol:
        raise ConstraintError("(BA)^T(AB) = (AB)(BA)^T = I violated", res)
    d = np.trace(b.T @ a)
    return TLGenerator(a.shape[0], _loop_value(d), _rank_one(a, b))


def _family_matrices(family):
    return [(p.matrix if isinstance(p, PhasePermMatrix) else as_matrix(p),
             q.matrix if isinstance(q, PhasePermMatrix) else as_matrix(q))
            for p, q in family]


def limiting_residual(family) -> float:
    """Largest entry of the cross-member sums that must vanish for ``i != k``.

    Evaluates ``sum_j (B_i A_j)^T (A_k B_j)`` and
    ``sum_j (A_j B_i)(B_j A_k)^T`` for every ordered pair ``i != k``.
    """
    mats = _family_matrices(family)
    worst = 0.0
    for i, (_, bi) in enumerate(mats):
        for k, (ak, _) in enumerate(mats):
            if i == k:
                continue
            s1 = sum((bi @ aj).T @ (ak @ bj) for aj, bj in mats)
            s2 = sum((aj @ bi) @ (bj @ ak).T for aj, bj in mats)
            worst = max(worst, max_norm(s1), max_norm(s2))
    return worst


def combined_generator(family, tol: float = CONSTRAINT_TOL) -> TLGenerator:
    """``U = (1/sqrt(n)) sum_i U^(i)`` over a family of ``n`` (A, B) pairs."""
    mats = _family_matrices(family)
    if not mats:
        raise FamilyError("empty family")
    n = mats[0][0].shape[0]
    if len(mats) != n:
        raise FamilyError(f"family of dimension {n} needs {n} pairs, got {len(mats)}")
    cover = np.zeros((n, n), dtype=int)
    for a, b in mats:
        if a.shape != (n, n) or b.shape != (n, n):
            raise FamilyError("family members have inconsistent shapes")
        if not np.array_equal(a != 0, b != 0):
            raise FamilyError("A and B of a pair have different supports")
        cover += a != 0
    if not np.all(cover == 1):
        raise FamilyError("member supports overlap or leave slots uncovered")
    res = limiting_residual(family)
    if res >= tol:
        raise ConstraintError("limiting conditions violated", res)
    u = sum(_rank_one(a, b) for a, b in mats) / math.sqrt(n)
    return TLGenerator(n, math.sqrt(n), u)


def eight_vertex_family(q_phase: float, epsilon: int, ratio2: Optional[complex] = None):
    """Two diagonal/anti-diagonal pairs with ``a1/b1 = q`` and ``a2/b2 = epsilon*i``.

    The gauge ``a1 = a2 = 1`` is fixed; ``ratio2`` overrides ``a2/b2`` for
    probing violations of the limiting conditions.
    """
    eps = _check_sign(epsilon)
    q = cmath.exp(1j * q_phase)
    r2 = 1j * eps if ratio2 is None else complex(ratio2)
    a1 = build_phase_perm(2, 1, (1.0, 1.0 / q))
    a2 = build_phase_perm(2, 2, (1.0, 1.0 / r2))
    return [(a1, entrywise_inverse(a1)), (a2, entrywise_inverse(a2))]


def qutrit_family(phi1: float, phi2: float, epsilon: int, omega: Optional[complex] = None):
    """Three anti-diagonal-shifted pairs fixed by the qutrit ratio conditions.

    Members are listed with the anti-diagonal first, i.e. family indices
    3, 2, 1 of :func:`build_phase_perm`.  Gauge ``a1 = a2 = a3 = 1``; the
    ``b`` and ``c`` phases follow from

        a1/b1 = q1/q2   a2/b2 = w      a3/b3 = w q1
        a1/c1 = 1       a2/c2 = w q2   a3/c3 = q1
    """
    w = omega_of(epsilon) if omega is None else complex(omega)
    q1, q2 = cmath.exp(1j * phi1), cmath.exp(1j * phi2)
    rows = [
        (3, (1.0, q2 / q1, 1.0)),
        (2, (1.0, 1.0 / w, 1.0 / (w * q2))),
        (1, (1.0, 1.0 / (w * q1), 1.0 / q1)),
    ]
    family = []
    for i, phases in rows:
        a = build_phase_perm(3, i, phases)
        family.append((a, entrywise_inverse(a)))
    return family


def tl2_eight_vertex(q_phase: float, epsilon: int) -> TLGenerator:
    eps = _check_sign(epsilon)
    q = cmath.exp(1j * q_phase)
    u = np.array([
        [1, 0, 0, q],
        [0, 1, eps * 1j, 0],
        [0, -eps * 1j, 1, 0],
        [1 / q, 0, 0, 1],
    ], dtype=np.complex128) / math.sqrt(2)
    return TLGenerator(2, math.sqrt(2), u, {"q_phase": float(q_phase), "epsilon": eps})


# Nonzero entries of the qutrit generator (before the 1/sqrt(3) scale) as
# (row, col, power of omega, power of q1, power of q2).
QUTRIT_MONOMIALS = (
    (0, 0, 0, 0, 0), (0, 5, 1, 1, 0), (0, 7, 0, 1, 0),
    (1, 1, 0, 0, 0), (1, 3, 1, 0, 0), (1, 8, 1, 0, 1),
    (2, 2, 0, 0, 0), (2, 4, 0, 1, -1), (2, 6, 0, 0, 0),
    (3, 1, -1, 0, 0), (3, 3, 0, 0, 0), (3, 8, 0, 0, 1),
    (4, 2, 0, -1, 1), (4, 4, 0, 0, 0), (4, 6, 0, -1, 1),
    (5, 0, -1, -1, 0), (5, 5, 0, 0, 0), (5, 7, -1, 0, 0),
    (6, 2, 0, 0, 0), (6, 4, 0, 1, -1), (6, 6, 0, 0, 0),
    (7, 0, 0, -1, 0), (7, 5, 1, 0, 0), (7, 7, 0, 0, 0),
    (8, 1, -1, 0, -1), (8, 3, 0, 0, -1), (8, 8, 0, 0, 0),
)


def qutrit_matrix(phi1: float, phi2: float, epsilon: int, omega: Optional[complex] = None,
                  weights=None) -> np.ndarray:
    """Evaluate the qutrit monomial table.

    ``weights(p1, p2)`` scales each entry by a function of its q-exponents;
    the default (``None``) gives the generator itself.
    """
    w = omega_of(epsilon) if omega is None else complex(omega)
    q1, q2 = cmath.exp(1j * phi1), cmath.exp(1j * phi2)
    u = np.zeros((9, 9), dtype=np.complex128)
    for r, c, pw, p1, p2 in QUTRIT_MONOMIALS:
        val = w ** pw * q1 ** p1 * q2 ** p2
        if weights is not None:
            val *= weights(p1, p2)
        u[r, c] = val
    return u / math.sqrt(3)


def tl3_generator(phi1: float, phi2: float, epsilon: int,
                  omega: Optional[complex] = None) -> TLGenerator:
    """The 9x9 qutrit generator with ``q_k = exp(i phi_k)`` and loop ``sqrt(3)``.

    ``omega`` replaces the cube root of unity; only useful to build broken
    fixtures, since any value other than ``exp(+-2 pi i / 3)`` spoils the
    relations.
    """
    eps = _check_sign(epsilon)
    u = qutrit_matrix(phi1, phi2, eps, omega)
    return TLGenerator(3, math.sqrt(3), u,
                       {"phi1": float(phi1), "phi2": float(phi2), "epsilon": eps})


def bell_basis_3(phi1: float, phi2: float, epsilon: int):
    """Three orthonormal maximally entangled qutrit states spanning the range of U.

    ``sqrt(3) * sum_k |psi_k><psi_k|`` equals :func:`tl3_generator`.  Each
    ket coefficient is the conjugate of the matching generator entry, so the
    ``|11>`` amplitude of the first state is ``q2/q1``.
    """
    w = omega_of(epsilon)
    q1, q2 = cmath.exp(1j * phi1), cmath.exp(1j * phi2)
    states = []
    for terms in (
        {2: 1.0, 4: q2 / q1, 6: 1.0},
        {1: 1.0, 3: 1 / w, 8: 1 / (w * q2)},
        {0: 1.0, 5: 1 / (w * q1), 7: 1 / q1},
    ):
        psi = np.zeros(9, dtype=np.complex128)
        for idx, amp in terms.items():
            psi[idx] = amp
        states.append(psi / math.sqrt(3))
    return states


@dataclass(frozen=True)
class TLAVerdict:
    residual_idempotent: float
    residual_braid_like: Optional[float]
    residual_commute: Optional[float]
    tol: float

    @property
    def passed(self) -> bool:
        return all(r < self.tol for r in self.residuals().values() if r is not None)

    def residuals(self) -> dict:
        return {
            "idempotent": self.residual_idempotent,
            "braid_like": self.residual_braid_like,
            "commute": self.residual_commute,
        }


def verify_tla(gen: TLGenerator, strands: int = 4, tol: float = CONSTRUCTION_TOL) -> TLAVerdict:
    """Measure every Temperley-Lieb relation of ``gen`` on a chain of ``strands`` sites.

    The neighbour relation needs at least 3 strands and the far-commutation
    relation at least 4; relations that do not fit are reported as ``None``.
    """
    n = gen.n
    if strands < 2:
        raise SizeError("need at least 2 strands")
    if n ** strands > MAX_DIM:
        raise SizeError(f"{strands} strands of dimension {n} exceed cap {MAX_DIM}")
    u = as_matrix(gen.matrix)
    idem = max_norm(u @ u - gen.d * u)

    sites = [embed_site(u, i, strands, n) for i in range(1, strands)]
    braid = None
    if strands >= 3:
        braid = 0.0
        for i in range(len(sites) - 1):
            a, b = sites[i], sites[i + 1]
            braid = max(braid, max_norm(a @ b @ a - a), max_norm(b @ a @ b - b))
    commute = None
    if strands >= 4:
        commute = 0.0
        for i in range(len(sites)):
            for j in range(i + 2, len(sites)):
                commute = max(commute, max_norm(sites[i] @ sites[j] - sites[j] @ sites[i]))
    return TLAVerdict(idem, braid, commute, tol)
