"""Dense complex matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Composite
two-site indices follow ``(a, b) -> a * n + b`` with the first factor as
subsystem A, the same layout ``numpy.kron`` produces.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    ConvergenceError,
    PreconditionError,
    ShapeError,
    SiteIndexError,
    SizeError,
)

MAX_DIM = 4096
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex array within the size cap."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if max(m.shape) > MAX_DIM:
        raise SizeError(f"matrix dimension {m.shape} exceeds cap {MAX_DIM}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def max_norm(a) -> float:
    """Largest entry modulus; 0.0 for an empty array."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def kron(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if max(rows, cols) > MAX_DIM:
        raise SizeError(f"Kronecker product {rows}x{cols} exceeds cap {MAX_DIM}")
    return np.kron(a, b)


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray
    residual: float
    sweeps: int
    eigenvectors: Optional[np.ndarray] = None


def _offdiag_mass(a: np.ndarray) -> float:
    # measured directly; total minus diagonal mass cancels catastrophically
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigenvalues(m, tol: float = JACOBI_TOL, vectors: bool = False,
                          max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenResult:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation annihilates one off-diagonal pair ``(p, q)``.  Sweeps
    stop once the off-diagonal Frobenius mass drops below
    ``tol * max(1, ||m||_F)``.  The same ``tol`` gates the Hermiticity
    precondition ``||m - m^H||_max < tol``.

    Returns eigenvalues sorted ascending together with the max-norm
    residual of ``m v - lambda v`` over all returned pairs.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"eigensolver needs a square matrix, got {m.shape}")
    herm = max_norm(m - m.conj().T)
    if herm >= tol:
        raise PreconditionError(f"matrix is not Hermitian: ||M - M^H||_max = {herm:.3e}")

    n = m.shape[0]
    a = 0.5 * (m + m.conj().T)
    v = np.eye(n, dtype=np.complex128)
    target = tol * max(1.0, float(np.linalg.norm(a)))
    sweeps = 0
    while _offdiag_mass(a) >= target:
        if sweeps >= max_sweeps:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # J = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                j = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ j
                a[idx, :] = j.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ j

    lam = np.diag(a).real.copy()
    order = np.argsort(lam, kind="stable")
    lam, v = lam[order], v[:, order]
    residual = max_norm(m @ v - v * lam)
    return EigenResult(lam, residual, sweeps, v if vectors else None)


def trace_norm_hermitian(m, tol: float = JACOBI_TOL) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(m, tol).eigenvalues)))


def partial_transpose(rho, n: int) -> np.ndarray:
    """Transpose the first tensor factor of an ``n^2 x n^2`` operator.

    ``out[(a,b),(c,d)] = rho[(c,b),(a,d)]``.
    """
    rho = as_matrix(rho)
    if rho.shape != (n * n, n * n):
        raise ShapeError(f"expected a {n * n}x{n * n} matrix for n={n}, got {rho.shape}")
    return rho.reshape(n, n, n, n).transpose(2, 1, 0, 3).reshape(n * n, n * n)


def embed_site(op, site: int, strands: int, n: int) -> np.ndarray:
    """``I^(site-1) (x) op (x) I^(strands-site-1)`` on a chain of ``strands`` sites.

    Sites are numbered from 1; ``op`` acts on sites ``site`` and ``site + 1``.
    """
    op = as_matrix(op)
    if op.shape != (n * n, n * n):
        raise ShapeError(f"two-site operator must be {n * n}x{n * n}, got {op.shape}")
    if n ** strands > MAX_DIM:
        raise SizeError(f"{strands} strands of dimension {n} exceed cap {MAX_DIM}")
    if not 1 <= site <= strands - 1:
        raise SiteIndexError(f"site {site} outside 1..{strands - 1}")
    left = np.eye(n ** (site - 1), dtype=np.complex128)
    right = np.eye(n ** (strands - site - 1), dtype=np.complex128)
    return np.kron(np.kron(left, op), right)
