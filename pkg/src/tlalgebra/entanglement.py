"""Negativity of two-qudit states produced by the braiding matrix."""
import cmath
import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import ConsistencyError, ParameterError, SiteIndexError
from .matrix_core import kron, partial_transpose, trace_norm_hermitian
from .yang_baxter import RMatrix, exact_sin, r_matrix

NORM_TOL = 1e-12
SWEEP_TOL = 1e-10


@dataclass(frozen=True)
class PureState:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if amps.shape != (self.n * self.n,):
            raise ParameterError(f"expected {self.n * self.n} amplitudes, got {amps.shape[0]}")
        if abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
            raise ParameterError(f"state norm {np.linalg.norm(amps)} is not 1")
        object.__setattr__(self, "amplitudes", amps)

    def density_matrix(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


def apply_to_basis(r: RMatrix, l: int, m: int) -> PureState:
    """``R |l m>``, i.e. column ``l*n + m`` of the braiding matrix."""
    n = r.n
    if not (0 <= l < n and 0 <= m < n):
        raise SiteIndexError(f"basis label ({l}, {m}) outside 0..{n - 1}")
    return PureState(n, r.matrix[:, l * n + m].copy())


def negativity(state: PureState) -> float:
    """``(||rho^{T_A}||_1 - 1) / 2`` for ``rho = |psi><psi|``."""
    rho_pt = partial_transpose(state.density_matrix(), state.n)
    # rounding can push a product state a few ulps below zero
    return max(0.0, (trace_norm_hermitian(rho_pt) - 1.0) / 2.0)


def negativity_closed_form(theta: float) -> float:
    s = exact_sin(theta)
    return 4.0 / 9.0 * (s * s + abs(s) * math.sqrt(1.0 + 8.0 * math.cos(theta) ** 2))


@dataclass(frozen=True)
class NegativityEntry:
    theta: float
    l: int
    m: int
    negativity_numeric: float
    negativity_closed_form: float

    @property
    def deviation(self) -> float:
        return abs(self.negativity_numeric - self.negativity_closed_form)


@dataclass
class NegativityReport:
    CSV_COLUMNS = ("theta", "l", "m", "N_numeric", "N_closed", "deviation")

    phi1: float
    phi2: float
    epsilon: int
    entries: list = field(default_factory=list)

    @property
    def max_deviation(self) -> float:
        return max((e.deviation for e in self.entries), default=0.0)

    def rows(self):
        for e in self.entries:
            yield (e.theta, e.l, e.m, e.negativity_numeric, e.negativity_closed_form, e.deviation)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.CSV_COLUMNS)
        for theta, l, m, num, closed, dev in self.rows():
            writer.writerow([f"{theta:.17g}", l, m, f"{num:.17g}", f"{closed:.17g}", f"{dev:.17g}"])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "phi1": self.phi1,
            "phi2": self.phi2,
            "epsilon": self.epsilon,
            "max_deviation": self.max_deviation,
            "entries": [dict(zip(self.CSV_COLUMNS, row)) for row in self.rows()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def negativity_sweep(phi1: float, phi2: float, epsilon: int, thetas: Iterable[float],
                     tol: float = SWEEP_TOL) -> NegativityReport:
    """Numeric negativity of all nine ``R(theta)|lm>`` against the closed form.

    Raises :class:`ConsistencyError` when the nine columns disagree with each
    other by more than ``tol`` at some angle; disagreement with the closed
    form is only recorded, since that is what the report measures.
    """
    thetas = list(thetas)
    if not thetas:
        raise ParameterError("empty theta grid")
    report = NegativityReport(float(phi1), float(phi2), int(epsilon))
    for theta in thetas:
        r = r_matrix(theta, phi1, phi2, epsilon, n=3)
        closed = negativity_closed_form(theta)
        values = []
        for l in range(3):
            for m in range(3):
                val = negativity(apply_to_basis(r, l, m))
                values.append(val)
                report.entries.append(NegativityEntry(float(theta), l, m, val, closed))
        spread = max(values) - min(values)
        if spread > tol:
            raise ConsistencyError(f"columns disagree by {spread:.3e} at theta={theta}")
    return report


def local_unitary_y() -> np.ndarray:
    y1 = np.diag([cmath.exp(4j * math.pi / 9), 1.0, cmath.exp(-4j * math.pi / 9)])
    y2 = np.diag([cmath.exp(-2j * math.pi / 9), 1.0, cmath.exp(-4j * math.pi / 9)])
    return kron(y1, y2)
