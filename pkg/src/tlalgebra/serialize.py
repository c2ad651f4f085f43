"""JSON payloads for matrices, generators, braiding matrices and Hamiltonians.

Matrices use ``{"rows": R, "cols": C, "data": [[re, im], ...]}`` in row-major
order.  A complex loop value ``d`` is written as ``[re, im]``.  Python floats
serialize through ``repr`` so payloads round-trip bit-exactly.
"""
import numpy as np

from .hamiltonian import DriveParams, HamiltonianResult
from .matrix_core import as_matrix
from .tla import TLGenerator
from .yang_baxter import RMatrix


def matrix_to_dict(m) -> dict:
    m = as_matrix(m)
    flat = m.ravel()
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_dict(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    data = obj["data"]
    if len(data) != rows * cols:
        raise ValueError(f"matrix payload has {len(data)} entries, expected {rows * cols}")
    flat = np.array([complex(re, im) for re, im in data], dtype=np.complex128)
    return as_matrix(flat.reshape(rows, cols))


def generator_to_dict(gen: TLGenerator) -> dict:
    params = gen.params
    if "q_phase" in params:
        phases = {"q": params["q_phase"]}
    elif "phi1" in params:
        phases = {"phi1": params["phi1"], "phi2": params["phi2"]}
    else:
        phases = {}
    return {
        "kind": "tl_generator",
        "n": gen.n,
        "d": gen.d if isinstance(gen.d, float) else [gen.d.real, gen.d.imag],
        "epsilon": params.get("epsilon"),
        "phases": phases,
        "matrix": matrix_to_dict(gen.matrix),
    }


def generator_from_dict(obj: dict) -> TLGenerator:
    if obj.get("kind", "tl_generator") != "tl_generator":
        raise ValueError(f"payload kind {obj.get('kind')!r} is not a generator")
    phases = obj.get("phases") or {}
    params = {}
    if "q" in phases:
        params["q_phase"] = phases["q"]
    elif "phi1" in phases:
        params.update(phi1=phases["phi1"], phi2=phases["phi2"])
    if obj.get("epsilon") is not None:
        params["epsilon"] = obj["epsilon"]
    m = matrix_from_dict(obj["matrix"])
    n = int(obj["n"])
    if m.shape != (n * n, n * n):
        raise ValueError(f"generator matrix {m.shape} does not match n={n}")
    d = obj["d"]
    d = complex(*d) if isinstance(d, list) else float(d)
    return TLGenerator(n, d, m, params)


def rmatrix_to_dict(r: RMatrix) -> dict:
    return {
        "kind": "r_matrix",
        "n": r.n,
        "theta": r.theta,
        "phi1": r.phi1,
        "phi2": r.phi2,
        "epsilon": r.epsilon,
        "matrix": matrix_to_dict(r.matrix),
    }


def rmatrix_from_dict(obj: dict) -> RMatrix:
    return RMatrix(float(obj["theta"]), float(obj["phi1"]), float(obj["phi2"]),
                   int(obj["epsilon"]), int(obj["n"]), matrix_from_dict(obj["matrix"]))


def hamiltonian_to_dict(d: DriveParams, res: HamiltonianResult) -> dict:
    return {
        "kind": "hamiltonian",
        "theta": d.theta,
        "omega1": d.omega1,
        "omega2": d.omega2,
        "t": d.t,
        "epsilon": d.epsilon,
        "hbar": d.hbar,
        "hermiticity_residual": res.hermiticity_residual,
        "derivative_method": res.derivative_method,
        "matrix": matrix_to_dict(res.H),
    }
