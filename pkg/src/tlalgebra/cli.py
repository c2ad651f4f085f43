"""Command-line front end.

Exit codes: 0 pass, 1 numeric failure, 2 usage error.
"""
import argparse
import csv
import io
import json
import logging
import math
import re
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .entanglement import negativity_sweep
from .errors import ConsistencyError, PoleError, TLAlgebraError
from .hamiltonian import DriveParams, build_hamiltonian
from .serialize import generator_from_dict, generator_to_dict, hamiltonian_to_dict, rmatrix_to_dict
from .tla import (
    eight_vertex_family,
    limiting_residual,
    qutrit_family,
    tl2_eight_vertex,
    tl3_generator,
    verify_tla,
)
from .yang_baxter import r_matrix, unitarity_report, ybe_residual

log = logging.getLogger("tlalgebra")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_ANGLE = re.compile(
    r"(?P<sign>[+-]?)(?P<num>(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(/\d+(\.\d*)?)?)?"
    r"(?P<pi>\*?pi)?(?P<den>/\d+(\.\d*)?)?"
)


def parse_angle(text: str) -> float:
    """Parse a real number with an optional ``pi`` factor.

    Accepts ``0.5``, ``1/3pi``, ``pi/3``, ``2pi/3``, ``-pi`` and ``1e-3``.
    """
    s = text.strip().replace(" ", "").lower()
    m = _ANGLE.fullmatch(s)
    if not s or m is None or (m["num"] is None and m["pi"] is None):
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}")
    if m["den"] and not m["pi"]:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}")
    value = 1.0
    if m["num"]:
        num, _, div = m["num"].partition("/")
        value = float(num) / float(div) if div else float(num)
    if m["pi"]:
        value *= math.pi
    if m["den"]:
        value /= float(m["den"][1:])
    return -value if m["sign"] == "-" else value


def _sign(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        v = None
    if v not in (1, -1):
        raise argparse.ArgumentTypeError(f"epsilon must be +1 or -1, got {text!r}")
    return v


@dataclass
class RunConfig:
    command: str
    n: int = 3
    phi1: float = 0.0
    phi2: float = 0.0
    epsilon: int = 1
    theta: float = 0.0
    beta: float = 1.0
    start: float = 0.0
    stop: float = math.pi
    points: int = 181
    tol: float = 1e-10
    format: str = "json"
    output: Optional[str] = None
    rmatrix: bool = False
    input: Optional[str] = None
    strands: int = 4
    omega1: float = 1.0
    omega2: float = 1.0
    t: float = 0.0
    break_omega: bool = False
    addition: str = "relativistic"

    def __post_init__(self):
        if self.points < 1:
            raise ValueError("grid needs at least one point")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


def _fmt(x) -> str:
    return f"{x:.17g}"


def build_payload(cfg: RunConfig) -> dict:
    if cfg.rmatrix:
        r = r_matrix(cfg.theta, cfg.phi1, cfg.phi2, cfg.epsilon, cfg.n)
        payload = rmatrix_to_dict(r)
        payload["unitarity_residual"] = unitarity_report(r)
        return payload
    if cfg.n == 2:
        return generator_to_dict(tl2_eight_vertex(cfg.phi1, cfg.epsilon))
    return generator_to_dict(tl3_generator(cfg.phi1, cfg.phi2, cfg.epsilon))


def cmd_build(cfg: RunConfig, out) -> int:
    payload = build_payload(cfg)
    out.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_PASS


def verify_report(cfg: RunConfig) -> dict:
    """Residuals of every relation for the configured (or loaded) generator."""
    family_res = None
    if cfg.input:
        with open(cfg.input) as fh:
            gen = generator_from_dict(json.load(fh))
    elif cfg.n == 2:
        gen = tl2_eight_vertex(cfg.phi1, cfg.epsilon)
        family_res = limiting_residual(eight_vertex_family(cfg.phi1, cfg.epsilon))
    else:
        omega = 1.0 if cfg.break_omega else None
        gen = tl3_generator(cfg.phi1, cfg.phi2, cfg.epsilon, omega=omega)
        family_res = limiting_residual(qutrit_family(cfg.phi1, cfg.phi2, cfg.epsilon, omega=omega))
    verdict = verify_tla(gen, cfg.strands, cfg.tol)
    u = gen.matrix
    residuals = verdict.residuals()
    residuals["hermiticity"] = float(np.max(np.abs(u - u.conj().T)))
    if family_res is not None:
        residuals["limiting"] = family_res
    passed = all(r < cfg.tol for r in residuals.values() if r is not None)
    return {"n": gen.n, "d": gen.d, "strands": cfg.strands, "tol": cfg.tol,
            "residuals": residuals, "pass": passed}


def cmd_verify(cfg: RunConfig, out) -> int:
    report = verify_report(cfg)
    out.write(json.dumps(report, indent=2) + "\n")
    if not report["pass"]:
        failing = {k: v for k, v in report["residuals"].items() if v is not None and v >= cfg.tol}
        log.error("verification failed at tol %g: %s", cfg.tol, failing)
        return EXIT_FAIL
    return EXIT_PASS


def cmd_ybe(cfg: RunConfig, out) -> int:
    rows = []
    for u in cfg.grid():
        for v in cfg.grid():
            try:
                res = ybe_residual(u, v, cfg.beta, cfg.epsilon, cfg.phi1, cfg.phi2, cfg.n,
                                   addition=cfg.addition)
                rows.append((float(u), float(v), res, "ok"))
            except PoleError:
                log.warning("pole at u=%g, v=%g; point excluded", u, v)
                rows.append((float(u), float(v), None, "pole"))
    evaluated = [r[2] for r in rows if r[2] is not None]
    max_res = max(evaluated) if evaluated else None
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("u", "v", "residual", "status"))
        for u, v, res, status in rows:
            w.writerow((_fmt(u), _fmt(v), "" if res is None else _fmt(res), status))
        out.write(buf.getvalue())
    else:
        out.write(json.dumps({
            "n": cfg.n, "beta": cfg.beta, "epsilon": cfg.epsilon, "addition": cfg.addition,
            "max_residual": max_res, "poles": sum(r[3] == "pole" for r in rows),
            "rows": [{"u": u, "v": v, "residual": res, "status": s} for u, v, res, s in rows],
        }, indent=2) + "\n")
    if max_res is None or max_res >= cfg.tol:
        log.error("max YBE residual %s not below tol %g", max_res, cfg.tol)
        return EXIT_FAIL
    return EXIT_PASS


def cmd_negativity(cfg: RunConfig, out) -> int:
    try:
        report = negativity_sweep(cfg.phi1, cfg.phi2, cfg.epsilon, cfg.grid(), tol=cfg.tol)
    except ConsistencyError as exc:
        log.error("%s", exc)
        return EXIT_FAIL
    out.write(report.to_csv() if cfg.format == "csv" else report.to_json() + "\n")
    if report.max_deviation >= cfg.tol:
        log.error("max deviation %.3e not below tol %g", report.max_deviation, cfg.tol)
        return EXIT_FAIL
    return EXIT_PASS


def cmd_hamiltonian(cfg: RunConfig, out) -> int:
    drive = DriveParams(cfg.theta, cfg.omega1, cfg.omega2, cfg.t, cfg.epsilon)
    result = build_hamiltonian(drive)
    out.write(json.dumps(hamiltonian_to_dict(drive, result), indent=2) + "\n")
    if result.hermiticity_residual >= cfg.tol:
        log.error("Hamiltonian not Hermitian: residual %.3e", result.hermiticity_residual)
        return EXIT_FAIL
    return EXIT_PASS


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "ybe": cmd_ybe,
    "negativity": cmd_negativity,
    "hamiltonian": cmd_hamiltonian,
}


def _add_common(p, n=True, phi2=True):
    if n:
        p.add_argument("--n", type=int, choices=(2, 3), default=3, help="local dimension")
    p.add_argument("--phi1", type=parse_angle, default=0.0,
                   help="phase of q1 (the q phase when n=2), radians; 'pi' suffix allowed")
    if phi2:
        p.add_argument("--phi2", type=parse_angle, default=0.0, help="phase of q2, radians")
    p.add_argument("--epsilon", type=_sign, default=1, help="branch sign, +1 or -1")
    p.add_argument("--output", "-o", help="write to this path instead of stdout")


def _add_grid(p, start, stop, points, what):
    p.add_argument("--start", type=parse_angle, default=start, help=f"first {what}")
    p.add_argument("--stop", type=parse_angle, default=stop, help=f"last {what}")
    p.add_argument("--points", type=int, default=points, help="grid points")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tlalgebra", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a generator or braiding matrix as JSON")
    _add_common(p)
    p.add_argument("--rmatrix", action="store_true", help="emit the braiding matrix instead")
    p.add_argument("--theta", type=parse_angle, default=0.0, help="braiding angle")

    p = sub.add_parser("verify", help="check the Temperley-Lieb relations")
    _add_common(p)
    p.add_argument("--input", help="generator JSON produced by 'build'")
    p.add_argument("--strands", type=int, default=4)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--unsafe-break-omega", dest="break_omega", action="store_true",
                   help=argparse.SUPPRESS)

    p = sub.add_parser("ybe", help="relativistic Yang-Baxter residuals over a (u, v) grid")
    _add_common(p)
    p.add_argument("--beta", type=float, default=1.0)
    _add_grid(p, -0.9, 0.9, 5, "rapidity")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--unsafe-addition", dest="addition", choices=("relativistic", "naive"),
                   default="relativistic", help=argparse.SUPPRESS)

    p = sub.add_parser("negativity", help="negativity sweep against the closed form")
    _add_common(p, n=False)
    _add_grid(p, 0.0, math.pi, 181, "theta")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("hamiltonian", help="Hamiltonian of the phase-driven braiding matrix")
    _add_common(p, n=False, phi2=False)
    p.add_argument("--theta", type=parse_angle, default=math.pi / 3)
    p.add_argument("--omega1", type=float, default=1.0)
    p.add_argument("--omega2", type=float, default=1.0)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--tol", type=float, default=1e-10)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    kwargs = {k: v for k, v in vars(args).items() if k in fields}
    return RunConfig(**kwargs)


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        parser.error(str(exc))

    out = open(cfg.output, "w") if cfg.output else sys.stdout
    try:
        return COMMANDS[cfg.command](cfg, out)
    except TLAlgebraError as exc:
        log.error("%s", exc)
        return EXIT_FAIL
    except (OSError, KeyError, ValueError) as exc:
        # unreadable or malformed input file
        log.error("bad input: %s", exc)
        return EXIT_USAGE
    finally:
        if cfg.output:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
