"""Command-line front end.

Settings resolve as: command-line flag, then ``NCKAHLER_<NAME>`` environment
variable, then the INI file given by ``--config`` (section ``[nckahler]`` and
a section named after the subcommand), then built-in defaults.

Exit status: 0 when every entry passes, 1 when any entry fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import flow as flowmod
from .errors import GeometryError
from .fock import FockSpace
from .sampling import random_hermitian, random_state
from .suites import SUITES, Config, Result, run_suite

ENV_PREFIX = "NCKAHLER_"
REPORT_FIELDS = ("name", "paper_ref", "residual", "threshold", "status")

COMMON = {
    "dim": (int, 1),
    "cutoff": (int, 8),
    "hbar": (float, 1.0),
    "seed": (int, 0),
    "cases": (int, 100),
    "tolerance": (float, 1e-10),
    "output": (str, "json"),
    "out_dir": (str, None),
}
EXTRA = {
    "verify": {"suite": (str, "all")},
    "flow": {
        "hamiltonian": (str, "harmonic"),
        "omega": (float, 1.0),
        "t_end": (float, 2 * math.pi),
        "step": (float, 1e-3),
        "integrator": (str, "rk4"),
        "stride": (int, 1),
    },
    "reconstruct": {},
    "pullback": {},
    "geometry": {},
}
SUBCOMMAND_SUITE = {"reconstruct": "reconstruct", "pullback": "pullback", "geometry": "geometry"}


class UsageError(Exception):
    pass


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nckahler", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "verify": "run a verification suite",
        "flow": "integrate a Hamiltonian flow and export the trajectory",
        "reconstruct": "forward covector data and reconstruct the state",
        "pullback": "Jacobian, symplectic pull-back and pairing report",
        "geometry": "metric, Christoffel and Killing-reduction report",
    }
    for cmd, extra in EXTRA.items():
        p = sub.add_parser(cmd, help=helps[cmd])
        p.add_argument("--config", default=None, help="INI file with defaults")
        for name, (typ, _) in {**COMMON, **extra}.items():
            kwargs = {"type": typ, "default": None}
            if name == "output":
                kwargs["choices"] = ("json", "csv")
            if name == "suite":
                kwargs["choices"] = SUITES
            if name == "hamiltonian":
                kwargs["choices"] = ("harmonic", "random")
            if name == "integrator":
                kwargs["choices"] = flowmod.INTEGRATORS
            p.add_argument(_flag(name), dest=name, **kwargs)
    return parser


def resolve(args: argparse.Namespace, environ=None) -> dict:
    environ = os.environ if environ is None else environ
    schema = {**COMMON, **EXTRA[args.command]}
    cfg_path = args.config or environ.get(ENV_PREFIX + "CONFIG")
    file_vals: dict[str, str] = {}
    if cfg_path:
        cp = configparser.ConfigParser()
        if not cp.read(cfg_path):
            raise UsageError(f"cannot read config file {cfg_path}")
        for section in ("nckahler", args.command):
            if cp.has_section(section):
                file_vals.update({k.replace("-", "_"): v for k, v in cp.items(section)})
        unknown = set(file_vals) - set(schema)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    out = {}
    for name, (typ, default) in schema.items():
        val = getattr(args, name)
        if val is None:
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is None:
                raw = file_vals.get(name)
            if raw is not None:
                try:
                    val = typ(raw)
                except ValueError:
                    raise UsageError(f"invalid value for {name}: {raw!r}") from None
        out[name] = default if val is None else val
    _validate(out, args.command)
    return out


def _validate(s: dict, command: str):
    if not 1 <= s["dim"] <= 3:
        raise UsageError("--dim must be 1, 2 or 3")
    if s["cutoff"] < 2:
        raise UsageError("--cutoff must be at least 2")
    if not s["hbar"] > 0:
        raise UsageError("--hbar must be positive")
    if s["cases"] < 1:
        raise UsageError("--cases must be positive")
    if not s["tolerance"] > 0:
        raise UsageError("--tolerance must be positive")
    if s["output"] not in ("json", "csv"):
        raise UsageError("--output must be json or csv")
    if (s["cutoff"] + 1) ** s["dim"] > 4096:
        raise UsageError("space too large: (cutoff+1)^dim must not exceed 4096")
    if command == "verify" and s["suite"] not in SUITES:
        raise UsageError(f"--suite must be one of {', '.join(SUITES)}")
    if command == "flow":
        if not s["step"] > 0 or s["t_end"] < 0 or s["stride"] < 1:
            raise UsageError("--step must be positive, --t-end non-negative, --stride >= 1")
        if not s["omega"] > 0:
            raise UsageError("--omega must be positive")
        if s["hamiltonian"] not in ("harmonic", "random") or s["integrator"] not in flowmod.INTEGRATORS:
            raise UsageError("unknown --hamiltonian or --integrator")


def _num(x: float):
    return None if not math.isfinite(x) else x


def render(suite: str, settings: dict, results: list[Result], fmt: str) -> str:
    if fmt == "json":
        doc = {
            "suite": suite,
            "config": {k: settings[k] for k in sorted(settings) if k != "out_dir"},
            "entries": [{**r.as_dict(), "residual": _num(r.residual)} for r in results],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_FIELDS)
    for r in results:
        w.writerow([r.name, r.paper_ref, repr(r.residual), repr(r.threshold), r.status])
    return buf.getvalue()


def _config(s: dict) -> Config:
    return Config(dim=s["dim"], cutoff=s["cutoff"], hbar=s["hbar"], seed=s["seed"],
                  cases=s["cases"], tolerance=s["tolerance"])


def _flow_results(s: dict) -> tuple[list[Result], flowmod.Trajectory]:
    sp = FockSpace(s["dim"], s["cutoff"], s["hbar"])
    rng = np.random.default_rng(s["seed"])
    if s["hamiltonian"] == "harmonic":
        H = flowmod.harmonic_hamiltonian(sp, s["omega"])
    else:
        H = random_hermitian(sp, rng)
    phi0 = random_state(sp, rng, norm2=2 * sp.hbar)
    adaptive = s["integrator"] == "rk4"
    traj = flowmod.integrate(H, phi0, s["t_end"], s["step"], s["integrator"], adaptive=adaptive)
    results = [
        Result("flow.energy_drift", "energy function is conserved along the flow",
               traj.energy_drift(), 1e-8, "PASS" if traj.energy_drift() <= 1e-8 else "FAIL"),
        Result("flow.norm_drift", "norm is conserved along the flow", traj.norm_drift(), 1e-8,
               "PASS" if traj.norm_drift() <= 1e-8 else "FAIL"),
    ]
    if len(traj.times) >= 3:
        hc = flowmod.heisenberg_check(H, traj).max_residual
        results.append(Result("flow.heisenberg", "expectation rates follow the commutator", hc, 1e-6,
                              "PASS" if hc <= 1e-6 else "FAIL"))
    if s["hamiltonian"] == "harmonic":
        period = 2 * math.pi / s["omega"]
        end = flowmod.integrate(H, phi0, period, s["step"], s["integrator"], adaptive=adaptive)
        err = flowmod.phase_free_distance(end.amplitudes[-1], phi0.z) / phi0.r
        results.append(Result("flow.return_to_start", "harmonic flow is periodic up to a global phase",
                              err, 1e-6, "PASS" if err <= 1e-6 else "FAIL"))
    return sorted(results, key=lambda r: r.name), traj


def write_trajectory(traj: flowmod.Trajectory, path: Path, stride: int = 1):
    sp = traj.generator.space
    labels = ["_".join(map(str, n)) for n in sp.index_table]
    H = traj.generator.matrix
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t"] + [f"re_z_{k}" for k in labels] + [f"im_z_{k}" for k in labels]
                   + ["norm2", "energy"])
        for t, z in zip(traj.times[::stride], traj.amplitudes[::stride]):
            energy = float(np.vdot(z, H @ z).real / (2 * sp.hbar))
            w.writerow([repr(float(t))] + [repr(float(v)) for v in z.real] + [repr(float(v)) for v in z.imag]
                       + [repr(float(np.vdot(z, z).real)), repr(energy)])


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.ERROR, format="%(levelname)s %(name)s: %(message)s")
    try:
        s = resolve(args)
    except UsageError as exc:
        parser.error(str(exc))
    out_dir = Path(s["out_dir"]) if s["out_dir"] else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    try:
        if args.command == "flow":
            suite = "flow"
            results, traj = _flow_results(s)
            if out_dir is not None:
                write_trajectory(traj, out_dir / "trajectory.csv", s["stride"])
        else:
            suite = s["suite"] if args.command == "verify" else SUBCOMMAND_SUITE[args.command]
            results = run_suite(suite, _config(s))
    except GeometryError as exc:
        parser.error(str(exc))
    text = render(suite, s, results, s["output"])
    sys.stdout.write(text)
    if out_dir is not None:
        (out_dir / f"report.{s['output']}").write_text(text, encoding="utf-8")
    failed = [r for r in results if r.status == "FAIL"]
    for r in failed:
        print(f"FAIL {r.name}: {r.paper_ref} (residual {r.residual:.3g} > {r.threshold:.3g})", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
