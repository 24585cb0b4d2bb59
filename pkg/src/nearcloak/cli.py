"""Command-line front end.

Subcommands: ``mie`` (far-field pattern of one solve), ``sweep``
(rho sweep with decay fit), ``compare`` (two schemes on one rho grid),
``bie`` (boundary-integral far field on a circle or kite), ``media``
(cloak tensor sampled on a grid).  Parameters come from built-in
defaults (the reference experiment: k = 2, d = +x, 100 observation
angles, rho halving from 0.5, shell R1 = 2, R2 = 3), overridden by an
optional JSON config file (--config), overridden by explicit flags.
``--dump-config`` writes the fully resolved parameter set; feeding that
file back through --config reproduces the outputs bit for bit.

Exit codes: 0 success, 2 usage error, 3 invalid parameter, 4 unwritable
output path, 5 internal failure.  Failures also emit one JSON error
record on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import analysis, bie, media, mie
from .errors import NearCloakError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVALID_PARAMETER = 3
EXIT_UNWRITABLE_OUTPUT = 4
EXIT_INTERNAL = 5

CSV_SCHEMA_VERSION = analysis.CSV_SCHEMA_VERSION

_DEFAULTS = {
    "mie": {
        "scheme": "sh", "dim": 2, "k": 2.0, "rho": 0.5, "angles": 100,
        "incident_angle": 0.0, "fsh_c": 1.0, "fsh_delta": 0.5, "fsh_a": 3.0,
        "fsh_b": 2.0, "fss_beta": 2.5, "core_sigma": 1.0, "core_q_re": 1.0,
        "core_q_im": 0.0, "out": "farfield.csv",
    },
    "sweep": {
        "scheme": "sh", "dim": 2, "k": 2.0, "rho_start": 0.5,
        "rho_factor": 0.5, "rho_count": 7, "angles": 100, "model": "auto",
        "fsh_c": 1.0, "fsh_delta": 0.5, "fsh_a": 3.0, "fsh_b": 2.0,
        "fss_beta": 2.5, "core_sigma": 1.0, "core_q_re": 1.0,
        "core_q_im": 0.0, "out": "sweep.csv", "json_out": None,
    },
    "compare": {
        "scheme_a": "fsh", "scheme_b": "sh", "dim": 2, "k": 2.0,
        "rho_start": 0.5, "rho_factor": 0.5, "rho_count": 7, "angles": 100,
        "fsh_c": 1.0, "fsh_delta": 0.5, "fsh_a": 3.0, "fsh_b": 2.0,
        "fss_beta": 2.5, "core_sigma": 1.0, "core_q_re": 1.0,
        "core_q_im": 0.0, "out": "compare.csv",
    },
    "bie": {
        "curve": "circle", "radius": 0.5, "k": 2.0, "incident_angle": 0.0,
        "n_points": 256, "angles": 100, "out": "bie_farfield.csv",
    },
    "media": {
        "rho": 0.5, "r1": 2.0, "r2": 3.0, "dim": 2, "cells": 40,
        "out": "media_grid.csv",
    },
}


# ---------------------------------------------------------------------------
# Parser construction
# ---------------------------------------------------------------------------
def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON file with parameter overrides")
    parser.add_argument("--dump-config", dest="dump_config",
                        help="write the resolved parameters as JSON, then run")


def _add_scheme_params(parser: argparse.ArgumentParser, *names: str) -> None:
    for name in names:
        parser.add_argument(f"--{name}", choices=["ss", "sh", "fss", "fsh"])
    parser.add_argument("--dim", type=int, choices=[2, 3])
    parser.add_argument("--k", type=float)
    parser.add_argument("--angles", type=int, help="observation angle count")
    parser.add_argument("--fsh-c", dest="fsh_c", type=float)
    parser.add_argument("--fsh-delta", dest="fsh_delta", type=float)
    parser.add_argument("--fsh-a", dest="fsh_a", type=float)
    parser.add_argument("--fsh-b", dest="fsh_b", type=float)
    parser.add_argument("--fss-beta", dest="fss_beta", type=float)
    parser.add_argument("--core-sigma", dest="core_sigma", type=float,
                        help="physical-space core sigma'")
    parser.add_argument("--core-q-re", dest="core_q_re", type=float)
    parser.add_argument("--core-q-im", dest="core_q_im", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nearcloak",
        description="Near-cloaking scattering experiments (modal and "
                    "boundary-integral solvers).")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("mie", help="far-field pattern of one modal solve")
    _add_scheme_params(p, "scheme")
    p.add_argument("--rho", type=float)
    p.add_argument("--incident-angle", dest="incident_angle", type=float)
    p.add_argument("--out")
    _add_common(p)

    p = sub.add_parser("sweep", help="rho sweep of max|A| with decay fit")
    _add_scheme_params(p, "scheme")
    p.add_argument("--rho-start", dest="rho_start", type=float)
    p.add_argument("--rho-factor", dest="rho_factor", type=float)
    p.add_argument("--rho-count", dest="rho_count", type=int)
    p.add_argument("--model", choices=["auto", "power-law", "inverse-log"])
    p.add_argument("--out")
    p.add_argument("--json-out", dest="json_out")
    _add_common(p)

    p = sub.add_parser("compare", help="per-rho difference of two schemes")
    _add_scheme_params(p, "scheme-a", "scheme-b")
    p.add_argument("--rho-start", dest="rho_start", type=float)
    p.add_argument("--rho-factor", dest="rho_factor", type=float)
    p.add_argument("--rho-count", dest="rho_count", type=int)
    p.add_argument("--out")
    _add_common(p)

    p = sub.add_parser("bie", help="boundary-integral far field")
    p.add_argument("--curve", choices=["circle", "kite"])
    p.add_argument("--radius", type=float)
    p.add_argument("--k", type=float)
    p.add_argument("--incident-angle", dest="incident_angle", type=float)
    p.add_argument("--n-points", dest="n_points", type=int)
    p.add_argument("--angles", type=int)
    p.add_argument("--out")
    _add_common(p)

    p = sub.add_parser("media", help="sample the cloak tensor on a grid")
    p.add_argument("--rho", type=float)
    p.add_argument("--r1", type=float)
    p.add_argument("--r2", type=float)
    p.add_argument("--dim", type=int, choices=[2, 3])
    p.add_argument("--cells", type=int)
    p.add_argument("--out")
    _add_common(p)

    return parser


def _resolve(command: str, args: argparse.Namespace) -> dict:
    """defaults <- config file <- explicit flags."""
    params = dict(_DEFAULTS[command])
    cfg_path = getattr(args, "config", None)
    if cfg_path:
        with open(cfg_path, encoding="utf-8") as fh:
            cfg = json.load(fh)
        cfg.pop("command", None)
        unknown = set(cfg) - set(params)
        if unknown:
            raise NearCloakError(f"unknown config keys: {sorted(unknown)}")
        params.update(cfg)
    for key in params:
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            params[key] = val
    return params


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------
def _scheme_from(params: dict, key: str) -> mie.SchemeSpec:
    kind = params[key]
    if kind == "fss":
        return mie.SchemeSpec.finite_sound_soft(params["fss_beta"])
    if kind == "fsh":
        return mie.SchemeSpec.finite_sound_hard(
            params["fsh_c"], params["fsh_delta"], params["fsh_a"], params["fsh_b"])
    return mie.SchemeSpec(kind)


def _wave_from(params: dict, dim: int) -> mie.WaveParams:
    ang = float(params.get("incident_angle", 0.0))
    if dim == 2:
        d = np.array([math.cos(ang), math.sin(ang)])
    else:
        d = np.array([math.cos(ang), math.sin(ang), 0.0])
    return mie.WaveParams(params["k"], d)


def _core_from(params: dict, dim: int) -> media.MediumSpec:
    return media.MediumSpec.isotropic(
        params["core_sigma"], params["core_q_re"] + 1j * params["core_q_im"], dim)


def _rho_grid(params: dict) -> list[float]:
    start, factor, count = (params["rho_start"], params["rho_factor"],
                            params["rho_count"])
    if not (0 < factor < 1 and start > 0 and count >= 1):
        raise NearCloakError("need rho_start > 0, 0 < rho_factor < 1, rho_count >= 1")
    return [start * factor ** j for j in range(count)]


def _write_farfield_csv(path: str, pattern) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# schema=farfield-v{CSV_SCHEMA_VERSION}\n")
        fh.write("theta,re_A,im_A,abs_A\n")
        for th, a in zip(pattern.angles, pattern.amplitude):
            a = complex(a)
            fh.write(f"{float(th)!r},{a.real!r},{a.imag!r},{abs(a)!r}\n")


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------
def _run_mie(params: dict) -> None:
    dim = params["dim"]
    wave = _wave_from(params, dim)
    scheme = _scheme_from(params, "scheme")
    rho = params["rho"]
    if scheme.is_layered:
        core = media.virtual_core_params(_core_from(params, dim), rho, dim)
        sol = mie.coeffs_layered(dim, wave, rho, scheme, core)
    else:
        sol = mie.solve(scheme, dim, wave, rho)
    pattern = mie.far_field(sol, analysis.observation_angles(dim, params["angles"]))
    _write_farfield_csv(params["out"], pattern)


def _run_sweep(params: dict) -> None:
    dim = params["dim"]
    scheme = _scheme_from(params, "scheme")
    model = None if params["model"] == "auto" else params["model"]
    result = analysis.sweep(scheme, dim, _wave_from(params, dim),
                            _rho_grid(params), angle_count=params["angles"],
                            core_physical=_core_from(params, dim), model=model)
    analysis.write_sweep_csv(result, params["out"])
    if params.get("json_out"):
        analysis.write_sweep_json(result, params["json_out"])


def _run_compare(params: dict) -> None:
    dim = params["dim"]
    wave = _wave_from(params, dim)
    rhos = _rho_grid(params)
    core = _core_from(params, dim)
    results = []
    for key in ("scheme_a", "scheme_b"):
        scheme = _scheme_from(params, key)
        results.append(analysis.sweep(scheme, dim, wave, rhos,
                                      angle_count=params["angles"],
                                      core_physical=core))
    diff = analysis.compare_schemes(results[0], results[1])
    with open(params["out"], "w", encoding="utf-8") as fh:
        fh.write(f"# schema=compare-v{CSV_SCHEMA_VERSION}\n")
        fh.write("rho,max_abs_A_a,max_abs_A_b,abs_diff\n")
        for r, a, b, d in zip(results[0].rho_values, results[0].max_amplitude,
                              results[1].max_amplitude, diff):
            fh.write(f"{float(r)!r},{float(a)!r},{float(b)!r},{float(d)!r}\n")


def _run_bie(params: dict) -> None:
    wave = mie.WaveParams(params["k"], np.array([
        math.cos(params["incident_angle"]), math.sin(params["incident_angle"])]))
    if params["curve"] == "circle":
        curve = bie.circle(params["radius"], params["n_points"])
    else:
        curve = bie.kite(params["n_points"])
    solution = bie.assemble_and_solve(curve, wave)
    angles = 2.0 * math.pi * np.arange(params["angles"]) / params["angles"]
    pattern = bie.far_field_from_density(solution, wave, angles)
    _write_farfield_csv(params["out"], pattern)


def _run_media(params: dict) -> None:
    spec = media.RadialMapSpec(params["rho"], params["r1"], params["r2"])
    rows = media.sample_cloak_grid(spec, params["cells"], dim=params["dim"])
    dim = params["dim"]
    coords = ["x", "y", "z"][:dim]
    iu = [f"sigma_{a}{b}" for i, a in enumerate(coords)
          for b in coords[i:]]
    with open(params["out"], "w", encoding="utf-8") as fh:
        fh.write(f"# schema=media-v{CSV_SCHEMA_VERSION}\n")
        fh.write(",".join(coords + iu + ["re_q", "im_q"]) + "\n")
        for row in rows:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


_RUNNERS = {
    "mie": _run_mie,
    "sweep": _run_sweep,
    "compare": _run_compare,
    "bie": _run_bie,
    "media": _run_media,
}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------
def _fail(code: int, kind: str, message: str) -> int:
    record = {"error": kind, "message": message, "exit_code": code}
    print(json.dumps(record), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return _fail(EXIT_USAGE, "usage", "no subcommand given")

    try:
        params = _resolve(args.command, args)
    except (OSError, json.JSONDecodeError, NearCloakError) as exc:
        return _fail(EXIT_INVALID_PARAMETER, type(exc).__name__, str(exc))

    dump = getattr(args, "dump_config", None)
    if dump:
        try:
            with open(dump, "w", encoding="utf-8") as fh:
                json.dump({"command": args.command, **params}, fh,
                          indent=2, sort_keys=True)
                fh.write("\n")
        except OSError as exc:
            return _fail(EXIT_UNWRITABLE_OUTPUT, type(exc).__name__, str(exc))

    try:
        _RUNNERS[args.command](params)
    except (NearCloakError, ValueError) as exc:
        return _fail(EXIT_INVALID_PARAMETER, type(exc).__name__, str(exc))
    except OSError as exc:
        return _fail(EXIT_UNWRITABLE_OUTPUT, type(exc).__name__, str(exc))
    except Exception as exc:  # pragma: no cover - defensive
        return _fail(EXIT_INTERNAL, type(exc).__name__, str(exc))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
