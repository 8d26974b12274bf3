"""Command-line front end.

Every command writes a table: ``#``-prefixed ``key=value`` metadata lines,
then CSV (default) or a single JSON document. Options can also come from an
INI-style config file (``--config``); command-line flags take precedence.

Exit codes: 0 success, 1 verification failure, 2 usage/config error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import configparser
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__, analytic, numeric, transitions, verification
from .model import DeviceParams, ModelParams, device_to_model, ket_index

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """Locale-independent float text, at most 12 significant digits."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return repr(x)
        s = f"{x:.12g}"
        return "0" if s == "-0" else s
    return str(x)


def _json_value(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return float(fmt(x)) if math.isfinite(x) else None
    return x


def render(command: str, meta: dict, columns: list[str], rows: list[tuple], fmt_name: str) -> str:
    meta = {"command": command, "version": __version__, **meta}
    if fmt_name == "json":
        doc = {
            "metadata": {k: _json_value(v) for k, v in meta.items()},
            "columns": columns,
            "rows": [[_json_value(v) for v in r] for r in rows],
        }
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    for k, v in meta.items():
        buf.write(f"# {k}={fmt(v)}\n")
    buf.write(",".join(columns) + "\n")
    for r in rows:
        buf.write(",".join(fmt(v) for v in r) + "\n")
    return buf.getvalue()


# -- option handling ---------------------------------------------------------


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in str(text).split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"not a comma-separated float list: {text!r}") from None


def _level_range(text: str) -> list[int]:
    """``"N"`` means ``0..N``; ``"a:b"`` means ``a..b`` inclusive."""
    try:
        if ":" in str(text):
            a, b = (int(t) for t in str(text).split(":"))
        else:
            a, b = 0, int(text)
    except ValueError:
        raise UsageError(f"bad level range {text!r}") from None
    if a < 0 or b < a:
        raise UsageError(f"empty level range {text!r}")
    return list(range(a, b + 1))


MODEL_OPTS = {"J": (float, 4.0), "g": (float, 2.0), "omega": (float, 4.0), "omega_a": (float, None), "n_max": (int, 40)}

COMMAND_OPTS = {
    "spectrum": {
        "g_over_j": (float, 0.5),
        "xi_start": (float, 0.02),
        "xi_stop": (float, 4.0),
        "xi_count": (int, 200),
        "levels": (str, "0:2"),
    },
    "crossings": {"g_over_j": (str, "0.7,0.5,0.16"), "levels": (str, "0:18")},
    "phase": {"xi_start": (float, -4.0), "xi_stop": (float, 4.0), "xi_count": (int, 17)},
    "rabi": {**MODEL_OPTS},
    "damping": {
        **MODEL_OPTS,
        "omega": (float, 12.0),
        "g1": (float, 1.0),
        "g2": (float, 0.0),
        "rho": (str, "flat"),
        "rho_scale": (float, 1.0),
        "omega_ref": (float, None),
    },
    "verify": {**MODEL_OPTS},
    "evolve": {
        **MODEL_OPTS,
        "n_max": (int, 20),
        "t_stop": (float, None),
        "t_count": (int, 11),
        "initial": (str, "0:psi-,0:psi+"),
        "kick": (str, "none"),
    },
    "device": {
        "C_m": (float, 1e-16),
        "C_Sigma": (float, 1e-15),
        "C_g": (float, 1e-16),
        "V_g": (float, 1.6e-3),
        "E_J": (float, 10.0),
        "S": (float, 1e-10),
        "d": (float, 1e-6),
        "L": (float, 0.01),
        "l": (float, 4.1e-7),
        "c": (float, 1.6e-10),
        "n0": (int, 1),
        "n_max": (int, 40),
        "flux_quantum": (float, None),
    },
}

HELP = {
    "spectrum": "branch energies E/J along the resonant line",
    "crossings": "crossing points of neighbouring lower-branch levels",
    "phase": "ground manifold of the bare Ising pair versus omega_a/J",
    "rabi": "Rabi splitting sqrt(J^2+g^2) - J",
    "damping": "damping-rate ratio of the two emission lines into |0,dd>",
    "verify": "closed-form spectrum versus brute-force diagonalization",
    "evolve": "singlet population under unitary evolution",
    "device": "map circuit parameters to model frequencies",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dressed-cqed", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, opts in COMMAND_OPTS.items():
        p = sub.add_parser(name, help=HELP[name])
        p.add_argument("--config", help="INI-style key=value file")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        for key in opts:
            flag = "--" + key.replace("_", "-")
            p.add_argument(flag, dest=key, default=None, help=f"default: {opts[key][1]}")
    return parser


def read_config(path: str) -> dict[str, str]:
    """Flatten an INI file to ``{key: text}``; sections only group keys."""
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    try:
        # a leading sectionless block is allowed
        cp.read_string("[DEFAULT]\n" + text if not text.lstrip().startswith("[") else text)
    except configparser.Error as exc:
        raise UsageError(f"malformed config: {exc}") from None
    flat = dict(cp.defaults())
    for section in cp.sections():
        for k, v in cp.items(section):
            flat[k] = v
    return {k.replace("-", "_"): v for k, v in flat.items()}


def resolve(args: argparse.Namespace) -> dict:
    opts = COMMAND_OPTS[args.command]
    config = read_config(args.config) if args.config else {}
    unknown = set(config) - set(opts) - {"format", "out"}
    if unknown:
        raise UsageError(f"unknown config keys for {args.command}: {sorted(unknown)}")
    values = {}
    for key, (conv, default) in opts.items():
        raw = getattr(args, key)
        if raw is None:
            raw = config.get(key)
        if raw is None:
            values[key] = default
            continue
        try:
            values[key] = conv(raw)
        except ValueError:
            raise UsageError(f"bad value for {key}: {raw!r}") from None
    values["format"] = args.format or config.get("format", "csv")
    if values["format"] not in ("csv", "json"):
        raise UsageError(f"unknown format {values['format']!r}")
    values["out"] = args.out or config.get("out")
    return values


def _model(v: dict) -> ModelParams:
    omega_a = v["omega"] if v.get("omega_a") is None else v["omega_a"]
    try:
        return ModelParams(omega_a=omega_a, omega=v["omega"], J=v["J"], g=v["g"], n_max=v["n_max"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _grid(v: dict) -> np.ndarray:
    if v["xi_count"] < 2:
        raise UsageError("xi-count must be >= 2")
    if not v["xi_stop"] > v["xi_start"]:
        raise UsageError("xi-stop must exceed xi-start")
    return np.linspace(v["xi_start"], v["xi_stop"], v["xi_count"])


def _echo(v: dict) -> dict:
    return {k: val for k, val in v.items() if k not in ("out", "format") and val is not None}


# -- commands ----------------------------------------------------------------
# each returns (metadata, columns, rows, exit_code)


def cmd_spectrum(v):
    grid = _grid(v)
    levels = _level_range(v["levels"])
    if grid[0] <= 0:
        raise UsageError("xi grid must be positive")
    rows = []
    for x in grid:
        for n in levels:
            for br in sorted(analytic.BRANCHES):
                rows.append((float(x), br, n, float(analytic.branch_energy_over_J(x, v["g_over_j"], n, br))))
    return _echo(v), ["xi", "branch", "n", "E_over_J"], rows, EXIT_OK


def cmd_crossings(v):
    couplings = _float_list(v["g_over_j"])
    if not couplings or any(c < 0 for c in couplings):
        raise UsageError("g-over-j must be a non-empty list of non-negative values")
    levels = _level_range(v["levels"])
    rows = []
    for c in couplings:
        for n in levels:
            cp = analytic.crossing_point(c, n)
            rows.append((c, n, cp.xi_star, cp.energy_over_J))
    return _echo(v), ["g_over_J", "n", "xi_star", "E_over_J"], rows, EXIT_OK


def cmd_phase(v):
    if v["xi_count"] < 2:
        raise UsageError("xi-count must be >= 2")
    rows = []
    for x in np.linspace(v["xi_start"], v["xi_stop"], v["xi_count"]):
        ph = analytic.hq_phase(float(x))
        rows.append((float(x), "|".join(ph.ground), ph.boundary, ph.energy_over_J))
    return _echo(v), ["xi_a", "ground", "boundary", "E_over_J"], rows, EXIT_OK


def cmd_rabi(v):
    p = _model(v)
    r = transitions.rabi_splitting(p)
    return _echo(v), ["J", "g", "rabi_GHz", "rabi_MHz"], [(p.J, p.g, r, r * 1e3)], EXIT_OK


def cmd_damping(v):
    p = _model(v)
    try:
        bath = transitions.BathModel.uniform(v["g1"], v["g2"], v["rho"], v["rho_scale"])
        rows = []
        printed = transitions.damping_ratio(p, bath, v["omega_ref"])
        rows.append(("formula", _ratio_text(printed), printed.omega1, printed.omega2, printed.reason))
        for br in ("-", "+"):
            gr = transitions.golden_rule_ratio(p, bath, branch=br)
            rows.append((f"golden_rule_{br}", _ratio_text(gr), gr.omega1, gr.omega2, gr.reason))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _echo(v), ["method", "ratio", "omega1", "omega2", "note"], rows, EXIT_OK


def _ratio_text(r):
    return "forbidden" if r.forbidden else r.value


def cmd_verify(v):
    p = _model(v)
    checks = verification.compare_with_oracle(p)
    rows = [(c.block, c.n_states, c.max_rel_dev, c.min_overlap, c.passed()) for c in checks]
    seed = int(os.environ.get("DRESSED_SEED", "0"))
    resid = verification.jacobi_selftest(seed)
    rows.append(("jacobi_selftest", 50, resid, 1.0, resid <= 1e-10))
    ok = all(r[-1] for r in rows)
    meta = {**_echo(v), "seed": seed, "result": "PASS" if ok else "FAIL"}
    return meta, ["block", "n_states", "max_rel_dev", "min_overlap", "pass"], rows, EXIT_OK if ok else EXIT_VERIFY


def _parse_initial(text: str, n_max: int) -> np.ndarray:
    psi = np.zeros(4 * (n_max + 1), dtype=complex)
    try:
        for term in text.split(","):
            photon, spin = term.strip().split(":")
            psi[ket_index(int(photon), spin)] += 1.0
    except (ValueError, IndexError):
        raise UsageError(f"bad initial state {text!r}; use e.g. '0:psi-,0:psi+'") from None
    if not np.any(psi):
        raise UsageError("initial state is empty")
    return numeric.normalized(psi)


def cmd_evolve(v):
    p = _model(v)
    psi = _parse_initial(v["initial"], p.n_max)
    if v["kick"] != "none":
        try:
            psi = transitions_kick(psi, v["kick"])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    t_stop = v["t_stop"] if v["t_stop"] is not None else 100.0 / (p.g if p.g > 0 else 1.0)
    if v["t_count"] < 2 or t_stop <= 0:
        raise UsageError("need t-count >= 2 and t-stop > 0")
    dec = numeric.decompose(p)
    rows = []
    for t in np.linspace(0.0, t_stop, v["t_count"]):
        out = numeric.evolve(psi, p, float(t), decomposition=dec)
        rows.append((float(t), numeric.singlet_population(out), float(np.linalg.norm(out))))
    meta = {**_echo(v), "t_stop": t_stop}
    return meta, ["t", "singlet_population", "norm"], rows, EXIT_OK


def transitions_kick(psi: np.ndarray, op: str) -> np.ndarray:
    """Apply a spin operator once and renormalize."""
    from .model import spin_operator

    out = (psi.reshape(-1, 4) @ spin_operator(op).T).ravel()
    norm = np.linalg.norm(out)
    if norm == 0:
        raise ValueError(f"{op} annihilates the state")
    return out / norm


def cmd_device(v):
    try:
        dev = DeviceParams(**{k: v[k] for k in ("C_m", "C_Sigma", "C_g", "V_g", "E_J", "S", "d", "L", "l", "c", "n0")})
        kwargs = {} if v["flux_quantum"] is None else {"flux_quantum": v["flux_quantum"]}
        p, e_c = device_to_model(dev, n_max=v["n_max"], **kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _echo(v), ["J", "omega_a", "omega", "g", "E_c"], [(p.J, p.omega_a, p.omega, p.g, e_c)], EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "crossings": cmd_crossings,
    "phase": cmd_phase,
    "rabi": cmd_rabi,
    "damping": cmd_damping,
    "verify": cmd_verify,
    "evolve": cmd_evolve,
    "device": cmd_device,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        values = resolve(args)
        meta, columns, rows, code = COMMANDS[args.command](values)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(args.command, meta, columns, rows, values["format"])
    if values["out"]:
        try:
            with open(values["out"], "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {values['out']}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
