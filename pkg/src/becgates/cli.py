"""Command-line interface: gate verification, evolutions, sweeps, trajectories.

Frequencies are interpreted in units of the coupling g unless ``--si`` is
passed, in which case inputs are angular frequencies in rad/s and times are
seconds.  Every formula in the library is scale invariant, so the two modes
share one code path; the flag fixes how values are labeled and recorded.

Exit codes: 0 on success, 2 on validation errors (bad flags or config
fields), 1 on internal errors.  Outputs are deterministic: rerunning a
command with the same config reproduces files bitwise, and each output CSV
gets a JSON sidecar (``<output>.meta.json``) that can be passed back via
``--config`` to reproduce the CSV.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Mapping

import numpy as np

from .evolve import evolve_oracle, qubit_propagator
from .fock import AcsParams, acs_state, state_to_csv
from .gates import (
    DEFAULT_DETUNING_FACTOR,
    GateId,
    PHASE_GATES,
    gate_conditions,
    gate_spec_to_dict,
    params_for_gate,
    up_to_phase_deviation,
)
from .params import ValidationError, derive_params, params_from_dict, params_to_dict
from .sweeps import (
    DEFAULT_DGAMMA_RATIO_VALUES,
    DEFAULT_DDELTA_RATIO_VALUES,
    DEFAULT_LAMBDA_VALUES,
    sweep_delta,
    sweep_lambda_gamma,
    trajectory,
)

__all__ = ["main", "entrypoint"]


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _load_config(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"field 'config': cannot read {path!r}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"field 'config': not valid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict):
        raise ValidationError("field 'config': top level must be a JSON object")
    # a sidecar written by a previous run is itself a valid config
    if "config" in data and "command" in data:
        inner = data["config"]
        if not isinstance(inner, dict):
            raise ValidationError("field 'config': sidecar 'config' entry must be an object")
        return inner
    return data


def _initial_from_config(cfg: Mapping, default: AcsParams | None = None) -> AcsParams:
    if "initial" not in cfg:
        if default is not None:
            return default
        raise ValidationError("field 'initial' is missing from config")
    node = cfg["initial"]
    if not isinstance(node, dict) or set(node) != {"theta", "phi"}:
        raise ValidationError("field 'initial' must be an object with keys 'theta' and 'phi'")
    try:
        return AcsParams(theta=float(node["theta"]), phi=float(node["phi"]))
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"field 'initial': {exc}") from None


def _axis_from_config(cfg: Mapping, key: str, default: np.ndarray) -> np.ndarray:
    if key not in cfg:
        return np.asarray(default, dtype=float)
    node = cfg[key]
    if isinstance(node, dict):
        extra = set(node) - {"start", "stop", "num"}
        if extra:
            raise ValidationError(f"field '{key}.{sorted(extra)[0]}' is not recognized")
        try:
            return np.linspace(float(node["start"]), float(node["stop"]), int(node["num"]))
        except (KeyError, TypeError, ValueError):
            raise ValidationError(
                f"field '{key}' must be a list of numbers or "
                "an object with keys start, stop, num"
            ) from None
    if not isinstance(node, list) or not node:
        raise ValidationError(f"field '{key}' must be a non-empty list of numbers")
    try:
        return np.asarray([float(v) for v in node], dtype=float)
    except (TypeError, ValueError):
        raise ValidationError(f"field '{key}' must contain only numbers") from None


def _int_field(cfg: Mapping, key: str, default: int, minimum: int) -> int:
    value = cfg.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"field '{key}' must be an integer, got {value!r}")
    if value < minimum:
        raise ValidationError(f"field '{key}' must be >= {minimum}, got {value}")
    return value


def _gate_from_name(name: str) -> GateId:
    try:
        return GateId(name.lower())
    except ValueError:
        raise ValidationError(
            f"field 'gate' must be one of {[g.value for g in GateId]}, got {name!r}"
        ) from None


def _write_output(path: str, text: str, sidecar: dict) -> None:
    out = Path(path)
    out.write_text(text)
    meta = out.with_name(out.name + ".meta.json")
    meta.write_text(json.dumps(sidecar, indent=2, sort_keys=True) + "\n")


def _cmd_gate_check(args: argparse.Namespace) -> int:
    gate = _gate_from_name(args.gate)
    factor = args.detuning_factor if args.detuning_factor is not None else DEFAULT_DETUNING_FACTOR
    spec = gate_conditions(gate, args.g, factor)
    p = params_for_gate(spec, 1)
    dp = derive_params(p)
    prop = qubit_propagator(dp, p.delta, spec.t_gate)
    dev = up_to_phase_deviation(prop.matrix, spec.target)
    freq_unit = "rad/s" if args.si else "units of g"
    time_unit = "s" if args.si else "1/g"
    print(f"gate: {gate.value}")
    print(f"t_gate: {_fmt(spec.t_gate)} [{time_unit}]")
    print(f"delta_g: {_fmt(spec.delta_g)} [{freq_unit}]")
    print(f"gamma_g: {_fmt(spec.gamma_g)} [{freq_unit}]")
    if gate in PHASE_GATES:
        print(f"detuning_factor: {_fmt(spec.detuning_factor)}")
    print(f"deviation_up_to_phase: {_fmt(dev)}")
    return 0


def _cmd_evolve(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    if "params" not in cfg:
        raise ValidationError("field 'params' is missing from config")
    t = cfg.get("t", args.t)
    if t is None:
        raise ValidationError("field 't' is missing (pass --t or set it in the config)")
    t = float(t)
    p = params_from_dict(cfg["params"])
    initial = _initial_from_config(cfg)
    s0 = acs_state(initial, p.n_atoms)
    final = evolve_oracle(p, s0, t)
    sidecar = {
        "command": "evolve",
        "si": bool(args.si),
        "config": {
            "params": params_to_dict(p),
            "initial": {"theta": initial.theta, "phi": initial.phi},
            "t": t,
        },
    }
    _write_output(args.output, state_to_csv(final), sidecar)
    return 0


def _cmd_trajectory(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    if "params" not in cfg:
        raise ValidationError("field 'params' is missing from config")
    p = params_from_dict(cfg["params"])
    initial = _initial_from_config(cfg)
    if "t_final" not in cfg:
        raise ValidationError("field 't_final' is missing from config")
    t_final = float(cfg["t_final"])
    n_samples = _int_field(cfg, "n_samples", 101, 2)
    tr = trajectory(p, initial, t_final, n_samples)
    sidecar = {
        "command": "trajectory",
        "si": bool(args.si),
        "config": {
            "params": params_to_dict(p),
            "initial": {"theta": initial.theta, "phi": initial.phi},
            "t_final": t_final,
            "n_samples": n_samples,
        },
    }
    _write_output(args.output, tr.to_csv(), sidecar)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config) if args.config else {}
    kind = args.kind or cfg.get("kind")
    if kind not in ("lambda-gamma", "delta"):
        raise ValidationError(
            f"field 'kind' must be 'lambda-gamma' or 'delta', got {kind!r}"
        )
    gate_name = args.gate or cfg.get("gate")
    if gate_name is None:
        raise ValidationError("field 'gate' is missing (pass --gate or set it in the config)")
    gate = _gate_from_name(gate_name)
    if args.n_atoms is not None:
        if args.n_atoms < 1:
            raise ValidationError(f"field 'n_atoms' must be >= 1, got {args.n_atoms}")
        n_atoms = args.n_atoms
    else:
        n_atoms = _int_field(cfg, "n_atoms", 1000, 1)
    initial = _initial_from_config(cfg, default=AcsParams(theta=math.pi / 8.0, phi=0.0))
    workers = args.workers if args.workers is not None else _int_field(cfg, "workers", 1, 1)
    resolved = {
        "kind": kind,
        "gate": gate.value,
        "n_atoms": n_atoms,
        "initial": {"theta": initial.theta, "phi": initial.phi},
        "workers": workers,
    }
    if "seed" in cfg:
        resolved["seed"] = cfg["seed"]  # reserved; engines are deterministic

    if kind == "lambda-gamma":
        factor = float(cfg.get("detuning_factor", DEFAULT_DETUNING_FACTOR))
        lam = _axis_from_config(cfg, "lambda_values", DEFAULT_LAMBDA_VALUES)
        rat = _axis_from_config(cfg, "dgamma_ratio_values", DEFAULT_DGAMMA_RATIO_VALUES)
        try:
            grid = sweep_lambda_gamma(
                gate, lam, rat, n_atoms, initial, detuning_factor=factor, workers=workers
            )
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
        resolved["detuning_factor"] = factor
        resolved["lambda_values"] = [float(v) for v in lam]
        resolved["dgamma_ratio_values"] = [float(v) for v in rat]
        spec = gate_conditions(gate, 1.0, factor)
    else:
        rat = _axis_from_config(cfg, "ddelta_ratio_values", DEFAULT_DDELTA_RATIO_VALUES)
        try:
            grid = sweep_delta(gate, rat, n_atoms, initial, workers=workers)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
        resolved["ddelta_ratio_values"] = [float(v) for v in rat]
        spec = gate_conditions(gate, 1.0)

    sidecar = {
        "command": "sweep",
        "si": False,
        "config": resolved,
        "provenance": {
            "gate_spec_in_g_units": gate_spec_to_dict(spec),
            "axes": {
                "axis1": grid.axis1_name,
                "axis2": grid.axis2_name,
            },
            "realization": (
                "gamma_a = gamma_b = 0; gamma_ab = 2*lambda; "
                "omega_a - omega_b = gamma_g*(1 + dgamma_ratio); "
                "delta = delta_g*(1 +/- ddelta_ratio), worst sign recorded"
            ),
        },
    }
    _write_output(args.output, grid.to_csv(), sidecar)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="becgates",
        description=(
            "Simulate single-qubit gates on a coupled two-mode BEC qubit: "
            "verify gate conditions, evolve states, sweep robustness, trace "
            "Bloch trajectories."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("gate-check", help="print a gate's conditions and its propagator deviation")
    pc.add_argument("--gate", required=True, help="gate id: not, y, h, z, s, t")
    pc.add_argument("--g", type=float, required=True, help="two-photon coupling strength")
    pc.add_argument(
        "--detuning-factor",
        type=float,
        default=None,
        help="delta_g/g for phase gates (default 100; must be >= 25)",
    )
    pc.add_argument("--si", action="store_true", help="interpret frequencies as rad/s, times as s")
    pc.set_defaults(func=_cmd_gate_check)

    pe = sub.add_parser("evolve", help="evolve an initial coherent state and write the final state CSV")
    pe.add_argument("--config", required=True, help="JSON config with 'params' and 'initial'")
    pe.add_argument("--t", type=float, default=None, help="evolution time")
    pe.add_argument("--output", required=True, help="output CSV path (columns k,re,im)")
    pe.add_argument("--si", action="store_true", help="interpret frequencies as rad/s, times as s")
    pe.set_defaults(func=_cmd_evolve)

    pt = sub.add_parser("trajectory", help="sample the Bloch trajectory and write t,x,y,z CSV")
    pt.add_argument("--config", required=True, help="JSON config with 'params', 'initial', 't_final'")
    pt.add_argument("--output", required=True, help="output CSV path (columns t,x,y,z)")
    pt.add_argument("--si", action="store_true", help="interpret frequencies as rad/s, times as s")
    pt.set_defaults(func=_cmd_trajectory)

    ps = sub.add_parser("sweep", help="run a fidelity sweep and write CSV plus JSON sidecar")
    ps.add_argument("--kind", choices=["lambda-gamma", "delta"], help="sweep kind")
    ps.add_argument("--gate", help="gate id: not, y, h, z, s, t")
    ps.add_argument("--config", help="JSON config (grids, n_atoms, initial, detuning_factor)")
    ps.add_argument("--output", required=True, help="output CSV path")
    ps.add_argument("--workers", type=int, default=None, help="parallel workers (default 1)")
    ps.add_argument("--n-atoms", type=int, default=None, help="boson number override (default 1000)")
    ps.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help, 2 for bad flags
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - last-resort diagnostic
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
