"""Command-line front end: parameter parsing, sweeps, CSV/JSON emission.

Subcommands: exact, evolve, sweep, gauge-check, interfere, ab-ring.
Exit codes: 0 ok, 1 documented tolerance exceeded, 2 usage error, so the
tool doubles as a CI acceptance runner.  Output is deterministic for
identical flags and seed: CSV carries a '#'-prefixed JSON metadata line
then a header row, numbers are printed with 17 significant digits
(round-trip exact for 64-bit floats).
"""

import argparse
import json
import sys

import numpy as np

from .model import (
    Branch,
    ExactBasis,
    ModelParams,
    basis_spinor,
    effective_energy,
    exact_amplitude,
    interference_intensity,
    solid_angle,
)
from .phases import GaugeFunction, apply_gauge, decompose, pancharatnam_overlap
from .propagate import evolve
from .ring import RingConfig, reduced_flux, two_arm_phase

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_USAGE = 2

# Documented tolerances enforced by the CI-facing subcommands.
EVOLVE_TOL = 1e-6        # max deviation vs closed form at the default nsteps
INTERFERE_TOL = 1e-9     # measured vs closed-form intensity
GAUGE_TOL = 1e-12        # hidden-gauge battery deviations
RING_SPREAD_TOL = 2.0 * np.pi * 1e-3  # two-arm phase spread across wavenumbers


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _emit(args, meta: dict, columns, rows) -> str:
    rows = [[float(v) for v in row] for row in rows]
    if args.format == "json":
        payload = {"params": meta, "columns": list(columns), "rows": rows}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    lines = ["# " + json.dumps(meta, sort_keys=True)]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _model_params(args) -> ModelParams:
    if getattr(args, "eta", None) is not None:
        if args.B <= 0:
            raise ValueError("--eta requires B > 0")
        omega0 = args.eta * args.B / args.hbar
    else:
        omega0 = args.omega0
    return ModelParams(B=args.B, theta=args.theta, omega0=omega0, hbar=args.hbar)


def _params_meta(command: str, params: ModelParams, **extra) -> dict:
    meta = {
        "command": command,
        "B": params.B,
        "theta": params.theta,
        "omega0": params.omega0,
        "hbar": params.hbar,
    }
    if params.B > 0:
        meta["eta"] = params.eta
    meta.update(extra)
    return meta


def run_exact(args) -> int:
    params = _model_params(args)
    if args.samples < 2:
        raise ValueError("--samples must be >= 2")
    t_end = args.t_end if args.t_end is not None else params.period
    times = np.linspace(0.0, t_end, args.samples)
    columns = ["t"]
    blocks = []
    for name, branch in (("plus", Branch.PLUS), ("minus", Branch.MINUS)):
        psi = exact_amplitude(ExactBasis(params, branch), times)
        blocks.append(
            np.column_stack(
                [
                    psi[:, 0].real,
                    psi[:, 0].imag,
                    psi[:, 1].real,
                    psi[:, 1].imag,
                    np.linalg.norm(psi, axis=1),
                ]
            )
        )
        columns += [f"{name}_{c}" for c in ("up_re", "up_im", "down_re", "down_im", "norm")]
    rows = np.column_stack([times] + blocks)
    meta = _params_meta("exact", params, t_end=t_end, samples=args.samples)
    _write(args, _emit(args, meta, columns, rows))
    return EXIT_OK


def run_evolve(args) -> int:
    params = _model_params(args)
    branch = Branch.PLUS if args.branch == "plus" else Branch.MINUS
    basis = ExactBasis(params, branch)
    T = params.period
    traj = evolve(params, basis_spinor(basis, 0.0), 0.0, T, args.nsteps)
    reference = exact_amplitude(basis, traj.times)
    deviation = np.max(np.abs(traj.states - reference), axis=1)
    columns = [
        "t",
        "num_up_re", "num_up_im", "num_down_re", "num_down_im",
        "exact_up_re", "exact_up_im", "exact_down_re", "exact_down_im",
        "deviation",
    ]
    rows = np.column_stack(
        [
            traj.times,
            traj.states[:, 0].real, traj.states[:, 0].imag,
            traj.states[:, 1].real, traj.states[:, 1].imag,
            reference[:, 0].real, reference[:, 0].imag,
            reference[:, 1].real, reference[:, 1].imag,
            deviation,
        ]
    )
    max_dev = float(np.max(deviation))
    meta = _params_meta(
        "evolve", params,
        branch=args.branch, nsteps=args.nsteps,
        max_deviation=max_dev, tolerance=EVOLVE_TOL,
    )
    _write(args, _emit(args, meta, columns, rows))
    return EXIT_OK if max_dev <= EVOLVE_TOL else EXIT_TOLERANCE


def run_sweep(args) -> int:
    if args.eta_min <= 0 or args.eta_max <= args.eta_min:
        raise ValueError("need 0 < --eta-min < --eta-max")
    if args.points < 2:
        raise ValueError("--points must be >= 2")
    if args.spacing == "log":
        etas = np.logspace(np.log10(args.eta_min), np.log10(args.eta_max), args.points)
    else:
        etas = np.linspace(args.eta_min, args.eta_max, args.points)
    rows = []
    for eta in etas:
        params = ModelParams(B=args.B, theta=args.theta, omega0=eta * args.B / args.hbar,
                             hbar=args.hbar)
        plus = ExactBasis(params, Branch.PLUS)
        minus = ExactBasis(params, Branch.MINUS)
        d = decompose(plus, params.period)
        rows.append(
            [
                eta, params.omega0, plus.theta0, plus.vartheta,
                solid_angle(plus), d.geometric, d.dynamical,
                effective_energy(plus), effective_energy(minus),
            ]
        )
    columns = [
        "eta", "omega0", "theta0", "vartheta", "solid_angle_plus",
        "geometric_phase", "dynamical_phase", "E_plus", "E_minus",
    ]
    meta = {
        "command": "sweep", "B": args.B, "theta": args.theta, "hbar": args.hbar,
        "eta_min": args.eta_min, "eta_max": args.eta_max,
        "points": args.points, "spacing": args.spacing,
    }
    _write(args, _emit(args, meta, columns, rows))
    return EXIT_OK


def run_gauge_check(args) -> int:
    params = _model_params(args)
    if args.count < 1:
        raise ValueError("--count must be >= 1")
    T = params.period
    basis = ExactBasis(params, Branch.PLUS)
    times = np.linspace(0.0, T, 257)
    reference = exact_amplitude(basis, times)
    ref_overlap = pancharatnam_overlap(reference[0], reference[-1])

    rng = np.random.default_rng(args.seed)
    max_amp_dev = 0.0
    max_overlap_dev = 0.0
    for _ in range(args.count):
        gauged = apply_gauge(basis, GaugeFunction.random(T, rng))
        amp = gauged.amplitude_at(times)
        max_amp_dev = max(max_amp_dev, float(np.max(np.abs(amp - gauged.prefactor * reference))))
        overlap = pancharatnam_overlap(amp[0], amp[-1])
        max_overlap_dev = max(max_overlap_dev, abs(overlap - ref_overlap))

    # Deliberately non-periodic probe: alpha(T) != alpha(0).  The amplitude
    # still transforms by the constant e^{i alpha(0)} and the overlap is
    # untouched; only the geometric/dynamical split moves.
    ramp = apply_gauge(basis, GaugeFunction.linear(params.omega0, T))
    ramp_amp = ramp.amplitude_at(times)
    ramp_amp_dev = float(np.max(np.abs(ramp_amp - ramp.prefactor * reference)))
    ramp_overlap_dev = abs(pancharatnam_overlap(ramp_amp[0], ramp_amp[-1]) - ref_overlap)

    passed = (
        max_amp_dev <= GAUGE_TOL
        and max_overlap_dev <= GAUGE_TOL
        and ramp_amp_dev <= GAUGE_TOL
        and ramp_overlap_dev <= GAUGE_TOL
    )
    report = {
        "params": _params_meta("gauge-check", params, seed=args.seed, count=args.count),
        "max_amplitude_deviation": max_amp_dev,
        "max_overlap_deviation": max_overlap_dev,
        "nonperiodic_amplitude_deviation": ramp_amp_dev,
        "nonperiodic_overlap_deviation": ramp_overlap_dev,
        "tolerance": GAUGE_TOL,
        "pass": passed,
    }
    _write(args, json.dumps(report, sort_keys=True, indent=2) + "\n")
    return EXIT_OK if passed else EXIT_TOLERANCE


def run_interfere(args) -> int:
    params = _model_params(args)
    result = interference_intensity(params, Branch.PLUS)
    dev = abs(result.measured - result.closed_form)
    meta = _params_meta("interfere", params, tolerance=INTERFERE_TOL)
    rows = [[result.measured, result.closed_form, dev]]
    _write(args, _emit(args, meta, ["measured", "closed_form", "abs_deviation"], rows))
    return EXIT_OK if dev <= INTERFERE_TOL else EXIT_TOLERANCE


def run_ab_ring(args) -> int:
    cfg = RingConfig(nsites=args.sites, hopping=args.hopping,
                     flux_ratio=args.flux_ratio, hbar=args.hbar)
    ks = args.k if args.k else [np.pi / 8, np.pi / 4, np.pi / 2, 5 * np.pi / 8]
    expected = float(np.mod(2.0 * np.pi * reduced_flux(cfg.flux_ratio), 2.0 * np.pi))
    rows = []
    phases = []
    for k in ks:
        res = two_arm_phase(cfg, k)
        dev = abs((res.phase - expected + np.pi) % (2.0 * np.pi) - np.pi)
        rows.append(
            [k, res.phase, expected, dev,
             res.closed_intensity, res.superposed_intensity, res.arrival_time]
        )
        phases.append(res.phase)
    phases = np.unwrap(np.asarray(phases))
    spread = float(np.max(phases) - np.min(phases)) if len(phases) > 1 else 0.0
    max_dev = max(row[3] for row in rows)
    meta = {
        "command": "ab-ring", "sites": args.sites, "hopping": args.hopping,
        "flux_ratio": args.flux_ratio, "hbar": args.hbar,
        "phase_spread": spread, "tolerance": RING_SPREAD_TOL,
    }
    columns = ["k", "phase", "expected", "deviation",
               "closed_intensity", "superposed_intensity", "arrival_time"]
    _write(args, _emit(args, meta, columns, rows))
    ok = spread <= RING_SPREAD_TOL and max_dev <= RING_SPREAD_TOL
    return EXIT_OK if ok else EXIT_TOLERANCE


def _add_output_args(sp) -> None:
    sp.add_argument("--out", default=None, help="output path (default: stdout)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--seed", type=int, default=0, help="RNG seed where applicable")
    sp.add_argument("--config", default=None,
                    help="flat key=value file mirroring flag names; flags override it")


def _add_model_args(sp) -> None:
    sp.add_argument("--B", type=float, default=1.0, help="field magnitude (energy units)")
    sp.add_argument("--theta", type=float, required=True, help="cone angle in radians")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--omega0", type=float, help="rotation frequency (rad/time)")
    group.add_argument("--eta", type=float, help="adiabaticity ratio hbar*omega0/B")
    sp.add_argument("--hbar", type=float, default=1.0)


def build_parser() -> tuple:
    parser = argparse.ArgumentParser(
        prog="phaselab",
        description="Geometric-phase laboratory: exact rotating-field spin dynamics "
                    "and an Aharonov-Bohm flux ring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers = {}

    sp = sub.add_parser("exact", help="closed-form amplitudes for both branches")
    _add_model_args(sp)
    sp.add_argument("--t-end", type=float, default=None, help="default: one period")
    sp.add_argument("--samples", type=int, default=201)
    _add_output_args(sp)
    sp.set_defaults(func=run_exact)
    subparsers["exact"] = sp

    sp = sub.add_parser("evolve", help="numerical propagation vs closed form")
    _add_model_args(sp)
    sp.add_argument("--nsteps", type=int, default=100_000)
    sp.add_argument("--branch", choices=("plus", "minus"), default="plus")
    _add_output_args(sp)
    sp.set_defaults(func=run_evolve)
    subparsers["evolve"] = sp

    sp = sub.add_parser("sweep", help="adiabaticity sweep of the per-cycle phases")
    sp.add_argument("--B", type=float, default=1.0)
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--hbar", type=float, default=1.0)
    sp.add_argument("--eta-min", type=float, required=True)
    sp.add_argument("--eta-max", type=float, required=True)
    sp.add_argument("--points", type=int, default=60)
    sp.add_argument("--spacing", choices=("log", "linear"), default="log")
    _add_output_args(sp)
    sp.set_defaults(func=run_sweep)
    subparsers["sweep"] = sp

    sp = sub.add_parser("gauge-check", help="hidden-gauge battery report (JSON)")
    _add_model_args(sp)
    sp.add_argument("--count", type=int, default=100)
    _add_output_args(sp)
    sp.set_defaults(func=run_gauge_check)
    subparsers["gauge-check"] = sp

    sp = sub.add_parser("interfere", help="per-cycle interference intensity")
    _add_model_args(sp)
    _add_output_args(sp)
    sp.set_defaults(func=run_interfere)
    subparsers["interfere"] = sp

    sp = sub.add_parser("ab-ring", help="two-arm phase on the flux ring")
    sp.add_argument("--sites", type=int, default=256)
    sp.add_argument("--hopping", type=float, default=1.0)
    sp.add_argument("--flux-ratio", type=float, default=0.0)
    sp.add_argument("--hbar", type=float, default=1.0)
    sp.add_argument("--k", type=float, action="append", default=None,
                    help="wavenumber in (0, pi); repeatable")
    _add_output_args(sp)
    sp.set_defaults(func=run_ab_ring)
    subparsers["ab-ring"] = sp

    return parser, subparsers


def _load_config(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _apply_config(subparser, config: dict) -> None:
    """Install config values as subparser defaults so explicit flags win."""
    actions = {}
    for action in subparser._actions:
        for opt in action.option_strings:
            if opt.startswith("--"):
                actions[opt[2:]] = action
    defaults = {}
    for key, raw in config.items():
        name = key.replace("_", "-")
        if name == "config":
            continue
        action = actions.get(name)
        if action is None:
            raise ValueError(f"unknown config key: {key!r}")
        convert = action.type or str
        if isinstance(action, argparse._AppendAction):
            defaults[action.dest] = [convert(v) for v in raw.split(",")]
        elif action.choices is not None and action.type is None:
            if raw not in action.choices:
                raise ValueError(f"config key {key!r}: invalid choice {raw!r}")
            defaults[action.dest] = raw
        else:
            defaults[action.dest] = convert(raw)
    subparser.set_defaults(**defaults)
    # set_defaults does not clear 'required'; a config-supplied value must count.
    for action in subparser._actions:
        if action.dest in defaults:
            action.required = False
    for group in subparser._mutually_exclusive_groups:
        if group.required and any(a.dest in defaults for a in group._group_actions):
            group.required = False


def _prescan(argv) -> tuple:
    """Extract (subcommand, config path) without a full parse."""
    command = None
    config = None
    it = iter(range(len(argv)))
    for i in it:
        token = argv[i]
        if token == "--config":
            if i + 1 < len(argv):
                config = argv[i + 1]
        elif token.startswith("--config="):
            config = token.split("=", 1)[1]
        elif command is None and not token.startswith("-"):
            command = token
    return command, config


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser, subparsers = build_parser()
    command, config_path = _prescan(argv)
    if config_path is not None:
        if command not in subparsers:
            parser.error(f"--config requires a known subcommand, got {command!r}")
        try:
            _apply_config(subparsers[command], _load_config(config_path))
        except (OSError, ValueError) as exc:
            print(f"phaselab: config error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"phaselab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
