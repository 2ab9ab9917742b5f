"""Command-line front end.

Subcommands: ``qec distance``, ``estimate shor``, ``estimate sim``,
``pulse sweep``, ``frame exec``.  Reports go to stdout or ``--output`` as
JSON/CSV.  Exit codes: 0 success, 2 usage or parse error, 3 infeasible
model input.  Every invocation is deterministic for fixed flags, profile
and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import estimates, pauli_frame, pulses, qec
from .errors import InfeasibleInputError, UnreachableTargetError

PROFILE_ENV_VAR = "QPARCH_PROFILE"
PULSE_CSV_HEADER = "sequence,pulse_error,tau_s,samples,seed,infidelity"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


def _comma_ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _comma_floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _comma_sequences(text: str) -> list[str]:
    names = []
    for tok in text.split(","):
        tok = tok.strip().upper()
        if tok not in ("8H", "CP", "UDD"):
            raise argparse.ArgumentTypeError(f"unknown sequence {tok!r} (choose from 8h, cp, udd)")
        names.append(tok)
    if not names:
        raise argparse.ArgumentTypeError("at least one sequence is required")
    return names


def _load_profile(path: str | None) -> qec.HardwareProfile:
    path = path or os.environ.get(PROFILE_ENV_VAR)
    if path:
        return qec.HardwareProfile.from_json(path)
    return qec.HardwareProfile()


def _write_output(text: str, path: str | None) -> None:
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _point_dict(profile: qec.HardwareProfile, point: qec.CodePoint) -> dict:
    times = qec.logical_gate_times(profile, point.distance)
    data = point.to_dict()
    data.update(
        cnot_time_s=times["cnot_time"],
        hadamard_time_s=times["hadamard_time"],
        measurement_time_s=times["measurement_time"],
    )
    return data


def _cmd_qec_distance(args: argparse.Namespace) -> int:
    overrides = {}
    if args.error_per_gate is not None:
        overrides["error_per_virtual_gate"] = args.error_per_gate
    base = _load_profile(args.profile)
    merged = {**base.to_dict(), **overrides}
    if not merged["error_per_virtual_gate"] < merged["threshold"]:
        raise UnreachableTargetError(
            "unreachable target: error per gate "
            f"{merged['error_per_virtual_gate']} is at or above the threshold {merged['threshold']}"
        )
    profile = qec.HardwareProfile.from_dict(merged)

    if args.distance is not None:
        result = {"requested": _point_dict(profile, qec.code_point(profile, args.distance))}
    else:
        minimal = qec.min_code_distance(profile, args.target_logical_error)
        result = {
            "target_logical_error": args.target_logical_error,
            "minimal": _point_dict(profile, minimal),
            "report_distance": qec.DEFAULT_REPORT_DISTANCE,
            "report": _point_dict(profile, qec.code_point(profile, qec.DEFAULT_REPORT_DISTANCE)),
        }
    _write_output(json.dumps(result, indent=2) + "\n", args.output)
    return EXIT_OK


def _cmd_estimate_shor(args: argparse.Namespace) -> int:
    profile = _load_profile(args.profile)
    code = qec.code_point(profile, args.distance)
    if len(args.bits) == 1:
        workload = estimates.ShorWorkload(
            bits=args.bits[0], machine_logical_qubits=args.machine_logical_qubits
        )
        report = estimates.shor_estimate(workload, profile, code, level=args.level)
        _write_output(report.to_json(), args.output)
    else:
        reports = estimates.shor_sweep(
            args.bits, args.machine_logical_qubits, profile, code, level=args.level
        )
        _write_output(estimates.sweep_to_csv(reports), args.output)
    return EXIT_OK


def _cmd_estimate_sim(args: argparse.Namespace) -> int:
    profile = _load_profile(args.profile)
    code = qec.code_point(profile, args.distance)
    workload = estimates.SimWorkload(
        particles=args.particles,
        bits_precision=args.bits_precision,
        timesteps=args.timesteps,
    )
    report = estimates.sim_estimate(workload, profile, code, level=args.level)
    _write_output(report.to_json(), args.output)
    return EXIT_OK


def _cmd_pulse_sweep(args: argparse.Namespace) -> int:
    profile = _load_profile(args.profile)
    t2_star = None if args.t2_star == 0 else args.t2_star
    rows = [PULSE_CSV_HEADER]
    for name in args.sequences:
        sequence = pulses.build_sequence(name, args.tau, profile.larmor_period)
        for pulse_error in args.pulse_errors:
            noise = pulses.NoiseModel(
                t2_star=t2_star, pulse_error=pulse_error, samples=args.samples, seed=args.seed
            )
            result = pulses.process_infidelity(sequence, noise)
            rows.append(
                f"{name},{pulse_error!r},{args.tau!r},{args.samples},{args.seed},"
                f"{result.infidelity!r}"
            )
    if args.baseline:
        baseline = pulses.free_evolution(8 * args.tau, profile.larmor_period)
        noise = pulses.NoiseModel(
            t2_star=t2_star, pulse_error=0.0, samples=args.samples, seed=args.seed
        )
        result = pulses.process_infidelity(baseline, noise)
        rows.append(f"free,0.0,{args.tau!r},{args.samples},{args.seed},{result.infidelity!r}")
    _write_output("\n".join(rows) + "\n", args.output)
    return EXIT_OK


def _cmd_frame_exec(args: argparse.Namespace) -> int:
    circuit = pauli_frame.load_circuit(args.circuit)
    num_qubits = args.num_qubits
    if num_qubits is None:
        num_qubits = pauli_frame.circuit_qubit_count(circuit)
    frame = pauli_frame.PauliFrame(num_qubits)
    final, outcomes = pauli_frame.run_circuit(frame, circuit)
    result = {"outcomes": outcomes, "frame": final.letters}
    _write_output(json.dumps(result, indent=2) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qparch",
        description="Resource estimation and control-layer simulation for a layered quantum computer.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--profile", help=f"hardware profile JSON (default: ${PROFILE_ENV_VAR} or built-in)")
        sub.add_argument("--output", "-o", default="-", help="output file (default stdout)")

    qec_parser = subparsers.add_parser("qec", help="surface-code sizing")
    qec_sub = qec_parser.add_subparsers(dest="subcommand", required=True)
    distance = qec_sub.add_parser("distance", help="code distance selection and logical error rates")
    add_common(distance)
    distance.add_argument(
        "--target-logical-error",
        type=float,
        default=1e-2,
        help="target error per logical gate for the minimal-distance search (default 1e-2)",
    )
    distance.add_argument("--distance", type=int, help="evaluate one explicit code distance instead")
    distance.add_argument("--error-per-gate", type=float, help="override the profile's error per virtual gate")
    distance.set_defaults(handler=_cmd_qec_distance)

    estimate = subparsers.add_parser("estimate", help="application resource budgets")
    estimate_sub = estimate.add_subparsers(dest="subcommand", required=True)

    shor = estimate_sub.add_parser("shor", help="integer-factoring budget")
    add_common(shor)
    shor.add_argument("--bits", type=_comma_ints, required=True,
                      help="key size in bits; a comma list emits a CSV sweep")
    shor.add_argument("--machine-logical-qubits", type=int,
                      help="fixed machine size; omitted = factory sized to demand")
    shor.add_argument("--distance", type=int, default=qec.DEFAULT_REPORT_DISTANCE)
    shor.add_argument("--level", type=int, default=estimates.DEFAULT_DISTILLATION_LEVEL,
                      help="distillation level (default 2)")
    shor.set_defaults(handler=_cmd_estimate_shor)

    sim = estimate_sub.add_parser("sim", help="molecular-simulation budget")
    add_common(sim)
    sim.add_argument("--particles", type=int, required=True)
    sim.add_argument("--bits-precision", type=int, default=12)
    sim.add_argument("--timesteps", type=int, default=2 ** 10)
    sim.add_argument("--distance", type=int, default=qec.DEFAULT_REPORT_DISTANCE)
    sim.add_argument("--level", type=int, default=estimates.DEFAULT_DISTILLATION_LEVEL)
    sim.set_defaults(handler=_cmd_estimate_sim)

    pulse = subparsers.add_parser("pulse", help="pulse-level simulation")
    pulse_sub = pulse.add_subparsers(dest="subcommand", required=True)
    sweep = pulse_sub.add_parser("sweep", help="decoupling infidelity sweep (CSV)")
    add_common(sweep)
    sweep.add_argument("--sequences", type=_comma_sequences, default=["8H", "CP", "UDD"],
                       help="comma list from 8h,cp,udd (default all)")
    sweep.add_argument("--pulse-errors", type=_comma_floats, default=[0.0],
                       help="comma list of relative pulse errors")
    sweep.add_argument("--tau", type=float, default=1e-9, help="base delay in seconds (default 1e-9)")
    sweep.add_argument("--samples", type=int, default=20000)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--t2-star", type=float, default=2e-9,
                       help="ensemble dephasing time in seconds; 0 disables dephasing")
    sweep.add_argument("--baseline", action="store_true",
                       help="append a pulse-free evolution row of equal duration")
    sweep.set_defaults(handler=_cmd_pulse_sweep)

    frame = subparsers.add_parser("frame", help="Pauli-frame execution")
    frame_sub = frame.add_subparsers(dest="subcommand", required=True)
    execute = frame_sub.add_parser("exec", help="run a JSON-lines circuit against a fresh frame")
    add_common(execute)
    execute.add_argument("circuit", help="circuit file, one JSON instruction per line")
    execute.add_argument("--num-qubits", type=int, help="frame size (default: inferred)")
    execute.set_defaults(handler=_cmd_frame_exec)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except pauli_frame.CircuitParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
