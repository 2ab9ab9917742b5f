"""Surface-code sizing model.

Maps a hardware profile (gate times and error rates) to logical-layer
quantities: the error rate of a logical gate at a given code distance, the
smallest distance meeting a target error rate, the virtual-qubit footprint of
a logical qubit, and the wall-clock duration of the fundamental logical gates.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import UnreachableTargetError

# Virtual qubits per logical qubit, modeled as round(coeff * d^2).  The
# coefficient is calibrated so that footprint(31) = 6240, the reference
# machine's value; the quadratic form follows from the area of the two
# lattice defects making up a logical qubit.
FOOTPRINT_COEFF = 6240 / 961

# Distance used by the reference resource reports.  The pure inversion of the
# error-scaling law yields d = 29 for the reference factoring workload; the
# reports pin d = 31, keeping a one-step safety margin and reproducing the
# published machine size.  Both values are surfaced by the CLI.
DEFAULT_REPORT_DISTANCE = 31

CNOT_STEP_COEFF = 13  # lattice steps per CNOT = 13 * ceil(d/4)  (defect braiding)
HADAMARD_DIVISOR = 8  # lattice steps per H = 13 * ceil(d/8)     (lattice shift)
CNOT_DIVISOR = 4


@dataclass(frozen=True)
class HardwareProfile:
    """Physical, virtual, QEC and logical timing/error constants.

    Defaults describe the optically controlled quantum-dot platform: 40 ps
    Larmor period, 14 ps broadband pulses (the Larmor period over sqrt(8)),
    32 ns entangling and virtual gates, 256 ns lattice refresh, 30 us logical
    cycle, 1e-3 error per virtual gate against a 9e-3 threshold.
    """

    larmor_period: float = 40e-12
    pulse_duration: float = 14e-12
    entangling_gate_time: float = 32e-9
    qnd_readout_time: float = 1e-9
    virtual_gate_time: float = 32e-9
    lattice_cycle_time: float = 256e-9
    logical_cycle_time: float = 30e-6
    error_per_virtual_gate: float = 1e-3
    threshold: float = 9e-3
    c1: float = 0.13
    c2: float = 0.61

    def __post_init__(self) -> None:
        times = {
            "larmor_period": self.larmor_period,
            "pulse_duration": self.pulse_duration,
            "entangling_gate_time": self.entangling_gate_time,
            "qnd_readout_time": self.qnd_readout_time,
            "virtual_gate_time": self.virtual_gate_time,
            "lattice_cycle_time": self.lattice_cycle_time,
            "logical_cycle_time": self.logical_cycle_time,
        }
        for name, value in times.items():
            if not value > 0:
                raise ValueError(f"{name} must be strictly positive, got {value}")
        if not 0 < self.error_per_virtual_gate < self.threshold < 1:
            raise ValueError(
                "profile requires 0 < error_per_virtual_gate < threshold < 1, got "
                f"error_per_virtual_gate={self.error_per_virtual_gate}, "
                f"threshold={self.threshold}"
            )
        if self.c1 <= 0 or self.c2 <= 0:
            raise ValueError("c1 and c2 must be positive")

    @property
    def suppression_base(self) -> float:
        """c2 * error_per_virtual_gate / threshold, the per-half-distance factor."""
        return self.c2 * self.error_per_virtual_gate / self.threshold

    @classmethod
    def from_dict(cls, data: dict) -> "HardwareProfile":
        """Build a profile from a mapping with exactly the dataclass field names.

        Missing fields take their defaults.  Unknown fields raise, so typos
        fail fast instead of silently keeping a default.
        """
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown hardware profile field(s): {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path: str | Path) -> "HardwareProfile":
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
        if not isinstance(data, dict):
            raise ValueError("hardware profile JSON must be an object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class CodePoint:
    """A chosen code distance and the quantities derived from it."""

    distance: int
    logical_error_rate: float
    virtual_per_logical: int
    cnot_lattice_steps: int
    hadamard_lattice_steps: int

    def __post_init__(self) -> None:
        if self.distance < 1 or self.distance % 2 == 0:
            raise ValueError(f"code distance must be an odd positive integer, got {self.distance}")

    def to_dict(self) -> dict:
        return {
            "distance": self.distance,
            "logical_error_rate": self.logical_error_rate,
            "virtual_per_logical": self.virtual_per_logical,
            "cnot_lattice_steps": self.cnot_lattice_steps,
            "hadamard_lattice_steps": self.hadamard_lattice_steps,
        }


@dataclass(frozen=True)
class AlgorithmDemand:
    """Circuit depth and width of an algorithm, with a failure budget.

    ``circuit_depth`` counts lattice refresh cycles by default; set
    ``depth_units="logical_cycles"`` when the depth is quoted in logical
    (CNOT-time) cycles instead.
    """

    circuit_depth: float
    logical_qubits: int
    target_failure: float = 1e-2
    depth_units: str = "lattice_cycles"

    def __post_init__(self) -> None:
        if self.circuit_depth < 1:
            raise ValueError("circuit_depth must be >= 1")
        if self.logical_qubits < 1:
            raise ValueError("logical_qubits must be >= 1")
        if not 0 < self.target_failure < 1:
            raise ValueError("target_failure must be in (0, 1)")
        if self.depth_units not in ("lattice_cycles", "logical_cycles"):
            raise ValueError(f"unknown depth_units: {self.depth_units!r}")

    def logical_error_budget(self) -> float:
        """Per-gate logical error rate at which the whole run meets the budget.

        Exact inversion of the failure-probability law; reduces to
        target / (K*Q) for small targets.
        """
        kq = self.circuit_depth * self.logical_qubits
        return -math.expm1(math.log1p(-self.target_failure) / kq)


def failure_probability(logical_error_rate: float, depth: float, qubits: float) -> float:
    """Worst-case algorithm failure probability 1 - (1 - eps)^(K*Q).

    Evaluated through log1p/expm1 so that tiny per-gate rates do not
    underflow: for K*Q*eps << 1 the result is K*Q*eps to first order.
    """
    eps = logical_error_rate
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"logical error rate must lie in [0, 1], got {eps}")
    if depth < 1 or qubits < 1:
        raise ValueError("depth and qubit count must be >= 1")
    if eps == 1.0:
        return 1.0
    return -math.expm1(depth * qubits * math.log1p(-eps))


def logical_error_rate(profile: HardwareProfile, distance: int) -> float:
    """Error per logical gate at code distance d.

    c1 * (c2 * eps_V / eps_thresh)^floor((d+1)/2), valid only below
    threshold.
    """
    if distance < 1 or distance % 2 == 0:
        raise ValueError(f"code distance must be an odd positive integer, got {distance}")
    if profile.error_per_virtual_gate >= profile.threshold:
        raise ValueError("scaling law requires error_per_virtual_gate < threshold")
    exponent = (distance + 1) // 2
    return profile.c1 * profile.suppression_base ** exponent


def footprint(distance: int) -> int:
    """Virtual qubits needed per logical qubit at code distance d."""
    if distance < 1:
        raise ValueError("distance must be >= 1")
    return round(FOOTPRINT_COEFF * distance * distance)


def code_point(profile: HardwareProfile, distance: int) -> CodePoint:
    """Assemble the CodePoint for an explicitly chosen distance."""
    return CodePoint(
        distance=distance,
        logical_error_rate=logical_error_rate(profile, distance),
        virtual_per_logical=footprint(distance),
        cnot_lattice_steps=CNOT_STEP_COEFF * math.ceil(distance / CNOT_DIVISOR),
        hadamard_lattice_steps=CNOT_STEP_COEFF * math.ceil(distance / HADAMARD_DIVISOR),
    )


def min_code_distance(profile: HardwareProfile, target_logical_error: float) -> CodePoint:
    """Smallest odd distance whose logical error rate meets the target.

    Raises UnreachableTargetError when the suppression base is >= 1, in which
    case increasing the distance never helps.
    """
    if target_logical_error <= 0:
        raise ValueError("target logical error rate must be positive")
    base = profile.suppression_base
    if base >= 1.0:
        raise UnreachableTargetError(
            "unreachable target: c2 * error_per_virtual_gate / threshold = "
            f"{base:.4g} >= 1, so no finite distance reaches the target"
        )
    # Closed-form starting exponent, then a local walk to absorb rounding.
    if target_logical_error >= profile.c1 * base:
        exponent = 1
    else:
        exponent = max(1, math.ceil(math.log(target_logical_error / profile.c1) / math.log(base)))
        while exponent > 1 and profile.c1 * base ** (exponent - 1) <= target_logical_error:
            exponent -= 1
    while profile.c1 * base ** exponent > target_logical_error:
        exponent += 1
    return code_point(profile, 2 * exponent - 1)


def logical_gate_times(profile: HardwareProfile, distance: int) -> dict:
    """Wall-clock durations of the fundamental logical gates at distance d."""
    if distance < 1:
        raise ValueError("distance must be >= 1")
    return {
        "cnot_time": CNOT_STEP_COEFF * math.ceil(distance / CNOT_DIVISOR) * profile.lattice_cycle_time,
        "hadamard_time": CNOT_STEP_COEFF * math.ceil(distance / HADAMARD_DIVISOR) * profile.lattice_cycle_time,
        "measurement_time": profile.lattice_cycle_time,
    }
