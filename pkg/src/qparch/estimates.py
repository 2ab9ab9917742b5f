"""Application-layer resource estimators.

Produces full qubit/cycle/runtime budgets for integer factoring and
first-quantized molecular simulation, including distillation-factory sizing
and the throughput throttling that kicks in when ancilla consumption exceeds
factory production on a fixed-size machine.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from . import distillation, qec
from .errors import NoFactoryCapacityError

SECONDS_PER_DAY = 86400.0
# Qubits sit on a 1 um pitch, so one virtual qubit occupies 1 um^2 = 1e-8 cm^2.
CM2_PER_VIRTUAL_QUBIT = 1e-8

DEFAULT_DISTILLATION_LEVEL = 2

# Factoring model constants (carry-lookahead adders, one modular
# exponentiation).  The sequential adder count 4*N^2 is calibrated so the
# total Toffoli depth matches the reference 1.68e8 at N = 1024; it can be
# overridden per workload.
SHOR_APP_QUBITS_PER_BIT = 6
SHOR_ADDER_ROUNDS_COEFF = 4.0      # sequential adders = coeff * N^2
SHOR_TOFFOLIS_PER_ADDER_COEFF = 10.0   # Toffolis per adder = coeff * N
SHOR_ADDER_DEPTH_COEFF = 4.0       # adder depth in Toffoli layers = coeff * log2(N)

# First-quantized simulation constants: per-operator circuit depths in
# logical cycles (kinetic and QFT fixed, potential linear in particle count)
# and per-particle qubit counts.  The application-register coefficient 109 is
# a single-point calibration (6650 qubits at 61 particles).
SIM_KINETIC_CYCLES = 1.55e5
SIM_POTENTIAL_CYCLES_PER_PARTICLE = 6.26e5
SIM_QFT_CYCLES = 2.57e4
SIM_APP_QUBITS_PER_PARTICLE = 109
SIM_DISTILL_QUBITS_PER_PARTICLE = 260
SIM_OPERATOR_MEMORY_PER_PARTICLE = {"kinetic": 334, "potential": 369, "qft": 272}

SWEEP_CSV_HEADER = (
    "N,app_qubits,distillation_qubits,production_rate,consumption_rate,"
    "throttle,toffoli_depth,runtime_s"
)


@dataclass(frozen=True)
class ShorWorkload:
    """Factoring an N-bit integer, optionally on a fixed-size machine."""

    bits: int
    machine_logical_qubits: int | None = None
    adder_rounds_coeff: float = SHOR_ADDER_ROUNDS_COEFF
    toffolis_per_adder_coeff: float = SHOR_TOFFOLIS_PER_ADDER_COEFF
    adder_depth_coeff: float = SHOR_ADDER_DEPTH_COEFF
    ancillas_per_toffoli: int = distillation.TOFFOLI_ANCILLAS

    def __post_init__(self) -> None:
        if self.bits < 4:
            raise ValueError("bit size must be >= 4")
        if self.machine_logical_qubits is not None and self.machine_logical_qubits <= self.app_qubits:
            raise NoFactoryCapacityError(
                "no factory capacity: machine has "
                f"{self.machine_logical_qubits} logical qubits but the algorithm "
                f"needs {self.app_qubits} application qubits"
            )

    @property
    def app_qubits(self) -> int:
        return SHOR_APP_QUBITS_PER_BIT * self.bits

    @property
    def adders_sequential(self) -> float:
        return self.adder_rounds_coeff * self.bits ** 2

    @property
    def toffolis_per_adder(self) -> float:
        return self.toffolis_per_adder_coeff * self.bits

    @property
    def adder_depth_toffoli(self) -> float:
        return self.adder_depth_coeff * math.log2(self.bits)


@dataclass(frozen=True)
class SimWorkload:
    """First-quantized molecular simulation of B particles on a position grid."""

    particles: int
    bits_precision: int = 12
    timesteps: int = 2 ** 10

    def __post_init__(self) -> None:
        if self.particles < 1:
            raise ValueError("particle count must be >= 1")
        if self.bits_precision < 1 or self.timesteps < 1:
            raise ValueError("bits_precision and timesteps must be >= 1")

    @property
    def register_qubits_per_particle(self) -> int:
        return 3 * self.bits_precision

    @property
    def app_qubits(self) -> int:
        return SIM_APP_QUBITS_PER_PARTICLE * self.particles

    @property
    def distillation_qubits(self) -> int:
        return SIM_DISTILL_QUBITS_PER_PARTICLE * self.particles


@dataclass(frozen=True)
class ResourceReport:
    """Qubit/cycle/runtime budget for one application run."""

    app_qubits: int
    distillation_qubits: int
    total_logical_qubits: int
    toffoli_depth: float
    logical_cycles: float
    code_distance: int
    virtual_qubits: int
    chip_area_cm2: float
    runtime_seconds: float
    production_rate: float
    consumption_rate: float | None
    throttle_factor: float
    failure_probability: float
    details: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.total_logical_qubits != self.app_qubits + self.distillation_qubits:
            raise ValueError("total logical qubits must equal app + distillation")
        if self.virtual_qubits != self.total_logical_qubits * qec.footprint(self.code_distance):
            raise ValueError("virtual qubits must equal logical qubits times the code footprint")
        if abs(self.chip_area_cm2 - self.virtual_qubits * CM2_PER_VIRTUAL_QUBIT) > 1e-9 * max(
            1.0, self.chip_area_cm2
        ):
            raise ValueError("chip area must equal virtual qubits on a 1 um pitch")
        if self.throttle_factor < 1.0:
            raise ValueError("throttle factor cannot be below 1")
        if self.consumption_rate is not None:
            expected = max(1.0, self.consumption_rate / self.production_rate)
            if abs(self.throttle_factor - expected) > 1e-9 * expected:
                raise ValueError("throttle factor must equal max(1, consumption/production)")

    @property
    def runtime_days(self) -> float:
        return self.runtime_seconds / SECONDS_PER_DAY

    def to_dict(self) -> dict:
        return {
            "app_qubits": self.app_qubits,
            "distillation_qubits": self.distillation_qubits,
            "total_logical_qubits": self.total_logical_qubits,
            "toffoli_depth": self.toffoli_depth,
            "logical_cycles": self.logical_cycles,
            "code_distance": self.code_distance,
            "virtual_qubits": self.virtual_qubits,
            "chip_area_cm2": self.chip_area_cm2,
            "runtime_seconds": self.runtime_seconds,
            "runtime_days": self.runtime_days,
            "production_rate": self.production_rate,
            "consumption_rate": self.consumption_rate,
            "throttle_factor": self.throttle_factor,
            "failure_probability": self.failure_probability,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


def shor_consumption_rate(bits: int) -> float:
    """Peak distilled-ancilla consumption per logical cycle for N-bit factoring.

    Each adder fires 10N Toffolis (7 ancillas each) over its 124*log2(N)
    cycle depth, giving 70N / (124*log2(N)).
    """
    if bits < 4:
        raise ValueError("bit size must be >= 4")
    return _consumption_rate(ShorWorkload(bits=bits))


def _consumption_rate(workload: ShorWorkload) -> float:
    adder_cycles = workload.adder_depth_toffoli * distillation.TOFFOLI_DEPTH_CYCLES
    return workload.toffolis_per_adder * workload.ancillas_per_toffoli / adder_cycles


def shor_estimate(
    workload: ShorWorkload,
    profile: qec.HardwareProfile | None = None,
    code: qec.CodePoint | None = None,
    level: int = DEFAULT_DISTILLATION_LEVEL,
) -> ResourceReport:
    """Full resource budget for one run of the factoring algorithm.

    Without a machine size the factory is sized to match peak consumption
    (no throttling).  With a fixed machine, everything beyond the
    application qubits becomes factory area and the runtime stretches by
    max(1, consumption/production).
    """
    profile = profile if profile is not None else qec.HardwareProfile()
    code = code if code is not None else qec.code_point(profile, qec.DEFAULT_REPORT_DISTANCE)

    toffoli_depth = workload.adders_sequential * workload.adder_depth_toffoli
    logical_cycles = toffoli_depth * distillation.TOFFOLI_DEPTH_CYCLES
    consumption = _consumption_rate(workload)

    if workload.machine_logical_qubits is None:
        factory_area = distillation.required_factory_area(consumption, level)
    else:
        factory_area = workload.machine_logical_qubits - workload.app_qubits
    production = distillation.factory_rate(factory_area, level)
    throttle = max(1.0, consumption / production)
    runtime = logical_cycles * profile.logical_cycle_time * throttle

    total = workload.app_qubits + factory_area
    virtual = total * code.virtual_per_logical
    return ResourceReport(
        app_qubits=workload.app_qubits,
        distillation_qubits=factory_area,
        total_logical_qubits=total,
        toffoli_depth=toffoli_depth,
        logical_cycles=logical_cycles,
        code_distance=code.distance,
        virtual_qubits=virtual,
        chip_area_cm2=virtual * CM2_PER_VIRTUAL_QUBIT,
        runtime_seconds=runtime,
        production_rate=production,
        consumption_rate=consumption,
        throttle_factor=throttle,
        failure_probability=qec.failure_probability(
            code.logical_error_rate, logical_cycles, total
        ),
        details={
            "application": "shor",
            "bits": workload.bits,
            "distillation_level": level,
            "depth_units": "logical_cycles",
            "machine_logical_qubits": workload.machine_logical_qubits,
        },
    )


def sim_per_step_cycles(workload: SimWorkload) -> float:
    """Logical cycles for one propagator step: potential + kinetic + QFT pair."""
    return (
        SIM_POTENTIAL_CYCLES_PER_PARTICLE * workload.particles
        + SIM_KINETIC_CYCLES
        + 2 * SIM_QFT_CYCLES
    )


def sim_estimate(
    workload: SimWorkload,
    profile: qec.HardwareProfile | None = None,
    code: qec.CodePoint | None = None,
    level: int = DEFAULT_DISTILLATION_LEVEL,
) -> ResourceReport:
    """Resource budget for a first-quantized simulation run.

    The propagator repeats for every timestep; one extra QFT on the time
    register converts the evolution into an energy readout (a sub-0.1%
    addition, included for completeness).
    """
    profile = profile if profile is not None else qec.HardwareProfile()
    code = code if code is not None else qec.code_point(profile, qec.DEFAULT_REPORT_DISTANCE)

    logical_cycles = workload.timesteps * sim_per_step_cycles(workload) + SIM_QFT_CYCLES
    toffoli_depth = logical_cycles / distillation.TOFFOLI_DEPTH_CYCLES
    total = workload.app_qubits + workload.distillation_qubits
    virtual = total * code.virtual_per_logical
    return ResourceReport(
        app_qubits=workload.app_qubits,
        distillation_qubits=workload.distillation_qubits,
        total_logical_qubits=total,
        toffoli_depth=toffoli_depth,
        logical_cycles=logical_cycles,
        code_distance=code.distance,
        virtual_qubits=virtual,
        chip_area_cm2=virtual * CM2_PER_VIRTUAL_QUBIT,
        runtime_seconds=logical_cycles * profile.logical_cycle_time,
        production_rate=distillation.factory_rate(workload.distillation_qubits, level),
        consumption_rate=None,
        throttle_factor=1.0,
        failure_probability=qec.failure_probability(
            code.logical_error_rate, logical_cycles, total
        ),
        details={
            "application": "molecular_simulation",
            "particles": workload.particles,
            "bits_precision": workload.bits_precision,
            "timesteps": workload.timesteps,
            "register_qubits_per_particle": workload.register_qubits_per_particle,
            "distillation_level": level,
            "depth_units": "logical_cycles",
            "operator_memory_logical_qubits": {
                name: per * workload.particles
                for name, per in SIM_OPERATOR_MEMORY_PER_PARTICLE.items()
            },
        },
    )


def shor_sweep(
    bit_sizes: list[int],
    machine_logical_qubits: int | None = None,
    profile: qec.HardwareProfile | None = None,
    code: qec.CodePoint | None = None,
    level: int = DEFAULT_DISTILLATION_LEVEL,
) -> list[ResourceReport]:
    """One factoring report per bit size, in input order."""
    return [
        shor_estimate(
            ShorWorkload(bits=bits, machine_logical_qubits=machine_logical_qubits),
            profile=profile,
            code=code,
            level=level,
        )
        for bits in bit_sizes
    ]


def sweep_to_csv(reports: list[ResourceReport]) -> str:
    """Serialize sweep reports to CSV with the fixed sweep header."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_CSV_HEADER.split(","))
    for report in reports:
        writer.writerow(
            [
                report.details.get("bits", report.details.get("particles")),
                report.app_qubits,
                report.distillation_qubits,
                repr(report.production_rate),
                repr(report.consumption_rate) if report.consumption_rate is not None else "",
                repr(report.throttle_factor),
                repr(report.toffoli_depth),
                repr(report.runtime_seconds),
            ]
        )
    return buffer.getvalue()
