import dataclasses
import math

import pytest

from qparch import estimates as est
from qparch import qec
from qparch.errors import NoFactoryCapacityError

PROFILE = qec.HardwareProfile()
CODE = qec.code_point(PROFILE, 31)

# Reference machine with 1e5 logical qubits: cross-section, production rate,
# peak consumption rate per bit size.
REFERENCE_FACTORY_TABLE = {
    512: (96928, 84.1, 32.1),
    1024: (93856, 81.5, 57.8),
    2048: (87712, 76.1, 105.1),
    4096: (75424, 65.5, 192.7),
    8192: (50848, 44.1, 355.7),
    16384: (1696, 1.5, 660.6),
}


class TestShorConsumptionRate:
    @pytest.mark.parametrize("bits,expected", [(512, 32.1), (1024, 57.8), (2048, 105.1)])
    def test_reference_rows(self, bits, expected):
        assert est.shor_consumption_rate(bits) == pytest.approx(expected, abs=0.1)

    def test_algebraic_identity(self):
        for bits in (16, 100, 512, 1024, 5000):
            rate = est.shor_consumption_rate(bits)
            assert rate * 124 * math.log2(bits) == pytest.approx(70 * bits, rel=1e-12)

    def test_rejects_tiny_keys(self):
        with pytest.raises(ValueError):
            est.shor_consumption_rate(2)


class TestShorEstimate:
    def test_unconstrained_reference_workload(self):
        report = est.shor_estimate(est.ShorWorkload(bits=1024), PROFILE, CODE)
        assert report.app_qubits == 6144
        assert report.distillation_qubits == pytest.approx(66564, rel=1e-3)
        assert report.total_logical_qubits == pytest.approx(72708, rel=1e-3)
        assert report.toffoli_depth == pytest.approx(1.68e8, rel=0.01)
        assert report.logical_cycles == pytest.approx(5.21e9, rel=0.01)
        assert report.virtual_qubits == pytest.approx(4.54e8, rel=0.005)
        assert report.chip_area_cm2 == pytest.approx(4.54, rel=0.005)
        assert report.runtime_days == pytest.approx(1.81, rel=0.02)
        assert report.throttle_factor == 1.0

    def test_fixed_machine_throttles_large_keys(self):
        report = est.shor_estimate(
            est.ShorWorkload(bits=4096, machine_logical_qubits=100000), PROFILE, CODE
        )
        assert report.production_rate == pytest.approx(65.5, abs=0.1)
        assert report.consumption_rate == pytest.approx(192.7, abs=0.1)
        assert 2.8 <= report.throttle_factor <= 3.1

    def test_fixed_machine_not_throttled_at_1024(self):
        constrained = est.shor_estimate(
            est.ShorWorkload(bits=1024, machine_logical_qubits=100000), PROFILE, CODE
        )
        unconstrained = est.shor_estimate(est.ShorWorkload(bits=1024), PROFILE, CODE)
        assert constrained.throttle_factor == 1.0
        assert constrained.runtime_seconds == unconstrained.runtime_seconds

    def test_machine_without_factory_capacity(self):
        with pytest.raises(NoFactoryCapacityError, match="no factory capacity"):
            est.shor_estimate(
                est.ShorWorkload(bits=1024, machine_logical_qubits=6144), PROFILE, CODE
            )

    def test_depth_doubling_identity(self):
        for bits in (64, 512, 1024):
            small = est.shor_estimate(est.ShorWorkload(bits=bits), PROFILE, CODE)
            large = est.shor_estimate(est.ShorWorkload(bits=2 * bits), PROFILE, CODE)
            expected = 4 * (math.log2(bits) + 1) / math.log2(bits)
            assert large.toffoli_depth / small.toffoli_depth == pytest.approx(expected, rel=1e-12)

    def test_report_consistency_invariants(self):
        report = est.shor_estimate(
            est.ShorWorkload(bits=2048, machine_logical_qubits=100000), PROFILE, CODE
        )
        assert report.total_logical_qubits == report.app_qubits + report.distillation_qubits
        assert report.virtual_qubits == report.total_logical_qubits * qec.footprint(31)
        assert report.runtime_seconds == pytest.approx(
            report.logical_cycles * PROFILE.logical_cycle_time * report.throttle_factor
        )
        assert report.throttle_factor >= 1.0
        with pytest.raises(ValueError):
            dataclasses.replace(report, total_logical_qubits=report.total_logical_qubits + 1)
        with pytest.raises(ValueError):
            dataclasses.replace(report, throttle_factor=0.5)

    def test_failure_probability_uses_report_depth_and_width(self):
        report = est.shor_estimate(est.ShorWorkload(bits=1024), PROFILE, CODE)
        expected = qec.failure_probability(
            CODE.logical_error_rate, report.logical_cycles, report.total_logical_qubits
        )
        assert report.failure_probability == expected
        assert report.details["depth_units"] == "logical_cycles"


class TestSimEstimate:
    def test_per_step_cycles_alanine(self):
        assert est.sim_per_step_cycles(est.SimWorkload(particles=61)) == pytest.approx(
            3.84e7, rel=0.01
        )

    def test_per_step_cycles_single_particle(self):
        assert est.sim_per_step_cycles(est.SimWorkload(particles=1)) == pytest.approx(832400.0)

    def test_potential_term_linear_in_particles(self):
        one = est.sim_per_step_cycles(est.SimWorkload(particles=1))
        two = est.sim_per_step_cycles(est.SimWorkload(particles=2))
        assert two - one == pytest.approx(est.SIM_POTENTIAL_CYCLES_PER_PARTICLE)

    def test_alanine_reference_report(self):
        report = est.sim_estimate(est.SimWorkload(particles=61), PROFILE, CODE)
        assert report.app_qubits == pytest.approx(6650, rel=0.01)
        assert report.distillation_qubits == 15860
        assert report.logical_cycles == pytest.approx(3.94e10, rel=0.01)
        assert report.toffoli_depth == pytest.approx(1.27e9, rel=0.01)
        assert report.virtual_qubits == pytest.approx(1.40e8, rel=0.01)
        assert report.chip_area_cm2 == pytest.approx(1.40, rel=0.01)
        assert report.runtime_days == pytest.approx(13.7, rel=0.02)

    def test_alanine_particle_count_from_formula(self):
        # C3 H7 N O2: every electron plus every nucleus
        electrons = 3 * 6 + 7 * 1 + 7 + 2 * 8
        nuclei = 3 + 7 + 1 + 2
        assert electrons + nuclei == 61
        assert 15860 // est.SIM_DISTILL_QUBITS_PER_PARTICLE == 61

    def test_single_particle_runtime(self):
        report = est.sim_estimate(est.SimWorkload(particles=1), PROFILE, CODE)
        assert report.runtime_seconds / 3600 == pytest.approx(7.1, rel=0.02)

    def test_runtime_affine_in_particles(self):
        runtimes = [
            est.sim_estimate(est.SimWorkload(particles=b), PROFILE, CODE).runtime_seconds
            for b in (1, 2, 3, 10, 11)
        ]
        step = runtimes[1] - runtimes[0]
        assert step > 0
        assert runtimes[2] - runtimes[1] == pytest.approx(step, rel=1e-9)
        assert runtimes[4] - runtimes[3] == pytest.approx(step, rel=1e-9)

    def test_register_size(self):
        workload = est.SimWorkload(particles=5)
        assert workload.register_qubits_per_particle == 36
        report = est.sim_estimate(workload, PROFILE, CODE)
        assert report.details["operator_memory_logical_qubits"] == {
            "kinetic": 334 * 5,
            "potential": 369 * 5,
            "qft": 272 * 5,
        }


class TestShorSweep:
    def test_reference_table_reproduction(self):
        reports = est.shor_sweep(
            sorted(REFERENCE_FACTORY_TABLE), machine_logical_qubits=100000,
            profile=PROFILE, code=CODE,
        )
        for report, (bits, row) in zip(reports, sorted(REFERENCE_FACTORY_TABLE.items())):
            cross_section, production, consumption = row
            assert report.distillation_qubits == cross_section == 100000 - 6 * bits
            assert report.production_rate == pytest.approx(production, abs=0.1)
            assert report.consumption_rate == pytest.approx(consumption, abs=0.1)

    def test_throttle_onset(self):
        reports = est.shor_sweep(
            [512, 1024, 2048, 4096], machine_logical_qubits=100000,
            profile=PROFILE, code=CODE,
        )
        for report in reports[:2]:
            assert report.throttle_factor == 1.0
        for report in reports[2:]:
            assert report.throttle_factor > 1.0

    def test_depth_monotone(self):
        reports = est.shor_sweep([512, 1024, 2048, 4096, 8192], profile=PROFILE, code=CODE)
        depths = [r.toffoli_depth for r in reports]
        assert depths == sorted(depths)

    def test_single_size_matches_estimate(self):
        sweep = est.shor_sweep([1024], profile=PROFILE, code=CODE)[0]
        single = est.shor_estimate(est.ShorWorkload(bits=1024), PROFILE, CODE)
        assert sweep.toffoli_depth == single.toffoli_depth
        assert sweep.runtime_seconds == single.runtime_seconds

    def test_csv_header_and_shape(self):
        reports = est.shor_sweep([512, 1024], machine_logical_qubits=100000,
                                 profile=PROFILE, code=CODE)
        text = est.sweep_to_csv(reports)
        lines = text.strip().split("\n")
        assert lines[0] == est.SWEEP_CSV_HEADER
        assert len(lines) == 3
        assert all(line.count(",") == lines[0].count(",") for line in lines)
        assert lines[1].startswith("512,3072,96928,")
