"""Single-qubit pulse-level simulator for the virtual-qubit control layer.

The qubit precesses continuously about Z at the Larmor frequency; laser
pulses add a drive term along a programmable axis.  A segment's unitary is
the joint exponential of drive plus precession, so a "Hadamard pulse" is a
drive along X with amplitude equal to the Larmor angular frequency applied
for 1/sqrt(8) of a Larmor period: the net rotation axis tilts to
(X + Z)/sqrt(2) and the net angle is pi.  Composite X gates, the
eight-pulse decoupling block, Carr-Purcell and Uhrig reference sequences,
and the error-compensating virtual gate are all built from these pulses plus
timed free precession.

Noise model: a quasi-static per-shot detuning (Gaussian, sigma =
sqrt(2)/T2*, giving the Gaussian free-induction envelope) plus a systematic
relative error on every pulse's rotation angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_LARMOR_PERIOD = 40e-12

SEQUENCE_LABELS = ("8H", "CP", "UDD", "BB1", "custom")

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)

# Uhrig pulse-center fractions for 4 pulses: sin^2(j*pi/10), j = 1..4.
UDD_FRACTIONS = tuple(math.sin(j * math.pi / 10) ** 2 for j in range(1, 5))


@dataclass(frozen=True)
class PulseSegment:
    """One timed element: free precession, or a drive pulse.

    For pulses, ``axis`` is the drive axis on the Bloch sphere and
    ``nominal_angle`` the rotation the drive alone would produce over the
    segment's duration; the background Z precession acts concurrently and is
    folded into the same exponential.
    """

    kind: str
    duration: float
    axis: tuple[float, float, float] | None = None
    nominal_angle: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("free_precession", "pulse"):
            raise ValueError(f"unknown segment kind: {self.kind!r}")
        if self.duration < 0:
            raise ValueError("segment duration must be non-negative")
        if self.kind == "pulse":
            if self.axis is None or self.nominal_angle is None:
                raise ValueError("pulse segments need an axis and a nominal angle")
            axis = tuple(float(c) for c in self.axis)
            if abs(math.sqrt(sum(c * c for c in axis)) - 1.0) > 1e-12:
                raise ValueError(f"pulse axis must be a unit vector, got {axis}")
            if self.nominal_angle < 0:
                raise ValueError("nominal angle must be non-negative (flip the axis instead)")
            object.__setattr__(self, "axis", axis)
        else:
            if self.axis is not None or self.nominal_angle is not None:
                raise ValueError("free precession takes no axis or angle")


def free_precession(duration: float) -> PulseSegment:
    return PulseSegment(kind="free_precession", duration=duration)


def pulse(axis, nominal_angle: float, duration: float) -> PulseSegment:
    return PulseSegment(kind="pulse", duration=duration, axis=tuple(axis), nominal_angle=nominal_angle)


def hadamard_pulse(larmor_period: float = DEFAULT_LARMOR_PERIOD, polarity: int = 1) -> PulseSegment:
    """Broadband pulse enacting a Hadamard: X drive at the Larmor rate for T_L/sqrt(8).

    With drive amplitude equal to the Larmor angular frequency, drive and
    precession combine into a pi rotation about (X + Z)/sqrt(2).  Negative
    polarity drives along -X, giving the mirror Hadamard-type pulse about
    (-X + Z)/sqrt(2); pairs of opposite polarity cancel systematic pulse
    errors to first order.
    """
    if polarity not in (1, -1):
        raise ValueError("polarity must be +1 or -1")
    duration = larmor_period / math.sqrt(8)
    drive_angle = 2 * math.pi / math.sqrt(8)
    return pulse((float(polarity), 0.0, 0.0), drive_angle, duration)


def z_axis_pulse(angle: float, larmor_period: float = DEFAULT_LARMOR_PERIOD) -> PulseSegment:
    """Driven Z rotation lasting one full Larmor period.

    The background precession contributes a full turn (identity up to
    phase), so the net gate is R_Z(angle) and, unlike free precession, the
    angle is subject to the systematic pulse error.
    """
    if not 0 <= angle < 4 * math.pi:
        raise ValueError("angle must lie in [0, 4*pi)")
    return pulse((0.0, 0.0, 1.0), angle, larmor_period)


@dataclass(frozen=True)
class PulseSequence:
    """Ordered pulse/precession schedule with the Larmor period it was built for."""

    segments: tuple[PulseSegment, ...]
    label: str = "custom"
    larmor_period: float = DEFAULT_LARMOR_PERIOD

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))
        if self.label not in SEQUENCE_LABELS:
            raise ValueError(f"unknown sequence label: {self.label!r}")
        if self.larmor_period <= 0:
            raise ValueError("larmor_period must be positive")
        if self.segments and not self.duration > 0:
            raise ValueError("non-empty sequences must have positive total duration")

    @property
    def duration(self) -> float:
        return sum(seg.duration for seg in self.segments)

    @property
    def pulse_count(self) -> int:
        return sum(1 for seg in self.segments if seg.kind == "pulse")


def _rotation_matrices(vx, vy, vz) -> np.ndarray:
    """exp(-i (v . sigma) / 2) for stacked rotation vectors."""
    vx, vy, vz = np.broadcast_arrays(np.atleast_1d(vx), np.atleast_1d(vy), np.atleast_1d(vz))
    angle = np.sqrt(vx * vx + vy * vy + vz * vz)
    cos_half = np.cos(angle / 2)
    # sin(a/2)/a, smooth through a = 0.
    k = 0.5 * np.sinc(angle / (2 * np.pi))
    out = np.empty(vx.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = cos_half - 1j * k * vz
    out[..., 0, 1] = (-1j * vx - vy) * k
    out[..., 1, 0] = (-1j * vx + vy) * k
    out[..., 1, 1] = cos_half + 1j * k * vz
    return out


def _segment_matrices(
    segment: PulseSegment,
    larmor_period: float,
    detunings: np.ndarray,
    pulse_error: float,
) -> np.ndarray:
    drift = 2 * np.pi / larmor_period + detunings
    if segment.kind == "free_precession":
        return _rotation_matrices(0.0, 0.0, drift * segment.duration)
    if segment.duration == 0:
        return np.broadcast_to(IDENTITY2, detunings.shape + (2, 2)).copy()
    ax, ay, az = segment.axis
    angle = segment.nominal_angle
    # The systematic pulse error scales the whole rotation the pulse enacts
    # (drive plus the precession it rides on), a relative deviation of the
    # segment's net rotation angle.
    scale = 1 + pulse_error
    return _rotation_matrices(
        scale * angle * ax,
        scale * angle * ay,
        scale * (angle * az + drift * segment.duration),
    )


def segment_unitary(
    segment: PulseSegment,
    larmor_period: float,
    detuning: float = 0.0,
    pulse_error: float = 0.0,
) -> np.ndarray:
    """2x2 unitary of one segment under a given detuning and pulse error."""
    return _segment_matrices(segment, larmor_period, np.array([detuning]), pulse_error)[0]


def sequence_unitary(
    sequence: PulseSequence,
    detuning: float = 0.0,
    pulse_error: float = 0.0,
) -> np.ndarray:
    """Net unitary of a sequence (segments compose in time order)."""
    u = IDENTITY2.copy()
    for segment in sequence.segments:
        u = segment_unitary(segment, sequence.larmor_period, detuning, pulse_error) @ u
    return u


def composite_x_gate(
    theta: float,
    larmor_period: float = DEFAULT_LARMOR_PERIOD,
    polarity: int = 1,
) -> PulseSequence:
    """R_X(theta) from two Hadamard pulses around a timed precession.

    Under zero noise the net unitary equals R_X(theta) up to global phase
    (R_X(-theta) for negative polarity, the same gate up to phase when
    theta = pi).
    """
    if not 0 <= theta < 4 * math.pi:
        raise ValueError("theta must lie in [0, 4*pi)")
    return PulseSequence(
        tuple(_composite_x_segments(theta, larmor_period, polarity)),
        label="custom",
        larmor_period=larmor_period,
    )


def _composite_x_segments(theta: float, larmor_period: float, polarity: int) -> list[PulseSegment]:
    delay = theta * larmor_period / (2 * math.pi)
    return [
        hadamard_pulse(larmor_period, polarity),
        free_precession(delay),
        hadamard_pulse(larmor_period, polarity),
    ]


def _composite_x_duration(larmor_period: float) -> float:
    return larmor_period * (0.5 + 2 / math.sqrt(8))


def build_sequence(
    kind: str,
    tau: float,
    larmor_period: float = DEFAULT_LARMOR_PERIOD,
) -> PulseSequence:
    """Decoupling block over a window of 8*tau containing four composite X gates.

    CP places the gates at Carr-Purcell positions (tau, 3 tau, 5 tau, 7 tau)
    and UDD at the Uhrig positions 8*tau*sin^2(j*pi/10); both use uniform
    drive polarity.  The eight-pulse block ("8H") uses the CP placement with
    every inter-gate delay snapped to the nearest whole number of Larmor
    periods and the drive polarity flipped halfway through, canceling the
    first-order response to systematic pulse errors, which uniform-polarity
    CP and UDD retain.
    """
    label = kind.upper()
    if label not in ("8H", "CP", "UDD"):
        raise ValueError(f"unknown sequence kind: {kind!r}")
    if tau <= 0:
        raise ValueError("tau must be positive")

    window = 8 * tau
    width = _composite_x_duration(larmor_period)
    if label == "UDD":
        centers = [window * f for f in UDD_FRACTIONS]
    else:
        centers = [tau, 3 * tau, 5 * tau, 7 * tau]

    delays = [centers[0] - width / 2]
    for previous, current in zip(centers, centers[1:]):
        delays.append(current - previous - width)
    delays.append(window - centers[-1] - width / 2)
    if min(delays) < 0:
        raise ValueError("tau too small to fit pulses")

    if label == "8H":
        ticks = [round(d / larmor_period) for d in delays]
        if min(ticks) < 0:
            raise ValueError("tau too small to fit pulses")
        delays = [t * larmor_period for t in ticks]
        # Two drive-polarity pairs: the sign flip halfway reverses the
        # first-order response to both pulse-angle error and the dephasing
        # accumulated inside the pulses, which uniform-polarity CP/UDD keep.
        polarities = (1, 1, -1, -1)
    else:
        polarities = (1, 1, 1, 1)

    segments: list[PulseSegment] = []
    for delay, polarity in zip(delays, polarities):
        segments.append(free_precession(delay))
        segments.extend(_composite_x_segments(math.pi, larmor_period, polarity))
    segments.append(free_precession(delays[4]))
    return PulseSequence(tuple(segments), label=label, larmor_period=larmor_period)


def free_evolution(duration: float, larmor_period: float = DEFAULT_LARMOR_PERIOD) -> PulseSequence:
    """Pulse-free baseline of the given duration."""
    return PulseSequence((free_precession(duration),), label="custom", larmor_period=larmor_period)


def _axis_rotation_segments(phi: float, theta: float, larmor_period: float) -> list[PulseSegment]:
    """R about the axis (cos phi, sin phi, 0) by theta, from three pulses.

    Euler form Z(phi) X(theta) Z(-phi): the X core is a Hadamard pulse pair
    around a driven Z rotation carrying the angle (so the systematic pulse
    error scales theta, as an error-compensation sequence assumes), and the
    axis phase comes from timed free precession on either side.
    """
    phi = phi % (2 * math.pi)
    omega = 2 * math.pi / larmor_period
    segments: list[PulseSegment] = []
    if phi > 0:
        segments.append(free_precession((2 * math.pi - phi) / omega))
    segments.append(hadamard_pulse(larmor_period))
    segments.append(z_axis_pulse(theta % (4 * math.pi), larmor_period))
    segments.append(hadamard_pulse(larmor_period))
    if phi > 0:
        segments.append(free_precession(phi / omega))
    return segments


def bb1_virtual_gate(
    theta: float,
    tau: float = 1e-9,
    larmor_period: float = DEFAULT_LARMOR_PERIOD,
) -> PulseSequence:
    """Error-compensated virtual R_X(theta): four decoupling blocks with the
    compensation rotations inserted between them.

    The target rotation is followed by R_phi(pi), R_3phi(2*pi), R_phi(pi)
    with phi = arccos(-theta / (4*pi)); the 2*pi rotation is realized as two
    pi rotations about the same axis so every inserted gate carries the
    angle-proportional error the compensation is designed to cancel.
    """
    if not 0 <= theta < 2 * math.pi:
        raise ValueError("theta must lie in [0, 2*pi)")
    phi = math.acos(-theta / (4 * math.pi))
    block = build_sequence("8H", tau, larmor_period).segments
    segments: list[PulseSegment] = []
    segments.extend(_axis_rotation_segments(0.0, theta, larmor_period))
    segments.extend(block)
    segments.extend(_axis_rotation_segments(phi, math.pi, larmor_period))
    segments.extend(block)
    segments.extend(_axis_rotation_segments(3 * phi, math.pi, larmor_period))
    segments.extend(_axis_rotation_segments(3 * phi, math.pi, larmor_period))
    segments.extend(block)
    segments.extend(_axis_rotation_segments(phi, math.pi, larmor_period))
    segments.extend(block)
    return PulseSequence(tuple(segments), label="BB1", larmor_period=larmor_period)


@dataclass(frozen=True)
class NoiseModel:
    """Quasi-static dephasing plus systematic pulse-angle error.

    ``t2_star`` sets the Gaussian detuning width sqrt(2)/T2* (None disables
    dephasing); ``pulse_error`` is the relative angle deviation applied to
    every pulse; ``t2`` optionally adds an intrinsic exponential dephasing
    envelope, off by default because it is negligible on nanosecond
    sequences.
    """

    t2_star: float | None = 2e-9
    pulse_error: float = 0.0
    samples: int = 1
    seed: int = 0
    t2: float | None = None

    def __post_init__(self) -> None:
        if self.t2_star is not None and self.t2_star <= 0:
            raise ValueError("t2_star must be positive (or None to disable dephasing)")
        if self.t2 is not None and self.t2 <= 0:
            raise ValueError("t2 must be positive (or None to disable)")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True)
class ProcessResult:
    """Mean process infidelity 1 - chi_II and the per-sample fidelities."""

    infidelity: float
    fidelities: np.ndarray = field(repr=False)


def detuning_samples(noise: NoiseModel) -> np.ndarray:
    """Per-shot detunings, each drawn from a stream keyed by (seed, index).

    Keying the stream per sample makes the results independent of how a run
    is partitioned across workers.
    """
    if noise.t2_star is None:
        return np.zeros(noise.samples)
    sigma = math.sqrt(2) / noise.t2_star
    return np.array(
        [np.random.default_rng((noise.seed, i)).normal(0.0, sigma) for i in range(noise.samples)]
    )


def process_infidelity(
    sequence: PulseSequence,
    noise: NoiseModel,
    target: np.ndarray | None = None,
) -> ProcessResult:
    """Monte-Carlo process infidelity of a sequence against a target unitary.

    Each sample composes the segment unitaries under one detuning draw; the
    per-sample fidelity is |tr(target^dag U)|^2 / 4 and the result is the
    mean of 1 - F.  Deterministic for a fixed seed and sample count.
    """
    target = IDENTITY2 if target is None else np.asarray(target, dtype=complex)
    if target.shape != (2, 2):
        raise ValueError("target must be a 2x2 unitary")
    detunings = detuning_samples(noise)
    u = np.broadcast_to(IDENTITY2, (noise.samples, 2, 2)).copy()
    for segment in sequence.segments:
        u = _segment_matrices(segment, sequence.larmor_period, detunings, noise.pulse_error) @ u
    overlap = np.einsum("sij,ij->s", u, target.conj())
    fidelities = np.abs(overlap) ** 2 / 4
    if noise.t2 is not None:
        gamma = math.exp(-sequence.duration / noise.t2)
        dephased = np.einsum("sij,ij->s", SIGMA_Z[None, :, :] @ u, target.conj())
        fidelities = 0.5 * (1 + gamma) * fidelities + 0.5 * (1 - gamma) * np.abs(dephased) ** 2 / 4
    fidelities = np.clip(fidelities, 0.0, 1.0)
    return ProcessResult(infidelity=float(np.mean(1.0 - fidelities)), fidelities=fidelities)


def approx_accuracy(u: np.ndarray, u_approx: np.ndarray) -> float:
    """Global-phase-insensitive distance sqrt((d - |tr(U^dag U_approx)|) / d)."""
    u = np.asarray(u, dtype=complex)
    u_approx = np.asarray(u_approx, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError("inputs must be square matrices")
    if u.shape != u_approx.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {u_approx.shape}")
    dim = u.shape[0]
    eye = np.eye(dim)
    for name, matrix in (("u", u), ("u_approx", u_approx)):
        if np.max(np.abs(matrix.conj().T @ matrix - eye)) > 1e-9:
            raise ValueError(f"{name} is not unitary within 1e-9")
    value = (dim - abs(np.trace(u.conj().T @ u_approx))) / dim
    return math.sqrt(max(value, 0.0))
