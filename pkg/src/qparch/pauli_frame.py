"""Classical Pauli-frame engine.

A frame stores one letter from {I, X, Y, Z} per qubit, the Pauli correction
that *would* have been applied.  Pauli gates fold into the frame instead of
running on hardware; implemented Clifford gates conjugate it; measurement
outcomes are reinterpreted against it; non-Clifford gates are transformed by
it before being handed to hardware.  Phases are discarded throughout: the
frame is a Pauli-group element modulo phase, and measurement reinterpretation
only needs (anti)commutation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

PAULI_LETTERS = ("I", "X", "Y", "Z")

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

SINGLE_QUBIT_GATES = ("H", "S", "S_dagger", "X", "Y", "Z")
MEASUREMENT_GATES = ("MX", "MZ")
CLIFFORD_GATE_KINDS = SINGLE_QUBIT_GATES + ("CNOT",) + MEASUREMENT_GATES

# Letter maps for conjugation U P U^dag with phase discarded.  Hardcoded and
# checked exhaustively against dense-matrix conjugation in the test suite.
_H_CONJ = {"I": "I", "X": "Z", "Y": "Y", "Z": "X"}
_S_CONJ = {"I": "I", "X": "Y", "Y": "X", "Z": "Z"}
_PAULI_CONJ = {"I": "I", "X": "X", "Y": "Y", "Z": "Z"}

_SINGLE_CONJ = {
    "H": _H_CONJ,
    "S": _S_CONJ,
    "S_dagger": _S_CONJ,
    "X": _PAULI_CONJ,
    "Y": _PAULI_CONJ,
    "Z": _PAULI_CONJ,
}

_CNOT_CONJ = {
    "II": "II", "IX": "IX", "IY": "ZY", "IZ": "ZZ",
    "XI": "XX", "XX": "XI", "XY": "YZ", "XZ": "YY",
    "YI": "YX", "YX": "YI", "YY": "XZ", "YZ": "XY",
    "ZI": "ZI", "ZX": "ZX", "ZY": "IY", "ZZ": "IZ",
}


def multiply_letters(a: str, b: str) -> str:
    """Product of two Pauli letters with the phase discarded."""
    if a not in PAULI_LETTERS or b not in PAULI_LETTERS:
        raise ValueError(f"invalid Pauli letter in product: {a!r} * {b!r}")
    if a == "I":
        return b
    if b == "I":
        return a
    if a == b:
        return "I"
    return ({"X", "Y", "Z"} - {a, b}).pop()


def letters_anticommute(a: str, b: str) -> bool:
    """True when two Pauli letters anticommute (both non-identity and distinct)."""
    if a not in PAULI_LETTERS or b not in PAULI_LETTERS:
        raise ValueError(f"invalid Pauli letter: {a!r} or {b!r}")
    return a != "I" and b != "I" and a != b


@dataclass(frozen=True)
class CliffordGate:
    kind: str
    targets: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in CLIFFORD_GATE_KINDS:
            raise ValueError(f"unknown Clifford gate kind: {self.kind!r}")
        object.__setattr__(self, "targets", tuple(self.targets))
        if self.kind == "CNOT":
            if len(self.targets) != 2:
                raise ValueError("CNOT takes exactly two targets")
            if self.targets[0] == self.targets[1]:
                raise ValueError("CNOT control and target must be distinct")
        elif len(self.targets) != 1:
            raise ValueError(f"{self.kind} takes exactly one target")


class PauliFrame:
    """Per-qubit Pauli letters tracked in classical memory.

    A frame is a value type: methods mutate the instance in place, and
    ``copy()`` produces an independent frame.  Nothing here touches a quantum
    state; the engine only rewrites bookkeeping.
    """

    def __init__(self, num_qubits: int = 0, letters: Sequence[str] | None = None):
        if letters is not None:
            letters = list(letters)
            for letter in letters:
                if letter not in PAULI_LETTERS:
                    raise ValueError(f"invalid Pauli letter: {letter!r}")
            if num_qubits and num_qubits != len(letters):
                raise ValueError("num_qubits does not match the letter array length")
            self.letters = letters
        else:
            if num_qubits < 0:
                raise ValueError("num_qubits must be non-negative")
            self.letters = ["I"] * num_qubits

    @property
    def num_qubits(self) -> int:
        return len(self.letters)

    def copy(self) -> "PauliFrame":
        return PauliFrame(letters=self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, PauliFrame) and self.letters == other.letters

    def __repr__(self) -> str:
        return f"PauliFrame({''.join(self.letters) or ''!r})"

    def _check_qubit(self, qubit: int) -> None:
        if not 0 <= qubit < self.num_qubits:
            raise IndexError(f"qubit {qubit} out of range for {self.num_qubits}-qubit frame")

    def fold_pauli(self, pauli: str, qubit: int) -> None:
        """Multiply a circuit Pauli gate into the frame instead of running it."""
        self._check_qubit(qubit)
        self.letters[qubit] = multiply_letters(self.letters[qubit], pauli)

    def conjugate(self, gate: CliffordGate) -> None:
        """Update the frame for an implemented Clifford gate: F -> U F U^dag."""
        if gate.kind in MEASUREMENT_GATES:
            raise ValueError(
                f"{gate.kind} updates the frame through interpret_measurement, not conjugate"
            )
        for qubit in gate.targets:
            self._check_qubit(qubit)
        if gate.kind == "CNOT":
            control, target = gate.targets
            pair = self.letters[control] + self.letters[target]
            conjugated = _CNOT_CONJ[pair]
            self.letters[control] = conjugated[0]
            self.letters[target] = conjugated[1]
        else:
            qubit = gate.targets[0]
            self.letters[qubit] = _SINGLE_CONJ[gate.kind][self.letters[qubit]]

    def interpret_measurement(self, basis: str, qubit: int, raw_outcome: int) -> int:
        """Reinterpret a raw +/-1 outcome against the frame.

        The outcome flips exactly when the frame letter anticommutes with the
        measured basis operator.  The measured qubit's letter is then reset to
        I, treating the projective measurement as establishing a fresh frame.
        """
        if basis not in ("X", "Y", "Z"):
            raise ValueError(f"measurement basis must be X, Y or Z, got {basis!r}")
        if raw_outcome not in (1, -1):
            raise ValueError(f"raw outcome must be +1 or -1, got {raw_outcome!r}")
        self._check_qubit(qubit)
        flips = letters_anticommute(self.letters[qubit], basis)
        self.letters[qubit] = "I"
        return -raw_outcome if flips else raw_outcome

    def transform_gate(self, matrix: np.ndarray, targets: Sequence[int]) -> np.ndarray:
        """Frame-transform a non-Clifford gate: return F U F^dag.

        ``matrix`` is the 2x2 or 4x4 unitary the circuit requests; the result
        is the gate hardware must actually implement under the current frame.
        """
        matrix = np.asarray(matrix, dtype=complex)
        targets = tuple(targets)
        for qubit in targets:
            self._check_qubit(qubit)
        expected = 2 ** len(targets)
        if matrix.shape != (expected, expected):
            raise ValueError(
                f"matrix shape {matrix.shape} does not match {len(targets)} target(s)"
            )
        frame_op = PAULI_MATRICES[self.letters[targets[0]]]
        for qubit in targets[1:]:
            frame_op = np.kron(frame_op, PAULI_MATRICES[self.letters[qubit]])
        return frame_op @ matrix @ frame_op.conj().T


@dataclass(frozen=True)
class PauliInstruction:
    pauli: str
    qubit: int


@dataclass(frozen=True)
class CliffordInstruction:
    gate: CliffordGate


@dataclass(frozen=True)
class MeasureInstruction:
    basis: str
    qubit: int
    raw: int | None = None


Instruction = Union[PauliInstruction, CliffordInstruction, MeasureInstruction]


class CircuitParseError(ValueError):
    """A malformed circuit line, carrying its 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def _parse_instruction(obj: dict, line_number: int) -> Instruction:
    if not isinstance(obj, dict) or "op" not in obj:
        raise CircuitParseError(line_number, "instruction must be an object with an 'op' field")
    op = obj["op"]
    try:
        if op == "pauli":
            pauli = obj["p"]
            if pauli not in ("X", "Y", "Z", "I"):
                raise ValueError(f"invalid Pauli {pauli!r}")
            return PauliInstruction(pauli=pauli, qubit=int(obj["q"]))
        if op == "clifford":
            targets = obj["q"]
            if isinstance(targets, int):
                targets = [targets]
            return CliffordInstruction(gate=CliffordGate(obj["g"], tuple(int(q) for q in targets)))
        if op == "measure":
            raw = obj.get("raw")
            if raw is not None:
                raw = int(raw)
                if raw not in (1, -1):
                    raise ValueError(f"raw outcome must be +1 or -1, got {raw}")
            return MeasureInstruction(basis=obj["basis"], qubit=int(obj["q"]), raw=raw)
    except CircuitParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise CircuitParseError(line_number, str(exc)) from exc
    raise CircuitParseError(line_number, f"unknown op {op!r}")


def parse_circuit(lines: Iterable[str]) -> list[Instruction]:
    """Parse JSON-lines circuit text, one instruction per non-blank line."""
    instructions = []
    for line_number, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CircuitParseError(line_number, f"invalid JSON ({exc.msg})") from exc
        instructions.append(_parse_instruction(obj, line_number))
    return instructions


def load_circuit(path: str | Path) -> list[Instruction]:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_circuit(handle)


def circuit_qubit_count(circuit: Sequence[Instruction]) -> int:
    """Smallest frame size that fits every instruction target."""
    highest = -1
    for instr in circuit:
        if isinstance(instr, PauliInstruction):
            highest = max(highest, instr.qubit)
        elif isinstance(instr, CliffordInstruction):
            highest = max(highest, *instr.gate.targets)
        else:
            highest = max(highest, instr.qubit)
    return highest + 1


def run_circuit(
    frame: PauliFrame,
    circuit: Sequence[Instruction],
    raw_outcomes: Sequence[int] | None = None,
) -> tuple[PauliFrame, list[int]]:
    """Execute a circuit against a frame, returning (final frame, outcomes).

    The input frame is not mutated.  Measurement instructions take their raw
    outcome from the instruction itself when present, otherwise from the
    ``raw_outcomes`` stream in order; the stream must be consumed exactly.
    """
    result = frame.copy()
    stream = list(raw_outcomes) if raw_outcomes is not None else []
    cursor = 0
    outcomes = []
    for instr in circuit:
        if isinstance(instr, PauliInstruction):
            result.fold_pauli(instr.pauli, instr.qubit)
        elif isinstance(instr, CliffordInstruction):
            result.conjugate(instr.gate)
        else:
            raw = instr.raw
            if raw is None:
                if cursor >= len(stream):
                    raise ValueError("measurement outcome stream underrun")
                raw = stream[cursor]
                cursor += 1
            outcomes.append(result.interpret_measurement(instr.basis, instr.qubit, raw))
    if cursor != len(stream):
        raise ValueError(
            f"measurement outcome stream overrun: {len(stream) - cursor} unused outcome(s)"
        )
    return result, outcomes
