"""Lower a fault tree to a quantum circuit.

Every basic event gets a qubit whose ``|1>`` amplitude encodes its failure
probability through an Ry rotation. Every gate gets an output qubit that
starts in ``|0>`` and is written by a multi-controlled X over its children's
qubits. OR is built from AND by De Morgan: invert the inputs, AND them,
invert the output, then undo the input inversion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .fault_tree import FaultTree, FaultTreeError, GateType, validate
from .quantum import MCX, RY, CircuitError, GateOp, QuantumCircuit, X


@dataclass(frozen=True)
class QubitMap:
    event_qubits: dict[str, int]
    gate_qubits: dict[str, int]
    top_qubit: int
    top_name: str

    @property
    def n_qubits(self) -> int:
        return len(self.event_qubits) + len(self.gate_qubits)

    def names(self) -> list[str]:
        """Node name carried by each qubit, indexed by qubit."""
        out = [""] * self.n_qubits
        for table in (self.event_qubits, self.gate_qubits):
            for name, q in table.items():
                out[q] = name
        return out

    def qubit(self, name: str) -> int:
        if name in self.event_qubits:
            return self.event_qubits[name]
        return self.gate_qubits[name]

    def reduced_layout(self) -> list[int]:
        """TOP qubit first, then basic events in declaration order."""
        events = [q for q in self.event_qubits.values() if q != self.top_qubit]
        return [self.top_qubit] + events

    def full_layout(self) -> list[int]:
        """Every qubit, highest index first (the raw measurement order)."""
        return list(range(self.n_qubits - 1, -1, -1))


@dataclass(frozen=True)
class CompiledCircuit:
    circuit: QuantumCircuit
    qubit_map: QubitMap


def angle_for_probability(p: float) -> float:
    """Ry angle whose rotation of ``|0>`` is measured as 1 with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p!r} outside [0, 1]")
    if p == 1.0:
        return math.pi
    return 2.0 * math.atan(math.sqrt(p / (1.0 - p)))


def _check(inputs: Sequence[int], output: int) -> list[int]:
    inputs = list(inputs)
    if not inputs:
        raise CircuitError("a gate needs at least one input")
    if output in inputs:
        raise CircuitError(f"output q{output} overlaps the inputs {inputs}")
    return inputs


def emit_and(inputs: Sequence[int], output: int) -> list[GateOp]:
    inputs = _check(inputs, output)
    return [MCX(tuple(inputs), output)]


def emit_or(inputs: Sequence[int], output: int) -> list[GateOp]:
    inputs = _check(inputs, output)
    flip = [X(q) for q in inputs]
    return flip + [MCX(tuple(inputs), output), X(output)] + flip


def emit_nand(inputs: Sequence[int], output: int) -> list[GateOp]:
    return emit_and(inputs, output) + [X(output)]


def emit_nor(inputs: Sequence[int], output: int) -> list[GateOp]:
    return emit_or(inputs, output) + [X(output)]


EMITTERS = {
    GateType.AND: emit_and,
    GateType.OR: emit_or,
    GateType.NAND: emit_nand,
    GateType.NOR: emit_nor,
}


def expected_op_count(tree: FaultTree) -> int:
    """Number of ops ``compile_tree`` emits, from gate types and fan-ins alone."""
    extra = {GateType.AND: lambda k: 0, GateType.NAND: lambda k: 1,
             GateType.OR: lambda k: 2 * k + 1, GateType.NOR: lambda k: 2 * k + 2}
    return tree.n_events + sum(
        1 + extra[g.gate_type](len(set(g.children))) for g in tree.gates
    )


def compile_tree(tree: FaultTree) -> CompiledCircuit:
    problems = validate(tree)
    if problems:
        raise FaultTreeError(problems)

    events = tree.basic_events
    event_qubits = {e.name: i for i, e in enumerate(events)}
    order = tree.gate_order()
    gate_qubits = {g.name: len(events) + i for i, g in enumerate(order)}
    qubit_of = {**event_qubits, **gate_qubits}

    circuit = QuantumCircuit(len(events) + len(order))
    for e in events:
        circuit.append(RY(event_qubits[e.name], angle_for_probability(e.failure_probability)))
    for g in order:
        # AND/OR are idempotent, so a child listed twice is one control
        inputs = list(dict.fromkeys(qubit_of[c] for c in g.children))
        circuit.extend(EMITTERS[g.gate_type](inputs, gate_qubits[g.name]))

    qmap = QubitMap(event_qubits, gate_qubits, qubit_of[tree.top], tree.top)
    return CompiledCircuit(circuit, qmap)
