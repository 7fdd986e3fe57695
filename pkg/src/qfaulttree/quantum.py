"""Dense statevector simulation with X, H, Ry and multi-controlled X gates.

Qubit ``i`` is bit ``i`` of the amplitude index, so qubit 0 is the least
significant bit and ``format(index, f"0{n}b")`` prints qubit ``n-1`` first.
Gates act in place on index pairs that differ in the target bit; no
``2**n x 2**n`` matrix is ever formed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

import numpy as np

MAX_QUBITS = 24


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class X:
    target: int

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class H:
    target: int

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class RY:
    target: int
    angle: float

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class MCX:
    """NOT on ``target`` conditioned on every control being ``|1>``.

    One control is CX, two is the Toffoli gate.
    """

    controls: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))
        if not self.controls:
            raise CircuitError("MCX needs at least one control")
        if len(set(self.controls)) != len(self.controls):
            raise CircuitError(f"repeated control qubit in {self.controls}")
        if self.target in self.controls:
            raise CircuitError(f"target q{self.target} is also a control")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + (self.target,)


GateOp = Union[X, H, RY, MCX]


class StateVector:
    """``2**n`` complex amplitudes of an ``n``-qubit pure state."""

    def __init__(self, amplitudes: np.ndarray):
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        dim = amplitudes.shape[0]
        n = dim.bit_length() - 1
        if amplitudes.ndim != 1 or dim != 1 << n or n < 1:
            raise CircuitError(f"amplitude array of shape {amplitudes.shape} is not 2**n long")
        self.amplitudes = amplitudes
        self.n_qubits = n

    def __len__(self) -> int:
        return self.amplitudes.shape[0]

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits})"

    def copy(self) -> StateVector:
        return StateVector(self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def probability_of_one(self, qubit: int) -> float:
        return probability_of_one(self, qubit)


@dataclass
class QuantumCircuit:
    n_qubits: int
    ops: list[GateOp] = field(default_factory=list)

    def __post_init__(self):
        for op in self.ops:
            self._check(op)

    def _check(self, op: GateOp) -> None:
        bad = [q for q in op.qubits if not 0 <= q < self.n_qubits]
        if bad:
            raise CircuitError(f"{op} addresses q{bad[0]} in a {self.n_qubits}-qubit circuit")

    def append(self, op: GateOp) -> None:
        self._check(op)
        self.ops.append(op)

    def extend(self, ops: Iterable[GateOp]) -> None:
        for op in ops:
            self.append(op)

    def count(self, kind: type) -> int:
        return sum(isinstance(op, kind) for op in self.ops)

    def dump(self) -> str:
        """Deterministic text listing, one op per line after a ``qubits`` header."""
        lines = [f"qubits {self.n_qubits}"]
        for op in self.ops:
            if isinstance(op, RY):
                lines.append(f"ry q{op.target} {op.angle:.17g}")
            elif isinstance(op, X):
                lines.append(f"x q{op.target}")
            elif isinstance(op, H):
                lines.append(f"h q{op.target}")
            else:
                controls = ",".join(f"q{c}" for c in op.controls)
                lines.append(f"mcx {controls} -> q{op.target}")
        return "\n".join(lines) + "\n"


def init_state(n: int) -> StateVector:
    if not 1 <= n <= MAX_QUBITS:
        raise CircuitError(f"qubit count {n} outside 1..{MAX_QUBITS}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(amps)


def _pairs(state: StateVector, target: int) -> tuple[np.ndarray, np.ndarray]:
    # view with axis 1 selecting the target bit
    view = state.amplitudes.reshape(-1, 2, 1 << target)
    return view[:, 0, :], view[:, 1, :]


def _check_indices(state: StateVector, op: GateOp) -> None:
    for q in op.qubits:
        if not 0 <= q < state.n_qubits:
            raise CircuitError(f"{op} addresses q{q} on a {state.n_qubits}-qubit state")


def apply(state: StateVector, op: GateOp) -> StateVector:
    """Apply ``op`` to ``state`` in place and return it."""
    _check_indices(state, op)
    if isinstance(op, MCX):
        idx = np.arange(len(state), dtype=np.int64)
        mask = sum(1 << c for c in op.controls)
        low = idx[((idx & mask) == mask) & ((idx >> op.target) & 1 == 0)]
        high = low | (1 << op.target)
        amps = state.amplitudes
        amps[low], amps[high] = amps[high], amps[low].copy()
        return state

    a, b = _pairs(state, op.target)
    if isinstance(op, X):
        tmp = a.copy()
        a[...] = b
        b[...] = tmp
    elif isinstance(op, H):
        s = 1.0 / math.sqrt(2.0)
        a[...], b[...] = (a + b) * s, (a - b) * s
    elif isinstance(op, RY):
        c, s = math.cos(op.angle / 2), math.sin(op.angle / 2)
        a[...], b[...] = a * c - b * s, a * s + b * c
    else:
        raise CircuitError(f"unsupported gate {op!r}")
    return state


def run(
    circuit: QuantumCircuit,
    observer: Callable[[int, GateOp, StateVector], None] | None = None,
) -> StateVector:
    """Execute ``circuit`` from ``|0...0>``.

    ``observer(step, op, state)`` is called after each op, if given.
    """
    state = init_state(circuit.n_qubits)
    for step, op in enumerate(circuit.ops):
        apply(state, op)
        if observer is not None:
            observer(step, op, state)
    return state


def probability_of_one(state: StateVector, qubit: int) -> float:
    """Probability of measuring ``qubit`` as 1."""
    if not 0 <= qubit < state.n_qubits:
        raise CircuitError(f"q{qubit} out of range for a {state.n_qubits}-qubit state")
    _, b = _pairs(state, qubit)
    return float(np.sum(np.abs(b) ** 2))


def product_state(qubits: Sequence[tuple[complex, complex]]) -> StateVector:
    """Tensor product of single-qubit states, ``qubits[i]`` being qubit ``i``."""
    amps = np.ones(1, dtype=np.complex128)
    for alpha, beta in qubits:
        # higher qubits are more significant, so they go on the left
        amps = np.kron(np.array([alpha, beta], dtype=np.complex128), amps)
    return StateVector(amps)
