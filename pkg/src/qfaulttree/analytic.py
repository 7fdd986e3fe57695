"""Classical fault tree evaluation.

``evaluate`` propagates probabilities bottom-up with the independence
formulas and therefore refuses trees in which a basic event can be reached
along more than one path. ``brute_force_probability`` enumerates every
assignment of the basic events and is exact for any DAG.
"""
from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

import numpy as np

from .fault_tree import FaultTree, FaultTreeError, GateType, validate

MAX_ENUMERATED_EVENTS = 20


class SharedEventError(ValueError):
    def __init__(self, event: str, paths: int):
        self.event = event
        self.paths = paths
        super().__init__(
            f"basic event {event!r} reaches the top along {paths} paths; "
            "independence formulas do not apply, use brute_force_probability"
        )


def gate_probability(gate_type: GateType, child_probs: Sequence[float]) -> float:
    """Failure probability of a gate over independent children."""
    probs = list(child_probs)
    if not probs:
        raise ValueError("gate needs at least one child probability")
    for p in probs:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability {p!r} outside [0, 1]")
    gate_type = GateType(gate_type)
    if gate_type is GateType.AND:
        return math.prod(probs)
    if gate_type is GateType.NAND:
        return 1.0 - math.prod(probs)
    survive = math.prod(1.0 - p for p in probs)
    return survive if gate_type is GateType.NOR else 1.0 - survive


def _path_counts(tree: FaultTree) -> Counter:
    counts: Counter = Counter({tree.top: 1})
    for gate in reversed(tree.gate_order()):
        for child in gate.children:
            counts[child] += counts[gate.name]
    return counts


def evaluate(tree: FaultTree) -> dict[str, float]:
    """Failure probability of every node, computed from the leaves up."""
    problems = validate(tree)
    if problems:
        raise FaultTreeError(problems)
    counts = _path_counts(tree)
    for event in tree.basic_events:
        if counts[event.name] > 1:
            raise SharedEventError(event.name, counts[event.name])

    probs = {e.name: float(e.failure_probability) for e in tree.basic_events}
    for gate in tree.gate_order():
        probs[gate.name] = gate_probability(gate.gate_type, [probs[c] for c in gate.children])
    return {name: probs[name] for name in tree.nodes}


def truth_table(tree: FaultTree, assignments: np.ndarray) -> np.ndarray:
    """Boolean value of the top node for each row of ``assignments``.

    ``assignments`` has one column per basic event, in declaration order.
    """
    values = {e.name: assignments[:, i].astype(bool) for i, e in enumerate(tree.basic_events)}
    for gate in tree.gate_order():
        kids = np.stack([values[c] for c in gate.children])
        if gate.gate_type in (GateType.AND, GateType.NAND):
            out = kids.all(axis=0)
        else:
            out = kids.any(axis=0)
        if gate.gate_type in (GateType.NAND, GateType.NOR):
            out = ~out
        values[gate.name] = out
    return values[tree.top]


def brute_force_probability(tree: FaultTree) -> float:
    """Exact top failure probability by summing over all ``2**N`` event states."""
    problems = validate(tree)
    if problems:
        raise FaultTreeError(problems)
    events = tree.basic_events
    n = len(events)
    if n > MAX_ENUMERATED_EVENTS:
        raise ValueError(f"{n} basic events exceeds the enumeration limit of {MAX_ENUMERATED_EVENTS}")

    index = np.arange(1 << n, dtype=np.int64)
    bits = (index[:, None] >> np.arange(n)) & 1
    p = np.array([e.failure_probability for e in events], dtype=float)
    weights = np.where(bits == 1, p, 1.0 - p).prod(axis=1)
    failed = truth_table(tree, bits)
    # ascending assignment order, fixed for reproducibility
    return float(math.fsum(weights[failed]))
