"""Shot sampling from a final statevector and scenario bookkeeping.

Measurement happens once, at the end of the circuit, so each shot is an
independent categorical draw of a basis state with probability
``|amplitude|**2``. Draws use inverse-CDF lookup (``np.searchsorted``) on
uniforms from NumPy's PCG64 generator. With ``workers`` sub-streams spawned
from ``SeedSequence(seed)``, results are a pure function of
``(state, shots, seed, workers)``.

Bitstring keys are '0'/'1' strings whose leftmost character is the first
qubit of the histogram's ``layout``. Full-width histograms use the layout
``[n-1, ..., 0]``, i.e. ``format(index, f"0{n}b")``.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .compiler import QubitMap
from .quantum import StateVector

NORM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ShotHistogram:
    counts: dict[str, int]
    total_shots: int
    seed: int
    layout: tuple[int, ...]
    workers: int = 1

    def __post_init__(self):
        if sum(self.counts.values()) != self.total_shots:
            raise ValueError("histogram counts do not add up to total_shots")

    def frequency(self, bitstring: str) -> float:
        return self.counts.get(bitstring, 0) / self.total_shots if self.total_shots else 0.0


@dataclass(frozen=True)
class ScenarioReport:
    bitstring: str
    count: int
    frequency: float
    failed_components: list[str] = field(default_factory=list)


def _split(shots: int, workers: int) -> list[int]:
    base, extra = divmod(shots, workers)
    return [base + (i < extra) for i in range(workers)]


def sample(state: StateVector, shots: int, seed: int, workers: int = 1) -> ShotHistogram:
    """Draw ``shots`` full-width measurement outcomes from ``state``."""
    if shots < 0:
        raise ValueError("shots must be non-negative")
    if workers < 1:
        raise ValueError("workers must be positive")
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    norm = state.norm()
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise ValueError(f"state is not normalized (norm {norm!r})")

    n, dim = state.n_qubits, len(state)
    layout = tuple(range(n - 1, -1, -1))
    if shots == 0:
        return ShotHistogram({}, 0, seed, layout, workers)

    cdf = np.cumsum(state.probabilities())
    cdf /= cdf[-1]
    streams = np.random.SeedSequence(seed).spawn(workers)

    def draw(args) -> np.ndarray:
        stream, k = args
        rng = np.random.Generator(np.random.PCG64(stream))
        idx = np.searchsorted(cdf, rng.random(k), side="right")
        return np.bincount(np.minimum(idx, dim - 1), minlength=dim)

    jobs = list(zip(streams, _split(shots, workers)))
    if workers == 1:
        tallies = [draw(jobs[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tallies = list(pool.map(draw, jobs))
    total = np.sum(tallies, axis=0)

    counts = {format(int(i), f"0{n}b"): int(total[i]) for i in np.flatnonzero(total)}
    return ShotHistogram(counts, shots, seed, layout, workers)


def _positions(hist: ShotHistogram, layout: Sequence[int]) -> list[int]:
    pos = []
    for q in layout:
        try:
            pos.append(hist.layout.index(q))
        except ValueError:
            raise ValueError(f"qubit {q} is not part of the histogram layout {hist.layout}") from None
    return pos


def top_failure_estimate(hist: ShotHistogram, top_qubit: int) -> float:
    """Fraction of shots in which ``top_qubit`` was measured as 1."""
    if hist.total_shots == 0:
        return 0.0
    (pos,) = _positions(hist, [top_qubit])
    failed = sum(c for b, c in hist.counts.items() if b[pos] == "1")
    return failed / hist.total_shots


def project(hist: ShotHistogram, qubit_map: QubitMap, layout: Sequence[int]) -> ShotHistogram:
    """Keep only the qubits in ``layout`` (in that order), merging counts."""
    for q in layout:
        if not 0 <= q < qubit_map.n_qubits:
            raise ValueError(f"qubit {q} out of range for {qubit_map.n_qubits} qubits")
    pos = _positions(hist, layout)
    counts: dict[str, int] = {}
    for bits, c in hist.counts.items():
        key = "".join(bits[p] for p in pos)
        counts[key] = counts.get(key, 0) + c
    return ShotHistogram(counts, hist.total_shots, hist.seed, tuple(layout), hist.workers)


def decode(bitstring: str, qubit_map: QubitMap, layout: Sequence[int]) -> list[str]:
    """Names of the nodes whose layout position reads '1'."""
    if len(bitstring) != len(layout):
        raise ValueError(f"bitstring of length {len(bitstring)} does not match layout of length {len(layout)}")
    names = qubit_map.names()
    return [names[q] for bit, q in zip(bitstring, layout) if bit == "1"]


def failure_scenarios(
    hist: ShotHistogram, qubit_map: QubitMap, layout: Sequence[int] | None = None
) -> list[ScenarioReport]:
    """Scenarios with the TOP event failed, most frequent first."""
    if layout is None:
        layout = qubit_map.reduced_layout()
    layout = list(layout)
    if qubit_map.top_qubit not in layout:
        raise ValueError("layout must include the top qubit")
    top_pos = layout.index(qubit_map.top_qubit)
    reduced = project(hist, qubit_map, layout)
    rows = sorted(
        ((b, c) for b, c in reduced.counts.items() if b[top_pos] == "1"),
        key=lambda item: (-item[1], item[0]),
    )
    return [
        ScenarioReport(b, c, c / hist.total_shots, decode(b, qubit_map, layout))
        for b, c in rows
    ]


CSV_HEADER = ["bitstring", "count", "frequency", "failed_components"]


def scenarios_to_csv(scenarios: Sequence[ScenarioReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for s in scenarios:
        writer.writerow([s.bitstring, s.count, repr(s.frequency), ";".join(s.failed_components)])
    return buf.getvalue()


def scenarios_to_records(scenarios: Sequence[ScenarioReport]) -> list[dict]:
    return [
        {"bitstring": s.bitstring, "count": s.count, "frequency": s.frequency,
         "failed_components": list(s.failed_components)}
        for s in scenarios
    ]


def scenarios_to_text(scenarios: Sequence[ScenarioReport]) -> str:
    if not scenarios:
        return "(no failure scenarios observed)\n"
    width = max(len("bitstring"), max(len(s.bitstring) for s in scenarios))
    lines = [f"{'bitstring':<{width}}  {'count':>9}  {'frequency':>11}  failed components"]
    for s in scenarios:
        lines.append(
            f"{s.bitstring:<{width}}  {s.count:>9d}  {s.frequency:>11.4e}  {', '.join(s.failed_components)}"
        )
    return "\n".join(lines) + "\n"
