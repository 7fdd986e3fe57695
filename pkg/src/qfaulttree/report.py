"""Analysis pipeline and report rendering used by the command line."""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Optional

from . import analytic, quantum
from .compiler import compile_tree
from .fault_tree import FaultTree
from .sampling import (
    ScenarioReport,
    failure_scenarios,
    sample,
    scenarios_to_csv,
    scenarios_to_records,
    scenarios_to_text,
    top_failure_estimate,
)

MODES = ("sample", "exact", "analytic", "brute", "all")
AGREEMENT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class RunConfig:
    mode: str = "all"
    shots: int = 1_000_000
    seed: int = 0
    workers: int = 1
    layout: str = "reduced"
    top_n: int = 20


@dataclass
class AnalysisReport:
    top: str
    n_events: int
    n_gates: int
    config: RunConfig
    node_probabilities: Optional[dict[str, float]] = None
    analytic_notice: Optional[str] = None
    brute_force: Optional[float] = None
    exact: Optional[float] = None
    sampled: Optional[float] = None
    std_error: Optional[float] = None
    failed_shots: Optional[int] = None
    layout: Optional[list[int]] = None
    layout_names: Optional[list[str]] = None
    scenarios: list[ScenarioReport] = field(default_factory=list)
    n_scenarios: int = 0
    wall_clock_seconds: float = 0.0

    @property
    def analytic_top(self) -> Optional[float]:
        if self.node_probabilities is None:
            return None
        return self.node_probabilities[self.top]

    def max_disagreement(self) -> Optional[float]:
        values = [v for v in (self.analytic_top, self.brute_force, self.exact) if v is not None]
        if len(values) < 2:
            return None
        return max(values) - min(values)

    def to_dict(self) -> dict:
        return {
            "tree": {"top": self.top, "basic_events": self.n_events, "gates": self.n_gates,
                     "qubits": self.n_events + self.n_gates},
            "analytic": {"node_probabilities": self.node_probabilities, "notice": self.analytic_notice},
            "brute_force_top": self.brute_force,
            "exact_quantum_top": self.exact,
            "sampled": None if self.sampled is None else {
                "estimate": self.sampled, "std_error": self.std_error,
                "failed_shots": self.failed_shots,
            },
            "max_disagreement": self.max_disagreement(),
            "scenarios": {
                "layout": self.layout, "layout_names": self.layout_names,
                "distinct_failure_scenarios": self.n_scenarios,
                "top": scenarios_to_records(self.scenarios),
            },
            "metadata": {
                "mode": self.config.mode, "shots": self.config.shots, "seed": self.config.seed,
                "workers": self.config.workers, "layout": self.config.layout,
                "wall_clock_seconds": self.wall_clock_seconds,
            },
        }

    def to_json(self, wall_clock: bool = True) -> str:
        data = self.to_dict()
        if not wall_clock:
            del data["metadata"]["wall_clock_seconds"]
        return json.dumps(data, indent=2) + "\n"

    def to_csv(self) -> str:
        return scenarios_to_csv(self.scenarios)

    def to_text(self) -> str:
        out = [f"fault tree: top={self.top}  basic events N={self.n_events}  gates M={self.n_gates}"]
        if self.node_probabilities is not None:
            out.append("")
            out.append("analytic node probabilities:")
            width = max(len(name) for name in self.node_probabilities)
            for name, p in self.node_probabilities.items():
                out.append(f"  {name:<{width}}  {p:.10g}")
        elif self.analytic_notice:
            out.append(f"analytic: {self.analytic_notice}")
        out.append("")
        if self.analytic_top is not None:
            out.append(f"analytic TOP        {self.analytic_top:.10g}")
        if self.brute_force is not None:
            out.append(f"brute-force TOP     {self.brute_force:.10g}")
        if self.exact is not None:
            out.append(f"exact quantum TOP   {self.exact:.10g}")
        if self.sampled is not None:
            out.append(
                f"sampled TOP         {self.sampled:.6f} +/- {self.std_error:.2e} "
                f"({self.failed_shots}/{self.config.shots} shots, seed {self.config.seed})"
            )
        if self.layout_names is not None:
            out.append("")
            out.append(f"failure scenarios ({self.n_scenarios} distinct), bit order: {' '.join(self.layout_names)}")
            out.append(scenarios_to_text(self.scenarios).rstrip("\n"))
        out.append("")
        out.append(f"wall clock: {self.wall_clock_seconds:.3f} s")
        return "\n".join(out) + "\n"


def analyze(tree: FaultTree, config: RunConfig = RunConfig()) -> AnalysisReport:
    if config.mode not in MODES:
        raise ValueError(f"unknown mode {config.mode!r}")
    start = time.perf_counter()
    report = AnalysisReport(tree.top, tree.n_events, tree.n_gates, config)
    mode = config.mode

    if mode in ("analytic", "all"):
        try:
            report.node_probabilities = analytic.evaluate(tree)
        except analytic.SharedEventError as exc:
            report.analytic_notice = str(exc)
    if mode == "brute" or (mode == "all" and tree.n_events <= analytic.MAX_ENUMERATED_EVENTS):
        report.brute_force = analytic.brute_force_probability(tree)

    if mode in ("exact", "sample", "all"):
        compiled = compile_tree(tree)
        qmap = compiled.qubit_map
        state = quantum.run(compiled.circuit)
        if mode != "sample":
            report.exact = quantum.probability_of_one(state, qmap.top_qubit)
        if mode != "exact":
            hist = sample(state, config.shots, config.seed, config.workers)
            p_hat = top_failure_estimate(hist, qmap.top_qubit)
            report.sampled = p_hat
            report.failed_shots = round(p_hat * config.shots)
            report.std_error = math.sqrt(p_hat * (1 - p_hat) / config.shots) if config.shots else 0.0
            layout = qmap.full_layout() if config.layout == "full" else qmap.reduced_layout()
            names = qmap.names()
            scenarios = failure_scenarios(hist, qmap, layout)
            report.layout = layout
            report.layout_names = [names[q] for q in layout]
            report.n_scenarios = len(scenarios)
            report.scenarios = scenarios[: config.top_n] if config.top_n > 0 else scenarios

    report.wall_clock_seconds = time.perf_counter() - start
    return report
