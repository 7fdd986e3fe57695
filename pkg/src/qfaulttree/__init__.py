"""Fault tree analysis by quantum circuit simulation."""
from importlib import resources
from pathlib import Path

from .analytic import SharedEventError, brute_force_probability, evaluate, gate_probability
from .compiler import (
    CompiledCircuit,
    QubitMap,
    angle_for_probability,
    compile_tree,
    emit_and,
    emit_nand,
    emit_nor,
    emit_or,
)
from .fault_tree import (
    BasicEvent,
    Diagnostic,
    FaultTree,
    FaultTreeError,
    GateNode,
    GateType,
    dumps,
    load,
    parse,
    validate,
)
from .quantum import (
    H,
    MCX,
    RY,
    X,
    CircuitError,
    QuantumCircuit,
    StateVector,
    apply,
    init_state,
    probability_of_one,
    run,
)
from .sampling import (
    ScenarioReport,
    ShotHistogram,
    decode,
    failure_scenarios,
    project,
    sample,
    top_failure_estimate,
)


def dp_system_path() -> Path:
    """Path of the bundled dynamic positioning control system tree."""
    return Path(str(resources.files(__name__) / "data" / "dp_system.ft"))
