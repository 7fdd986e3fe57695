"""Fault tree model, line-oriented text format, and structural validation.

The text format holds one declaration per line::

    basic <name> p=<float>
    gate <name> <AND|OR|NAND|NOR> <child> [<child> ...]
    top <name>

``#`` starts a comment, blank lines are ignored and children may be
referenced before they are declared.
"""
from __future__ import annotations

import heapq
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, Union

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class GateType(str, Enum):
    AND = "AND"
    OR = "OR"
    NAND = "NAND"
    NOR = "NOR"


@dataclass(frozen=True)
class BasicEvent:
    name: str
    failure_probability: float


@dataclass(frozen=True)
class GateNode:
    name: str
    gate_type: GateType
    children: tuple[str, ...]


Node = Union[BasicEvent, GateNode]


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    line: int | None = None

    def __str__(self) -> str:
        if self.line is None:
            return f"{self.kind}: {self.message}"
        return f"line {self.line}: {self.kind}: {self.message}"


class FaultTreeError(ValueError):
    """Raised when a fault tree cannot be parsed or fails validation."""

    def __init__(self, diagnostics: Iterable[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class FaultTree:
    """A named DAG of basic events and gates with one designated TOP node.

    ``nodes`` preserves declaration order, which the compiler relies on for
    qubit numbering.
    """

    nodes: Mapping[str, Node]
    top: str
    # source line of each declaration, only populated by parse()
    lines: Mapping[str, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", MappingProxyType(dict(self.nodes)))
        object.__setattr__(self, "lines", MappingProxyType(dict(self.lines)))

    @property
    def basic_events(self) -> list[BasicEvent]:
        return [n for n in self.nodes.values() if isinstance(n, BasicEvent)]

    @property
    def gates(self) -> list[GateNode]:
        return [n for n in self.nodes.values() if isinstance(n, GateNode)]

    @property
    def n_events(self) -> int:
        return len(self.basic_events)

    @property
    def n_gates(self) -> int:
        return len(self.gates)

    def __getitem__(self, name: str) -> Node:
        return self.nodes[name]

    def gate_order(self) -> list[GateNode]:
        """Gates ordered children-before-parent.

        Among gates whose children are all placed, the one declared first
        goes next, so the order is fully determined by the input.
        """
        gates = self.gates
        rank = {g.name: i for i, g in enumerate(gates)}
        pending = {g.name: {c for c in g.children if c in rank} for g in gates}
        parents: dict[str, set[str]] = {g.name: set() for g in gates}
        for g in gates:
            for c in pending[g.name]:
                parents[c].add(g.name)
        ready = [rank[name] for name, deps in pending.items() if not deps]
        heapq.heapify(ready)
        order = []
        while ready:
            gate = gates[heapq.heappop(ready)]
            order.append(gate)
            for parent in parents[gate.name]:
                pending[parent].discard(gate.name)
                if not pending[parent]:
                    heapq.heappush(ready, rank[parent])
        if len(order) != len(gates):
            raise FaultTreeError([Diagnostic("cycle", "gates do not admit a topological order")])
        return order


def _line_of(tree: FaultTree, name: str) -> int | None:
    return tree.lines.get(name)


def _find_cycle(tree: FaultTree) -> list[str] | None:
    white, grey, black = 0, 1, 2
    colour = {name: white for name in tree.nodes}
    stack: list[str] = []

    def visit(name: str) -> list[str] | None:
        colour[name] = grey
        stack.append(name)
        node = tree.nodes[name]
        if isinstance(node, GateNode):
            for child in node.children:
                if child not in tree.nodes:
                    continue
                if colour[child] == grey:
                    return stack[stack.index(child):] + [child]
                if colour[child] == white:
                    found = visit(child)
                    if found:
                        return found
        stack.pop()
        colour[name] = black
        return None

    for name in tree.nodes:
        if colour[name] == white:
            found = visit(name)
            if found:
                return found
    return None


def validate(tree: FaultTree) -> list[Diagnostic]:
    """Check every structural invariant; return one diagnostic per violation."""
    diags: list[Diagnostic] = []
    for key, node in tree.nodes.items():
        line = _line_of(tree, key)
        if key != node.name:
            diags.append(Diagnostic("name", f"node stored under {key!r} is named {node.name!r}", line))
        if not IDENTIFIER.match(node.name):
            diags.append(Diagnostic("name", f"invalid identifier {node.name!r}", line))
        if isinstance(node, BasicEvent):
            p = node.failure_probability
            if not (isinstance(p, (int, float)) and math.isfinite(p) and 0.0 <= p <= 1.0):
                diags.append(Diagnostic("range", f"probability of {node.name!r} is {p!r}, outside [0, 1]", line))
        else:
            if not node.children:
                diags.append(Diagnostic("arity", f"gate {node.name!r} has no children", line))
            if not isinstance(node.gate_type, GateType):
                diags.append(Diagnostic("type", f"gate {node.name!r} has unknown type {node.gate_type!r}", line))
            for child in node.children:
                if child not in tree.nodes:
                    diags.append(Diagnostic("unresolved", f"gate {node.name!r} references undeclared node {child!r}", line))

    if tree.top not in tree.nodes:
        diags.append(Diagnostic("top", f"top node {tree.top!r} is not declared", tree.lines.get("<top>")))
        return diags

    cycle = _find_cycle(tree)
    if cycle:
        diags.append(Diagnostic("cycle", " -> ".join(cycle), _line_of(tree, cycle[0])))

    reachable: set[str] = set()
    frontier = [tree.top]
    while frontier:
        name = frontier.pop()
        if name in reachable or name not in tree.nodes:
            continue
        reachable.add(name)
        node = tree.nodes[name]
        if isinstance(node, GateNode):
            frontier.extend(node.children)
    for name in tree.nodes:
        if name not in reachable:
            diags.append(Diagnostic("unreachable", f"node {name!r} is not reachable from top {tree.top!r}", _line_of(tree, name)))

    if tree.n_events < 1:
        diags.append(Diagnostic("empty", "tree has no basic events"))
    return diags


def parse(text: str) -> FaultTree:
    """Parse fault tree text, raising :class:`FaultTreeError` on any problem."""
    nodes: dict[str, Node] = {}
    lines: dict[str, int] = {}
    tops: list[tuple[str, int]] = []
    diags: list[Diagnostic] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]
        if keyword == "basic":
            if len(args) != 2 or not args[1].startswith("p="):
                diags.append(Diagnostic("syntax", "expected 'basic <name> p=<float>'", lineno))
                continue
            name, literal = args[0], args[1][2:]
            try:
                p = float(literal)
            except ValueError:
                diags.append(Diagnostic("syntax", f"bad probability literal {literal!r}", lineno))
                continue
            node: Node = BasicEvent(name, p)
        elif keyword == "gate":
            if len(args) < 3:
                diags.append(Diagnostic("syntax", "expected 'gate <name> <AND|OR|NAND|NOR> <child> ...'", lineno))
                continue
            name, kind, children = args[0], args[1], args[2:]
            try:
                gate_type = GateType(kind)
            except ValueError:
                diags.append(Diagnostic("syntax", f"unknown gate type {kind!r}", lineno))
                continue
            bad = [c for c in children if not IDENTIFIER.match(c)]
            if bad:
                diags.append(Diagnostic("syntax", f"invalid identifier {bad[0]!r}", lineno))
                continue
            node = GateNode(name, gate_type, tuple(children))
        elif keyword == "top":
            if len(args) != 1:
                diags.append(Diagnostic("syntax", "expected 'top <name>'", lineno))
            else:
                tops.append((args[0], lineno))
            continue
        else:
            diags.append(Diagnostic("syntax", f"unknown keyword {keyword!r}", lineno))
            continue

        if not IDENTIFIER.match(name):
            diags.append(Diagnostic("syntax", f"invalid identifier {name!r}", lineno))
        elif name in nodes:
            diags.append(Diagnostic("duplicate", f"{name!r} already declared on line {lines[name]}", lineno))
        else:
            nodes[name] = node
            lines[name] = lineno

    if not tops:
        diags.append(Diagnostic("top", "missing 'top' declaration"))
    elif len(tops) > 1:
        diags.append(Diagnostic("top", f"'top' declared {len(tops)} times", tops[1][1]))
    if diags:
        raise FaultTreeError(diags)

    top, top_line = tops[0]
    lines["<top>"] = top_line
    tree = FaultTree(nodes, top, lines)
    problems = validate(tree)
    if problems:
        raise FaultTreeError(problems)
    return tree


def load(path) -> FaultTree:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dumps(tree: FaultTree) -> str:
    """Render a tree back to the text format, in declaration order."""
    out = []
    for node in tree.nodes.values():
        if isinstance(node, BasicEvent):
            out.append(f"basic {node.name} p={node.failure_probability!r}")
        else:
            out.append(f"gate {node.name} {node.gate_type.value} {' '.join(node.children)}")
    out.append(f"top {tree.top}")
    return "\n".join(out) + "\n"


def build(nodes: Iterable[Node], top: str) -> FaultTree:
    """Assemble a tree programmatically; raises on validation failure."""
    table: dict[str, Node] = {}
    problems = []
    for node in nodes:
        if node.name in table:
            problems.append(Diagnostic("duplicate", f"{node.name!r} declared twice"))
        table[node.name] = node
    tree = FaultTree(table, top)
    problems += validate(tree)
    if problems:
        raise FaultTreeError(problems)
    return tree
