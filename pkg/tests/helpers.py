import random

from qfaulttree import BasicEvent, FaultTree, GateNode, GateType, dp_system_path, load

DP_PATH = dp_system_path()
GATE_TYPES = list(GateType)


def dp_tree() -> FaultTree:
    return load(DP_PATH)


def random_tree(rng: random.Random, max_events: int = 6, max_depth: int = 3,
                shared: bool = False) -> FaultTree:
    """Random valid fault tree with at most ``max_events`` basic events.

    With ``shared=True`` a few gates get an extra child drawn from nodes
    created before them, which makes events or whole subtrees reachable
    along several paths without creating cycles.
    """
    n = rng.randint(1, max_events)
    events = [BasicEvent(f"e{i}", rng.choice([0.0, 1.0, rng.random(), rng.random(), rng.random()]))
              for i in range(n)]
    created: list = []  # post-order, children before parents
    created.extend(events)

    def build(names: list[str], depth: int) -> str:
        if len(names) == 1 and (depth == 0 or rng.random() < 0.4):
            return names[0]
        if depth <= 1:
            children = list(names)
        else:
            names = names[:]
            rng.shuffle(names)
            k = rng.randint(1, min(3, len(names)))
            cuts = sorted(rng.sample(range(1, len(names)), k - 1)) if k > 1 else []
            groups = [names[a:b] for a, b in zip([0] + cuts, cuts + [len(names)])]
            children = [build(g, depth - 1) for g in groups]
        gate = GateNode(f"g{len(created) - n}", rng.choice(GATE_TYPES), tuple(children))
        created.append(gate)
        return gate.name

    top = build([e.name for e in events], rng.randint(0, max_depth))

    if shared:
        for i, node in enumerate(created):
            if isinstance(node, GateNode) and rng.random() < 0.5:
                extra = rng.choice(created[:i])
                created[i] = GateNode(node.name, node.gate_type, node.children + (extra.name,))

    order = created[:]
    rng.shuffle(order)
    return FaultTree({node.name: node for node in order}, top)
