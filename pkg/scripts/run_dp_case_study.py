"""Reproduce the dynamic positioning case study end to end.

    python scripts/run_dp_case_study.py --shots 1000000 --seed 0
"""
import argparse
import time

from qfaulttree import (
    brute_force_probability,
    compile_tree,
    dp_system_path,
    evaluate,
    failure_scenarios,
    load,
    probability_of_one,
    run,
    sample,
    top_failure_estimate,
)
from qfaulttree.quantum import MCX, RY, X
from qfaulttree.sampling import scenarios_to_text


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--shots", type=int, default=1_000_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--top-n", type=int, default=12)
    args = parser.parse_args()

    tree = load(dp_system_path())
    probs = evaluate(tree)
    print("classical evaluation")
    for name in ("computer_r1_failure", "computer_system_failure", "power_system_failure", tree.top):
        print(f"  {name:<26} {probs[name]:.10g}")
    print(f"  brute force TOP            {brute_force_probability(tree):.10g}")

    compiled = compile_tree(tree)
    c = compiled.circuit
    print(f"\ncircuit: {c.n_qubits} qubits, {c.count(RY)} ry, {c.count(X)} x, {c.count(MCX)} mcx")

    start = time.perf_counter()
    state = run(c)
    hist = sample(state, args.shots, args.seed)
    elapsed = time.perf_counter() - start
    top = compiled.qubit_map.top_qubit
    print(f"exact TOP marginal          {probability_of_one(state, top):.10g}")
    print(f"sampled TOP ({args.shots} shots) {top_failure_estimate(hist, top):.6f}  [{elapsed:.2f} s]")

    scenarios = failure_scenarios(hist, compiled.qubit_map)
    print(f"\n{len(scenarios)} distinct failure scenarios, most frequent first")
    print(scenarios_to_text(scenarios[: args.top_n]), end="")


if __name__ == "__main__":
    main()
