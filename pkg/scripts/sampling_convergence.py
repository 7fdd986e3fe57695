"""Sampled TOP estimate against shot count, for several seeds.

Writes CSV rows ``shots,seed,estimate,abs_error,sigma`` to stdout.
"""
import argparse
import math
import sys

from qfaulttree import compile_tree, load, dp_system_path, probability_of_one, run, sample, top_failure_estimate


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("file", nargs="?", default=str(dp_system_path()))
    parser.add_argument("--seeds", type=int, default=5)
    parser.add_argument("--max-exponent", type=int, default=6)
    args = parser.parse_args()

    compiled = compile_tree(load(args.file))
    state = run(compiled.circuit)
    top = compiled.qubit_map.top_qubit
    exact = probability_of_one(state, top)

    out = sys.stdout
    out.write("shots,seed,estimate,abs_error,sigma\n")
    for exponent in range(2, args.max_exponent + 1):
        shots = 10**exponent
        sigma = math.sqrt(exact * (1 - exact) / shots)
        for seed in range(args.seeds):
            est = top_failure_estimate(sample(state, shots, seed), top)
            out.write(f"{shots},{seed},{est!r},{abs(est - exact)!r},{sigma!r}\n")


if __name__ == "__main__":
    main()
