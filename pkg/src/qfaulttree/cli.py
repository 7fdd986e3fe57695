"""Command line entry point: ``qfault {analyze,compile,scenarios}``.

Exit codes: 0 success, 1 invalid fault tree (diagnostics on stderr),
2 file could not be read or written.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import fault_tree
from .analytic import SharedEventError
from .compiler import compile_tree
from .quantum import CircuitError
from .report import MODES, RunConfig, analyze
from .sampling import scenarios_to_text

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _nonnegative(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _add_sampling_flags(p: argparse.ArgumentParser, top_n: int) -> None:
    p.add_argument("--shots", type=_nonnegative, default=1_000_000)
    p.add_argument("--seed", type=_nonnegative, default=0)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--layout", choices=("reduced", "full"), default="reduced",
                   help="reduced: TOP then basic events; full: every qubit, highest index first")
    p.add_argument("--top-n", type=_nonnegative, default=top_n,
                   help="number of failure scenarios to list (0 = all)")
    p.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfault", description="Fault tree analysis by quantum circuit simulation."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analytic, exact and sampled TOP failure probability")
    p.add_argument("file")
    p.add_argument("--mode", choices=MODES, default="all")
    _add_sampling_flags(p, top_n=20)

    p = sub.add_parser("compile", help="print the compiled circuit")
    p.add_argument("file")
    p.add_argument("--dump", default=None, help="write the circuit listing to this path")

    p = sub.add_parser("scenarios", help="sampled failure scenario table")
    p.add_argument("file")
    _add_sampling_flags(p, top_n=0)
    return parser


def _render(report, fmt: str, scenarios_only: bool) -> str:
    if fmt == "json":
        if scenarios_only:
            data = report.to_dict()
            return json.dumps({"scenarios": data["scenarios"], "metadata": data["metadata"]}, indent=2) + "\n"
        return report.to_json()
    if fmt == "csv":
        return report.to_csv()
    if scenarios_only:
        return scenarios_to_text(report.scenarios)
    return report.to_text()


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tree = fault_tree.load(args.file)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"qfault: cannot read {args.file}: {getattr(exc, 'strerror', None) or exc}", file=sys.stderr)
        return EXIT_IO
    except fault_tree.FaultTreeError as exc:
        for diag in exc.diagnostics:
            print(f"{args.file}:{diag}", file=sys.stderr)
        return EXIT_INVALID

    try:
        if args.command == "compile":
            text = compile_tree(tree).circuit.dump()
            _write(text, args.dump)
            return EXIT_OK

        mode = "sample" if args.command == "scenarios" else args.mode
        config = RunConfig(mode=mode, shots=args.shots, seed=args.seed, workers=args.workers,
                           layout=args.layout, top_n=args.top_n)
        report = analyze(tree, config)
        _write(_render(report, args.format, args.command == "scenarios"), args.output)
    except (CircuitError, SharedEventError, ValueError) as exc:
        print(f"qfault: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"qfault: cannot write output: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
