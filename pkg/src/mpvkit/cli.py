"""Command-line front end.

``mpv solve|verify|kernelize|transform|generate|bench``; every
subcommand reads and writes the plain-text formats from
:mod:`mpvkit.formats`. Exit codes: 0 yes/valid, 1 no/invalid, 2 usage
or input error, 3 exploration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import __version__
from .core import (
    BudgetExceededError,
    TrivialVerdict,
    WeightedInstance,
    verify,
)
from .formats import (
    FormatError,
    emit_instance,
    emit_solution,
    parse_graph,
    parse_instance,
    parse_solution,
)
from .kernel import kernel_mtau, kernel_ntau_cmpv, kernel_ntau_rmpv, solve_weighted
from .oracle import brute_force
from .reductions import (
    PartitionedGraph,
    and_compose_cmpv,
    and_compose_rmpv,
    cmpv_normalize_half,
    cmpv_to_rmpv,
    lift_ell1,
    lift_ell_2km2,
    mcc_to_cmpv,
    random_instance,
    vc_to_cmpv,
)
from .solvers import (
    solve_auto,
    solve_dp_tau,
    solve_inout_ell,
    solve_layered_k,
    solve_unconstrained,
)

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2
EXIT_BUDGET = 3


def _greedy(instance, budget=None):
    return solve_unconstrained(instance)


_ALGORITHMS = {
    "auto": solve_auto,
    "brute": brute_force,
    "layered-k": solve_layered_k,
    "inout-ell": solve_inout_ell,
    "dp-tau": solve_dp_tau,
    "greedy": _greedy,
}


def _write_output(text: str, path):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _run_algorithm(name, instance, budget):
    if isinstance(instance, WeightedInstance):
        if name not in ("auto", "brute"):
            raise ValueError("weighted instances support only brute-force solving")
        if budget is None:
            return solve_weighted(instance)
        return solve_weighted(instance, budget=budget)
    fn = _ALGORITHMS[name]
    if budget is None or name == "greedy":
        return fn(instance)
    return fn(instance, budget=budget)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_solve(args) -> int:
    instance = parse_instance(Path(args.instance).read_text())
    report = _run_algorithm(args.algorithm, instance, args.budget)
    print("YES" if report.answer else "NO")
    if args.witness and report.witness is not None:
        sys.stdout.write(emit_solution(report.witness))
    return EXIT_YES if report.answer else EXIT_NO


def _cmd_verify(args) -> int:
    instance = parse_instance(Path(args.instance).read_text())
    if isinstance(instance, WeightedInstance):
        raise ValueError("verification needs a ballot instance, not a weighted one")
    committees = parse_solution(Path(args.solution).read_text(), instance)
    violations = verify(instance, committees)
    if violations:
        for violation in violations:
            print(violation)
        return EXIT_NO
    print("VALID")
    return EXIT_YES


def _cmd_kernelize(args) -> int:
    instance = parse_instance(Path(args.instance).read_text())
    if args.target == "mtau":
        _write_output(emit_instance(kernel_mtau(instance)), args.output)
        return EXIT_YES
    if isinstance(instance, WeightedInstance):
        raise ValueError("the ntau kernel needs a ballot instance")
    if instance.variant == "C":
        result = kernel_ntau_cmpv(instance)
    else:
        result = kernel_ntau_rmpv(instance)
    if result.verdict is not None:
        print(f"NO ({result.verdict.reason})")
        return EXIT_NO
    if result.gap:
        print(
            "note: k exceeds n and the candidate count sits between "
            "n*stages and k*stages; no reduction rule applies",
            file=sys.stderr,
        )
    _write_output(emit_instance(result.instance), args.output)
    mapping_path = args.mapping
    if mapping_path is None and args.output:
        mapping_path = args.output + ".map"
    if mapping_path:
        lines = [f"{new} {old}" for new, old in sorted(result.id_map.items())]
        Path(mapping_path).write_text("\n".join(lines) + "\n")
    return EXIT_YES


def _cmd_transform(args) -> int:
    name = args.reduction
    if name in ("vc-cmpv", "mcc-cmpv"):
        graph = parse_graph(Path(args.inputs[0]).read_text())
        if name == "vc-cmpv":
            if isinstance(graph, PartitionedGraph):
                raise ValueError("vc-cmpv expects an unpartitioned graph")
            result = vc_to_cmpv(graph)
        else:
            if not isinstance(graph, PartitionedGraph):
                raise ValueError("mcc-cmpv expects a graph with a parts section")
            result = mcc_to_cmpv(graph)
    elif name in ("and-cmpv", "and-rmpv"):
        instances = [parse_instance(Path(p).read_text()) for p in args.inputs]
        compose = and_compose_cmpv if name == "and-cmpv" else and_compose_rmpv
        result = compose(instances)
    else:
        single = {
            "cmpv-rmpv": cmpv_to_rmpv,
            "normalize-half": cmpv_normalize_half,
            "lift-ell1": lift_ell1,
            "lift-ell2km2": lift_ell_2km2,
        }[name]
        result = single(parse_instance(Path(args.inputs[0]).read_text()))
    if isinstance(result, TrivialVerdict):
        print(f"{'YES' if result.answer else 'NO'} ({result.reason})")
        return EXIT_YES if result.answer else EXIT_NO
    _write_output(emit_instance(result), args.output)
    return EXIT_YES


def _cmd_generate(args) -> int:
    instance = random_instance(
        n=args.agents,
        m=args.candidates,
        tau=args.stages,
        k=args.k,
        ell=args.ell,
        x=args.x,
        variant=args.variant,
        abstain_probability=args.abstain_probability,
        seed=args.seed,
    )
    _write_output(emit_instance(instance), args.output)
    return EXIT_YES


def _cmd_bench(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        raise ValueError(f"{args.directory!r} is not a directory")
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    for name in algorithms:
        if name not in _ALGORITHMS:
            raise ValueError(f"unknown algorithm {name!r}")
    rows = []
    for path in sorted(directory.iterdir()):
        if not path.is_file():
            continue
        try:
            instance = parse_instance(path.read_text())
        except FormatError:
            continue  # directories often hold .map sidecars and notes
        for name in algorithms:
            try:
                report = _run_algorithm(name, instance, args.budget)
            except BudgetExceededError:
                rows.append([path.name, name, "budget", "", ""])
                continue
            except ValueError:
                rows.append([path.name, name, "n/a", "", ""])
                continue
            rows.append(
                [
                    path.name,
                    name,
                    "yes" if report.answer else "no",
                    str(report.stats.get("states", "")),
                    f"{report.stats.get('time_ms', 0.0):.3f}",
                ]
            )
    if args.output:
        with open(args.output, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["instance", "algorithm", "answer", "states", "time_ms"])
            writer.writerows(rows)
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["instance", "algorithm", "answer", "states", "time_ms"])
        writer.writerows(rows)
    return EXIT_YES


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpv",
        description="Exact solvers and instance tooling for multistage plurality voting.",
    )
    parser.add_argument("--version", action="version", version=f"mpv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide an instance file")
    p.add_argument("instance", help="instance file")
    p.add_argument(
        "--algorithm",
        choices=sorted(_ALGORITHMS),
        default="auto",
        help="solver to run (default: auto)",
    )
    p.add_argument("--witness", action="store_true", help="print a committee sequence on yes")
    p.add_argument("--budget", type=int, default=None, help="state exploration budget")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("instance", help="instance file")
    p.add_argument("solution", help="solution file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("kernelize", help="shrink an instance")
    p.add_argument("instance", help="instance file")
    p.add_argument("--target", choices=("ntau", "mtau"), required=True)
    p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")
    p.add_argument(
        "--mapping",
        default=None,
        help="id-mapping sidecar path (default: OUTPUT.map when -o is given)",
    )
    p.set_defaults(func=_cmd_kernelize)

    p = sub.add_parser("transform", help="apply a reduction or lift")
    p.add_argument(
        "--reduction",
        choices=(
            "vc-cmpv",
            "cmpv-rmpv",
            "normalize-half",
            "mcc-cmpv",
            "lift-ell1",
            "lift-ell2km2",
            "and-cmpv",
            "and-rmpv",
        ),
        required=True,
    )
    p.add_argument("inputs", nargs="+", help="input file(s)")
    p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("generate", help="emit a seeded random instance")
    p.add_argument("--variant", choices=("C", "R"), required=True)
    p.add_argument("--agents", type=int, required=True)
    p.add_argument("--candidates", type=int, required=True)
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--abstain-probability", type=float, default=0.0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("bench", help="time algorithms over a directory of instances")
    p.add_argument("directory", help="directory of instance files")
    p.add_argument(
        "--algorithms",
        default="auto",
        help="comma-separated algorithm names (default: auto)",
    )
    p.add_argument("--budget", type=int, default=None, help="state exploration budget")
    p.add_argument("-o", "--output", default=None, help="CSV output file (default: stdout)")
    p.set_defaults(func=_cmd_bench)
    return parser


def run(argv=None) -> int:
    """Parse ``argv`` and execute one subcommand; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage or version text
        return EXIT_YES if not exc.code else EXIT_ERROR
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
