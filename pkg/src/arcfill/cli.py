"""Command-line interface: JSON instance files, solving, verification,
kernelization, seeded generation, and brute-force cross-checking.

Exit codes: 0 = yes/pass, 1 = no/fail, 2 = usage, parse, or semantic error.
All emitted JSON uses a fixed key order and two-space indentation, so equal
objects serialize to identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass

from .core import (
    DegreeListFunction,
    DegreeSequence,
    Digraph,
    degree_sequence,
)
from .flow import DemandVector, build_network
from .kernel import (
    KernelResult,
    KernelVerdict,
    kernelize_dda,
    kernelize_ddconc,
    kernelize_ddseqc,
)
from .numprob import (
    reduce_partition_to_nda,
    solve_nda,
    solve_nddcc,
    solve_nddsc,
)
from .oracle import (
    InstanceTooLargeError,
    brute_force_graph,
    brute_force_nda,
    brute_force_nddcc,
    brute_force_nddsc,
)
from .problems import (
    AnonymityCompletion,
    ListCompletion,
    ProblemInstance,
    SequenceCompletion,
    delta_star_cap,
)
from .search import Solution, solve, verify_solution

INSTANCE_FORMAT = "arcfill-instance"
SOLUTION_FORMAT = "arcfill-solution"
SEQUENCE_FORMAT = "arcfill-sequence-instance"
SEQUENCE_SOLUTION_FORMAT = "arcfill-sequence-solution"
KERNEL_FORMAT = "arcfill-kernel"
FORMAT_VERSION = 1

GRAPH_PROBLEMS = ("ddconc", "ddseqc", "dda")
NUMBER_PROBLEMS = ("nddcc", "nddsc", "nda")


class ParseError(ValueError):
    """Malformed file; `.line` locates the first offending line when known."""

    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
        self.line = line


class SemanticError(ValueError):
    """Well-formed file describing an invalid instance."""


@dataclass(frozen=True)
class NumberInstance:
    """A parsed number-problem file."""

    problem: str
    sequence: DegreeSequence
    budget: int | None = None
    lists: DegreeListFunction | None = None
    target: DegreeSequence | None = None
    anonymity: int | None = None
    max_value: int | None = None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    if not isinstance(data, dict):
        raise ParseError("top-level value must be an object")
    return data


def _expect(data: dict, key: str, kinds, context: str):
    if key not in data:
        raise ParseError(f"{context}: missing field {key!r}")
    value = data[key]
    if not isinstance(value, kinds):
        raise ParseError(f"{context}: field {key!r} has the wrong type")
    return value


def _check_header(data: dict, expected_format: str) -> None:
    fmt = _expect(data, "format", str, "header")
    if fmt != expected_format:
        raise ParseError(f"header: expected format {expected_format!r}, got {fmt!r}")
    version = _expect(data, "version", int, "header")
    if version != FORMAT_VERSION:
        raise ParseError(f"header: unsupported version {version}")


def _parse_arc_list(raw, n: int, context: str) -> list[tuple[int, int]]:
    arcs = []
    seen = set()
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2):
            raise ParseError(f"{context}: each arc must be a pair")
        u, v = item
        if not (isinstance(u, int) and isinstance(v, int)):
            raise ParseError(f"{context}: arc endpoints must be integers")
        if u == v:
            raise SemanticError(f"{context}: loop arc ({u}, {v})")
        if not (0 <= u < n and 0 <= v < n):
            raise SemanticError(f"{context}: arc ({u}, {v}) out of range")
        if (u, v) in seen:
            raise SemanticError(f"{context}: duplicate arc ({u}, {v})")
        seen.add((u, v))
        arcs.append((u, v))
    return arcs


def _parse_pair_list(raw, context: str) -> list[tuple[int, int]]:
    pairs = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2):
            raise ParseError(f"{context}: each entry must be a pair")
        a, b = item
        if not (isinstance(a, int) and isinstance(b, int)):
            raise ParseError(f"{context}: pair components must be integers")
        if a < 0 or b < 0:
            raise SemanticError(f"{context}: negative component in ({a}, {b})")
        pairs.append((a, b))
    return pairs


def parse_instance(text: str) -> ProblemInstance:
    """Parse a graph-problem instance file."""
    data = _load(text)
    _check_header(data, INSTANCE_FORMAT)
    problem = _expect(data, "problem", str, "header")
    if problem not in GRAPH_PROBLEMS:
        raise ParseError(f"unknown problem {problem!r}")
    n = _expect(data, "vertices", int, "digraph")
    if n < 0:
        raise SemanticError("vertex count must be nonnegative")
    arcs = _parse_arc_list(_expect(data, "arcs", list, "digraph"), n, "digraph")
    digraph = Digraph(n, arcs)
    if problem == "ddconc":
        budget = _expect(data, "budget", int, "ddconc")
        if budget < 0:
            raise SemanticError("budget must be nonnegative")
        bound = _expect(data, "degree_bound", int, "ddconc")
        raw_lists = _expect(data, "degree_lists", list, "ddconc")
        if len(raw_lists) != n:
            raise SemanticError(
                f"degree_lists covers {len(raw_lists)} vertices, digraph has {n}"
            )
        lists = []
        for v, entry in enumerate(raw_lists):
            if not isinstance(entry, list):
                raise ParseError(f"degree_lists[{v}] must be a list")
            pairs = _parse_pair_list(entry, f"degree_lists[{v}]")
            for (a, b) in pairs:
                if a > bound or b > bound:
                    raise SemanticError(
                        f"degree_lists[{v}]: pair ({a}, {b}) exceeds bound {bound}"
                    )
            lists.append(pairs)
        return ListCompletion(digraph, budget, DegreeListFunction(lists, bound=bound))
    if problem == "ddseqc":
        raw_target = _expect(data, "target_sequence", list, "ddseqc")
        target = _parse_pair_list(raw_target, "target_sequence")
        if len(target) != n:
            raise SemanticError(
                f"target_sequence has {len(target)} entries, digraph has {n}"
            )
        return SequenceCompletion(digraph, DegreeSequence(target))
    anonymity = _expect(data, "anonymity", int, "dda")
    if anonymity < 1:
        raise SemanticError("anonymity level must be positive")
    budget = _expect(data, "budget", int, "dda")
    if budget < 0:
        raise SemanticError("budget must be nonnegative")
    return AnonymityCompletion(digraph, anonymity, budget)


def _instance_payload(instance: ProblemInstance) -> dict:
    d = instance.digraph
    data = {
        "format": INSTANCE_FORMAT,
        "version": FORMAT_VERSION,
        "problem": instance.kind,
        "vertices": d.n,
        "arcs": [list(arc) for arc in d.sorted_arcs()],
    }
    if isinstance(instance, ListCompletion):
        data["budget"] = instance.budget
        data["degree_bound"] = instance.allowed.bound
        data["degree_lists"] = [
            [list(p) for p in sorted(instance.allowed[v])] for v in range(d.n)
        ]
    elif isinstance(instance, SequenceCompletion):
        data["target_sequence"] = [list(p) for p in instance.target]
    else:
        data["anonymity"] = instance.anonymity
        data["budget"] = instance.budget
    return data


def emit_instance(instance: ProblemInstance) -> str:
    """Canonical byte-stable serialization of an instance."""
    return _dump(_instance_payload(instance))


def parse_number_instance(text: str) -> NumberInstance:
    """Parse a number-problem (raw sequence) instance file."""
    data = _load(text)
    _check_header(data, SEQUENCE_FORMAT)
    problem = _expect(data, "problem", str, "header")
    if problem not in NUMBER_PROBLEMS:
        raise ParseError(f"unknown number problem {problem!r}")
    sequence = DegreeSequence(
        _parse_pair_list(_expect(data, "sequence", list, "sequence"), "sequence")
    )
    if problem == "nddcc":
        budget = _expect(data, "budget", int, "nddcc")
        bound = _expect(data, "degree_bound", int, "nddcc")
        raw_lists = _expect(data, "degree_lists", list, "nddcc")
        if len(raw_lists) != len(sequence):
            raise SemanticError("degree_lists must cover every sequence entry")
        lists = []
        for i, entry in enumerate(raw_lists):
            pairs = _parse_pair_list(entry, f"degree_lists[{i}]")
            for (a, b) in pairs:
                if a > bound or b > bound:
                    raise SemanticError(
                        f"degree_lists[{i}]: pair ({a}, {b}) exceeds bound {bound}"
                    )
            lists.append(pairs)
        return NumberInstance(
            problem, sequence, budget=budget,
            lists=DegreeListFunction(lists, bound=bound),
        )
    if problem == "nddsc":
        target = DegreeSequence(
            _parse_pair_list(
                _expect(data, "target_sequence", list, "nddsc"), "target_sequence"
            )
        )
        if len(target) != len(sequence):
            raise SemanticError("target_sequence must match the sequence length")
        return NumberInstance(problem, sequence, target=target)
    budget = _expect(data, "budget", int, "nda")
    anonymity = _expect(data, "anonymity", int, "nda")
    if anonymity < 1:
        raise SemanticError("anonymity level must be positive")
    max_value = data.get("max_value")
    if max_value is not None and not isinstance(max_value, int):
        raise ParseError("nda: field 'max_value' has the wrong type")
    if max_value is not None and max_value < sequence.max_component:
        raise SemanticError("max_value below the largest sequence component")
    return NumberInstance(
        problem, sequence, budget=budget, anonymity=anonymity, max_value=max_value
    )


def emit_number_instance(instance: NumberInstance) -> str:
    data = {
        "format": SEQUENCE_FORMAT,
        "version": FORMAT_VERSION,
        "problem": instance.problem,
        "sequence": [list(p) for p in instance.sequence],
    }
    if instance.problem == "nddcc":
        data["budget"] = instance.budget
        data["degree_bound"] = instance.lists.bound
        data["degree_lists"] = [
            [list(p) for p in sorted(instance.lists[i])]
            for i in range(len(instance.lists))
        ]
    elif instance.problem == "nddsc":
        data["target_sequence"] = [list(p) for p in instance.target]
    else:
        data["budget"] = instance.budget
        data["anonymity"] = instance.anonymity
        if instance.max_value is not None:
            data["max_value"] = instance.max_value
    return _dump(data)


def emit_solution(instance: ProblemInstance, solution: Solution | None) -> str:
    data = {
        "format": SOLUTION_FORMAT,
        "version": FORMAT_VERSION,
        "problem": instance.kind,
        "decision": "yes" if solution is not None else "no",
        "arcs": [list(arc) for arc in solution.arcs] if solution else [],
        "certificate": dict(solution.certificate) if solution else {},
    }
    return _dump(data)


def parse_solution(text: str) -> tuple[str, str, list[tuple[int, int]]]:
    """Parse a solution file into (problem, decision, arcs)."""
    data = _load(text)
    _check_header(data, SOLUTION_FORMAT)
    problem = _expect(data, "problem", str, "header")
    if problem not in GRAPH_PROBLEMS:
        raise ParseError(f"unknown problem {problem!r}")
    decision = _expect(data, "decision", str, "solution")
    if decision not in ("yes", "no"):
        raise ParseError(f"unknown decision {decision!r}")
    raw = _expect(data, "arcs", list, "solution")
    arcs = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2):
            raise ParseError("solution: each arc must be a pair")
        arcs.append((int(item[0]), int(item[1])))
    return problem, decision, arcs


def emit_kernel(instance: ProblemInstance, result: KernelResult) -> str:
    data = {
        "format": KERNEL_FORMAT,
        "version": FORMAT_VERSION,
        "problem": instance.kind,
        "verdict": result.verdict.value,
        "reason": result.reason.value if result.reason else None,
        "instance": (
            _instance_payload(result.instance) if result.instance else None
        ),
        "kept": [[kernel, orig] for kernel, orig in sorted(result.kept.items())],
        "added": sorted(result.added),
    }
    return _dump(data)


def random_digraph(rng: random.Random, n: int, density: float) -> Digraph:
    """Independent arc sampling at the given density."""
    arcs = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and rng.random() < density
    ]
    return Digraph(n, arcs)


def generate_instance(
    problem: str,
    rng: random.Random,
    n: int,
    density: float,
    budget: int,
    anonymity: int = 2,
    slack: int = 2,
) -> ProblemInstance:
    """Seeded random instance of the requested problem.

    Allowed-degree lists are sampled around current degrees within ``slack``;
    sequence targets come from actually inserting up to ``budget`` random
    arcs, so they are realizable reasonably often.
    """
    digraph = random_digraph(rng, n, density)
    if problem == "ddconc":
        lists = []
        for v in range(n):
            deg = digraph.degree(v)
            count = rng.randint(1, 3)
            entries = set()
            for _ in range(count):
                entries.add(
                    (deg.indeg + rng.randint(0, slack), deg.outdeg + rng.randint(0, slack))
                )
            lists.append(sorted(entries))
        return ListCompletion(digraph, budget, DegreeListFunction(lists))
    if problem == "ddseqc":
        insertable = digraph.non_arcs()
        extras = rng.sample(insertable, min(rng.randint(0, budget), len(insertable)))
        grown = Digraph(digraph.n, list(digraph.arcs) + extras)
        entries = [tuple(grown.degree(v)) for v in range(n)]
        rng.shuffle(entries)
        return SequenceCompletion(digraph, DegreeSequence(entries))
    if problem == "dda":
        return AnonymityCompletion(digraph, anonymity, budget)
    raise ValueError(f"unknown problem {problem!r}")


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _report_solution(solution: Solution | None, out) -> None:
    if solution is None:
        print("decision: no", file=out)
        return
    print("decision: yes", file=out)
    print(f"arcs ({len(solution.arcs)}):", file=out)
    for (u, v) in solution.arcs:
        print(f"  {u} -> {v}", file=out)
    for name, passed in solution.certificate.items():
        print(f"check {name}: {'pass' if passed else 'FAIL'}", file=out)


def _cmd_solve(args, out, err) -> int:
    instance = parse_instance(_read(args.input))
    solution = solve(instance)
    if args.oracle:
        try:
            reference = brute_force_graph(
                instance,
                max_vertices=args.oracle_max_vertices,
                max_budget=args.oracle_max_budget,
            )
        except InstanceTooLargeError as exc:
            print(f"oracle skipped: {exc}", file=err)
        else:
            if (reference is None) != (solution is None):
                print(
                    "oracle mismatch: solver said "
                    f"{'yes' if solution else 'no'}, brute force said "
                    f"{'yes' if reference else 'no'}",
                    file=err,
                )
                return 2
            print("oracle agreement: ok", file=out)
    _report_solution(solution, out)
    if args.output:
        _write(args.output, emit_solution(instance, solution))
    return 0 if solution is not None else 1


def _cmd_oracle(args, out, err) -> int:
    instance = parse_instance(_read(args.input))
    solution = brute_force_graph(
        instance, max_vertices=args.max_vertices, max_budget=args.max_budget
    )
    _report_solution(solution, out)
    if args.output:
        _write(args.output, emit_solution(instance, solution))
    return 0 if solution is not None else 1


def _cmd_verify(args, out, err) -> int:
    instance = parse_instance(_read(args.input))
    problem, decision, arcs = parse_solution(_read(args.solution))
    if problem != instance.kind:
        raise SemanticError(
            f"solution is for {problem!r} but instance is {instance.kind!r}"
        )
    if decision == "no":
        print("nothing to verify: solution file claims no", file=out)
        return 1
    solution = Solution(tuple(arcs), {})
    if verify_solution(instance, solution):
        print("verification: pass", file=out)
        return 0
    print("verification: FAIL", file=out)
    return 1


def _cmd_kernelize(args, out, err) -> int:
    instance = parse_instance(_read(args.input))
    if isinstance(instance, ListCompletion):
        result = kernelize_ddconc(
            instance.digraph,
            instance.budget,
            instance.allowed,
            delta_star_cap(instance),
        )
    elif isinstance(instance, SequenceCompletion):
        result = kernelize_ddseqc(instance.digraph, instance.target)
    else:
        result = kernelize_dda(instance.digraph, instance.anonymity, instance.budget)
    print(f"verdict: {result.verdict.value}", file=out)
    if result.reason:
        print(f"reason: {result.reason.value}", file=out)
    if result.instance is not None:
        print(f"kernel vertices: {result.instance.digraph.n}", file=out)
    if args.output:
        _write(args.output, emit_kernel(instance, result))
    return 1 if result.verdict is KernelVerdict.TRIVIAL_NO else 0


def _solve_number(instance: NumberInstance):
    if instance.problem == "nddcc":
        return solve_nddcc(instance.sequence, instance.budget, instance.lists)
    if instance.problem == "nddsc":
        return solve_nddsc(instance.sequence, instance.target)
    max_value = instance.max_value
    if max_value is None:
        max_value = instance.sequence.max_component
    return solve_nda(
        instance.sequence, instance.budget, instance.anonymity, max_value
    )


def _oracle_number(instance: NumberInstance):
    if instance.problem == "nddcc":
        return brute_force_nddcc(instance.sequence, instance.budget, instance.lists)
    if instance.problem == "nddsc":
        return brute_force_nddsc(instance.sequence, instance.target)
    max_value = instance.max_value
    if max_value is None:
        max_value = instance.sequence.max_component
    return brute_force_nda(
        instance.sequence, instance.budget, instance.anonymity, max_value
    )


def emit_number_solution(instance: NumberInstance, result) -> str:
    data = {
        "format": SEQUENCE_SOLUTION_FORMAT,
        "version": FORMAT_VERSION,
        "problem": instance.problem,
        "decision": "yes" if result is not None else "no",
    }
    if result is not None:
        if instance.problem == "nddsc":
            data["assignment"] = list(result.mapping)
        else:
            data["target_sequence"] = [list(p) for p in result.target]
            data["demand_in"] = list(result.demands.in_demand)
            data["demand_out"] = list(result.demands.out_demand)
    return _dump(data)


def _cmd_numprob(args, out, err) -> int:
    instance = parse_number_instance(_read(args.input))
    result = _solve_number(instance)
    if args.oracle:
        try:
            reference = _oracle_number(instance)
        except InstanceTooLargeError as exc:
            print(f"oracle skipped: {exc}", file=err)
        else:
            if (reference is None) != (result is None):
                print(
                    "oracle mismatch: solver said "
                    f"{'yes' if result else 'no'}, brute force said "
                    f"{'yes' if reference else 'no'}",
                    file=err,
                )
                return 2
            print("oracle agreement: ok", file=out)
    print(f"decision: {'yes' if result is not None else 'no'}", file=out)
    if args.output:
        _write(args.output, emit_number_solution(instance, result))
    return 0 if result is not None else 1


def _parse_int_list(text: str, context: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ParseError(f"{context}: expected comma-separated integers") from exc


def _cmd_gen(args, out, err) -> int:
    if args.partition:
        values = _parse_int_list(args.partition, "--partition")
        sequence, budget, anonymity = reduce_partition_to_nda(values)
        instance = NumberInstance(
            "nda",
            sequence,
            budget=budget,
            anonymity=anonymity,
            max_value=sequence.max_component,
        )
        text = emit_number_instance(instance)
    else:
        if args.seed is None:
            raise SemanticError("--seed is required for random generation")
        if args.problem is None:
            raise SemanticError("--problem is required for random generation")
        rng = random.Random(args.seed)
        instance = generate_instance(
            args.problem,
            rng,
            n=args.vertices,
            density=args.density,
            budget=args.budget,
            anonymity=args.anonymity,
            slack=args.slack,
        )
        text = emit_instance(instance)
    if args.output:
        _write(args.output, text)
    else:
        out.write(text)
    return 0


def _cmd_network(args, out, err) -> int:
    instance = parse_instance(_read(args.input))
    d = instance.digraph
    in_demand = _parse_int_list(args.demands_in, "--demands-in")
    out_demand = _parse_int_list(args.demands_out, "--demands-out")
    if len(in_demand) != d.n or len(out_demand) != d.n:
        raise SemanticError("demand lists must cover every vertex")
    network = build_network(d, DemandVector(tuple(in_demand), tuple(out_demand)))
    data = {
        "format": "arcfill-network",
        "version": FORMAT_VERSION,
        "nodes": network.node_count(),
        "source": network.source,
        "sink": network.sink,
        "edges": [[u, v, cap] for (u, v, cap) in network.edge_list()],
    }
    text = _dump(data)
    if args.output:
        _write(args.output, text)
    else:
        out.write(text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arcfill",
        description="Exact solvers for degree-constrained arc insertion in digraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file exactly")
    p.add_argument("--input", required=True)
    p.add_argument("--output", help="write the solution file here")
    p.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    p.add_argument("--oracle-max-vertices", type=int, default=7)
    p.add_argument("--oracle-max-budget", type=int, default=5)

    p = sub.add_parser("oracle", help="solve a small instance by brute force")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.add_argument("--max-vertices", type=int, default=7)
    p.add_argument("--max-budget", type=int, default=5)

    p = sub.add_parser("verify", help="check a solution file against its instance")
    p.add_argument("--input", required=True)
    p.add_argument("--solution", required=True)

    p = sub.add_parser("kernelize", help="emit an equivalent reduced instance")
    p.add_argument("--input", required=True)
    p.add_argument("--output")

    p = sub.add_parser("numprob", help="solve a raw degree-sequence problem")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.add_argument("--oracle", action="store_true", help="cross-check with brute force")

    p = sub.add_parser("gen", help="generate a seeded random or reduction instance")
    p.add_argument("--problem", choices=GRAPH_PROBLEMS)
    p.add_argument("--vertices", type=int, default=6)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--budget", type=int, default=2)
    p.add_argument("--anonymity", type=int, default=2)
    p.add_argument("--slack", type=int, default=2)
    p.add_argument("--seed", type=int)
    p.add_argument("--partition", help="comma-separated positive integers")
    p.add_argument("--output")

    p = sub.add_parser("network", help="dump the demand flow network of an instance")
    p.add_argument("--input", required=True)
    p.add_argument("--demands-in", required=True)
    p.add_argument("--demands-out", required=True)
    p.add_argument("--output")
    return parser


_HANDLERS = {
    "solve": _cmd_solve,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
    "kernelize": _cmd_kernelize,
    "numprob": _cmd_numprob,
    "gen": _cmd_gen,
    "network": _cmd_network,
}


def run(argv, out=None, err=None) -> int:
    """Dispatch a CLI invocation; returns the process exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        # argparse writes usage and help straight to the process streams.
        with redirect_stdout(out), redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return _HANDLERS[args.command](args, out, err)
    except (ParseError, SemanticError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
