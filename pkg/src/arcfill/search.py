"""Bounded exhaustive search and the full two-stage solving pipeline.

Small budgets are handled by kernelizing and exhaustively trying arc sets
inside a representative vertex set.  Budgets larger than twice the squared
degree cap of any solution are handled on the degree sequence alone: a
number-problem solver proposes per-vertex increments, which a max-flow
realization is then guaranteed to install as concrete arcs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .core import (
    DegreeListFunction,
    DegreePair,
    Digraph,
    degree_sequence,
)
from .flow import DemandVector, realize_demands
from .kernel import (
    AlphaSetSpec,
    AlphaSetVariant,
    KernelResult,
    KernelVerdict,
    compute_alpha_set,
    kernelize_dda,
    kernelize_ddconc,
    kernelize_ddseqc,
    lift_solution,
)
from .numprob import solve_nda, solve_nddcc, solve_nddsc
from .problems import (
    AnonymityCompletion,
    ListCompletion,
    ProblemInstance,
    SequenceCompletion,
    dda_delta_star_cap,
    delta_star_cap,
)

Arc = tuple[int, int]

__all__ = [
    "Solution",
    "solve",
    "solve_bounded",
    "verify_solution",
    "build_certificate",
    "dda_delta_star_cap",
]


@dataclass(frozen=True)
class Solution:
    """Inserted arcs plus a machine-checkable certificate of the checks run."""

    arcs: tuple[Arc, ...]
    certificate: dict[str, bool]

    def __post_init__(self):
        object.__setattr__(
            self, "arcs", tuple(sorted((int(u), int(v)) for (u, v) in self.arcs))
        )


def build_certificate(instance: ProblemInstance, arcs) -> dict[str, bool]:
    """Re-check a claimed solution directly against the problem definition."""
    d = instance.digraph
    arcs = [tuple(arc) for arc in arcs]
    unique = set(arcs)
    insertable = (
        len(unique) == len(arcs)
        and all(
            u != v and 0 <= u < d.n and 0 <= v < d.n and (u, v) not in d.arcs
            for (u, v) in unique
        )
    )
    cert = {"arcs_insertable": insertable}
    if not insertable:
        final = None
    else:
        gained_in = [0] * d.n
        gained_out = [0] * d.n
        for (u, v) in unique:
            gained_out[u] += 1
            gained_in[v] += 1
        final = [
            DegreePair(d.indegree(v) + gained_in[v], d.outdegree(v) + gained_out[v])
            for v in range(d.n)
        ]
    if isinstance(instance, ListCompletion):
        cert["within_budget"] = len(unique) <= instance.budget
        cert["degree_lists_satisfied"] = final is not None and all(
            final[v] in instance.allowed[v] for v in range(d.n)
        )
    elif isinstance(instance, SequenceCompletion):
        implied = instance.implied_insertions()
        cert["within_budget"] = implied is not None and len(unique) == implied
        cert["target_sequence_matched"] = final is not None and Counter(
            final
        ) == instance.target.as_multiset()
    elif isinstance(instance, AnonymityCompletion):
        cert["within_budget"] = len(unique) <= instance.budget
        counts = Counter(final) if final is not None else None
        cert["anonymity_reached"] = counts is not None and all(
            c >= instance.anonymity for c in counts.values()
        )
    else:
        raise TypeError(f"unknown instance {instance!r}")
    return cert


def verify_solution(instance: ProblemInstance, solution: Solution) -> bool:
    """Independent pass/fail re-check of a solution."""
    return all(build_certificate(instance, solution.arcs).values())


def _finish(instance: ProblemInstance, arcs) -> Solution:
    cert = build_certificate(instance, arcs)
    solution = Solution(tuple(arcs), cert)
    assert all(cert.values()), f"solver produced an invalid solution: {cert}"
    return solution


def solve_bounded(
    instance: ProblemInstance, restrict_to: set[int] | None = None
) -> Solution | None:
    """Exhaustive search over arc sets inside a representative vertex set.

    Candidate arcs are the insertable pairs within the representative set,
    sorted by (tail, head); subsets are tried by increasing cardinality and
    then lexicographic rank, so the first valid hit is the canonical minimal
    solution.  Intended for budgets already reduced below twice the squared
    degree cap.
    """
    d = instance.digraph
    if isinstance(instance, ListCompletion):
        budget = instance.budget
        sizes = None  # 0..budget
        spec = AlphaSetSpec(
            max(1, 2 * budget * (d.max_degree + 1)),
            AlphaSetVariant.TYPE_SET,
            delta_star_cap(instance),
        )
        chosen = compute_alpha_set(d, instance.allowed, spec)
    elif isinstance(instance, SequenceCompletion):
        budget = instance.implied_insertions()
        if budget is None:
            return None
        sizes = [budget]
        spec = AlphaSetSpec(
            max(1, 2 * budget * (d.max_degree + 1)), AlphaSetVariant.BLOCK_SET
        )
        chosen = compute_alpha_set(d, None, spec)
    elif isinstance(instance, AnonymityCompletion):
        budget = instance.budget
        sizes = None
        spec = AlphaSetSpec(
            max(1, 2 * budget * (d.max_degree + 1)), AlphaSetVariant.BLOCK_SET
        )
        chosen = compute_alpha_set(d, None, spec)
    else:
        raise TypeError(f"unknown instance {instance!r}")
    if restrict_to is not None:
        chosen &= restrict_to
    pairs = sorted(
        (u, v)
        for u in chosen
        for v in chosen
        if u != v and (u, v) not in d.arcs
    )
    if sizes is None:
        sizes = range(0, min(budget, len(pairs)) + 1)
    elif any(size > len(pairs) for size in sizes):
        return None

    indeg = [d.indegree(v) for v in range(d.n)]
    outdeg = [d.outdegree(v) for v in range(d.n)]
    lists = instance.allowed if isinstance(instance, ListCompletion) else None
    target_counts = (
        instance.target.as_multiset()
        if isinstance(instance, SequenceCompletion)
        else None
    )
    anonymity = (
        instance.anonymity if isinstance(instance, AnonymityCompletion) else None
    )

    def valid_now() -> bool:
        if lists is not None:
            return all(
                DegreePair(indeg[v], outdeg[v]) in lists[v] for v in range(d.n)
            )
        counts = Counter(zip(indeg, outdeg))
        if target_counts is not None:
            return counts == {tuple(p): c for p, c in target_counts.items()}
        return all(c >= anonymity for c in counts.values())

    chosen_arcs: list[Arc] = []

    def dfs(start: int, remaining: int) -> tuple[Arc, ...] | None:
        if lists is not None:
            # An insertion changes at most two vertex degrees, so too many
            # unsatisfied vertices for the remaining budget is a dead end.
            unsatisfied = sum(
                1
                for v in range(d.n)
                if DegreePair(indeg[v], outdeg[v]) not in lists[v]
            )
            if unsatisfied > 2 * remaining:
                return None
        if remaining == 0:
            return tuple(chosen_arcs) if valid_now() else None
        for idx in range(start, len(pairs)):
            if len(pairs) - idx < remaining:
                break
            u, v = pairs[idx]
            outdeg[u] += 1
            indeg[v] += 1
            chosen_arcs.append((u, v))
            found = dfs(idx + 1, remaining - 1)
            chosen_arcs.pop()
            outdeg[u] -= 1
            indeg[v] -= 1
            if found is not None:
                return found
        return None

    for size in sizes:
        found = dfs(0, size)
        if found is not None:
            return _finish(instance, found)
    return None


def _capacity(d: Digraph) -> int:
    return d.n * (d.n - 1) - d.m


def _lifted(instance: ProblemInstance, result: KernelResult, inner: Solution | None):
    if inner is None:
        return None
    return _finish(instance, lift_solution(result, inner.arcs))


def _solve_list(instance: ListCompletion) -> Solution | None:
    d = instance.digraph
    roof = max(d.n - 1, 0)
    # Degree pairs beyond n - 1 per component can never be realized in a
    # simple digraph, so dropping them preserves the answer and keeps the
    # number-problem route aligned with what flows can install.
    trimmed = DegreeListFunction(
        [
            [p for p in instance.allowed[v] if p.max_component <= roof]
            for v in range(d.n)
        ],
        bound=min(instance.allowed.bound, roof),
    )
    s = min(instance.budget, _capacity(d))
    sequence = degree_sequence(d)
    while True:
        cap = delta_star_cap(ListCompletion(d, s, trimmed))
        threshold = 2 * cap * cap
        if s <= threshold:
            break
        for budget in range(threshold + 1, s + 1):
            number = solve_nddcc(sequence, budget, trimmed)
            if number is not None:
                arcs = realize_demands(d, number.demands, cap)
                return _finish(instance, arcs)
        s = threshold
    result = kernelize_ddconc(d, s, trimmed, cap)
    if result.verdict is KernelVerdict.TRIVIAL_NO:
        return None
    if result.verdict is KernelVerdict.TRIVIAL_YES:
        return _finish(instance, ())
    inner = solve_bounded(result.instance)
    return _lifted(instance, result, inner)


def _solve_sequence(instance: SequenceCompletion) -> Solution | None:
    d = instance.digraph
    s = instance.implied_insertions()
    if s is None or s > _capacity(d):
        return None
    if instance.target.max_component > max(d.n - 1, 0):
        return None
    cap = delta_star_cap(instance)
    if s > 2 * cap * cap:
        matching = solve_nddsc(degree_sequence(d), instance.target)
        if matching is None:
            return None
        demands = DemandVector(
            tuple(
                instance.target[matching[i]].indeg - d.indegree(i)
                for i in range(d.n)
            ),
            tuple(
                instance.target[matching[i]].outdeg - d.outdegree(i)
                for i in range(d.n)
            ),
        )
        arcs = realize_demands(d, demands, cap)
        return _finish(instance, arcs)
    result = kernelize_ddseqc(d, instance.target)
    if result.verdict is KernelVerdict.TRIVIAL_NO:
        return None
    if result.verdict is KernelVerdict.TRIVIAL_YES:
        return _finish(instance, ())
    if result.verdict is KernelVerdict.UNCHANGED:
        return solve_bounded(instance)
    inner = solve_bounded(result.instance, restrict_to=set(result.kept))
    return _lifted(instance, result, inner)


def _solve_anonymity(instance: AnonymityCompletion) -> Solution | None:
    d = instance.digraph
    k = instance.anonymity
    s = min(instance.budget, _capacity(d))
    sequence = degree_sequence(d)
    roof = max(d.n - 1, 0)
    while True:
        cap = min(dda_delta_star_cap(d, k, s), roof)
        threshold = 2 * cap * cap
        if s <= threshold:
            break
        for budget in range(threshold + 1, s + 1):
            number = solve_nda(sequence, budget, k, cap)
            if number is not None:
                arcs = realize_demands(d, number.demands, cap)
                return _finish(instance, arcs)
        s = threshold
    result = kernelize_dda(d, k, s)
    if result.verdict is KernelVerdict.TRIVIAL_NO:
        return None
    if result.verdict is KernelVerdict.TRIVIAL_YES:
        return _finish(instance, ())
    if result.verdict is KernelVerdict.UNCHANGED:
        return solve_bounded(result.instance)
    inner = solve_bounded(result.instance, restrict_to=set(result.kept))
    return _lifted(instance, result, inner)


def solve(instance: ProblemInstance) -> Solution | None:
    """Exact decision and witness for any of the three completion problems.

    Large budgets go through the degree-sequence route (number problem plus
    flow realization), small budgets through kernelization plus bounded
    search.  Every returned solution re-verifies against the original
    instance; identical inputs produce identical solutions.
    """
    if isinstance(instance, ListCompletion):
        return _solve_list(instance)
    if isinstance(instance, SequenceCompletion):
        return _solve_sequence(instance)
    if isinstance(instance, AnonymityCompletion):
        return _solve_anonymity(instance)
    raise TypeError(f"unknown instance {instance!r}")
