"""Kernelization: shrink instances to equivalent ones of bounded size.

The common engine keeps all unsatisfied vertices plus a bounded number of
satisfied representatives per interchangeability class (type, degree block,
or both).  Interchangeable vertices can replace each other in any solution,
so a quota of ``2 * budget * (max_degree + 1)`` representatives per class
preserves the answer.  The three kernelizers differ in how they repair the
damage that deleting vertices does to the remaining degrees.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .core import (
    DegreeListFunction,
    DegreePair,
    DegreeSequence,
    Digraph,
    degree_sequence,
    is_satisfied,
    vertex_types,
)
from .problems import (
    AnonymityCompletion,
    ListCompletion,
    ProblemInstance,
    SequenceCompletion,
)

Arc = tuple[int, int]


class SolutionTouchesAddedVertexError(ValueError):
    """A kernel solution uses a repair vertex, so it cannot be lifted."""


class AlphaSetVariant(Enum):
    TYPE_SET = "type"
    BLOCK_SET = "block"
    BLOCK_TYPE_SET = "block_type"


class KernelVerdict(Enum):
    REDUCED = "reduced"
    TRIVIAL_YES = "trivial_yes"
    TRIVIAL_NO = "trivial_no"
    UNCHANGED = "unchanged"


class TrivialNoReason(Enum):
    TOO_MANY_UNSATISFIED = "too_many_unsatisfied"
    DEGREE_EXCEEDS_CAP = "degree_exceeds_cap"
    TARGET_MAX_TOO_SMALL = "target_max_too_small"
    INSERTION_COUNTS_INVALID = "insertion_counts_invalid"
    BLOCK_SHRINKS_TOO_MUCH = "block_shrinks_too_much"
    BLOCK_SIZE_GAP = "block_size_gap"
    NOT_ANONYMOUS_WITHOUT_BUDGET = "not_anonymous_without_budget"


@dataclass(frozen=True)
class AlphaSetSpec:
    """Quota and classing rule for representative selection."""

    alpha: int
    variant: AlphaSetVariant
    cap: int = 0

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("alpha must be positive")
        if self.cap < 0:
            raise ValueError("cap must be nonnegative")


@dataclass(frozen=True)
class KernelResult:
    """Reduced instance plus the bookkeeping needed to lift solutions back.

    ``kept`` maps kernel vertex indices to original indices; ``added`` holds
    kernel vertices with no original counterpart (degree-repair vertices).
    """

    verdict: KernelVerdict
    instance: ProblemInstance | None
    kept: dict[int, int] = field(default_factory=dict)
    added: frozenset[int] = frozenset()
    reason: TrivialNoReason | None = None


def compute_alpha_set(
    d: Digraph, lists: DegreeListFunction | None, spec: AlphaSetSpec
) -> set[int]:
    """All unsatisfied vertices plus per-class satisfied representatives.

    Scanning vertices in ascending index order, a satisfied vertex joins the
    set while any of its classes is below the quota; every scanned vertex
    counts against all of its classes.  With ``lists`` None (block variant
    without per-vertex constraints) every vertex counts as satisfied.
    """
    result: set[int] = set()
    counters: Counter = Counter()
    for v in range(d.n):
        if lists is not None and not is_satisfied(d, lists, v):
            result.add(v)
            continue
        if spec.variant is AlphaSetVariant.BLOCK_SET:
            keys = [d.degree(v)]
        else:
            types = vertex_types(d, lists, v, spec.cap) - {DegreePair(0, 0)}
            if spec.variant is AlphaSetVariant.TYPE_SET:
                keys = sorted(types)
            else:
                deg = d.degree(v)
                keys = [(deg, t) for t in sorted(types)]
        if any(counters[key] < spec.alpha for key in keys):
            result.add(v)
        for key in keys:
            counters[key] += 1
    return result


def reduce_trivial_no(
    d: Digraph, s: int, lists: DegreeListFunction, delta_star: int
) -> TrivialNoReason | None:
    """Cheap no-detectors: too many unsatisfied vertices, or a degree already
    above the solution cap.  Returns None when neither applies."""
    unsatisfied = sum(1 for v in range(d.n) if not is_satisfied(d, lists, v))
    if unsatisfied > 2 * s:
        return TrivialNoReason.TOO_MANY_UNSATISFIED
    for v in range(d.n):
        if d.indegree(v) > delta_star or d.outdegree(v) > delta_star:
            return TrivialNoReason.DEGREE_EXCEEDS_CAP
    return None


def _quota(s: int, max_degree: int) -> int:
    return max(1, 2 * s * (max_degree + 1))


def kernelize_ddconc(
    d: Digraph, s: int, lists: DegreeListFunction, delta_star: int
) -> KernelResult:
    """Kernel for degree-list completion.

    Keeps a type-set of representatives and drops everyone else, shifting
    each survivor's allowed list down by the degree contributed by dropped
    neighbors.  Kernel vertex count is at most
    ``2s + (delta_star + 1)^2 * 2s*(max_degree + 1)``.
    """
    reason = reduce_trivial_no(d, s, lists, delta_star)
    if reason is not None:
        return KernelResult(KernelVerdict.TRIVIAL_NO, None, reason=reason)
    if s == 0:
        # Rule out above left no unsatisfied vertex, so nothing is needed.
        return KernelResult(KernelVerdict.TRIVIAL_YES, None)
    spec = AlphaSetSpec(_quota(s, d.max_degree), AlphaSetVariant.TYPE_SET, delta_star)
    chosen = compute_alpha_set(d, lists, spec)
    kept = sorted(chosen)
    kept_set = set(kept)
    kernel_digraph = d.induced(kept)
    adjusted = []
    for v in kept:
        lost_in = sum(1 for u in d.in_neighbors(v) if u not in kept_set)
        lost_out = sum(1 for u in d.out_neighbors(v) if u not in kept_set)
        adjusted.append(
            sorted(
                pair - (lost_in, lost_out)
                for pair in lists[v]
                if pair.indeg - lost_in >= 0
                and pair.outdeg - lost_out >= 0
                and pair.indeg - lost_in <= delta_star
                and pair.outdeg - lost_out <= delta_star
            )
        )
    kernel_lists = DegreeListFunction(adjusted, bound=delta_star)
    instance = ListCompletion(kernel_digraph, s, kernel_lists)
    kept_map = {i: orig for i, orig in enumerate(kept)}
    if len(kept) == d.n and kernel_lists.lists == lists.lists:
        return KernelResult(KernelVerdict.UNCHANGED, instance, kept_map)
    return KernelResult(KernelVerdict.REDUCED, instance, kept_map)


def kernelize_ddseqc(d: Digraph, target: DegreeSequence) -> KernelResult:
    """Kernel for exact-sequence completion.

    Keeps a block-set of representatives, then restores every survivor's
    original degree with arcs from/to a clique of ``max(target) + 2`` fresh
    dummy vertices.  Dummy degrees land strictly above every target
    component, so no solution of the kernel can touch them; the target is
    rewritten by dropping the degrees of deleted vertices and adding the
    dummies' degrees.
    """
    sequence = degree_sequence(d)
    if (
        d.max_indegree > target.max_indeg
        or d.max_outdegree > target.max_outdeg
    ):
        return KernelResult(
            KernelVerdict.TRIVIAL_NO, None, reason=TrivialNoReason.TARGET_MAX_TOO_SMALL
        )
    grow_in = target.sum_indeg - sequence.sum_indeg
    grow_out = target.sum_outdeg - sequence.sum_outdeg
    if grow_in != grow_out or grow_in < 0:
        return KernelResult(
            KernelVerdict.TRIVIAL_NO,
            None,
            reason=TrivialNoReason.INSERTION_COUNTS_INVALID,
        )
    s = grow_in
    # Insertions move at most 2s vertices out of a block, so a block that
    # overfills its target multiplicity by more than 2s is unfixable.
    target_counts = target.as_multiset()
    current_counts = sequence.as_multiset()
    for pair, count in sorted(current_counts.items()):
        if count > target_counts.get(pair, 0) + 2 * s:
            return KernelResult(
                KernelVerdict.TRIVIAL_NO,
                None,
                reason=TrivialNoReason.BLOCK_SHRINKS_TOO_MUCH,
            )
    if s == 0:
        # The block check above forces multiset equality when nothing may
        # be inserted.
        return KernelResult(KernelVerdict.TRIVIAL_YES, None)
    spec = AlphaSetSpec(_quota(s, d.max_degree), AlphaSetVariant.BLOCK_SET)
    chosen = compute_alpha_set(d, None, spec)
    if len(chosen) == d.n:
        instance = SequenceCompletion(d, target)
        return KernelResult(
            KernelVerdict.UNCHANGED, instance, {v: v for v in range(d.n)}
        )
    kept = sorted(chosen)
    kept_set = set(kept)
    base = len(kept)
    dummies = target.max_component + 2
    index = {orig: i for i, orig in enumerate(kept)}
    arcs = [
        (index[u], index[v]) for (u, v) in d.arcs if u in kept_set and v in kept_set
    ]
    arcs += [
        (base + i, base + j)
        for i in range(dummies)
        for j in range(dummies)
        if i != j
    ]
    for orig in kept:
        v = index[orig]
        repair_in = sum(1 for u in d.in_neighbors(orig) if u not in kept_set)
        repair_out = sum(1 for u in d.out_neighbors(orig) if u not in kept_set)
        arcs += [(base + i, v) for i in range(repair_in)]
        arcs += [(v, base + i) for i in range(repair_out)]
    kernel_digraph = Digraph(base + dummies, arcs)
    removed = Counter(d.degree(v) for v in range(d.n) if v not in kept_set)
    entries = []
    for pair in target:
        if removed.get(pair, 0) > 0:
            removed[pair] -= 1
            continue
        entries.append(pair)
    entries += [kernel_digraph.degree(base + i) for i in range(dummies)]
    instance = SequenceCompletion(kernel_digraph, DegreeSequence(entries))
    return KernelResult(
        KernelVerdict.REDUCED,
        instance,
        {i: orig for i, orig in enumerate(kept)},
        frozenset(range(base, base + dummies)),
    )


def kernelize_dda(d: Digraph, k: int, s: int) -> KernelResult:
    """Kernel for anonymous completion, parameterized by budget and degree.

    Retains per block either everything (small blocks), a capped count, or
    a count preserving the block's distance to the anonymity level; restores
    survivor degrees with fresh in-/out-repair vertices; and welds the repair
    vertices into two cliques joined completely so their degrees stay out of
    reach of any s-arc solution.  Blocks sized strictly between ``2s`` and
    ``k - 2s`` are unfixable, and the anonymity level itself is lowered to
    ``(max_degree + 2) * 2s`` when larger.
    """
    if k < 1:
        raise ValueError("anonymity level must be positive")
    if s < 0:
        raise ValueError("budget must be nonnegative")
    sequence = degree_sequence(d)
    if s == 0:
        # No insertions allowed: the answer is already decided.
        if sequence.is_k_anonymous(k):
            return KernelResult(KernelVerdict.TRIVIAL_YES, None)
        return KernelResult(
            KernelVerdict.TRIVIAL_NO,
            None,
            reason=TrivialNoReason.NOT_ANONYMOUS_WITHOUT_BUDGET,
        )
    delta = d.max_degree
    beta = (delta + 2) * 2 * s
    if d.n <= (delta + 1) * (delta + 1) * (beta + 2 * s):
        instance = AnonymityCompletion(d, k, s)
        return KernelResult(
            KernelVerdict.UNCHANGED, instance, {v: v for v in range(d.n)}
        )
    k_new = min(k, beta)
    members: dict[DegreePair, list[int]] = {}
    for v in range(d.n):
        members.setdefault(d.degree(v), []).append(v)
    chosen: list[int] = []
    for pair in sorted(members):
        block = members[pair]
        size = len(block)
        if 2 * s < size < k - 2 * s:
            return KernelResult(
                KernelVerdict.TRIVIAL_NO, None, reason=TrivialNoReason.BLOCK_SIZE_GAP
            )
        if k <= beta:
            keep = min(size, beta + 2 * s)
        elif size <= 2 * s:
            keep = size
        else:
            keep = k_new + min(2 * s, size - k)
        chosen.extend(block[:keep])
    kept = sorted(chosen)
    kept_set = set(kept)
    index = {orig: i for i, orig in enumerate(kept)}
    arcs = [
        (index[u], index[v]) for (u, v) in d.arcs if u in kept_set and v in kept_set
    ]
    next_id = len(kept)
    receivers: list[int] = []  # repair vertices with one incoming arc
    senders: list[int] = []  # repair vertices with one outgoing arc
    for orig in kept:
        v = index[orig]
        for u in d.out_neighbors(orig):
            if u not in kept_set:
                arcs.append((v, next_id))
                receivers.append(next_id)
                next_id += 1
        for u in d.in_neighbors(orig):
            if u not in kept_set:
                arcs.append((next_id, v))
                senders.append(next_id)
                next_id += 1
    floor = max(delta + s + 1, k_new)
    while min(len(receivers), len(senders)) < floor:
        receiver, sender = next_id, next_id + 1
        next_id += 2
        arcs.append((sender, receiver))
        receivers.append(receiver)
        senders.append(sender)
    arcs += [(u, v) for u in receivers for v in receivers if u != v]
    arcs += [(u, v) for u in senders for v in senders if u != v]
    arcs += [(u, v) for u in receivers for v in senders]
    kernel_digraph = Digraph(next_id, arcs)
    instance = AnonymityCompletion(kernel_digraph, k_new, s)
    return KernelResult(
        KernelVerdict.REDUCED,
        instance,
        {i: orig for i, orig in enumerate(kept)},
        frozenset(receivers) | frozenset(senders),
    )


def lift_solution(result: KernelResult, kernel_solution) -> set[Arc]:
    """Map a kernel solution's arcs back to original vertex indices."""
    arcs = set(tuple(arc) for arc in kernel_solution)
    if result.verdict is KernelVerdict.TRIVIAL_NO:
        raise ValueError("a trivial no-instance has no solutions to lift")
    if result.verdict is KernelVerdict.TRIVIAL_YES:
        if arcs:
            raise ValueError("trivial yes-instances only admit the empty solution")
        return set()
    lifted = set()
    for (u, v) in sorted(arcs):
        if u in result.added or v in result.added:
            raise SolutionTouchesAddedVertexError(
                f"kernel arc ({u}, {v}) touches a repair vertex"
            )
        lifted.add((result.kept[u], result.kept[v]))
    return lifted
