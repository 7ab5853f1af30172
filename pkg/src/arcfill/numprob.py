"""Exact solvers for the degree-sequence number problems.

These solvers work purely on integer tuple sequences: raise entries
componentwise, spending exactly a prescribed budget per component, so that
per-index allowed lists, a target multiset, or an anonymity requirement is
met.  They decide the sequence relaxations of the corresponding digraph
completion problems and reconstruct witness sequences.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DegreeListFunction, DegreePair, DegreeSequence
from .flow import DemandVector


class LengthMismatchError(ValueError):
    """Two sequences that must be index-aligned have different lengths."""


class NegativeDemandError(ValueError):
    """A target entry is componentwise below its source entry."""


class OddSumError(ValueError):
    """Partition input does not sum to an even total."""


class ElementTooLargeError(ValueError):
    """Partition input contains an element at least half the total."""


@dataclass(frozen=True)
class NumberSolution:
    """Witness for a number problem: output sequence plus its increments.

    ``target`` is index-aligned with the input sequence and ``demands``
    holds the componentwise differences.
    """

    target: DegreeSequence
    demands: DemandVector


@dataclass(frozen=True)
class Bijection:
    """A permutation of 0..n-1, stored as the image tuple."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(n)):
            raise ValueError("mapping is not a permutation")

    def __getitem__(self, i: int) -> int:
        return self.mapping[i]

    def __len__(self) -> int:
        return len(self.mapping)


@dataclass(frozen=True)
class BlockTransitionPlan:
    """How many tuples move from each input block to each output type.

    ``transitions`` maps (input type, output type) to a positive count;
    ``used`` is the set of output types receiving at least one tuple;
    ``max_value`` bounds every output component.
    """

    max_value: int
    transitions: tuple[tuple[DegreePair, DegreePair, int], ...]
    used: frozenset[DegreePair]

    def validate(self, sigma: DegreeSequence, s: int, k: int) -> None:
        counts = sigma.as_multiset()
        outgoing: dict[DegreePair, int] = {}
        inflow: dict[DegreePair, int] = {}
        spent_in = spent_out = 0
        for source, dest, count in self.transitions:
            if count <= 0:
                raise AssertionError("transition counts must be positive")
            if not dest.dominates(source):
                raise AssertionError(f"transition {source} -> {dest} decreases")
            if dest.max_component > self.max_value:
                raise AssertionError(f"output {dest} exceeds {self.max_value}")
            outgoing[source] = outgoing.get(source, 0) + count
            inflow[dest] = inflow.get(dest, 0) + count
            spent_in += count * (dest.indeg - source.indeg)
            spent_out += count * (dest.outdeg - source.outdeg)
        if outgoing != dict(counts):
            raise AssertionError("transitions do not cover every input block")
        if spent_in != s or spent_out != s:
            raise AssertionError("transition costs do not match the budget")
        if set(inflow) != set(self.used):
            raise AssertionError("used set disagrees with transitions")
        if any(count < k for count in inflow.values()):
            raise AssertionError("a used output type receives fewer than k tuples")


def demands_from_solution(
    sigma: DegreeSequence, target: DegreeSequence
) -> DemandVector:
    """Componentwise increments turning sigma into target."""
    if len(sigma) != len(target):
        raise LengthMismatchError(
            f"sequence lengths differ: {len(sigma)} vs {len(target)}"
        )
    in_demand = []
    out_demand = []
    for i, (src, dst) in enumerate(zip(sigma, target)):
        if not dst.dominates(src):
            raise NegativeDemandError(
                f"entry {i}: target {tuple(dst)} below source {tuple(src)}"
            )
        in_demand.append(dst.indeg - src.indeg)
        out_demand.append(dst.outdeg - src.outdeg)
    return DemandVector(tuple(in_demand), tuple(out_demand))


def solve_nddcc(
    sigma: DegreeSequence, s: int, lists: DegreeListFunction
) -> NumberSolution | None:
    """Raise entries into their allowed lists spending exactly s per component.

    Dynamic program over prefixes: cell (i, j, l) is reachable when the first
    i entries admit allowed targets whose increments sum to j on the first
    and l on the second component.  Parent pointers record the chosen pair
    per cell for reconstruction.
    """
    n = len(sigma)
    if len(lists) != n:
        raise LengthMismatchError(
            f"list function covers {len(lists)} entries, sequence has {n}"
        )
    if s < 0:
        raise ValueError("budget must be nonnegative")
    reachable: set[tuple[int, int]] = {(0, 0)}
    parents: list[dict[tuple[int, int], DegreePair]] = []
    for i in range(n):
        entry = sigma[i]
        moves = [
            (pair, pair.indeg - entry.indeg, pair.outdeg - entry.outdeg)
            for pair in sorted(lists[i])
            if pair.dominates(entry)
        ]
        level: dict[tuple[int, int], DegreePair] = {}
        for (j, l) in sorted(reachable):
            for pair, dc, dd in moves:
                nj, nl = j + dc, l + dd
                if nj <= s and nl <= s and (nj, nl) not in level:
                    level[(nj, nl)] = pair
        parents.append(level)
        reachable = set(level)
        if not reachable:
            return None
    if (s, s) not in reachable:
        return None
    target: list[DegreePair] = [DegreePair(0, 0)] * n
    j, l = s, s
    for i in range(n - 1, -1, -1):
        pair = parents[i][(j, l)]
        target[i] = pair
        j -= pair.indeg - sigma[i].indeg
        l -= pair.outdeg - sigma[i].outdeg
    assert (j, l) == (0, 0)
    result = DegreeSequence(target)
    return NumberSolution(result, demands_from_solution(sigma, result))


def satisfies_nddcc(
    sigma: DegreeSequence, s: int, lists: DegreeListFunction, sol: NumberSolution
) -> bool:
    """Definition-level check of a claimed witness."""
    if len(sol.target) != len(sigma):
        return False
    spent_in = spent_out = 0
    for i, (src, dst) in enumerate(zip(sigma, sol.target)):
        if not dst.dominates(src) or dst not in lists[i]:
            return False
        spent_in += dst.indeg - src.indeg
        spent_out += dst.outdeg - src.outdeg
    return spent_in == s == spent_out


def solve_nddsc(sigma: DegreeSequence, phi: DegreeSequence) -> Bijection | None:
    """Match each entry of sigma to a dominating entry of phi, bijectively.

    Maximum bipartite matching by augmenting paths on the dominance graph;
    the answer is yes exactly when the matching is perfect.
    """
    n = len(sigma)
    if len(phi) != n:
        raise LengthMismatchError(f"sequence lengths differ: {n} vs {len(phi)}")
    adjacency = [
        [j for j in range(n) if phi[j].dominates(sigma[i])] for i in range(n)
    ]
    match_right = [-1] * n

    def augment(i: int, seen: list[bool]) -> bool:
        for j in adjacency[i]:
            if not seen[j]:
                seen[j] = True
                if match_right[j] < 0 or augment(match_right[j], seen):
                    match_right[j] = i
                    return True
        return False

    matched = 0
    for i in range(n):
        if augment(i, [False] * n):
            matched += 1
    if matched < n:
        return None
    mapping = [0] * n
    for j, i in enumerate(match_right):
        mapping[i] = j
    return Bijection(tuple(mapping))


def satisfies_nddsc(
    sigma: DegreeSequence, phi: DegreeSequence, pi: Bijection
) -> bool:
    return len(pi) == len(sigma) == len(phi) and all(
        phi[pi[i]].dominates(sigma[i]) for i in range(len(sigma))
    )


def _plausible_targets(
    source: DegreePair,
    type_counts: list[tuple[DegreePair, int]],
    s: int,
    k: int,
    max_value: int,
) -> list[tuple[DegreePair, int]]:
    """Candidate outputs for ``source`` with their minimal combined cost.

    A candidate must dominate the source, stay within ``max_value``, cost at
    most s per component for a single tuple, and have enough affordable
    senders across all input blocks to ever reach k occupants.
    """
    results = []
    for a in range(source.indeg, min(max_value, source.indeg + s) + 1):
        for b in range(source.outdeg, min(max_value, source.outdeg + s) + 1):
            dest = DegreePair(a, b)
            reachable = 0
            for t, count in type_counts:
                if (
                    dest.dominates(t)
                    and a - t.indeg <= s
                    and b - t.outdeg <= s
                ):
                    reachable += count
                    if reachable >= k:
                        break
            if reachable >= k:
                results.append((dest, (a - source.indeg) + (b - source.outdeg)))
    return results


def solve_nda(
    sigma: DegreeSequence, s: int, k: int, max_value: int
) -> NumberSolution | None:
    """Spend exactly s per component so every output tuple occurs >= k times.

    Exact depth-first search over block transition counts: input blocks are
    processed in ascending type order and each block's tuples are distributed
    over candidate output types.  Branches die on budget overruns, on opened
    output types that no remaining block can still afford to fill up to k,
    on suffix capacity that cannot absorb the remaining budget, and on
    mandatory move costs (blocks that can never legally stay put) exceeding
    the remaining budget.
    """
    if k < 1:
        raise ValueError("anonymity level must be positive")
    if s < 0:
        raise ValueError("budget must be nonnegative")
    n = len(sigma)
    if max_value < sigma.max_component:
        raise ValueError(
            f"max_value {max_value} below largest input component "
            f"{sigma.max_component}"
        )
    if n == 0:
        if s == 0:
            return NumberSolution(DegreeSequence(()), DemandVector((), ()))
        return None

    type_counts = sorted(sigma.as_multiset().items())
    types = [t for t, _ in type_counts]
    counts = [c for _, c in type_counts]
    num_types = len(types)

    # Per-tuple spending caps and mandatory move costs, used as suffix bounds.
    in_cap = [min(s, max_value - t.indeg) for t in types]
    out_cap = [min(s, max_value - t.outdeg) for t in types]
    suffix_in = [0] * (num_types + 1)
    suffix_out = [0] * (num_types + 1)
    for i in range(num_types - 1, -1, -1):
        suffix_in[i] = suffix_in[i + 1] + counts[i] * in_cap[i]
        suffix_out[i] = suffix_out[i + 1] + counts[i] * out_cap[i]
    if suffix_in[0] < s or suffix_out[0] < s:
        return None

    min_cost = []
    candidate_cache: dict[DegreePair, list[tuple[DegreePair, int]]] = {}
    for t in types:
        plausible = _plausible_targets(t, type_counts, s, k, max_value)
        if not plausible:
            return None
        candidate_cache[t] = plausible
        min_cost.append(min(cost for _, cost in plausible))
    suffix_mandatory = [0] * (num_types + 1)
    for i in range(num_types - 1, -1, -1):
        suffix_mandatory[i] = suffix_mandatory[i + 1] + counts[i] * min_cost[i]

    inflow: dict[DegreePair, int] = {}
    chosen: dict[tuple[DegreePair, DegreePair], int] = {}

    def deficits_hopeless(next_type: int, rem_in: int, rem_out: int) -> bool:
        for dest, count in inflow.items():
            if 0 < count < k:
                feasible = any(
                    dest.dominates(types[j])
                    and dest.indeg - types[j].indeg <= rem_in
                    and dest.outdeg - types[j].outdeg <= rem_out
                    for j in range(next_type, num_types)
                )
                if not feasible:
                    return True
        return False

    def distribute(
        type_index: int,
        cand_index: int,
        items_left: int,
        rem_in: int,
        rem_out: int,
        candidates: list[DegreePair],
    ) -> bool:
        # Zero-count assignments advance iteratively, so the recursion depth
        # is bounded by the number of nonzero assignments, not the grid size.
        source = types[type_index]
        while True:
            if items_left == 0:
                return search(type_index + 1, rem_in, rem_out)
            if cand_index == len(candidates):
                return False
            dest = candidates[cand_index]
            dc = dest.indeg - source.indeg
            dd = dest.outdeg - source.outdeg
            top = items_left
            if dc:
                top = min(top, rem_in // dc)
            if dd:
                top = min(top, rem_out // dd)
            for count in range(top, 0, -1):
                inflow[dest] = inflow.get(dest, 0) + count
                chosen[(source, dest)] = count
                if distribute(
                    type_index,
                    cand_index + 1,
                    items_left - count,
                    rem_in - count * dc,
                    rem_out - count * dd,
                    candidates,
                ):
                    return True
                inflow[dest] -= count
                if inflow[dest] == 0:
                    del inflow[dest]
                del chosen[(source, dest)]
            cand_index += 1

    def search(type_index: int, rem_in: int, rem_out: int) -> bool:
        if rem_in > suffix_in[type_index] or rem_out > suffix_out[type_index]:
            return False
        if suffix_mandatory[type_index] > rem_in + rem_out:
            return False
        if deficits_hopeless(type_index, rem_in, rem_out):
            return False
        if type_index == num_types:
            return rem_in == 0 and rem_out == 0
        source = types[type_index]
        candidates = [
            dest
            for dest, _ in candidate_cache[source]
            if dest.indeg - source.indeg <= rem_in
            and dest.outdeg - source.outdeg <= rem_out
        ]
        if not candidates:
            return False
        return distribute(
            type_index, 0, counts[type_index], rem_in, rem_out, candidates
        )

    if not search(0, s, s):
        return None

    # Expand the block plan to an index-aligned output: within each input
    # block, ascending indices take output types in ascending order.
    queues: dict[DegreePair, list[DegreePair]] = {}
    for (source, dest), count in sorted(chosen.items()):
        queues.setdefault(source, []).extend([dest] * count)
    pointers = {t: 0 for t in queues}
    target = []
    for entry in sigma:
        queue = queues[entry]
        target.append(queue[pointers[entry]])
        pointers[entry] += 1
    result = DegreeSequence(target)
    return NumberSolution(result, demands_from_solution(sigma, result))


def plan_from_solution(
    sigma: DegreeSequence, sol: NumberSolution, max_value: int
) -> BlockTransitionPlan:
    """Summarize an index-aligned witness as block transition counts."""
    moves: dict[tuple[DegreePair, DegreePair], int] = {}
    for src, dst in zip(sigma, sol.target):
        moves[(src, dst)] = moves.get((src, dst), 0) + 1
    return BlockTransitionPlan(
        max_value=max_value,
        transitions=tuple(
            (src, dst, count) for (src, dst), count in sorted(moves.items())
        ),
        used=frozenset(dst for (_, dst) in moves),
    )


def satisfies_nda(
    sigma: DegreeSequence, s: int, k: int, sol: NumberSolution, max_value: int | None = None
) -> bool:
    """Definition-level check of a claimed witness."""
    if len(sol.target) != len(sigma):
        return False
    spent_in = spent_out = 0
    for src, dst in zip(sigma, sol.target):
        if not dst.dominates(src):
            return False
        if max_value is not None and dst.max_component > max_value:
            return False
        spent_in += dst.indeg - src.indeg
        spent_out += dst.outdeg - src.outdeg
    return spent_in == s == spent_out and sol.target.is_k_anonymous(k)


def reduce_partition_to_nda(values) -> tuple[DegreeSequence, int, int]:
    """Build an anonymity number instance from a multiset of positive integers.

    The instance is a yes-instance exactly when some subset of the input sums
    to half the total.  Per element a_i (1-based position i, half-total B)
    the sequence receives one tuple (2B(i+1) - a_i, 0), two tuples
    (2B(i+1), 0), and two tuples (2B(i+1) - a_i, a_i); the budget is B and
    the anonymity level 2.
    """
    values = [int(a) for a in values]
    if not values or any(a <= 0 for a in values):
        raise ValueError("input must be a nonempty multiset of positive integers")
    total = sum(values)
    if total % 2 != 0:
        raise OddSumError(f"values sum to odd total {total}")
    half = total // 2
    too_big = [a for a in values if a > half]
    if too_big:
        raise ElementTooLargeError(
            f"element {too_big[0]} exceeds half the total {half}"
        )
    entries = []
    for position, a in enumerate(values, start=1):
        base = 2 * half * (position + 1)
        entries.append((base - a, 0))
        entries.append((base, 0))
        entries.append((base, 0))
        entries.append((base - a, a))
        entries.append((base - a, a))
    return DegreeSequence(entries), half, 2
