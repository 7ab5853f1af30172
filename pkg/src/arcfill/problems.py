"""Instance types for the three digraph completion problems.

Wire names (used by the CLI and file formats): ``ddconc`` for per-vertex
degree-list completion, ``ddseqc`` for exact-target-sequence completion,
``dda`` for k-anonymous completion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .core import DegreeListFunction, DegreeSequence, Digraph, degree_sequence


@dataclass(frozen=True)
class ListCompletion:
    """Insert at most ``budget`` arcs so every vertex hits an allowed pair."""

    digraph: Digraph
    budget: int
    allowed: DegreeListFunction

    def __post_init__(self):
        if self.budget < 0:
            raise ValueError("budget must be nonnegative")
        if len(self.allowed) != self.digraph.n:
            raise ValueError("allowed lists must cover every vertex")

    kind = "ddconc"


@dataclass(frozen=True)
class SequenceCompletion:
    """Insert arcs so the degree sequence equals ``target`` as a multiset."""

    digraph: Digraph
    target: DegreeSequence

    def __post_init__(self):
        if len(self.target) != self.digraph.n:
            raise ValueError("target length must equal vertex count")

    kind = "ddseqc"

    def implied_insertions(self) -> int | None:
        """Arc count forced by the target, or None if the totals are invalid."""
        grow_in = self.target.sum_indeg - sum(
            self.digraph.indegree(v) for v in range(self.digraph.n)
        )
        grow_out = self.target.sum_outdeg - sum(
            self.digraph.outdegree(v) for v in range(self.digraph.n)
        )
        if grow_in != grow_out or grow_in < 0:
            return None
        return grow_in


@dataclass(frozen=True)
class AnonymityCompletion:
    """Insert at most ``budget`` arcs so every degree pair occurs >= k times."""

    digraph: Digraph
    anonymity: int
    budget: int

    def __post_init__(self):
        if self.anonymity < 1:
            raise ValueError("anonymity level must be positive")
        if self.budget < 0:
            raise ValueError("budget must be nonnegative")

    kind = "dda"


ProblemInstance = Union[ListCompletion, SequenceCompletion, AnonymityCompletion]


def dda_delta_star_cap(d: Digraph, k: int, s: int) -> int:
    """Upper bound on the max in-/outdegree of any minimal anonymized digraph.

    Minimum-size solutions never raise the maximum degree beyond
    4*k*(max_degree + 2)^2 + max_degree, and s insertions can add at most s
    to any single degree; the cap is the smaller of the two.
    """
    delta = d.max_degree
    return min(delta + s, 4 * k * (delta + 2) * (delta + 2) + delta)


def delta_star_cap(instance: ProblemInstance) -> int:
    """Variant-specific cap on the max in-/outdegree of any solution digraph.

    Always clamped to n - 1 since no simple digraph on n vertices can exceed
    it; this keeps demand realization applicable whenever the cap is beaten
    by the budget.
    """
    d = instance.digraph
    roof = max(d.n - 1, 0)
    if isinstance(instance, ListCompletion):
        return min(instance.allowed.bound, d.max_degree + instance.budget, roof)
    if isinstance(instance, SequenceCompletion):
        return min(instance.target.max_component, roof)
    if isinstance(instance, AnonymityCompletion):
        return min(
            dda_delta_star_cap(d, instance.anonymity, instance.budget), roof
        )
    raise TypeError(f"unknown instance {instance!r}")


def instance_sequence(instance: ProblemInstance) -> DegreeSequence:
    return degree_sequence(instance.digraph)
