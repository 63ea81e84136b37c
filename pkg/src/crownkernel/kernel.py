"""The kernelization loop, its replayable reduction trace, and value lifting.

Two reduction rules shrink an instance (G, k):

* isolated-vertex removal, which keeps the capacity value and decrements the
  dual quantities (index coding length, minrank) by one per vertex, and
* the crown rule, which replaces G by G[R] for a crown decomposition
  (C, H, R), decrementing k by |H|; the capacity drops by exactly |H| and the
  dual quantities by exactly |C|.

Both rules are exact equalities, so a trace of the applied steps suffices to
lift values computed on the reduced graph back to the input graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

from .crown import CrownDecomposition, find_crown_or_matching, verify_crown
from .graph import Graph, K0, induced_subgraph, isolated_vertices, max_bipartite_matching

Problem = Literal["capacity", "index_coding", "minrank"]

CAPACITY: Problem = "capacity"
INDEX_CODING: Problem = "index_coding"
MINRANK: Problem = "minrank"


@dataclass(frozen=True)
class IsolatedRemoval:
    """Removal of isolated vertices, recorded in input-graph coordinates."""

    vertices: tuple[int, ...]

    kind = "isolated"


@dataclass(frozen=True)
class CrownReduction:
    """A crown step; all three sets are in input-graph coordinates."""

    crown: tuple[int, ...]
    head: tuple[int, ...]
    body: tuple[int, ...]

    kind = "crown"


ReductionStep = Union[IsolatedRemoval, CrownReduction]


@dataclass(frozen=True)
class ReductionTrace:
    input_n: int
    input_m: int
    input_k: int
    q: int | None
    steps: tuple[ReductionStep, ...]
    short_circuit: bool
    kernel_n: int
    kernel_k: int
    capacity_offset: int  # sum of |H| over crown steps
    dual_offset: int  # sum of |C| over crown steps + number of removed isolated vertices


def apply_isolated_rule(g: Graph) -> tuple[Graph, set[int]]:
    """Remove all isolated vertices; returns the reduced graph and the set removed."""
    removed = isolated_vertices(g)
    if not removed:
        return g, removed
    reduced, _ = induced_subgraph(g, set(range(g.n)) - removed)
    return reduced, removed


def apply_crown_rule(g: Graph, dec: CrownDecomposition, k: int) -> tuple[Graph, int]:
    """Replace (G, k) by (G[R], k - |H|) for a verified crown decomposition."""
    if not verify_crown(g, dec):
        raise ValueError("invalid crown decomposition")
    reduced, _ = induced_subgraph(g, dec.body)
    return reduced, k - len(dec.head)


def kernelize(g: Graph, k: int, q: int | None = None) -> tuple[Graph, int, ReductionTrace]:
    """Reduce (G, k) to an equivalent instance with at most max(3k'-3, 0) vertices.

    The loop follows the fixed step order: k-test, isolated removal, crown
    call, repeat.  A matching of size k short-circuits to the fixed YES
    instance (K0, 0), flagged on the trace so value lifting can refuse it.
    """
    steps: list[ReductionStep] = []
    capacity_offset = 0
    dual_offset = 0
    short_circuit = False
    cur = g
    to_input = list(range(g.n))
    kk = k

    while True:
        if kk <= 0:
            cur, kk = K0, 0
            break
        removed = isolated_vertices(cur)
        if removed:
            steps.append(IsolatedRemoval(tuple(sorted(to_input[v] for v in removed))))
            dual_offset += len(removed)
            keep = [v for v in range(cur.n) if v not in removed]
            cur, mapping = induced_subgraph(cur, keep)
            to_input = [to_input[old] for old in keep]
        if cur.n >= 3 * kk - 2:
            result = find_crown_or_matching(cur, kk)
            if isinstance(result, CrownDecomposition):
                steps.append(
                    CrownReduction(
                        crown=tuple(sorted(to_input[v] for v in result.crown)),
                        head=tuple(sorted(to_input[v] for v in result.head)),
                        body=tuple(sorted(to_input[v] for v in result.body)),
                    )
                )
                capacity_offset += len(result.head)
                dual_offset += len(result.crown)
                keep = sorted(result.body)
                cur, mapping = induced_subgraph(cur, keep)
                to_input = [to_input[old] for old in keep]
                kk -= len(result.head)
                continue
            short_circuit = True
            cur, kk = K0, 0
            break
        break

    trace = ReductionTrace(
        input_n=g.n,
        input_m=g.m,
        input_k=k,
        q=q,
        steps=tuple(steps),
        short_circuit=short_circuit,
        kernel_n=cur.n,
        kernel_k=kk,
        capacity_offset=capacity_offset,
        dual_offset=dual_offset,
    )
    return cur, kk, trace


def lift_value(trace: ReductionTrace, kernel_value: int, problem: Problem) -> int:
    """Lift an exact value computed on the trace's kernel graph to the input.

    For capacity the lifted quantity is the independence number of the
    confusion graph: alpha_input = alpha_kernel * q ** capacity_offset (the
    trace must carry q).  For index coding length and minrank the lift adds
    the dual offset.  Short-circuited traces carry an inequality, not an
    equality, and are refused.
    """
    if trace.short_circuit:
        raise ValueError("cannot lift values through a short-circuited trace")
    if problem == CAPACITY:
        if trace.q is None:
            raise ValueError("capacity lifting needs the alphabet size q on the trace")
        return kernel_value * trace.q ** trace.capacity_offset
    if problem in (INDEX_CODING, MINRANK):
        return kernel_value + trace.dual_offset
    raise ValueError(f"unknown problem {problem!r}")


def replay_trace(g: Graph, trace: ReductionTrace) -> Graph:
    """Re-apply the recorded steps to ``g`` and return the resulting graph.

    For non-short-circuit traces this reproduces the kernel graph exactly.
    """
    cur = g
    to_input = list(range(g.n))
    for step in trace.steps:
        if isinstance(step, IsolatedRemoval):
            removed = set(step.vertices)
        else:
            removed = set(step.crown) | set(step.head)
        keep = [v for v in range(cur.n) if to_input[v] not in removed]
        if len(keep) != cur.n - len(removed):
            raise ValueError("trace step removes vertices not present in the graph")
        cur, _ = induced_subgraph(cur, keep)
        to_input = [to_input[old] for old in keep]
    return cur


def verify_trace(g: Graph, trace: ReductionTrace) -> str | None:
    """Check a trace against its input graph; None if consistent, else a reason.

    Validates step applicability (removed vertices isolated, crown clauses
    hold with a full H-into-C matching), the recorded offsets, and the kernel
    size/parameter bookkeeping.
    """
    if trace.input_n != g.n:
        return "input-n-mismatch"
    if trace.input_m != g.m:
        return "input-m-mismatch"
    cur = g
    to_input = list(range(g.n))
    capacity_offset = 0
    dual_offset = 0
    for step in trace.steps:
        position = {inp: local for local, inp in enumerate(to_input)}
        if isinstance(step, IsolatedRemoval):
            locals_ = [position.get(v) for v in step.vertices]
            if any(v is None for v in locals_):
                return "isolated-step-unknown-vertex"
            if any(cur.adj[v] != 0 for v in locals_):
                return "isolated-step-vertex-not-isolated"
            dual_offset += len(step.vertices)
            removed = set(step.vertices)
        else:
            try:
                crown = {position[v] for v in step.crown}
                head = {position[v] for v in step.head}
                body = {position[v] for v in step.body}
            except KeyError:
                return "crown-step-unknown-vertex"
            if crown | head | body != set(range(cur.n)) or not crown or not head:
                return "crown-step-not-a-partition"
            crown_mask = sum(1 << v for v in crown)
            body_mask = sum(1 << v for v in body)
            for v in crown:
                if cur.adj[v] & (crown_mask | body_mask):
                    return "crown-step-separation-violated"
            matching = max_bipartite_matching(cur, head, crown)
            if len(matching) != len(head):
                return "crown-step-no-head-matching"
            capacity_offset += len(head)
            dual_offset += len(crown)
            removed = set(step.crown) | set(step.head)
        keep = [v for v in range(cur.n) if to_input[v] not in removed]
        cur, _ = induced_subgraph(cur, keep)
        to_input = [to_input[old] for old in keep]
    if capacity_offset != trace.capacity_offset:
        return "capacity-offset-mismatch"
    if dual_offset != trace.dual_offset:
        return "dual-offset-mismatch"
    if trace.short_circuit:
        if trace.kernel_n != 0 or trace.kernel_k != 0:
            return "short-circuit-kernel-not-sentinel"
        return None
    if trace.kernel_n not in (cur.n, 0):
        return "kernel-n-mismatch"
    if trace.kernel_n == 0 and cur.n != 0 and trace.kernel_k != 0:
        return "kernel-n-mismatch"
    return None
