"""Crown decompositions: the data type, a verifier, and the constructive
routine that finds either a matching of a requested size or a crown.

A crown decomposition splits the vertex set into an independent crown C,
a head H separating C from the rest R, together with a matching of H into C.
R may be empty (a star with its center as the head needs that), but C and H
may not.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .graph import (
    Graph,
    Matching,
    greedy_maximal_matching,
    mask_of,
    matching_is_valid,
    max_bipartite_matching,
    min_vertex_cover_bipartite,
)


class CrownConstructionError(RuntimeError):
    """The constructive routine produced neither a matching nor a crown.

    This indicates an internal bug, never a property of the input; it is
    raised loudly instead of emitting an invalid decomposition.
    """


@dataclass(frozen=True)
class CrownDecomposition:
    crown: frozenset[int]
    head: frozenset[int]
    body: frozenset[int]
    witness: tuple[tuple[int, int], ...]  # (head vertex, crown vertex) pairs


def check_crown(g: Graph, dec: CrownDecomposition) -> str | None:
    """Return None if ``dec`` is a valid crown decomposition of ``g``,
    otherwise a short reason code describing the violated clause."""
    crown, head, body = dec.crown, dec.head, dec.body
    if not crown:
        return "empty-crown"
    if not head:
        return "empty-head"
    parts = [crown, head, body]
    union: set[int] = set()
    total = 0
    for part in parts:
        union |= part
        total += len(part)
    if total != len(union) or union != set(range(g.n)):
        return "not-a-partition"

    crown_mask = mask_of(crown)
    body_mask = mask_of(body)
    for v in crown:
        if g.adj[v] & crown_mask:
            return "crown-not-independent"
        if g.adj[v] & body_mask:
            return "crown-body-edge"

    if len(dec.witness) != len(head):
        return "witness-size"
    heads = {h for h, _ in dec.witness}
    crowns = {c for _, c in dec.witness}
    if heads != set(head) or len(crowns) != len(head) or not crowns <= crown:
        return "witness-not-a-matching-of-head-into-crown"
    if not matching_is_valid(g, [tuple(e) for e in dec.witness]):
        return "witness-edges-invalid"
    return None


def verify_crown(g: Graph, dec: CrownDecomposition) -> bool:
    return check_crown(g, dec) is None


def find_crown_or_matching(g: Graph, k: int) -> Union[Matching, CrownDecomposition]:
    """Find either a matching of size exactly ``k`` or a crown decomposition.

    Requires k >= 1, at least 3k-2 vertices, and no isolated vertices.
    Construction: take a greedy maximal matching M; if it has k edges we are
    done.  Otherwise the unmatched vertices I form an independent set of size
    at least k.  A maximum bipartite matching between V(M) and I either has
    size k (done) or yields a Koenig cover X with |X| <= k-1 < |I|, from which
    H = X & V(M), C = I \\ X, R = the rest is a valid crown whose witness is
    the bipartite matching restricted to H.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if g.n < 3 * k - 2:
        raise ValueError(f"graph has {g.n} < 3k-2 = {3 * k - 2} vertices")
    if any(g.adj[v] == 0 for v in range(g.n)):
        raise ValueError("graph has isolated vertices")

    maximal = greedy_maximal_matching(g)
    if len(maximal) >= k:
        return maximal[:k]

    saturated = {v for e in maximal for v in e}
    independent = [v for v in range(g.n) if v not in saturated]
    cross = max_bipartite_matching(g, saturated, independent)
    if len(cross) >= k:
        return cross[:k]

    cover = min_vertex_cover_bipartite(g, saturated, independent, cross)
    head = frozenset(cover & saturated)
    crown = frozenset(set(independent) - cover)
    if not head or not crown:
        raise CrownConstructionError(
            f"degenerate crown (|H|={len(head)}, |C|={len(crown)}) on n={g.n}, k={k}"
        )
    body = frozenset(set(range(g.n)) - head - crown)
    witness = tuple(sorted((a, b) for a, b in cross if a in head))
    dec = CrownDecomposition(crown=crown, head=head, body=body, witness=witness)
    reason = check_crown(g, dec)
    if reason is not None:
        raise CrownConstructionError(f"constructed crown failed verification: {reason}")
    return dec
