"""Simple undirected graphs with bitset adjacency, plus the matching and
clique-cover subroutines shared by the reduction machinery.

Vertices are dense 0-based integers.  Neighbor sets are stored as Python
integer bitmasks; since Python integers are arbitrary-width, the same
representation serves every graph size we handle.  All tie-breaking is
lowest-id-first so every routine here is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

Edge = tuple[int, int]
Matching = list[Edge]
CliqueCover = list[frozenset[int]]


class GraphError(ValueError):
    """Malformed graph or out-of-range vertex argument."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on the vertex set {0, ..., n-1}.

    ``adj[v]`` is the neighbor set of ``v`` as a bitmask.  Instances are
    immutable and validated on construction: adjacency must be symmetric,
    loop-free, and confined to [0, n).
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("negative vertex count")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, mask in enumerate(self.adj):
            if mask & ~full:
                raise GraphError(f"vertex {v} has a neighbor outside [0, {self.n})")
            if (mask >> v) & 1:
                raise GraphError(f"self-loop at vertex {v}")
        for v, mask in enumerate(self.adj):
            for u in bits(mask):
                if not (self.adj[u] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def m(self) -> int:
        """Number of edges."""
        return sum(mask.bit_count() for mask in self.adj) // 2

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def edges(self) -> list[Edge]:
        """All edges as (u, v) with u < v, in ascending lexicographic order."""
        out: list[Edge] = []
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        adj = tuple((full & ~mask) & ~(1 << v) for v, mask in enumerate(self.adj))
        return Graph(self.n, adj)


K0 = Graph(0, ())


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``vertices`` plus the old-id -> new-id bijection.

    New ids follow the ascending order of the old ids.
    """
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    mapping = {old: new for new, old in enumerate(keep)}
    adj = []
    for old in keep:
        mask = 0
        for u in bits(g.adj[old]):
            if u in mapping:
                mask |= 1 << mapping[u]
        adj.append(mask)
    return Graph(len(keep), tuple(adj)), mapping


def isolated_vertices(g: Graph) -> set[int]:
    return {v for v in range(g.n) if g.adj[v] == 0}


def greedy_maximal_matching(g: Graph) -> Matching:
    """Maximal matching obtained by scanning edges in ascending (u, v) order."""
    matched = 0
    out: Matching = []
    for u in range(g.n):
        if (matched >> u) & 1:
            continue
        free = g.adj[u] & ~matched & ~((1 << (u + 1)) - 1)
        if free:
            v = (free & -free).bit_length() - 1
            out.append((u, v))
            matched |= (1 << u) | (1 << v)
    return out


def max_bipartite_matching(g: Graph, side_a: Iterable[int], side_b: Iterable[int]) -> Matching:
    """Maximum matching between ``side_a`` and ``side_b``.

    Only edges with one endpoint in each side are considered.  Uses repeated
    augmenting-path search, scanning both sides lowest-id-first.  Returned
    edges are (a, b) pairs with a on the A side.
    """
    a_list = sorted(set(side_a))
    b_set = frozenset(side_b)
    if b_set & set(a_list):
        raise GraphError("bipartition sides overlap")
    b_mask = mask_of(b_set)
    match_of: dict[int, int] = {}

    def augment(a: int, visited: set[int]) -> bool:
        for b in bits(g.adj[a] & b_mask):
            if b in visited:
                continue
            visited.add(b)
            if b not in match_of or augment(match_of[b], visited):
                match_of[b] = a
                match_of[a] = b
                return True
        return False

    for a in a_list:
        augment(a, set())
    return [(a, match_of[a]) for a in a_list if a in match_of]


def min_vertex_cover_bipartite(
    g: Graph, side_a: Iterable[int], side_b: Iterable[int], matching: Matching
) -> set[int]:
    """Minimum vertex cover of the A-B edges from a maximum matching (Koenig).

    The construction takes alternating-path reachability Z from the unmatched
    A-vertices and returns (A \\ Z) | (B & Z).  If the input matching was not
    maximum, the Koenig equality |cover| == |matching| fails and a GraphError
    is raised.
    """
    a_set = set(side_a)
    b_set = set(side_b)
    if a_set & b_set:
        raise GraphError("bipartition sides overlap")
    b_mask = mask_of(b_set)
    match_a: dict[int, int] = {}
    match_b: dict[int, int] = {}
    for u, v in matching:
        if u in a_set and v in b_set:
            a, b = u, v
        elif v in a_set and u in b_set:
            a, b = v, u
        else:
            raise GraphError(f"matching edge ({u}, {v}) does not cross the bipartition")
        match_a[a] = b
        match_b[b] = a

    reached = {a for a in a_set if a not in match_a}
    frontier = sorted(reached)
    while frontier:
        nxt: list[int] = []
        for a in frontier:
            for b in bits(g.adj[a] & b_mask):
                if b in reached:
                    continue
                reached.add(b)
                partner = match_b.get(b)
                if partner is not None and partner not in reached:
                    reached.add(partner)
                    nxt.append(partner)
        frontier = nxt

    cover = (a_set - reached) | (b_set & reached)
    if len(cover) != len(matching):
        raise GraphError("Koenig equality failed: matching is not maximum")
    return cover


def greedy_clique_cover(g: Graph) -> CliqueCover:
    """Clique cover grown greedily from the lowest-id uncovered vertex."""
    uncovered = set(range(g.n))
    cover: CliqueCover = []
    while uncovered:
        v = min(uncovered)
        members = [v]
        member_mask = 1 << v
        for u in sorted(uncovered):
            if u == v:
                continue
            if g.adj[u] & member_mask == member_mask:
                members.append(u)
                member_mask |= 1 << u
        cover.append(frozenset(members))
        uncovered -= set(members)
    return cover


def matching_is_valid(g: Graph, matching: Matching) -> bool:
    seen = 0
    for u, v in matching:
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            return False
        pair = (1 << u) | (1 << v)
        if seen & pair:
            return False
        seen |= pair
    return True


def clique_cover_is_valid(g: Graph, cover: CliqueCover) -> bool:
    seen: set[int] = set()
    for clique in cover:
        if not clique or seen & clique:
            return False
        members = sorted(clique)
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                if not g.has_edge(u, v):
                    return False
        seen |= clique
    return seen == set(range(g.n))
