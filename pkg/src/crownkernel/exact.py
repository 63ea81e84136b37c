"""Exact solvers and definition-level oracles.

Covers the confusion-graph construction, exact independence and chromatic
numbers (branch-and-bound with greedy-coloring bounds / DSATUR backtracking),
minrank over prime fields via a row-space search with the diagonal normalized
to ones, the explicit clique-cover constructions for index codes and
representing matrices, and small brute-force oracles that restate the raw
definitions.

Storage capacity is never materialized as a floating-point logarithm: the
solvers return the integer alpha(Conf_q(G)), and decisions compare it against
q**k in exact arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import (
    CliqueCover,
    Graph,
    bits,
    clique_cover_is_valid,
    greedy_clique_cover,
)


class CapExceeded(RuntimeError):
    """A solver cap was exceeded; carries enough context to raise the cap."""

    def __init__(self, what: str, needed: int, cap: int):
        super().__init__(f"{what}: needs {needed}, cap is {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap


@dataclass(frozen=True)
class Caps:
    """Size limits for the exact solvers; exceeding one raises, never approximates."""

    confusion: int = 2**20  # max vertex count of a constructed confusion graph
    alpha: int = 4096  # max vertex count for independence_number
    chi: int = 512  # max vertex count for chromatic_number / colorability
    minrank: int = 2**40  # max nominal search space p**(2m) for minrank


DEFAULT_CAPS = Caps()


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Confusion graphs


@dataclass(frozen=True)
class ConfusionGraph:
    """Graph on all q**n vectors over {0..q-1}, indexed little-endian base q
    (vector id = sum x_i * q**i).  Two vectors conflict when some vertex i of
    the base graph has x_i != y_i while x and y agree on N(i)."""

    base: Graph
    q: int
    graph: Graph

    @property
    def size(self) -> int:
        return self.graph.n


def vector_of(index: int, n: int, q: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(index % q)
        index //= q
    return tuple(out)


def index_of(vector: Sequence[int], q: int) -> int:
    idx = 0
    for digit in reversed(vector):
        idx = idx * q + digit
    return idx


def build_confusion_graph(g: Graph, q: int, caps: Caps = DEFAULT_CAPS) -> ConfusionGraph:
    if q < 2:
        raise ValueError("alphabet size q must be >= 2")
    size = q**g.n
    if size > caps.confusion:
        raise CapExceeded("confusion graph size", size, caps.confusion)
    n = g.n
    digits = [vector_of(v, n, q) for v in range(size)]
    adj = [0] * size
    for i in range(n):
        nbrs = g.neighbors(i)
        buckets: dict[tuple[int, ...], list[int]] = {}
        for v in range(size):
            dv = digits[v]
            key = tuple(dv[j] for j in nbrs)
            bucket = buckets.get(key)
            if bucket is None:
                bucket = [0] * q
                buckets[key] = bucket
            bucket[dv[i]] |= 1 << v
        for bucket in buckets.values():
            total = 0
            for m in bucket:
                total |= m
            for m in bucket:
                if not m:
                    continue
                other = total & ~m
                if other:
                    for v in bits(m):
                        adj[v] |= other
    return ConfusionGraph(base=g, q=q, graph=Graph(size, tuple(adj)))


# ---------------------------------------------------------------------------
# Independence and chromatic numbers


def max_clique_set(g: Graph) -> tuple[int, int]:
    """Exact maximum clique, branch and bound with a greedy-coloring bound.

    Returns (size, bitmask of one maximum clique).
    """
    if g.n == 0:
        return 0, 0
    adj = g.adj
    best = 0
    best_mask = 0
    current: list[int] = []

    def expand(size: int, cand: int) -> None:
        nonlocal best, best_mask
        if cand == 0:
            if size > best:
                best = size
                mask = 0
                for u in current:
                    mask |= 1 << u
                best_mask = mask
            return
        order: list[int] = []
        bound: list[int] = []
        color = 0
        uncolored = cand
        while uncolored:
            color += 1
            avail = uncolored
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~adj[v]
                avail &= ~(1 << v)
                uncolored &= ~(1 << v)
                order.append(v)
                bound.append(color)
        for i in range(len(order) - 1, -1, -1):
            if size + bound[i] <= best:
                return
            v = order[i]
            current.append(v)
            expand(size + 1, cand & adj[v])
            current.pop()
            cand &= ~(1 << v)

    expand(0, (1 << g.n) - 1)
    return best, best_mask


def max_clique(g: Graph) -> int:
    """Exact maximum clique size."""
    return max_clique_set(g)[0]


def independence_number(g: Graph, caps: Caps = DEFAULT_CAPS) -> int:
    """Exact independence number alpha(G), via maximum clique on the complement."""
    if g.n > caps.alpha:
        raise CapExceeded("independence solver vertex count", g.n, caps.alpha)
    if g.n == 0:
        return 0
    return max_clique(g.complement())


def dsatur_coloring(g: Graph) -> list[int]:
    """Greedy DSATUR coloring; returns a color per vertex (an upper bound witness)."""
    n = g.n
    colors = [-1] * n
    neighbor_colors = [0] * n
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] == -1),
            key=lambda u: (neighbor_colors[u].bit_count(), g.degree(u), -u),
        )
        c = 0
        used = neighbor_colors[v]
        while (used >> c) & 1:
            c += 1
        colors[v] = c
        for u in bits(g.adj[v]):
            neighbor_colors[u] |= 1 << c
    return colors


def is_colorable(g: Graph, k: int, caps: Caps = DEFAULT_CAPS) -> bool:
    """Exact k-colorability test: DSATUR-ordered backtracking with the
    new-color symmetry break (a vertex may open at most one fresh color)."""
    n = g.n
    if n > caps.chi:
        raise CapExceeded("colorability vertex count", n, caps.chi)
    if k >= n:
        return True
    if k <= 0:
        return n == 0
    if max(dsatur_coloring(g), default=-1) + 1 <= k:
        return True

    omega, clique_mask = max_clique_set(g)
    if omega > k:
        return False

    adj = g.adj
    colors = [-1] * n
    neighbor_colors = [0] * n
    degrees = [g.degree(v) for v in range(n)]
    kmask = (1 << k) - 1

    # Precolor one maximum clique: its vertices take pairwise distinct colors
    # in any proper coloring, so fixing them breaks the color symmetry.
    precolored = 0
    next_color = 0
    for v in bits(clique_mask):
        colors[v] = next_color
        bit = 1 << next_color
        for u in bits(adj[v]):
            neighbor_colors[u] |= bit
        next_color += 1
        precolored += 1

    def backtrack(colored: int, used: int) -> bool:
        if colored == n:
            return True
        v = -1
        best_key = None
        for u in range(n):
            if colors[u] != -1:
                continue
            sat = neighbor_colors[u].bit_count()
            key = (-sat, -degrees[u], u)
            if best_key is None or key < best_key:
                best_key = key
                v = u
        limit = min(used + 1, k)
        avail = ~neighbor_colors[v] & ((1 << limit) - 1) & kmask
        while avail:
            c = (avail & -avail).bit_length() - 1
            avail &= avail - 1
            colors[v] = c
            touched = []
            bit = 1 << c
            for u in bits(adj[v]):
                if not neighbor_colors[u] & bit:
                    neighbor_colors[u] |= bit
                    touched.append(u)
            if backtrack(colored + 1, max(used, c + 1)):
                return True
            colors[v] = -1
            for u in touched:
                neighbor_colors[u] &= ~bit
        return False

    return backtrack(precolored, next_color)


def chromatic_number(g: Graph, caps: Caps = DEFAULT_CAPS) -> int:
    """Exact chromatic number: iterative deepening from a clique /
    counting lower bound up to the DSATUR upper bound."""
    if g.n > caps.chi:
        raise CapExceeded("chromatic solver vertex count", g.n, caps.chi)
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    ub = max(dsatur_coloring(g)) + 1
    lb = max_clique(g)
    alpha = max_clique(g.complement())
    lb = max(lb, -(-g.n // alpha))
    for k in range(lb, ub):
        if is_colorable(g, k, caps):
            return k
    return ub


# ---------------------------------------------------------------------------
# Problem values through the confusion graph


def storage_capacity_alpha(g: Graph, q: int, caps: Caps = DEFAULT_CAPS) -> int:
    """alpha(Conf_q(G)); the capacity itself is log_q of this integer and the
    decision Capa_q(G) >= k is alpha >= q**k in exact arithmetic."""
    conf = build_confusion_graph(g, q, caps)
    return independence_number(conf.graph, caps)


def index_coding_length(g: Graph, q: int, caps: Caps = DEFAULT_CAPS) -> int:
    """Exact Ind_q(G) = ceil(log_q chi(Conf_q(G))).

    Only power-of-q colorability matters, so instead of pinning chi exactly
    this searches the smallest ell with Conf_q(G) being q**ell-colorable.
    The minimum clique cover of the base graph yields a proper coloring of
    the confusion graph with q**cover colors (the per-clique-sum index code),
    and the clique / counting bounds cap chi from below, so explicit
    colorability search only runs inside the gap between the two.
    """
    if g.n == 0:
        return 0
    conf = build_confusion_graph(g, q, caps).graph
    if conf.n > caps.chi:
        raise CapExceeded("index coding solver confusion size", conf.n, caps.chi)
    lower = max(max_clique(conf), -(-conf.n // max_clique(conf.complement())))
    ell = 0
    while q**ell < lower:
        ell += 1
    cover_number = chromatic_number(g.complement(), caps)
    while ell < cover_number:
        colors = q**ell
        if colors >= conf.n or is_colorable(conf, colors, caps):
            return ell
        ell += 1
    return cover_number


# ---------------------------------------------------------------------------
# GF(p) matrices and minrank


@dataclass(frozen=True)
class GFMatrix:
    """Dense matrix over the prime field GF(p); entries are residues in [0, p)."""

    p: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        width = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged matrix")
            if any(not 0 <= x < self.p for x in row):
                raise ValueError("entry out of range for GF(p)")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0


def gf_rank(mat: GFMatrix) -> int:
    """Rank over GF(p) by Gaussian elimination."""
    p = mat.p
    rows = [list(r) for r in mat.entries]
    rank = 0
    cols = mat.cols
    for col in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [(a - factor * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def matrix_represents(mat: GFMatrix, g: Graph) -> bool:
    """True iff the matrix has a nonzero diagonal and zeros at all non-edges."""
    if mat.rows != g.n or mat.cols != g.n:
        return False
    for i in range(g.n):
        if mat.entries[i][i] == 0:
            return False
        for j in range(g.n):
            if i != j and not g.has_edge(i, j) and mat.entries[i][j] != 0:
                return False
    return True


def _rref_insert(basis: tuple[tuple[int, ...], ...], vec: list[int], p: int):
    """Insert ``vec`` into an RREF basis (tuples sorted by pivot); returns the
    new canonical basis (unchanged object if vec was already in the span)."""
    v = vec
    for row in basis:
        pivot = next(i for i, x in enumerate(row) if x)
        if v[pivot]:
            factor = v[pivot]
            v = [(a - factor * b) % p for a, b in zip(v, row)]
    pivot = next((i for i, x in enumerate(v) if x), None)
    if pivot is None:
        return basis
    inv = pow(v[pivot], p - 2, p)
    v = tuple((x * inv) % p for x in v)
    new_rows = []
    for row in basis:
        if row[pivot]:
            factor = row[pivot]
            row = tuple((a - factor * b) % p for a, b in zip(row, v))
        new_rows.append(row)
    new_rows.append(v)
    new_rows.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    return tuple(new_rows)


def minrank(g: Graph, p: int, caps: Caps = DEFAULT_CAPS) -> int:
    """Exact minrank of G over GF(p).

    Row i of a representing matrix is supported on N[i] with a nonzero entry
    at i; scaling rows preserves rank and the zero pattern, so the diagonal is
    normalized to ones and only the p**(2m) edge entries are searched.  The
    search runs row by row over reached row spaces (canonical RREF bases),
    pruning once the partial rank matches the best known bound.
    """
    if not is_prime(p):
        raise ValueError(f"field modulus {p} is not prime")
    n = g.n
    if n == 0:
        return 0
    space = (p - 1) ** n * p ** (2 * g.m)
    if space > caps.minrank:
        raise CapExceeded("minrank search space", space, caps.minrank)

    cover_bound = len(greedy_clique_cover(g))
    lower = max_clique(g.complement())  # alpha(G) <= minrank
    if cover_bound == lower:
        return cover_bound

    best = cover_bound
    visited: set[tuple[int, tuple[tuple[int, ...], ...]]] = set()
    neighbor_lists = [g.neighbors(i) for i in range(n)]

    def dfs(i: int, basis: tuple[tuple[int, ...], ...]) -> None:
        nonlocal best
        if len(basis) >= best or best == lower:
            return
        if i == n:
            best = len(basis)
            return
        key = (i, basis)
        if key in visited:
            return
        visited.add(key)
        nbrs = neighbor_lists[i]
        for assignment in itertools.product(range(p), repeat=len(nbrs)):
            row = [0] * n
            row[i] = 1
            for j, value in zip(nbrs, assignment):
                row[j] = value
            dfs(i + 1, _rref_insert(basis, row, p))

    dfs(0, ())
    return best


def minrank_pattern_bruteforce(g: Graph, p: int) -> int:
    """Minrank by plain enumeration of all diagonal-one representing matrices."""
    if not is_prime(p):
        raise ValueError(f"field modulus {p} is not prime")
    n = g.n
    if n == 0:
        return 0
    positions = [(i, j) for i in range(n) for j in range(n) if i != j and g.has_edge(i, j)]
    best = n
    for values in itertools.product(range(p), repeat=len(positions)):
        entries = [[0] * n for _ in range(n)]
        for i in range(n):
            entries[i][i] = 1
        for (i, j), value in zip(positions, values):
            entries[i][j] = value
        rank = gf_rank(GFMatrix(p, tuple(tuple(r) for r in entries)))
        if rank < best:
            best = rank
    return best


def minrank_full_bruteforce(g: Graph, p: int) -> int:
    """Minrank by enumerating all p**(n*n) matrices; tiny n only."""
    if not is_prime(p):
        raise ValueError(f"field modulus {p} is not prime")
    n = g.n
    if n == 0:
        return 0
    best = n
    for values in itertools.product(range(p), repeat=n * n):
        entries = tuple(tuple(values[i * n : (i + 1) * n]) for i in range(n))
        mat = GFMatrix(p, entries)
        if matrix_represents(mat, g):
            rank = gf_rank(mat)
            if rank < best:
                best = rank
    return best


# ---------------------------------------------------------------------------
# Clique-cover constructions


@dataclass(frozen=True)
class IndexCode:
    """Index code from a clique cover: the encoder sends one per-clique sum
    modulo q; receiver i subtracts the side information of its own clique."""

    q: int
    cover: tuple[frozenset[int], ...]
    clique_of: dict[int, int] = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.cover)

    def encode(self, message: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(message[i] for i in clique) % self.q for clique in self.cover)

    def decode(self, receiver: int, codeword: Sequence[int], side: Mapping[int, int]) -> int:
        idx = self.clique_of[receiver]
        others = sum(side[j] for j in self.cover[idx] if j != receiver)
        return (codeword[idx] - others) % self.q


def clique_cover_index_code(g: Graph, q: int, cover: CliqueCover) -> IndexCode:
    if q < 2:
        raise ValueError("alphabet size q must be >= 2")
    if not clique_cover_is_valid(g, cover):
        raise ValueError("invalid clique cover")
    ordered = tuple(cover)
    clique_of = {v: idx for idx, clique in enumerate(ordered) for v in clique}
    return IndexCode(q=q, cover=ordered, clique_of=clique_of)


def clique_cover_minrank_matrix(g: Graph, cover: CliqueCover, p: int) -> GFMatrix:
    if not clique_cover_is_valid(g, cover):
        raise ValueError("invalid clique cover")
    n = g.n
    entries = [[0] * n for _ in range(n)]
    for clique in cover:
        for i in clique:
            for j in clique:
                entries[i][j] = 1
    return GFMatrix(p, tuple(tuple(row) for row in entries))


# ---------------------------------------------------------------------------
# Definition-level brute-force oracles


def oracle_storage_code(g: Graph, q: int) -> int:
    """Largest code over [q]**n where every coordinate of every codeword is a
    function of its neighborhood restriction; found by subset enumeration."""
    size = q**g.n
    if size > 8:
        raise CapExceeded("storage oracle vector count", size, 8)
    vectors = [vector_of(v, g.n, q) for v in range(size)]
    neighborhoods = [g.neighbors(i) for i in range(g.n)]

    def valid(members: list[int]) -> bool:
        for a in range(len(members)):
            x = vectors[members[a]]
            for b in range(a + 1, len(members)):
                y = vectors[members[b]]
                for i in range(g.n):
                    if x[i] != y[i] and all(x[j] == y[j] for j in neighborhoods[i]):
                        return False
        return True

    best = 0
    for subset in range(1 << size):
        count = subset.bit_count()
        if count > best and valid(list(bits(subset))):
            best = count
    return best


def oracle_index_code(g: Graph, q: int = 2) -> int:
    """Minimum index code length by exhausting encoders; n <= 3, q = 2 only.

    Length n is always feasible (send everything), so only lengths below n
    are searched.  Encoders are enumerated up to relabeling of the codeword
    space by fixing E(0...0) = 0.
    """
    if q != 2:
        raise CapExceeded("index code oracle alphabet", q, 2)
    if g.n > 3:
        raise CapExceeded("index code oracle vertex count", g.n, 3)
    n = g.n
    if n == 0:
        return 0
    size = 2**n
    vectors = [vector_of(v, n, 2) for v in range(size)]
    neighborhoods = [g.neighbors(i) for i in range(n)]

    def decodable(encoding: Sequence[int]) -> bool:
        for i in range(n):
            seen: dict[tuple, int] = {}
            for v in range(size):
                x = vectors[v]
                key = (encoding[v],) + tuple(x[j] for j in neighborhoods[i])
                prev = seen.get(key)
                if prev is None:
                    seen[key] = x[i]
                elif prev != x[i]:
                    return False
        return True

    for ell in range(n):
        codewords = 2**ell
        for rest in itertools.product(range(codewords), repeat=size - 1):
            if decodable((0,) + rest):
                return ell
    return n
