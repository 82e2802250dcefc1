"""Undirected and directed graphs on dense integer vertices with bitset adjacency.

Vertices are 0..n-1 and every adjacency row is a Python int used as a bitset,
which keeps the exhaustive searches in the rest of the package cheap. All
graph values are immutable after construction, so they can be shared freely
across worker processes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Optional, Sequence


def _bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in increasing order."""
    while mask:
        lsb = mask & -mask
        yield lsb.bit_length() - 1
        mask ^= lsb


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: symmetric, irreflexive bitset adjacency rows."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.adj) != self.n:
            raise ValueError("adjacency must have one row per vertex")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {i} has bits outside 0..{self.n - 1}")
            if (row >> i) & 1:
                raise ValueError(f"self-loop at vertex {i}")
        for i in range(self.n):
            for j in _bits(self.adj[i]):
                if not (self.adj[j] >> i) & 1:
                    raise ValueError(f"adjacency not symmetric at ({i},{j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_edge_mask(cls, n: int, mask: int) -> "Graph":
        """Graph from a bitmask over the unordered pairs in lexicographic order."""
        pairs = list(combinations(range(n), 2))
        if mask < 0 or mask >= 1 << len(pairs):
            raise ValueError("edge mask out of range")
        return cls.from_edges(n, (pairs[i] for i in _bits(mask)))

    def edge_mask(self) -> int:
        mask = 0
        for idx, (u, v) in enumerate(combinations(range(self.n), 2)):
            if (self.adj[u] >> v) & 1:
                mask |= 1 << idx
        return mask

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2


@dataclass(frozen=True)
class Digraph:
    """Directed graph: irreflexive out-neighbor bitset rows, ordered pairs."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.adj) != self.n:
            raise ValueError("adjacency must have one row per vertex")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {i} has bits outside 0..{self.n - 1}")
            if (row >> i) & 1:
                raise ValueError(f"self-loop at vertex {i}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        rows = [0] * n
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
        return cls(n, tuple(rows))

    def has_arc(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u])]

    def arc_count(self) -> int:
        return sum(row.bit_count() for row in self.adj)


# ---------------------------------------------------------------------------
# constructors

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("a path needs at least 1 vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """Star with one center and the given number of leaves."""
    if leaves < 1:
        raise ValueError("a star needs at least 1 leaf")
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_multipartite(part_sizes: Sequence[int]) -> Graph:
    """Vertices grouped into parts, adjacent exactly when in different parts."""
    if not part_sizes:
        raise ValueError("need at least one part")
    if any(s <= 0 for s in part_sizes):
        raise ValueError("part sizes must be positive")
    n = sum(part_sizes)
    part_of = []
    for p, size in enumerate(part_sizes):
        part_of.extend([p] * size)
    rows = []
    for i in range(n):
        row = 0
        for j in range(n):
            if j != i and part_of[j] != part_of[i]:
                row |= 1 << j
        rows.append(row)
    return Graph(n, tuple(rows))


def named_graph(name: str) -> Graph:
    """Resolve built-in graph names: K5, C7, P4, star3, empty4."""
    text = name.strip().lower()
    for prefix, builder, minimum in (
        ("star", star_graph, 1),
        ("empty", empty_graph, 0),
        ("k", complete_graph, 1),
        ("c", cycle_graph, 3),
        ("p", path_graph, 2),
    ):
        if text.startswith(prefix) and text[len(prefix):].isdigit():
            value = int(text[len(prefix):])
            if value < minimum:
                raise ValueError(f"{name}: parameter must be at least {minimum}")
            return builder(value)
    raise ValueError(f"unknown graph name: {name}")


# ---------------------------------------------------------------------------
# basic operations

def complement(g: Graph) -> Graph:
    """Exact complement on unordered pairs; an involution."""
    full = (1 << g.n) - 1
    return Graph(g.n, tuple((full ^ row ^ (1 << i)) for i, row in enumerate(g.adj)))


def contains_subgraph(g: Graph, h: Graph) -> bool:
    """True iff some injective vertex map sends every edge of h into g.

    Not-necessarily-induced containment, answered by backtracking over
    injective maps with h's vertices placed in descending-degree order.
    """
    return _find_embedding(g, h, count_all=False) > 0


def count_labeled_copies(g: Graph, h: Graph) -> int:
    """Number of injective edge-preserving maps from h into g (labeled copies)."""
    return _find_embedding(g, h, count_all=True)


def _find_embedding(g: Graph, h: Graph, count_all: bool) -> int:
    if h.n == 0:
        raise ValueError("pattern graph needs at least one vertex")
    if h.n > g.n:
        return 0
    order = sorted(range(h.n), key=lambda v: -h.degree(v))
    placed_mask = [0] * h.n  # h-neighbors of order[i] among order[:i]
    for i, v in enumerate(order):
        for j in range(i):
            if h.has_edge(v, order[j]):
                placed_mask[i] |= 1 << j
    image = [0] * h.n
    count = 0

    def extend(i: int, used: int) -> bool:
        nonlocal count
        if i == h.n:
            count += 1
            return not count_all
        need = placed_mask[i]
        for cand in range(g.n):
            bit = 1 << cand
            if used & bit:
                continue
            ok = True
            m = need
            while m:
                lsb = m & -m
                if not (g.adj[cand] >> image[lsb.bit_length() - 1]) & 1:
                    ok = False
                    break
                m ^= lsb
            if ok:
                image[i] = cand
                if extend(i + 1, used | bit):
                    return True
        return False

    extend(0, 0)
    return count


def min_odd_cycle_at_most(g: Graph, ell: int) -> Optional[int]:
    """Smallest odd cycle length <= ell in g, or None if there is none.

    Breadth-first search in the parity double cover: the shortest odd closed
    walk through v is the distance from (v, even) to (v, odd), and the
    shortest odd closed walk overall is the shortest odd cycle.
    """
    if ell < 3 or ell % 2 == 0:
        raise ValueError("ell must be an odd integer >= 3")
    best: Optional[int] = None
    cap = ell
    for v in range(g.n):
        frontier = 1 << v
        seen_even = frontier
        seen_odd = 0
        depth = 0
        while frontier and depth < cap:
            depth += 1
            nxt = 0
            m = frontier
            while m:
                lsb = m & -m
                nxt |= g.adj[lsb.bit_length() - 1]
                m ^= lsb
            if depth % 2:
                nxt &= ~seen_odd
                seen_odd |= nxt
                if (nxt >> v) & 1:
                    best = depth
                    cap = depth - 1
                    break
            else:
                nxt &= ~seen_even
                seen_even |= nxt
            frontier = nxt
        if best == 3:
            return 3
    return best


def degeneracy(g: Graph) -> tuple[int, list[int]]:
    """Max degree at removal time along a min-degree elimination order."""
    remaining = (1 << g.n) - 1
    order: list[int] = []
    d = 0
    while remaining:
        v = min(_bits(remaining), key=lambda u: ((g.adj[u] & remaining).bit_count(), u))
        d = max(d, (g.adj[v] & remaining).bit_count())
        order.append(v)
        remaining ^= 1 << v
    return d, order


def greedy_coloring(g: Graph, order: Optional[Sequence[int]] = None) -> list[int]:
    """First-fit coloring along the given vertex order (default 0..n-1)."""
    if order is None:
        order = range(g.n)
    colors = [-1] * g.n
    for v in order:
        used = 0
        for u in _bits(g.adj[v]):
            if colors[u] >= 0:
                used |= 1 << colors[u]
        c = 0
        while (used >> c) & 1:
            c += 1
        colors[v] = c
    return colors


def greedy_independent_set(g: Graph) -> list[int]:
    """Greedy min-degree independent set; a lower-bound heuristic for alpha."""
    remaining = (1 << g.n) - 1
    chosen: list[int] = []
    while remaining:
        v = min(_bits(remaining), key=lambda u: ((g.adj[u] & remaining).bit_count(), u))
        chosen.append(v)
        remaining &= ~((g.adj[v] | (1 << v)))
    return chosen


def independence_number(g: Graph) -> int:
    """Exact independence number by branch and bound over vertex bitsets."""
    closed = tuple(g.adj[v] | (1 << v) for v in range(g.n))
    best = len(greedy_independent_set(g))

    def expand(mask: int, size: int) -> None:
        nonlocal best
        if size + mask.bit_count() <= best:
            return
        if mask == 0:
            best = size
            return
        # branch on a max-degree vertex inside the candidate set
        v = max(_bits(mask), key=lambda u: (g.adj[u] & mask).bit_count())
        expand(mask & ~closed[v], size + 1)
        if (g.adj[v] & mask) == 0:
            return  # isolated in mask: including it was optimal
        expand(mask & ~(1 << v), size)

    expand((1 << g.n) - 1, 0)
    return best


def _color_with(g: Graph, k: int) -> Optional[list[int]]:
    """Proper coloring with at most k colors, or None. Backtracking search."""
    if g.n == 0:
        return []
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    colors = [-1] * g.n

    def place(i: int, used: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        forbidden = 0
        for u in _bits(g.adj[v]):
            if colors[u] >= 0:
                forbidden |= 1 << colors[u]
        limit = min(k, used + 1)  # symmetry break: at most one fresh color
        for c in range(limit):
            if not (forbidden >> c) & 1:
                colors[v] = c
                if place(i + 1, max(used, c + 1)):
                    return True
                colors[v] = -1
        return False

    return colors if place(0, 0) else None


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by iterative deepening on the color count."""
    if g.n == 0:
        return 0
    lower = independence_number(complement(g))  # clique number
    upper = max(greedy_coloring(g, degeneracy(g)[1][::-1])) + 1
    for k in range(lower, upper):
        if _color_with(g, k) is not None:
            return k
    return upper


def optimal_coloring(g: Graph) -> list[int]:
    """A proper coloring attaining the chromatic number."""
    coloring = _color_with(g, chromatic_number(g))
    assert coloring is not None
    return coloring


def is_forest(g: Graph) -> bool:
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges():
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.edge_count() == g.n - 1 and is_forest(g)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Induced subgraph on the given vertices, renumbered in the given order."""
    if len(set(vertices)) != len(vertices):
        raise ValueError("duplicate vertices")
    index = {v: i for i, v in enumerate(vertices)}
    rows = [0] * len(vertices)
    for i, v in enumerate(vertices):
        for u in _bits(g.adj[v]):
            j = index.get(u)
            if j is not None:
                rows[i] |= 1 << j
    return Graph(len(vertices), tuple(rows))


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Brute-force isomorphism test, intended for n <= 8."""
    if g1.n != g2.n:
        return False
    if g1.n > 8:
        raise ValueError("brute-force isomorphism is limited to n <= 8")
    if g1.edge_count() != g2.edge_count():
        return False
    if sorted(map(g1.degree, range(g1.n))) != sorted(map(g2.degree, range(g2.n))):
        return False
    for perm in permutations(range(g1.n)):
        if all(g2.has_edge(perm[u], perm[v]) for u, v in g1.edges()):
            return True
    return False


# ---------------------------------------------------------------------------
# random digraphs

def sample_digraph(n: int, p: float, seed: int) -> Digraph:
    """Random digraph: each ordered pair kept independently with probability p.

    Deterministic per (n, p, seed); pairs are scanned in row-major order.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be a probability")
    rng = random.Random(seed)
    rows = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < p:
                rows[i] |= 1 << j
    return Digraph(n, tuple(rows))


def underlying_graph(d: Digraph) -> Graph:
    """Undirected graph keeping (i,j) exactly when both arcs are present."""
    incoming = [0] * d.n
    for i, row in enumerate(d.adj):
        for j in _bits(row):
            incoming[j] |= 1 << i
    return Graph(d.n, tuple(row & incoming[i] for i, row in enumerate(d.adj)))


def union_graph(d: Digraph) -> Graph:
    """Undirected graph keeping (i,j) when at least one arc is present."""
    rows = list(d.adj)
    for i, row in enumerate(d.adj):
        for j in _bits(row):
            rows[j] |= 1 << i
    return Graph(d.n, tuple(rows))


def bidirected(g: Graph) -> Digraph:
    """The digraph with both arcs for every edge of g."""
    return Digraph(g.n, g.adj)
