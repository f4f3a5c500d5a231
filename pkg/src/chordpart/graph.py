"""Immutable simple undirected graphs on dense integer ids.

Adjacency is held twice: as one Python ``int`` bitset per vertex (row ``v``
has bit ``u`` set iff ``uv`` is an edge) for fast intersection in the search
kernels, and as a sorted edge tuple for serialization.  Vertex sets passed to
the public functions may be any iterable of ids; vertex sets returned are
sorted tuples, and every iteration runs in ascending id order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .config import caps
from .errors import GraphError, ResourceCapError

VertexSet = tuple[int, ...]


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True, eq=False)
class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    Build instances with :func:`make_graph` or :meth:`from_adjacency`; the
    constructor does not validate.
    """

    n: int
    adj: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    @classmethod
    def from_adjacency(
        cls, adj: Sequence[int], labels: Sequence[str] | None = None
    ) -> "Graph":
        """Freeze bitset rows (assumed symmetric and loop-free) into a graph."""
        n = len(adj)
        edges = tuple((u, v) for u in range(n) for v in bits(adj[u] >> (u + 1) << (u + 1)))
        return cls(n, tuple(adj), edges, tuple(labels) if labels is not None else None)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> VertexSet:
        return tuple(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def with_labels(self, labels: Sequence[str] | None) -> "Graph":
        if labels is not None and len(labels) != self.n:
            raise GraphError(f"expected {self.n} labels, got {len(labels)}")
        return Graph(self.n, self.adj, self.edges, tuple(labels) if labels is not None else None)


def make_graph(
    n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None
) -> Graph:
    """Build a graph on ``n`` vertices; duplicate edges are collapsed.

    Raises:
        GraphError: an id is outside ``0..n-1`` or an edge is a self-loop.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    adj = [0] * n
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {(u, v)} has an id outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop {(u, v)}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    if labels is not None and len(labels) != n:
        raise GraphError(f"expected {n} labels, got {len(labels)}")
    return Graph.from_adjacency(adj, labels)


def complete_graph(n: int) -> Graph:
    return make_graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def _check_subset(G: Graph, S: Iterable[int]) -> int:
    mask = 0
    for v in S:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} not in graph with {G.n} vertices")
        mask |= 1 << v
    return mask


def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return ``G[S]`` with vertices renumbered in ascending order, plus the old->new map."""
    mask = _check_subset(G, S)
    if not mask:
        raise GraphError("induced subgraph of an empty vertex set")
    return _induced_from_mask(G, mask)


def _induced_from_mask(G: Graph, mask: int) -> tuple[Graph, dict[int, int]]:
    old = list(bits(mask))
    new_of = {v: i for i, v in enumerate(old)}
    adj = []
    for v in old:
        row = 0
        for u in bits(G.adj[v] & mask):
            row |= 1 << new_of[u]
        adj.append(row)
    labels = [G.labels[v] for v in old] if G.labels is not None else None
    return Graph.from_adjacency(adj, labels), new_of


def component_masks(adj: Sequence[int], mask: int) -> list[int]:
    """Connected components of the subgraph induced by ``mask``, ordered by minimum id."""
    out = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & rest & ~comp
            comp |= frontier
        out.append(comp)
        rest &= ~comp
    return out


def is_connected_mask(adj: Sequence[int], mask: int) -> bool:
    if not mask:
        return False
    comp = mask & -mask
    frontier = comp
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        frontier = nxt & mask & ~comp
        comp |= frontier
    return comp == mask


def components(G: Graph) -> list[VertexSet]:
    return [tuple(bits(c)) for c in component_masks(G.adj, G.all_mask)]


def is_clique_mask(adj: Sequence[int], mask: int) -> bool:
    for v in bits(mask):
        if mask & ~adj[v] & ~(1 << v):
            return False
    return True


def is_clique(G: Graph, S: Iterable[int]) -> bool:
    """True iff every pair in ``S`` is adjacent; empty and singleton sets qualify."""
    return is_clique_mask(G.adj, _check_subset(G, S))


def iter_clique_masks(adj: Sequence[int], size: int, within: int) -> Iterator[int]:
    """Yield every ``size``-clique inside ``within`` as a mask, in lexicographic order."""
    if size == 0:
        yield 0
        return

    def extend(chosen: int, cand: int, need: int) -> Iterator[int]:
        while cand and popcount(cand) >= need:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if need == 1:
                yield chosen | low
            else:
                yield from extend(chosen | low, cand & adj[v], need - 1)

    yield from extend(0, within, size)


def enumerate_cliques(G: Graph, size: int) -> list[VertexSet]:
    """All ``size``-subsets inducing a complete graph, in lexicographic order."""
    if size < 1:
        raise GraphError(f"clique size must be >= 1, got {size}")
    return [tuple(bits(m)) for m in iter_clique_masks(G.adj, size, G.all_mask)]


def complement(G: Graph) -> Graph:
    full = G.all_mask
    return Graph.from_adjacency([full & ~row & ~(1 << v) for v, row in enumerate(G.adj)], G.labels)


def induced_embedding(
    G: Graph, H: Graph, cap: int | None = None
) -> tuple[int, ...] | None:
    """Find an injective map ``V(H) -> V(G)`` preserving adjacency and non-adjacency.

    Returns the images of H's vertices ``0..|H|-1`` (first in lexicographic
    order) or ``None``.

    Raises:
        ResourceCapError: ``|V(H)|`` exceeds the containment cap.
    """
    cap = caps().contains_induced if cap is None else cap
    if H.n > cap:
        raise ResourceCapError("induced containment pattern", H.n, cap)
    if H.n > G.n:
        return None
    if H.n == 0:
        return ()
    # Map H vertices in BFS-ish order so adjacency constraints bite early.
    order = _constraint_order(H)
    image = [0] * H.n
    full = G.all_mask

    def search(i: int, used: int) -> bool:
        if i == H.n:
            return True
        h = order[i]
        cand = full & ~used
        for j in range(i):
            g = image[order[j]]
            if H.adj[h] >> order[j] & 1:
                cand &= G.adj[g]
            else:
                cand &= ~G.adj[g]
        deg = H.degree(h)
        for g in bits(cand):
            if G.degree(g) < deg:
                continue
            image[h] = g
            if search(i + 1, used | 1 << g):
                return True
        return False

    return tuple(image) if search(0, 0) else None


def _constraint_order(H: Graph) -> list[int]:
    order: list[int] = []
    seen = 0
    for start in sorted(range(H.n), key=lambda v: (-H.degree(v), v)):
        if seen >> start & 1:
            continue
        queue = [start]
        seen |= 1 << start
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in sorted(bits(H.adj[v] & ~seen), key=lambda u: (-H.degree(u), u)):
                seen |= 1 << u
                queue.append(u)
    return order


def contains_induced(G: Graph, H: Graph, cap: int | None = None) -> bool:
    """Whether ``G`` contains ``H`` as an induced subgraph."""
    return induced_embedding(G, H, cap) is not None


def isomorphism(G: Graph, H: Graph, cap: int | None = None) -> tuple[int, ...] | None:
    """Adjacency-preserving bijection ``V(G) -> V(H)`` as a tuple, or ``None``.

    Colour refinement (seeded by degree) prunes candidates; backtracking does
    the rest.  Refinement signatures are computed identically on both graphs,
    so equal-colour classes correspond.
    """
    cap = caps().isomorphism if cap is None else cap
    if max(G.n, H.n) > cap:
        raise ResourceCapError("isomorphism test", max(G.n, H.n), cap)
    if G.n != H.n or G.m != H.m:
        return None
    if sorted(map(G.degree, range(G.n))) != sorted(map(H.degree, range(H.n))):
        return None
    cg, ch = _joint_refine(G, H)
    if cg is None:
        return None
    order = sorted(range(G.n), key=lambda v: (sum(1 for c in cg if c == cg[v]), v))
    image = [-1] * G.n

    def search(i: int, used: int) -> bool:
        if i == G.n:
            return True
        v = order[i]
        for w in range(H.n):
            if used >> w & 1 or ch[w] != cg[v]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if (G.adj[v] >> u & 1) != (H.adj[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                if search(i + 1, used | 1 << w):
                    return True
        image[v] = -1
        return False

    return tuple(image) if search(0, 0) else None


def _joint_refine(G: Graph, H: Graph) -> tuple[list[int] | None, list[int]]:
    """Refine both graphs with a shared palette; ``None`` when colour histograms differ."""
    cg: list = [G.degree(v) for v in range(G.n)]
    ch: list = [H.degree(v) for v in range(H.n)]
    for _ in range(G.n + 1):
        sg = [(cg[v], tuple(sorted(cg[u] for u in bits(G.adj[v])))) for v in range(G.n)]
        sh = [(ch[v], tuple(sorted(ch[u] for u in bits(H.adj[v])))) for v in range(H.n)]
        if sorted(sg) != sorted(sh):
            return None, []
        palette = {s: i for i, s in enumerate(sorted(set(sg)))}
        ng = [palette[s] for s in sg]
        nh = [palette[s] for s in sh]
        stable = len(palette) == len(set(cg))
        cg, ch = ng, nh
        if stable:
            break
    return cg, ch


def are_isomorphic(G: Graph, H: Graph, cap: int | None = None) -> bool:
    return isomorphism(G, H, cap) is not None
