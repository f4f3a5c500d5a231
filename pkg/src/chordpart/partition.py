"""Vertex partitions, quotient graphs, restriction to an induced subgraph, and
exhaustive enumeration of connected partitions.

The enumeration kernel walks restricted-growth strings (RGS): vertex ``i`` is
put into one of the blocks opened so far or opens a new one.  Blocks are
therefore produced ordered by minimum vertex, which is the canonical part
order used everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .config import caps
from .errors import GraphError, PartitionError, ResourceCapError, RestrictionError
from .graph import (
    Graph,
    VertexSet,
    _induced_from_mask,
    bits,
    component_masks,
    is_connected_mask,
    iter_clique_masks,
    popcount,
    to_mask,
)


@dataclass(frozen=True)
class Partition:
    """Parts of a graph on ``n`` vertices, sorted by minimum member."""

    n: int
    parts: tuple[VertexSet, ...]

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[VertexSet]:
        return iter(self.parts)

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(to_mask(p) for p in self.parts)

    def part_map(self) -> list[int]:
        """Part index of every vertex."""
        out = [0] * self.n
        for i, p in enumerate(self.parts):
            for v in p:
                out[v] = i
        return out

    def to_dict(self) -> dict:
        return {"parts": [list(p) for p in self.parts]}


def make_partition(n: int | Graph, parts: Iterable[Iterable[int]]) -> Partition:
    """Validate and canonicalize a partition of ``0..n-1``.

    Raises:
        PartitionError: empty part, overlapping parts, out-of-range id, or an
            uncovered vertex.
    """
    if isinstance(n, Graph):
        n = n.n
    seen = 0
    out = []
    for raw in parts:
        p = tuple(sorted(set(raw)))
        if not p:
            raise PartitionError("partition has an empty part")
        for v in p:
            if not 0 <= v < n:
                raise PartitionError(f"vertex {v} outside 0..{n - 1}")
            if seen >> v & 1:
                raise PartitionError(f"vertex {v} lies in two parts")
            seen |= 1 << v
        out.append(p)
    if seen != (1 << n) - 1:
        gap = sorted(bits(((1 << n) - 1) & ~seen))
        raise PartitionError(f"vertices {gap} are in no part")
    out.sort(key=lambda p: p[0])
    return Partition(n, tuple(out))


def partition_from_masks(n: int, masks: Sequence[int]) -> Partition:
    """Wrap kernel output (disjoint masks already ordered by minimum) without re-validating."""
    return Partition(n, tuple(tuple(bits(m)) for m in masks))


def partition_from_dict(n: int | Graph, data: dict) -> Partition:
    try:
        parts = data["parts"]
    except (KeyError, TypeError) as exc:
        raise PartitionError(f"partition JSON missing 'parts': {exc}") from exc
    return make_partition(n, parts)


def dumps(P: Partition) -> str:
    return json.dumps(P.to_dict(), sort_keys=True)


def singletons(G: Graph) -> Partition:
    return Partition(G.n, tuple((v,) for v in range(G.n)))


def whole(G: Graph) -> Partition:
    return Partition(G.n, (tuple(range(G.n)),) if G.n else ())


def _check(G: Graph, P: Partition) -> None:
    if P.n != G.n:
        raise PartitionError(f"partition is over {P.n} vertices, graph has {G.n}")


def is_connected_partition(G: Graph, P: Partition) -> bool:
    """Whether every part induces a connected subgraph.

    Raises:
        PartitionError: ``P`` is not a partition of ``G`` (a structural error,
            distinct from a ``False`` answer).
    """
    _check(G, P)
    make_partition(G.n, P.parts)  # re-validate structure
    return all(is_connected_mask(G.adj, m) for m in P.masks)


@dataclass(frozen=True)
class QuotientGraph:
    graph: Graph
    part_map: tuple[int, ...]


def quotient_adj(adj: Sequence[int], masks: Sequence[int]) -> list[int]:
    """Bitset rows of the quotient: part ``i`` sees part ``j`` iff an edge crosses."""
    k = len(masks)
    nbhd = []
    for m in masks:
        nb = 0
        for v in bits(m):
            nb |= adj[v]
        nbhd.append(nb)
    rows = [0] * k
    for i in range(k):
        ni = nbhd[i]
        for j in range(i + 1, k):
            if ni & masks[j]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return rows


def quotient(G: Graph, P: Partition) -> QuotientGraph:
    _check(G, P)
    rows = quotient_adj(G.adj, P.masks)
    return QuotientGraph(Graph.from_adjacency(rows), tuple(P.part_map()))


def check_restriction_precondition(
    G: Graph, X: Iterable[int]
) -> tuple[VertexSet, tuple[int, int]] | None:
    """``None`` if every component of ``G - X`` has a clique neighbourhood in ``X``.

    Otherwise returns the first offending component and two of its
    non-adjacent neighbours in ``X``.
    """
    xmask = to_mask(X)
    if not xmask:
        raise GraphError("restriction target X is empty")
    if xmask >> G.n:
        raise GraphError("restriction target X has ids outside the graph")
    for comp in component_masks(G.adj, G.all_mask & ~xmask):
        nb = 0
        for v in bits(comp):
            nb |= G.adj[v]
        nb &= xmask
        for u in bits(nb):
            miss = nb & ~G.adj[u] & ~(1 << u)
            if miss:
                w = (miss & -miss).bit_length() - 1
                return tuple(bits(comp)), (u, w)
    return None


@dataclass(frozen=True)
class Restriction:
    """A partition restricted to ``G[X]``.

    ``partition`` is over the renumbered vertices of ``graph``; ``back_map``
    sends them to the original ids and ``origin[i]`` is the index, in the
    original partition, of the part that restricted part ``i`` came from.
    """

    graph: Graph
    partition: Partition
    id_map: dict[int, int]
    back_map: tuple[int, ...]
    origin: tuple[int, ...]
    checked: bool


def restrict(
    G: Graph, P: Partition, X: Iterable[int], *, force: bool = False, debug: bool = False
) -> Restriction:
    """Restrict the connected partition ``P`` to the induced subgraph ``G[X]``.

    Under the clique-neighbourhood precondition the result is a connected
    partition whose quotient is the subgraph of ``G/P`` induced by the parts
    meeting ``X``; ``debug=True`` asserts both facts after the fact.

    Raises:
        RestrictionError: the precondition fails and ``force`` is not set.
            With ``force=True`` the restriction is computed anyway and the
            result is flagged ``checked=False``.
    """
    _check(G, P)
    xmask = to_mask(X)
    bad = check_restriction_precondition(G, tuple(bits(xmask)))
    if bad is not None and not force:
        raise RestrictionError(frozenset(bad[0]), bad[1])
    sub, id_map = _induced_from_mask(G, xmask)
    traces = []
    origin = []
    for i, m in enumerate(P.masks):
        t = m & xmask
        if t:
            traces.append(tuple(sorted(id_map[v] for v in bits(t))))
            origin.append(i)
    R = Partition(sub.n, tuple(traces))
    back = tuple(bits(xmask))
    result = Restriction(sub, R, id_map, back, tuple(origin), checked=bad is None)
    if debug and bad is None:
        assert all(is_connected_mask(sub.adj, m) for m in R.masks), "restriction lost connectivity"
        q_sub = quotient(sub, R).graph
        q_full = quotient(G, P).graph
        assert q_sub.adj == _induced_from_mask(q_full, to_mask(origin))[0].adj, (
            "restricted quotient differs from the induced quotient"
        )
    return result


def rgs_prefixes(n: int, depth: int) -> list[tuple[int, ...]]:
    """All restricted-growth strings of length ``min(depth, n)``, lexicographically."""
    depth = min(depth, n)
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], top: int) -> None:
        if len(prefix) == depth:
            out.append(tuple(prefix))
            return
        for b in range(top + 2):
            prefix.append(b)
            rec(prefix, max(top, b))
            prefix.pop()

    rec([], -1)
    return out


def connected_partition_masks(
    G: Graph, prefix: Sequence[int] = (), cap: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Kernel: yield every connected partition as a tuple of part masks.

    Only partitions whose RGS starts with ``prefix`` are produced, so disjoint
    prefixes split the space between workers.  A block is pruned as soon as
    it cannot become connected even using every not-yet-assigned vertex.
    """
    cap = caps().enumeration if cap is None else cap
    if G.n > cap:
        raise ResourceCapError("connected-partition enumeration", G.n, cap)
    n = G.n
    adj = G.adj
    if n == 0:
        yield ()
        return

    def completable(block: int, future: int) -> bool:
        within = block | future
        seen = block & -block
        frontier = seen
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & within & ~seen
            if block & ~seen == 0:
                return True
            seen |= frontier
        return block & ~seen == 0

    blocks: list[int] = []
    top = -1
    for i, b in enumerate(prefix):
        if b > top + 1 or b < 0:
            raise ValueError(f"prefix {tuple(prefix)} is not a restricted-growth string")
        if b == len(blocks):
            blocks.append(0)
        blocks[b] |= 1 << i
        top = max(top, b)
    future0 = ((1 << n) - 1) & ~((1 << len(prefix)) - 1)
    if not all(completable(bl, future0) for bl in blocks):
        return

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(blocks)
            return
        bit = 1 << i
        future = ((1 << n) - 1) & ~((bit << 1) - 1)
        for b in range(len(blocks) + 1):
            if b == len(blocks):
                blocks.append(bit)
            else:
                blocks[b] |= bit
            if all(completable(bl, future) for bl in blocks):
                yield from rec(i + 1)
            if b == len(blocks) - 1 and blocks[b] == bit:
                blocks.pop()
            else:
                blocks[b] &= ~bit

    yield from rec(len(prefix))


def enumerate_connected_partitions(
    G: Graph, cap: int | None = None, prefix: Sequence[int] = ()
) -> Iterator[Partition]:
    """Every connected partition of ``G`` exactly once, in RGS order.

    Raises:
        ResourceCapError: ``|V(G)|`` exceeds the enumeration cap.
    """
    for masks in connected_partition_masks(G, prefix, cap):
        yield partition_from_masks(G.n, masks)


def outcome_clique_spread(
    G: Graph, P: Partition, k: int, r: int
) -> tuple[VertexSet, tuple[int, ...]] | None:
    """A ``kr``-clique meeting exactly ``r`` parts in ``k`` vertices each.

    Returns ``(clique, part_indices)`` for the lexicographically first such
    clique, or ``None``.
    """
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    _check(G, P)
    masks = P.masks
    for c in iter_clique_masks(G.adj, k * r, G.all_mask):
        hit = spread_parts(c, masks, k)
        if hit is not None:
            return tuple(bits(c)), hit
    return None


def spread_parts(clique: int, masks: Sequence[int], k: int) -> tuple[int, ...] | None:
    hit = []
    for j, m in enumerate(masks):
        c = popcount(clique & m)
        if c:
            if c != k:
                return None
            hit.append(j)
    return tuple(hit)


def outcome_part_clique(G: Graph, P: Partition, k: int) -> tuple[int, VertexSet] | None:
    """Some part containing ``K_{k+1}``: returns ``(part_index, clique)`` or ``None``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    _check(G, P)
    for j, m in enumerate(P.masks):
        for c in iter_clique_masks(G.adj, k + 1, m):
            return j, tuple(bits(c))
    return None
