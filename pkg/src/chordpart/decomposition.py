"""Tree-decompositions: validation, width, and the two composition steps used
by the recursive constructions.

Nodes are numbered ``0..N-1``; ``bags[i]`` is the sorted vertex tuple of node
``i``.  Composition renumbers nodes, it never mutates its inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DecompositionError, ParseError
from .graph import Graph, bits, to_mask


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[tuple[int, ...], ...]
    tree_edges: tuple[tuple[int, int], ...]
    node_labels: tuple[str, ...] | None = None

    @classmethod
    def build(
        cls,
        bags: Iterable[Iterable[int]],
        tree_edges: Iterable[tuple[int, int]] = (),
        node_labels: Sequence[str] | None = None,
    ) -> "TreeDecomposition":
        return cls(
            tuple(tuple(sorted(set(b))) for b in bags),
            tuple((min(a, b), max(a, b)) for a, b in tree_edges),
            tuple(node_labels) if node_labels is not None else None,
        )

    @property
    def num_nodes(self) -> int:
        return len(self.bags)

    def label(self, node: int) -> str:
        return self.node_labels[node] if self.node_labels is not None else ""

    def vertices(self) -> int:
        """Union of all bags, as a mask."""
        m = 0
        for b in self.bags:
            m |= to_mask(b)
        return m


@dataclass(frozen=True)
class Violation:
    kind: str  # "tree" | "range" | "vertex" | "edge" | "subtree"
    subject: tuple[int, ...]
    message: str


def single_bag(vertices: Iterable[int], label: str = "") -> TreeDecomposition:
    return TreeDecomposition.build([vertices], (), [label])


def validate(G: Graph, T: TreeDecomposition) -> list[Violation]:
    """Check every tree-decomposition axiom and return *all* violations.

    An empty list means ``T`` is a valid tree-decomposition of ``G``.
    """
    out: list[Violation] = []
    N = T.num_nodes
    if N == 0:
        out.append(Violation("tree", (), "decomposition has no nodes"))
        return out

    tree_adj = [0] * N
    for a, b in T.tree_edges:
        if not (0 <= a < N and 0 <= b < N) or a == b:
            out.append(Violation("tree", (a, b), f"tree edge {(a, b)} is not between two distinct nodes"))
            continue
        if tree_adj[a] >> b & 1:
            out.append(Violation("tree", (a, b), f"duplicate tree edge {(a, b)}"))
        tree_adj[a] |= 1 << b
        tree_adj[b] |= 1 << a
    reach = _reach(tree_adj, 1, (1 << N) - 1)
    if reach != (1 << N) - 1:
        missing = tuple(bits(((1 << N) - 1) & ~reach))
        out.append(Violation("tree", missing, f"tree is disconnected; nodes {list(missing)} unreachable from node 0"))
    if len(T.tree_edges) != N - 1:
        out.append(Violation("tree", (), f"{len(T.tree_edges)} tree edges for {N} nodes; a tree needs {N - 1}"))

    bag_masks = [to_mask(b) for b in T.bags]
    for i, b in enumerate(T.bags):
        bad = [v for v in b if not 0 <= v < G.n]
        if bad:
            out.append(Violation("range", (i,), f"bag {i} holds ids {bad} outside the graph"))

    holders = [0] * G.n  # node mask per vertex
    for i, m in enumerate(bag_masks):
        for v in bits(m & ((1 << G.n) - 1)):
            holders[v] |= 1 << i
    for v in range(G.n):
        if not holders[v]:
            out.append(Violation("vertex", (v,), f"vertex {v} lies in no bag"))
    for u, v in G.edges:
        if not holders[u] & holders[v]:
            out.append(Violation("edge", (u, v), f"edge {(u, v)} is in no bag"))
    for v in range(G.n):
        h = holders[v]
        if h and _reach(tree_adj, h & -h, h) != h:
            out.append(
                Violation("subtree", (v,), f"nodes holding vertex {v} ({list(bits(h))}) are not connected in the tree")
            )
    return out


def _reach(adj: list[int], start: int, within: int) -> int:
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for x in bits(frontier):
            nxt |= adj[x]
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


def is_valid(G: Graph, T: TreeDecomposition) -> bool:
    return not validate(G, T)


def width(T: TreeDecomposition) -> int:
    if not T.bags:
        raise DecompositionError("width of an empty decomposition")
    return max(len(b) for b in T.bags) - 1


def max_bag(T: TreeDecomposition) -> int:
    return width(T) + 1


def bag_containing(T: TreeDecomposition, C: Iterable[int]) -> int:
    """Smallest node whose bag contains ``C``.

    Raises:
        DecompositionError: no bag contains ``C``, so either ``C`` is not a
            clique or ``T`` is not a valid decomposition.
    """
    want = to_mask(C)
    for i, b in enumerate(T.bags):
        if want & ~to_mask(b) == 0:
            return i
    raise DecompositionError(
        f"no bag contains {sorted(bits(want))}: not a clique, or the decomposition is invalid"
    )


def attach_copy(
    T_A: TreeDecomposition, T_B: TreeDecomposition, C: Iterable[int], label: str = ""
) -> TreeDecomposition:
    """Decompose ``A`` plus a disjoint copy ``B_C`` made complete to the clique ``C``.

    ``T_B`` must already use the copy's vertex ids.  Its nodes are renumbered
    after those of ``T_A``, ``C`` is added to each of its bags, and its first
    node is joined to the first bag of ``T_A`` containing ``C``.
    """
    C = tuple(sorted(set(C)))
    if T_A.vertices() & T_B.vertices():
        clash = sorted(bits(T_A.vertices() & T_B.vertices()))
        raise DecompositionError(f"copy reuses vertex ids {clash[:10]} of the base graph")
    if not T_B.bags:
        raise DecompositionError("attached decomposition has no nodes")
    x = bag_containing(T_A, C)
    off = T_A.num_nodes
    bags = T_A.bags + tuple(tuple(sorted(b + C)) for b in T_B.bags)
    edges = T_A.tree_edges + tuple((a + off, b + off) for a, b in T_B.tree_edges) + ((x, off),)
    labels_b = [f"{label}/{T_B.label(i)}" if label else T_B.label(i) for i in range(T_B.num_nodes)]
    labels = _labels(T_A) + tuple(labels_b)
    return TreeDecomposition(bags, edges, labels)


def attach_gadget_bag(
    T_A: TreeDecomposition,
    gadget_vertices: Iterable[int],
    family_union: Iterable[int],
    label: str = "",
) -> TreeDecomposition:
    """Add one leaf with bag ``gadget | family_union`` next to a bag holding ``family_union``."""
    fam = tuple(sorted(set(family_union)))
    gadget = tuple(sorted(set(gadget_vertices)))
    if to_mask(gadget) & T_A.vertices():
        raise DecompositionError("gadget vertices already appear in the base decomposition")
    x = bag_containing(T_A, fam)
    new = T_A.num_nodes
    return TreeDecomposition(
        T_A.bags + (tuple(sorted(gadget + fam)),),
        T_A.tree_edges + ((x, new),),
        _labels(T_A) + (label,),
    )


def _labels(T: TreeDecomposition) -> tuple[str, ...]:
    return T.node_labels if T.node_labels is not None else ("",) * T.num_nodes


def relabel_vertices(T: TreeDecomposition, offset: int) -> TreeDecomposition:
    """Shift every vertex id by ``offset`` (used when placing a copy of a graph)."""
    return TreeDecomposition(
        tuple(tuple(v + offset for v in b) for b in T.bags), T.tree_edges, T.node_labels
    )


def to_dict(T: TreeDecomposition) -> dict:
    d = {
        "nodes": list(range(T.num_nodes)),
        "tree_edges": [list(e) for e in T.tree_edges],
        "bags": [list(b) for b in T.bags],
    }
    if T.node_labels is not None:
        d["labels"] = list(T.node_labels)
    return d


def from_dict(data: dict) -> TreeDecomposition:
    try:
        nodes = data["nodes"]
        bags = data["bags"]
        edges = data["tree_edges"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"decomposition JSON missing field: {exc}", 0) from exc
    if list(nodes) != list(range(len(bags))):
        raise ParseError("decomposition nodes must be 0..N-1 matching the bag list", 0)
    labels = data.get("labels")
    return TreeDecomposition(
        tuple(tuple(b) for b in bags),
        tuple((e[0], e[1]) for e in edges),
        tuple(labels) if labels is not None else None,
    )


def dumps(T: TreeDecomposition) -> str:
    return json.dumps(to_dict(T), sort_keys=True) + "\n"


def loads(text: str) -> TreeDecomposition:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from exc
    return from_dict(data)
