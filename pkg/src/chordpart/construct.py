"""The three recursive counterexample families.

``build_chordal(k, r)`` and ``build_perfect(k, r)`` return the graph together
with a tree-decomposition assembled alongside it; ``build_general(k, t, r)``
returns the graph only.  Vertex ids follow the construction depth-first: the
base graph first, then each attached copy or gadget in attachment order.
Labels record the construction path of every vertex, e.g. ``A/fam0/gadget/2``.

Sizes are predicted before anything is materialized.  The predictor tracks the
number of cliques of every order, which is enough to count clique families in
closed form: a family is an unordered split of a ``qm``-clique into ``m``
blocks of ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import Literal, Sequence

from . import decomposition as td
from .config import caps
from .errors import ResourceCapError
from .graph import Graph, VertexSet, bits, iter_clique_masks, to_mask

Family = Literal["chordal", "perfect", "general"]


def s_bound(k: int, r: int) -> int:
    """Bag-size bound of the chordal family: ``(k^3 - k)/3 + (r - 1)k + 4``."""
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    return (k**3 - k) // 3 + (r - 1) * k + 4


def t_bound(k: int, r: int) -> int:
    """Bag-size bound of the perfect family: ``2(k^3 - k)/3 + (r - 1)k + 6``."""
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    return 2 * (k**3 - k) // 3 + (r - 1) * k + 6


def icbrt(x: int) -> int:
    """Largest integer ``c >= 0`` with ``c**3 <= x`` (integer Newton iteration)."""
    if x < 0:
        raise ValueError("cube root of a negative number")
    if x < 2:
        return x
    c = 1 << -(-x.bit_length() // 3)  # an upper bound on the root
    while True:
        d = (2 * c + x // (c * c)) // 3
        if d >= c:
            return c
        c = d


def theorem_clique_order(family: Literal["chordal", "perfect"], t: int) -> int:
    """Clique order forced in some part, for graphs of tree-width at most ``t - 1``.

    chordal: ``floor((3t - 11)^(1/3))`` for ``t >= 4``;
    perfect: ``floor((3t/2 - 8)^(1/3))`` for ``t >= 6``.
    """
    if family == "chordal":
        if t < 4:
            raise ValueError(f"chordal bound needs t >= 4, got {t}")
        k = icbrt(3 * t - 11)
        assert s_bound(k, 1) <= t
    elif family == "perfect":
        if t < 6:
            raise ValueError(f"perfect bound needs t >= 6, got {t}")
        # k^3 <= 3t/2 - 8  <=>  2k^3 <= 3t - 16
        k = icbrt((3 * t - 16) // 2)
        assert t_bound(k, 1) <= t
    else:
        raise ValueError(f"unknown family {family!r}")
    return k


def clique_order_table(family: Literal["chordal", "perfect"], t_max: int) -> list[int]:
    """``theorem_clique_order(family, t)`` for every ``t <= t_max``, as a list indexed by ``t``.

    Entries below the family's threshold are 0.  The order steps from ``k-1``
    to ``k`` at the least ``t`` whose radicand reaches ``k^3``; the bag-size
    guarantee is asserted there, which is the tightest ``t`` for that ``k``.
    """
    if family == "chordal":
        lo, bound = 4, s_bound
        first_t = lambda k: -(-(k**3 + 11) // 3)  # 3t - 11 >= k^3  # noqa: E731
    elif family == "perfect":
        lo, bound = 6, t_bound
        first_t = lambda k: -(-(2 * k**3 + 16) // 3)  # (3t - 16) // 2 >= k^3  # noqa: E731
    else:
        raise ValueError(f"unknown family {family!r}")
    out = [0] * (t_max + 1)
    k = 1
    while first_t(k) <= t_max:
        a = max(first_t(k), lo)
        b = min(first_t(k + 1), t_max + 1)
        assert bound(k, 1) <= a
        out[a:b] = [k] * (b - a)
        k += 1
    return out


@dataclass(frozen=True)
class CliqueFamily:
    """Pairwise-disjoint ``q``-cliques whose union is a clique, sorted by minimum id."""

    cliques: tuple[VertexSet, ...]

    @property
    def union(self) -> VertexSet:
        return tuple(sorted(v for c in self.cliques for v in c))


def _splits(vertices: tuple[int, ...], q: int):
    """Unordered partitions of ``vertices`` into blocks of size ``q``; blocks led by their minimum."""
    if not vertices:
        yield ()
        return
    first, rest = vertices[0], vertices[1:]
    for others in combinations(rest, q - 1):
        block = (first, *others)
        remaining = tuple(v for v in rest if v not in others)
        for tail in _splits(remaining, q):
            yield (block, *tail)


def enumerate_clique_families(G: Graph, q: int, m: int) -> list[CliqueFamily]:
    """Every unordered family of ``m`` disjoint ``q``-cliques with complete union, once each.

    Each family is determined by its union (a ``qm``-clique) and the split of
    that union into blocks; both are enumerated without repetition, so the
    output has no duplicates.
    """
    if q < 1 or m < 1:
        raise ValueError("q and m must be >= 1")
    out = []
    for c in iter_clique_masks(G.adj, q * m, G.all_mask):
        for split in _splits(tuple(bits(c)), q):
            out.append(CliqueFamily(split))
    return out


def family_count(num_unions: int, q: int, m: int) -> int:
    """Number of families given the number of ``qm``-cliques."""
    return num_unions * factorial(q * m) // (factorial(q) ** m * factorial(m))


# --- size prediction -----------------------------------------------------


@dataclass(frozen=True)
class Prediction:
    """Vertex count and clique counts; ``cliques[j]`` is the number of ``j``-cliques (``cliques[0] = 1``)."""

    n: int
    cliques: tuple[int, ...]

    def count(self, j: int) -> int:
        return self.cliques[j] if 0 <= j < len(self.cliques) else 0


def _trim(c: list[int]) -> tuple[int, ...]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def _complete_prediction(r: int) -> Prediction:
    return Prediction(r, tuple(comb(r, j) for j in range(r + 1)))


def _copy_step(A: Prediction, B: Prediction, k: int) -> Prediction:
    """A plus, for each k-clique C of A, a copy of B complete to C."""
    ck = A.count(k)
    size = max(len(A.cliques), len(B.cliques) + k)
    c = [A.count(j) for j in range(size)]
    for j in range(1, size):
        c[j] += ck * sum(comb(k, i) * B.count(j - i) for i in range(0, min(k, j - 1) + 1))
    return Prediction(A.n + ck * B.n, _trim(c))


def _gadget_step(A: Prediction, q: int, m: int, gadget_n: int, per_family: Sequence[int]) -> Prediction:
    f = family_count(A.count(q * m), q, m)
    size = max(len(A.cliques), len(per_family))
    c = [A.count(j) + f * (per_family[j] if j < len(per_family) else 0) for j in range(size)]
    return Prediction(A.n + f * gadget_n, _trim(c))


@lru_cache(maxsize=None)
def predict(family: Family, k: int, r: int, t: int = 0) -> Prediction:
    """Closed-form size and clique counts of a construction, without building it."""
    if family == "general":
        return _predict_general(k, t, r)
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    if k == 1:
        return _complete_prediction(r)
    if r > 1:
        return _copy_step(predict(family, k, 1), predict(family, k, r - 1), k)
    if family == "chordal":
        m = k + 1
        per = [0] + [comb(k + 1, j) + (k + 1) * comb(k - 1, j - 1) * (j >= 2) for j in range(1, k + 2)]
        return _gadget_step(predict(family, k - 1, m), k - 1, m, k + 1, per)
    if family == "perfect":
        m = 2 * k + 1
        per = [0] + [
            2 * comb(k + 1, j) - (j == 1) + m * comb(k - 1, j - 1) * (j >= 2) for j in range(1, k + 2)
        ]
        return _gadget_step(predict(family, k - 1, m), k - 1, m, m, per)
    raise ValueError(f"unknown family {family!r}")


def _predict_general(k: int, t: int, r: int) -> Prediction:
    if k < 1 or t < 1 or r < 1:
        raise ValueError("k, t and r must be >= 1")
    if t == 1:
        return Prediction(1, (1, 1))
    if k == 1:
        return _complete_prediction(r)
    if r > 1:
        return _copy_step(predict("general", k, 1, t), predict("general", k, r - 1, t), k)
    B = predict("general", k, 1, t - 1)
    slots = 2**B.n
    A = predict("general", k - 1, slots, t)
    # A clique T of the copy sees exactly the 2^(n-|T|) blocks C_i with T inside S^i.
    top = len(B.cliques) + (k - 1) * slots
    per = [0] * top
    for a in range(1, len(B.cliques)):
        reach = (k - 1) * 2 ** (B.n - a)
        for j in range(a, min(top, a + reach + 1)):
            per[j] += B.cliques[a] * comb(reach, j - a)
    return _gadget_step(A, k - 1, slots, B.n, per)


def predicted_size(family: Family, k: int, r: int, t: int = 0) -> int:
    return predict(family, k, r, t).n


# --- builders --------------------------------------------------------------


@dataclass(frozen=True)
class Attachment:
    """One top-level attachment: a copy at a k-clique, or a gadget at a clique family."""

    kind: Literal["copy", "gadget"]
    family: CliqueFamily
    vertices: VertexSet

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "family": [list(c) for c in self.family.cliques],
            "vertices": list(self.vertices),
        }


@dataclass(frozen=True)
class ConstructionResult:
    graph: Graph
    decomposition: td.TreeDecomposition | None
    family: Family
    k: int
    r: int
    t: int | None = None
    predicted_size: int = 0
    attachment_log: tuple[Attachment, ...] = field(default=(), repr=False)

    @property
    def bound(self) -> int | None:
        """Bag-size bound for the family (``None`` for the general family)."""
        if self.family == "chordal":
            return s_bound(self.k, self.r)
        if self.family == "perfect":
            return t_bound(self.k, self.r)
        return None

    @property
    def params(self) -> dict:
        d = {"family": self.family, "k": self.k, "r": self.r}
        if self.t is not None:
            d["t"] = self.t
        return d


class _Builder:
    """Mutable scratch graph used while assembling one construction step."""

    def __init__(self, base: Graph, prefix: str) -> None:
        self.adj = list(base.adj)
        self.labels = [f"{prefix}/{base.label(v)}" for v in range(base.n)]

    @property
    def n(self) -> int:
        return len(self.adj)

    def add_copy(self, G: Graph, prefix: str) -> int:
        off = self.n
        self.adj.extend(row << off for row in G.adj)
        self.labels.extend(f"{prefix}/{G.label(v)}" for v in range(G.n))
        return off

    def join(self, xs: int, ys: int) -> None:
        """Make the vertex masks ``xs`` and ``ys`` complete to each other."""
        for x in bits(xs):
            self.adj[x] |= ys
        for y in bits(ys):
            self.adj[y] |= xs

    def freeze(self) -> Graph:
        return Graph.from_adjacency(self.adj, self.labels)


def _precheck(family: Family, k: int, r: int, t: int, force: bool, cap: int | None) -> int:
    size = predicted_size(family, k, r, t)
    cap = caps().construction if cap is None else cap
    if size > cap and not force:
        params = f"family={family}, k={k}, r={r}" + (f", t={t}" if family == "general" else "")
        raise ResourceCapError("construction", size, cap, f"predicted vertex count for {params}")
    return size


def _single_vertex(family: Family, k: int, r: int, t: int | None) -> ConstructionResult:
    G = Graph.from_adjacency([0], ["v"])
    return ConstructionResult(G, td.single_bag([0], "base"), family, k, r, t, 1)


def _copy_step_build(
    family: Family, k: int, r: int, t: int | None, A: ConstructionResult, B: ConstructionResult
) -> ConstructionResult:
    b = _Builder(A.graph, "A")
    T = A.decomposition
    log = []
    for idx, cmask in enumerate(iter_clique_masks(A.graph.adj, k, A.graph.all_mask)):
        off = b.add_copy(B.graph, f"clique{idx}")
        copy_mask = ((1 << B.graph.n) - 1) << off
        b.join(cmask, copy_mask)
        clique = tuple(bits(cmask))
        if T is not None:
            T = td.attach_copy(T, td.relabel_vertices(B.decomposition, off), clique, f"clique{idx}")
        log.append(Attachment("copy", CliqueFamily((clique,)), tuple(bits(copy_mask))))
    G = b.freeze()
    return ConstructionResult(G, T, family, k, r, t, G.n, tuple(log))


@lru_cache(maxsize=None)
def _build(family: Family, k: int, r: int) -> ConstructionResult:
    if k == 1 and r == 1:
        return _single_vertex(family, k, r, None)
    if r > 1:
        return _copy_step_build(family, k, r, None, _build(family, k, 1), _build(family, k, r - 1))
    m = k + 1 if family == "chordal" else 2 * k + 1
    A = _build(family, k - 1, m)
    b = _Builder(A.graph, "A")
    T = A.decomposition
    log = []
    for idx, fam in enumerate(enumerate_clique_families(A.graph, k - 1, m)):
        off = b.n
        gadget = _gadget(family, k)
        b.add_copy(gadget, f"fam{idx}/gadget")
        for slot, clique in enumerate(fam.cliques):
            b.join(to_mask(clique), 1 << (off + slot))
        verts = tuple(range(off, off + gadget.n))
        T = td.attach_gadget_bag(T, verts, fam.union, f"fam{idx}")
        log.append(Attachment("gadget", fam, verts))
    G = b.freeze()
    return ConstructionResult(G, T, family, k, r, None, G.n, tuple(log))


def _gadget(family: Family, k: int) -> Graph:
    """K_{k+1}, or two K_{k+1} sharing slot k (last of the first copy, first of the second)."""
    if family == "chordal":
        n = k + 1
        edges = combinations(range(n), 2)
    else:
        n = 2 * k + 1
        edges = [*combinations(range(k + 1), 2), *combinations(range(k, n), 2)]
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph.from_adjacency(adj, [str(i) for i in range(n)])


def build_chordal(k: int, r: int, *, force: bool = False, cap: int | None = None) -> ConstructionResult:
    """Graph whose chordal partitions all satisfy the clique-spread or part-clique outcome.

    Raises:
        ResourceCapError: the predicted vertex count exceeds the cap (the
            error carries the prediction); ``force=True`` overrides.
    """
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    size = _precheck("chordal", k, r, 0, force, cap)
    res = _build("chordal", k, r)
    assert res.graph.n == size
    return res


def build_perfect(k: int, r: int, *, force: bool = False, cap: int | None = None) -> ConstructionResult:
    """Perfect-partition analogue of :func:`build_chordal`, with bowtie gadgets."""
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    size = _precheck("perfect", k, r, 0, force, cap)
    res = _build("perfect", k, r)
    assert res.graph.n == size
    return res


@lru_cache(maxsize=None)
def _build_general(k: int, t: int, r: int) -> ConstructionResult:
    if t == 1:
        return ConstructionResult(Graph.from_adjacency([0], ["v"]), None, "general", k, r, t, 1)
    if k == 1:
        full = (1 << r) - 1
        G = Graph.from_adjacency([full & ~(1 << v) for v in range(r)], [f"v{v}" for v in range(r)])
        return ConstructionResult(G, None, "general", k, r, t, r)
    if r > 1:
        return _copy_step_build("general", k, r, t, _build_general(k, t, 1), _build_general(k, t, r - 1))
    B = _build_general(k, t - 1, 1).graph
    slots = 2**B.n
    A = _build_general(k - 1, t, slots).graph
    b = _Builder(A, "A")
    log = []
    for idx, fam in enumerate(enumerate_clique_families(A, k - 1, slots)):
        off = b.add_copy(B, f"fam{idx}/copy")
        # Slot i is joined to the subset of the copy with binary mask i.
        for i, clique in enumerate(fam.cliques):
            b.join(to_mask(clique), i << off)
        log.append(Attachment("gadget", fam, tuple(range(off, off + B.n))))
    G = b.freeze()
    return ConstructionResult(G, None, "general", k, r, t, G.n, tuple(log))


def build_general(
    k: int, t: int, r: int, *, force: bool = False, cap: int | None = None
) -> ConstructionResult:
    """Graph whose connected partitions force a spread clique, every ``t``-vertex
    graph in the quotient, or ``K_{k+1}`` inside a part.  No decomposition is built."""
    if k < 1 or t < 1 or r < 1:
        raise ValueError("k, t and r must be >= 1")
    size = _precheck("general", k, r, t, force, cap)
    res = _build_general(k, t, r)
    assert res.graph.n == size
    return res


def build(family: Family, k: int, r: int, t: int | None = None, **kw) -> ConstructionResult:
    if family == "chordal":
        return build_chordal(k, r, **kw)
    if family == "perfect":
        return build_perfect(k, r, **kw)
    if family == "general":
        if t is None:
            raise ValueError("the general family needs t")
        return build_general(k, t, r, **kw)
    raise ValueError(f"unknown family {family!r}")
