"""Chordal and (small-scale) perfect graph recognition, with certificates.

Perfection is decided through odd holes and odd antiholes; the definitional
check (chromatic number equals clique number on every induced subgraph) is
kept as :func:`is_perfect_definitional` for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .config import caps
from .errors import ResourceCapError
from .graph import Graph, bits, complement, is_clique_mask, popcount, to_mask


class CertificateError(AssertionError):
    """A certificate failed re-verification: an internal bug, never a user error."""


@dataclass(frozen=True)
class ChordalityResult:
    chordal: bool
    ordering: tuple[int, ...] | None = None  # perfect elimination ordering
    hole: tuple[int, ...] | None = None  # induced cycle of length >= 4

    def __bool__(self) -> bool:
        return self.chordal


@dataclass(frozen=True)
class PerfectionResult:
    perfect: bool
    cycle: tuple[int, ...] | None = None
    antihole: bool = False  # cycle lives in the complement

    def __bool__(self) -> bool:
        return self.perfect


def mcs_order(G: Graph) -> list[int]:
    """Maximum-cardinality search visit order (ties to the smallest id)."""
    weight = [0] * G.n
    unnumbered = G.all_mask
    order = []
    for _ in range(G.n):
        best = -1
        for v in bits(unnumbered):
            if best < 0 or weight[v] > weight[best]:
                best = v
        order.append(best)
        unnumbered &= ~(1 << best)
        for u in bits(G.adj[best] & unnumbered):
            weight[u] += 1
    return order


def peo_violation(G: Graph, ordering: Sequence[int]) -> tuple[int, int, int] | None:
    """First ``(v, x, y)`` with ``x, y`` later non-adjacent neighbours of ``v``; ``None`` if PEO."""
    later = to_mask(ordering)
    for v in ordering:
        later &= ~(1 << v)
        nb = G.adj[v] & later
        if not is_clique_mask(G.adj, nb):
            for x in bits(nb):
                miss = nb & ~G.adj[x] & ~(1 << x)
                if miss:
                    return v, x, (miss & -miss).bit_length() - 1
    return None


def is_induced_cycle(G: Graph, cycle: Sequence[int]) -> bool:
    L = len(cycle)
    if L < 3 or len(set(cycle)) != L:
        return False
    mask = to_mask(cycle)
    for i, v in enumerate(cycle):
        want = (1 << cycle[i - 1]) | (1 << cycle[(i + 1) % L])
        if G.adj[v] & mask != want:
            return False
    return True


def _shortest_path(adj: Sequence[int], src: int, dst: int, allowed: int) -> list[int] | None:
    parent = {src: src}
    frontier = [src]
    seen = 1 << src
    while frontier:
        nxt = []
        for v in frontier:
            for u in bits(adj[v] & allowed & ~seen):
                seen |= 1 << u
                parent[u] = v
                if u == dst:
                    path = [u]
                    while path[-1] != src:
                        path.append(parent[path[-1]])
                    return path[::-1]
                nxt.append(u)
        frontier = nxt
    return None


def is_chordal(G: Graph) -> ChordalityResult:
    """Decide chordality; certificate is a verified PEO or an induced cycle of length >= 4."""
    peo = mcs_order(G)[::-1]
    if peo_violation(G, peo) is None:
        return ChordalityResult(True, ordering=tuple(peo))
    # Close a chordless cycle through each violating (v, x, y): a shortest x-y
    # path avoiding N[v] - {x, y} plus v itself is induced.
    later = G.all_mask
    for v in peo:
        later &= ~(1 << v)
        nb = G.adj[v] & later
        for x in bits(nb):
            for y in bits(nb & ~G.adj[x] & ~((1 << (x + 1)) - 1)):
                allowed = G.all_mask & ~(G.adj[v] | 1 << v) | (1 << x) | (1 << y)
                path = _shortest_path(G.adj, x, y, allowed)
                if path is not None:
                    cycle = (v, *path)
                    if not is_induced_cycle(G, cycle) or len(cycle) < 4:
                        raise CertificateError(f"bad hole certificate {cycle}")
                    return ChordalityResult(False, hole=cycle)
    hole = find_induced_long_cycle(G, 4, cap=G.n)
    if hole is None:
        raise CertificateError("MCS order is not a PEO but no induced long cycle exists")
    return ChordalityResult(False, hole=hole)


def _cycle_of_length(adj: Sequence[int], n: int, L: int) -> tuple[int, ...] | None:
    """An induced cycle on exactly ``L >= 4`` vertices whose smallest vertex comes first."""
    path: list[int] = []

    def rec(blocked: int, s: int) -> bool:
        j = len(path)
        last = path[-1]
        cand = adj[last] & ~blocked & ~((1 << (s + 1)) - 1)
        if j > 1:
            cand &= adj[s] if j == L - 1 else ~adj[s]
        if j == L - 1:
            for w in bits(cand):
                path.append(w)
                return True
            return False
        nb = blocked | (1 << last)
        if j > 1:
            nb |= adj[last]
        for w in bits(cand):
            path.append(w)
            if rec(nb | (1 << w), s):
                return True
            path.pop()
        return False

    for s in range(n):
        if popcount(adj[s] & ~((1 << (s + 1)) - 1)) < 2:
            continue
        path[:] = [s]
        if rec(1 << s, s):
            return tuple(path)
    return None


def find_induced_long_cycle(
    G: Graph, min_len: int = 4, cap: int | None = None, parity: int | None = None
) -> tuple[int, ...] | None:
    """A shortest induced cycle with at least ``min_len`` vertices, or ``None``.

    ``parity`` restricts to odd (1) or even (0) lengths.

    Raises:
        ResourceCapError: ``|V(G)|`` exceeds the induced-cycle cap.
    """
    if min_len < 4:
        raise ValueError("min_len must be >= 4")
    cap = caps().induced_cycle if cap is None else cap
    if G.n > cap:
        raise ResourceCapError("induced cycle search", G.n, cap)
    for L in range(min_len, G.n + 1):
        if parity is not None and L % 2 != parity:
            continue
        cyc = _cycle_of_length(G.adj, G.n, L)
        if cyc is not None:
            if not is_induced_cycle(G, cyc):
                raise CertificateError(f"bad cycle certificate {cyc}")
            return cyc
    return None


def find_odd_hole(G: Graph, cap: int | None = None) -> tuple[int, ...] | None:
    return find_induced_long_cycle(G, 5, cap=cap, parity=1)


def is_perfect_small(G: Graph, cap: int | None = None) -> PerfectionResult:
    """Perfection via odd holes in ``G`` and in its complement.

    Raises:
        ResourceCapError: ``|V(G)|`` exceeds the perfection cap.
    """
    cap = caps().perfect if cap is None else cap
    if G.n > cap:
        raise ResourceCapError("perfection test", G.n, cap)
    hole = find_odd_hole(G, cap=G.n)
    if hole is not None:
        return PerfectionResult(False, hole, antihole=False)
    co = complement(G)
    anti = find_odd_hole(co, cap=G.n)
    if anti is not None:
        if not is_induced_cycle(co, anti):
            raise CertificateError(f"bad antihole certificate {anti}")
        return PerfectionResult(False, anti, antihole=True)
    return PerfectionResult(True)


def max_clique(G: Graph, budget: int | None = None) -> tuple[int, ...]:
    """A maximum clique, by bitset branch and bound with greedy-colouring bounds.

    Raises:
        ResourceCapError: more than ``budget`` search nodes were expanded.
    """
    budget = caps().clique_budget if budget is None else budget
    adj = G.adj
    best = [0, 0]  # size, mask
    nodes = [0]

    def colour_bound(cand: int) -> list[tuple[int, int]]:
        # Greedy sequential colouring; returns (vertex, colour) ascending by colour.
        out = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~adj[v] & ~low
                rest &= ~low
                out.append((v, colour))
        return out

    def expand(chosen: int, size: int, cand: int) -> None:
        nodes[0] += 1
        if nodes[0] > budget:
            raise ResourceCapError("max clique search nodes", nodes[0], budget)
        order = colour_bound(cand)
        for v, c in reversed(order):
            if size + c <= best[0]:
                return
            nc = cand & adj[v]
            if nc:
                expand(chosen | 1 << v, size + 1, nc)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, chosen | 1 << v
            cand &= ~(1 << v)

    if G.n:
        expand(0, 0, G.all_mask)
    return tuple(bits(best[1]))


def max_clique_size(G: Graph, budget: int | None = None) -> int:
    return len(max_clique(G, budget))


def chromatic_number(G: Graph, cap: int | None = None) -> int:
    """Exact chromatic number: DSATUR branch and bound, pruned by the clique number.

    Raises:
        ResourceCapError: ``|V(G)|`` exceeds the chromatic cap.
    """
    cap = caps().chromatic if cap is None else cap
    if G.n > cap:
        raise ResourceCapError("chromatic number", G.n, cap)
    if G.n == 0:
        return 0
    lower = max_clique_size(G)
    colour = [-1] * G.n
    best = [G.n + 1]

    def pick() -> int:
        choice, key = -1, None
        for v in range(G.n):
            if colour[v] >= 0:
                continue
            sat = len({colour[u] for u in bits(G.adj[v]) if colour[u] >= 0})
            k = (sat, G.degree(v), -v)
            if key is None or k > key:
                choice, key = v, k
        return choice

    def rec(done: int, used: int) -> bool:
        if used >= best[0]:
            return False
        if done == G.n:
            best[0] = used
            return used == lower
        v = pick()
        taken = {colour[u] for u in bits(G.adj[v]) if colour[u] >= 0}
        for c in range(min(used + 1, best[0] - 1)):
            if c in taken:
                continue
            colour[v] = c
            if rec(done + 1, max(used, c + 1)):
                return True
            colour[v] = -1
        return False

    rec(0, 0)
    return best[0]


def is_perfect_definitional(G: Graph) -> bool:
    """chi(H) == omega(H) for every non-empty induced subgraph ``H`` (exponential)."""
    from .graph import _induced_from_mask

    for mask in range(1, 1 << G.n):
        H, _ = _induced_from_mask(G, mask)
        if chromatic_number(H, cap=H.n) != max_clique_size(H):
            return False
    return True
