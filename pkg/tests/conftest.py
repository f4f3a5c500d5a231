from __future__ import annotations

import random
from itertools import combinations, permutations

import pytest
from hypothesis import strategies as st

from chordpart.graph import Graph, make_graph

# Prism: triangles a,b,c = 0,1,2 and x,y,z = 3,4,5 with a~x, b~y, c~z.
PRISM_EDGES = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
A, B, C, X, Y, Z = range(6)


@pytest.fixture
def prism() -> Graph:
    return make_graph(6, PRISM_EDGES)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return make_graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return make_graph(n, [p for p, c in zip(pairs, chosen) if c])


# --- brute-force oracles, deliberately naive and independent of the package --


def naive_embedding_exists(G: Graph, H: Graph) -> bool:
    for image in permutations(range(G.n), H.n):
        if all(
            H.has_edge(i, j) == G.has_edge(image[i], image[j])
            for i, j in combinations(range(H.n), 2)
        ):
            return True
    return False


def naive_is_induced_cycle(G: Graph, vs: tuple[int, ...]) -> bool:
    """``vs`` (as a set) induces a cycle: connected and every degree is 2."""
    s = set(vs)
    if len(s) < 3:
        return False
    if any(sum(G.has_edge(v, u) for u in s if u != v) != 2 for v in s):
        return False
    seen, stack = {vs[0]}, [vs[0]]
    while stack:
        v = stack.pop()
        for u in s:
            if u not in seen and G.has_edge(u, v):
                seen.add(u)
                stack.append(u)
    return seen == s


def naive_has_induced_cycle(G: Graph, min_len: int, parity: int | None = None) -> bool:
    for L in range(min_len, G.n + 1):
        if parity is not None and L % 2 != parity:
            continue
        if any(naive_is_induced_cycle(G, S) for S in combinations(range(G.n), L)):
            return True
    return False


def naive_clique_number(G: Graph) -> int:
    for size in range(G.n, 0, -1):
        for S in combinations(range(G.n), size):
            if all(G.has_edge(u, v) for u, v in combinations(S, 2)):
                return size
    return 0


def naive_chromatic_number(G: Graph) -> int:
    if G.n == 0:
        return 0
    for k in range(1, G.n + 1):
        def ok(col, v):
            if v == G.n:
                return True
            for c in range(k):
                if all(col[u] != c for u in range(v) if G.has_edge(u, v)):
                    col[v] = c
                    if ok(col, v + 1):
                        return True
            return False

        if ok([0] * G.n, 0):
            return k
    raise AssertionError


def naive_connected(G: Graph, S) -> bool:
    S = set(S)
    if not S:
        return False
    start = next(iter(S))
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        for u in S:
            if u not in seen and G.has_edge(u, v):
                seen.add(u)
                stack.append(u)
    return seen == S


def restriction_instance(rng: random.Random, max_x: int = 7, max_comps: int = 3, max_comp: int = 3):
    """Random ``(G, X)`` where every component of ``G - X`` sees a clique of ``X``.

    ``X`` occupies ids ``0..|X|-1``; each outside component is a random
    connected graph whose vertices attach to subsets of one clique of ``X``.
    """
    nx_ = rng.randint(1, max_x)
    edges = [e for e in combinations(range(nx_), 2) if rng.random() < 0.5]
    Xg = make_graph(nx_, edges)
    cliques = [
        S for size in range(0, nx_ + 1) for S in combinations(range(nx_), size)
        if all(Xg.has_edge(u, v) for u, v in combinations(S, 2))
    ]
    n = nx_
    for _ in range(rng.randint(0, max_comps)):
        size = rng.randint(1, max_comp)
        ids = list(range(n, n + size))
        for i in range(1, size):  # random spanning tree keeps it connected
            edges.append((ids[rng.randrange(i)], ids[i]))
        edges += [e for e in combinations(ids, 2) if rng.random() < 0.3]
        K = rng.choice(cliques)
        for v in ids:
            edges += [(k, v) for k in K if rng.random() < 0.6]
        n += size
    return make_graph(n, edges), tuple(range(nx_))


def random_connected_partition(rng: random.Random, G: Graph) -> list[set[int]]:
    """Merge random adjacent parts, starting from singletons."""
    parts = [{v} for v in range(G.n)]
    for _ in range(rng.randint(0, G.n)):
        pairs = [
            (i, j) for i in range(len(parts)) for j in range(i + 1, len(parts))
            if any(G.has_edge(u, v) for u in parts[i] for v in parts[j])
        ]
        if not pairs:
            break
        i, j = rng.choice(pairs)
        parts[i] |= parts.pop(j)
    return parts


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("#")[1].split()[0])):
            terminalreporter.write_line(line)
