"""Acceptance criteria 1-10.

Each test prints one ``PASS``/``FAIL`` line (also collected into the pytest
terminal summary) with the measured time and its pinned limit.  Run with
``pytest tests/test_acceptance.py -s`` to see the lines inline.
"""

import random
import time
from contextlib import contextmanager
from itertools import combinations

import networkx as nx

from chordpart import construct
from chordpart import decomposition as td
from chordpart.construct import (
    build_chordal,
    build_general,
    build_perfect,
    clique_order_table,
    predicted_size,
    s_bound,
    t_bound,
    theorem_clique_order,
)
from chordpart.graph import are_isomorphic, enumerate_cliques, induced_subgraph, make_graph
from chordpart.partition import (
    check_restriction_precondition,
    is_connected_partition,
    make_partition,
    quotient,
    restrict,
)
from chordpart.recognition import is_chordal, is_perfect_small
from chordpart.verify import replay, verify_chordal_lemma, verify_general_lemma, verify_perfect_lemma

from .conftest import (
    ACCEPTANCE_LINES,
    PRISM_EDGES,
    naive_chromatic_number,
    naive_clique_number,
    naive_has_induced_cycle,
    random_connected_partition,
    random_graph,
    restriction_instance,
)


@contextmanager
def criterion(num: int, title: str, limit: float):
    """Time the block; emit one PASS/FAIL line whether or not it raised."""
    info: dict = {}
    start = time.perf_counter()
    ok = False
    try:
        yield info
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        extra = f"; {info['detail']}" if "detail" in info else ""
        line = f"{'PASS' if ok else 'FAIL'} #{num} {title} ({elapsed:.2f}s, limit {limit:g}s{extra})"
        ACCEPTANCE_LINES.append(line)
        print(line)


def _cold_caches():
    """Builders memoize; clear so timed criteria include construction."""
    construct._build.cache_clear()
    construct._build_general.cache_clear()
    construct.predict.cache_clear()


def nx_graph(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def test_01_formula_chains():
    with criterion(1, "bound chain identities, 2<=k<=20, 1<=r<=20", 1.0) as info:
        checked = 0
        for k in range(2, 21):
            assert s_bound(k, 1) == s_bound(k - 1, k + 1)
            assert s_bound(k, 1) >= (k + 1) * k
            assert t_bound(k, 1) == t_bound(k - 1, 2 * k + 1)
            assert t_bound(k, 1) >= (2 * k + 1) * k
            for r in range(1, 21):
                assert s_bound(k, r + 1) == s_bound(k, r) + k
                assert t_bound(k, r + 1) == t_bound(k, r) + k
                checked += 1
        info["detail"] = f"{checked} (k,r) pairs"


def test_02_theorem_clique_order():
    N = 10**6
    families = (("chordal", 4, s_bound, lambda t: 3 * t - 11), ("perfect", 6, t_bound, lambda t: (3 * t - 16) // 2))
    tables = {}
    with criterion(2, "clique order guarantee for all t <= 10^6", 1.0) as info:
        for fam, lo, bound, _ in families:
            table = tables[fam] = clique_order_table(fam, N)
            b1 = [bound(k, 1) if k else 0 for k in range(table[N] + 1)]
            assert all(b1[table[t]] <= t for t in range(lo, N + 1))
        info["detail"] = "batched table, exact integer arithmetic"
    # untimed oracle checks: exact floor of the cube root, and per-call agreement
    for fam, lo, _, radicand in families:
        table = tables[fam]
        cube = [k**3 for k in range(table[N] + 2)]
        assert all(cube[table[t]] <= radicand(t) < cube[table[t] + 1] for t in range(lo, N + 1))
        step_points = [t for t in range(lo + 1, N + 1) if table[t] != table[t - 1]]
        for t in [lo, N, *step_points, *(p - 1 for p in step_points)]:
            assert theorem_clique_order(fam, t) == table[t]
        for t in random.Random(2).sample(range(lo, N + 1), 20000):
            assert theorem_clique_order(fam, t) == table[t]


def test_03_prism():
    _cold_caches()
    with criterion(3, "build_chordal(2,1) is the prism, width <= 5", 1.0) as info:
        res = build_chordal(2, 1)
        assert are_isomorphic(res.graph, make_graph(6, PRISM_EDGES))
        assert nx.is_isomorphic(nx_graph(res.graph), nx_graph(make_graph(6, PRISM_EDGES)))
        assert td.validate(res.graph, res.decomposition) == []
        w = td.width(res.decomposition)
        assert w <= s_bound(2, 1) - 1 == 5
        info["detail"] = f"width {w}"


def test_04_chordal_lemma_prism():
    with criterion(4, "chordal lemma on build_chordal(2,1)", 1.0) as info:
        rep = verify_chordal_lemma(build_chordal(2, 1).graph, 2, 1)
        assert rep.failures == []
        info["detail"] = f"{rep.partition_count} connected, {rep.filtered_count} chordal-quotient, 0 failures"
    assert rep.partition_count <= 203


def test_05_perfect_lemma():
    with criterion(5, "perfect lemma on build_perfect(2,1), single worker", 600.0) as info:
        rep = verify_perfect_lemma(build_perfect(2, 1).graph, 2, 1, workers=1)
        assert rep.failures == []
        info["detail"] = f"{rep.partition_count} connected, {rep.filtered_count} perfect-quotient, 0 failures"
    assert rep.partition_count <= 115975


def test_06_general_lemma():
    with criterion(6, "general lemma on build_general(2,2,1)", 1.0) as info:
        rep = verify_general_lemma(build_general(2, 2, 1).graph, 2, 2, 1)
        assert rep.failures == []
        info["detail"] = f"{rep.partition_count} connected partitions, 0 failures"


def test_07_non_vacuity():
    with criterion(7, "star K_{1,3} fails the chordal lemma with replayable witness", 1.0) as info:
        star = make_graph(4, [(0, 1), (0, 2), (0, 3)])
        rep = verify_chordal_lemma(star, 2, 1)
        assert len(rep.failures) >= 1
        for f in rep.failures:
            again = replay(star, f, "chordal", 2, 1)
            assert again["quotient_class"] == "chordal"
            assert not (again["outcome1"] or again["outcome2"])
        info["detail"] = f"{len(rep.failures)} failure(s)"


def test_08_restriction_property():
    rng = random.Random(8)
    with criterion(8, "restriction lemma on 1000 random instances", 30.0) as info:
        checked = 0
        for _ in range(1000):
            G, X = restriction_instance(rng)
            assert check_restriction_precondition(G, X) is None
            for _ in range(3):
                P = make_partition(G.n, random_connected_partition(rng, G))
                R = restrict(G, P, X)
                assert is_connected_partition(R.graph, R.partition)
                q_restricted = nx_graph(quotient(R.graph, R.partition).graph)
                q_induced = nx_graph(induced_subgraph(quotient(G, P).graph, R.origin)[0])
                assert nx.is_isomorphic(q_restricted, q_induced)
                checked += 1
        info["detail"] = f"{checked} partitions, 0 violations"


def _naive_perfect(G) -> bool:
    for size in range(1, G.n + 1):
        for S in combinations(range(G.n), size):
            H = induced_subgraph(G, S)[0]
            if naive_chromatic_number(H) != naive_clique_number(H):
                return False
    return True


def test_09_recognizer_oracles():
    rng = random.Random(9)
    with criterion(9, "is_chordal x1000 (n<=10), is_perfect_small x300 (n<=7) vs oracles", 120.0) as info:
        for _ in range(1000):
            G = random_graph(rng, rng.randint(0, 10), rng.choice([0.2, 0.4, 0.6, 0.8]))
            assert is_chordal(G).chordal == (not naive_has_induced_cycle(G, 4))
        for _ in range(300):
            G = random_graph(rng, rng.randint(0, 7), rng.choice([0.3, 0.5, 0.7]))
            assert is_perfect_small(G).perfect == _naive_perfect(G)
        info["detail"] = "0 disagreements"


def test_10_size_recurrences():
    _cold_caches()
    with criterion(10, "G(2,2) sizes 60 and 220 with widths <= 7 and <= 11", 5.0) as info:
        c = build_chordal(2, 2)
        p = build_perfect(2, 2)
        assert c.graph.n == 60 == predicted_size("chordal", 2, 2)
        assert p.graph.n == 220 == predicted_size("perfect", 2, 2)
        for fam, res, bound in (("chordal", c, s_bound(2, 2)), ("perfect", p, t_bound(2, 2))):
            base = build_chordal(2, 1) if fam == "chordal" else build_perfect(2, 1)
            # n(k, r+1) = n(k, 1) + #k-cliques(G(k, 1)) * n(k, r)
            assert res.graph.n == base.graph.n + len(enumerate_cliques(base.graph, 2)) * base.graph.n
            assert td.validate(res.graph, res.decomposition) == []
            assert td.width(res.decomposition) <= bound - 1
        info["detail"] = f"widths {td.width(c.decomposition)} and {td.width(p.decomposition)}"
