import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chordpart import decomposition as td
from chordpart.construct import build_chordal, s_bound
from chordpart.errors import DecompositionError
from chordpart.graph import Graph, complete_graph, enumerate_cliques, make_graph, path_graph


def test_single_bag_always_valid(prism):
    T = td.single_bag(range(6))
    assert td.validate(prism, T) == []
    assert td.width(T) == 5


def test_path_decomposition():
    T = td.TreeDecomposition.build([[0, 1], [1, 2]], [(0, 1)])
    assert td.validate(path_graph(3), T) == []
    assert td.width(T) == 1
    assert td.bag_containing(T, [1, 2]) == 1
    assert td.bag_containing(td.single_bag(range(3)), [0, 2]) == 0


def test_uncovered_edge():
    T = td.TreeDecomposition.build([[0, 1], [1, 2]], [(0, 1)])
    v = td.validate(complete_graph(3), T)
    assert [(x.kind, x.subject) for x in v] == [("edge", (0, 2))]


def test_reports_all_violations():
    G = make_graph(4, [(0, 1), (2, 3)])
    # bags: {0,1}, {2}, {0}: vertex 3 missing, edge 2-3 missing, 0 split, and node 2 detached.
    T = td.TreeDecomposition.build([[0, 1], [2], [0]], [(0, 1)])
    kinds = sorted(x.kind for x in td.validate(G, T))
    assert kinds == ["edge", "subtree", "tree", "tree", "vertex"]


def test_cycle_in_tree_is_reported():
    T = td.TreeDecomposition.build([[0], [0], [0]], [(0, 1), (1, 2), (0, 2)])
    assert any(v.kind == "tree" for v in td.validate(make_graph(1, []), T))


def test_width_of_six_bag():
    assert td.width(td.single_bag(range(6))) == 5


def test_bag_containing_missing():
    T = td.TreeDecomposition.build([[0, 1], [1, 2]], [(0, 1)])
    with pytest.raises(DecompositionError):
        td.bag_containing(T, [0, 2])


def test_attach_copy_k2():
    T = td.attach_copy(td.single_bag([0]), td.single_bag([1]), [0])
    assert T.bags == ((0,), (0, 1))
    assert td.validate(complete_graph(2), T) == []


def test_attach_copy_triangles():
    # K_3 on 0..2, copy of K_3 on 3..5 complete to the edge {0,1}
    T = td.attach_copy(td.single_bag([0, 1, 2]), td.single_bag([3, 4, 5]), [0, 1])
    assert td.max_bag(T) == 5
    edges = [(u, v) for u in range(6) for v in range(u + 1, 6) if v < 3 or u >= 3 or u in (0, 1)]
    assert td.validate(make_graph(6, edges), T) == []


def test_attach_copy_rejects_collision():
    with pytest.raises(DecompositionError):
        td.attach_copy(td.single_bag([0, 1]), td.single_bag([1, 2]), [0])


def test_attach_gadget_bag_sizes():
    T = td.attach_gadget_bag(td.single_bag([0]), [1], [0])
    assert T.bags[-1] == (0, 1)
    # chordal k=2 step on K_3: gadget K_3 and family union of size 3 -> bag of 6
    T = td.attach_gadget_bag(td.single_bag([0, 1, 2]), [3, 4, 5], [0, 1, 2])
    assert td.max_bag(T) == 6
    # perfect k=2 step on K_5: bowtie of 5 plus union of 5 -> bag of 10
    T = td.attach_gadget_bag(td.single_bag(range(5)), range(5, 10), range(5))
    assert td.max_bag(T) == 10


def test_chordal_instances_within_bound():
    G1 = build_chordal(2, 1)
    assert td.validate(G1.graph, G1.decomposition) == []
    assert td.width(G1.decomposition) <= s_bound(2, 1) - 1
    for tri in enumerate_cliques(G1.graph, 3):
        td.bag_containing(G1.decomposition, tri)
    G2 = build_chordal(2, 2)
    assert td.max_bag(G2.decomposition) <= s_bound(2, 2) == 8


def _random_td(rng, offset, n):
    """A random graph on ids offset..offset+n-1 with a valid (path) decomposition."""
    order = list(range(offset, offset + n))
    bags = []
    for i in range(n):
        bags.append(order[max(0, i - 2): i + 1])
    T = td.TreeDecomposition.build(bags, [(i, i + 1) for i in range(n - 1)])
    edges = []
    for b in bags:
        for u in b:
            for v in b:
                if u < v and rng.random() < 0.7:
                    edges.append((u, v))
    return T, edges


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 6))
def test_closure_under_attach_copy(seed, na, nb):
    rng = random.Random(seed)
    TA, ea = _random_td(rng, 0, na)
    TB, eb = _random_td(rng, na, nb)
    bag = rng.choice(TA.bags)
    C = [v for v in bag if rng.random() < 0.6]
    # C must be a clique of A: add its edges
    ea += [(u, v) for u in C for v in C if u < v]
    G = make_graph(na + nb, ea + eb + [(c, b) for c in C for b in range(na, na + nb)])
    T = td.attach_copy(TA, TB, C)
    assert td.validate(G, T) == []
    assert td.width(T) <= max(td.width(TA), td.width(TB) + len(C))


def test_json_round_trip_bit_exact():
    T = build_chordal(2, 2).decomposition
    s = td.dumps(T)
    assert td.dumps(td.loads(s)) == s
    assert td.loads(s) == T


def test_json_errors():
    from chordpart.errors import ParseError

    with pytest.raises(ParseError):
        td.loads("{")
    with pytest.raises(ParseError):
        td.loads('{"nodes": [1], "bags": [[0]], "tree_edges": []}')


def test_graph_type_unchanged():
    assert isinstance(build_chordal(1, 1).graph, Graph)
