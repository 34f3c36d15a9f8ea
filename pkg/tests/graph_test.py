import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings

from cycletrace.errors import (
    DanglingEndpoint,
    DegreeNotTwo,
    Disconnected,
    DuplicateLabel,
    EmptyGraph,
    LoopEdge,
    NotASpanningTree,
    UnknownEdge,
    VertexLabelCollision,
    WouldCreateLoop,
)
from cycletrace.graph import (
    SpanningTree,
    betti,
    check_spanning_tree,
    connected_multigraphs,
    cotree_components,
    smooth_vertex,
    spanning_trees,
    subdivide_edge,
    validate,
)

from .strategies import multigraphs, random_multigraph


def test_validate_implies_vertices_in_order_of_appearance():
    g = validate([], [("a", "x", "y"), ("b", "z", "x")])
    assert g.vertices == ("x", "y", "z")
    assert g.edges == ("a", "b")
    assert g.incident("x") == ("a", "b")


def test_validate_allows_parallel_edges(dipole):
    assert dipole.m == 2
    assert not dipole.is_simple
    assert dipole.degree("1") == 2


@pytest.mark.parametrize(
    "vertices, edges, error",
    [
        (["1", "2"], [("e1", "1", "1")], LoopEdge),
        (["1", "2"], [("e1", "1", "2"), ("e1", "2", "1")], DuplicateLabel),
        (["1", "1"], [], DuplicateLabel),
        (["1", "2"], [("e1", "1", "3")], DanglingEndpoint),
        ([], [], EmptyGraph),
    ],
)
def test_validate_rejects(vertices, edges, error):
    with pytest.raises(error):
        validate(vertices, edges)


def test_betti_of_fixtures(butterfly, dumbbell, k4, dipole, eden12, path3):
    assert betti(butterfly) == 2
    assert betti(dumbbell) == 2
    assert betti(k4) == 3
    assert betti(dipole) == 1
    assert betti(eden12) == 9
    assert betti(path3) == 0


def test_betti_needs_connected_graph():
    g = validate(["1", "2", "3"], [("e1", "1", "2")])
    assert not g.is_connected
    with pytest.raises(Disconnected):
        betti(g)


def test_subdivide_edge(butterfly):
    g = subdivide_edge(butterfly, "e5", "w")
    assert g.n == butterfly.n + 1
    assert g.edges == ("e1", "e2", "e3", "e4", "e5.1", "e5.2", "e6")
    assert g.endpoints["e5.1"] == ("1", "w")
    assert g.endpoints["e5.2"] == ("3", "w")
    assert g.degree("w") == 2
    assert betti(g) == betti(butterfly)


def test_subdivide_edge_with_named_halves(butterfly):
    g = subdivide_edge(butterfly, "e5", "w", ("a", "b"))
    assert g.endpoints["a"] == ("1", "w")
    assert g.endpoints["b"] == ("3", "w")
    assert "e5.1" not in g.endpoints


def test_subdivide_edge_errors(butterfly):
    with pytest.raises(VertexLabelCollision):
        subdivide_edge(butterfly, "e1", "3")
    with pytest.raises(UnknownEdge):
        subdivide_edge(butterfly, "e9", "w")
    with pytest.raises(DuplicateLabel):
        subdivide_edge(butterfly, "e1", "w", ("e1.1", "e2"))


def test_smooth_vertex_undoes_subdivision(butterfly):
    for e in butterfly.edges:
        assert smooth_vertex(subdivide_edge(butterfly, e, "w"), "w", label=e) == butterfly


def test_smooth_vertex_default_label(path3):
    g = smooth_vertex(path3, "2")
    assert g.edges == ("2.s",)
    assert g.endpoints["2.s"] == ("1", "3")


def test_smooth_vertex_errors(butterfly, dipole):
    with pytest.raises(DegreeNotTwo):
        smooth_vertex(butterfly, "3")
    with pytest.raises(WouldCreateLoop):
        smooth_vertex(dipole, "2")


@pytest.mark.parametrize("name, count", [("butterfly", 9), ("k4", 16), ("dipole", 2), ("dumbbell", 9), ("path3", 1)])
def test_spanning_tree_counts(request, name, count):
    g = request.getfixturevalue(name)
    trees = list(spanning_trees(g))
    assert len(trees) == count
    assert len({t.tree_edges for t in trees}) == count
    for t in trees:
        check_spanning_tree(g, t)


def _count_trees_by_subsets(g):
    count = 0
    for subset in itertools.combinations(g.edges, g.n - 1):
        h = nx.MultiGraph()
        h.add_nodes_from(g.vertices)
        for e in subset:
            h.add_edge(*g.endpoints[e], key=e)
        if nx.is_tree(h):
            count += 1
    return count


def test_spanning_tree_count_matches_edge_subsets():
    for seed in range(200):
        g = random_multigraph(random.Random(seed), max_edges=12)
        assert sum(1 for _ in spanning_trees(g)) == _count_trees_by_subsets(g), f"seed {seed}"


def test_spanning_trees_come_in_lexicographic_order(k4):
    keys = [tuple(k4.edge_position(e) for e in t.sorted_edges()) for t in spanning_trees(k4)]
    assert keys == sorted(keys)
    assert keys[0] == (0, 1, 2)


def test_check_spanning_tree_rejects_cycle(butterfly):
    with pytest.raises(NotASpanningTree):
        check_spanning_tree(butterfly, SpanningTree(host=butterfly, tree_edges=frozenset({"e1", "e2", "e5", "e3"})))
    with pytest.raises(NotASpanningTree):
        check_spanning_tree(butterfly, SpanningTree(host=butterfly, tree_edges=frozenset({"e1"})))


def test_cotree_components(butterfly, dumbbell):
    tree = SpanningTree(host=butterfly, tree_edges=frozenset({"e1", "e2", "e3", "e4"}))
    assert [c.edges for c in cotree_components(butterfly, tree)] == [("e5", "e6")]

    for t in spanning_trees(dumbbell):
        components = cotree_components(dumbbell, t)
        assert [len(c) for c in components] == [1, 1]


@given(multigraphs())
def test_cotree_components_partition_the_cotree(g):
    t = next(spanning_trees(g))
    components = cotree_components(g, t)
    edges = [e for c in components for e in c.edges]
    assert sorted(edges) == sorted(set(g.edges) - t.tree_edges)
    assert len(edges) == betti(g)


@given(multigraphs())
def test_generated_graphs_are_connected(g):
    assert g.is_connected
    assert betti(g) >= 0


def test_connected_multigraphs_small_counts():
    by_size = {}
    for g in connected_multigraphs(3):
        by_size.setdefault(g.m, []).append(g)
    assert [len(by_size[m]) for m in range(4)] == [1, 1, 2, 5]


@settings(deadline=None)
@given(multigraphs(max_edges=4))
def test_connected_multigraphs_cover_every_graph(g):
    h = g.to_networkx()
    assert any(nx.is_isomorphic(h, x.to_networkx()) for x in connected_multigraphs(g.m) if x.m == g.m)


def test_connected_multigraphs_are_pairwise_distinct():
    graphs = [g.to_networkx() for g in connected_multigraphs(4)]
    assert all(nx.is_connected(h) for h in graphs)
    for a, b in itertools.combinations(graphs, 2):
        assert not nx.is_isomorphic(a, b)
