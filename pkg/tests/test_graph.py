import itertools
from fractions import Fraction

import networkx
import pytest

from tf2m.exceptions import InputError
from tf2m.graph import TriangleSet
from tf2m.graph import WeightedGraph
from tf2m.graph import enumerate_triangles
from tf2m.graph import is_t_free
from tf2m.graph import make_edge_set
from tf2m.graph import triangle_edges
from tf2m.graph import triangles_touching

from conftest import complete_graph
from conftest import random_graph
from conftest import random_two_matching


def test_degree_counts_self_loop_twice():
    graph = WeightedGraph(3, {(0, 0): 1, (0, 1): 1, (0, 2): 1})
    assert graph.degree({(0, 0)}, 0) == 2
    assert graph.degree(set(), 1) == 0
    assert graph.degree({(0, 1), (0, 2), (0, 0)}, 0) == 4


def test_degree_rejects_vertex_out_of_range():
    graph = WeightedGraph(2, {(0, 1): 1})
    with pytest.raises(InputError):
        graph.degree(set(), 2)


def test_is_two_matching():
    graph = WeightedGraph(4, {(0, 0): 1, (0, 1): 1, (1, 2): 1, (2, 3): 1, (0, 3): 1})
    assert not graph.is_two_matching({(0, 0), (0, 1)})
    assert graph.is_two_matching({(0, 1), (1, 2), (2, 3), (0, 3)})
    assert graph.is_two_matching(set())


def test_is_two_matching_checks_membership():
    graph = WeightedGraph(3, {(0, 1): 1})
    with pytest.raises(InputError):
        graph.is_two_matching({(1, 2)})


def test_construction_rejects_bad_input():
    with pytest.raises(InputError):
        WeightedGraph(2, {(0, 2): 1})
    with pytest.raises(InputError):
        WeightedGraph(2, {(0, 1): 1, (1, 0): 2})
    with pytest.raises(InputError):
        WeightedGraph(2, {(0, 1): Fraction(-1, 2)})


def test_edges_are_canonical_and_sorted():
    graph = WeightedGraph(3, {(2, 1): 1, (1, 0): 2, (2, 2): 3})
    assert graph.edges() == ((0, 1), (1, 2), (2, 2))
    assert graph.neighbors(2) == (1, 2)
    assert graph.weight_of((1, 0)) == 2


def test_enumerate_triangles_examples():
    assert len(enumerate_triangles(complete_graph(4))) == 4
    cycle = WeightedGraph(4, {(0, 1): 1, (1, 2): 1, (2, 3): 1, (0, 3): 1})
    assert len(enumerate_triangles(cycle)) == 0
    path = WeightedGraph(4, {(0, 1): 1, (1, 2): 1, (2, 3): 1})
    assert len(enumerate_triangles(path)) == 0


def test_self_loops_never_form_triangles():
    graph = WeightedGraph(3, {(0, 0): 1, (0, 1): 1, (1, 1): 1})
    assert len(enumerate_triangles(graph)) == 0


def test_enumerate_triangles_matches_brute_force(rng):
    for n in range(3, 13):
        graph = random_graph(rng, n, 0.5, loops=0.2)
        expected = {t for t in itertools.combinations(range(n), 3)
                    if all(graph.has_edge(e) for e in triangle_edges(t))}
        assert enumerate_triangles(graph).as_frozenset() == expected


def test_enumerate_triangles_matches_networkx(rng):
    for _ in range(20):
        graph = random_graph(rng, 9, 0.45)
        nx_graph = networkx.Graph()
        nx_graph.add_nodes_from(range(graph.n))
        nx_graph.add_edges_from(graph.edges())
        expected = {tuple(sorted(c)) for c in networkx.enumerate_all_cliques(nx_graph) if len(c) == 3}
        assert enumerate_triangles(graph).as_frozenset() == expected


def test_is_t_free_examples():
    triangles = TriangleSet([(0, 1, 2)])
    assert not is_t_free({(0, 1), (0, 2), (1, 2)}, triangles)
    assert is_t_free({(0, 1), (0, 2)}, triangles)
    assert is_t_free({(0, 1), (0, 2), (1, 2)}, TriangleSet())


def test_two_sides_of_every_triangle_is_t_free():
    graph = complete_graph(5)
    triangles = enumerate_triangles(graph)
    for tri in triangles:
        a, b, c = tri
        assert is_t_free({(a, b), (a, c)}, triangles)


def test_triangles_touching_examples():
    graph = complete_graph(4)
    triangles = enumerate_triangles(graph)
    assert len(triangles_touching(set(), triangles)) == 0
    assert triangles_touching(graph.edges(), triangles) == triangles
    touching = triangles_touching({(0, 1)}, triangles)
    assert sorted(touching) == [(0, 1, 2), (0, 1, 3)]


def test_weight_is_exact():
    graph = WeightedGraph(3, {(0, 1): Fraction(3, 2), (1, 2): Fraction(1, 3), (0, 2): Fraction(1, 6)})
    assert graph.weight(set()) == 0
    assert graph.weight({(0, 1)}) == Fraction(3, 2)
    assert graph.weight({(1, 2), (0, 2)}) == Fraction(1, 2)


def test_triangle_set_index_and_checks():
    graph = WeightedGraph(4, {(0, 1): 1, (0, 2): 1, (1, 2): 1, (2, 3): 1})
    triangles = TriangleSet([(2, 1, 0)])
    assert (0, 1, 2) in triangles
    assert triangles.containing((2, 1)) == ((0, 1, 2),)
    assert triangles.containing((2, 3)) == ()
    triangles.check_against(graph)
    with pytest.raises(InputError):
        TriangleSet([(1, 2, 3)]).check_against(graph)
    with pytest.raises(InputError):
        TriangleSet([(1, 1, 2)])
    assert len(triangles.without([(0, 1, 2)])) == 0


def test_derive_keeps_original():
    graph = WeightedGraph(2, {(0, 1): 1})
    derived = graph.derive(add_vertices=1, set_weights={(1, 2): 5, (0, 0): 0}, remove=[(0, 1)])
    assert derived.n == 3
    assert derived.edges() == ((0, 0), (1, 2))
    assert graph.edges() == ((0, 1),)


def test_two_sides_in_m_keep_touching_triangles_out(rng):
    checked = 0
    for _ in range(300):
        graph = random_graph(rng, rng.randint(3, 8), 0.6, loops=0.1)
        triangles = enumerate_triangles(graph)
        matching = random_two_matching(rng, graph)
        assert graph.is_two_matching(matching)
        for tri in triangles:
            sides = triangle_edges(tri)
            if sum(1 for e in sides if e in matching) != 2:
                continue
            checked += 1
            assert is_t_free(matching, triangles_touching(sides, triangles))
    assert checked > 0


@pytest.mark.slow
def test_two_sides_in_m_property_at_scale(rng):
    done = 0
    while done < 1000:
        graph = random_graph(rng, rng.randint(3, 10), 0.6, loops=0.1)
        triangles = enumerate_triangles(graph)
        matching = random_two_matching(rng, graph)
        for tri in triangles:
            sides = triangle_edges(tri)
            if sum(1 for e in sides if e in matching) == 2:
                assert is_t_free(matching, triangles_touching(sides, triangles))
                done += 1


def test_make_edge_set_canonicalises():
    assert make_edge_set([(2, 1), (0, 0)]) == frozenset({(1, 2), (0, 0)})
