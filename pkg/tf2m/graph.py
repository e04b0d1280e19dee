# Copyright (c) 2026 The tf2m developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
# THE SOFTWARE.

"""
Weighted undirected graphs with self-loops, forbidden triangle families and
the 2-matching checks everything else builds on.

Vertices are dense integer ids in [0, n). An edge is a tuple (u, v) with
u <= v; u == v is a self-loop. Edge sets are frozensets of such tuples.
"""

from fractions import Fraction

from tf2m.exceptions import InputError


def canonical_edge(u, v):
    return (u, v) if u <= v else (v, u)


def make_edge_set(edges):
    """
    Canonicalises an iterable of vertex pairs into an edge set
    """
    return frozenset(canonical_edge(u, v) for u, v in edges)


def is_loop(edge):
    return edge[0] == edge[1]


def degree_map(edges):
    """
    Degrees induced by an edge set, a self-loop counting twice
    """
    degrees = {}
    for u, v in edges:
        degrees[u] = degrees.get(u, 0) + 1
        degrees[v] = degrees.get(v, 0) + 1
    return degrees


class WeightedGraph(object):
    """
    Immutable weighted graph. No parallel edges, weights are non-negative
    Fractions.
    """

    def __init__(self, n, weights):
        if not isinstance(n, int) or n < 0:
            raise InputError("vertex count '{0}' must be a non-negative integer".format(n))
        self.n = n
        self._weights = {}
        adjacency = {}
        for edge, weight in dict(weights).items():
            u, v = edge
            for x in (u, v):
                if not isinstance(x, int) or not (0 <= x < n):
                    raise InputError('edge {0} has endpoint {1} outside [0, {2})'.format(edge, x, n))
            edge = canonical_edge(u, v)
            if edge in self._weights:
                raise InputError('parallel edge {0}'.format(edge))
            weight = Fraction(weight)
            if weight < 0:
                raise InputError('edge {0} has negative weight {1}'.format(edge, weight))
            self._weights[edge] = weight
            adjacency.setdefault(edge[0], set()).add(edge[1])
            adjacency.setdefault(edge[1], set()).add(edge[0])
        self._adjacency = {u: tuple(sorted(nbrs)) for u, nbrs in adjacency.items()}
        self._edges = tuple(sorted(self._weights))

    def __repr__(self):
        return 'WeightedGraph(n={0}, m={1})'.format(self.n, len(self._edges))

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and self._weights == other._weights

    def __hash__(self):
        return hash((self.n, self._edges))

    @property
    def edge_count(self):
        return len(self._edges)

    def edges(self):
        """
        All edges in canonical (sorted) order
        """
        return self._edges

    def weights(self):
        return dict(self._weights)

    def has_edge(self, edge):
        return canonical_edge(*edge) in self._weights

    def weight_of(self, edge):
        try:
            return self._weights[canonical_edge(*edge)]
        except KeyError:
            raise InputError('edge {0} is not in the graph'.format(edge))

    def neighbors(self, u):
        """
        Ascending neighbours of u, including u itself when it carries a loop
        """
        return self._adjacency.get(u, ())

    def max_weight(self):
        return max(self._weights.values(), default=Fraction(0))

    def check_vertex(self, u):
        if not isinstance(u, int) or not (0 <= u < self.n):
            raise InputError('vertex {0} outside [0, {1})'.format(u, self.n))

    def check_edge_set(self, edges):
        """
        Raises InputError naming the first member that is not a graph edge
        """
        for edge in sorted(edges):
            if edge not in self._weights:
                raise InputError('edge {0} is not in the graph'.format(edge))

    def degree(self, edges, u):
        self.check_vertex(u)
        return sum((2 if a == b else 1) for a, b in edges if u in (a, b))

    def is_two_matching(self, edges):
        self.check_edge_set(edges)
        return all(d <= 2 for d in degree_map(edges).values())

    def weight(self, edges):
        return sum((self._weights[e] for e in edges), Fraction(0))

    def derive(self, add_vertices=0, remove=(), set_weights=None):
        """
        Returns a fresh graph with extra vertices appended, some edges removed
        and some weights added or overwritten
        """
        weights = dict(self._weights)
        for edge in remove:
            del weights[canonical_edge(*edge)]
        for edge, weight in (set_weights or {}).items():
            weights[canonical_edge(*edge)] = Fraction(weight)
        return WeightedGraph(self.n + add_vertices, weights)


def make_triangle(a, b, c):
    """
    Canonical triangle: sorted vertex triple of three distinct vertices
    """
    if len({a, b, c}) != 3:
        raise InputError('triangle ({0}, {1}, {2}) needs three distinct vertices'.format(a, b, c))
    return tuple(sorted((a, b, c)))


def triangle_edges(triangle):
    a, b, c = triangle
    return ((a, b), (a, c), (b, c))


class TriangleSet(object):
    """
    Immutable forbidden triangle family with an edge -> triangles index
    """

    def __init__(self, triangles=()):
        self._triangles = frozenset(make_triangle(*t) for t in triangles)
        index = {}
        for triangle in sorted(self._triangles):
            for edge in triangle_edges(triangle):
                index.setdefault(edge, []).append(triangle)
        self._index = {edge: tuple(tris) for edge, tris in index.items()}

    def __len__(self):
        return len(self._triangles)

    def __iter__(self):
        return iter(sorted(self._triangles))

    def __contains__(self, triangle):
        return tuple(sorted(triangle)) in self._triangles

    def __eq__(self, other):
        if not isinstance(other, TriangleSet):
            return NotImplemented
        return self._triangles == other._triangles

    def __hash__(self):
        return hash(self._triangles)

    def __repr__(self):
        return 'TriangleSet({0})'.format(sorted(self._triangles))

    def as_frozenset(self):
        return self._triangles

    def containing(self, edge):
        """
        Triangles having edge as one of their sides, in canonical order
        """
        return self._index.get(canonical_edge(*edge), ())

    def check_against(self, graph):
        for triangle in sorted(self._triangles):
            for edge in triangle_edges(triangle):
                if not graph.has_edge(edge):
                    raise InputError('triangle {0} uses edge {1} which is not in the graph'
                            .format(triangle, edge))

    def contained_in(self, edges):
        """
        Triangles of the family fully contained in an edge set, canonical order
        """
        found = set()
        for edge in edges:
            for triangle in self._index.get(edge, ()):
                if all(e in edges for e in triangle_edges(triangle)):
                    found.add(triangle)
        return sorted(found)

    def is_t_free(self, edges):
        for edge in edges:
            for triangle in self._index.get(edge, ()):
                if all(e in edges for e in triangle_edges(triangle)):
                    return False
        return True

    def touching(self, edges):
        """
        The sub-family of triangles with at least one side in edges
        """
        found = set()
        for edge in edges:
            found.update(self._index.get(canonical_edge(*edge), ()))
        return TriangleSet(found)

    def without(self, triangles):
        drop = {tuple(sorted(t)) for t in triangles}
        return TriangleSet(t for t in self._triangles if t not in drop)


def enumerate_triangles(graph):
    """
    All 3-cycles of the graph on distinct vertices, via sorted adjacency
    intersections. Self-loops never take part.
    """
    triangles = []
    for a in range(graph.n):
        higher = [b for b in graph.neighbors(a) if b > a]
        higher_set = set(higher)
        for b in higher:
            for c in graph.neighbors(b):
                if c > b and c in higher_set:
                    triangles.append((a, b, c))
    return TriangleSet(triangles)


def is_t_free(edges, triangles):
    return triangles.is_t_free(edges)


def triangles_touching(edges, triangles):
    return triangles.touching(edges)
