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
Ground truth and comparison methods: exact branch and bound for small
instances, the drop-the-cheapest-edge 2/3 baseline, and the independent
solution verifier
"""

import dataclasses
from dataclasses import dataclass
from fractions import Fraction

from magcode.core.globals_ import log_info
from magcode.core.globals_ import log_debug
from tf2m.globals_ import settings
from tf2m.globals_ import STRATEGY_FIRST
from tf2m.globals_ import SEARCH_ALTERNATING
from tf2m.exceptions import OracleSizeError
from tf2m.exceptions import InternalError
from tf2m.graph import TriangleSet
from tf2m.graph import degree_map
from tf2m.graph import triangle_edges
from tf2m.helper import Helper
from tf2m.solver import solve_ptas


@dataclass(frozen=True)
class OracleResult(object):
    solution: frozenset
    weight: Fraction
    nodes_explored: int

    def to_json(self):
        return {'method': 'exact',
                'solution': [list(e) for e in sorted(self.solution)],
                'weight': Helper.format_rational(self.weight),
                'nodes_explored': self.nodes_explored}


def exact_opt(graph, triangles, edge_limit=None):
    """
    Maximum weight T-free 2-matching by branch and bound. Edges are branched
    heaviest first (include before exclude) and a branch is cut when its
    weight plus the heaviest remaining edges that still fit cannot beat the
    incumbent. A 2-matching on n vertices has at most n edges.
    """
    if edge_limit is None:
        edge_limit = settings['oracle_edge_limit']
    if graph.edge_count > edge_limit:
        raise OracleSizeError(graph.edge_count, edge_limit)
    order = sorted(graph.edges(), key=lambda e: (-graph.weight_of(e), e))
    weights = [graph.weight_of(e) for e in order]
    prefix = [Fraction(0)]
    for weight in weights:
        prefix.append(prefix[-1] + weight)
    degrees = {}
    chosen = set()
    best = {'weight': Fraction(0), 'set': frozenset()}
    explored = [0]

    def closes_triangle(edge):
        for tri in triangles.containing(edge):
            if all(side == edge or side in chosen for side in triangle_edges(tri)):
                return True
        return False

    def branch(i, current):
        explored[0] += 1
        if current > best['weight']:
            best['weight'] = current
            best['set'] = frozenset(chosen)
        if i == len(order):
            return
        room = graph.n - len(chosen)
        if current + prefix[min(len(order), i + room)] - prefix[i] <= best['weight']:
            return
        edge = order[i]
        u, v = edge
        need = 2 if u == v else 1
        if (degrees.get(u, 0) + need <= 2 and degrees.get(v, 0) + (0 if u == v else 1) <= 2
                and not closes_triangle(edge)):
            chosen.add(edge)
            degrees[u] = degrees.get(u, 0) + need
            if u != v:
                degrees[v] = degrees.get(v, 0) + 1
            branch(i + 1, current + weights[i])
            degrees[u] -= need
            if u != v:
                degrees[v] -= 1
            chosen.discard(edge)
        branch(i + 1, current)

    branch(0, Fraction(0))
    result = OracleResult(best['set'], best['weight'], explored[0])
    log_debug('[exact] - opt {0} after {1} nodes'.format(Helper.format_rational(result.weight), result.nodes_explored))
    return result


def baseline_two_thirds(graph, triangles, eps, strategy=STRATEGY_FIRST, search_class=SEARCH_ALTERNATING,
                        workers=1):
    """
    Approximate maximum weight 2-matching with no triangle forbidden, then
    drop the cheapest edge of each forbidden triangle it contains. Contained
    triangles are rescanned after every drop.
    """
    report = solve_ptas(graph, TriangleSet(), eps, strategy, search_class, workers=workers)
    solution = set(report.solution)
    dropped = []
    while True:
        contained = triangles.contained_in(solution)
        if not contained:
            break
        tri = contained[0]
        cheapest = min(triangle_edges(tri), key=lambda e: (graph.weight_of(e), e))
        solution.discard(cheapest)
        dropped.append('dropped {0} {1} from triangle {2} {3} {4}'.format(cheapest[0], cheapest[1], *tri))
    solution = frozenset(solution)
    if not triangles.is_t_free(solution):
        raise InternalError('baseline left a forbidden triangle')
    log_info('[baseline] - 2-matching weight {0}, {1} edges dropped'.format(
        Helper.format_rational(report.weight), len(dropped)))
    return dataclasses.replace(report, solution=solution, weight=graph.weight(solution),
                               method='baseline', diagnostics=list(report.diagnostics) + dropped)


@dataclass(frozen=True)
class Verdict(object):
    feasible: bool
    weight: object = None
    violation: str = ''
    vertex: object = None
    triangle: object = None
    edge: object = None

    def to_json(self):
        out = {'feasible': self.feasible}
        if self.feasible:
            out['weight'] = Helper.format_rational(self.weight)
        else:
            out['violation'] = self.violation
            if self.vertex is not None:
                out['vertex'] = self.vertex
            if self.triangle is not None:
                out['triangle'] = list(self.triangle)
            if self.edge is not None:
                out['edge'] = list(self.edge)
        return out


def verify_solution(graph, triangles, edges):
    """
    Checks membership, degree (self-loops count twice) and T-freeness, in
    that order, and reports the first violation
    """
    edges = frozenset(edges)
    for edge in sorted(edges):
        if not graph.has_edge(edge):
            return Verdict(False, violation='edge {0} {1} is not in the graph'.format(*edge), edge=edge)
    degrees = degree_map(edges)
    for vertex in sorted(degrees):
        if degrees[vertex] > 2:
            return Verdict(False, violation='vertex {0} has degree {1}'.format(vertex, degrees[vertex]),
                           vertex=vertex)
    contained = triangles.contained_in(edges)
    if contained:
        tri = contained[0]
        return Verdict(False, violation='contains forbidden triangle {0} {1} {2}'.format(*tri), triangle=tri)
    return Verdict(True, weight=graph.weight(edges))
