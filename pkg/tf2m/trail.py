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
Trails, the length budget, and the bounded search for augmenting trails
"""

import math
import multiprocessing
from dataclasses import dataclass
from dataclasses import field
from fractions import Fraction

from magcode.core.globals_ import log_debug
from magcode.core.globals_ import debug_verbose
from tf2m.globals_ import BUDGET_NUMERATOR
from tf2m.globals_ import STRATEGY_FIRST
from tf2m.globals_ import STRATEGY_BEST
from tf2m.globals_ import STRATEGIES
from tf2m.exceptions import InputError
from tf2m.exceptions import InternalError
from tf2m.graph import canonical_edge
from tf2m.graph import degree_map


@dataclass(frozen=True)
class Trail(object):
    """
    Sequence of distinct consecutive edges, stored as its node sequence.
    Edge i joins nodes i and i + 1.
    """
    nodes: tuple
    edges: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        nodes = tuple(self.nodes)
        if len(nodes) < 2:
            raise InputError('a trail needs at least one edge, got nodes {0}'.format(nodes))
        edges = tuple(canonical_edge(nodes[i], nodes[i + 1]) for i in range(len(nodes) - 1))
        if len(set(edges)) != len(edges):
            raise InputError('trail {0} repeats an edge'.format(nodes))
        object.__setattr__(self, 'nodes', nodes)
        object.__setattr__(self, 'edges', edges)

    @classmethod
    def from_nodes(cls, nodes):
        return cls(tuple(nodes))

    def __len__(self):
        return len(self.edges)

    @property
    def sl(self):
        return sum(1 for u, v in self.edges if u == v)

    @property
    def cost(self):
        """
        |P| + 2 sl(P)
        """
        return len(self.edges) + 2 * self.sl

    @property
    def closed(self):
        return self.nodes[0] == self.nodes[-1]

    @property
    def edge_set(self):
        return frozenset(self.edges)

    def reversed(self):
        return Trail(tuple(reversed(self.nodes)))

    def key(self):
        """
        Canonical comparison key. A trail and its reverse give the same
        symmetric difference; the one with the smaller key represents both.
        """
        return (self.edges, self.nodes)

    def is_canonical(self):
        return self.key() <= self.reversed().key()

    def to_json(self):
        return list(self.nodes)


@dataclass(frozen=True)
class Budget(object):
    """
    A trail fits iff |P| + 2 sl(P) <= 7 / epsilon
    """
    epsilon: Fraction

    def __post_init__(self):
        eps = Fraction(self.epsilon)
        if not (0 < eps <= 1):
            raise InputError('epsilon {0} must lie in (0, 1]'.format(eps))
        object.__setattr__(self, 'epsilon', eps)

    @property
    def limit(self):
        return BUDGET_NUMERATOR / self.epsilon

    @property
    def max_cost(self):
        return math.floor(self.limit)

    def allows(self, trail):
        return trail.cost <= self.limit


def symmetric_difference(edges, trail):
    return frozenset(edges) ^ trail.edge_set


def is_alternating(trail, a1, a2):
    """
    True iff every edge of the trail lies in A1 delta A2 and consecutive
    edges lie on opposite sides
    """
    sides = []
    for edge in trail.edges:
        in1 = edge in a1
        in2 = edge in a2
        if in1 == in2:
            return False
        sides.append(in1)
    return all(sides[i] != sides[i + 1] for i in range(len(sides) - 1))


def gain(graph, edges, trail):
    """
    w(M delta P) - w(M)
    """
    total = Fraction(0)
    for edge in trail.edges:
        weight = graph.weight_of(edge)
        total += -weight if edge in edges else weight
    return total


def is_augmenting(graph, trail, edges, triangles):
    """
    True iff M delta P is a T-free 2-matching of strictly larger weight
    """
    for edge in trail.edges:
        if not graph.has_edge(edge):
            return False
    result = symmetric_difference(edges, trail)
    if any(d > 2 for d in degree_map(result).values()):
        return False
    if not triangles.is_t_free(result):
        return False
    return gain(graph, edges, trail) > 0


class TrailSearch(object):
    """
    Depth first enumeration of trails within a budget that improve an edge
    set M. Start edges are taken in canonical order, each oriented from its
    lower then its higher end, and extended through neighbours in ascending
    order. Degree excess and completed forbidden triangles of M delta P are
    tracked incrementally, so each candidate is judged in constant time.
    """

    def __init__(self, graph, edges, triangles, budget, alternating=True, allowed=None):
        self.graph = graph
        self.edges = frozenset(edges)
        self.triangles = triangles
        self.budget = budget
        self.alternating = alternating
        self.allowed = frozenset(allowed) if allowed is not None else None
        self.max_cost = budget.max_cost
        self._weights = graph.weights()
        starts = graph.edges()
        if self.allowed is not None:
            starts = tuple(e for e in starts if e in self.allowed)
        self.starts = starts
        # Prefix sums of the heaviest edges outside M bound any future gain
        outside = sorted((w for e, w in self._weights.items()
                            if e not in self.edges and (self.allowed is None or e in self.allowed)),
                         reverse=True)
        self._best_prefix = [Fraction(0)]
        for weight in outside:
            self._best_prefix.append(self._best_prefix[-1] + weight)

    def _future_bound(self, remaining, last_in_m):
        if self.alternating:
            slots = (remaining + 1) // 2 if last_in_m else remaining // 2
        else:
            slots = remaining
        return self._best_prefix[min(slots, len(self._best_prefix) - 1)]

    def search_start(self, index, stop_at_first):
        """
        Explores every trail beginning with start edge number index. Returns
        the first canonical candidate found, or the best one when
        stop_at_first is false, as a (gain, trail) pair or None.
        """
        u, v = self.starts[index]
        orientations = [(u, v)] if u == v else [(u, v), (v, u)]
        best = None
        for origin, first in orientations:
            found = self._dfs_from(origin, first, stop_at_first)
            if found is None:
                continue
            if stop_at_first:
                return found
            if best is None or _better(found, best):
                best = found
        return best

    def _dfs_from(self, origin, first, stop_at_first):
        edges_m = self.edges
        weights = self._weights
        graph = self.graph
        triangles = self.triangles
        allowed = self.allowed
        alternating = self.alternating
        max_cost = self.max_cost
        degrees = degree_map(edges_m)
        counts = {}
        nodes = [origin]
        path = []
        used = set()
        state = {'gain': Fraction(0), 'cost': 0, 'over': 0, 'complete': 0}
        result = {'best': None}

        def toggle(edge, sign):
            # sign +1 puts the edge into M delta P, -1 takes it out
            a, b = edge
            for x in ((a, a) if a == b else (a, b)):
                before = degrees.get(x, 0)
                after = before + sign
                degrees[x] = after
                if before <= 2 < after:
                    state['over'] += 1
                elif after <= 2 < before:
                    state['over'] -= 1
            for tri in triangles.containing(edge):
                before = counts.get(tri)
                if before is None:
                    a_, b_, c_ = tri
                    before = sum(1 for e in ((a_, b_), (a_, c_), (b_, c_)) if e in edges_m)
                after = before + sign
                counts[tri] = after
                if after == 3:
                    state['complete'] += 1
                elif before == 3:
                    state['complete'] -= 1

        def push(edge, nxt, in_m):
            used.add(edge)
            path.append(edge)
            nodes.append(nxt)
            weight = weights[edge]
            state['gain'] += -weight if in_m else weight
            state['cost'] += 3 if edge[0] == edge[1] else 1
            toggle(edge, -1 if in_m else 1)

        def pop(edge, in_m):
            toggle(edge, 1 if in_m else -1)
            state['cost'] -= 3 if edge[0] == edge[1] else 1
            weight = weights[edge]
            state['gain'] -= -weight if in_m else weight
            nodes.pop()
            path.pop()
            used.discard(edge)

        def consider():
            if state['gain'] <= 0 or state['over'] or state['complete']:
                return False
            key = (tuple(path), tuple(nodes))
            rev = (tuple(reversed(path)), tuple(reversed(nodes)))
            if rev < key:
                return False
            found = (state['gain'], Trail(tuple(nodes)))
            if debug_verbose():
                log_debug('[search] - candidate {0} gain {1}'.format(found[1].nodes, found[0]))
            if result['best'] is None or _better(found, result['best']):
                result['best'] = found
            return stop_at_first

        def extend(end, last_in_m):
            for nb in graph.neighbors(end):
                edge = canonical_edge(end, nb)
                if edge in used:
                    continue
                if allowed is not None and edge not in allowed:
                    continue
                in_m = edge in edges_m
                if alternating and last_in_m is not None and in_m == last_in_m:
                    continue
                step = 3 if edge[0] == edge[1] else 1
                if state['cost'] + step > max_cost:
                    continue
                push(edge, nb, in_m)
                if consider():
                    return True
                remaining = max_cost - state['cost']
                if remaining > 0 and state['gain'] + self._future_bound(remaining, in_m) > 0:
                    if extend(nb, in_m):
                        return True
                pop(edge, in_m)
            return False

        edge = canonical_edge(origin, first)
        in_m = edge in edges_m
        step = 3 if origin == first else 1
        if step > max_cost:
            return None
        push(edge, first, in_m)
        if not consider():
            remaining = max_cost - state['cost']
            if remaining > 0 and state['gain'] + self._future_bound(remaining, in_m) > 0:
                extend(first, in_m)
        return result['best']

    def run(self, strategy=STRATEGY_FIRST, workers=1):
        if strategy not in STRATEGIES:
            raise InputError("strategy '{0}' must be one of {1}".format(strategy, ', '.join(STRATEGIES)))
        stop_at_first = strategy == STRATEGY_FIRST
        indices = range(len(self.starts))
        if workers > 1 and len(self.starts) > 1:
            with multiprocessing.Pool(workers, initializer=_init_worker,
                                      initargs=(self, stop_at_first)) as pool:
                results = pool.imap(_search_worker, indices)
                found = _select(results, stop_at_first)
        else:
            found = _select((self.search_start(i, stop_at_first) for i in indices), stop_at_first)
        if found is None:
            return None
        trail = found[1]
        if not self.budget.allows(trail) or not is_augmenting(self.graph, trail, self.edges, self.triangles):
            raise InternalError('search returned trail {0} which does not augment'.format(trail.nodes))
        return trail


def _better(one, other):
    """
    Higher gain wins, ties go to the canonically smaller trail
    """
    if one[0] != other[0]:
        return one[0] > other[0]
    return one[1].key() < other[1].key()


def _select(results, stop_at_first):
    best = None
    for found in results:
        if found is None:
            continue
        if stop_at_first:
            return found
        if best is None or _better(found, best):
            best = found
    return best


_worker_state = {}


def _init_worker(search, stop_at_first):
    _worker_state['search'] = search
    _worker_state['stop_at_first'] = stop_at_first


def _search_worker(index):
    return _worker_state['search'].search_start(index, _worker_state['stop_at_first'])


def enumerate_augmenting_trails(graph, edges, triangles, budget, strategy=STRATEGY_FIRST,
                                alternating=True, allowed=None, workers=1):
    """
    Returns a within-budget augmenting trail for the edge set, or None when
    the searched class holds none. 'first' gives the first canonical trail in
    enumeration order, 'best' the largest gain with canonical tie-break.
    """
    search = TrailSearch(graph, edges, triangles, budget, alternating=alternating, allowed=allowed)
    trail = search.run(strategy, workers)
    if trail is not None:
        log_debug('[search] - {0} trail {1} cost {2}'.format(strategy, list(trail.nodes), trail.cost))
    return trail
