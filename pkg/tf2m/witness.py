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
Constructs certified improving trails between two T-free 2-matchings.

Given A1, A2 with (1 - eps) w(A1) > w(A2), find_witness returns an
alternating trail P w.r.t. (A1, A2) such that A2 delta P is a T-free
2-matching, w(A2 delta P) > w(A2) and |P| + 2 sl(P) <= 7/eps.

With no forbidden triangles the trail comes from a decomposition of
A1 delta A2 and a sliding window over one of its parts. Otherwise one
triangle is picked by a six way case analysis, the instance is reduced to
one with fewer forbidden triangles (by node splitting, self-loop weight
surgery or edge swaps) and the trail found there is lifted back.
"""

import math
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction

from magcode.core.globals_ import log_debug
from magcode.core.globals_ import debug_verbose
from tf2m.exceptions import ContractError
from tf2m.exceptions import InputError
from tf2m.exceptions import InternalError
from tf2m.graph import WeightedGraph
from tf2m.graph import TriangleSet
from tf2m.graph import canonical_edge
from tf2m.graph import degree_map
from tf2m.graph import triangle_edges
from tf2m.trail import Trail
from tf2m.trail import Budget
from tf2m.trail import is_alternating
from tf2m.trail import symmetric_difference
from tf2m.trail import enumerate_augmenting_trails

CASE_TAGS = ('1', '2', '3.1', '3.2', '4.1', '4.2', '5.1', '5.2', '6.1', '6.2')

CaseSelection = namedtuple('CaseSelection', ['tag', 'triangle', 'second', 'u1', 'u2', 'u3', 'u4'])


@dataclass(frozen=True)
class WitnessInput(object):
    graph: WeightedGraph
    triangles: TriangleSet
    a1: frozenset
    a2: frozenset
    epsilon: Fraction

    def check(self):
        """
        Raises ContractError naming the first precondition that fails
        """
        eps = Fraction(self.epsilon)
        if not (0 < eps <= 1):
            raise ContractError('epsilon in (0, 1]', 'got {0}'.format(eps))
        for name, side in (('A1', self.a1), ('A2', self.a2)):
            try:
                self.graph.check_edge_set(side)
            except InputError as ex:
                raise ContractError('{0} is an edge set of the graph'.format(name), str(ex))
            if not self.graph.is_two_matching(side):
                raise ContractError('{0} is a 2-matching'.format(name))
            if not self.triangles.is_t_free(side):
                raise ContractError('{0} is T-free'.format(name),
                        'contains {0}'.format(self.triangles.contained_in(side)[0]))
        w1 = self.graph.weight(self.a1)
        w2 = self.graph.weight(self.a2)
        if not (1 - eps) * w1 > w2:
            raise ContractError('(1 - eps) w(A1) > w(A2)',
                    '(1 - {0}) * {1} vs {2}'.format(eps, w1, w2))


@dataclass(frozen=True)
class ReductionStep(object):
    """
    One reduction. shortcut is set when the case exhibits the trail
    directly; otherwise graph, triangles, a1 and a2 describe the smaller
    instance and contractions / loop_expansion say how to lift back.
    """
    tag: str
    graph: WeightedGraph
    triangles: TriangleSet
    a1: frozenset
    a2: frozenset
    contractions: tuple = ()
    loop_expansion: object = None
    shortcut: object = None

    def contraction_map(self):
        return dict(self.contractions)


def _check_two_matching(edges, name):
    if any(d > 2 for d in degree_map(edges).values()):
        raise ContractError('{0} is a 2-matching'.format(name))


def decompose_alternating_trails(a1, a2):
    """
    Partitions A1 delta A2 into alternating trails P, each with A2 delta P a
    2-matching. At every vertex the A1-side ends are paired with the A2-side
    ends in canonical order. Trails are traced from unpaired ends first,
    then around the remaining closed cycles.
    """
    a1 = frozenset(a1)
    a2 = frozenset(a2)
    _check_two_matching(a1, 'A1')
    _check_two_matching(a2, 'A2')
    diff = sorted(a1 ^ a2)
    ends_at = {}
    for edge in diff:
        for i in (0, 1):
            ends_at.setdefault(edge[i], []).append((edge, i))
    partner = {}
    for vertex in sorted(ends_at):
        ends = sorted(ends_at[vertex])
        side1 = [end for end in ends if end[0] in a1]
        side2 = [end for end in ends if end[0] in a2]
        for x, y in zip(side1, side2):
            partner[x] = y
            partner[y] = x
    used = set()

    def trace(start):
        nodes = [start[0][start[1]]]
        cur = start
        while True:
            edge, i = cur
            used.add(edge)
            other = (edge, 1 - i)
            nodes.append(edge[1 - i])
            nxt = partner.get(other)
            if nxt is None or nxt == start:
                return Trail(tuple(nodes))
            cur = nxt

    parts = []
    unpaired = sorted(end for ends in ends_at.values() for end in ends if end not in partner)
    for end in unpaired:
        if end[0] not in used:
            parts.append(trace(end))
    for edge in diff:
        if edge not in used:
            parts.append(trace((edge, 0)))
    covered = set()
    for part in parts:
        if covered & part.edge_set:
            raise InternalError('decomposition parts overlap at {0}'.format(sorted(covered & part.edge_set)))
        covered |= part.edge_set
        if not is_alternating(part, a1, a2):
            raise InternalError('decomposition part {0} does not alternate'.format(part.nodes))
        if any(d > 2 for d in degree_map(symmetric_difference(a2, part)).values()):
            raise InternalError('decomposition part {0} breaks the degree bound'.format(part.nodes))
    if covered != set(diff):
        raise InternalError('decomposition does not cover A1 delta A2')
    return parts


def _window_nodes(trail, start, length):
    k = len(trail.edges)
    return tuple(trail.nodes[(start + j) % k] if trail.closed else trail.nodes[start + j]
                 for j in range(length + 1))


def _windows(trail, a2, length):
    """
    (start, length) pairs of the sliding window family over a long part, in
    scan order
    """
    k = len(trail.edges)
    in_a2 = [edge in a2 for edge in trail.edges]
    if trail.closed and in_a2[0] != in_a2[-1]:
        return [(i, length) for i in range(k) if in_a2[i]]
    found = set()
    for i in range(0, k - length + 1):
        if in_a2[i]:
            found.add((i, length))
    for ell in range(1, length):
        if in_a2[ell - 1]:
            found.add((0, ell))
        if in_a2[k - ell]:
            found.add((k - ell, ell))
    return sorted(found)


def base_case_trail(graph, a1, a2, eps):
    """
    Improving alternating trail of at most 2 ceil(1/eps) - 1 edges when no
    triangles are forbidden
    """
    eps = Fraction(eps)
    a1 = frozenset(a1)
    a2 = frozenset(a2)
    w1 = graph.weight(a1)
    w2 = graph.weight(a2)
    if not (0 < eps <= 1):
        raise ContractError('epsilon in (0, 1]', 'got {0}'.format(eps))
    if not (1 - eps) * w1 > w2:
        raise ContractError('(1 - eps) w(A1) > w(A2)', '(1 - {0}) * {1} vs {2}'.format(eps, w1, w2))
    parts = decompose_alternating_trails(a1, a2)
    chosen = None
    for part in parts:
        if graph.weight(a2 & part.edge_set) < (1 - eps) * graph.weight(a1 & part.edge_set):
            chosen = part
            break
    if chosen is None:
        raise InternalError('no decomposition part beats the averaging bound')
    m = math.ceil(1 / eps)
    length = 2 * m - 1
    if len(chosen) <= length:
        return chosen
    for start, ell in _windows(chosen, a2, length):
        window = Trail(_window_nodes(chosen, start, ell))
        step = graph.weight(a1 & window.edge_set) - graph.weight(a2 & window.edge_set)
        if step <= 0:
            continue
        if any(d > 2 for d in degree_map(symmetric_difference(a2, window)).values()):
            raise InternalError('window {0} breaks the degree bound'.format(window.nodes))
        if debug_verbose():
            log_debug('[witness] - window start {0} length {1} gain {2}'.format(start, ell, step))
        return window
    raise InternalError('no window of part {0} has positive gain'.format(chosen.nodes))


def _count(edges, triangle):
    return sum(1 for e in triangle_edges(triangle) if e in edges)


def _apex(triangle, pair):
    """
    Labels a triangle whose two sides in pair meet at u1; u2 < u3
    """
    (a, b), (c, d) = pair
    u1 = ({a, b} & {c, d}).pop()
    u2, u3 = sorted(({a, b} | {c, d}) - {u1})
    return u1, u2, u3


def _sides_in(edges, triangle):
    return [e for e in triangle_edges(triangle) if e in edges]


def _flip_free(edges, triangle, triangles):
    return triangles.is_t_free(frozenset(edges) ^ frozenset(triangle_edges(triangle)))


def classify_case(graph, triangles, a1, a2):
    """
    First applicable case, in order 1 to 6, with the subcase resolved.
    Triangles are tried in canonical order within each case.
    """
    if len(triangles) == 0:
        raise ContractError('at least one forbidden triangle')
    a1 = frozenset(a1)
    a2 = frozenset(a2)
    union = a1 | a2
    ordered = list(triangles)
    for tri in ordered:
        if _count(union, tri) < 3:
            return CaseSelection('1', tri, None, None, None, None, None)
    for tri in ordered:
        if _count(a1, tri) == 2 and _count(a2, tri) == 2:
            shared = [e for e in triangle_edges(tri) if e in a1 and e in a2]
            if len(shared) != 1:
                raise InternalError('triangle {0} has no single shared side'.format(tri))
            u2_side = [e for e in triangle_edges(tri) if e in a1 and e not in a2][0]
            u3_side = [e for e in triangle_edges(tri) if e in a2 and e not in a1][0]
            u1 = (set(u2_side) & set(u3_side)).pop()
            u2 = u2_side[0] if u2_side[1] == u1 else u2_side[1]
            u3 = u3_side[0] if u3_side[1] == u1 else u3_side[1]
            return CaseSelection('2', tri, None, u1, u2, u3, None)
    for tri in ordered:
        if _count(a1, tri) == 2 and _flip_free(a1, tri, triangles):
            u1, u2, u3 = _apex(tri, _sides_in(a1, tri))
            tag = '3.1' if (u1, u1) in a2 else '3.2'
            return CaseSelection(tag, tri, None, u1, u2, u3, None)
    for tri in ordered:
        if _count(a2, tri) == 2 and _flip_free(a2, tri, triangles):
            u1, u2, u3 = _apex(tri, _sides_in(a2, tri))
            tag = '4.1' if (u1, u1) in a1 else '4.2'
            return CaseSelection(tag, tri, None, u1, u2, u3, None)
    for major, own, other in (('5', a1, a2), ('6', a2, a1)):
        for tri in ordered:
            if _count(own, tri) != 2:
                continue
            u1, u2, u3 = _apex(tri, _sides_in(own, tri))
            flipped = own ^ frozenset(triangle_edges(tri))
            seconds = [t for t in triangles.containing((u2, u3))
                       if t != tri and all(e in flipped for e in triangle_edges(t))]
            if not seconds:
                raise InternalError('case {0}: no second triangle on side {1}'.format(major, (u2, u3)))
            second = seconds[0]
            u4 = (set(second) - {u2, u3}).pop()
            for edge in ((u2, u4), (u3, u4)):
                edge = canonical_edge(*edge)
                if edge not in own or edge in other:
                    raise InternalError('case {0}: side {1} is not exclusive'.format(major, edge))
            quad = {u1, u2, u3, u4}
            for touched in triangles.touching(triangle_edges(tri) + triangle_edges(second)):
                if not set(touched) <= quad:
                    raise InternalError('case {0}: triangle {1} leaves vertex set {2}'
                            .format(major, touched, sorted(quad)))
            tag = major + ('.1' if canonical_edge(u1, u4) in other else '.2')
            return CaseSelection(tag, tri, second, u1, u2, u3, u4)
    raise InternalError('no case applies to the triangle family')


def apply_reduction(selection, graph, triangles, a1, a2):
    """
    Builds the reduced instance, or the directly exhibited trail, for a case
    """
    tag = selection.tag
    a1 = frozenset(a1)
    a2 = frozenset(a2)
    u1, u2, u3, u4 = selection.u1, selection.u2, selection.u3, selection.u4

    def e(x, y):
        return canonical_edge(x, y)

    def w(x, y):
        edge = e(x, y)
        return graph.weight_of(edge) if graph.has_edge(edge) else Fraction(0)

    def step(**kwargs):
        values = {'graph': graph, 'triangles': triangles, 'a1': a1, 'a2': a2}
        values.update(kwargs)
        return ReductionStep(tag=tag, **values)

    def shortcut(nodes):
        return ReductionStep(tag=tag, graph=graph, triangles=triangles, a1=a1, a2=a2,
                             shortcut=Trail(tuple(nodes)))

    if tag == '1':
        return step(triangles=triangles.without([selection.triangle]))

    if tag in ('2', '3.1', '3.2', '4.1', '4.2'):
        reduced = triangles.without(triangles.touching([e(u1, u2), e(u1, u3)]))
    else:
        reduced = triangles.without(triangles.touching(triangle_edges(selection.triangle)
                                                     + triangle_edges(selection.second)))
    sides = frozenset([e(u1, u2), e(u1, u3)])

    if tag == '2':
        u1p = graph.n
        new_graph = graph.derive(add_vertices=1, remove=sides,
                                 set_weights={e(u1p, u2): w(u1, u2), e(u1p, u3): w(u1, u3), e(u1, u1p): 0})
        new_a1 = (a1 - {e(u1, u2)}) | {e(u1p, u2), e(u1, u1p)}
        new_a2 = (a2 - {e(u1, u3)}) | {e(u1p, u3), e(u1, u1p)}
        return step(graph=new_graph, triangles=reduced, a1=new_a1, a2=new_a2,
                    contractions=((u1p, u1),))

    if tag == '3.1':
        if w(u1, u2) + w(u1, u3) > w(u2, u3) + w(u1, u1):
            return shortcut([u1, u2, u3, u1, u1])
        return step(triangles=reduced, a1=(a1 - sides) | {e(u2, u3), e(u1, u1)})

    if tag == '3.2':
        d = w(u1, u2) + w(u1, u3) - w(u2, u3)
        if d >= 0:
            new_graph = graph.derive(set_weights={e(u1, u1): d})
            return step(graph=new_graph, triangles=reduced, a1=(a1 - sides) | {e(u2, u3), e(u1, u1)},
                        loop_expansion=(u1, u2, u3))
        remove = [e(u1, u1)] if graph.has_edge(e(u1, u1)) else []
        new_graph = graph.derive(remove=remove) if remove else graph
        return step(graph=new_graph, triangles=reduced, a1=(a1 - sides) | {e(u2, u3)})

    if tag == '4.1':
        if w(u1, u1) + w(u2, u3) > w(u1, u2) + w(u1, u3):
            return shortcut([u1, u2, u3, u1, u1])
        new_graph = graph.derive(set_weights={e(u1, u1): w(u1, u2) + w(u1, u3), e(u2, u3): 0})
        return step(graph=new_graph, triangles=reduced, a2=(a2 - sides) | {e(u2, u3), e(u1, u1)})

    if tag == '4.2':
        if w(u2, u3) > w(u1, u2) + w(u1, u3):
            return shortcut([u1, u2, u3, u1])
        new_graph = graph.derive(set_weights={e(u1, u1): w(u1, u2) + w(u1, u3) - w(u2, u3)})
        return step(graph=new_graph, triangles=reduced, a2=(a2 - sides) | {e(u1, u1), e(u2, u3)},
                    loop_expansion=(u1, u2, u3))

    swapped = frozenset([e(u1, u2), e(u3, u4)])
    crossing = frozenset([e(u1, u4), e(u2, u3)])

    if tag == '5.1':
        if w(u1, u2) + w(u3, u4) > w(u1, u4) + w(u2, u3):
            return shortcut([u1, u2, u3, u4, u1])
        return step(triangles=reduced, a1=(a1 - swapped) | crossing)

    if tag == '6.1':
        if w(u1, u4) + w(u2, u3) > w(u1, u2) + w(u3, u4):
            return shortcut([u1, u2, u3, u4, u1])
        new_graph = graph.derive(set_weights={e(u2, u3): w(u1, u2), e(u1, u4): w(u3, u4)})
        return step(graph=new_graph, triangles=reduced, a2=(a2 - swapped) | crossing)

    if tag in ('5.2', '6.2'):
        u2p = graph.n
        u3p = graph.n + 1
        new_graph = graph.derive(add_vertices=2, remove=[e(u1, u2), e(u3, u4), e(u2, u3)],
                                 set_weights={e(u1, u2p): w(u1, u2), e(u3p, u4): w(u3, u4),
                                              e(u2p, u3p): w(u2, u3), e(u2, u2p): 0, e(u3, u3p): 0})
        connectors = {e(u2, u2p), e(u3, u3p)}
        outer = (swapped, {e(u1, u2p), e(u3p, u4)} | connectors)
        middle = ({e(u2, u3)}, {e(u2p, u3p)} | connectors)
        if tag == '5.2':
            new_a1 = (a1 - outer[0]) | outer[1]
            new_a2 = (a2 - middle[0]) | middle[1]
        else:
            new_a1 = (a1 - middle[0]) | middle[1]
            new_a2 = (a2 - outer[0]) | outer[1]
        return step(graph=new_graph, triangles=reduced, a1=new_a1, a2=new_a2,
                    contractions=((u2p, u2), (u3p, u3)))

    raise InternalError("unknown case tag '{0}'".format(tag))


def lift_trail(step, trail):
    """
    Maps a trail of the reduced graph back to the graph the step reduced:
    a self-loop at u1 becomes u1 u2 u3 u1, split vertices contract onto
    their originals, everything else is kept
    """
    for edge in trail.edges:
        if not step.graph.has_edge(edge):
            raise InternalError('trail edge {0} is not in the reduced graph'.format(edge))
    nodes = list(trail.nodes)
    if step.loop_expansion is not None:
        u1, u2, u3 = step.loop_expansion
        for i in range(len(nodes) - 1):
            if nodes[i] == u1 and nodes[i + 1] == u1:
                nodes = nodes[:i + 1] + [u2, u3] + nodes[i + 1:]
                break
    mapping = step.contraction_map()
    if mapping:
        nodes = [mapping.get(x, x) for x in nodes]
    try:
        return Trail(tuple(nodes))
    except InputError as ex:
        raise InternalError('lifted trail is not a trail: {0}'.format(ex))


def _certify(graph, triangles, a1, a2, eps, trail, where):
    """
    Independent check of the three witness conditions plus alternation
    """
    for edge in trail.edges:
        if not graph.has_edge(edge):
            raise InternalError('{0}: edge {1} not in graph'.format(where, edge))
    if not is_alternating(trail, a1, a2):
        raise InternalError('{0}: trail {1} does not alternate'.format(where, trail.nodes))
    result = symmetric_difference(a2, trail)
    if any(d > 2 for d in degree_map(result).values()):
        raise InternalError('{0}: A2 delta P is not a 2-matching'.format(where))
    if not triangles.is_t_free(result):
        raise InternalError('{0}: A2 delta P contains {1}'.format(where, triangles.contained_in(result)[0]))
    if not graph.weight(result) > graph.weight(a2):
        raise InternalError('{0}: trail {1} does not improve A2'.format(where, trail.nodes))
    if not Budget(eps).allows(trail):
        raise InternalError('{0}: trail cost {1} over budget'.format(where, trail.cost))


def _find(graph, triangles, a1, a2, eps, trace, depth):
    if len(triangles) == 0:
        trail = base_case_trail(graph, a1, a2, eps)
        _certify(graph, triangles, a1, a2, eps, trail, 'base case')
        return trail
    selection = classify_case(graph, triangles, a1, a2)
    step = apply_reduction(selection, graph, triangles, a1, a2)
    if trace is not None:
        trace.append(step.tag)
    log_debug('[witness] - depth {0} case {1} triangle {2} |T|={3}'.format(depth, step.tag,
        selection.triangle, len(triangles)))
    where = 'case {0}'.format(step.tag)
    if step.shortcut is not None:
        _certify(graph, triangles, a1, a2, eps, step.shortcut, where)
        return step.shortcut
    if not len(step.triangles) < len(triangles):
        raise InternalError('{0}: forbidden family did not shrink'.format(where))
    if step.graph.weight(step.a1) < graph.weight(a1):
        raise InternalError('{0}: w(A1) decreased'.format(where))
    if step.graph.weight(step.a2) != graph.weight(a2):
        raise InternalError('{0}: w(A2) changed'.format(where))
    try:
        WitnessInput(step.graph, step.triangles, step.a1, step.a2, eps).check()
    except ContractError as ex:
        raise InternalError('{0}: reduced instance invalid: {1}'.format(where, ex))
    inner = _find(step.graph, step.triangles, step.a1, step.a2, eps, trace, depth + 1)
    trail = lift_trail(step, inner)
    _certify(graph, triangles, a1, a2, eps, trail, where)
    return trail


def find_witness(inp, trace=None):
    """
    Certified improving alternating trail for a WitnessInput. trace, when a
    list, receives the case tags taken on the way down.
    """
    inp.check()
    a1 = frozenset(inp.a1)
    a2 = frozenset(inp.a2)
    trail = _find(inp.graph, inp.triangles, a1, a2, Fraction(inp.epsilon), trace, 0)
    return trail


def exhaustive_witness(inp):
    """
    Any within-budget alternating trail w.r.t. (A1, A2) improving A2, by
    exhaustive search, or None
    """
    a1 = frozenset(inp.a1)
    a2 = frozenset(inp.a2)
    return enumerate_augmenting_trails(inp.graph, a2, inp.triangles, Budget(inp.epsilon),
                                       alternating=True, allowed=a1 ^ a2)
