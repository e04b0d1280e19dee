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
The approximation scheme: weight scaling to bounded integers followed by
local search over short augmenting trails, starting from the empty set.
"""

import math
import time
from dataclasses import dataclass
from dataclasses import field
from fractions import Fraction

from magcode.core.globals_ import log_info
from magcode.core.globals_ import log_debug
from magcode.core.globals_ import debug_verbose
from tf2m.globals_ import settings
from tf2m.globals_ import STRATEGY_FIRST
from tf2m.globals_ import SEARCH_ALTERNATING
from tf2m.globals_ import JSON_SCHEMA_VERSION
from tf2m.exceptions import InputError
from tf2m.exceptions import InternalError
from tf2m.exceptions import TrivialInstanceError
from tf2m.graph import WeightedGraph
from tf2m.helper import Helper
from tf2m.trail import Budget
from tf2m.trail import enumerate_augmenting_trails
from tf2m.trail import gain
from tf2m.trail import symmetric_difference
from tf2m.config import split_epsilon


@dataclass(frozen=True)
class ScaledInstance(object):
    """
    w'(e) = floor((w(e) / W) * (n / epsilon)), all in {0, ..., floor(n/epsilon)}
    """
    original: WeightedGraph
    max_weight: Fraction
    scaled: WeightedGraph
    epsilon: Fraction

    @property
    def n(self):
        return self.original.n

    @property
    def scaled_ceiling(self):
        return math.floor(self.n / self.epsilon)

    def scaled_weight(self, edge):
        return self.scaled.weight_of(edge)


@dataclass
class SolveReport(object):
    solution: frozenset
    weight: Fraction
    iterations: int
    gains: list
    n: int
    epsilon: Fraction
    strategy: str = STRATEGY_FIRST
    search_class: str = SEARCH_ALTERNATING
    scaled_weight: object = None
    epsilon_scale: object = None
    epsilon_search: object = None
    iteration_bound: object = None
    diagnostics: list = field(default_factory=list)
    wall_time: float = 0.0
    method: str = 'ptas'

    def sorted_solution(self):
        return sorted(self.solution)

    def to_json(self, timings=False):
        """
        JSON-ready dict. Rationals are 'num/den' strings. Wall time only
        appears with timings, keeping default output byte-stable.
        """
        fmt = Helper.format_rational
        out = {'schema': JSON_SCHEMA_VERSION,
               'method': self.method,
               'solution': [list(e) for e in self.sorted_solution()],
               'weight': fmt(self.weight),
               'n': self.n,
               'epsilon': fmt(self.epsilon),
               'strategy': self.strategy,
               'search_class': self.search_class,
               'iterations': self.iterations,
               'gains': [fmt(g) for g in self.gains],
               'diagnostics': list(self.diagnostics)}
        if self.scaled_weight is not None:
            out['scaled_weight'] = fmt(self.scaled_weight)
        if self.epsilon_scale is not None:
            out['epsilon_scale'] = fmt(self.epsilon_scale)
            out['epsilon_search'] = fmt(self.epsilon_search)
        if self.iteration_bound is not None:
            out['iteration_bound'] = self.iteration_bound
        if timings:
            out['wall_time'] = round(self.wall_time, 6)
        return out


def scale_weights(graph, eps):
    """
    Rescales weights to bounded integers. Raises TrivialInstanceError when
    every weight is zero.
    """
    eps = Fraction(eps)
    if not (0 < eps <= 1):
        raise InputError('epsilon {0} must lie in (0, 1]'.format(eps))
    top = graph.max_weight()
    if top == 0:
        raise TrivialInstanceError('all {0} edge weights are zero'.format(graph.edge_count))
    factor = Fraction(graph.n) / (top * eps)
    scaled = {edge: Fraction(math.floor(weight * factor)) for edge, weight in graph.weights().items()}
    log_debug('[scale] - W={0} n={1} eps={2} ceiling={3}'.format(
        Helper.format_rational(top), graph.n, Helper.format_rational(eps), math.floor(graph.n / eps)))
    return ScaledInstance(graph, top, WeightedGraph(graph.n, scaled), eps)


def _integral_cap(graph):
    weights = graph.weights().values()
    if all(w.denominator == 1 for w in weights):
        return graph.n * int(graph.max_weight())
    return None


def local_search(graph, triangles, eps, strategy=STRATEGY_FIRST, search_class=SEARCH_ALTERNATING,
                 iteration_cap=None, workers=1):
    """
    Repeatedly applies a within-budget augmenting trail, from the empty set,
    until none is left. graph may be a ScaledInstance, in which case the
    search runs on its integer weights.
    """
    if isinstance(graph, ScaledInstance):
        graph = graph.scaled
    budget = Budget(eps)
    alternating = search_class == SEARCH_ALTERNATING
    diagnostics = []
    cap = iteration_cap
    if cap is None:
        cap = _integral_cap(graph)
        if cap is None:
            cap = settings['iteration_cap_fallback']
            diagnostics.append('weights are not integral, iteration cap {0} has no guarantee'.format(cap))
    start = time.perf_counter()
    solution = frozenset()
    gains = []
    while True:
        trail = enumerate_augmenting_trails(graph, solution, triangles, budget, strategy,
                                            alternating=alternating, workers=workers)
        if trail is None:
            break
        if len(gains) >= cap:
            diagnostics.append('iteration cap {0} reached with an augmenting trail left'.format(cap))
            log_info('[solve] - iteration cap {0} reached'.format(cap))
            break
        step = gain(graph, solution, trail)
        if step <= 0:
            raise InternalError('trail {0} has gain {1}'.format(trail.nodes, step))
        solution = symmetric_difference(solution, trail)
        gains.append(step)
        if debug_verbose():
            log_debug('[solve] - iteration {0} trail {1} gain {2}'.format(len(gains), list(trail.nodes),
                Helper.format_rational(step)))
    if not graph.is_two_matching(solution) or not triangles.is_t_free(solution):
        raise InternalError('local search produced an infeasible solution')
    wall_time = time.perf_counter() - start
    log_debug('[solve] - local search done: {0} iterations weight {1}'.format(len(gains),
        Helper.format_rational(graph.weight(solution))))
    return SolveReport(solution=solution, weight=graph.weight(solution), iterations=len(gains),
                       gains=gains, n=graph.n, epsilon=Fraction(eps), strategy=strategy,
                       search_class=search_class, diagnostics=diagnostics, wall_time=wall_time,
                       method='local-search')


def solve_ptas(graph, triangles, eps_total, strategy=STRATEGY_FIRST, search_class=SEARCH_ALTERNATING,
               iteration_cap=None, workers=1, scale_epsilon=None):
    """
    Splits eps_total, scales the weights, runs local search on the integer
    instance and reports the solution under the original weights. The
    result has weight at least (1 - eps_total) times the optimum.
    """
    eps_total = Fraction(eps_total)
    eps_scale, eps_search = split_epsilon(eps_total, scale_epsilon)
    start = time.perf_counter()
    try:
        scaled = scale_weights(graph, eps_scale)
    except TrivialInstanceError as ex:
        log_info('[solve] - {0}, returning the empty solution'.format(ex))
        return SolveReport(solution=frozenset(), weight=Fraction(0), iterations=0, gains=[], n=graph.n,
                           epsilon=eps_total, strategy=strategy, search_class=search_class,
                           epsilon_scale=eps_scale, epsilon_search=eps_search,
                           diagnostics=['trivial instance: {0}'.format(ex)],
                           wall_time=time.perf_counter() - start)
    inner = local_search(scaled, triangles, eps_search, strategy, search_class,
                         iteration_cap=iteration_cap, workers=workers)
    bound = graph.n * scaled.scaled_ceiling
    if iteration_cap is None and inner.iterations > bound:
        raise InternalError('{0} iterations exceed the bound {1}'.format(inner.iterations, bound))
    report = SolveReport(solution=inner.solution, weight=graph.weight(inner.solution),
                         iterations=inner.iterations, gains=inner.gains, n=graph.n, epsilon=eps_total,
                         strategy=strategy, search_class=search_class, scaled_weight=inner.weight,
                         epsilon_scale=eps_scale, epsilon_search=eps_search, iteration_bound=bound,
                         diagnostics=inner.diagnostics, wall_time=time.perf_counter() - start)
    log_info('[solve] - weight {0} after {1} iterations (bound {2})'.format(
        Helper.format_rational(report.weight), report.iterations, bound))
    return report


def solve_with_config(graph, triangles, config):
    return solve_ptas(graph, triangles, config.epsilon, config.strategy, config.search_class,
                      iteration_cap=config.iteration_cap, workers=config.workers,
                      scale_epsilon=config.scale_epsilon)
