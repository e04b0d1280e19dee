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
Instance generation and batch experiments comparing the approximation
scheme, the 2/3 baseline and the exact oracle.

Generators draw everything from one random.Random(seed) stream, in this
order, so a spec always gives the same graph:

  gnp             pairs u < v in lexicographic order; random() < p keeps
                  the pair, and its weight is drawn right away
  geometric       n points in the unit square (x then y per point), then
                  pairs u < v within distance radius, weight drawn per kept
                  pair
  triangle-dense  gnp, then per clique sample(range(n), 3) and any missing
                  side gets a fresh weight, sides in canonical order
  planted-cycle   shuffle of range(n), the Hamiltonian cycle on it at weight
                  hi, then gnp noise on the remaining pairs
  loops           after the model, per vertex random() < loop_probability
                  adds a self-loop with a fresh weight

uniform-integer weights are randint(lo, hi); uniform-rational weights draw a
denominator d in 1..12 then a numerator in [lo*d, hi*d].
"""

import csv
import io
import json
import math
import multiprocessing
import os
import random
import time
from dataclasses import dataclass
from fractions import Fraction

import psutil

from magcode.core.globals_ import log_info
from magcode.core.globals_ import log_debug
from tf2m.globals_ import settings
from tf2m.globals_ import BENCH_SCHEMA
from tf2m.globals_ import BENCH_SCHEMA_VERSION
from tf2m.globals_ import STRATEGY_FIRST
from tf2m.exceptions import InputError
from tf2m.exceptions import InternalError
from tf2m.graph import WeightedGraph
from tf2m.graph import enumerate_triangles
from tf2m.helper import Helper
from tf2m.solver import solve_ptas
from tf2m.oracle import exact_opt
from tf2m.oracle import baseline_two_thirds
from tf2m.oracle import verify_solution

MODELS = ('gnp', 'geometric', 'triangle-dense', 'planted-cycle')
WEIGHT_DISTS = ('uniform-integer', 'uniform-rational')
RATIONAL_DENOMINATOR_MAX = 12

BENCH_COLUMNS = ('instance_id', 'model', 'seed', 'n', 'm', 'triangles', 'eps',
                 'ptas_weight', 'baseline_weight', 'oracle_weight',
                 'ptas_ratio', 'baseline_ratio', 'iterations', 'iteration_bound', 'bounds_ok')
TIMING_COLUMNS = ('ptas_seconds', 'baseline_seconds', 'oracle_seconds', 'rss_bytes')


@dataclass(frozen=True)
class GeneratorSpec(object):
    model: str = 'gnp'
    n: int = 6
    p: float = 0.5
    radius: float = 0.5
    cliques: int = 2
    weights: str = 'uniform-integer'
    lo: int = 1
    hi: int = 10
    seed: int = 0
    loop_probability: float = 0.0
    name: str = ''

    def check(self):
        if self.model not in MODELS:
            raise InputError("model '{0}' must be one of {1}".format(self.model, ', '.join(MODELS)))
        if self.weights not in WEIGHT_DISTS:
            raise InputError("weight distribution '{0}' must be one of {1}".format(self.weights, ', '.join(WEIGHT_DISTS)))
        if not isinstance(self.n, int) or self.n < 0:
            raise InputError('n {0} must be a non-negative integer'.format(self.n))
        if self.model in ('triangle-dense', 'planted-cycle') and self.n < 3:
            raise InputError("model '{0}' needs n >= 3".format(self.model))
        for name in ('p', 'loop_probability'):
            if not (0 <= getattr(self, name) <= 1):
                raise InputError('{0} {1} must lie in [0, 1]'.format(name, getattr(self, name)))
        if self.radius < 0:
            raise InputError('radius {0} must be non-negative'.format(self.radius))
        if self.cliques < 0:
            raise InputError('cliques {0} must be non-negative'.format(self.cliques))
        if not (0 <= self.lo <= self.hi):
            raise InputError('weight range [{0}, {1}] must satisfy 0 <= lo <= hi'.format(self.lo, self.hi))

    @property
    def instance_id(self):
        if self.name:
            return self.name
        return '{0}-n{1:03d}-s{2}'.format(self.model, self.n, self.seed)


def generate(spec):
    """
    Deterministic graph for a spec
    """
    spec.check()
    rng = random.Random(spec.seed)
    n = spec.n
    weights = {}

    def draw():
        if spec.weights == 'uniform-integer':
            return Fraction(rng.randint(spec.lo, spec.hi))
        den = rng.randint(1, RATIONAL_DENOMINATOR_MAX)
        return Fraction(rng.randint(spec.lo * den, spec.hi * den), den)

    def gnp(skip=()):
        for u in range(n):
            for v in range(u + 1, n):
                if (u, v) in skip:
                    continue
                if rng.random() < spec.p:
                    weights[(u, v)] = draw()

    if spec.model == 'gnp':
        gnp()
    elif spec.model == 'geometric':
        points = [(rng.random(), rng.random()) for _ in range(n)]
        for u in range(n):
            for v in range(u + 1, n):
                if math.dist(points[u], points[v]) <= spec.radius:
                    weights[(u, v)] = draw()
    elif spec.model == 'triangle-dense':
        gnp()
        for _ in range(spec.cliques):
            a, b, c = sorted(rng.sample(range(n), 3))
            for edge in ((a, b), (a, c), (b, c)):
                if edge not in weights:
                    weights[edge] = draw()
    elif spec.model == 'planted-cycle':
        order = list(range(n))
        rng.shuffle(order)
        cycle = set()
        for i in range(n):
            u, v = order[i], order[(i + 1) % n]
            cycle.add((min(u, v), max(u, v)))
        for edge in sorted(cycle):
            weights[edge] = Fraction(spec.hi)
        gnp(skip=cycle)
    if spec.loop_probability > 0:
        for v in range(n):
            if rng.random() < spec.loop_probability:
                weights[(v, v)] = draw()
    graph = WeightedGraph(n, weights)
    log_debug('[gen] - {0}: n={1} m={2}'.format(spec.instance_id, n, graph.edge_count))
    return graph


@dataclass
class BenchRecord(object):
    instance_id: str
    model: str
    seed: int
    n: int
    m: int
    triangles: int
    eps: Fraction
    ptas_weight: Fraction
    baseline_weight: Fraction
    oracle_weight: object = None
    iterations: int = 0
    iteration_bound: object = None
    ptas_seconds: float = 0.0
    baseline_seconds: float = 0.0
    oracle_seconds: float = 0.0
    rss_bytes: int = 0

    def _ratio(self, weight):
        if self.oracle_weight is None:
            return None
        if self.oracle_weight == 0:
            return Fraction(1)
        return weight / self.oracle_weight

    @property
    def ptas_ratio(self):
        return self._ratio(self.ptas_weight)

    @property
    def baseline_ratio(self):
        return self._ratio(self.baseline_weight)

    @property
    def bounds_ok(self):
        """
        Approximation bounds on oracle rows, compared exactly
        """
        if self.oracle_weight is None:
            return None
        return (self.ptas_weight >= (1 - self.eps) * self.oracle_weight
                and self.baseline_weight >= Fraction(2, 3) * (1 - self.eps) * self.oracle_weight)

    def row(self, decimals, timings=False):
        def opt(value, render):
            return '' if value is None else render(value)
        dec = lambda value: Helper.format_decimal(value, decimals)
        fmt = Helper.format_rational
        row = [self.instance_id, self.model, str(self.seed), str(self.n), str(self.m), str(self.triangles),
               fmt(self.eps), fmt(self.ptas_weight), fmt(self.baseline_weight), opt(self.oracle_weight, fmt),
               opt(self.ptas_ratio, dec), opt(self.baseline_ratio, dec), str(self.iterations),
               opt(self.iteration_bound, str), opt(self.bounds_ok, lambda b: 'true' if b else 'false')]
        if timings:
            row += ['{0:.6f}'.format(self.ptas_seconds), '{0:.6f}'.format(self.baseline_seconds),
                    '{0:.6f}'.format(self.oracle_seconds), str(self.rss_bytes)]
        return row


def _bench_one(args):
    spec, eps_list, with_oracle, oracle_limit, strategy = args
    graph = generate(spec)
    triangles = enumerate_triangles(graph)
    oracle_weight = None
    oracle_seconds = 0.0
    if with_oracle and graph.edge_count <= oracle_limit:
        start = time.perf_counter()
        oracle_weight = exact_opt(graph, triangles, oracle_limit).weight
        oracle_seconds = time.perf_counter() - start
    records = []
    for eps in eps_list:
        start = time.perf_counter()
        ptas = solve_ptas(graph, triangles, eps, strategy)
        ptas_seconds = time.perf_counter() - start
        start = time.perf_counter()
        baseline = baseline_two_thirds(graph, triangles, eps, strategy)
        baseline_seconds = time.perf_counter() - start
        for report in (ptas, baseline):
            if not verify_solution(graph, triangles, report.solution).feasible:
                raise InternalError('{0} produced an infeasible {1} solution'.format(spec.instance_id, report.method))
        records.append(BenchRecord(instance_id=spec.instance_id, model=spec.model, seed=spec.seed,
                                   n=graph.n, m=graph.edge_count, triangles=len(triangles), eps=Fraction(eps),
                                   ptas_weight=ptas.weight, baseline_weight=baseline.weight,
                                   oracle_weight=oracle_weight, iterations=ptas.iterations,
                                   iteration_bound=ptas.iteration_bound, ptas_seconds=ptas_seconds,
                                   baseline_seconds=baseline_seconds, oracle_seconds=oracle_seconds,
                                   rss_bytes=psutil.Process(pid=os.getpid()).memory_info().rss))
    return records


def run_bench(specs, eps_list, with_oracle=True, strategy=STRATEGY_FIRST, jobs=1, oracle_limit=None):
    """
    One record per (instance, eps), sorted by instance id then eps
    """
    if oracle_limit is None:
        oracle_limit = settings['oracle_edge_limit']
    eps_list = [Fraction(eps) for eps in eps_list]
    for eps in eps_list:
        if not (0 < eps <= 1):
            raise InputError('epsilon {0} must lie in (0, 1]'.format(eps))
    work = [(spec, eps_list, with_oracle, oracle_limit, strategy) for spec in specs]
    if jobs > 1 and len(work) > 1:
        with multiprocessing.Pool(jobs) as pool:
            batches = pool.map(_bench_one, work)
    else:
        batches = [_bench_one(item) for item in work]
    records = [record for batch in batches for record in batch]
    records.sort(key=lambda r: (r.instance_id, r.eps))
    log_info('[bench] - {0} records from {1} instances'.format(len(records), len(specs)))
    return records


def summarize(records):
    """
    min and mean approximation ratios over the oracle rows
    """
    rows = [r for r in records if r.oracle_weight is not None]
    summary = {'records': len(records), 'oracle_rows': len(rows)}
    for name in ('ptas_ratio', 'baseline_ratio'):
        values = [getattr(r, name) for r in rows]
        summary[name + '_min'] = min(values) if values else None
        summary[name + '_mean'] = (sum(values, Fraction(0)) / len(values)) if values else None
    summary['bounds_ok'] = all(r.bounds_ok for r in rows) if rows else None
    return summary


def format_reports(records, decimals=None, timings=None):
    """
    Returns (csv text, json text) for a set of records
    """
    if decimals is None:
        decimals = settings['bench_decimals']
    if timings is None:
        timings = settings['bench_timings']
    columns = BENCH_COLUMNS + (TIMING_COLUMNS if timings else ())
    rows = [r.row(decimals, timings) for r in records]
    summary = summarize(records)
    dec = lambda value: None if value is None else Helper.format_decimal(value, decimals)
    summary_out = {'records': summary['records'], 'oracle_rows': summary['oracle_rows'],
                   'bounds_ok': summary['bounds_ok']}
    for key in ('ptas_ratio_min', 'ptas_ratio_mean', 'baseline_ratio_min', 'baseline_ratio_mean'):
        summary_out[key] = dec(summary[key])

    buf = io.StringIO()
    buf.write('# {0} schema {1}\n'.format(BENCH_SCHEMA, BENCH_SCHEMA_VERSION))
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(columns)
    writer.writerows(rows)
    for stat in ('min', 'mean'):
        if not summary['oracle_rows']:
            break
        line = [''] * len(columns)
        line[0] = 'summary-' + stat
        line[columns.index('ptas_ratio')] = summary_out['ptas_ratio_' + stat]
        line[columns.index('baseline_ratio')] = summary_out['baseline_ratio_' + stat]
        if stat == 'min':
            line[columns.index('bounds_ok')] = 'true' if summary['bounds_ok'] else 'false'
        writer.writerow(line)

    doc = {'schema': BENCH_SCHEMA,
           'version': BENCH_SCHEMA_VERSION,
           'columns': list(columns),
           'records': [dict(zip(columns, row)) for row in rows],
           'summary': summary_out}
    return buf.getvalue(), json.dumps(doc, indent=2, sort_keys=False) + '\n'


def write_reports(records, csv_path=None, json_path=None, decimals=None, timings=None):
    """
    Writes the CSV and JSON reports atomically. IO failures name the path.
    """
    csv_text, json_text = format_reports(records, decimals, timings)
    for path, text in ((csv_path, csv_text), (json_path, json_text)):
        if not path:
            continue
        try:
            Helper.write_file_atomic(path, text)
        except (IOError, OSError) as ex:
            raise OSError(ex.errno, "can't write report '{0}': {1}".format(path, ex.strerror or ex))
    return csv_text, json_text


def bench_specs(model, count, n_min, n_max, seed=0, **params):
    """
    count specs cycling n through [n_min, n_max], seeds seed, seed+1, ...
    """
    if n_min > n_max:
        raise InputError('n range [{0}, {1}] is empty'.format(n_min, n_max))
    width = n_max - n_min + 1
    return [GeneratorSpec(model=model, n=n_min + i % width, seed=seed + i, **params) for i in range(count)]
