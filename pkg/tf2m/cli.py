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
tf2m command line. Subcommands solve, baseline, exact, verify, witness,
gen and bench. Library exceptions become exit statuses here and nowhere
else.
"""

import argparse
import json
import logging
import os
import sys

# A bit of nice stuff to set up ps output as much as we can...
try:
    from setproctitle import getproctitle
    setproctitle_support = True
except ImportError:
    setproctitle_support = False

from magcode.core.process import BaseCmdLineArg
from magcode.core.process import BooleanCmdLineArg
from magcode.core.globals_ import log_info
from magcode.core.globals_ import log_debug
from magcode.core.globals_ import log_error
from tf2m.globals_ import settings
from tf2m.globals_ import PROGRAM_NAME
from tf2m.globals_ import JSON_SCHEMA_VERSION
from tf2m.globals_ import STRATEGIES
from tf2m.globals_ import FORBIDDEN_MODES
from tf2m.globals_ import SEARCH_CLASSES
from tf2m.globals_ import EXIT_OK
from tf2m.globals_ import EXIT_INFEASIBLE
from tf2m.globals_ import EXIT_TOO_LARGE
from tf2m.globals_ import EXIT_SOFTWARE
from tf2m.globals_ import EXIT_IOERR
from tf2m.globals_ import EXIT_CONFIG
from tf2m.exceptions import Tf2mError
from tf2m.exceptions import InputError
from tf2m.exceptions import ConfigError
from tf2m.exceptions import OracleSizeError
from tf2m.exceptions import InternalError
from tf2m.helper import Helper
from tf2m.config import Config
from tf2m.config import SolverConfig
from tf2m.graph import enumerate_triangles
from tf2m.instance import read_instance
from tf2m.instance import read_solution
from tf2m.instance import forbidden_family
from tf2m.instance import format_instance
from tf2m.solver import solve_with_config
from tf2m.oracle import exact_opt
from tf2m.oracle import baseline_two_thirds
from tf2m.oracle import verify_solution
from tf2m.trail import Budget
from tf2m.trail import gain
from tf2m.witness import WitnessInput
from tf2m.witness import find_witness
from tf2m.witness import exhaustive_witness
from tf2m.bench import GeneratorSpec
from tf2m.bench import MODELS
from tf2m.bench import WEIGHT_DISTS
from tf2m.bench import generate
from tf2m.bench import bench_specs
from tf2m.bench import run_bench
from tf2m.bench import write_reports

USAGE_MESSAGE = "%(prog)s <command> [-hvd] [-c config_file] [options] [files ...]"
COMMAND_DESCRIPTION = "Weighted triangle-free 2-matching solver and toolkit"


def _epsilon_arg(text):
    try:
        return Helper.parse_epsilon(text)
    except InputError as ex:
        raise argparse.ArgumentTypeError(str(ex))


def _rational_arg(text):
    try:
        return Helper.parse_rational(text)
    except InputError as ex:
        raise argparse.ArgumentTypeError(str(ex))


def _posint_arg(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("'{0}' is not an integer".format(text))
    if value < 1:
        raise argparse.ArgumentTypeError("'{0}' must be positive".format(text))
    return value


def _eps_list_arg(text):
    return [_epsilon_arg(part) for part in text.split(',') if part.strip()]


class SettingCmdLineArg(BaseCmdLineArg):
    """
    Process an option that overrides one settings key
    """
    def __init__(self, long_arg, help_text, settings_key, **kwargs):
        BaseCmdLineArg.__init__(self, short_arg='', long_arg=long_arg + '=', help_text=help_text)
        self.option = long_arg
        self.dest = long_arg.replace('-', '_')
        self.settings_key = settings_key
        self.option_help = help_text
        self.option_kwargs = kwargs

    def add_to(self, parser):
        parser.add_argument('--' + self.option, dest=self.dest, help=self.option_help, default=None,
                            **self.option_kwargs)

    def process_arg(self, process, value, *args, **kwargs):
        settings[self.settings_key] = value


class TimingsCmdLineArg(BooleanCmdLineArg):
    """
    Process timings flag
    """
    def __init__(self):
        BooleanCmdLineArg.__init__(self,
                            short_arg='',
                            long_arg='timings',
                            help_text='report wall times and memory',
                            settings_key='bench_timings',
                            settings_default_value=False,
                            settings_set_value=True)
        self.dest = 'timings'

    def add_to(self, parser):
        parser.add_argument('--timings', dest=self.dest, action='store_true', default=None,
                            help='report wall times and memory')


SOLVER_ARGS = (
    SettingCmdLineArg('eps', 'total epsilon, e.g. 1/4 or 0.25', 'epsilon', type=_epsilon_arg),
    SettingCmdLineArg('strategy', 'take the first or the best augmenting trail', 'strategy',
                      choices=STRATEGIES),
    SettingCmdLineArg('forbidden', "'all' triangles of the graph or the 'listed' t lines", 'forbidden',
                      choices=FORBIDDEN_MODES),
    SettingCmdLineArg('search-class', 'searched trail class', 'search_class', choices=SEARCH_CLASSES),
    SettingCmdLineArg('workers', 'processes for the trail search', 'workers', type=_posint_arg),
    SettingCmdLineArg('scale-eps', 'epsilon spent on weight scaling', 'scale_epsilon', type=_rational_arg),
    SettingCmdLineArg('iteration-cap', 'stop local search after this many improvements', 'iteration_cap',
                      type=_posint_arg),
    SettingCmdLineArg('seed', 'generator seed', 'seed', type=int),
    SettingCmdLineArg('oracle-limit', 'largest edge count the exact oracle accepts', 'oracle_edge_limit',
                      type=_posint_arg),
    TimingsCmdLineArg(),
    )


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-c', '--config', help='configuration file (default {0} if present)'
                        .format(settings['config_file']))
    common.add_argument('-v', '--verbose', action='store_true', default=None, help='log progress')
    common.add_argument('-d', '--debug', action='count', default=None,
                        help='debug logging, twice for per-trail output')
    common.add_argument('--format', choices=('text', 'json'), default=None, help='output format')
    common.add_argument('--out', help='write output to this file instead of stdout')
    for arg in SOLVER_ARGS:
        arg.add_to(common)

    parser = argparse.ArgumentParser(prog=PROGRAM_NAME, usage=USAGE_MESSAGE, description=COMMAND_DESCRIPTION)
    sub = parser.add_subparsers(dest='command', metavar='<command>')
    sub.required = True

    cmd = sub.add_parser('solve', parents=[common], help='(1 - eps)-approximate solution')
    cmd.add_argument('instance')
    cmd = sub.add_parser('baseline', parents=[common], help='2/3 approximation by dropping triangle edges')
    cmd.add_argument('instance')
    cmd = sub.add_parser('exact', parents=[common], help='exact optimum for small instances')
    cmd.add_argument('instance')
    cmd = sub.add_parser('verify', parents=[common], help='check a solution file')
    cmd.add_argument('instance')
    cmd.add_argument('solution')
    cmd = sub.add_parser('witness', parents=[common],
                         help='improving alternating trail for two solutions A1 and A2')
    cmd.add_argument('instance')
    cmd.add_argument('a1')
    cmd.add_argument('a2')
    cmd.add_argument('--cross-check', action='store_true', help='also run the exhaustive trail search')

    cmd = sub.add_parser('gen', parents=[common], help='generate a random instance')
    _add_generator_args(cmd)
    cmd.add_argument('--with-triangles', action='store_true', help="write a 't' line for every triangle")

    cmd = sub.add_parser('bench', parents=[common], help='compare solver, baseline and oracle')
    _add_generator_args(cmd)
    cmd.add_argument('--count', type=int, default=10, help='number of instances')
    cmd.add_argument('--n-min', type=int, default=4)
    cmd.add_argument('--n-max', type=int, default=8)
    cmd.add_argument('--eps-list', type=_eps_list_arg, help='comma separated epsilons, default --eps')
    cmd.add_argument('--no-oracle', action='store_true', help='skip the exact oracle')
    cmd.add_argument('--csv', help='CSV report path')
    cmd.add_argument('--json', help='JSON report path')
    cmd.add_argument('--jobs', type=_posint_arg, help='instances run in parallel')
    cmd.add_argument('--decimals', type=int, choices=range(0, 19), metavar='0..18', help='ratio decimal places')
    return parser


def _add_generator_args(cmd):
    cmd.add_argument('--model', choices=MODELS, default='gnp')
    cmd.add_argument('--n', type=int, default=6, help='vertex count')
    cmd.add_argument('--p', type=float, default=0.5, help='edge probability')
    cmd.add_argument('--radius', type=float, default=0.5, help='geometric connection radius')
    cmd.add_argument('--cliques', type=int, default=2, help='triangle-dense overlay count')
    cmd.add_argument('--weights', choices=WEIGHT_DISTS, default='uniform-integer')
    cmd.add_argument('--lo', type=int, default=1)
    cmd.add_argument('--hi', type=int, default=10)
    cmd.add_argument('--loop-probability', type=float, default=0.0)


def _setup_logging(args):
    level = logging.WARNING
    if args.verbose:
        level = logging.INFO
    if args.debug:
        level = logging.DEBUG
    if (args.debug or 0) > 1:
        settings['debug_verbose'] = True
    logging.basicConfig(stream=sys.stderr, level=level, format='%(name)s: %(levelname)s: %(message)s')


def _emit(args, payload, text):
    """
    Writes the JSON payload or the text lines to --out or stdout
    """
    if args.format == 'json':
        out = json.dumps(payload, indent=2, sort_keys=True) + '\n'
    else:
        out = '\n'.join(text) + '\n'
    if args.out:
        Helper.write_file_atomic(args.out, out)
        log_info("[cli] - wrote '{0}'".format(args.out))
    else:
        sys.stdout.write(out)


def _edge_lines(edges):
    return ['e {0} {1}'.format(u, v) for u, v in sorted(edges)]


def _load(args, config):
    instance = read_instance(args.instance)
    triangles = forbidden_family(instance, config.forbidden)
    log_debug("[cli] - '{0}': n={1} m={2} |T|={3}".format(args.instance, instance.graph.n,
        instance.graph.edge_count, len(triangles)))
    return instance.graph, triangles


def _report_text(report):
    fmt = Helper.format_rational
    text = ['method {0}'.format(report.method),
            'weight {0}'.format(fmt(report.weight)),
            'iterations {0}'.format(report.iterations)]
    if report.iteration_bound is not None:
        text.append('iteration_bound {0}'.format(report.iteration_bound))
    text += ['# {0}'.format(d) for d in report.diagnostics]
    return text + _edge_lines(report.solution)


def cmd_solve(args, config):
    graph, triangles = _load(args, config)
    report = solve_with_config(graph, triangles, config)
    _emit(args, report.to_json(settings['bench_timings']), _report_text(report))
    return EXIT_OK


def cmd_baseline(args, config):
    graph, triangles = _load(args, config)
    report = baseline_two_thirds(graph, triangles, config.epsilon, config.strategy, config.search_class,
                                 workers=config.workers)
    _emit(args, report.to_json(settings['bench_timings']), _report_text(report))
    return EXIT_OK


def cmd_exact(args, config):
    graph, triangles = _load(args, config)
    result = exact_opt(graph, triangles, settings['oracle_edge_limit'])
    payload = dict(result.to_json(), schema=JSON_SCHEMA_VERSION)
    text = ['method exact', 'weight {0}'.format(Helper.format_rational(result.weight)),
            'nodes_explored {0}'.format(result.nodes_explored)] + _edge_lines(result.solution)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_verify(args, config):
    graph, triangles = _load(args, config)
    edges = read_solution(args.solution, graph, check_membership=False)
    verdict = verify_solution(graph, triangles, edges)
    payload = dict(verdict.to_json(), schema=JSON_SCHEMA_VERSION, method='verify')
    if verdict.feasible:
        text = ['feasible', 'weight {0}'.format(Helper.format_rational(verdict.weight))]
    else:
        text = ['infeasible', verdict.violation]
    _emit(args, payload, text)
    return EXIT_OK if verdict.feasible else EXIT_INFEASIBLE


def cmd_witness(args, config):
    graph, triangles = _load(args, config)
    a1 = read_solution(args.a1, graph)
    a2 = read_solution(args.a2, graph)
    inp = WitnessInput(graph, triangles, a1, a2, config.epsilon)
    trace = []
    trail = find_witness(inp, trace)
    verdict = verify_solution(graph, triangles, a2 ^ trail.edge_set)
    budget = Budget(config.epsilon)
    payload = {'schema': JSON_SCHEMA_VERSION,
               'method': 'witness',
               'trail': trail.to_json(),
               'cost': trail.cost,
               'budget': Helper.format_rational(budget.limit),
               'gain': Helper.format_rational(gain(graph, a2, trail)),
               'trace': trace,
               'verdict': verdict.to_json()}
    text = ['trail {0}'.format(' '.join(str(v) for v in trail.nodes)),
            'cost {0} budget {1}'.format(trail.cost, Helper.format_rational(budget.limit)),
            'gain {0}'.format(payload['gain']),
            'trace {0}'.format(' '.join(trace) if trace else '-'),
            'verdict {0}'.format('feasible' if verdict.feasible else verdict.violation)]
    if args.cross_check:
        other = exhaustive_witness(inp)
        payload['cross_check'] = {'found': other is not None,
                                  'trail': other.to_json() if other is not None else None}
        text.append('cross_check {0}'.format('agrees' if other is not None else 'DISAGREES'))
        if other is None:
            raise InternalError('exhaustive search found no trail but the witness {0} exists'.format(trail.nodes))
    _emit(args, payload, text)
    return EXIT_OK if verdict.feasible else EXIT_INFEASIBLE


def _generator_spec(args):
    return GeneratorSpec(model=args.model, n=args.n, p=args.p, radius=args.radius,
                         cliques=args.cliques, weights=args.weights, lo=args.lo, hi=args.hi,
                         seed=settings['seed'],
                         loop_probability=args.loop_probability)


def cmd_gen(args, config):
    spec = _generator_spec(args)
    graph = generate(spec)
    triangles = enumerate_triangles(graph) if args.with_triangles else None
    text = format_instance(graph, triangles, comment='{0} seed {1}'.format(spec.instance_id, spec.seed))
    if not args.out:
        sys.stdout.write(text)
        return EXIT_OK
    Helper.write_file_atomic(args.out, text)
    payload = {'schema': JSON_SCHEMA_VERSION, 'method': 'gen', 'path': args.out, 'n': graph.n,
               'm': graph.edge_count, 'triangles': len(triangles) if triangles is not None else 0}
    line = "wrote '{0}' n={1} m={2}".format(args.out, graph.n, graph.edge_count)
    if args.format == 'json':
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + '\n')
    else:
        sys.stdout.write(line + '\n')
    return EXIT_OK


def cmd_bench(args, config):
    if args.jobs is not None:
        settings['bench_jobs'] = args.jobs
    if args.decimals is not None:
        settings['bench_decimals'] = args.decimals
    params = dict(p=args.p, radius=args.radius, cliques=args.cliques, weights=args.weights,
                  lo=args.lo, hi=args.hi, loop_probability=args.loop_probability)
    specs = bench_specs(args.model, args.count, args.n_min, args.n_max, settings['seed'], **params)
    eps_list = args.eps_list or [config.epsilon]
    records = run_bench(specs, eps_list, with_oracle=not args.no_oracle, strategy=config.strategy,
                        jobs=settings['bench_jobs'], oracle_limit=settings['oracle_edge_limit'])
    csv_text, json_text = write_reports(records, args.csv, args.json)
    if args.out or not (args.csv or args.json):
        out = json_text if args.format == 'json' else csv_text
        if args.out:
            Helper.write_file_atomic(args.out, out)
        else:
            sys.stdout.write(out)
    failed = [r for r in records if r.bounds_ok is False]
    for record in failed:
        log_error('[bench] - {0} eps {1}: approximation bound violated'.format(record.instance_id,
            Helper.format_rational(record.eps)))
    return EXIT_INFEASIBLE if failed else EXIT_OK


COMMANDS = {'solve': cmd_solve,
            'baseline': cmd_baseline,
            'exact': cmd_exact,
            'verify': cmd_verify,
            'witness': cmd_witness,
            'gen': cmd_gen,
            'bench': cmd_bench}


def run(argv):
    args = build_parser().parse_args(argv)
    _setup_logging(args)
    if setproctitle_support:
        log_debug('[cli] - pid {0} process title {1}'.format(os.getpid(), getproctitle()))
    else:
        log_debug('[cli] - pid {0}'.format(os.getpid()))
    Config.read_config(args.config, required=args.config is not None)
    for arg in SOLVER_ARGS:
        value = getattr(args, arg.dest, None)
        if value is not None:
            arg.process_arg(None, value)
    if args.format is None:
        args.format = 'text'
    config = SolverConfig.from_settings()
    log_debug('[cli] - {0}: {1}'.format(args.command, config))
    return COMMANDS[args.command](args, config)


def main(argv=None):
    """
    Entry point. Returns the exit status.
    """
    if argv is None:
        argv = sys.argv[1:]
    saved = dict(settings)
    try:
        return run(argv)
    except OracleSizeError as ex:
        log_error('{0}: {1}'.format(PROGRAM_NAME, ex))
        return EXIT_TOO_LARGE
    except ConfigError as ex:
        log_error('{0}: {1}'.format(PROGRAM_NAME, ex))
        return EXIT_CONFIG
    except InternalError as ex:
        log_error('{0}: internal error: {1}'.format(PROGRAM_NAME, ex))
        return EXIT_SOFTWARE
    except Tf2mError as ex:
        # Contract violations, bad input and parse errors
        log_error('{0}: {1}'.format(PROGRAM_NAME, ex))
        return EXIT_INFEASIBLE
    except (IOError, OSError) as ex:
        log_error('{0}: {1}'.format(PROGRAM_NAME, ex))
        return EXIT_IOERR
    finally:
        settings.clear()
        settings.update(saved)


if __name__ == '__main__':
    sys.exit(main())
