"""
Globals file for tf2m
"""

from fractions import Fraction

from magcode.core.globals_ import settings

# Constants for use in program
PROGRAM_NAME = 'tf2m'
INSTANCE_MAGIC = 'tf2m'
BENCH_SCHEMA = 'tf2m-bench'
BENCH_SCHEMA_VERSION = 1
JSON_SCHEMA_VERSION = 1
RATIONAL_REGEX = r'^(?P<num>[0-9]+)(/(?P<den>[0-9]+))?$'
DECIMAL_REGEX = r'^(?P<int>[0-9]*)\.(?P<frac>[0-9]{1,9})$'
BUDGET_NUMERATOR = 7
STRATEGY_FIRST = 'first'
STRATEGY_BEST = 'best'
STRATEGIES = (STRATEGY_FIRST, STRATEGY_BEST)
FORBIDDEN_ALL = 'all'
FORBIDDEN_LISTED = 'listed'
FORBIDDEN_MODES = (FORBIDDEN_ALL, FORBIDDEN_LISTED)
SEARCH_ALTERNATING = 'alternating'
SEARCH_GENERAL = 'general'
SEARCH_CLASSES = (SEARCH_ALTERNATING, SEARCH_GENERAL)

# Exit statuses, sysexits values where one exists
EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_TOO_LARGE = 3
EXIT_SOFTWARE = 70
EXIT_IOERR = 74
EXIT_CONFIG = 78

# settings for where files are
settings['config_dir'] = '/etc/tf2m'
settings['config_file'] = settings['config_dir'] + '/' + 'tf2m.conf'

# solver.py
settings['epsilon'] = Fraction(1, 2)
settings['strategy'] = STRATEGY_FIRST
settings['forbidden'] = FORBIDDEN_ALL
settings['search_class'] = SEARCH_ALTERNATING
settings['iteration_cap'] = None
# Used when local search runs on weights that are not integral
settings['iteration_cap_fallback'] = 100000
settings['scale_epsilon'] = None
settings['workers'] = 1
settings['seed'] = 0

# oracle.py
settings['oracle_edge_limit'] = 30

# bench.py
settings['bench_decimals'] = 6
settings['bench_timings'] = False
settings['bench_jobs'] = 1

# cli.py
settings['debug_verbose'] = False
