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
Processes and reads in configuration
"""

import math
import os
import os.path
import re
import configparser
from dataclasses import dataclass
from fractions import Fraction

from magcode.core.globals_ import log_error
from magcode.core.globals_ import log_debug
from tf2m.globals_ import settings
from tf2m.globals_ import STRATEGIES
from tf2m.globals_ import STRATEGY_FIRST
from tf2m.globals_ import FORBIDDEN_MODES
from tf2m.globals_ import FORBIDDEN_ALL
from tf2m.globals_ import SEARCH_CLASSES
from tf2m.globals_ import SEARCH_ALTERNATING
from tf2m.exceptions import ConfigError
from tf2m.exceptions import InputError
from tf2m.helper import Helper
from tf2m.trail import Budget

BOOLEAN_REGEX = r'^([tT]rue|[fF]alse|[oO]n|[oO]ff|[yY]es|[nN]o|0|1)$'
EPSILON_REGEX = r'^([0-9]+(/[0-9]+)?|[0-9]*\.[0-9]{1,9})$'
POSINT_REGEX = r'^[1-9][0-9]{0,8}$'
DECIMALS_REGEX = r'^[0-9]{1,2}$'
STRATEGY_REGEX = r'^(' + '|'.join(STRATEGIES) + r')$'
FORBIDDEN_REGEX = r'^(' + '|'.join(FORBIDDEN_MODES) + r')$'
SEARCH_CLASS_REGEX = r'^(' + '|'.join(SEARCH_CLASSES) + r')$'

# section -> item -> (syntax regex, settings key)
cfg_syntax_dict = {
        'solve': {
            'epsilon': (EPSILON_REGEX, 'epsilon'),
            'strategy': (STRATEGY_REGEX, 'strategy'),
            'forbidden': (FORBIDDEN_REGEX, 'forbidden'),
            'search_class': (SEARCH_CLASS_REGEX, 'search_class'),
            'iteration_cap': (POSINT_REGEX, 'iteration_cap'),
            'scale_epsilon': (EPSILON_REGEX, 'scale_epsilon'),
            'workers': (POSINT_REGEX, 'workers'),
            'seed': (r'^[0-9]{1,18}$', 'seed'),
            },
        'oracle': {
            'edge_limit': (POSINT_REGEX, 'oracle_edge_limit'),
            },
        'bench': {
            'decimals': (DECIMALS_REGEX, 'bench_decimals'),
            'timings': (BOOLEAN_REGEX, 'bench_timings'),
            'jobs': (POSINT_REGEX, 'bench_jobs'),
            },
        }
RATIONAL_KEYS = ('epsilon', 'scale_epsilon')
INTEGER_KEYS = ('iteration_cap', 'workers', 'seed', 'oracle_edge_limit', 'bench_decimals', 'bench_jobs')
BOOLEAN_KEYS = ('bench_timings',)


def split_epsilon(eps_total, scale_epsilon=None):
    """
    Splits eps_total into the scaling epsilon and the local search epsilon
    so that (1 - eps_scale)(1 - eps_search) >= 1 - eps_total. The default is
    an even split. An override x gives eps_search = (eps_total - x)/(1 - x).
    """
    eps_total = Fraction(eps_total)
    if not (0 < eps_total <= 1):
        raise InputError('epsilon {0} must lie in (0, 1]'.format(eps_total))
    if scale_epsilon is None:
        half = eps_total / 2
        return (half, half)
    x = Fraction(scale_epsilon)
    if eps_total == 1:
        if not (0 < x <= 1):
            raise InputError('scale epsilon {0} must lie in (0, 1]'.format(x))
        return (x, Fraction(1))
    if not (0 < x < eps_total):
        raise InputError('scale epsilon {0} must lie in (0, {1})'.format(x, eps_total))
    return (x, (eps_total - x) / (1 - x))


@dataclass(frozen=True)
class SolverConfig(object):
    """
    Solver parameters. seed only feeds the instance generators.
    """
    epsilon: Fraction = Fraction(1, 2)
    strategy: str = STRATEGY_FIRST
    forbidden: str = FORBIDDEN_ALL
    iteration_cap: object = None
    seed: int = 0
    search_class: str = SEARCH_ALTERNATING
    workers: int = 1
    scale_epsilon: object = None

    def __post_init__(self):
        eps = Fraction(self.epsilon)
        if not (0 < eps <= 1):
            raise InputError('epsilon {0} must lie in (0, 1]'.format(eps))
        object.__setattr__(self, 'epsilon', eps)
        if self.strategy not in STRATEGIES:
            raise InputError("strategy '{0}' must be one of {1}".format(self.strategy, ', '.join(STRATEGIES)))
        if self.forbidden not in FORBIDDEN_MODES:
            raise InputError("forbidden mode '{0}' must be one of {1}".format(self.forbidden, ', '.join(FORBIDDEN_MODES)))
        if self.search_class not in SEARCH_CLASSES:
            raise InputError("search class '{0}' must be one of {1}".format(self.search_class, ', '.join(SEARCH_CLASSES)))
        if self.iteration_cap is not None and self.iteration_cap < 1:
            raise InputError('iteration cap {0} must be positive'.format(self.iteration_cap))
        if self.workers < 1:
            raise InputError('workers {0} must be positive'.format(self.workers))
        # Fails early on a bad override
        split_epsilon(eps, self.scale_epsilon)

    @property
    def budget(self):
        """
        Length budget 7/epsilon for the local search epsilon
        """
        return Budget(self.epsilon_split[1])

    @property
    def epsilon_split(self):
        return split_epsilon(self.epsilon, self.scale_epsilon)

    @property
    def window_m(self):
        return math.ceil(1 / self.epsilon)

    @property
    def alternating(self):
        return self.search_class == SEARCH_ALTERNATING

    @classmethod
    def from_settings(cls, **overrides):
        values = {'epsilon': settings['epsilon'],
                  'strategy': settings['strategy'],
                  'forbidden': settings['forbidden'],
                  'iteration_cap': settings['iteration_cap'],
                  'seed': settings['seed'],
                  'search_class': settings['search_class'],
                  'workers': settings['workers'],
                  'scale_epsilon': settings['scale_epsilon']}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class Config(object):
    """
    Reads the optional tf2m configuration file into settings
    """

    @staticmethod
    def _check_section_syntax(section, section_name):
        result = True
        syntax = cfg_syntax_dict[section_name]
        for item in section.keys():
            try:
                value_syntax = syntax[item][0]
            except KeyError:
                log_error("[{0}] - item '{1}' is not a valid keyword.".format(section_name, item))
                result = False
                continue
            value = section[item]
            if (not re.match(value_syntax, value)):
                log_error("[{0}] {1} - value '{2}' invalid. Must match regex '{3}'.".format(section_name, item, value, value_syntax))
                result = False
        return result

    @staticmethod
    def _check_config_syntax(config):
        result = True
        for section_name in config.sections():
            if section_name not in cfg_syntax_dict:
                log_error("Section name '{0}' is invalid.".format(section_name))
                result = False
                continue
            if not Config._check_section_syntax(config[section_name], section_name):
                result = False
        return result

    @staticmethod
    def parse_config_text(text, source='<string>'):
        """
        Validates configuration text and returns the settings it assigns
        """
        config = configparser.ConfigParser(default_section='__none__', interpolation=None)
        try:
            config.read_string(text, source=source)
        except configparser.Error as ex:
            log_error('Exception while parsing configuration file: {0}'.format(str(ex)))
            raise ConfigError("Configuration file '{0}' does not parse: {1}".format(source, ex))
        if not Config._check_config_syntax(config):
            raise ConfigError("Invalid syntax in config file '{0}'".format(source))
        values = {}
        for section_name in config.sections():
            for item, value in config[section_name].items():
                key = cfg_syntax_dict[section_name][item][1]
                if key in RATIONAL_KEYS:
                    values[key] = Helper.parse_rational(value, what=item)
                elif key in INTEGER_KEYS:
                    values[key] = int(value)
                elif key in BOOLEAN_KEYS:
                    values[key] = config.getboolean(section_name, item)
                else:
                    values[key] = value
        eps = values.get('epsilon')
        if eps is not None and not (0 < eps <= 1):
            log_error("[solve] epsilon - value '{0}' invalid. Must lie in (0, 1].".format(Helper.format_rational(eps)))
            raise ConfigError("Invalid syntax in config file '{0}'".format(source))
        return values

    @staticmethod
    def read_config(path=None, required=False):
        """
        Reads path, or the default config file when it exists, into settings.
        Returns the path read or None.
        """
        if path is None:
            path = settings['config_file']
            if not os.path.isfile(path):
                return None
        elif not required and not os.path.isfile(path):
            return None
        try:
            with open(path, encoding='utf-8') as file_:
                text = file_.read()
        except (IOError, OSError) as ex:
            log_error('Exception while reading configuration file: {0}'.format(str(ex)))
            raise ConfigError("Can't read config file '{0}': {1}".format(path, ex.strerror or ex))
        values = Config.parse_config_text(text, path)
        settings.update(values)
        log_debug("[config] - read '{0}': {1}".format(path, ', '.join(sorted(values))))
        return path
