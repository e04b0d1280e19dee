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
Reads and writes instance and solution files.

Instance format, UTF-8, one record per line, '#' starts a comment line:

    p tf2m <n> <m>
    e <u> <v> <num>/<den>      or   e <u> <v> <integer>
    t <a> <b> <c>              optional forbidden triangle

Solution files are either the JSON written by the solve, baseline and exact
subcommands (key 'solution') or one edge per line as 'u v' or 'e u v'.
"""

import io
import json
import re
from collections import namedtuple
from fractions import Fraction

from magcode.core.globals_ import log_debug
from tf2m.globals_ import INSTANCE_MAGIC
from tf2m.globals_ import RATIONAL_REGEX
from tf2m.globals_ import FORBIDDEN_ALL
from tf2m.globals_ import FORBIDDEN_LISTED
from tf2m.exceptions import InputError
from tf2m.exceptions import InstanceParseError
from tf2m.graph import WeightedGraph
from tf2m.graph import TriangleSet
from tf2m.graph import canonical_edge
from tf2m.graph import enumerate_triangles
from tf2m.graph import make_edge_set
from tf2m.helper import Helper

INT_REGEX = r'^[0-9]+$'

Instance = namedtuple('Instance', ['graph', 'listed', 'path'])


def _parse_int(token, path, line_no, what):
    if not re.match(INT_REGEX, token):
        raise InstanceParseError(path, line_no, "{0} '{1}' is not a non-negative integer".format(what, token))
    return int(token)


def _parse_weight(token, path, line_no):
    if token.startswith('-'):
        raise InstanceParseError(path, line_no, "negative weight '{0}'".format(token))
    match = re.match(RATIONAL_REGEX, token)
    if not match:
        raise InstanceParseError(path, line_no, "weight '{0}' must be 'num/den' or an integer".format(token))
    den = int(match.group('den')) if match.group('den') is not None else 1
    if den == 0:
        raise InstanceParseError(path, line_no, "weight '{0}' has a zero denominator".format(token))
    return Fraction(int(match.group('num')), den)


def parse_instance_text(text, path='<string>'):
    """
    Strict parse of instance text. Errors carry the path and line number.
    """
    n = None
    declared_m = None
    header_line = 0
    weights = {}
    edge_lines = {}
    triangles = []
    for line_no, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == 'p':
            if n is not None:
                raise InstanceParseError(path, line_no, "second header line (first at line {0})".format(header_line))
            if len(tokens) != 4 or tokens[1] != INSTANCE_MAGIC:
                raise InstanceParseError(path, line_no, "header must be 'p {0} <n> <m>'".format(INSTANCE_MAGIC))
            n = _parse_int(tokens[2], path, line_no, 'vertex count')
            declared_m = _parse_int(tokens[3], path, line_no, 'edge count')
            header_line = line_no
            continue
        if n is None:
            raise InstanceParseError(path, line_no, "'{0}' line before the 'p' header".format(kind))
        if kind == 'e':
            if len(tokens) != 4:
                raise InstanceParseError(path, line_no, "edge line must be 'e <u> <v> <weight>'")
            u = _parse_int(tokens[1], path, line_no, 'vertex')
            v = _parse_int(tokens[2], path, line_no, 'vertex')
            for x in (u, v):
                if x >= n:
                    raise InstanceParseError(path, line_no, 'vertex {0} outside [0, {1})'.format(x, n))
            edge = canonical_edge(u, v)
            if edge in weights:
                raise InstanceParseError(path, line_no, 'duplicate edge {0} {1} (first at line {2})'
                        .format(edge[0], edge[1], edge_lines[edge]))
            weights[edge] = _parse_weight(tokens[3], path, line_no)
            edge_lines[edge] = line_no
        elif kind == 't':
            if len(tokens) != 4:
                raise InstanceParseError(path, line_no, "triangle line must be 't <a> <b> <c>'")
            tri = [_parse_int(tok, path, line_no, 'vertex') for tok in tokens[1:]]
            if len(set(tri)) != 3:
                raise InstanceParseError(path, line_no, 'triangle needs three distinct vertices')
            triangles.append((line_no, tuple(sorted(tri))))
        else:
            raise InstanceParseError(path, line_no, "unknown line type '{0}'".format(kind))
    if n is None:
        raise InstanceParseError(path, 0, "missing 'p {0} <n> <m>' header".format(INSTANCE_MAGIC))
    if declared_m != len(weights):
        raise InstanceParseError(path, header_line, 'header declares {0} edges but {1} edge lines follow'
                .format(declared_m, len(weights)))
    graph = WeightedGraph(n, weights)
    for line_no, (a, b, c) in triangles:
        for edge in ((a, b), (a, c), (b, c)):
            if edge not in weights:
                raise InstanceParseError(path, line_no, 'triangle side {0} {1} is not an edge'.format(*edge))
    listed = TriangleSet(tri for _, tri in triangles)
    log_debug("[parse] - '{0}': n={1} m={2} listed triangles={3}".format(path, n, graph.edge_count, len(listed)))
    return Instance(graph, listed, path)


def _read_text(path):
    with open(path, 'rb') as file_:
        data = file_.read()
    try:
        return data.decode('utf-8')
    except UnicodeDecodeError as exc:
        line_no = data[:exc.start].count(b'\n') + 1
        raise InstanceParseError(path, line_no, 'byte {0:#04x} is not valid UTF-8'.format(data[exc.start]))


def read_instance(path):
    return parse_instance_text(_read_text(path), path)


def forbidden_family(instance, mode):
    """
    'all' uses every triangle of the graph and ignores 't' lines, 'listed'
    uses exactly the 't' lines
    """
    if mode == FORBIDDEN_ALL:
        return enumerate_triangles(instance.graph)
    if mode == FORBIDDEN_LISTED:
        return instance.listed
    raise InputError("forbidden mode '{0}' must be '{1}' or '{2}'".format(mode, FORBIDDEN_ALL, FORBIDDEN_LISTED))


def format_instance(graph, triangles=None, comment=None):
    out = []
    if comment:
        for line in comment.splitlines():
            out.append('# {0}'.format(line))
    out.append('p {0} {1} {2}'.format(INSTANCE_MAGIC, graph.n, graph.edge_count))
    for u, v in graph.edges():
        out.append('e {0} {1} {2}'.format(u, v, Helper.format_rational(graph.weight_of((u, v)))))
    for a, b, c in (triangles or ()):
        out.append('t {0} {1} {2}'.format(a, b, c))
    return '\n'.join(out) + '\n'


def write_instance(path, graph, triangles=None, comment=None):
    Helper.write_file_atomic(path, format_instance(graph, triangles, comment))


def parse_solution_text(text, graph, path='<string>', check_membership=True):
    """
    Reads an edge set from solution JSON or edge lines. With check_membership
    every edge must belong to the graph.
    """
    stripped = text.lstrip()
    if stripped.startswith('{') or stripped.startswith('['):
        try:
            data = json.loads(text)
        except ValueError as exc:
            raise InstanceParseError(path, getattr(exc, 'lineno', 0), 'invalid JSON: {0}'.format(exc))
        pairs = data.get('solution') if isinstance(data, dict) else data
        if not isinstance(pairs, list):
            raise InstanceParseError(path, 1, "JSON solution needs a 'solution' list of [u, v] pairs")
        edges = []
        for pair in pairs:
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in pair)):
                raise InstanceParseError(path, 1, 'solution entry {0} is not a [u, v] pair'.format(pair))
            edges.append(tuple(pair))
    else:
        edges = []
        for line_no, raw in enumerate(io.StringIO(text), start=1):
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            tokens = line.split()
            if tokens[0] == 'e':
                tokens = tokens[1:]
            if len(tokens) != 2:
                raise InstanceParseError(path, line_no, "solution line must be 'u v' or 'e u v'")
            edges.append((_parse_int(tokens[0], path, line_no, 'vertex'),
                          _parse_int(tokens[1], path, line_no, 'vertex')))
    edge_set = make_edge_set(edges)
    if len(edge_set) != len(edges):
        raise InstanceParseError(path, 0, 'solution lists an edge twice')
    for edge in sorted(edge_set):
        if check_membership and not graph.has_edge(edge):
            raise InstanceParseError(path, 0, 'solution edge {0} {1} is not in the instance'.format(*edge))
    return edge_set


def read_solution(path, graph, check_membership=True):
    return parse_solution_text(_read_text(path), graph, path, check_membership)
