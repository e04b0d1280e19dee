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
Exceptions raised by the tf2m library. Only the command line layer turns
these into exit statuses.
"""


class Tf2mError(Exception):
    """
    Base of all tf2m errors
    """
    pass


class InputError(Tf2mError):
    """
    Bad vertex ids, malformed arguments and similar caller mistakes
    """
    pass


class InstanceParseError(InputError):
    """
    Instance or solution file did not parse. Carries the path and line.
    """
    def __init__(self, path, line_no, reason):
        self.path = path
        self.line_no = line_no
        self.reason = reason
        super().__init__('{0}:{1}: {2}'.format(path, line_no, reason))


class ConfigError(Tf2mError):
    pass


class ContractError(Tf2mError):
    """
    A documented precondition does not hold
    """
    def __init__(self, precondition, detail=''):
        self.precondition = precondition
        msg = 'precondition failed: {0}'.format(precondition)
        if detail:
            msg += ' ({0})'.format(detail)
        super().__init__(msg)


class TrivialInstanceError(Tf2mError):
    """
    Every edge weight is zero, so weight scaling is undefined
    """
    pass


class OracleSizeError(Tf2mError):
    def __init__(self, edge_count, edge_limit):
        self.edge_count = edge_count
        self.edge_limit = edge_limit
        super().__init__('instance has {0} edges, oracle limit is {1}'
                .format(edge_count, edge_limit))


class InternalError(Tf2mError):
    """
    An algorithmic invariant was violated. Always a bug.
    """
    pass
