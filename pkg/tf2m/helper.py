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
Provides basic helper functionality
"""

import os
import re
import tempfile
from fractions import Fraction

from magcode.core.globals_ import log_debug
from magcode.core.globals_ import debug_verbose
from tf2m.globals_ import RATIONAL_REGEX
from tf2m.globals_ import DECIMAL_REGEX
from tf2m.exceptions import InputError


class Helper(object):
    """
    Contains generic helper functionality
    """

    @staticmethod
    def parse_rational(text, what='value'):
        """
        Parses 'num/den', an integer, or a decimal with at most 9 fractional
        digits into an exact non-negative Fraction
        """
        text = text.strip()
        match = re.match(RATIONAL_REGEX, text)
        if match:
            num = int(match.group('num'))
            den = int(match.group('den')) if match.group('den') is not None else 1
            if den == 0:
                raise InputError("{0} '{1}' has a zero denominator".format(what, text))
            return Fraction(num, den)
        match = re.match(DECIMAL_REGEX, text)
        if match:
            int_part = match.group('int') or '0'
            frac_part = match.group('frac')
            return Fraction(int(int_part + frac_part), 10 ** len(frac_part))
        raise InputError("{0} '{1}' is not a non-negative rational, integer or decimal"
                .format(what, text))

    @staticmethod
    def parse_epsilon(text):
        """
        Parses an epsilon and checks it lies in (0, 1]
        """
        eps = Helper.parse_rational(text, what='epsilon')
        if not (0 < eps <= 1):
            raise InputError("epsilon '{0}' must lie in (0, 1]".format(text))
        return eps

    @staticmethod
    def format_rational(value):
        """
        Renders a rational as 'num/den', always with a denominator
        """
        value = Fraction(value)
        return '{0}/{1}'.format(value.numerator, value.denominator)

    @staticmethod
    def format_decimal(value, decimals):
        """
        Rounds a rational half-up to a fixed number of decimal places
        """
        value = Fraction(value)
        scale = 10 ** decimals
        scaled = (abs(value) * scale * 2 + 1) // 2
        sign = '-' if value < 0 else ''
        int_part, frac_part = divmod(scaled, scale)
        if decimals == 0:
            return '{0}{1}'.format(sign, int_part)
        return '{0}{1}.{2:0{3}d}'.format(sign, int_part, frac_part, decimals)

    @staticmethod
    def write_file_atomic(path, text):
        """
        Writes text to path via a temporary file in the same directory and a
        rename, so readers never see a partial file
        """
        dirname = os.path.dirname(os.path.abspath(path))
        fd, tmp_path = tempfile.mkstemp(prefix='.tf2m-', dir=dirname)
        try:
            with os.fdopen(fd, 'w', encoding='utf-8', newline='') as file_:
                file_.write(text)
            os.replace(tmp_path, path)
        except BaseException:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise
        if debug_verbose():
            log_debug("[io] - wrote '{0}' ({1} bytes)".format(path, len(text)))
