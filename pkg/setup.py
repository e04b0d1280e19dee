#!/usr/bin/env python3

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

from setuptools import setup

setup(name='tf2m',
    version='0.3.1',
    description='Weighted triangle-free 2-matching solver and certification toolkit',
    author='The tf2m developers',
    packages=['tf2m',],
    python_requires='>=3.8',
    install_requires=['magcode-core', 'psutil',],
    extras_require={
        'proctitle': ['setproctitle',],
        'test': ['pytest', 'networkx',],
        },
    entry_points={
        'console_scripts': ['tf2m = tf2m.cli:main',],
        },
    data_files=[('etc/tf2m', ['etc/tf2m.conf',]),],
    )
