#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
pytest 公共夹具
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from exact_arith import QQ  # noqa: E402
from isogeny import build_family  # noqa: E402
from named_examples import GenericExample, build_example  # noqa: E402
from utils import configure_console  # noqa: E402


@pytest.fixture(autouse=True)
def plain_console():
    configure_console(quiet=True, color=False)
    yield
    configure_console()


@pytest.fixture(scope="session")
def q_sqrt2():
    return QQ.extend('r2', [-2, 0, 1])


@pytest.fixture(scope="session")
def q_omega():
    return QQ.extend('w', [1, 1, 1])


@pytest.fixture(scope="session")
def family_11():
    return build_family(1, 1)


@pytest.fixture(scope="session")
def generic_11():
    """(a, b) = (1, 1)，截面与 Gram 矩阵在会话内只算一次"""
    return GenericExample(1, 1)


@pytest.fixture(scope="session")
def named():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_example(name)
        return cache[name]

    return get
