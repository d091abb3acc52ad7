#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import sys

import pytest

from supportvar import utils
from supportvar.ideal import SquareFreeIdeal


# Ignore async tests for Python < 3.5
collect_ignore = []
if sys.version_info < (3, 5):
    collect_ignore.append("asynctests")


def types_of(*groups):
    return [utils.mask_from_indices(g) for g in groups]


@pytest.fixture()
def running_ideal():
    """(x1 x12, x12 x23, x23 x34, x34 x45, x45 x5), GCD graph P5."""
    return SquareFreeIdeal(5, types_of([1], [1, 2], [2, 3], [3, 4], [4, 5], [5]))


@pytest.fixture()
def hexagon_ideal():
    return SquareFreeIdeal(6, types_of([1, 2], [2, 3], [3, 4], [4, 5], [5, 6], [1, 6]))


@pytest.fixture()
def complete_intersection():
    return SquareFreeIdeal(3, types_of([1], [2], [3]))


@pytest.fixture()
def triangle_pendant_ideal():
    """X = {x4, x12, x13, x23, x14}: a triangle on 1, 2, 3 and the edge 1-4."""
    return SquareFreeIdeal(4, types_of([4], [1, 2], [1, 3], [2, 3], [1, 4]))


@pytest.fixture()
def fast_config():
    return {'primes': (3, 101, 32003), 'samples_per_prime': 24, 'seed': 7}
