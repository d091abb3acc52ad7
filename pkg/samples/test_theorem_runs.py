#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import logging
import sys

import pytest

from supportvar import verify_theorem


def get_logger(level):
    supportvar_logger = logging.getLogger("supportvar")
    if not supportvar_logger.handlers:
        handler = logging.StreamHandler(stream=sys.stdout)
        handler.setFormatter(logging.Formatter('%(asctime)s %(name)-12s %(levelname)-8s %(message)s'))
        supportvar_logger.addHandler(handler)
    supportvar_logger.setLevel(level)
    return supportvar_logger


log = get_logger(logging.INFO)


def test_cycle_theorem_up_to_rank_cap(long_run_config):
    table = verify_theorem('B', long_run_config, n=range(3, 13))
    log.info(table.render())
    assert table.passed


def test_broom_theorem(long_run_config):
    table = verify_theorem('DBWT', long_run_config)
    log.info(table.render())
    assert table.passed


def test_delta_theorem(long_run_config):
    table = verify_theorem('Delta', long_run_config, n=[3, 4, 5])
    log.info(table.render())
    assert table.passed


def test_catalog_representatives(long_run_config):
    table = verify_theorem('A', long_run_config)
    log.info(table.render())
    assert table.passed


@pytest.mark.parametrize("full_fiber", [False, True])
def test_type_c_equigeneration(long_run_config, fiber_cap, full_fiber):
    table = verify_theorem('C', long_run_config, full_fiber=full_fiber, cap=fiber_cap)
    log.info(table.render())
    assert table.passed
    assert not table.truncated


def test_catalog_full_fibers(long_run_config, fiber_cap):
    table = verify_theorem('A', long_run_config, full_fiber=True, cap=fiber_cap)
    log.info(table.render())
    assert table.passed
